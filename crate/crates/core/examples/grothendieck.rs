//! Indexed categories, their Grothendieck fibrations, and agreement of the
//! two ways of dualizing.
//!
//! cargo run --example grothendieck

use dualfib::check_dual_agreement;
use dualfib::gen::indexed_families;

fn main() -> dualfib::Result<()> {
    for (name, f) in indexed_families() {
        let ag = check_dual_agreement(&f)?;
        let t = ag.original.fib.total();
        println!(
            "{name}: {} objects, {} arrows, {} cartesian; dual side {} arrows",
            t.num_objects(),
            t.num_arrows(),
            ag.original.fib.cartesian_count(),
            ag.dualized.fib.total().num_arrows()
        );
    }
    let (_, f) = indexed_families()
        .into_iter()
        .find(|(n, _)| n == "interval-reindex")
        .unwrap();
    let ag = check_dual_agreement(&f)?;
    let (src, dst) = (ag.dualized.fib.total(), ag.dual.fib().total());
    println!("interval-reindex, pointwise-opposite arrow -> comorphism:");
    for a in src.arrows() {
        println!(
            "  {:<18} -> {}",
            src.arrow_name(a),
            dst.arrow_name(ag.iso.forward.arr(a))
        );
    }
    Ok(())
}
