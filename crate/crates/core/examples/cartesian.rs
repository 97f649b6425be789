//! Cartesian arrows, fibres, and functors that fail to be fibrations.
//!
//! cargo run --example cartesian

use dualfib::gen::{self, gen_non_fibration, NonFibrationSpec, Shape};

fn main() -> dualfib::Result<()> {
    let s = gen::gen_product(&Shape::Interval.category(), &Shape::Idempotent.category());
    let t = s.total();
    println!("interval x idempotent over the interval");
    for f in t.arrows() {
        println!(
            "  {:<10} vertical={:<5} cartesian={}",
            t.arrow_name(f),
            s.vertical(f),
            s.cartesian(f)
        );
    }
    for a in s.base().objects() {
        let fibre = s.fibre(a)?;
        println!(
            "  fibre over {}: {} arrows",
            s.base().object_name(a),
            fibre.category.num_arrows()
        );
    }

    for spec in [
        NonFibrationSpec::NonSurjectiveHom { order: 2 },
        NonFibrationSpec::MissingArrow,
        NonFibrationSpec::NoCartesianLift,
    ] {
        let (s, witness) = gen_non_fibration(&spec)?;
        let found = s.check_fibration().unwrap_err();
        println!(
            "{spec:?}: no cartesian lift of {} into {} (recorded witness {} into {})",
            s.base().arrow_name(found.alpha),
            s.total().object_name(found.object),
            s.base().arrow_name(witness.alpha),
            s.total().object_name(witness.object),
        );
    }
    Ok(())
}
