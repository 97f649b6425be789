//! X* and X** for each family in the corpus, with the comparison y: X -> X**.
//!
//! cargo run --example double_dual

use dualfib::gen::fibration_families;
use dualfib::{double_dual_iso, DualFib};

fn main() -> dualfib::Result<()> {
    println!("{:<28} {:>4} {:>4} {:>4}  fibres", "family", "X", "X*", "X**");
    for (name, s) in fibration_families() {
        let dd = double_dual_iso(&s)?;
        let mut fibres = Vec::new();
        for a in s.base().objects() {
            let fd = DualFib::fibre_duality_iso(&dd.dual, &s, a)?;
            fibres.push(fd.fibre.category.num_arrows().to_string());
        }
        println!(
            "{:<28} {:>4} {:>4} {:>4}  {}",
            name,
            s.total().num_arrows(),
            dd.dual.fib().total().num_arrows(),
            dd.double.fib().total().num_arrows(),
            fibres.join(",")
        );
    }
    Ok(())
}
