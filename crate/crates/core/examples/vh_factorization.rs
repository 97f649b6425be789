//! Every arrow of a fibration factors as vertical then cartesian, uniquely
//! up to a vertical isomorphism.
//!
//! cargo run --example vh_factorization

use dualfib::gen::{self, IndexedSpec};
use dualfib::vh::{all_vh_factorizations, compose_pairs, equivalence_witnesses, pairs_equivalent, vh_factorize};

fn main() -> dualfib::Result<()> {
    let f = gen::gen_indexed(&IndexedSpec::IntervalReindex)?;
    let s = f.grothendieck()?.fib;
    let t = s.total();
    for z in t.arrows() {
        let p = vh_factorize(&s, z)?;
        let all = all_vh_factorizations(&s, z);
        println!(
            "{:<16} = {} . {}   ({} factorizations)",
            t.arrow_name(z),
            t.arrow_name(p.v),
            t.arrow_name(p.h),
            all.len()
        );
        for q in &all {
            let w = equivalence_witnesses(&s, p, *q)?;
            println!(
                "    ({}, {}) via {}",
                t.arrow_name(q.v),
                t.arrow_name(q.h),
                t.arrow_name(w[0])
            );
        }
    }
    let mut composed = 0;
    for (a, b) in t.composable_pairs() {
        let c = compose_pairs(&s, vh_factorize(&s, a)?, vh_factorize(&s, b)?)?;
        assert!(pairs_equivalent(&s, c, vh_factorize(&s, t.then(a, b)?)?)?);
        composed += 1;
    }
    println!("{composed} composable pairs compose as pairs consistently");
    Ok(())
}
