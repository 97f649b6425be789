//! Graphviz output for a fibration and its dual.
//!
//! cargo run --example dot_export > sign.dot

use dualfib::gen::{self, Shape};
use dualfib::io::{export_dot, DotOptions};
use dualfib::DualFib;

fn main() -> dualfib::Result<()> {
    let s = gen::gen_product(&Shape::Interval.category(), &Shape::Interval.category());
    let opts = DotOptions {
        graph_name: "X".into(),
        skip_identities: true,
    };
    print!("{}", export_dot(&s, &opts));
    let d = DualFib::build(&s)?;
    let opts = DotOptions {
        graph_name: "X*".into(),
        skip_identities: true,
    };
    print!("{}", export_dot(d.fib(), &opts));
    Ok(())
}
