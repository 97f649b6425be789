//! The dual of the sign homomorphism S3 -> Z2, read back as a group.
//!
//! cargo run --example group_dual

use dualfib::dual::{enumerate_spans, DualFib};
use dualfib::gen::{self, GroupTable};
use dualfib::ArrId;

fn main() -> dualfib::Result<()> {
    let s = gen::sign_fibration();
    let g = GroupTable::symmetric(3);
    let d = DualFib::build(&s)?;
    println!(
        "{} vh spans, {} comorphisms",
        enumerate_spans(&s).len(),
        d.classes().len()
    );
    let names = &g.names;
    for c in d.classes() {
        let members: Vec<String> = c
            .members
            .iter()
            .map(|m| format!("({},{})", names[m.v.0], names[m.h.0]))
            .collect();
        // every member gives the same v^-1 h
        let j = g.mul(g.inverse(c.canon().v.0), c.canon().h.0);
        println!("  {}  J = {}", members.join(" "), names[j]);
    }
    let x = d.fib().total();
    println!("dual fibre over *: i(v) = {{(v,1)}} reverses products");
    for v1 in (0..g.order()).filter(|&v| gen::sign_hom(3)[v] == 0) {
        for v2 in (0..g.order()).filter(|&v| gen::sign_hom(3)[v] == 0) {
            let (i1, i2) = (
                d.vertical_class(ArrId(v1)).unwrap(),
                d.vertical_class(ArrId(v2)).unwrap(),
            );
            let lhs = x.then(i1, i2)?;
            let rhs = d.vertical_class(ArrId(g.mul(v2, v1))).unwrap();
            println!(
                "  i({}).i({}) = {}  i({}.{}) = {}",
                names[v1],
                names[v2],
                x.arrow_name(lhs),
                names[v2],
                names[v1],
                x.arrow_name(rhs)
            );
        }
    }
    Ok(())
}
