//! Building finite categories, checking the laws, and reading violations.
//!
//! cargo run --example categories

use dualfib::gen::{GroupTable, Shape};
use dualfib::{validate_category, CategoryBuilder, FinCategory};

fn main() -> dualfib::Result<()> {
    // a walking isomorphism by hand
    let mut b = CategoryBuilder::new();
    let x = b.object("X");
    let y = b.object("Y");
    b.identity_arrow("1X", x);
    b.identity_arrow("1Y", y);
    let f = b.arrow("f", x, y);
    let g = b.arrow("g", y, x);
    b.fill_unit_composites();
    let (ix, iy) = (b.identity_of(x).unwrap(), b.identity_of(y).unwrap());
    b.compose(f, g, ix);
    b.compose(g, f, iy);
    let iso = b.build()?;
    println!(
        "walking iso: {} objects, {} arrows, f invertible: {}",
        iso.num_objects(),
        iso.num_arrows(),
        iso.is_isomorphism(f)?
    );

    // build only checks ids; leaving out g.f shows up in the law check
    let mut b = CategoryBuilder::new();
    let x = b.object("X");
    let y = b.object("Y");
    b.identity_arrow("1X", x);
    b.identity_arrow("1Y", y);
    let f = b.arrow("f", x, y);
    let g = b.arrow("g", y, x);
    b.fill_unit_composites();
    b.compose(f, g, b.identity_of(x).unwrap());
    let broken = b.build()?;
    println!("without g.f:\n{}", validate_category(&broken));

    let s3 = GroupTable::symmetric(3).to_category();
    let chain = FinCategory::chain(3);
    println!("S3 valid: {}", validate_category(&s3).is_empty());
    println!("chain(3)^op^op == chain(3): {}", chain.opposite().opposite() == chain);
    let p = Shape::Interval.category().product(&Shape::Idempotent.category());
    println!("interval x idempotent: {} arrows", p.num_arrows());
    for a in p.arrows() {
        println!(
            "  {} : {} -> {}",
            p.arrow_name(a),
            p.object_name(p.src(a)),
            p.object_name(p.tgt(a))
        );
    }
    Ok(())
}
