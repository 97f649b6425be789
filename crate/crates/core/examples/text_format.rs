//! Writing and reading the line-oriented document format.
//!
//! cargo run --example text_format

use dualfib::gen::{self, IndexedSpec};
use dualfib::io::{parse, print, Document};
use dualfib::DualFib;

const HAND_WRITTEN: &str = "\
catdoc 1 fibration

# the interval over itself
category I
  object 0
  object 1
  arrow 1_0 : 0 -> 0
  arrow 1_1 : 1 -> 1
  arrow a : 0 -> 1
  identity 0 = 1_0
  identity 1 = 1_1
end

functor p : I -> I
  object 0 = 0
  object 1 = 1
  arrow 1_0 = 1_0
  arrow 1_1 = 1_1
  arrow a = a
end
";

fn main() -> dualfib::Result<()> {
    let doc = parse(HAND_WRITTEN)?;
    let s = doc.to_fib_setup()?;
    println!("hand-written document: fibration = {}", s.is_fibration());
    let d = DualFib::build(&s)?;
    print!("{}", print(&Document::from_fibration("I*", "I", "p*", d.fib())));

    let f = gen::gen_indexed(&IndexedSpec::Chains {
        base_len: 2,
        max_fibre_len: 2,
        seed: 3,
    })?;
    let text = print(&Document::Indexed {
        base_name: "C2".into(),
        indexed: f,
    });
    println!("\n{text}");
    assert_eq!(print(&parse(&text)?), text);

    match parse("catdoc 1 category\ncategory C\n  object A\n  arrow f : A -> B\nend\n") {
        Err(e) => println!("error: {e}"),
        Ok(_) => println!("unexpectedly parsed"),
    }
    Ok(())
}
