mod common;

use common::corpus;
use dualfib::dual::{enumerate_comorphisms, enumerate_spans, span_equivalent, span_witnesses, Comorphism, DualFib};
use dualfib::gen::{self, Shape};
use dualfib::io::{export_dot, print, Document, DotOptions};
use dualfib::iso::find_isomorphism_over;
use dualfib::{double_dual_iso, FinCategory};

#[test]
fn span_equivalence_is_an_equivalence_with_unique_witnesses() {
    for (name, s) in corpus().into_iter().filter(|(_, s)| s.total().num_arrows() <= 30) {
        let spans = enumerate_spans(&s);
        let comparable =
            |a: &dualfib::VhSpan, b: &dualfib::VhSpan| a.source(&s) == b.source(&s) && a.target(&s) == b.target(&s);
        for a in &spans {
            assert!(span_equivalent(&s, *a, *a).unwrap());
            for b in spans.iter().filter(|b| comparable(a, b)) {
                let w = span_witnesses(&s, *a, *b).unwrap();
                assert!(w.len() <= 1, "{name}: {} witnesses", w.len());
                assert_eq!(!w.is_empty(), span_equivalent(&s, *b, *a).unwrap(), "{name}: symmetry");
                assert_eq!(
                    !w.is_empty(),
                    Comorphism::class_of(&s, *a).contains(b),
                    "{name}: class orbit"
                );
                for c in spans.iter().filter(|c| comparable(b, c)) {
                    if !w.is_empty() && span_equivalent(&s, *b, *c).unwrap() {
                        assert!(span_equivalent(&s, *a, *c).unwrap(), "{name}: transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn classes_partition_the_spans() {
    for (name, s) in corpus() {
        let spans = enumerate_spans(&s);
        let classes = enumerate_comorphisms(&s).unwrap();
        assert_eq!(
            classes.iter().map(|c| c.members.len()).sum::<usize>(),
            spans.len(),
            "{name}"
        );
        for sp in &spans {
            assert_eq!(classes.iter().filter(|c| c.contains(sp)).count(), 1, "{name}");
        }
    }
}

#[test]
fn dual_projection_reads_the_cartesian_leg() {
    for (name, s) in corpus() {
        let d = DualFib::build(&s).unwrap();
        for (g, c) in d.classes().iter().enumerate() {
            for m in &c.members {
                assert_eq!(d.fib().proj().arr(dualfib::ArrId(g)), s.proj().arr(m.h), "{name}");
            }
        }
    }
}

/// Brute-force count of comorphisms for the product fibration: one per arrow of B x C^op.
#[test]
fn product_duals_are_b_times_c_op() {
    for (b, c) in [
        (Shape::Interval, Shape::Idempotent),
        (Shape::Interval, Shape::Interval),
        (Shape::Cyclic(2), Shape::Chain(2)),
        (Shape::Chain(3), Shape::Discrete(2)),
    ] {
        let (b, c) = (b.category(), c.category());
        let s = gen::gen_product(&b, &c);
        let d = DualFib::build(&s).unwrap();
        assert_eq!(d.fib().total().num_arrows(), b.num_arrows() * c.num_arrows());
        let expected = gen::gen_product(&b, &c.opposite());
        let iso = find_isomorphism_over(d.fib().total(), d.fib().proj(), expected.total(), expected.proj());
        assert!(iso.is_some());
    }
}

#[test]
fn chain_fibre_dual_is_the_opposite_not_the_chain() {
    // the identity on ids is not a functor from the dual fibre to chain(3)
    let c = FinCategory::chain(3);
    let s = gen::gen_product(&FinCategory::terminal(), &c);
    let d = DualFib::build(&s).unwrap();
    let fd = d.fibre_duality_iso(&s, dualfib::ObjId(0)).unwrap();
    assert_eq!(
        fd.iso.validate(&fd.dual_fibre.category, &fd.opposite).violations.len(),
        0
    );
    let same_objects = dualfib::CategoryIso::identity(&fd.dual_fibre.category);
    assert!(!same_objects.validate(&fd.dual_fibre.category, &c).is_empty());
}

#[test]
fn y_restricted_to_fibres_is_the_composite_of_fibre_dualities() {
    for (name, s) in corpus() {
        let dd = double_dual_iso(&s).unwrap();
        for a in s.base().objects() {
            let f1 = dd.dual.fibre_duality_iso(&s, a).unwrap();
            let f2 = dd.double.fibre_duality_iso(dd.dual.fib(), a).unwrap();
            let fibre = s.fibre(a).unwrap();
            for &v in &fibre.arrows {
                // X**_A -> (X*_A)^op sends y(v) to {(v,1)}, which X*_A -> X_A^op sends to v
                let yv = dd.y.forward.arr(v);
                let local = f2.dual_fibre.local_arrow(yv).unwrap();
                let in_dual = f2.dual_fibre.category.arrow_name(local);
                let via = f2.fibre.arrows[f2.iso.forward.arr(local).0];
                let back = f1.fibre.arrows[f1.iso.forward.arr(f1.dual_fibre.local_arrow(via).unwrap()).0];
                assert_eq!(back, v, "{name}: {in_dual}");
            }
        }
    }
}

#[test]
fn sign_dual_prints_six_arrows_and_exports_same_nodes() {
    let s = gen::sign_fibration();
    let d = DualFib::build(&s).unwrap();
    let text = print(&Document::from_fibration("S3*", "Z2", "p*", d.fib()));
    let block = text.split("category Z2").next().unwrap();
    assert_eq!(
        block.lines().filter(|l| l.trim_start().starts_with("arrow ")).count(),
        6
    );
    let nodes = |dot: &str| {
        dot.lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .map(str::to_owned)
            .collect::<Vec<_>>()
    };
    let o = DotOptions::default();
    assert_eq!(nodes(&export_dot(&s, &o)), nodes(&export_dot(d.fib(), &o)));
}
