use dualfib::gen::{self, gen_indexed, indexed_families, IndexedSpec, Shape};
use dualfib::indexed::PairArrow;
use dualfib::iso::find_isomorphism_over;
use dualfib::{check_dual_agreement, validate_category, FinCategory};

#[test]
fn grothendieck_constructions_are_fibrations() {
    for (name, f) in indexed_families() {
        let g = f.grothendieck().unwrap();
        assert!(validate_category(g.fib.total()).is_empty(), "{name}");
        assert!(g.fib.is_fibration(), "{name}");
        let objects: usize = f.fibres.iter().map(FinCategory::num_objects).sum();
        assert_eq!(g.fib.total().num_objects(), objects, "{name}");
    }
}

#[test]
fn group_action_counts() {
    let f = gen_indexed(&IndexedSpec::GroupAction { order: 2 }).unwrap();
    let g = f.grothendieck().unwrap();
    assert_eq!(g.fib.total().num_objects(), 2);
    assert_eq!(g.fib.total().num_arrows(), 4);
}

#[test]
fn triangle_arrows_are_cartesian_and_cartesians_factor_through_them() {
    for (name, f) in indexed_families() {
        let g = f.grothendieck().unwrap();
        let t = g.fib.total();
        for alpha in f.base.arrows() {
            for y in f.fibres[f.base.tgt(alpha).0].objects() {
                let tri = f.triangle_arrow(&g, alpha, y).unwrap();
                assert!(g.fib.cartesian(tri), "{name}");
            }
        }
        for (id, &PairArrow { alpha, target, v }) in g.arrows.iter().enumerate() {
            let h = dualfib::ArrId(id);
            let tri = f.triangle_arrow(&g, alpha, target).unwrap();
            let fibre = &f.fibres[f.base.src(alpha).0];
            // (v, alpha) is cartesian iff v is invertible in its fibre
            assert_eq!(g.fib.cartesian(h), fibre.inverse(v).is_some(), "{name}");
            let vertical = t
                .hom(t.src(h), t.src(tri))
                .iter()
                .copied()
                .find(|&u| g.fib.vertical(u) && t.compose(u, tri) == Some(h));
            assert!(vertical.is_some(), "{name}: every arrow is vertical then triangle");
        }
    }
}

#[test]
fn constant_families_are_products() {
    for (b, c) in [
        (Shape::Interval, Shape::Chain(2)),
        (Shape::Terminal, Shape::Idempotent),
        (Shape::Cyclic(2), Shape::Interval),
    ] {
        let f = gen_indexed(&IndexedSpec::Constant { base: b, fibre: c }).unwrap();
        let g = f.grothendieck().unwrap();
        let (b, c) = (b.category(), c.category());
        let p = gen::gen_product(&b, &c);
        assert!(find_isomorphism_over(g.fib.total(), g.fib.proj(), p.total(), p.proj()).is_some());
        let ag = check_dual_agreement(&f).unwrap();
        let pop = gen::gen_product(&b, &c.opposite());
        let d = ag.dual.fib();
        assert!(find_isomorphism_over(d.total(), d.proj(), pop.total(), pop.proj()).is_some());
    }
}

#[test]
fn dualizing_twice_is_the_identity() {
    for (name, f) in indexed_families() {
        let ff = f.dualize().dualize();
        assert_eq!(ff, f, "{name}");
        assert!(f.dualize().validate().is_empty(), "{name}");
    }
}

#[test]
fn agreement_holds_on_seeded_chains() {
    for seed in 0..12 {
        let f = gen_indexed(&IndexedSpec::Chains {
            base_len: 3,
            max_fibre_len: 3,
            seed,
        })
        .unwrap();
        check_dual_agreement(&f).unwrap();
    }
}

#[test]
fn broken_composition_law_is_rejected() {
    let mut f = gen_indexed(&IndexedSpec::Constant {
        base: Shape::Chain(3),
        fibre: Shape::Discrete(2),
    })
    .unwrap();
    let long = f.base.arrow_by_name("0<2").unwrap();
    // a swap along 0<2 while 0<1 and 1<2 act as identities
    f.reindex[long.0] = dualfib::FunctorData {
        obj_map: vec![dualfib::ObjId(1), dualfib::ObjId(0)],
        arr_map: vec![dualfib::ArrId(1), dualfib::ArrId(0)],
    };
    let r = f.validate();
    assert!(
        r.violations
            .iter()
            .any(|v| matches!(v, dualfib::Violation::ReindexComposition { .. })),
        "{r}"
    );
    assert!(f.grothendieck().is_err());
}
