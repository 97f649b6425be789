#![allow(dead_code)]

use dualfib::gen::{fibration_families, indexed_families};
use dualfib::{ArrId, FibSetup};

pub fn corpus() -> Vec<(String, FibSetup)> {
    let mut out = fibration_families();
    for (name, f) in indexed_families() {
        out.push((format!("groth({name})"), f.grothendieck().unwrap().fib));
    }
    out
}

/// Cartesianness as unique factorization: for every `g: Z -> tgt(h)` and
/// every base `xi` with `xi.p(h) == p(g)` there is exactly one `f` over `xi`
/// with `f.h == g`.
pub fn cartesian_oracle(s: &FibSetup, h: ArrId) -> bool {
    let (t, b, p) = (s.total(), s.base(), s.proj());
    let x = t.src(h);
    t.objects().all(|z| {
        t.hom(z, t.tgt(h)).iter().all(|&g| {
            b.hom(p.obj(z), p.obj(x)).iter().all(|&xi| {
                if b.compose(xi, p.arr(h)) != Some(p.arr(g)) {
                    return true;
                }
                t.hom(z, x)
                    .iter()
                    .filter(|&&f| p.arr(f) == xi && t.compose(f, h) == Some(g))
                    .count()
                    == 1
            })
        })
    })
}
