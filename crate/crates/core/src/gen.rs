//! Deterministic generators for test fibrations, indexed categories and
//! non-fibrations. Seeded families use ChaCha so the same spec always
//! yields the same ids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId};
use crate::error::{Error, Result};
use crate::fibration::{FibSetup, MissingLift};
use crate::indexed::IndexedCat;

/// A finite group as a multiplication table; `mul[a][b]` is `a` then `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let g = GroupTable { names, table };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let n = self.order();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Precondition("group table is not n x n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| self.table[e][x] == x && self.table[x][e] == x))
            .ok_or_else(|| Error::Precondition("group table has no unit".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == e && self.table[b][a] == e) {
                return Err(Error::Precondition(format!("element {} has no inverse", self.names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Precondition("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn unit(&self) -> usize {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|x| self.mul(e, x) == x))
            .expect("group has a unit")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e = self.unit();
        (0..self.order())
            .find(|&b| self.mul(a, b) == e)
            .expect("group has inverses")
    }

    pub fn cyclic(n: usize) -> Self {
        GroupTable {
            names: (0..n).map(|i| format!("z{i}")).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// Permutations of `0..n` in lexicographic order (so the identity is
    /// element 0); `a` then `b` sends `x` to `b(a(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&a.iter().map(|&x| b[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| format!("p{}", p.iter().map(|d| d.to_string()).collect::<String>()))
            .collect();
        GroupTable { names, table }
    }

    pub fn to_category(&self) -> FinCategory {
        FinCategory::from_monoid(&self.names, &self.table).expect("group table")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Parity of a permutation of `S_n` as an element of `Z2`.
pub fn sign_hom(n: usize) -> Vec<usize> {
    permutations(n)
        .iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            inversions % 2
        })
        .collect()
}

/// The functor between one-object categories induced by `hom`.
pub fn gen_group_hom(g: &GroupTable, b: &GroupTable, hom: &[usize]) -> Result<FibSetup> {
    g.check()?;
    b.check()?;
    if hom.len() != g.order() || hom.iter().any(|&x| x >= b.order()) {
        return Err(Error::Precondition("homomorphism map has the wrong shape".into()));
    }
    let proj = FunctorData {
        obj_map: vec![ObjId(0)],
        arr_map: hom.iter().map(|&x| ArrId(x)).collect(),
    };
    FibSetup::new(g.to_category(), b.to_category(), proj)
}

/// `sign: S3 -> Z2`.
pub fn sign_fibration() -> FibSetup {
    gen_group_hom(&GroupTable::symmetric(3), &GroupTable::cyclic(2), &sign_hom(3)).expect("sign is a homomorphism")
}

pub fn identity_fibration(c: FinCategory) -> FibSetup {
    let p = FunctorData::identity(&c);
    FibSetup::new(c.clone(), c, p).expect("identity functor")
}

/// The first projection `B x C -> B`.
pub fn gen_product(b: &FinCategory, c: &FinCategory) -> FibSetup {
    let total = b.product(c);
    let (no, na) = (c.num_objects(), c.num_arrows());
    let proj = FunctorData {
        obj_map: total.objects().map(|o| ObjId(o.0 / no)).collect(),
        arr_map: total.arrows().map(|a| ArrId(a.0 / na)).collect(),
    };
    FibSetup::new(total, b.clone(), proj).expect("projection is a functor")
}

/// Small named categories used as parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Terminal,
    Interval,
    Chain(usize),
    Cyclic(usize),
    Discrete(usize),
    /// The monoid `{1, e}` with `e.e = e`.
    Idempotent,
}

impl Shape {
    pub fn category(self) -> FinCategory {
        match self {
            Shape::Terminal => FinCategory::terminal(),
            Shape::Interval => FinCategory::chain(2),
            Shape::Chain(n) => FinCategory::chain(n),
            Shape::Cyclic(n) => GroupTable::cyclic(n).to_category(),
            Shape::Discrete(n) => FinCategory::discrete(n),
            Shape::Idempotent => {
                FinCategory::from_monoid(&["1".to_string(), "e".to_string()], &[vec![0, 1], vec![1, 1]])
                    .expect("idempotent monoid")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexedSpec {
    ConstantTerminal,
    Constant {
        base: Shape,
        fibre: Shape,
    },
    /// `Z_n` acting on the discrete category with `n` objects by rotation.
    GroupAction {
        order: usize,
    },
    /// Interval base, `Z2` fibres, reindexing along `0 < 1` the trivial homomorphism.
    IntervalReindex,
    /// Chain base with chain fibres and seeded monotone reindexing maps.
    Chains {
        base_len: usize,
        max_fibre_len: usize,
        seed: u64,
    },
}

fn constant(base: FinCategory, fibre: &FinCategory) -> IndexedCat {
    IndexedCat {
        fibres: vec![fibre.clone(); base.num_objects()],
        reindex: vec![FunctorData::identity(fibre); base.num_arrows()],
        base,
    }
}

fn monotone_functor(dom: &FinCategory, cod: &FinCategory, map: &[usize]) -> FunctorData {
    FunctorData {
        obj_map: map.iter().map(|&i| ObjId(i)).collect(),
        arr_map: dom
            .arrows()
            .map(|f| {
                let (p, q) = (map[dom.src(f).0], map[dom.tgt(f).0]);
                cod.hom(ObjId(p), ObjId(q))[0]
            })
            .collect(),
    }
}

pub fn gen_indexed(spec: &IndexedSpec) -> Result<IndexedCat> {
    let f = match *spec {
        IndexedSpec::ConstantTerminal => constant(FinCategory::terminal(), &FinCategory::terminal()),
        IndexedSpec::Constant { base, fibre } => constant(base.category(), &fibre.category()),
        IndexedSpec::GroupAction { order } => {
            let base = GroupTable::cyclic(order).to_category();
            let fibre = FinCategory::discrete(order);
            let reindex = (0..order)
                .map(|k| {
                    let rot: Vec<usize> = (0..order).map(|x| (x + k) % order).collect();
                    FunctorData {
                        obj_map: rot.iter().map(|&x| ObjId(x)).collect(),
                        arr_map: rot.iter().map(|&x| ArrId(x)).collect(),
                    }
                })
                .collect();
            IndexedCat {
                base,
                fibres: vec![fibre],
                reindex,
            }
        }
        IndexedSpec::IntervalReindex => {
            let base = FinCategory::chain(2);
            let z2 = GroupTable::cyclic(2).to_category();
            let alpha = base.arrow_by_name("0<1").expect("interval arrow");
            let reindex = base
                .arrows()
                .map(|a| {
                    if a == alpha {
                        FunctorData {
                            obj_map: vec![ObjId(0)],
                            arr_map: vec![ArrId(0), ArrId(0)],
                        }
                    } else {
                        FunctorData::identity(&z2)
                    }
                })
                .collect();
            IndexedCat {
                base,
                fibres: vec![z2.clone(), z2],
                reindex,
            }
        }
        IndexedSpec::Chains {
            base_len,
            max_fibre_len,
            seed,
        } => {
            if base_len == 0 || max_fibre_len == 0 {
                return Err(Error::Precondition("chain lengths must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = FinCategory::chain(base_len);
            let lens: Vec<usize> = (0..base_len).map(|_| rng.gen_range(1..=max_fibre_len)).collect();
            let fibres: Vec<FinCategory> = lens.iter().map(|&n| FinCategory::chain(n)).collect();
            // step[i]: monotone map from fibre i+1 to fibre i
            let step: Vec<Vec<usize>> = (0..base_len.saturating_sub(1))
                .map(|i| {
                    let mut m: Vec<usize> = (0..lens[i + 1]).map(|_| rng.gen_range(0..lens[i])).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            let reindex = base
                .arrows()
                .map(|a| {
                    let (i, j) = (base.src(a).0, base.tgt(a).0);
                    let map: Vec<usize> = (0..lens[j])
                        .map(|y| (i..j).rev().fold(y, |acc, k| step[k][acc]))
                        .collect();
                    monotone_functor(&fibres[j], &fibres[i], &map)
                })
                .collect();
            IndexedCat { base, fibres, reindex }
        }
    };
    f.validate().into_result()?;
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonFibrationSpec {
    /// `Z_n -> Z_{2n}`, `x |-> 2x`.
    NonSurjectiveHom { order: usize },
    /// Over the interval: `X -> Y` over `0 < 1`, and a second object `Y'`
    /// over `1` with nothing into it.
    MissingArrow,
    /// Over the interval: arrows over `0 < 1` into `Y` exist but none is cartesian.
    NoCartesianLift,
}

/// A functor that is not a fibration, with the `(alpha, Y)` that has no lift.
pub fn gen_non_fibration(spec: &NonFibrationSpec) -> Result<(FibSetup, MissingLift)> {
    match *spec {
        NonFibrationSpec::NonSurjectiveHom { order } => {
            if order == 0 {
                return Err(Error::Precondition("order must be positive".into()));
            }
            let g = GroupTable::cyclic(order);
            let b = GroupTable::cyclic(2 * order);
            let hom: Vec<usize> = (0..order).map(|x| 2 * x).collect();
            let s = gen_group_hom(&g, &b, &hom)?;
            Ok((
                s,
                MissingLift {
                    alpha: ArrId(1),
                    object: ObjId(0),
                },
            ))
        }
        NonFibrationSpec::MissingArrow => {
            let base = FinCategory::chain(2);
            let (id0, alpha, id1) = (ArrId(0), ArrId(1), ArrId(2));
            let mut b = CategoryBuilder::new();
            let x = b.object("X");
            let y = b.object("Y");
            let y2 = b.object("Y'");
            b.identity_arrow("1X", x);
            b.identity_arrow("1Y", y);
            b.identity_arrow("1Y'", y2);
            b.arrow("h", x, y);
            b.fill_unit_composites();
            let proj = FunctorData {
                obj_map: vec![ObjId(0), ObjId(1), ObjId(1)],
                arr_map: vec![id0, id1, id1, alpha],
            };
            let s = FibSetup::new(b.build()?, base, proj)?;
            Ok((s, MissingLift { alpha, object: y2 }))
        }
        NonFibrationSpec::NoCartesianLift => {
            let base = FinCategory::chain(2);
            let (id0, alpha, id1) = (ArrId(0), ArrId(1), ArrId(2));
            let mut b = CategoryBuilder::new();
            let x0 = b.object("X0");
            let x1 = b.object("X1");
            let y = b.object("Y");
            b.identity_arrow("1X0", x0);
            b.identity_arrow("1X1", x1);
            b.identity_arrow("1Y", y);
            let u = b.arrow("u", x0, x1);
            b.arrow("h0", x0, y);
            let h1 = b.arrow("h1", x1, y);
            let uh1 = b.arrow("uh1", x0, y);
            b.compose(u, h1, uh1);
            b.fill_unit_composites();
            let proj = FunctorData {
                obj_map: vec![ObjId(0), ObjId(0), ObjId(1)],
                arr_map: vec![id0, id0, id1, id0, alpha, alpha, alpha],
            };
            let s = FibSetup::new(b.build()?, base, proj)?;
            Ok((s, MissingLift { alpha, object: y }))
        }
    }
}

/// The positive fibration corpus: every family used by the test and acceptance suites.
pub fn fibration_families() -> Vec<(String, FibSetup)> {
    let mut out: Vec<(String, FibSetup)> = vec![
        ("terminal".into(), identity_fibration(FinCategory::terminal())),
        ("identity-chain3".into(), identity_fibration(FinCategory::chain(3))),
        ("sign-S3-Z2".into(), sign_fibration()),
        (
            "Z3-to-trivial".into(),
            gen_group_hom(&GroupTable::cyclic(3), &GroupTable::cyclic(1), &[0, 0, 0]).expect("hom"),
        ),
        (
            "Z4-mod-2".into(),
            gen_group_hom(&GroupTable::cyclic(4), &GroupTable::cyclic(2), &[0, 1, 0, 1]).expect("hom"),
        ),
        (
            "interval-x-idempotent".into(),
            gen_product(&Shape::Interval.category(), &Shape::Idempotent.category()),
        ),
        (
            "interval-x-interval".into(),
            gen_product(&Shape::Interval.category(), &Shape::Interval.category()),
        ),
        (
            "Z2-x-chain2".into(),
            gen_product(&Shape::Cyclic(2).category(), &Shape::Chain(2).category()),
        ),
        (
            "interval-x-(Z2-x-interval)".into(),
            gen_product(
                &Shape::Interval.category(),
                &Shape::Cyclic(2).category().product(&Shape::Interval.category()),
            ),
        ),
        (
            "terminal-x-Z3".into(),
            gen_product(&Shape::Terminal.category(), &Shape::Cyclic(3).category()),
        ),
    ];
    for (name, spec) in [
        ("groth-Z2-action", IndexedSpec::GroupAction { order: 2 }),
        ("groth-interval-reindex", IndexedSpec::IntervalReindex),
        (
            "groth-chains-3-2-7",
            IndexedSpec::Chains {
                base_len: 3,
                max_fibre_len: 2,
                seed: 7,
            },
        ),
        (
            "groth-chains-2-3-42",
            IndexedSpec::Chains {
                base_len: 2,
                max_fibre_len: 3,
                seed: 42,
            },
        ),
    ] {
        let f = gen_indexed(&spec).expect("generated indexed category");
        out.push((name.into(), f.grothendieck().expect("grothendieck").fib));
    }
    out
}

/// The indexed-category corpus used for agreement checks.
pub fn indexed_families() -> Vec<(String, IndexedCat)> {
    [
        ("constant-terminal", IndexedSpec::ConstantTerminal),
        (
            "constant-interval-chain2",
            IndexedSpec::Constant {
                base: Shape::Interval,
                fibre: Shape::Chain(2),
            },
        ),
        (
            "constant-terminal-idempotent",
            IndexedSpec::Constant {
                base: Shape::Terminal,
                fibre: Shape::Idempotent,
            },
        ),
        (
            "constant-Z2-interval",
            IndexedSpec::Constant {
                base: Shape::Cyclic(2),
                fibre: Shape::Interval,
            },
        ),
        ("Z2-action", IndexedSpec::GroupAction { order: 2 }),
        ("Z3-action", IndexedSpec::GroupAction { order: 3 }),
        ("interval-reindex", IndexedSpec::IntervalReindex),
        (
            "chains-3-2-7",
            IndexedSpec::Chains {
                base_len: 3,
                max_fibre_len: 2,
                seed: 7,
            },
        ),
        (
            "chains-2-3-42",
            IndexedSpec::Chains {
                base_len: 2,
                max_fibre_len: 3,
                seed: 42,
            },
        ),
    ]
    .into_iter()
    .map(|(n, s)| (n.to_string(), gen_indexed(&s).expect("generated indexed category")))
    .collect()
}
