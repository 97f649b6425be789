//! Strict indexed categories `B^op -> Cat`, their Grothendieck construction,
//! and comparison of the pointwise-opposite construction with the dual fibration.

use std::collections::HashMap;

use crate::category::{
    validate_category, validate_functor, ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId, ValidationReport,
    Violation,
};
use crate::dual::{DualFib, VhSpan};
use crate::error::{Error, Result};
use crate::fibration::FibSetup;
use crate::iso::CategoryIso;

/// A strict functor `B^op -> Cat` on finite data.
///
/// `reindex[alpha]` for `alpha: A -> B` runs `fibres[B] -> fibres[A]`, and
/// `reindex[alpha.beta]` must equal `reindex[beta]` followed by `reindex[alpha]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedCat {
    pub base: FinCategory,
    pub fibres: Vec<FinCategory>,
    pub reindex: Vec<FunctorData>,
}

pub fn validate_indexed(f: &IndexedCat) -> ValidationReport {
    let mut r = ValidationReport::default();
    let base = &f.base;
    r.extend_nested("base", validate_category(base));
    if f.fibres.len() != base.num_objects() || f.reindex.len() != base.num_arrows() {
        r.push(Violation::MapShape {
            expected_objects: base.num_objects(),
            expected_arrows: base.num_arrows(),
        });
        return r;
    }
    if !r.is_empty() {
        return r;
    }
    for a in base.objects() {
        r.extend_nested(
            &format!("fibre over {}", base.object_name(a)),
            validate_category(&f.fibres[a.0]),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for alpha in base.arrows() {
        let dom = &f.fibres[base.tgt(alpha).0];
        let cod = &f.fibres[base.src(alpha).0];
        r.extend_nested(
            &format!("reindexing along {}", base.arrow_name(alpha)),
            validate_functor(dom, cod, &f.reindex[alpha.0]),
        );
    }
    if !r.is_empty() {
        return r;
    }
    for a in base.objects() {
        if f.reindex[base.identity(a).0] != FunctorData::identity(&f.fibres[a.0]) {
            r.push(Violation::ReindexIdentity { object: a });
        }
    }
    for (alpha, beta) in base.composable_pairs() {
        let Some(ab) = base.compose(alpha, beta) else { continue };
        if f.reindex[ab.0] != f.reindex[beta.0].then(&f.reindex[alpha.0]) {
            r.push(Violation::ReindexComposition { f: alpha, g: beta });
        }
    }
    r
}

/// An arrow `(v, alpha): (X, A) -> (Y, B)` of a Grothendieck construction,
/// with `v: X -> alpha*(Y)` in the fibre over `A`. Ids are fibre-local.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairArrow {
    pub alpha: ArrId,
    pub target: ObjId,
    pub v: ArrId,
}

/// The total category of an indexed category, fibred over its base.
///
/// Objects are `(X, A)` in lexicographic `(A, X)` order; arrows in
/// lexicographic `(alpha, Y, v)` order.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub fib: FibSetup,
    pub objects: Vec<(ObjId, ObjId)>,
    pub arrows: Vec<PairArrow>,
    object_index: HashMap<(ObjId, ObjId), ObjId>,
    arrow_index: HashMap<PairArrow, ArrId>,
}

impl Grothendieck {
    pub fn object_id(&self, a: ObjId, x: ObjId) -> Option<ObjId> {
        self.object_index.get(&(a, x)).copied()
    }

    pub fn arrow_id(&self, arrow: PairArrow) -> Option<ArrId> {
        self.arrow_index.get(&arrow).copied()
    }
}

impl IndexedCat {
    pub fn validate(&self) -> ValidationReport {
        validate_indexed(self)
    }

    /// `alpha*` applied to an object of the fibre over `tgt(alpha)`.
    pub fn pull_object(&self, alpha: ArrId, y: ObjId) -> ObjId {
        self.reindex[alpha.0].obj(y)
    }

    pub fn pull_arrow(&self, alpha: ArrId, g: ArrId) -> ArrId {
        self.reindex[alpha.0].arr(g)
    }

    pub fn grothendieck(&self) -> Result<Grothendieck> {
        self.validate().into_result()?;
        let base = &self.base;
        let mut b = CategoryBuilder::new();
        let mut objects = Vec::new();
        let mut object_index = HashMap::new();
        for a in base.objects() {
            let fa = &self.fibres[a.0];
            for x in fa.objects() {
                let id = b.object(format!("({},{})", fa.object_name(x), base.object_name(a)));
                objects.push((a, x));
                object_index.insert((a, x), id);
            }
        }
        let mut arrows = Vec::new();
        let mut arrow_index = HashMap::new();
        let mut proj_arr = Vec::new();
        for alpha in base.arrows() {
            let (a, bb) = (base.src(alpha), base.tgt(alpha));
            let (fa, fb) = (&self.fibres[a.0], &self.fibres[bb.0]);
            for y in fb.objects() {
                let pulled = self.pull_object(alpha, y);
                for v in fa.arrows().filter(|&v| fa.tgt(v) == pulled) {
                    let pa = PairArrow { alpha, target: y, v };
                    let id = b.arrow(
                        format!(
                            "({},{},{})",
                            fa.arrow_name(v),
                            base.arrow_name(alpha),
                            fb.object_name(y)
                        ),
                        object_index[&(a, fa.src(v))],
                        object_index[&(bb, y)],
                    );
                    arrows.push(pa);
                    arrow_index.insert(pa, id);
                    proj_arr.push(alpha);
                }
            }
        }
        for (&(a, x), &id) in &object_index {
            let fa = &self.fibres[a.0];
            let pa = PairArrow {
                alpha: base.identity(a),
                target: x,
                v: fa.identity(x),
            };
            b.set_identity(id, arrow_index[&pa]);
        }
        for (i, p1) in arrows.iter().enumerate() {
            for (j, p2) in arrows.iter().enumerate() {
                if base.tgt(p1.alpha) != base.src(p2.alpha) {
                    continue;
                }
                // (X,A) -> (Y,B) -> (Z,C): composable iff the middle objects agree
                let fb = &self.fibres[base.tgt(p1.alpha).0];
                if fb.src(p2.v) != p1.target {
                    continue;
                }
                let fa = &self.fibres[base.src(p1.alpha).0];
                let ab = base.then(p1.alpha, p2.alpha)?;
                let v = fa.then(p1.v, self.pull_arrow(p1.alpha, p2.v))?;
                let pa = PairArrow {
                    alpha: ab,
                    target: p2.target,
                    v,
                };
                let k = arrow_index.get(&pa).ok_or_else(|| {
                    Error::CheckFailed("composite pair arrow is missing; reindexing is not strict".into())
                })?;
                b.compose(ArrId(i), ArrId(j), *k);
            }
        }
        let total = b.build()?;
        let proj = FunctorData {
            obj_map: objects.iter().map(|&(a, _)| a).collect(),
            arr_map: proj_arr,
        };
        let fib = FibSetup::new(total, base.clone(), proj)?;
        Ok(Grothendieck {
            fib,
            objects,
            arrows,
            object_index,
            arrow_index,
        })
    }

    /// `F` followed by the opposite-category functor `Cat -> Cat`.
    pub fn dualize(&self) -> IndexedCat {
        IndexedCat {
            base: self.base.clone(),
            fibres: self.fibres.iter().map(FinCategory::opposite).collect(),
            reindex: self.reindex.clone(),
        }
    }

    /// The arrow `(1_{alpha*(Y)}, alpha): (alpha*(Y), A) -> (Y, B)`.
    pub fn triangle_arrow(&self, g: &Grothendieck, alpha: ArrId, y: ObjId) -> Result<ArrId> {
        self.base.check_arrow(alpha)?;
        let fb = &self.fibres[self.base.tgt(alpha).0];
        if !fb.has_object(y) {
            return Err(Error::Precondition(format!(
                "{y} is not an object of the fibre over the target of {alpha}"
            )));
        }
        let fa = &self.fibres[self.base.src(alpha).0];
        let pa = PairArrow {
            alpha,
            target: y,
            v: fa.identity(self.pull_object(alpha, y)),
        };
        g.arrow_id(pa)
            .ok_or_else(|| Error::CheckFailed(format!("triangle arrow over {alpha} is missing")))
    }
}

/// Both sides of the comparison and the isomorphism between them.
#[derive(Clone, Debug)]
pub struct DualAgreement {
    pub original: Grothendieck,
    pub dual: DualFib,
    pub dualized: Grothendieck,
    /// From `dualized.fib.total()` to `dual.fib().total()`, over the base.
    pub iso: CategoryIso,
}

/// Builds the Grothendieck construction of the pointwise dual of `f` and the
/// dual fibration of the Grothendieck construction of `f`, and checks that
/// `(v, alpha)` with `v: alpha*(Y) -> X` corresponds to the class of the span
/// `((v, 1_A), alpha <| Y)`.
pub fn check_dual_agreement(f: &IndexedCat) -> Result<DualAgreement> {
    let original = f.grothendieck()?;
    let dual = DualFib::build(&original.fib)?;
    let fd = f.dualize();
    let dualized = fd.grothendieck()?;
    let base = &f.base;
    let mut arr_map = Vec::with_capacity(dualized.arrows.len());
    for pa in &dualized.arrows {
        let a = base.src(pa.alpha);
        // in the opposite fibre v runs X -> alpha*(Y); in f's fibre it runs alpha*(Y) -> X
        let x = f.fibres[a.0].tgt(pa.v);
        let vertical = original
            .arrow_id(PairArrow {
                alpha: base.identity(a),
                target: x,
                v: pa.v,
            })
            .ok_or_else(|| Error::CheckFailed("vertical leg missing".into()))?;
        let cartesian = f.triangle_arrow(&original, pa.alpha, pa.target)?;
        let g = dual
            .class_of_span(VhSpan {
                v: vertical,
                h: cartesian,
            })
            .ok_or_else(|| Error::CheckFailed("span is not a vh span".into()))?;
        arr_map.push(g);
    }
    let obj_map = dualized
        .objects
        .iter()
        .map(|&(a, x)| original.object_id(a, x).expect("same objects"))
        .collect();
    let forward = FunctorData { obj_map, arr_map };
    let iso = CategoryIso::from_forward(dual.fib().total(), forward)?;
    iso.validate_over(
        dualized.fib.total(),
        dualized.fib.proj(),
        dual.fib().total(),
        dual.fib().proj(),
    )
    .into_result()?;
    Ok(DualAgreement {
        original,
        dual,
        dualized,
        iso,
    })
}
