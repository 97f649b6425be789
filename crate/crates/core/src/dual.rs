//! The dual fibration `X*` of a fibration `X -> B`, built from equivalence
//! classes of vh spans, with no cleavage involved in its definition.
//!
//! A vh span `(v, h)` has a common apex `M = src(v) = src(h)` with `v: M -> X`
//! vertical and `h: M -> Y` cartesian; it runs from `X` to `Y`. Two spans
//! `(v, h)` and `(v', h')` are equivalent when a vertical isomorphism `i`
//! satisfies `i.v == v'` and `i.h == h'`. The classes are the arrows of `X*`
//! (comorphisms) and `X*` projects to `B` by `{(v, h)} |-> proj(h)`.

use std::collections::HashMap;

use crate::category::{ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId};
use crate::error::{Error, Result};
use crate::fibration::{FibSetup, Fibre};
use crate::iso::CategoryIso;
use crate::vh::{all_vh_factorizations, vertical_factor, vh_factorize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VhSpan {
    pub v: ArrId,
    pub h: ArrId,
}

impl VhSpan {
    pub fn new(s: &FibSetup, v: ArrId, h: ArrId) -> Result<Self> {
        if !s.is_vertical(v)? {
            return Err(Error::Precondition(format!("{v} is not vertical")));
        }
        if !s.is_cartesian(h)? {
            return Err(Error::Precondition(format!("{h} is not cartesian")));
        }
        if s.total().src(v) != s.total().src(h) {
            return Err(Error::EndpointMismatch(format!("{v} and {h} do not share a source")));
        }
        Ok(VhSpan { v, h })
    }

    pub fn apex(&self, s: &FibSetup) -> ObjId {
        s.total().src(self.v)
    }

    /// Domain of the comorphism: the far end of the vertical leg.
    pub fn source(&self, s: &FibSetup) -> ObjId {
        s.total().tgt(self.v)
    }

    /// Codomain of the comorphism: the far end of the cartesian leg.
    pub fn target(&self, s: &FibSetup) -> ObjId {
        s.total().tgt(self.h)
    }
}

/// One equivalence class of vh spans, stored in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comorphism {
    /// Sorted by `(v, h)`; the first member is the canonical representative.
    pub members: Vec<VhSpan>,
    pub src: ObjId,
    pub tgt: ObjId,
}

impl Comorphism {
    /// The class of `span`: all `(i.v, i.h)` for vertical isomorphisms `i` into its apex.
    pub fn class_of(s: &FibSetup, span: VhSpan) -> Comorphism {
        let total = s.total();
        let apex = span.apex(s);
        let mut members: Vec<VhSpan> = total
            .objects()
            .flat_map(|m| total.hom(m, apex).iter().copied())
            .filter(|&i| s.vertical(i) && total.inverse(i).is_some())
            .filter_map(|i| {
                Some(VhSpan {
                    v: total.compose(i, span.v)?,
                    h: total.compose(i, span.h)?,
                })
            })
            .collect();
        members.sort();
        members.dedup();
        Comorphism {
            members,
            src: span.source(s),
            tgt: span.target(s),
        }
    }

    pub fn canon(&self) -> VhSpan {
        self.members[0]
    }

    pub fn contains(&self, span: &VhSpan) -> bool {
        self.members.binary_search(span).is_ok()
    }
}

/// Vertical isomorphisms `i: apex(b) -> apex(a)` with `i.a.v == b.v` and `i.a.h == b.h`.
pub fn span_witnesses(s: &FibSetup, a: VhSpan, b: VhSpan) -> Result<Vec<ArrId>> {
    let total = s.total();
    for x in [a.v, a.h, b.v, b.h] {
        total.check_arrow(x)?;
    }
    if a.source(s) != b.source(s) || a.target(s) != b.target(s) {
        return Err(Error::EndpointMismatch(format!(
            "spans ({}, {}) and ({}, {}) do not share endpoints",
            a.v, a.h, b.v, b.h
        )));
    }
    Ok(total
        .hom(b.apex(s), a.apex(s))
        .iter()
        .copied()
        .filter(|&i| {
            s.vertical(i)
                && total.inverse(i).is_some()
                && total.compose(i, a.v) == Some(b.v)
                && total.compose(i, a.h) == Some(b.h)
        })
        .collect())
}

pub fn span_equivalent(s: &FibSetup, a: VhSpan, b: VhSpan) -> Result<bool> {
    Ok(!span_witnesses(s, a, b)?.is_empty())
}

/// Every vh span of `s`, sorted by `(v, h)`.
pub fn enumerate_spans(s: &FibSetup) -> Vec<VhSpan> {
    let total = s.total();
    let mut out = Vec::new();
    for v in total.arrows().filter(|&v| s.vertical(v)) {
        for h in total.arrows() {
            if s.cartesian(h) && total.src(h) == total.src(v) {
                out.push(VhSpan { v, h });
            }
        }
    }
    out
}

/// Partitions all vh spans into classes, ordered by canonical representative.
pub fn enumerate_comorphisms(s: &FibSetup) -> Result<Vec<Comorphism>> {
    s.require_fibration()?;
    let spans = enumerate_spans(s);
    let mut seen = HashMap::new();
    let mut classes = Vec::new();
    for span in spans {
        if seen.contains_key(&span) {
            continue;
        }
        let c = Comorphism::class_of(s, span);
        debug_assert_eq!(c.canon(), span);
        for m in &c.members {
            seen.insert(*m, classes.len());
        }
        classes.push(c);
    }
    Ok(classes)
}

/// Composes representatives along a given cartesian lift `k` of `proj(a.h)`
/// into the apex of `b`: returns `(w.a.v, k.b.h)` where `w.a.h == k.b.v`.
pub fn compose_spans_via(s: &FibSetup, a: VhSpan, b: VhSpan, k: ArrId) -> Result<VhSpan> {
    let total = s.total();
    if a.target(s) != b.source(s) {
        return Err(Error::NotComposable(a.h, b.v));
    }
    if !s.cartesian(k) || s.proj().arr(k) != s.proj().arr(a.h) || total.tgt(k) != b.apex(s) {
        return Err(Error::Precondition(format!(
            "{k} is not a cartesian lift of the base arrow of {} into the apex of the second span",
            a.h
        )));
    }
    let kv2 = total.then(k, b.v)?;
    let w = vertical_factor(s, kv2, a.h)?;
    Ok(VhSpan {
        v: total.then(w, a.v)?,
        h: total.then(k, b.h)?,
    })
}

/// [`compose_spans_via`] with the least cartesian lift.
pub fn compose_spans(s: &FibSetup, a: VhSpan, b: VhSpan) -> Result<VhSpan> {
    if s.total().tgt(a.h) != s.total().tgt(b.v) {
        return Err(Error::NotComposable(a.h, b.v));
    }
    let k = s.least_lift(s.proj().arr(a.h), b.apex(s))?;
    compose_spans_via(s, a, b, k)
}

pub fn compose_comorphisms(s: &FibSetup, c1: &Comorphism, c2: &Comorphism) -> Result<Comorphism> {
    if c1.tgt != c2.src {
        return Err(Error::NotComposable(c1.canon().h, c2.canon().v));
    }
    let span = compose_spans(s, c1.canon(), c2.canon())?;
    Ok(Comorphism::class_of(s, span))
}

/// `X*` together with the bookkeeping that ties its arrows back to spans in `X`.
#[derive(Clone, Debug)]
pub struct DualFib {
    fib: FibSetup,
    classes: Vec<Comorphism>,
    span_class: HashMap<VhSpan, ArrId>,
    vertical_class: Vec<Option<ArrId>>,
}

fn span_name(total: &FinCategory, span: VhSpan) -> String {
    format!("{{{},{}}}", total.arrow_name(span.v), total.arrow_name(span.h))
}

impl DualFib {
    pub fn build(s: &FibSetup) -> Result<DualFib> {
        let classes = enumerate_comorphisms(s)?;
        let total = s.total();
        let mut span_class = HashMap::new();
        for (g, c) in classes.iter().enumerate() {
            for m in &c.members {
                span_class.insert(*m, ArrId(g));
            }
        }
        let mut b = CategoryBuilder::new();
        for x in total.objects() {
            b.object(total.object_name(x));
        }
        for c in &classes {
            b.arrow(span_name(total, c.canon()), c.src, c.tgt);
        }
        for x in total.objects() {
            let id = total.identity(x);
            b.set_identity(x, span_class[&VhSpan { v: id, h: id }]);
        }
        for (g1, c1) in classes.iter().enumerate() {
            for (g2, c2) in classes.iter().enumerate() {
                if c1.tgt != c2.src {
                    continue;
                }
                let span = compose_spans(s, c1.canon(), c2.canon())?;
                let g = *span_class.get(&span).ok_or_else(|| {
                    Error::CheckFailed(format!("composite span ({}, {}) is not a vh span", span.v, span.h))
                })?;
                b.compose(ArrId(g1), ArrId(g2), g);
            }
        }
        let dual_total = b.build()?;
        let dual_proj = FunctorData {
            obj_map: s.proj().obj_map.clone(),
            arr_map: classes.iter().map(|c| s.proj().arr(c.canon().h)).collect(),
        };
        let fib = FibSetup::new(dual_total, s.base().clone(), dual_proj)?;
        let vertical_class = total
            .arrows()
            .map(|v| {
                s.vertical(v).then(|| {
                    span_class[&VhSpan {
                        v,
                        h: total.identity(total.src(v)),
                    }]
                })
            })
            .collect();
        Ok(DualFib {
            fib,
            classes,
            span_class,
            vertical_class,
        })
    }

    /// `X*` as a functor to the base.
    pub fn fib(&self) -> &FibSetup {
        &self.fib
    }

    pub fn into_fib(self) -> FibSetup {
        self.fib
    }

    pub fn classes(&self) -> &[Comorphism] {
        &self.classes
    }

    pub fn class(&self, g: ArrId) -> Result<&Comorphism> {
        self.classes.get(g.0).ok_or(Error::UnknownArrow(g))
    }

    pub fn class_of_span(&self, span: VhSpan) -> Option<ArrId> {
        self.span_class.get(&span).copied()
    }

    /// The arrow `{(v, 1)}` of `X*` for a vertical `v` of `X`.
    pub fn vertical_class(&self, v: ArrId) -> Option<ArrId> {
        self.vertical_class.get(v.0).copied().flatten()
    }

    /// `(g is cartesian in X*, g has a representative (1, h))`. The two agree
    /// on every comorphism.
    pub fn cartesian_char(&self, s: &FibSetup, g: ArrId) -> Result<(bool, bool)> {
        let by_definition = self.fib.is_cartesian(g)?;
        let has_unit_rep = self.class(g)?.members.iter().any(|m| s.total().is_identity(m.v));
        Ok((by_definition, has_unit_rep))
    }

    /// The unique `(v, 1)` member of a vertical comorphism.
    pub fn vertical_rep(&self, s: &FibSetup, g: ArrId) -> Result<VhSpan> {
        if !self.fib.is_vertical(g)? {
            return Err(Error::Precondition(format!("comorphism {g} is not vertical")));
        }
        let reps: Vec<VhSpan> = self.classes[g.0]
            .members
            .iter()
            .copied()
            .filter(|m| s.total().is_identity(m.h))
            .collect();
        match reps.as_slice() {
            [r] => Ok(*r),
            _ => Err(Error::CheckFailed(format!(
                "vertical comorphism {g} has {} representatives of the form (v, 1)",
                reps.len()
            ))),
        }
    }

    /// The isomorphism `fibre(X*, a) -> fibre(X, a)^op` sending `{(v, 1)}` to `v`.
    pub fn fibre_duality_iso(&self, s: &FibSetup, a: ObjId) -> Result<FibreDuality> {
        let dual_fibre = self.fib.fibre(a)?;
        let fibre = s.fibre(a)?;
        let opposite = fibre.category.opposite();
        let mut arr_map = Vec::with_capacity(dual_fibre.arrows.len());
        for &g in &dual_fibre.arrows {
            let rep = self.vertical_rep(s, g)?;
            arr_map.push(fibre.local_arrow(rep.v).expect("vertical over a"));
        }
        // X* has the objects of X, so the local object orders coincide
        let obj_map = dual_fibre
            .objects
            .iter()
            .map(|&x| fibre.local_object(x).expect("object over a"))
            .collect();
        let iso = CategoryIso::from_forward(&opposite, FunctorData { obj_map, arr_map })?;
        iso.validate(&dual_fibre.category, &opposite).into_result()?;
        Ok(FibreDuality {
            dual_fibre,
            fibre,
            opposite,
            iso,
        })
    }
}

/// Output of [`DualFib::fibre_duality_iso`].
#[derive(Clone, Debug)]
pub struct FibreDuality {
    pub dual_fibre: Fibre,
    pub fibre: Fibre,
    /// `fibre.category.opposite()`
    pub opposite: FinCategory,
    /// From `dual_fibre.category` to `opposite`.
    pub iso: CategoryIso,
}

/// `X*`, `X**` and the isomorphism `y: X -> X**` over the base.
#[derive(Clone, Debug)]
pub struct DoubleDual {
    pub dual: DualFib,
    pub double: DualFib,
    pub y: CategoryIso,
}

impl DoubleDual {
    /// `y` on a vertical `v: X' -> X`: the class of the `X*`-span `({(v, 1)}, 1)`.
    pub fn y_vertical(&self, s: &FibSetup, v: ArrId) -> Result<ArrId> {
        let dual_total = self.dual.fib.total();
        let vbar = self
            .dual
            .vertical_class(v)
            .ok_or_else(|| Error::Precondition(format!("{v} is not vertical")))?;
        let span = VhSpan {
            v: vbar,
            h: dual_total.identity(s.total().tgt(v)),
        };
        self.double
            .class_of_span(span)
            .ok_or_else(|| Error::CheckFailed(format!("y({v}) is not a vh span of X*")))
    }

    /// `y` on a cartesian `h: X' -> Y`: the class of the `X*`-span `(1, {(1, h)})`.
    pub fn y_cartesian(&self, s: &FibSetup, h: ArrId) -> Result<ArrId> {
        let total = s.total();
        let src = total.src(h);
        let hbar = self
            .dual
            .class_of_span(VhSpan {
                v: total.identity(src),
                h,
            })
            .ok_or_else(|| Error::Precondition(format!("{h} is not cartesian")))?;
        let span = VhSpan {
            v: self.dual.fib.total().identity(src),
            h: hbar,
        };
        self.double
            .class_of_span(span)
            .ok_or_else(|| Error::CheckFailed(format!("y({h}) is not a vh span of X*")))
    }

    /// `y(v).y(h)` for a particular factorization of an arrow as `v.h`.
    pub fn y_of_pair(&self, s: &FibSetup, v: ArrId, h: ArrId) -> Result<ArrId> {
        let yv = self.y_vertical(s, v)?;
        let yh = self.y_cartesian(s, h)?;
        self.double.fib.total().then(yv, yh)
    }
}

/// Builds `X*` and `X**` and the canonical `y: X -> X**`, checking that `y`
/// is independent of factorization choices, bijective, functorial and over
/// the base, and that it agrees with the explicit inverse read off from
/// representatives of the form `((v, 1), 1)` and `(1, (1, h))`.
pub fn double_dual_iso(s: &FibSetup) -> Result<DoubleDual> {
    let dual = DualFib::build(s)?;
    let double = DualFib::build(dual.fib())?;
    let mut dd = DoubleDual {
        dual,
        double,
        y: CategoryIso::identity(s.total()),
    };
    let total = s.total();
    let mut arr_map = Vec::with_capacity(total.num_arrows());
    for f in total.arrows() {
        let p = vh_factorize(s, f)?;
        let yf = dd.y_of_pair(s, p.v, p.h)?;
        for q in all_vh_factorizations(s, f) {
            let other = dd.y_of_pair(s, q.v, q.h)?;
            if other != yf {
                return Err(Error::CheckFailed(format!(
                    "y({f}) depends on the factorization: ({}, {}) gives {yf}, ({}, {}) gives {other}",
                    p.v, p.h, q.v, q.h
                )));
            }
        }
        arr_map.push(yf);
    }
    let forward = FunctorData {
        obj_map: total.objects().collect(),
        arr_map,
    };
    let x2 = dd.double.fib();
    let y = CategoryIso::from_forward(x2.total(), forward)?;
    y.validate_over(total, s.proj(), x2.total(), x2.proj()).into_result()?;

    // explicit inverse: pick (vbar, hbar) in X*, then (v, 1) for vbar and (1, h) for hbar
    let x1 = dd.dual.fib();
    for g in x2.total().arrows() {
        let class = dd.double.class(g)?;
        let rep = class.canon();
        let v = dd.dual.vertical_rep(s, rep.v)?.v;
        let h = dd
            .dual
            .class(rep.h)?
            .members
            .iter()
            .find(|m| total.is_identity(m.v))
            .map(|m| m.h)
            .ok_or_else(|| Error::CheckFailed(format!("cartesian comorphism {} has no (1, h) form", rep.h)))?;
        let f = total.then(v, h)?;
        if y.backward.arr(g) != f {
            return Err(Error::CheckFailed(format!(
                "explicit inverse sends {g} to {f}, y^-1 sends it to {}",
                y.backward.arr(g)
            )));
        }
        debug_assert!(x1.cartesian(rep.h));
    }
    dd.y = y;
    Ok(dd)
}
