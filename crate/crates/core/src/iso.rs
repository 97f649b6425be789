//! Explicit isomorphisms of finite categories, and a backtracking search for them.

use crate::category::{validate_functor, ArrId, FinCategory, FunctorData, ObjId, ValidationReport, Violation};
use crate::error::{Error, Result};

/// An invertible functor given together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryIso {
    pub forward: FunctorData,
    pub backward: FunctorData,
}

impl CategoryIso {
    pub fn identity(c: &FinCategory) -> Self {
        CategoryIso {
            forward: FunctorData::identity(c),
            backward: FunctorData::identity(c),
        }
    }

    /// Inverts a bijective functor. Fails if the maps are not bijections
    /// onto `cod`.
    pub fn from_forward(cod: &FinCategory, forward: FunctorData) -> Result<Self> {
        let mut obj_back = vec![None; cod.num_objects()];
        for (a, &b) in forward.obj_map.iter().enumerate() {
            let slot = obj_back.get_mut(b.0).ok_or(Error::UnknownObject(b))?;
            if slot.replace(ObjId(a)).is_some() {
                return Err(Error::CheckFailed(format!("object map is not injective at {b}")));
            }
        }
        let mut arr_back = vec![None; cod.num_arrows()];
        for (f, &g) in forward.arr_map.iter().enumerate() {
            let slot = arr_back.get_mut(g.0).ok_or(Error::UnknownArrow(g))?;
            if slot.replace(ArrId(f)).is_some() {
                return Err(Error::CheckFailed(format!("arrow map is not injective at {g}")));
            }
        }
        let obj_map = obj_back
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::CheckFailed("object map is not surjective".into()))?;
        let arr_map = arr_back
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::CheckFailed("arrow map is not surjective".into()))?;
        Ok(CategoryIso {
            forward,
            backward: FunctorData { obj_map, arr_map },
        })
    }

    pub fn inverse(&self) -> CategoryIso {
        CategoryIso {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Both directions are functors and they compose to identities.
    pub fn validate(&self, dom: &FinCategory, cod: &FinCategory) -> ValidationReport {
        let mut r = ValidationReport::default();
        r.extend_nested("forward", validate_functor(dom, cod, &self.forward));
        r.extend_nested("backward", validate_functor(cod, dom, &self.backward));
        if !r.is_empty() {
            return r;
        }
        for a in dom.objects() {
            if self.backward.obj(self.forward.obj(a)) != a {
                r.push(Violation::NotInverseObject { object: a });
            }
        }
        for f in dom.arrows() {
            if self.backward.arr(self.forward.arr(f)) != f {
                r.push(Violation::NotInverse { arrow: f });
            }
        }
        for b in cod.objects() {
            if self.forward.obj(self.backward.obj(b)) != b {
                r.push(Violation::Nested {
                    context: "codomain".into(),
                    violation: Box::new(Violation::NotInverseObject { object: b }),
                });
            }
        }
        for g in cod.arrows() {
            if self.forward.arr(self.backward.arr(g)) != g {
                r.push(Violation::Nested {
                    context: "codomain".into(),
                    violation: Box::new(Violation::NotInverse { arrow: g }),
                });
            }
        }
        r
    }

    /// [`validate`](Self::validate) plus commutation with projections into a common base.
    pub fn validate_over(
        &self,
        dom: &FinCategory,
        dom_proj: &FunctorData,
        cod: &FinCategory,
        cod_proj: &FunctorData,
    ) -> ValidationReport {
        let mut r = self.validate(dom, cod);
        if !r.is_empty() {
            return r;
        }
        for a in dom.objects() {
            if cod_proj.obj(self.forward.obj(a)) != dom_proj.obj(a) {
                r.push(Violation::ProjectionMismatchObject { object: a });
            }
        }
        for f in dom.arrows() {
            if cod_proj.arr(self.forward.arr(f)) != dom_proj.arr(f) {
                r.push(Violation::ProjectionMismatch { arrow: f });
            }
        }
        r
    }
}

/// Searches for any isomorphism `dom -> cod`.
pub fn find_isomorphism(dom: &FinCategory, cod: &FinCategory) -> Option<CategoryIso> {
    let zero_o = |c: &FinCategory| vec![0; c.num_objects()];
    let zero_a = |c: &FinCategory| vec![0; c.num_arrows()];
    Search::new(dom, &zero_o(dom), &zero_a(dom), cod, &zero_o(cod), &zero_a(cod))?.run()
}

/// Searches for an isomorphism commuting with projections to a common base.
pub fn find_isomorphism_over(
    dom: &FinCategory,
    dom_proj: &FunctorData,
    cod: &FinCategory,
    cod_proj: &FunctorData,
) -> Option<CategoryIso> {
    let ol = |p: &FunctorData| p.obj_map.iter().map(|o| o.0).collect::<Vec<_>>();
    let al = |p: &FunctorData| p.arr_map.iter().map(|a| a.0).collect::<Vec<_>>();
    Search::new(dom, &ol(dom_proj), &al(dom_proj), cod, &ol(cod_proj), &al(cod_proj))?.run()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ArrSig {
    label: usize,
    identity: bool,
    iso: bool,
    endo_orbit: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ObjSig {
    label: usize,
    out: Vec<ArrSig>,
    incoming: Vec<ArrSig>,
}

fn arr_sig(c: &FinCategory, label: usize, f: ArrId) -> ArrSig {
    let endo_orbit = (c.src(f) == c.tgt(f)).then(|| {
        let mut seen = vec![f];
        let mut cur = f;
        loop {
            cur = match c.compose(cur, f) {
                Some(x) => x,
                None => return (usize::MAX, 0),
            };
            if let Some(p) = seen.iter().position(|&x| x == cur) {
                return (p, seen.len() - p);
            }
            seen.push(cur);
        }
    });
    ArrSig {
        label,
        identity: c.is_identity(f),
        iso: c.inverse(f).is_some(),
        endo_orbit,
    }
}

struct Side<'a> {
    cat: &'a FinCategory,
    arr_sigs: Vec<ArrSig>,
    obj_sigs: Vec<ObjSig>,
}

impl<'a> Side<'a> {
    fn new(cat: &'a FinCategory, obj_labels: &[usize], arr_labels: &[usize]) -> Self {
        let arr_sigs: Vec<_> = cat.arrows().map(|f| arr_sig(cat, arr_labels[f.0], f)).collect();
        let obj_sigs = cat
            .objects()
            .map(|a| {
                let mut out: Vec<_> = cat
                    .arrows()
                    .filter(|&f| cat.src(f) == a)
                    .map(|f| arr_sigs[f.0].clone())
                    .collect();
                let mut incoming: Vec<_> = cat
                    .arrows()
                    .filter(|&f| cat.tgt(f) == a)
                    .map(|f| arr_sigs[f.0].clone())
                    .collect();
                out.sort();
                incoming.sort();
                ObjSig {
                    label: obj_labels[a.0],
                    out,
                    incoming,
                }
            })
            .collect();
        Side {
            cat,
            arr_sigs,
            obj_sigs,
        }
    }
}

struct Search<'a> {
    dom: Side<'a>,
    cod: Side<'a>,
    // composable triples (f, g, f.g) of dom, indexed by each participant
    triples: Vec<Vec<(ArrId, ArrId, ArrId)>>,
}

impl<'a> Search<'a> {
    fn new(
        dom: &'a FinCategory,
        dom_ol: &[usize],
        dom_al: &[usize],
        cod: &'a FinCategory,
        cod_ol: &[usize],
        cod_al: &[usize],
    ) -> Option<Self> {
        if dom.num_objects() != cod.num_objects() || dom.num_arrows() != cod.num_arrows() {
            return None;
        }
        let d = Side::new(dom, dom_ol, dom_al);
        let c = Side::new(cod, cod_ol, cod_al);
        let mut ds = d.obj_sigs.clone();
        let mut cs = c.obj_sigs.clone();
        ds.sort();
        cs.sort();
        if ds != cs {
            return None;
        }
        let mut triples = vec![Vec::new(); dom.num_arrows()];
        for (f, g) in dom.composable_pairs() {
            if let Some(h) = dom.compose(f, g) {
                let t = (f, g, h);
                triples[f.0].push(t);
                if g != f {
                    triples[g.0].push(t);
                }
                if h != f && h != g {
                    triples[h.0].push(t);
                }
            }
        }
        Some(Search {
            dom: d,
            cod: c,
            triples,
        })
    }

    fn run(&self) -> Option<CategoryIso> {
        let mut obj_map = vec![None; self.dom.cat.num_objects()];
        let mut used = vec![false; self.cod.cat.num_objects()];
        self.assign_objects(0, &mut obj_map, &mut used)
    }

    fn assign_objects(
        &self,
        next: usize,
        obj_map: &mut Vec<Option<ObjId>>,
        used: &mut Vec<bool>,
    ) -> Option<CategoryIso> {
        if next == obj_map.len() {
            let objs: Vec<ObjId> = obj_map.iter().map(|o| o.unwrap()).collect();
            return self.assign_arrows(&objs);
        }
        for b in self.cod.cat.objects() {
            if used[b.0] || self.cod.obj_sigs[b.0] != self.dom.obj_sigs[next] {
                continue;
            }
            used[b.0] = true;
            obj_map[next] = Some(b);
            if let Some(iso) = self.assign_objects(next + 1, obj_map, used) {
                return Some(iso);
            }
            obj_map[next] = None;
            used[b.0] = false;
        }
        None
    }

    fn assign_arrows(&self, objs: &[ObjId]) -> Option<CategoryIso> {
        let dom = self.dom.cat;
        let cod = self.cod.cat;
        let mut arr_map: Vec<Option<ArrId>> = vec![None; dom.num_arrows()];
        let mut used = vec![false; cod.num_arrows()];
        for a in dom.objects() {
            let i = dom.identity(a);
            let j = cod.identity(objs[a.0]);
            arr_map[i.0] = Some(j);
            used[j.0] = true;
        }
        let order: Vec<ArrId> = dom.arrows().filter(|&f| !dom.is_identity(f)).collect();
        for a in dom.objects() {
            if !self.consistent(dom.identity(a), &arr_map) {
                return None;
            }
        }
        if self.backtrack(&order, 0, objs, &mut arr_map, &mut used) {
            let forward = FunctorData {
                obj_map: objs.to_vec(),
                arr_map: arr_map.into_iter().map(|a| a.unwrap()).collect(),
            };
            CategoryIso::from_forward(cod, forward).ok()
        } else {
            None
        }
    }

    fn consistent(&self, f: ArrId, arr_map: &[Option<ArrId>]) -> bool {
        self.triples[f.0]
            .iter()
            .all(|&(a, b, c)| match (arr_map[a.0], arr_map[b.0], arr_map[c.0]) {
                (Some(x), Some(y), Some(z)) => self.cod.cat.compose(x, y) == Some(z),
                _ => true,
            })
    }

    fn backtrack(
        &self,
        order: &[ArrId],
        k: usize,
        objs: &[ObjId],
        arr_map: &mut Vec<Option<ArrId>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&f) = order.get(k) else { return true };
        let dom = self.dom.cat;
        let (s, t) = (objs[dom.src(f).0], objs[dom.tgt(f).0]);
        for &g in self.cod.cat.hom(s, t) {
            if used[g.0] || self.cod.arr_sigs[g.0] != self.dom.arr_sigs[f.0] {
                continue;
            }
            arr_map[f.0] = Some(g);
            if self.consistent(f, arr_map) {
                used[g.0] = true;
                if self.backtrack(order, k + 1, objs, arr_map, used) {
                    return true;
                }
                used[g.0] = false;
            }
            arr_map[f.0] = None;
        }
        false
    }
}
