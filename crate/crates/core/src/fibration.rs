//! Cartesian arrows, vertical arrows, fibres and the fibration predicate
//! for a functor `proj: total -> base`.

use serde::Serialize;

use crate::category::{
    validate_category, validate_functor, ArrId, CategoryBuilder, FinCategory, FunctorData, ObjId, ValidationReport,
};
use crate::error::{Error, Result};

/// A functor `proj: total -> base` with the cartesian arrows precomputed.
#[derive(Clone, Debug)]
pub struct FibSetup {
    total: FinCategory,
    base: FinCategory,
    proj: FunctorData,
    cartesian: Vec<bool>,
    over: Vec<Vec<ObjId>>,
}

/// A base arrow and an object over its target with no cartesian lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MissingLift {
    pub alpha: ArrId,
    pub object: ObjId,
}

/// The fibre over a base object together with its embedding into the total
/// category. Local ids are dense and follow total-category id order.
#[derive(Clone, Debug)]
pub struct Fibre {
    pub category: FinCategory,
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrId>,
}

impl Fibre {
    pub fn local_object(&self, x: ObjId) -> Option<ObjId> {
        self.objects.binary_search(&x).ok().map(ObjId)
    }

    pub fn local_arrow(&self, f: ArrId) -> Option<ArrId> {
        self.arrows.binary_search(&f).ok().map(ArrId)
    }

    pub fn embedding(&self) -> FunctorData {
        FunctorData {
            obj_map: self.objects.clone(),
            arr_map: self.arrows.clone(),
        }
    }
}

/// Post-composition with `h` is a bijection `hom_xi(Z, src h) -> hom_{xi.proj(h)}(Z, tgt h)`
/// for every base arrow `xi` into `proj(src h)` and every `Z` over `src xi`.
///
/// This is the literal definition, evaluated by exhaustive scan.
pub fn cartesian_by_definition(total: &FinCategory, base: &FinCategory, proj: &FunctorData, h: ArrId) -> bool {
    let (x, y) = (total.src(h), total.tgt(h));
    let alpha = proj.arr(h);
    let a = base.src(alpha);
    for xi in base.arrows().filter(|&xi| base.tgt(xi) == a) {
        let Some(xi_alpha) = base.compose(xi, alpha) else {
            return false;
        };
        let c = base.src(xi);
        for z in total.objects().filter(|&z| proj.obj(z) == c) {
            let domain: Vec<ArrId> = total.hom(z, x).iter().copied().filter(|&k| proj.arr(k) == xi).collect();
            let codomain = total.hom(z, y).iter().filter(|&&k| proj.arr(k) == xi_alpha).count();
            if domain.len() != codomain {
                return false;
            }
            let mut images: Vec<Option<ArrId>> = domain.iter().map(|&k| total.compose(k, h)).collect();
            images.sort();
            if images.iter().any(|i| i.is_none()) || images.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
    }
    true
}

impl FibSetup {
    /// Validates both categories and the functor, then precomputes
    /// cartesianness of every arrow.
    pub fn new(total: FinCategory, base: FinCategory, proj: FunctorData) -> Result<Self> {
        let mut r = ValidationReport::default();
        r.extend_nested("total", validate_category(&total));
        r.extend_nested("base", validate_category(&base));
        if r.is_empty() {
            r.extend_nested("projection", validate_functor(&total, &base, &proj));
        }
        r.into_result()?;
        let cartesian = total
            .arrows()
            .map(|h| cartesian_by_definition(&total, &base, &proj, h))
            .collect();
        let mut over = vec![Vec::new(); base.num_objects()];
        for x in total.objects() {
            over[proj.obj(x).0].push(x);
        }
        Ok(FibSetup {
            total,
            base,
            proj,
            cartesian,
            over,
        })
    }

    pub fn total(&self) -> &FinCategory {
        &self.total
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn proj(&self) -> &FunctorData {
        &self.proj
    }

    pub fn into_parts(self) -> (FinCategory, FinCategory, FunctorData) {
        (self.total, self.base, self.proj)
    }

    pub fn objects_over(&self, a: ObjId) -> &[ObjId] {
        &self.over[a.0]
    }

    /// Arrows `x -> y` of the total category lying over `alpha`.
    pub fn hom_over(&self, alpha: ArrId, x: ObjId, y: ObjId) -> Result<Vec<ArrId>> {
        self.base.check_arrow(alpha)?;
        self.total.check_object(x)?;
        self.total.check_object(y)?;
        if self.proj.obj(x) != self.base.src(alpha) || self.proj.obj(y) != self.base.tgt(alpha) {
            return Err(Error::Precondition(format!(
                "objects {x}, {y} do not lie over the endpoints of base arrow {alpha}"
            )));
        }
        Ok(self.hom_over_unchecked(alpha, x, y))
    }

    pub(crate) fn hom_over_unchecked(&self, alpha: ArrId, x: ObjId, y: ObjId) -> Vec<ArrId> {
        self.total
            .hom(x, y)
            .iter()
            .copied()
            .filter(|&h| self.proj.arr(h) == alpha)
            .collect()
    }

    pub fn is_cartesian(&self, h: ArrId) -> Result<bool> {
        self.total.check_arrow(h)?;
        Ok(self.cartesian[h.0])
    }

    pub fn is_vertical(&self, h: ArrId) -> Result<bool> {
        self.total.check_arrow(h)?;
        Ok(self.vertical(h))
    }

    /// Unchecked variant of [`is_cartesian`](Self::is_cartesian).
    pub fn cartesian(&self, h: ArrId) -> bool {
        self.cartesian[h.0]
    }

    /// Unchecked variant of [`is_vertical`](Self::is_vertical).
    pub fn vertical(&self, h: ArrId) -> bool {
        self.base.is_identity(self.proj.arr(h))
    }

    pub fn fibre(&self, a: ObjId) -> Result<Fibre> {
        self.base.check_object(a)?;
        let objects = self.over[a.0].clone();
        let id_a = self.base.identity(a);
        let arrows: Vec<ArrId> = self.total.arrows().filter(|&f| self.proj.arr(f) == id_a).collect();
        let mut b = CategoryBuilder::new();
        for &x in &objects {
            b.object(self.total.object_name(x));
        }
        let local_obj = |x: ObjId| ObjId(objects.binary_search(&x).expect("object over a"));
        let local_arr = |f: ArrId| arrows.binary_search(&f).ok().map(ArrId);
        for &f in &arrows {
            b.arrow(
                self.total.arrow_name(f),
                local_obj(self.total.src(f)),
                local_obj(self.total.tgt(f)),
            );
        }
        for &x in &objects {
            b.set_identity(
                local_obj(x),
                local_arr(self.total.identity(x)).expect("identity is vertical"),
            );
        }
        for &f in &arrows {
            for &g in &arrows {
                if let Some(h) = self.total.compose(f, g) {
                    if let (Some(lf), Some(lg), Some(lh)) = (local_arr(f), local_arr(g), local_arr(h)) {
                        b.compose(lf, lg, lh);
                    }
                }
            }
        }
        Ok(Fibre {
            category: b.build()?,
            objects,
            arrows,
        })
    }

    /// All cartesian arrows over `alpha` with target `y`, in id order.
    pub fn cartesian_lifts(&self, alpha: ArrId, y: ObjId) -> Result<Vec<ArrId>> {
        self.base.check_arrow(alpha)?;
        self.total.check_object(y)?;
        if self.proj.obj(y) != self.base.tgt(alpha) {
            return Err(Error::Precondition(format!(
                "object {y} does not lie over the target of base arrow {alpha}"
            )));
        }
        Ok(self.lifts_unchecked(alpha, y))
    }

    pub(crate) fn lifts_unchecked(&self, alpha: ArrId, y: ObjId) -> Vec<ArrId> {
        self.total
            .arrows()
            .filter(|&h| self.total.tgt(h) == y && self.proj.arr(h) == alpha && self.cartesian[h.0])
            .collect()
    }

    /// The cartesian lift of `alpha` into `y` with the smallest id.
    pub fn least_lift(&self, alpha: ArrId, y: ObjId) -> Result<ArrId> {
        self.lifts_unchecked(alpha, y)
            .first()
            .copied()
            .ok_or(Error::NotAFibration { alpha, object: y })
    }

    pub fn check_fibration(&self) -> Result<(), MissingLift> {
        for alpha in self.base.arrows() {
            for &y in &self.over[self.base.tgt(alpha).0] {
                if self.lifts_unchecked(alpha, y).is_empty() {
                    return Err(MissingLift { alpha, object: y });
                }
            }
        }
        Ok(())
    }

    pub fn is_fibration(&self) -> bool {
        self.check_fibration().is_ok()
    }

    pub(crate) fn require_fibration(&self) -> Result<()> {
        self.check_fibration().map_err(|m| Error::NotAFibration {
            alpha: m.alpha,
            object: m.object,
        })
    }

    pub fn cartesian_count(&self) -> usize {
        self.cartesian.iter().filter(|&&c| c).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_fibration(c: FinCategory) -> FibSetup {
        let p = FunctorData::identity(&c);
        FibSetup::new(c.clone(), c, p).unwrap()
    }

    fn product_fibration(b: &FinCategory, c: &FinCategory) -> FibSetup {
        let total = b.product(c);
        let (no, na) = (c.num_objects(), c.num_arrows());
        let proj = FunctorData {
            obj_map: total.objects().map(|o| ObjId(o.0 / no)).collect(),
            arr_map: total.arrows().map(|a| ArrId(a.0 / na)).collect(),
        };
        FibSetup::new(total, b.clone(), proj).unwrap()
    }

    #[test]
    fn identity_fibration_basics() {
        let s = identity_fibration(FinCategory::chain(3));
        for f in s.total().arrows() {
            assert!(s.cartesian(f));
            let (a, b) = (s.total().src(f), s.total().tgt(f));
            assert_eq!(s.hom_over(f, a, b).unwrap(), vec![f]);
        }
        assert!(s.is_fibration());
        let fib = s.fibre(ObjId(1)).unwrap();
        assert_eq!(fib.category.num_objects(), 1);
        assert_eq!(fib.category.num_arrows(), 1);
    }

    #[test]
    fn hom_over_rejects_wrong_endpoints() {
        let s = identity_fibration(FinCategory::chain(2));
        let f = s.base().arrow_by_name("0<1").unwrap();
        assert!(matches!(s.hom_over(f, ObjId(1), ObjId(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn product_with_idempotent_monoid() {
        // C = {1, e} with e.e = e; (alpha, e) is not cartesian, (alpha, 1) is.
        let names = vec!["1".to_string(), "e".to_string()];
        let c = FinCategory::from_monoid(&names, &[vec![0, 1], vec![1, 1]]).unwrap();
        let b = FinCategory::chain(2);
        let s = product_fibration(&b, &c);
        let alpha = b.arrow_by_name("0<1").unwrap();
        let with = |g: usize| ArrId(alpha.0 * 2 + g);
        assert!(s.is_cartesian(with(0)).unwrap());
        assert!(!s.is_cartesian(with(1)).unwrap());
        // hom over alpha between (0,*) and (1,*) is a copy of C
        assert_eq!(s.hom_over(alpha, ObjId(0), ObjId(1)).unwrap().len(), 2);
        assert!(s.is_fibration());
        assert_eq!(s.cartesian_lifts(alpha, ObjId(1)).unwrap(), vec![with(0)]);
        let fib = s.fibre(ObjId(0)).unwrap();
        assert!(crate::iso::find_isomorphism(&fib.category, &c).is_some());
    }

    #[test]
    fn vertical_and_unknown_ids() {
        let s = identity_fibration(FinCategory::chain(2));
        assert!(s.is_vertical(ArrId(0)).unwrap());
        assert!(!s.is_vertical(s.total().arrow_by_name("0<1").unwrap()).unwrap());
        assert!(matches!(s.is_cartesian(ArrId(40)), Err(Error::UnknownArrow(_))));
        assert!(s.fibre(ObjId(7)).is_err());
    }
}
