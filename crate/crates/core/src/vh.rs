//! Vertical-then-cartesian factorization of arrows in a fibration.
//!
//! Lift selection always takes the cartesian lift with the smallest id.
//! That choice only makes computation deterministic; every result here is
//! meant up to [`pairs_equivalent`].

use crate::category::ArrId;
use crate::error::{Error, Result};
use crate::fibration::FibSetup;

/// `(v, h)` with `v` vertical, `h` cartesian and `tgt(v) == src(h)`,
/// standing for the composite `v.h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VhPair {
    pub v: ArrId,
    pub h: ArrId,
}

impl VhPair {
    pub fn new(s: &FibSetup, v: ArrId, h: ArrId) -> Result<Self> {
        if !s.is_vertical(v)? {
            return Err(Error::Precondition(format!("{v} is not vertical")));
        }
        if !s.is_cartesian(h)? {
            return Err(Error::Precondition(format!("{h} is not cartesian")));
        }
        if s.total().tgt(v) != s.total().src(h) {
            return Err(Error::NotComposable(v, h));
        }
        Ok(VhPair { v, h })
    }

    pub fn composite(&self, s: &FibSetup) -> ArrId {
        s.total().compose(self.v, self.h).expect("vh pair is composable")
    }
}

/// The unique vertical `u` with `u.h == z`, for cartesian `h` over `proj(z)`.
///
/// Searches the whole vertical hom-set and fails if the solution is missing
/// or not unique, so it doubles as a check of the universal property.
pub fn vertical_factor(s: &FibSetup, z: ArrId, h: ArrId) -> Result<ArrId> {
    let total = s.total();
    let a = s.proj().obj(total.src(z));
    let id_a = s.base().identity(a);
    if s.proj().obj(total.src(h)) != a || total.tgt(h) != total.tgt(z) {
        return Err(Error::EndpointMismatch(format!(
            "cannot factor {z} through {h} vertically"
        )));
    }
    let sols: Vec<ArrId> = s
        .hom_over_unchecked(id_a, total.src(z), total.src(h))
        .into_iter()
        .filter(|&u| total.compose(u, h) == Some(z))
        .collect();
    match sols.as_slice() {
        [u] => Ok(*u),
        [] => Err(Error::CheckFailed(format!("no vertical u with u.{h} = {z}"))),
        _ => Err(Error::CheckFailed(format!(
            "{} vertical solutions of u.{h} = {z}; {h} is not cartesian",
            sols.len()
        ))),
    }
}

/// Factors `z` as vertical then cartesian, using the least cartesian lift of
/// `proj(z)` into `tgt(z)`.
pub fn vh_factorize(s: &FibSetup, z: ArrId) -> Result<VhPair> {
    s.total().check_arrow(z)?;
    let h = s.least_lift(s.proj().arr(z), s.total().tgt(z))?;
    let v = vertical_factor(s, z, h)?;
    Ok(VhPair { v, h })
}

/// Every vh composition pair whose composite is `z`.
pub fn all_vh_factorizations(s: &FibSetup, z: ArrId) -> Vec<VhPair> {
    let total = s.total();
    let mut out = Vec::new();
    for h in s.lifts_unchecked(s.proj().arr(z), total.tgt(z)) {
        for &v in total.hom(total.src(z), total.src(h)) {
            if s.vertical(v) && total.compose(v, h) == Some(z) {
                out.push(VhPair { v, h });
            }
        }
    }
    out
}

/// All vertical cartesian `i` with `p.v . i == q.v` and `i . q.h == p.h`.
pub fn equivalence_witnesses(s: &FibSetup, p: VhPair, q: VhPair) -> Result<Vec<ArrId>> {
    let total = s.total();
    for x in [p.v, p.h, q.v, q.h] {
        total.check_arrow(x)?;
    }
    if total.src(p.v) != total.src(q.v) || total.tgt(p.h) != total.tgt(q.h) {
        return Err(Error::EndpointMismatch(format!(
            "pairs ({}, {}) and ({}, {}) do not share outer endpoints",
            p.v, p.h, q.v, q.h
        )));
    }
    Ok(total
        .hom(total.tgt(p.v), total.tgt(q.v))
        .iter()
        .copied()
        .filter(|&i| {
            s.vertical(i) && s.cartesian(i) && total.compose(p.v, i) == Some(q.v) && total.compose(i, q.h) == Some(p.h)
        })
        .collect())
}

pub fn pairs_equivalent(s: &FibSetup, p: VhPair, q: VhPair) -> Result<bool> {
    Ok(!equivalence_witnesses(s, p, q)?.is_empty())
}

/// Composite of the arrows represented by `p1` and `p2`, as a vh pair
/// `(v1.w, k.h2)` with `k` the least cartesian lift of `proj(h1)` into
/// `src(h2)` and `w` the vertical arrow with `w.k == h1.v2`.
pub fn compose_pairs(s: &FibSetup, p1: VhPair, p2: VhPair) -> Result<VhPair> {
    let total = s.total();
    if total.tgt(p1.h) != total.src(p2.v) {
        return Err(Error::NotComposable(p1.h, p2.v));
    }
    let k = s.least_lift(s.proj().arr(p1.h), total.src(p2.h))?;
    let h1v2 = total.then(p1.h, p2.v)?;
    let w = vertical_factor(s, h1v2, k)?;
    Ok(VhPair {
        v: total.then(p1.v, w)?,
        h: total.then(k, p2.h)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{self, GroupTable};

    #[test]
    fn vertical_arrows_factor_through_identities() {
        let s = gen::sign_fibration();
        for z in s.total().arrows().filter(|&z| s.vertical(z)) {
            let p = vh_factorize(&s, z).unwrap();
            assert_eq!(p.composite(&s), z);
            // least lift of an identity base arrow: the identity is id 0 in S3
            assert_eq!(p.h, s.total().identity(s.total().src(z)));
            assert_eq!(p.v, z);
        }
    }

    #[test]
    fn group_factorization_is_z_times_inverse_of_lift() {
        let s = gen::sign_fibration();
        let g = GroupTable::symmetric(3);
        for z in s.total().arrows() {
            let p = vh_factorize(&s, z).unwrap();
            let hinv = g.inverse(p.h.0);
            assert_eq!(p.v.0, g.mul(z.0, hinv));
        }
    }

    #[test]
    fn different_base_arrows_are_not_equivalent() {
        let s = gen::sign_fibration();
        let e = s.total().identity(s.total().objects().next().unwrap());
        let odd = s.total().arrows().find(|&a| !s.vertical(a)).unwrap();
        let p = VhPair { v: e, h: e };
        let q = VhPair { v: e, h: odd };
        assert!(!pairs_equivalent(&s, p, q).unwrap());
        assert!(pairs_equivalent(&s, p, p).unwrap());
    }

    #[test]
    fn unit_laws_for_pair_composition() {
        let s = gen::sign_fibration();
        let e = s.total().identity(s.total().objects().next().unwrap());
        let unit = VhPair { v: e, h: e };
        for z in s.total().arrows() {
            let p = vh_factorize(&s, z).unwrap();
            assert!(pairs_equivalent(&s, compose_pairs(&s, p, unit).unwrap(), p).unwrap());
            assert!(pairs_equivalent(&s, compose_pairs(&s, unit, p).unwrap(), p).unwrap());
        }
    }

    #[test]
    fn vh_pair_constructor_checks() {
        let (s, _) = gen::gen_non_fibration(&gen::NonFibrationSpec::NoCartesianLift).unwrap();
        let bad = s.total().arrow_by_name("h0").unwrap();
        assert!(!s.cartesian(bad));
        let e = s.total().identity(s.total().src(bad));
        assert!(VhPair::new(&s, e, bad).is_err());
        assert!(matches!(vh_factorize(&s, bad), Err(Error::NotAFibration { .. })));
    }
}
