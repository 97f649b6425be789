//! Finite categories stored as closed composition tables.
//!
//! Composition is diagrammatic throughout the crate: `compose(f, g)` is
//! "`f` then `g`" and is defined exactly when `tgt(f) == src(g)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArrId(pub usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArrId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ArrId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One violated law, with the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdentityEndpoints {
        object: ObjId,
        arrow: ArrId,
    },
    LeftUnit {
        arrow: ArrId,
    },
    RightUnit {
        arrow: ArrId,
    },
    MissingComposite {
        f: ArrId,
        g: ArrId,
    },
    CompositeOfNonComposable {
        f: ArrId,
        g: ArrId,
    },
    CompositeEndpoints {
        f: ArrId,
        g: ArrId,
        composite: ArrId,
    },
    Associativity {
        f: ArrId,
        g: ArrId,
        h: ArrId,
    },
    MapShape {
        expected_objects: usize,
        expected_arrows: usize,
    },
    ObjectImageOutOfRange {
        object: ObjId,
    },
    ArrowImageOutOfRange {
        arrow: ArrId,
    },
    FunctorEndpoints {
        arrow: ArrId,
    },
    FunctorIdentity {
        object: ObjId,
    },
    FunctorComposition {
        f: ArrId,
        g: ArrId,
    },
    NotInverse {
        arrow: ArrId,
    },
    NotInverseObject {
        object: ObjId,
    },
    ProjectionMismatch {
        arrow: ArrId,
    },
    ProjectionMismatchObject {
        object: ObjId,
    },
    ReindexIdentity {
        object: ObjId,
    },
    ReindexComposition {
        f: ArrId,
        g: ArrId,
    },
    Nested {
        context: String,
        violation: Box<Violation>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            IdentityEndpoints { object, arrow } => {
                write!(f, "identity of object {object} is arrow {arrow} with wrong endpoints")
            }
            LeftUnit { arrow } => write!(f, "left unit law fails for arrow {arrow}"),
            RightUnit { arrow } => write!(f, "right unit law fails for arrow {arrow}"),
            MissingComposite { f: a, g } => write!(f, "missing composite of ({a}, {g})"),
            CompositeOfNonComposable { f: a, g } => {
                write!(f, "composite given for non-composable pair ({a}, {g})")
            }
            CompositeEndpoints { f: a, g, composite } => {
                write!(f, "composite {composite} of ({a}, {g}) has wrong endpoints")
            }
            Associativity { f: a, g, h } => write!(f, "associativity fails for ({a}, {g}, {h})"),
            MapShape {
                expected_objects,
                expected_arrows,
            } => write!(
                f,
                "functor maps have wrong length (expected {expected_objects} objects, {expected_arrows} arrows)"
            ),
            ObjectImageOutOfRange { object } => {
                write!(f, "image of object {object} is not an object of the codomain")
            }
            ArrowImageOutOfRange { arrow } => {
                write!(f, "image of arrow {arrow} is not an arrow of the codomain")
            }
            FunctorEndpoints { arrow } => {
                write!(f, "image of arrow {arrow} does not respect source/target")
            }
            FunctorIdentity { object } => {
                write!(f, "identity of object {object} is not sent to an identity")
            }
            FunctorComposition { f: a, g } => {
                write!(f, "composite of ({a}, {g}) is not preserved")
            }
            NotInverse { arrow } => write!(f, "round trip moves arrow {arrow}"),
            NotInverseObject { object } => write!(f, "round trip moves object {object}"),
            ProjectionMismatch { arrow } => {
                write!(f, "arrow {arrow} is not sent over the same base arrow")
            }
            ProjectionMismatchObject { object } => {
                write!(f, "object {object} is not sent over the same base object")
            }
            ReindexIdentity { object } => {
                write!(
                    f,
                    "reindexing along the identity of {object} is not the identity functor"
                )
            }
            ReindexComposition { f: a, g } => {
                write!(f, "reindexing is not strictly functorial on ({a}, {g})")
            }
            Nested { context, violation } => write!(f, "{context}: {violation}"),
        }
    }
}

/// Every violation found by a validator. Empty means the structure is lawful.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend_nested(&mut self, context: &str, other: ValidationReport) {
        self.violations
            .extend(other.violations.into_iter().map(|v| Violation::Nested {
                context: context.to_string(),
                violation: Box::new(v),
            }));
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// A finite category given by explicit tables.
///
/// Values are immutable once built. Ids are dense from zero and stable
/// under every operation that does not explicitly renumber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    object_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<ArrId>,
    table: Vec<Option<ArrId>>,
    homs: Vec<Vec<ArrId>>,
}

#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    object_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<Option<ArrId>>,
    entries: Vec<(ArrId, ArrId, ArrId)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> ObjId {
        self.object_names.push(name.into());
        self.identity.push(None);
        ObjId(self.object_names.len() - 1)
    }

    pub fn arrow(&mut self, name: impl Into<String>, src: ObjId, tgt: ObjId) -> ArrId {
        self.arrow_names.push(name.into());
        self.src.push(src);
        self.tgt.push(tgt);
        ArrId(self.arrow_names.len() - 1)
    }

    /// Adds a fresh arrow `name: a -> a` and records it as the identity of `a`.
    pub fn identity_arrow(&mut self, name: impl Into<String>, a: ObjId) -> ArrId {
        let id = self.arrow(name, a, a);
        self.set_identity(a, id);
        id
    }

    pub fn set_identity(&mut self, a: ObjId, arrow: ArrId) {
        if let Some(slot) = self.identity.get_mut(a.0) {
            *slot = Some(arrow);
        }
    }

    pub fn identity_of(&self, a: ObjId) -> Option<ArrId> {
        self.identity.get(a.0).copied().flatten()
    }

    pub fn compose(&mut self, f: ArrId, g: ArrId, h: ArrId) {
        self.entries.push((f, g, h));
    }

    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_names.len()
    }

    /// Adds the unit-law entries `id.f = f` and `f.id = f` that are not already present.
    pub fn fill_unit_composites(&mut self) {
        let n = self.arrow_names.len();
        let mut seen = vec![false; n * n];
        for &(f, g, _) in &self.entries {
            if f.0 < n && g.0 < n {
                seen[f.0 * n + g.0] = true;
            }
        }
        for a in 0..n {
            let f = ArrId(a);
            if let Some(i) = self.identity_of(self.src[a]) {
                if i.0 < n && !seen[i.0 * n + a] {
                    seen[i.0 * n + a] = true;
                    self.entries.push((i, f, f));
                }
            }
            if let Some(i) = self.identity_of(self.tgt[a]) {
                if i.0 < n && !seen[a * n + i.0] {
                    seen[a * n + i.0] = true;
                    self.entries.push((f, i, f));
                }
            }
        }
    }

    /// Checks id ranges and table consistency. Category axioms are left to
    /// [`validate_category`].
    pub fn build(self) -> Result<FinCategory> {
        let nobj = self.object_names.len();
        let narr = self.arrow_names.len();
        for (a, (&s, &t)) in self.src.iter().zip(&self.tgt).enumerate() {
            if s.0 >= nobj {
                return Err(Error::Precondition(format!("arrow #{a} has unknown source {s}")));
            }
            if t.0 >= nobj {
                return Err(Error::Precondition(format!("arrow #{a} has unknown target {t}")));
            }
        }
        let mut identity = Vec::with_capacity(nobj);
        for (o, i) in self.identity.iter().enumerate() {
            match i {
                Some(i) if i.0 < narr => identity.push(*i),
                Some(i) => return Err(Error::UnknownArrow(*i)),
                None => {
                    return Err(Error::Precondition(format!(
                        "object {} has no identity",
                        self.object_names[o]
                    )))
                }
            }
        }
        let mut table = vec![None; narr * narr];
        for &(f, g, h) in &self.entries {
            for x in [f, g, h] {
                if x.0 >= narr {
                    return Err(Error::UnknownArrow(x));
                }
            }
            let slot = &mut table[f.0 * narr + g.0];
            match slot {
                Some(prev) if *prev != h => {
                    return Err(Error::Precondition(format!(
                        "conflicting composites for ({f}, {g}): {prev} and {h}"
                    )))
                }
                _ => *slot = Some(h),
            }
        }
        let mut homs = vec![Vec::new(); nobj * nobj];
        for a in 0..narr {
            homs[self.src[a].0 * nobj + self.tgt[a].0].push(ArrId(a));
        }
        Ok(FinCategory {
            object_names: self.object_names,
            arrow_names: self.arrow_names,
            src: self.src,
            tgt: self.tgt,
            identity,
            table,
            homs,
        })
    }
}

impl FinCategory {
    /// The category with one object and one arrow.
    pub fn terminal() -> Self {
        let mut b = CategoryBuilder::new();
        let o = b.object("*");
        b.identity_arrow("1", o);
        b.fill_unit_composites();
        b.build().expect("terminal category")
    }

    /// One-object category of a finite monoid; `mul[a][b]` is `a` then `b`.
    pub fn from_monoid(names: &[String], mul: &[Vec<usize>]) -> Result<Self> {
        let n = names.len();
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Precondition(
                "multiplication table is not n x n over n elements".into(),
            ));
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::Precondition("multiplication table has no unit".into()))?;
        let mut b = CategoryBuilder::new();
        let o = b.object("*");
        for name in names {
            b.arrow(name.clone(), o, o);
        }
        b.set_identity(o, ArrId(unit));
        for (x, row) in mul.iter().enumerate() {
            for (y, &z) in row.iter().enumerate() {
                b.compose(ArrId(x), ArrId(y), ArrId(z));
            }
        }
        b.build()
    }

    /// The linear order `0 < 1 < ... < n-1` as a category.
    pub fn chain(n: usize) -> Self {
        let mut b = CategoryBuilder::new();
        let objs: Vec<_> = (0..n).map(|i| b.object(i.to_string())).collect();
        let mut arr = vec![vec![ArrId(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let a = b.arrow(format!("{i}<{j}"), objs[i], objs[j]);
                if i == j {
                    b.set_identity(objs[i], a);
                }
                arr[i][j] = a;
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    b.compose(arr[i][j], arr[j][k], arr[i][k]);
                }
            }
        }
        b.build().expect("chain category")
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            let o = b.object(format!("d{i}"));
            b.identity_arrow(format!("1d{i}"), o);
        }
        b.fill_unit_composites();
        b.build().expect("discrete category")
    }

    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.num_objects()).map(ObjId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrId> + '_ {
        (0..self.num_arrows()).map(ArrId)
    }

    pub fn has_object(&self, a: ObjId) -> bool {
        a.0 < self.num_objects()
    }

    pub fn has_arrow(&self, f: ArrId) -> bool {
        f.0 < self.num_arrows()
    }

    pub fn check_object(&self, a: ObjId) -> Result<()> {
        if self.has_object(a) {
            Ok(())
        } else {
            Err(Error::UnknownObject(a))
        }
    }

    pub fn check_arrow(&self, f: ArrId) -> Result<()> {
        if self.has_arrow(f) {
            Ok(())
        } else {
            Err(Error::UnknownArrow(f))
        }
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.object_names[a.0]
    }

    pub fn arrow_name(&self, f: ArrId) -> &str {
        &self.arrow_names[f.0]
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.object_names.iter().position(|n| n == name).map(ObjId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrId> {
        self.arrow_names.iter().position(|n| n == name).map(ArrId)
    }

    pub fn src(&self, f: ArrId) -> ObjId {
        self.src[f.0]
    }

    pub fn tgt(&self, f: ArrId) -> ObjId {
        self.tgt[f.0]
    }

    pub fn identity(&self, a: ObjId) -> ArrId {
        self.identity[a.0]
    }

    pub fn is_identity(&self, f: ArrId) -> bool {
        self.identity[self.src[f.0].0] == f
    }

    /// Table lookup for "`f` then `g`". `None` for non-composable pairs or
    /// a missing entry.
    pub fn compose(&self, f: ArrId, g: ArrId) -> Option<ArrId> {
        self.table[f.0 * self.num_arrows() + g.0]
    }

    /// Like [`compose`](Self::compose) but treats a missing composite as an error.
    pub fn then(&self, f: ArrId, g: ArrId) -> Result<ArrId> {
        self.check_arrow(f)?;
        self.check_arrow(g)?;
        if self.tgt(f) != self.src(g) {
            return Err(Error::NotComposable(f, g));
        }
        self.compose(f, g).ok_or(Error::NotComposable(f, g))
    }

    /// Arrows `a -> b`, in id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[ArrId] {
        &self.homs[a.0 * self.num_objects() + b.0]
    }

    pub fn hom_set(&self, a: ObjId, b: ObjId) -> Result<&[ArrId]> {
        self.check_object(a)?;
        self.check_object(b)?;
        Ok(self.hom(a, b))
    }

    pub fn inverse(&self, f: ArrId) -> Option<ArrId> {
        let (s, t) = (self.src(f), self.tgt(f));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.compose(f, g) == Some(self.identity(s)) && self.compose(g, f) == Some(self.identity(t)))
    }

    pub fn is_isomorphism(&self, f: ArrId) -> Result<bool> {
        self.check_arrow(f)?;
        Ok(self.inverse(f).is_some())
    }

    /// Same ids, sources and targets swapped, composition transposed.
    pub fn opposite(&self) -> FinCategory {
        let n = self.num_arrows();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        let nobj = self.num_objects();
        let mut homs = vec![Vec::new(); nobj * nobj];
        for a in 0..n {
            homs[self.tgt[a].0 * nobj + self.src[a].0].push(ArrId(a));
        }
        FinCategory {
            object_names: self.object_names.clone(),
            arrow_names: self.arrow_names.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            identity: self.identity.clone(),
            table,
            homs,
        }
    }

    /// Product category; object `(b, c)` has id `b * |C| + c`, arrows likewise.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let (no, na) = (other.num_objects(), other.num_arrows());
        let mut b = CategoryBuilder::new();
        for x in self.objects() {
            for y in other.objects() {
                b.object(format!("({},{})", self.object_name(x), other.object_name(y)));
            }
        }
        for f in self.arrows() {
            for g in other.arrows() {
                b.arrow(
                    format!("({},{})", self.arrow_name(f), other.arrow_name(g)),
                    ObjId(self.src(f).0 * no + other.src(g).0),
                    ObjId(self.tgt(f).0 * no + other.tgt(g).0),
                );
            }
        }
        for x in self.objects() {
            for y in other.objects() {
                b.set_identity(
                    ObjId(x.0 * no + y.0),
                    ArrId(self.identity(x).0 * na + other.identity(y).0),
                );
            }
        }
        for f1 in self.arrows() {
            for f2 in self.arrows() {
                let Some(f12) = self.compose(f1, f2) else { continue };
                for g1 in other.arrows() {
                    for g2 in other.arrows() {
                        if let Some(g12) = other.compose(g1, g2) {
                            b.compose(
                                ArrId(f1.0 * na + g1.0),
                                ArrId(f2.0 * na + g2.0),
                                ArrId(f12.0 * na + g12.0),
                            );
                        }
                    }
                }
            }
        }
        b.build().expect("product of valid tables")
    }

    /// Same table with new names. Panics if the name counts differ.
    pub fn renamed(&self, object_names: Vec<String>, arrow_names: Vec<String>) -> FinCategory {
        assert_eq!(object_names.len(), self.num_objects());
        assert_eq!(arrow_names.len(), self.num_arrows());
        FinCategory {
            object_names,
            arrow_names,
            ..self.clone()
        }
    }

    /// Composable pairs in id order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrId, ArrId)> + '_ {
        self.arrows().flat_map(move |f| {
            let t = self.tgt(f);
            self.arrows().filter(move |&g| self.src(g) == t).map(move |g| (f, g))
        })
    }
}

/// Lists every violated category axiom.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut r = ValidationReport::default();
    for a in c.objects() {
        let i = c.identity(a);
        if c.src(i) != a || c.tgt(i) != a {
            r.push(Violation::IdentityEndpoints { object: a, arrow: i });
        }
    }
    for f in c.arrows() {
        for g in c.arrows() {
            let composable = c.tgt(f) == c.src(g);
            match (composable, c.compose(f, g)) {
                (true, None) => r.push(Violation::MissingComposite { f, g }),
                (false, Some(_)) => r.push(Violation::CompositeOfNonComposable { f, g }),
                (true, Some(h)) if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) => {
                    r.push(Violation::CompositeEndpoints { f, g, composite: h })
                }
                _ => {}
            }
        }
    }
    for f in c.arrows() {
        if c.compose(c.identity(c.src(f)), f) != Some(f) {
            r.push(Violation::LeftUnit { arrow: f });
        }
        if c.compose(f, c.identity(c.tgt(f))) != Some(f) {
            r.push(Violation::RightUnit { arrow: f });
        }
    }
    for (f, g) in c.composable_pairs() {
        let Some(fg) = c.compose(f, g) else { continue };
        for h in c.arrows().filter(|&h| c.src(h) == c.tgt(g)) {
            let left = c.compose(fg, h);
            let right = c.compose(g, h).and_then(|gh| c.compose(f, gh));
            if let (Some(l), Some(rr)) = (left, right) {
                if l != rr {
                    r.push(Violation::Associativity { f, g, h });
                }
            }
        }
    }
    r
}

/// Object and arrow maps of a functor. The categories it runs between are
/// passed alongside wherever they matter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorData {
    pub obj_map: Vec<ObjId>,
    pub arr_map: Vec<ArrId>,
}

impl FunctorData {
    pub fn identity(c: &FinCategory) -> Self {
        FunctorData {
            obj_map: c.objects().collect(),
            arr_map: c.arrows().collect(),
        }
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.0]
    }

    pub fn arr(&self, f: ArrId) -> ArrId {
        self.arr_map[f.0]
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FunctorData) -> FunctorData {
        FunctorData {
            obj_map: self.obj_map.iter().map(|&a| next.obj(a)).collect(),
            arr_map: self.arr_map.iter().map(|&f| next.arr(f)).collect(),
        }
    }
}

/// Lists every functoriality violation of `func` as a map `dom -> cod`.
pub fn validate_functor(dom: &FinCategory, cod: &FinCategory, func: &FunctorData) -> ValidationReport {
    let mut r = ValidationReport::default();
    if func.obj_map.len() != dom.num_objects() || func.arr_map.len() != dom.num_arrows() {
        r.push(Violation::MapShape {
            expected_objects: dom.num_objects(),
            expected_arrows: dom.num_arrows(),
        });
        return r;
    }
    let mut in_range = true;
    for a in dom.objects() {
        if !cod.has_object(func.obj(a)) {
            r.push(Violation::ObjectImageOutOfRange { object: a });
            in_range = false;
        }
    }
    for f in dom.arrows() {
        if !cod.has_arrow(func.arr(f)) {
            r.push(Violation::ArrowImageOutOfRange { arrow: f });
            in_range = false;
        }
    }
    if !in_range {
        return r;
    }
    for f in dom.arrows() {
        let g = func.arr(f);
        if cod.src(g) != func.obj(dom.src(f)) || cod.tgt(g) != func.obj(dom.tgt(f)) {
            r.push(Violation::FunctorEndpoints { arrow: f });
        }
    }
    for a in dom.objects() {
        if func.arr(dom.identity(a)) != cod.identity(func.obj(a)) {
            r.push(Violation::FunctorIdentity { object: a });
        }
    }
    for (f, g) in dom.composable_pairs() {
        let Some(fg) = dom.compose(f, g) else { continue };
        if cod.compose(func.arr(f), func.arr(g)) != Some(func.arr(fg)) {
            r.push(Violation::FunctorComposition { f, g });
        }
    }
    r
}
