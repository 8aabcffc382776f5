//! Finite categories as explicit tables.
//!
//! Objects and morphisms are dense indices. Composition is stored as a full
//! `n × n` table of `Option<Mor>` whose definedness is exactly
//! `cod(f) = dom(g)`; hom-sets are materialised once at construction so that
//! exhaustive checks are plain loops.

mod density;
pub(crate) mod functor;
mod image;
mod nat;

pub use density::{is_dense, Density, DensityFailure};
pub(crate) use density::is_dense_flag;
pub use functor::{enumerate_functors, FinFunctor, FunctorEnumeration, FunctorProperties, FunctorSearch};
pub use image::{full_image, FullImage};
pub use nat::{all_nat_transformations, enumerate_nat_transformations, NatTrans};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::LawReport;

pub type Ob = usize;
pub type Mor = usize;

pub const LAW_TYPING: &str = "composite typing";
pub const LAW_LEFT_UNIT: &str = "left unit";
pub const LAW_RIGHT_UNIT: &str = "right unit";
pub const LAW_ASSOC: &str = "associativity";

/// Raw, unvalidated category tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatTables {
    pub ob_names: Vec<String>,
    pub mor_names: Vec<String>,
    pub dom: Vec<Ob>,
    pub cod: Vec<Ob>,
    pub identity: Vec<Mor>,
    /// Row-major by `(g, f)`: entry `g * n + f` is `g ∘ f`.
    pub compose: Vec<Option<Mor>>,
}

impl CatTables {
    pub fn objects(&self) -> usize {
        self.ob_names.len()
    }

    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    fn check_indices(&self) -> Result<()> {
        let (o, n) = (self.objects(), self.morphisms());
        let bad = |m: String| Err(Error::Malformed(m));
        if self.cod.len() != n || self.mor_names.len() != n {
            return bad(format!("morphism tables disagree on length ({n})"));
        }
        if self.identity.len() != o {
            return bad(format!("identity table has {} entries for {o} objects", self.identity.len()));
        }
        if self.compose.len() != n * n {
            return bad(format!("composition table has {} entries, expected {}", self.compose.len(), n * n));
        }
        if let Some(m) = (0..n).find(|&m| self.dom[m] >= o || self.cod[m] >= o) {
            return bad(format!("morphism {m} has an endpoint out of range"));
        }
        if let Some(x) = (0..o).find(|&x| self.identity[x] >= n) {
            return bad(format!("identity of object {x} out of range"));
        }
        if let Some(i) = self.compose.iter().position(|c| matches!(c, Some(h) if *h >= n)) {
            return bad(format!("composite ({}, {}) out of range", i / n, i % n));
        }
        Ok(())
    }
}

/// Checks the category laws on raw tables. Index errors are reported as
/// [`Error::Malformed`]; law failures are listed in the returned report.
pub fn validate_category(t: &CatTables) -> Result<LawReport> {
    t.check_indices()?;
    let n = t.morphisms();
    let name = |m: Mor| t.mor_names[m].as_str();
    let mut report = LawReport::new(&[LAW_TYPING, LAW_LEFT_UNIT, LAW_RIGHT_UNIT, LAW_ASSOC]);
    let comp = |g: Mor, f: Mor| t.compose[g * n + f];

    for g in 0..n {
        for f in 0..n {
            let composable = t.cod[f] == t.dom[g];
            match comp(g, f) {
                Some(_) if !composable => report.violate(
                    LAW_TYPING,
                    format!("({}, {}) defined but not composable", name(g), name(f)),
                ),
                None if composable => report.violate(
                    LAW_TYPING,
                    format!("({}, {}) composable but undefined", name(g), name(f)),
                ),
                Some(h) if t.dom[h] != t.dom[f] || t.cod[h] != t.cod[g] => report.violate(
                    LAW_TYPING,
                    format!("({}, {}) = {} has the wrong endpoints", name(g), name(f), name(h)),
                ),
                _ => {}
            }
        }
    }
    for (x, &i) in t.identity.iter().enumerate() {
        if t.dom[i] != x || t.cod[i] != x {
            report.violate(LAW_TYPING, format!("identity of {} is not an endomorphism of it", t.ob_names[x]));
        }
    }
    if !report.is_ok() {
        // Unit and associativity checks are meaningless on mistyped tables.
        return Ok(report);
    }
    for f in 0..n {
        let left = t.identity[t.cod[f]];
        if comp(left, f) != Some(f) {
            report.violate(LAW_LEFT_UNIT, format!("({}, {})", name(left), name(f)));
        }
        let right = t.identity[t.dom[f]];
        if comp(f, right) != Some(f) {
            report.violate(LAW_RIGHT_UNIT, format!("({}, {})", name(f), name(right)));
        }
    }
    for f in 0..n {
        for g in (0..n).filter(|&g| t.dom[g] == t.cod[f]) {
            let gf = comp(g, f).unwrap();
            for h in (0..n).filter(|&h| t.dom[h] == t.cod[g]) {
                let hg = comp(h, g).unwrap();
                if comp(h, gf) != comp(hg, f) {
                    report.violate(LAW_ASSOC, format!("({}, {}, {})", name(h), name(g), name(f)));
                }
            }
        }
    }
    Ok(report)
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    tables: CatTables,
    homs: Vec<Vec<Mor>>,
    hom_pos: Vec<usize>,
}

impl FinCat {
    pub fn new(tables: CatTables) -> Result<Self> {
        let report = validate_category(&tables)?;
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(Self::from_valid(tables))
    }

    pub(crate) fn from_valid(tables: CatTables) -> Self {
        let o = tables.objects();
        let mut homs = vec![Vec::new(); o * o];
        let mut hom_pos = vec![0; tables.morphisms()];
        for m in 0..tables.morphisms() {
            let hom = &mut homs[tables.dom[m] * o + tables.cod[m]];
            hom_pos[m] = hom.len();
            hom.push(m);
        }
        FinCat { tables, homs, hom_pos }
    }

    /// Builds a category from a list of named objects, named morphisms with
    /// endpoints (identities excluded; they are generated as `id_x`), and a
    /// composition function on non-identity morphisms.
    pub fn from_parts(
        objects: &[&str],
        arrows: &[(&str, Ob, Ob)],
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self> {
        let o = objects.len();
        let n = o + arrows.len();
        let mut t = CatTables {
            ob_names: objects.iter().map(|s| s.to_string()).collect(),
            mor_names: objects.iter().map(|s| format!("id_{s}")).collect(),
            dom: (0..o).collect(),
            cod: (0..o).collect(),
            identity: (0..o).collect(),
            compose: vec![None; n * n],
        };
        for (name, d, c) in arrows {
            t.mor_names.push(name.to_string());
            t.dom.push(*d);
            t.cod.push(*c);
        }
        if t.dom.iter().chain(&t.cod).any(|&x| x >= o) {
            return Err(Error::Malformed("arrow endpoint out of range".into()));
        }
        for g in 0..n {
            for f in 0..n {
                if t.cod[f] != t.dom[g] {
                    continue;
                }
                t.compose[g * n + f] = Some(if g < o {
                    f
                } else if f < o {
                    g
                } else {
                    // `compose` sees arrow indices offset by the identities.
                    compose(g, f)
                });
            }
        }
        FinCat::new(t)
    }

    pub fn terminal() -> Self {
        Self::discrete(&["star"])
    }

    pub fn empty() -> Self {
        Self::discrete(&[])
    }

    pub fn discrete(objects: &[&str]) -> Self {
        Self::from_parts(objects, &[], |_, _| unreachable!()).expect("discrete category")
    }

    /// The poset `0 < 1 < … < n-1` as a category.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let obs: Vec<&str> = names.iter().map(String::as_str).collect();
        let arrow_names: Vec<String> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |k| format!("le{i}_{k}")))
            .collect();
        let mut arrows = Vec::new();
        let mut idx = 0;
        for i in 0..n {
            for k in i + 1..n {
                arrows.push((arrow_names[idx].as_str(), i, k));
                idx += 1;
            }
        }
        let ends: Vec<(Ob, Ob)> = arrows.iter().map(|&(_, d, c)| (d, c)).collect();
        Self::from_parts(&obs, &arrows, |g, f| {
            let (d, _) = ends[f - n];
            let (_, c) = ends[g - n];
            if d == c {
                d
            } else {
                n + ends.iter().position(|&e| e == (d, c)).unwrap()
            }
        })
        .expect("chain category")
    }

    pub fn tables(&self) -> &CatTables {
        &self.tables
    }

    pub fn into_tables(self) -> CatTables {
        self.tables
    }

    pub fn objects(&self) -> usize {
        self.tables.objects()
    }

    pub fn morphisms(&self) -> usize {
        self.tables.morphisms()
    }

    pub fn dom(&self, f: Mor) -> Ob {
        self.tables.dom[f]
    }

    pub fn cod(&self, f: Mor) -> Ob {
        self.tables.cod[f]
    }

    pub fn id(&self, x: Ob) -> Mor {
        self.tables.identity[x]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.id(self.dom(f)) == f
    }

    /// `g ∘ f`. Panics when `cod(f) ≠ dom(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("composing {} after {}", self.mor_name(g), self.mor_name(f)))
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.tables.compose[g * self.morphisms() + f]
    }

    pub fn hom(&self, x: Ob, y: Ob) -> &[Mor] {
        &self.homs[x * self.objects() + y]
    }

    /// Position of `f` inside `hom(dom f, cod f)`.
    pub fn hom_pos(&self, f: Mor) -> usize {
        self.hom_pos[f]
    }

    pub fn ob_name(&self, x: Ob) -> &str {
        &self.tables.ob_names[x]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.tables.mor_names[f]
    }

    pub fn ob_names(&self) -> &[String] {
        &self.tables.ob_names
    }

    pub fn mor_names(&self) -> &[String] {
        &self.tables.mor_names
    }

    pub fn find_object(&self, name: &str) -> Option<Ob> {
        self.tables.ob_names.iter().position(|n| n == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        self.tables.mor_names.iter().position(|n| n == name)
    }

    /// Returns `(g, f)` with `g ∘ f = id` and `f ∘ g = id` if `f` is invertible.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(x) && self.compose(f, g) == self.id(y))
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn isomorphic_objects(&self, x: Ob, y: Ob) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    pub fn terminal_object(&self) -> Option<Ob> {
        (0..self.objects()).find(|&t| (0..self.objects()).all(|x| self.hom(x, t).len() == 1))
    }

    /// Morphisms `g : cod(f) → y` with `g ∘ f = target`.
    pub fn extensions_along(&self, f: Mor, target: Mor) -> Vec<Mor> {
        debug_assert_eq!(self.dom(f), self.dom(target));
        self.hom(self.cod(f), self.cod(target))
            .iter()
            .copied()
            .filter(|&g| self.compose(g, f) == target)
            .collect()
    }

    /// Full subcategory on the given objects, in the given order.
    pub fn full_subcategory(&self, objects: &[Ob]) -> (FinCat, Vec<Mor>) {
        let mut mors = Vec::new();
        for &x in objects {
            for &y in objects {
                mors.extend_from_slice(self.hom(x, y));
            }
        }
        mors.sort_unstable();
        let index = |m: Mor| mors.binary_search(&m).unwrap();
        let local = |x: Ob| objects.iter().position(|&o| o == x).unwrap();
        let n = mors.len();
        let mut compose = vec![None; n * n];
        for (gi, &g) in mors.iter().enumerate() {
            for (fi, &f) in mors.iter().enumerate() {
                compose[gi * n + fi] = self.try_compose(g, f).map(index);
            }
        }
        let t = CatTables {
            ob_names: objects.iter().map(|&x| self.ob_name(x).to_string()).collect(),
            mor_names: mors.iter().map(|&m| self.mor_name(m).to_string()).collect(),
            dom: mors.iter().map(|&m| local(self.dom(m))).collect(),
            cod: mors.iter().map(|&m| local(self.cod(m))).collect(),
            identity: objects.iter().map(|&x| index(self.id(x))).collect(),
            compose,
        };
        (FinCat::from_valid(t), mors)
    }

    /// This category with one extra object that has only its identity.
    pub fn with_isolated_object(&self, name: &str) -> FinCat {
        let mut t = self.tables.clone();
        let n = t.morphisms();
        let x = t.objects();
        t.ob_names.push(name.to_string());
        t.mor_names.push(format!("id_{name}"));
        t.dom.push(x);
        t.cod.push(x);
        t.identity.push(n);
        let mut compose = vec![None; (n + 1) * (n + 1)];
        for g in 0..n {
            for f in 0..n {
                compose[g * (n + 1) + f] = t.compose[g * n + f];
            }
        }
        compose[n * (n + 1) + n] = Some(n);
        t.compose = compose;
        FinCat::from_valid(t)
    }

    /// Relabels objects and morphisms: `ob_perm[old] = new`, `mor_perm[old] = new`.
    pub fn relabel(&self, ob_perm: &[Ob], mor_perm: &[Mor]) -> FinCat {
        let (o, n) = (self.objects(), self.morphisms());
        let mut t = CatTables {
            ob_names: vec![String::new(); o],
            mor_names: vec![String::new(); n],
            dom: vec![0; n],
            cod: vec![0; n],
            identity: vec![0; o],
            compose: vec![None; n * n],
        };
        for x in 0..o {
            t.ob_names[ob_perm[x]] = self.ob_name(x).to_string();
            t.identity[ob_perm[x]] = mor_perm[self.id(x)];
        }
        for m in 0..n {
            t.mor_names[mor_perm[m]] = self.mor_name(m).to_string();
            t.dom[mor_perm[m]] = ob_perm[self.dom(m)];
            t.cod[mor_perm[m]] = ob_perm[self.cod(m)];
        }
        for g in 0..n {
            for f in 0..n {
                t.compose[mor_perm[g] * n + mor_perm[f]] = self.try_compose(g, f).map(|h| mor_perm[h]);
            }
        }
        FinCat::from_valid(t)
    }

    /// Structural equality ignoring names.
    pub fn same_structure(&self, other: &FinCat) -> bool {
        let (a, b) = (&self.tables, &other.tables);
        a.dom == b.dom && a.cod == b.cod && a.identity == b.identity && a.compose == b.compose
    }
}
