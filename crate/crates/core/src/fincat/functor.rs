use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{FinCat, Mor, Ob};
use crate::error::{Error, Result};
use crate::report::LawReport;

pub const LAW_ENDPOINTS: &str = "preserves endpoints";
pub const LAW_IDENTITIES: &str = "preserves identities";
pub const LAW_COMPOSITION: &str = "preserves composition";

#[derive(Debug, Clone)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    ob_map: Vec<Ob>,
    mor_map: Vec<Mor>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.ob_map == other.ob_map
            && self.mor_map == other.mor_map
            && same_cat(&self.source, &other.source)
            && same_cat(&self.target, &other.target)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Flags computed by exhaustive quantification over hom-sets. Everything but
/// `functorial` is `None` when the map is not a functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FunctorProperties {
    pub functorial: bool,
    pub full: Option<bool>,
    pub faithful: Option<bool>,
    pub fully_faithful: Option<bool>,
    pub essentially_surjective: Option<bool>,
    pub equivalence: Option<bool>,
    pub isomorphism: Option<bool>,
}

impl FinFunctor {
    /// Builds a functor, rejecting maps that are not functorial.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, ob_map: Vec<Ob>, mor_map: Vec<Mor>) -> Result<Self> {
        let f = Self::unchecked(source, target, ob_map, mor_map)?;
        let report = f.functoriality_report();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(f)
    }

    /// Builds an index-checked map that may fail to be functorial.
    pub fn unchecked(source: Arc<FinCat>, target: Arc<FinCat>, ob_map: Vec<Ob>, mor_map: Vec<Mor>) -> Result<Self> {
        if ob_map.len() != source.objects() || mor_map.len() != source.morphisms() {
            return Err(Error::Malformed("functor tables do not cover the source".into()));
        }
        if ob_map.iter().any(|&x| x >= target.objects()) || mor_map.iter().any(|&m| m >= target.morphisms()) {
            return Err(Error::Malformed("functor maps outside its target".into()));
        }
        Ok(FinFunctor {
            source,
            target,
            ob_map,
            mor_map,
        })
    }

    pub(crate) fn from_valid(source: Arc<FinCat>, target: Arc<FinCat>, ob_map: Vec<Ob>, mor_map: Vec<Mor>) -> Self {
        debug_assert!(Self::new(source.clone(), target.clone(), ob_map.clone(), mor_map.clone()).is_ok());
        FinFunctor {
            source,
            target,
            ob_map,
            mor_map,
        }
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let ob_map = (0..c.objects()).collect();
        let mor_map = (0..c.morphisms()).collect();
        FinFunctor {
            source: c.clone(),
            target: c,
            ob_map,
            mor_map,
        }
    }

    /// The functor out of the terminal category picking `x`.
    pub fn point(terminal: Arc<FinCat>, target: Arc<FinCat>, x: Ob) -> Self {
        assert_eq!(terminal.morphisms(), 1);
        let id = target.id(x);
        FinFunctor {
            source: terminal,
            target,
            ob_map: vec![x],
            mor_map: vec![id],
        }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &FinFunctor) -> Result<FinFunctor> {
        if !same_cat(&self.target, &after.source) {
            return Err(Error::Precondition("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: after.target.clone(),
            ob_map: self.ob_map.iter().map(|&x| after.ob(x)).collect(),
            mor_map: self.mor_map.iter().map(|&m| after.mor(m)).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn ob(&self, x: Ob) -> Ob {
        self.ob_map[x]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    pub fn ob_map(&self) -> &[Ob] {
        &self.ob_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.source, &self.target)
            && self.ob_map.iter().enumerate().all(|(i, &x)| i == x)
            && self.mor_map.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn functoriality_report(&self) -> LawReport {
        let (c, d) = (&*self.source, &*self.target);
        let mut report = LawReport::new(&[LAW_ENDPOINTS, LAW_IDENTITIES, LAW_COMPOSITION]);
        for f in 0..c.morphisms() {
            let image = self.mor(f);
            if d.dom(image) != self.ob(c.dom(f)) || d.cod(image) != self.ob(c.cod(f)) {
                report.violate(LAW_ENDPOINTS, format!("{} |-> {}", c.mor_name(f), d.mor_name(image)));
            }
        }
        for x in 0..c.objects() {
            if self.mor(c.id(x)) != d.id(self.ob(x)) {
                report.violate(LAW_IDENTITIES, c.ob_name(x).to_string());
            }
        }
        if !report.is_ok() {
            return report;
        }
        for g in 0..c.morphisms() {
            for f in 0..c.morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    if self.mor(h) != d.compose(self.mor(g), self.mor(f)) {
                        report.violate(LAW_COMPOSITION, format!("({}, {})", c.mor_name(g), c.mor_name(f)));
                    }
                }
            }
        }
        report
    }

    pub fn is_functorial(&self) -> bool {
        self.functoriality_report().is_ok()
    }

    fn hom_map_counts(&self, a: Ob, b: Ob) -> (bool, bool) {
        let d = &*self.target;
        let target_hom = d.hom(self.ob(a), self.ob(b));
        let mut hit = vec![false; target_hom.len()];
        let mut injective = true;
        for &f in self.source.hom(a, b) {
            let p = d.hom_pos(self.mor(f));
            injective &= !hit[p];
            hit[p] = true;
        }
        (injective, hit.iter().all(|&h| h))
    }

    /// First hom-pair `(a, b)` on which the functor is not full, if any.
    pub fn non_full_pair(&self) -> Option<(Ob, Ob)> {
        let n = self.source.objects();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| !self.hom_map_counts(a, b).1)
    }

    /// First hom-pair on which the functor is not both full and faithful.
    pub fn non_fully_faithful_pair(&self) -> Option<(Ob, Ob)> {
        let n = self.source.objects();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| {
            let (inj, surj) = self.hom_map_counts(a, b);
            !(inj && surj)
        })
    }

    pub fn is_full(&self) -> bool {
        self.non_full_pair().is_none()
    }

    pub fn is_faithful(&self) -> bool {
        let n = self.source.objects();
        (0..n).all(|a| (0..n).all(|b| self.hom_map_counts(a, b).0))
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.non_fully_faithful_pair().is_none()
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = &*self.target;
        (0..d.objects()).all(|y| self.ob_map.iter().any(|&x| d.isomorphic_objects(x, y)))
    }

    /// Bijective on objects and fully faithful.
    pub fn is_isomorphism(&self) -> bool {
        let mut seen = vec![false; self.target.objects()];
        for &x in &self.ob_map {
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        seen.iter().all(|&s| s) && self.is_fully_faithful()
    }

    pub fn properties(&self) -> FunctorProperties {
        if !self.is_functorial() {
            return FunctorProperties {
                functorial: false,
                full: None,
                faithful: None,
                fully_faithful: None,
                essentially_surjective: None,
                equivalence: None,
                isomorphism: None,
            };
        }
        let full = self.is_full();
        let faithful = self.is_faithful();
        let es = self.is_essentially_surjective();
        FunctorProperties {
            functorial: true,
            full: Some(full),
            faithful: Some(faithful),
            fully_faithful: Some(full && faithful),
            essentially_surjective: Some(es),
            equivalence: Some(full && faithful && es),
            isomorphism: Some(self.is_isomorphism()),
        }
    }

    /// For a fully faithful functor, the unique `f : a → b` with `F f = g`.
    pub fn preimage(&self, a: Ob, b: Ob, g: Mor) -> Option<Mor> {
        self.source.hom(a, b).iter().copied().find(|&f| self.mor(f) == g)
    }
}

/// Backtracking search over functors `C → D`, optionally constrained per
/// object and per morphism. Results come out in lexicographic order of
/// `(object map, morphism map)`.
pub struct FunctorSearch<'a> {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    ob_candidates: Vec<Vec<Ob>>,
    mor_filter: Option<Box<dyn Fn(Mor, Mor) -> bool + 'a>>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>) -> Self {
        let all: Vec<Ob> = (0..target.objects()).collect();
        FunctorSearch {
            ob_candidates: vec![all; source.objects()],
            source,
            target,
            mor_filter: None,
        }
    }

    pub fn restrict_object(mut self, x: Ob, candidates: Vec<Ob>) -> Self {
        self.ob_candidates[x] = candidates;
        self
    }

    /// Only allow `F(f) = g` when `filter(f, g)` holds.
    pub fn filter_morphisms(mut self, filter: impl Fn(Mor, Mor) -> bool + 'a) -> Self {
        self.mor_filter = Some(Box::new(filter));
        self
    }

    pub fn for_each(&self, mut visit: impl FnMut(FinFunctor) -> ControlFlow<()>) {
        let c = &*self.source;
        let n = c.morphisms();
        // Composition triples (g, f, g∘f) grouped by the largest index among them.
        let mut checks: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); n];
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = c.try_compose(g, f) {
                    checks[g.max(f).max(h)].push((g, f, h));
                }
            }
        }
        let mut ob_map = vec![0; c.objects()];
        let mut mor_map = vec![0; n];
        let _ = self.assign_objects(0, &mut ob_map, &mut mor_map, &checks, &mut visit);
    }

    fn assign_objects(
        &self,
        x: usize,
        ob_map: &mut Vec<Ob>,
        mor_map: &mut Vec<Mor>,
        checks: &[Vec<(Mor, Mor, Mor)>],
        visit: &mut impl FnMut(FinFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == ob_map.len() {
            return self.assign_morphisms(0, ob_map, mor_map, checks, visit);
        }
        for &y in &self.ob_candidates[x] {
            ob_map[x] = y;
            self.assign_objects(x + 1, ob_map, mor_map, checks, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn assign_morphisms(
        &self,
        k: usize,
        ob_map: &[Ob],
        mor_map: &mut Vec<Mor>,
        checks: &[Vec<(Mor, Mor, Mor)>],
        visit: &mut impl FnMut(FinFunctor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (c, d) = (&*self.source, &*self.target);
        if k == mor_map.len() {
            return visit(FinFunctor {
                source: self.source.clone(),
                target: self.target.clone(),
                ob_map: ob_map.to_vec(),
                mor_map: mor_map.clone(),
            });
        }
        let (x, y) = (ob_map[c.dom(k)], ob_map[c.cod(k)]);
        let forced;
        let candidates: &[Mor] = if c.is_identity(k) {
            forced = [d.id(x)];
            &forced
        } else {
            d.hom(x, y)
        };
        for &g in candidates {
            if let Some(filter) = &self.mor_filter {
                if !filter(k, g) {
                    continue;
                }
            }
            mor_map[k] = g;
            let ok = checks[k]
                .iter()
                .all(|&(a, b, h)| mor_map[h] == d.compose(mor_map[a], mor_map[b]));
            if ok {
                self.assign_morphisms(k + 1, ob_map, mor_map, checks, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn collect(&self, limit: usize) -> FunctorEnumeration {
        let mut functors = Vec::new();
        let mut truncated = false;
        self.for_each(|f| {
            if functors.len() == limit {
                truncated = true;
                return ControlFlow::Break(());
            }
            functors.push(f);
            ControlFlow::Continue(())
        });
        FunctorEnumeration { functors, truncated }
    }
}

#[derive(Debug, Clone)]
pub struct FunctorEnumeration {
    pub functors: Vec<FinFunctor>,
    /// Set when `limit` functors were emitted and at least one more exists.
    pub truncated: bool,
}

/// Every functor `C → D`, in canonical lexicographic order, up to `limit`.
pub fn enumerate_functors(c: &Arc<FinCat>, d: &Arc<FinCat>, limit: usize) -> FunctorEnumeration {
    assert!(limit > 0, "limit must be positive");
    FunctorSearch::new(c.clone(), d.clone()).collect(limit)
}
