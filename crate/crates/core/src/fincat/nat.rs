use std::ops::ControlFlow;

use super::functor::same_cat;
use super::{FinFunctor, Mor, Ob};
use crate::error::{Error, Result};
use crate::report::LawReport;

pub const LAW_COMPONENT_TYPING: &str = "component typing";
pub const LAW_NATURALITY: &str = "naturality";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<Mor>) -> Result<Self> {
        let t = Self::unchecked(source, target, components)?;
        let report = t.naturality_report();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(t)
    }

    pub fn unchecked(source: FinFunctor, target: FinFunctor, components: Vec<Mor>) -> Result<Self> {
        if !same_cat(source.source(), target.source()) || !same_cat(source.target(), target.target()) {
            return Err(Error::Malformed("transformation between non-parallel functors".into()));
        }
        if components.len() != source.source().objects()
            || components.iter().any(|&m| m >= source.target().morphisms())
        {
            return Err(Error::Malformed("component table out of range".into()));
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, x: Ob) -> Mor {
        self.components[x]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn naturality_report(&self) -> LawReport {
        let (c, d) = (self.source.source(), self.source.target());
        let mut report = LawReport::new(&[LAW_COMPONENT_TYPING, LAW_NATURALITY]);
        for x in 0..c.objects() {
            let a = self.components[x];
            if d.dom(a) != self.source.ob(x) || d.cod(a) != self.target.ob(x) {
                report.violate(LAW_COMPONENT_TYPING, c.ob_name(x).to_string());
            }
        }
        if !report.is_ok() {
            return report;
        }
        for h in 0..c.morphisms() {
            let (x, y) = (c.dom(h), c.cod(h));
            let left = d.compose(self.components[y], self.source.mor(h));
            let right = d.compose(self.target.mor(h), self.components[x]);
            if left != right {
                report.violate(LAW_NATURALITY, c.mor_name(h).to_string());
            }
        }
        report
    }

    /// Componentwise invertibility.
    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&m| self.source.target().is_iso(m))
    }
}

/// Backtracks over components in object order, pruning on every naturality
/// square whose two components are both assigned. `allow(x, m)` may further
/// restrict the candidates for the component at `x`.
pub fn enumerate_nat_transformations(
    source: &FinFunctor,
    target: &FinFunctor,
    allow: impl Fn(Ob, Mor) -> bool,
    mut visit: impl FnMut(Vec<Mor>) -> ControlFlow<()>,
) {
    let c = source.source();
    let n = c.objects();
    let mut squares: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for h in 0..c.morphisms() {
        squares[c.dom(h).max(c.cod(h))].push(h);
    }
    let mut comps = vec![0; n];
    fn go(
        x: usize,
        comps: &mut Vec<Mor>,
        squares: &[Vec<Mor>],
        source: &FinFunctor,
        target: &FinFunctor,
        allow: &dyn Fn(Ob, Mor) -> bool,
        visit: &mut dyn FnMut(Vec<Mor>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if x == comps.len() {
            return visit(comps.clone());
        }
        let (c, d) = (source.source(), source.target());
        for &m in d.hom(source.ob(x), target.ob(x)) {
            if !allow(x, m) {
                continue;
            }
            comps[x] = m;
            let natural = squares[x].iter().all(|&h| {
                let (a, b) = (c.dom(h), c.cod(h));
                d.compose(comps[b], source.mor(h)) == d.compose(target.mor(h), comps[a])
            });
            if natural {
                go(x + 1, comps, squares, source, target, allow, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = go(0, &mut comps, &squares, source, target, &allow, &mut visit);
}

/// Every natural transformation `F ⇒ G`, as component tables.
pub fn all_nat_transformations(source: &FinFunctor, target: &FinFunctor) -> Vec<Vec<Mor>> {
    let mut out = Vec::new();
    enumerate_nat_transformations(source, target, |_, _| true, |t| {
        out.push(t);
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::FinCat;

    #[test]
    fn transformations_between_constants_on_chain() {
        let c = Arc::new(FinCat::chain(2));
        let const_bottom = FinFunctor::new(c.clone(), c.clone(), vec![0, 0], vec![0, 0, 0]).unwrap();
        let id = FinFunctor::identity(c.clone());
        let const_top = FinFunctor::new(c.clone(), c.clone(), vec![1, 1], vec![1, 1, 1]).unwrap();
        assert_eq!(all_nat_transformations(&const_bottom, &id).len(), 1);
        assert_eq!(all_nat_transformations(&id, &const_top).len(), 1);
        assert_eq!(all_nat_transformations(&const_top, &const_bottom).len(), 0);
        assert_eq!(all_nat_transformations(&id, &const_bottom).len(), 0);
    }

    #[test]
    fn unnatural_components_are_reported() {
        // Monoid {1, z} with z absorbing.
        let m = Arc::new(
            FinCat::from_parts(&["o"], &[("z", 0, 0)], |_, _| 1).unwrap(),
        );
        // endofunctor sending z to id
        let collapse = FinFunctor::new(m.clone(), m.clone(), vec![0], vec![0, 0]).unwrap();
        let id = FinFunctor::identity(m.clone());
        // component id_o : collapse ⇒ id requires id ∘ id = z ∘ id, false
        let t = NatTrans::unchecked(collapse.clone(), id.clone(), vec![0]).unwrap();
        assert_eq!(t.naturality_report().violations_of(LAW_NATURALITY).count(), 1);
        let t = NatTrans::new(collapse, id, vec![1]).unwrap();
        assert!(!t.is_invertible());
    }
}
