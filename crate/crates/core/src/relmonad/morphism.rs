use super::RelMonad;
use crate::error::{Error, Result};
use crate::fincat::Mor;
use crate::report::LawReport;

pub const LAW_TAU_TYPING: &str = "τ_a : ta → t′a";
pub const LAW_TAU_UNIT: &str = "τ_a ∘ η_a = η′_a";
/// Compatibility with extension, by convention.
pub const LAW_TAU_EXT: &str = "τ_b ∘ f^† = (τ_b ∘ f)^†′ ∘ τ_a";

/// A morphism of relative monads over a common root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMonadMorphism {
    source: RelMonad,
    target: RelMonad,
    components: Vec<Mor>,
}

impl RelMonadMorphism {
    pub fn new(source: RelMonad, target: RelMonad, components: Vec<Mor>) -> Result<Self> {
        if source.root() != target.root() {
            return Err(Error::Precondition("relative monads have different roots".into()));
        }
        if components.len() != source.source().objects() || components.iter().any(|&m| m >= source.cat().morphisms()) {
            return Err(Error::Malformed("component table does not cover the root's source".into()));
        }
        let tau = RelMonadMorphism {
            source,
            target,
            components,
        };
        let report = tau.check_laws();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(tau)
    }

    pub fn identity(t: RelMonad) -> Self {
        let components = t.carriers().iter().map(|&x| t.cat().id(x)).collect();
        RelMonadMorphism {
            source: t.clone(),
            target: t,
            components,
        }
    }

    pub fn source(&self) -> &RelMonad {
        &self.source
    }

    pub fn target(&self) -> &RelMonad {
        &self.target
    }

    pub fn component(&self, a: usize) -> Mor {
        self.components[a]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|&m| self.source.cat().is_iso(m))
    }

    pub fn check_laws(&self) -> LawReport {
        let (s, t) = (&self.source, &self.target);
        let (ac, e) = (s.source(), s.cat());
        let mut r = LawReport::new(&[LAW_TAU_TYPING, LAW_TAU_UNIT, LAW_TAU_EXT]);
        for a in 0..ac.objects() {
            let tau = self.components[a];
            if e.dom(tau) != s.carrier(a) || e.cod(tau) != t.carrier(a) {
                r.violate(LAW_TAU_TYPING, ac.ob_name(a).to_string());
            }
        }
        if !r.is_ok() {
            return r;
        }
        for a in 0..ac.objects() {
            if e.compose(self.components[a], s.unit(a)) != t.unit(a) {
                r.violate(LAW_TAU_UNIT, ac.ob_name(a).to_string());
            }
            for b in 0..ac.objects() {
                let tb = self.components[b];
                for &f in s.keys(a, b) {
                    let lhs = e.compose(tb, s.ext(a, b, f));
                    let rhs = e.compose(t.ext(a, b, e.compose(tb, f)), self.components[a]);
                    if lhs != rhs {
                        r.violate(LAW_TAU_EXT, s.key_name(a, b, f));
                    }
                }
            }
        }
        r
    }
}
