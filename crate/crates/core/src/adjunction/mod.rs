//! Relative adjunctions, the relative monads they induce, and resolutions.

mod kleisli;
mod resolution;

pub use kleisli::{kleisli_resolution, Kleisli};
pub use resolution::{
    algebra_resolution, enumerate_resolution_morphisms, idem_algebra_resolution, Resolution,
};

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::is_algebraically_idempotent;
use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{FinCat, FinFunctor, Mor, Ob};
use crate::relmonad::RelMonad;
use crate::report::LawReport;

pub const LAW_PHI_BIJECTIVE: &str = "φ bijective";
pub const LAW_PHI_NATURAL_A: &str = "φ(s ∘ ℓh) = φ(s) ∘ jh";
pub const LAW_PHI_NATURAL_C: &str = "φ(k ∘ s) = rk ∘ φ(s)";

/// `ℓ ⊣_j r` with explicit hom-set bijections `φ : C(ℓa, c) → E(ja, rc)`,
/// keyed by `(a, c)` and then by the position of `s` in `C(ℓa, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelAdjunction {
    root: FinFunctor,
    left: FinFunctor,
    right: FinFunctor,
    phi: Vec<Vec<Mor>>,
    phi_inv: Vec<Vec<Mor>>,
}

impl RelAdjunction {
    pub fn new(root: FinFunctor, left: FinFunctor, right: FinFunctor, phi: Vec<Vec<Mor>>) -> Result<Self> {
        let adj = Self::unchecked(root, left, right, phi)?;
        let report = adj.check_laws();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(adj)
    }

    /// Type-checked but not law-checked. `φ⁻¹` is filled where `φ` is
    /// injective.
    pub fn unchecked(root: FinFunctor, left: FinFunctor, right: FinFunctor, phi: Vec<Vec<Mor>>) -> Result<Self> {
        if !same_cat(root.source(), left.source())
            || !same_cat(left.target(), right.source())
            || !same_cat(right.target(), root.target())
        {
            return Err(Error::Malformed("root, left and right functors do not fit together".into()));
        }
        let (ac, cc, e) = (root.source().clone(), left.target().clone(), root.target().clone());
        let (na, nc) = (ac.objects(), cc.objects());
        if phi.len() != na * nc {
            return Err(Error::Malformed("φ table does not cover every (a, c)".into()));
        }
        let mut phi_inv = Vec::with_capacity(na * nc);
        for a in 0..na {
            for c in 0..nc {
                let keys = cc.hom(left.ob(a), c);
                let row = &phi[a * nc + c];
                if row.len() != keys.len() {
                    return Err(Error::Malformed(format!(
                        "φ at ({}, {}) has {} entries, expected {}",
                        ac.ob_name(a),
                        cc.ob_name(c),
                        row.len(),
                        keys.len()
                    )));
                }
                let targets = e.hom(root.ob(a), right.ob(c));
                let mut inv = vec![usize::MAX; targets.len()];
                for (i, &w) in row.iter().enumerate() {
                    if w >= e.morphisms() || e.dom(w) != root.ob(a) || e.cod(w) != right.ob(c) {
                        return Err(Error::Malformed(format!(
                            "φ at ({}, {}) is not a morphism ja -> rc",
                            ac.ob_name(a),
                            cc.ob_name(c)
                        )));
                    }
                    inv[e.hom_pos(w)] = keys[i];
                }
                phi_inv.push(inv);
            }
        }
        Ok(RelAdjunction {
            root,
            left,
            right,
            phi,
            phi_inv,
        })
    }

    pub fn root(&self) -> &FinFunctor {
        &self.root
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    /// The apex `C`.
    pub fn apex(&self) -> &Arc<FinCat> {
        self.left.target()
    }

    pub fn phi_table(&self) -> &[Vec<Mor>] {
        &self.phi
    }

    /// `φ(s)` for `s : ℓa → c`.
    pub fn phi(&self, a: Ob, s: Mor) -> Mor {
        let c = self.apex();
        self.phi[a * c.objects() + c.cod(s)][c.hom_pos(s)]
    }

    /// `φ⁻¹(w)` for `w : ja → rc`.
    pub fn phi_inv(&self, a: Ob, c: Ob, w: Mor) -> Mor {
        let e = self.root.target();
        self.phi_inv[a * self.apex().objects() + c][e.hom_pos(w)]
    }

    pub fn check_laws(&self) -> LawReport {
        let (ac, cc, e) = (self.root.source(), self.apex(), self.root.target());
        let (j, l, r) = (&self.root, &self.left, &self.right);
        let mut rep = LawReport::new(&[LAW_PHI_BIJECTIVE, LAW_PHI_NATURAL_A, LAW_PHI_NATURAL_C]);
        for a in 0..ac.objects() {
            for c in 0..cc.objects() {
                let inv = &self.phi_inv[a * cc.objects() + c];
                let hits = inv.iter().filter(|&&s| s != usize::MAX).count();
                if hits != inv.len() || hits != cc.hom(l.ob(a), c).len() {
                    rep.violate(LAW_PHI_BIJECTIVE, format!("({}, {})", ac.ob_name(a), cc.ob_name(c)));
                }
            }
        }
        for h in 0..ac.morphisms() {
            let (a0, a) = (ac.dom(h), ac.cod(h));
            for c in 0..cc.objects() {
                for &s in cc.hom(l.ob(a), c) {
                    if self.phi(a0, cc.compose(s, l.mor(h))) != e.compose(self.phi(a, s), j.mor(h)) {
                        rep.violate(LAW_PHI_NATURAL_A, format!("{} at {}", cc.mor_name(s), ac.mor_name(h)));
                    }
                }
            }
        }
        for k in 0..cc.morphisms() {
            let c = cc.dom(k);
            for a in 0..ac.objects() {
                for &s in cc.hom(l.ob(a), c) {
                    if self.phi(a, cc.compose(k, s)) != e.compose(r.mor(k), self.phi(a, s)) {
                        rep.violate(LAW_PHI_NATURAL_C, format!("{} then {}", cc.mor_name(s), cc.mor_name(k)));
                    }
                }
            }
        }
        rep
    }

    /// `η_a = φ(1_ℓa)`, `f^† = r(φ⁻¹ f)` on the carrier `rℓ`.
    pub fn induced_relmonad(&self) -> Result<RelMonad> {
        let laws = self.check_laws();
        if !laws.is_ok() {
            return Err(Error::Laws(laws));
        }
        let cc = self.apex();
        let (l, r) = (&self.left, &self.right);
        let na = self.root.source().objects();
        let carrier = (0..na).map(|a| r.ob(l.ob(a))).collect();
        let unit = (0..na).map(|a| self.phi(a, cc.id(l.ob(a)))).collect();
        RelMonad::from_fn(self.root.clone(), carrier, unit, |a, b, f| r.mor(self.phi_inv(a, l.ob(b), f))).map_err(
            |err| match err {
                Error::Laws(rep) => Error::InvariantViolation(format!("induced relative monad breaks the laws: {rep}")),
                other => other,
            },
        )
    }

    /// Does this adjunction induce exactly `t`?
    pub fn is_resolution_of(&self, t: &RelMonad) -> bool {
        self.induced_relmonad().map(|m| &m == t).unwrap_or(false)
    }

    /// `r` fully faithful. When it is, the induced monad is asserted
    /// idempotent.
    pub fn is_j_reflective(&self) -> Result<bool> {
        let reflective = self.right.is_fully_faithful();
        if reflective && !self.induced_relmonad()?.is_idempotent() {
            return Err(Error::InvariantViolation("j-reflection induced a non-idempotent relative monad".into()));
        }
        Ok(reflective)
    }
}

pub fn check_adjunction(adj: &RelAdjunction) -> LawReport {
    adj.check_laws()
}

pub fn induced_relmonad(adj: &RelAdjunction) -> Result<RelMonad> {
    adj.induced_relmonad()
}

pub fn is_resolution_of(adj: &RelAdjunction, t: &RelMonad) -> bool {
    adj.is_resolution_of(t)
}

pub fn is_j_reflective(adj: &RelAdjunction) -> Result<bool> {
    adj.is_j_reflective()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjunctionIdempotence {
    pub idempotent: bool,
    pub algebraically_idempotent: bool,
}

pub fn adjunction_idempotence_report(adj: &RelAdjunction) -> Result<AdjunctionIdempotence> {
    let t = Arc::new(adj.induced_relmonad()?);
    Ok(AdjunctionIdempotence {
        idempotent: crate::relmonad::idempotence_report(&t)?.idempotent(),
        algebraically_idempotent: is_algebraically_idempotent(&t)?.holds,
    })
}
