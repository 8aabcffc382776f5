use serde::Serialize;

use super::idempotence::{assert_agreement, Condition, IdempotenceReport};
use super::RelMonad;
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, Mor, Ob};
use crate::report::LawReport;

pub const LAW_UNIT_NATURAL: &str = "η natural";
pub const LAW_MULT_NATURAL: &str = "μ natural";
pub const LAW_LEFT_UNIT: &str = "μ ∘ tη = 1";
pub const LAW_RIGHT_UNIT: &str = "μ ∘ ηt = 1";
pub const LAW_MULT_ASSOC: &str = "μ ∘ tμ = μ ∘ μt";

pub const MONAD_CONDITION_LABELS: [&str; 5] = ["(1)", "(2)", "(3)", "(4)", "(5)"];

/// A monad `(t, η, μ)` on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadData {
    endo: FinFunctor,
    unit: Vec<Mor>,
    mult: Vec<Mor>,
}

impl MonadData {
    pub fn new(endo: FinFunctor, unit: Vec<Mor>, mult: Vec<Mor>) -> Result<Self> {
        let m = Self::unchecked(endo, unit, mult)?;
        let report = m.check_laws();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(m)
    }

    pub fn unchecked(endo: FinFunctor, unit: Vec<Mor>, mult: Vec<Mor>) -> Result<Self> {
        let e = endo.source().clone();
        if !crate::fincat::functor::same_cat(&e, endo.target()) {
            return Err(Error::Malformed("monad functor is not an endofunctor".into()));
        }
        if !endo.is_functorial() {
            return Err(Error::Laws(endo.functoriality_report()));
        }
        let n = e.objects();
        if unit.len() != n || mult.len() != n {
            return Err(Error::Malformed("unit or multiplication table does not cover the category".into()));
        }
        for x in 0..n {
            let (u, m) = (unit[x], mult[x]);
            let t = endo.ob(x);
            if u >= e.morphisms() || e.dom(u) != x || e.cod(u) != t {
                return Err(Error::Malformed(format!("η at {} is not x -> tx", e.ob_name(x))));
            }
            if m >= e.morphisms() || e.dom(m) != endo.ob(t) || e.cod(m) != t {
                return Err(Error::Malformed(format!("μ at {} is not ttx -> tx", e.ob_name(x))));
            }
        }
        Ok(MonadData { endo, unit, mult })
    }

    /// The identity monad.
    pub fn identity(e: std::sync::Arc<crate::fincat::FinCat>) -> Self {
        let ids: Vec<Mor> = (0..e.objects()).map(|x| e.id(x)).collect();
        MonadData {
            endo: FinFunctor::identity(e),
            unit: ids.clone(),
            mult: ids,
        }
    }

    pub fn endofunctor(&self) -> &FinFunctor {
        &self.endo
    }

    pub fn unit(&self, x: Ob) -> Mor {
        self.unit[x]
    }

    pub fn units(&self) -> &[Mor] {
        &self.unit
    }

    pub fn mult(&self, x: Ob) -> Mor {
        self.mult[x]
    }

    pub fn mults(&self) -> &[Mor] {
        &self.mult
    }

    pub fn check_laws(&self) -> LawReport {
        let (e, t) = (self.endo.source(), &self.endo);
        let mut r = LawReport::new(&[LAW_UNIT_NATURAL, LAW_MULT_NATURAL, LAW_LEFT_UNIT, LAW_RIGHT_UNIT, LAW_MULT_ASSOC]);
        for h in 0..e.morphisms() {
            let (x, y) = (e.dom(h), e.cod(h));
            if e.compose(self.unit[y], h) != e.compose(t.mor(h), self.unit[x]) {
                r.violate(LAW_UNIT_NATURAL, e.mor_name(h).to_string());
            }
            if e.compose(self.mult[y], t.mor(t.mor(h))) != e.compose(t.mor(h), self.mult[x]) {
                r.violate(LAW_MULT_NATURAL, e.mor_name(h).to_string());
            }
        }
        for x in 0..e.objects() {
            let tx = t.ob(x);
            let id = e.id(tx);
            if e.compose(self.mult[x], t.mor(self.unit[x])) != id {
                r.violate(LAW_LEFT_UNIT, e.ob_name(x).to_string());
            }
            if e.compose(self.mult[x], self.unit[tx]) != id {
                r.violate(LAW_RIGHT_UNIT, e.ob_name(x).to_string());
            }
            if e.compose(self.mult[x], t.mor(self.mult[x])) != e.compose(self.mult[x], self.mult[tx]) {
                r.violate(LAW_MULT_ASSOC, e.ob_name(x).to_string());
            }
        }
        r
    }

    /// The identity-rooted relative monad with `f^† = μ_b ∘ tf`.
    pub fn to_relative(&self) -> Result<RelMonad> {
        let (e, t) = (self.endo.source().clone(), &self.endo);
        let root = FinFunctor::identity(e.clone());
        RelMonad::from_fn(root, t.ob_map().to_vec(), self.unit.clone(), |_, b, f| {
            e.compose(self.mult[b], t.mor(f))
        })
    }

    /// Recovers `(t, η, μ)` from an identity-rooted relative monad, with
    /// `μ_e = (1_te)^†`.
    pub fn from_relative(rel: &RelMonad) -> Result<Self> {
        if !rel.root().is_identity() {
            return Err(Error::Precondition("relative monad is not rooted at an identity functor".into()));
        }
        let laws = rel.check_laws();
        if !laws.is_ok() {
            return Err(Error::Laws(laws));
        }
        let (t, _) = rel.underlying_functor()?;
        let e = rel.cat().clone();
        let t = FinFunctor::new(e.clone(), e.clone(), t.ob_map().to_vec(), t.mor_map().to_vec())?;
        let mult = (0..e.objects())
            .map(|x| {
                let tx = rel.carrier(x);
                rel.ext(tx, x, e.id(tx))
            })
            .collect();
        MonadData::new(t, rel.units().to_vec(), mult)
    }

    /// Eilenberg–Moore algebras `(x, ε : tx → x)`, in object then hom order.
    pub fn em_algebras(&self) -> Vec<(Ob, Mor)> {
        let (e, t) = (self.endo.source(), &self.endo);
        let mut out = Vec::new();
        for x in 0..e.objects() {
            let tx = t.ob(x);
            for &s in e.hom(tx, x) {
                if e.compose(s, self.unit[x]) == e.id(x) && e.compose(s, t.mor(s)) == e.compose(s, self.mult[x]) {
                    out.push((x, s));
                }
            }
        }
        out
    }
}

pub fn em_algebras(m: &MonadData) -> Vec<(Ob, Mor)> {
    m.em_algebras()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonadForm {
    Monad(MonadData),
    Relative(RelMonad),
}

/// Converts between a monad and its identity-rooted relative monad,
/// asserting that the round trip is the identity.
pub fn monad_relative_correspondence(x: MonadForm) -> Result<MonadForm> {
    match x {
        MonadForm::Monad(m) => {
            let laws = m.check_laws();
            if !laws.is_ok() {
                return Err(Error::Laws(laws));
            }
            let rel = m.to_relative()?;
            if MonadData::from_relative(&rel)? != m {
                return Err(Error::InvariantViolation("monad → relative → monad is not the identity".into()));
            }
            Ok(MonadForm::Relative(rel))
        }
        MonadForm::Relative(rel) => {
            let m = MonadData::from_relative(&rel)?;
            if m.to_relative()? != rel {
                return Err(Error::InvariantViolation("relative → monad → relative is not the identity".into()));
            }
            Ok(MonadForm::Monad(m))
        }
    }
}

/// The five monad-level formulations of idempotence, together with the
/// eight conditions of the corresponding identity-rooted relative monad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadIdempotenceReport {
    pub conditions: Vec<Condition>,
    pub relative: IdempotenceReport,
}

impl MonadIdempotenceReport {
    pub fn idempotent(&self) -> bool {
        self.conditions[0].holds
    }

    pub fn flags(&self) -> Vec<bool> {
        self.conditions.iter().map(|c| c.holds).collect()
    }
}

/// Evaluates the five conditions without asserting agreement.
pub fn raw_monad_conditions(m: &MonadData) -> Vec<Condition> {
    let (e, t) = (m.endo.source(), &m.endo);
    let n = e.objects();
    let mut out = Vec::with_capacity(5);
    let mut push = |label, witness: Option<String>| {
        out.push(Condition {
            label,
            holds: witness.is_none(),
            witness,
        })
    };
    let [l1, l2, l3, l4, l5] = MONAD_CONDITION_LABELS;
    push(
        l1,
        (0..n)
            .find(|&x| !e.is_iso(m.mult[x]))
            .map(|x| format!("μ at {} is not invertible", e.ob_name(x))),
    );
    push(
        l2,
        (0..n)
            .find(|&x| t.mor(m.unit[x]) != m.unit[t.ob(x)])
            .map(|x| format!("tη ≠ ηt at {}", e.ob_name(x))),
    );
    let algebras = m.em_algebras();
    push(
        l3,
        algebras
            .iter()
            .find(|&&(_, s)| !e.is_iso(s))
            .map(|&(x, s)| format!("algebra ({}, {}) is not a fixed point", e.ob_name(x), e.mor_name(s))),
    );
    // A free algebra's structure map is a retraction of η at its carrier, so
    // it is invertible exactly when that unit is.
    push(
        l4,
        (0..n)
            .find(|&x| !e.is_iso(m.unit[t.ob(x)]))
            .map(|x| format!("free algebra on {} is not a fixed point", e.ob_name(x))),
    );
    let mut non_full = None;
    'pairs: for &(x, s) in &algebras {
        for &(y, r) in &algebras {
            for &h in e.hom(x, y) {
                if e.compose(h, s) != e.compose(r, t.mor(h)) {
                    non_full = Some(format!(
                        "{} : ({}, {}) -> ({}, {}) is not an algebra morphism",
                        e.mor_name(h),
                        e.ob_name(x),
                        e.mor_name(s),
                        e.ob_name(y),
                        e.mor_name(r)
                    ));
                    break 'pairs;
                }
            }
        }
    }
    push(l5, non_full);
    out
}

/// Evaluates the five conditions, asserts they agree with each other and with
/// the relative form.
pub fn monad_idempotence_report(m: &MonadData) -> Result<MonadIdempotenceReport> {
    let laws = m.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let conditions = raw_monad_conditions(m);
    let relative = assert_agreement(m.to_relative()?.raw_idempotence_conditions(), "identity-rooted relative monad")?;
    if conditions.iter().any(|c| c.holds != relative.idempotent()) {
        let detail: Vec<String> = conditions.iter().map(|c| format!("{}={}", c.label, c.holds)).collect();
        return Err(Error::InvariantViolation(format!(
            "monad idempotence conditions disagree ({}), relative form says {}",
            detail.join(" "),
            relative.idempotent()
        )));
    }
    Ok(MonadIdempotenceReport { conditions, relative })
}
