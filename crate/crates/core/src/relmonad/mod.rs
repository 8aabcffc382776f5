//! Relative monads in extension form.
//!
//! A relative monad over a root `j : A → E` is an object map `t`, units
//! `η_a : ja → ta` and an extension operator sending `f : ja → tb` to
//! `f^† : ta → tb`. The extension table is keyed by `(a, b)` and then by the
//! position of `f` in the materialised hom-set `E(ja, tb)`.

mod composition;
mod idempotence;
mod left_extension;
mod monad;
mod morphism;
mod orthogonal;

pub use composition::{postcompose, precompose};
pub use idempotence::{idempotence_report, Condition, IdempotenceReport, CONDITION_LABELS};
pub(crate) use idempotence::{assert_agreement, evaluate_conditions, ExtComponent};
pub use left_extension::{exhibits_left_extension, LeftExtension, LeftExtensionVerdict, ENDOFUNCTOR_WARNING_THRESHOLD};
pub use monad::{
    em_algebras, monad_idempotence_report, monad_relative_correspondence, raw_monad_conditions, MonadData,
    MonadForm, MonadIdempotenceReport,
};
pub use morphism::RelMonadMorphism;
pub use orthogonal::from_orthogonal_data;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Mor, Ob};
use crate::report::LawReport;

pub const LAW_EXT_UNIT: &str = "f^† ∘ η_a = f";
pub const LAW_UNIT_EXT: &str = "(η_a)^† = 1_ta";
pub const LAW_EXT_ASSOC: &str = "(g^† ∘ f)^† = g^† ∘ f^†";

pub const CERT_FUNCTOR: &str = "t is a functor";
pub const CERT_UNIT_NATURAL: &str = "η is natural";
pub const CERT_EXT_NATURAL_SOURCE: &str = "† natural in the source";
pub const CERT_EXT_NATURAL_TARGET: &str = "† natural in the target";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMonad {
    root: FinFunctor,
    carrier: Vec<Ob>,
    unit: Vec<Mor>,
    ext: Vec<Vec<Mor>>,
}

impl RelMonad {
    /// Builds and law-checks a relative monad.
    pub fn new(root: FinFunctor, carrier: Vec<Ob>, unit: Vec<Mor>, ext: Vec<Vec<Mor>>) -> Result<Self> {
        let t = Self::unchecked(root, carrier, unit, ext)?;
        let report = t.check_laws();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(t)
    }

    /// Builds a relative monad whose tables are well typed but whose laws
    /// have not been checked.
    pub fn unchecked(root: FinFunctor, carrier: Vec<Ob>, unit: Vec<Mor>, ext: Vec<Vec<Mor>>) -> Result<Self> {
        let (a_cat, e) = (root.source().clone(), root.target().clone());
        let na = a_cat.objects();
        let bad = |m: String| Err(Error::Malformed(m));
        if carrier.len() != na || unit.len() != na || ext.len() != na * na {
            return bad("relative monad tables do not cover the root's source".into());
        }
        if carrier.iter().any(|&x| x >= e.objects()) {
            return bad("carrier outside the root's target".into());
        }
        for a in 0..na {
            let u = unit[a];
            if u >= e.morphisms() || e.dom(u) != root.ob(a) || e.cod(u) != carrier[a] {
                return bad(format!("unit at {} is not a morphism ja -> ta", a_cat.ob_name(a)));
            }
        }
        for a in 0..na {
            for b in 0..na {
                let keys = e.hom(root.ob(a), carrier[b]).len();
                let row = &ext[a * na + b];
                if row.len() != keys {
                    return bad(format!(
                        "extension table at ({}, {}) has {} entries, expected {keys}",
                        a_cat.ob_name(a),
                        a_cat.ob_name(b),
                        row.len()
                    ));
                }
                for &g in row {
                    if g >= e.morphisms() || e.dom(g) != carrier[a] || e.cod(g) != carrier[b] {
                        return bad(format!(
                            "extension at ({}, {}) is not a morphism ta -> tb",
                            a_cat.ob_name(a),
                            a_cat.ob_name(b)
                        ));
                    }
                }
            }
        }
        Ok(RelMonad {
            root,
            carrier,
            unit,
            ext,
        })
    }

    /// Builds the extension table from a function of `(a, b, f)`.
    pub fn from_fn(
        root: FinFunctor,
        carrier: Vec<Ob>,
        unit: Vec<Mor>,
        ext: impl Fn(Ob, Ob, Mor) -> Mor,
    ) -> Result<Self> {
        let e = root.target().clone();
        let na = root.source().objects();
        if carrier.len() != na || carrier.iter().any(|&x| x >= e.objects()) {
            return Err(Error::Malformed("carrier table out of range".into()));
        }
        let mut table = Vec::with_capacity(na * na);
        for a in 0..na {
            for b in 0..na {
                table.push(e.hom(root.ob(a), carrier[b]).iter().map(|&f| ext(a, b, f)).collect());
            }
        }
        Self::new(root, carrier, unit, table)
    }

    /// `t = j`, `η = 1`, `f^† = f`.
    pub fn trivial(root: FinFunctor) -> Self {
        let e = root.target().clone();
        let na = root.source().objects();
        let carrier = root.ob_map().to_vec();
        let unit = carrier.iter().map(|&x| e.id(x)).collect();
        let ext = (0..na * na)
            .map(|k| e.hom(root.ob(k / na), root.ob(k % na)).to_vec())
            .collect();
        RelMonad {
            root,
            carrier,
            unit,
            ext,
        }
    }

    pub fn root(&self) -> &FinFunctor {
        &self.root
    }

    /// The root's source `A`.
    pub fn source(&self) -> &Arc<FinCat> {
        self.root.source()
    }

    /// The root's target `E`, where the carrier lives.
    pub fn cat(&self) -> &Arc<FinCat> {
        self.root.target()
    }

    pub fn carrier(&self, a: Ob) -> Ob {
        self.carrier[a]
    }

    pub fn carriers(&self) -> &[Ob] {
        &self.carrier
    }

    pub fn unit(&self, a: Ob) -> Mor {
        self.unit[a]
    }

    pub fn units(&self) -> &[Mor] {
        &self.unit
    }

    pub fn ext_table(&self) -> &[Vec<Mor>] {
        &self.ext
    }

    /// `f^†` for `f : ja → tb`.
    pub fn ext(&self, a: Ob, b: Ob, f: Mor) -> Mor {
        let e = self.cat();
        debug_assert_eq!((e.dom(f), e.cod(f)), (self.root.ob(a), self.carrier[b]));
        self.ext[a * self.source().objects() + b][e.hom_pos(f)]
    }

    /// `E(ja, tb)`.
    pub fn keys(&self, a: Ob, b: Ob) -> &[Mor] {
        self.cat().hom(self.root.ob(a), self.carrier[b])
    }

    /// True when the root's source is empty, so every statement about the
    /// monad is vacuous.
    pub fn is_vacuous(&self) -> bool {
        self.source().objects() == 0
    }

    pub(crate) fn key_name(&self, a: Ob, b: Ob, f: Mor) -> String {
        let (ac, e) = (self.source(), self.cat());
        format!("({}, {}, {})", ac.ob_name(a), ac.ob_name(b), e.mor_name(f))
    }

    /// Every violated instance of the three relative monad laws.
    pub fn check_laws(&self) -> LawReport {
        let e = self.cat().clone();
        let na = self.source().objects();
        let mut report = LawReport::new(&[LAW_EXT_UNIT, LAW_UNIT_EXT, LAW_EXT_ASSOC]);
        for a in 0..na {
            if self.ext(a, a, self.unit[a]) != e.id(self.carrier[a]) {
                report.violate(LAW_UNIT_EXT, self.source().ob_name(a).to_string());
            }
            for b in 0..na {
                for &f in self.keys(a, b) {
                    let fd = self.ext(a, b, f);
                    if e.compose(fd, self.unit[a]) != f {
                        report.violate(LAW_EXT_UNIT, self.key_name(a, b, f));
                    }
                    for c in 0..na {
                        for &g in self.keys(b, c) {
                            let gd = self.ext(b, c, g);
                            let lhs = self.ext(a, c, e.compose(gd, f));
                            if lhs != e.compose(gd, fd) {
                                report.violate(
                                    LAW_EXT_ASSOC,
                                    format!("{} then {}", self.key_name(a, b, f), self.key_name(b, c, g)),
                                );
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// `t(h) := (η_b ∘ jh)^†`, together with certificates that `t` is a
    /// functor, `η : j ⇒ t` is natural and `†` is natural in both variables.
    pub fn underlying_functor(&self) -> Result<(FinFunctor, LawReport)> {
        let (ac, e) = (self.source().clone(), self.cat().clone());
        let tmap = |h: Mor| {
            let (a, b) = (ac.dom(h), ac.cod(h));
            self.ext(a, b, e.compose(self.unit[b], self.root.mor(h)))
        };
        let mor_map: Vec<Mor> = (0..ac.morphisms()).map(tmap).collect();
        let t = FinFunctor::unchecked(ac.clone(), e.clone(), self.carrier.clone(), mor_map)?;
        let mut certs = LawReport::new(&[
            CERT_FUNCTOR,
            CERT_UNIT_NATURAL,
            CERT_EXT_NATURAL_SOURCE,
            CERT_EXT_NATURAL_TARGET,
        ]);
        for v in t.functoriality_report().violations {
            certs.violate(CERT_FUNCTOR, format!("{}: {}", v.law, v.witness));
        }
        if !certs.is_ok() {
            return Err(Error::InvariantViolation(format!("underlying functor: {certs}")));
        }
        for h in 0..ac.morphisms() {
            let (a, b) = (ac.dom(h), ac.cod(h));
            if e.compose(t.mor(h), self.unit[a]) != e.compose(self.unit[b], self.root.mor(h)) {
                certs.violate(CERT_UNIT_NATURAL, ac.mor_name(h).to_string());
            }
            // (f ∘ jh)^† = f^† ∘ th for h : a → b, f : jb → tc
            for c in 0..ac.objects() {
                for &f in self.keys(b, c) {
                    let lhs = self.ext(a, c, e.compose(f, self.root.mor(h)));
                    if lhs != e.compose(self.ext(b, c, f), t.mor(h)) {
                        certs.violate(CERT_EXT_NATURAL_SOURCE, format!("{} at {}", self.key_name(b, c, f), ac.mor_name(h)));
                    }
                }
                // (th ∘ f)^† = th ∘ f^† for h : a → b, f : jc → ta
                for &f in self.keys(c, a) {
                    let lhs = self.ext(c, b, e.compose(t.mor(h), f));
                    if lhs != e.compose(t.mor(h), self.ext(c, a, f)) {
                        certs.violate(CERT_EXT_NATURAL_TARGET, format!("{} at {}", self.key_name(c, a, f), ac.mor_name(h)));
                    }
                }
            }
        }
        if !certs.is_ok() {
            return Err(Error::InvariantViolation(format!("underlying functor: {certs}")));
        }
        Ok((t, certs))
    }

    /// Same carrier, unit and extension tables (roots compared structurally).
    pub fn same_tables(&self, other: &RelMonad) -> bool {
        self == other
    }
}

/// Law check of a relative monad, as a free function.
pub fn check_relmonad_laws(t: &RelMonad) -> LawReport {
    t.check_laws()
}

pub fn underlying_functor(t: &RelMonad) -> Result<(FinFunctor, LawReport)> {
    t.underlying_functor()
}
