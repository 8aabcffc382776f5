//! Algebras for relative monads and the category they form.

mod category;
mod induced;

pub use category::{build_algebra_category, AlgebraCategory, DEFAULT_ALGEBRA_CAP};
pub use induced::{is_j_ary, morphism_induced_functor, restrict_algebra, InducedFunctor, JAry};

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{Mor, Ob};
use crate::relmonad::{assert_agreement, evaluate_conditions, ExtComponent, IdempotenceReport, RelMonad};
use crate::report::LawReport;

pub const LAW_ALG_UNIT: &str = "f^⋊ ∘ η_a = f";
pub const LAW_ALG_COMPAT: &str = "(g^⋊ ∘ f)^⋊ = g^⋊ ∘ f^†";
pub const LAW_ALG_TYPING: &str = "ε : e → e′";
pub const LAW_ALG_MORPHISM: &str = "ε ∘ f^⋊ = (ε ∘ f)^⋊′";

/// An algebra `(e, ⋊)`. The extension table is keyed by `a` and then by the
/// position of `f` in `E(ja, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelAlgebra {
    monad: Arc<RelMonad>,
    carrier: Ob,
    ext: Vec<Vec<Mor>>,
}

impl RelAlgebra {
    pub fn new(monad: Arc<RelMonad>, carrier: Ob, ext: Vec<Vec<Mor>>) -> Result<Self> {
        let alg = Self::unchecked(monad, carrier, ext)?;
        let report = alg.check_laws();
        if !report.is_ok() {
            return Err(Error::Laws(report));
        }
        Ok(alg)
    }

    /// Index- and type-checked, laws unchecked.
    pub fn unchecked(monad: Arc<RelMonad>, carrier: Ob, ext: Vec<Vec<Mor>>) -> Result<Self> {
        let (ac, e) = (monad.source().clone(), monad.cat().clone());
        if carrier >= e.objects() {
            return Err(Error::Malformed("algebra carrier out of range".into()));
        }
        if ext.len() != ac.objects() {
            return Err(Error::Malformed("algebra table does not cover the root's source".into()));
        }
        for a in 0..ac.objects() {
            if ext[a].len() != e.hom(monad.root().ob(a), carrier).len() {
                return Err(Error::Malformed(format!(
                    "algebra table at {} has {} entries, expected {}",
                    ac.ob_name(a),
                    ext[a].len(),
                    e.hom(monad.root().ob(a), carrier).len()
                )));
            }
            for &g in &ext[a] {
                if g >= e.morphisms() || e.dom(g) != monad.carrier(a) || e.cod(g) != carrier {
                    return Err(Error::Malformed(format!(
                        "algebra extension at {} is not a morphism ta -> e",
                        ac.ob_name(a)
                    )));
                }
            }
        }
        Ok(RelAlgebra { monad, carrier, ext })
    }

    /// The free algebra `(tb, †)`.
    pub fn free(monad: Arc<RelMonad>, b: Ob) -> Self {
        let na = monad.source().objects();
        let ext = (0..na).map(|a| monad.ext_table()[a * na + b].clone()).collect();
        RelAlgebra {
            carrier: monad.carrier(b),
            monad,
            ext,
        }
    }

    pub fn monad(&self) -> &Arc<RelMonad> {
        &self.monad
    }

    pub fn carrier(&self) -> Ob {
        self.carrier
    }

    pub fn ext_table(&self) -> &[Vec<Mor>] {
        &self.ext
    }

    /// `E(ja, e)`.
    pub fn keys(&self, a: Ob) -> &[Mor] {
        self.monad.cat().hom(self.monad.root().ob(a), self.carrier)
    }

    /// `f^⋊` for `f : ja → e`.
    pub fn ext(&self, a: Ob, f: Mor) -> Mor {
        self.ext[a][self.monad.cat().hom_pos(f)]
    }

    /// Same carrier and table, ignoring which `Arc` holds the monad.
    pub fn same_structure(&self, other: &RelAlgebra) -> bool {
        self.carrier == other.carrier && self.ext == other.ext
    }

    pub fn check_laws(&self) -> LawReport {
        let t = &*self.monad;
        let (ac, e) = (t.source(), t.cat());
        let mut r = LawReport::new(&[LAW_ALG_UNIT, LAW_ALG_COMPAT]);
        for a in 0..ac.objects() {
            for &f in self.keys(a) {
                if e.compose(self.ext(a, f), t.unit(a)) != f {
                    r.violate(LAW_ALG_UNIT, format!("({}, {})", ac.ob_name(a), e.mor_name(f)));
                }
            }
            for b in 0..ac.objects() {
                for &f in t.keys(a, b) {
                    let fd = t.ext(a, b, f);
                    for &g in self.keys(b) {
                        let gx = self.ext(b, g);
                        if self.ext(a, e.compose(gx, f)) != e.compose(gx, fd) {
                            r.violate(
                                LAW_ALG_COMPAT,
                                format!("{} then ({}, {})", t.key_name(a, b, f), ac.ob_name(b), e.mor_name(g)),
                            );
                        }
                    }
                }
            }
        }
        r
    }

    pub(crate) fn ext_components(&self) -> Vec<ExtComponent<'_>> {
        let (ac, e) = (self.monad.source(), self.monad.cat());
        (0..ac.objects())
            .map(|a| ExtComponent {
                label: ac.ob_name(a).to_string(),
                eta: self.monad.unit(a),
                sources: self.keys(a),
                targets: e.hom(self.monad.carrier(a), self.carrier),
                ext: &self.ext[a],
            })
            .collect()
    }

    pub fn raw_idempotence_conditions(&self) -> IdempotenceReport {
        evaluate_conditions(self.monad.cat(), &self.ext_components())
    }

    pub fn is_idempotent(&self) -> bool {
        self.raw_idempotence_conditions().idempotent()
    }

    /// Is `eps : self.carrier → other.carrier` an algebra morphism?
    pub fn is_morphism_to(&self, other: &RelAlgebra, eps: Mor) -> bool {
        let (ac, e) = (self.monad.source(), self.monad.cat());
        (0..ac.objects()).all(|a| {
            self.keys(a)
                .iter()
                .all(|&f| e.compose(eps, self.ext(a, f)) == other.ext(a, e.compose(eps, f)))
        })
    }
}

pub fn check_algebra(alg: &RelAlgebra) -> LawReport {
    alg.check_laws()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: RelAlgebra,
    pub target: RelAlgebra,
    pub mor: Mor,
}

pub fn check_algebra_morphism(m: &AlgebraMorphism) -> LawReport {
    let (s, t) = (&m.source, &m.target);
    let (ac, e) = (s.monad.source(), s.monad.cat());
    let mut r = LawReport::new(&[LAW_ALG_TYPING, LAW_ALG_MORPHISM]);
    if m.mor >= e.morphisms() || e.dom(m.mor) != s.carrier || e.cod(m.mor) != t.carrier {
        r.violate(LAW_ALG_TYPING, "underlying morphism".to_string());
        return r;
    }
    for a in 0..ac.objects() {
        for &f in s.keys(a) {
            if e.compose(m.mor, s.ext(a, f)) != t.ext(a, e.compose(m.mor, f)) {
                r.violate(LAW_ALG_MORPHISM, format!("({}, {})", ac.ob_name(a), e.mor_name(f)));
            }
        }
    }
    r
}

/// Every algebra, carrier by carrier in object order. Candidates for `f^⋊`
/// are the extensions of `f` along `η_a`, then the compatibility law filters.
pub fn enumerate_algebras(t: &Arc<RelMonad>, carrier: Option<Ob>) -> Vec<RelAlgebra> {
    let e = t.cat();
    let carriers: Vec<Ob> = match carrier {
        Some(x) => vec![x],
        None => (0..e.objects()).collect(),
    };
    let mut out = Vec::new();
    for x in carriers {
        enumerate_on(t, x, &mut |ext| {
            out.push(RelAlgebra {
                monad: t.clone(),
                carrier: x,
                ext,
            })
        });
    }
    out
}

fn enumerate_on(t: &RelMonad, x: Ob, visit: &mut dyn FnMut(Vec<Vec<Mor>>)) {
    let (ac, e) = (t.source(), t.cat());
    let na = ac.objects();
    let j = t.root();
    // keys in order (a, position in E(ja, x))
    let mut keys: Vec<(Ob, Mor)> = Vec::new();
    let mut key_index: Vec<Vec<usize>> = vec![Vec::new(); na];
    for a in 0..na {
        for &f in e.hom(j.ob(a), x) {
            key_index[a].push(keys.len());
            keys.push((a, f));
        }
    }
    let candidates: Vec<Vec<Mor>> = keys.iter().map(|&(a, f)| e.extensions_along(t.unit(a), f)).collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut val: Vec<Mor> = vec![usize::MAX; keys.len()];

    struct Ctx<'a> {
        t: &'a RelMonad,
        keys: &'a [(Ob, Mor)],
        key_index: &'a [Vec<usize>],
        candidates: &'a [Vec<Mor>],
    }

    fn consistent(cx: &Ctx<'_>, val: &[Mor], k: usize) -> bool {
        let (t, e) = (cx.t, cx.t.cat());
        // compatibility instances whose keys are both among 0..=k and one is k
        for kb in 0..=k {
            let (b, _) = cx.keys[kb];
            let gx = val[kb];
            for a in 0..t.source().objects() {
                for &f in t.keys(a, b) {
                    let h = e.compose(gx, f);
                    let kh = cx.key_index[a][e.hom_pos(h)];
                    if kh > k || (kb != k && kh != k) {
                        continue;
                    }
                    if val[kh] != e.compose(gx, t.ext(a, b, f)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(cx: &Ctx<'_>, val: &mut Vec<Mor>, k: usize, visit: &mut dyn FnMut(Vec<Vec<Mor>>)) {
        if k == cx.keys.len() {
            let table = cx.key_index.iter().map(|ks| ks.iter().map(|&i| val[i]).collect()).collect();
            visit(table);
            return;
        }
        for &g in &cx.candidates[k] {
            val[k] = g;
            if consistent(cx, val, k) {
                go(cx, val, k + 1, visit);
            }
        }
        val[k] = usize::MAX;
    }

    let cx = Ctx {
        t,
        keys: &keys,
        key_index: &key_index,
        candidates: &candidates,
    };
    go(&cx, &mut val, 0, visit);
}

/// The eight conditions for an algebra, with agreement and per-carrier
/// uniqueness of idempotent structures asserted.
pub fn algebra_idempotence_report(alg: &RelAlgebra) -> Result<IdempotenceReport> {
    let laws = alg.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let report = assert_agreement(alg.raw_idempotence_conditions(), "algebra")?;
    if report.idempotent() {
        let unique = algebra_from_orthogonal_carrier(alg.monad(), alg.carrier)?;
        if !unique.same_structure(alg) {
            return Err(Error::InvariantViolation(
                "two idempotent algebra structures on one carrier".into(),
            ));
        }
    }
    Ok(report)
}

/// The idempotent algebra on `e` given by unique extensions along `η`.
pub fn algebra_from_orthogonal_carrier(t: &Arc<RelMonad>, x: Ob) -> Result<RelAlgebra> {
    let (ac, e) = (t.source(), t.cat());
    if x >= e.objects() {
        return Err(Error::Malformed("carrier out of range".into()));
    }
    let mut ext = Vec::with_capacity(ac.objects());
    for a in 0..ac.objects() {
        let mut row = Vec::new();
        for &f in e.hom(t.root().ob(a), x) {
            match e.extensions_along(t.unit(a), f)[..] {
                [g] => row.push(g),
                [] => {
                    return Err(Error::NoExtension {
                        a: ac.ob_name(a).into(),
                        b: e.ob_name(x).into(),
                        f: e.mor_name(f).into(),
                    })
                }
                [g1, g2, ..] => {
                    return Err(Error::NonUniqueExtension {
                        a: ac.ob_name(a).into(),
                        b: e.ob_name(x).into(),
                        f: e.mor_name(f).into(),
                        g1: e.mor_name(g1).into(),
                        g2: e.mor_name(g2).into(),
                    })
                }
            }
        }
        ext.push(row);
    }
    let alg = RelAlgebra::new(t.clone(), x, ext).map_err(|err| match err {
        Error::Laws(r) => Error::InvariantViolation(format!("unique extensions broke the algebra laws: {r}")),
        other => other,
    })?;
    if !alg.is_idempotent() {
        return Err(Error::InvariantViolation("unique extensions gave a non-idempotent algebra".into()));
    }
    Ok(alg)
}

/// Is every morphism of `E` into the carrier of `target`, from the carrier of
/// any algebra, an algebra morphism? Asserted equivalent to idempotence of
/// `target`.
pub fn all_maps_into_are_algebra_morphisms(t: &Arc<RelMonad>, target: &RelAlgebra) -> Result<bool> {
    let e = t.cat();
    let algebras = enumerate_algebras(t, None);
    let holds = algebras.iter().all(|src| {
        e.hom(src.carrier, target.carrier)
            .iter()
            .all(|&eps| src.is_morphism_to(target, eps))
    });
    if holds != target.is_idempotent() {
        return Err(Error::InvariantViolation(format!(
            "maps into the algebra are morphisms: {holds}, but algebra idempotent: {}",
            target.is_idempotent()
        )));
    }
    Ok(holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicIdempotence {
    pub holds: bool,
    pub algebras: usize,
    /// The first non-idempotent algebra, if any.
    pub counterexample: Option<RelAlgebra>,
}

/// Whether every algebra is idempotent, cross-checked against fullness of the
/// forgetful functor.
pub fn is_algebraically_idempotent(t: &Arc<RelMonad>) -> Result<AlgebraicIdempotence> {
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let e = t.cat();
    let algebras = enumerate_algebras(t, None);
    let counterexample = algebras.iter().find(|a| !a.is_idempotent()).cloned();
    let full = algebras.iter().all(|x| {
        algebras
            .iter()
            .all(|y| e.hom(x.carrier, y.carrier).iter().all(|&eps| x.is_morphism_to(y, eps)))
    });
    let holds = counterexample.is_none();
    if holds != full {
        return Err(Error::InvariantViolation(format!(
            "algebraic idempotence is {holds} but the forgetful functor is full: {full}"
        )));
    }
    Ok(AlgebraicIdempotence {
        holds,
        algebras: algebras.len(),
        counterexample,
    })
}

/// A relative algebra summarised for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub carrier: String,
    pub ext: Vec<(String, String, String)>,
    pub idempotent: bool,
    pub free_on: Vec<String>,
}

impl RelAlgebra {
    pub fn summary(&self) -> AlgebraSummary {
        let (ac, e) = (self.monad.source(), self.monad.cat());
        let mut ext = Vec::new();
        for a in 0..ac.objects() {
            for &f in self.keys(a) {
                ext.push((
                    ac.ob_name(a).to_string(),
                    e.mor_name(f).to_string(),
                    e.mor_name(self.ext(a, f)).to_string(),
                ));
            }
        }
        let free_on = (0..ac.objects())
            .filter(|&b| RelAlgebra::free(self.monad.clone(), b).same_structure(self))
            .map(|b| ac.ob_name(b).to_string())
            .collect();
        AlgebraSummary {
            carrier: e.ob_name(self.carrier).to_string(),
            ext,
            idempotent: self.is_idempotent(),
            free_on,
        }
    }
}
