use std::sync::Arc;

use serde::Serialize;

use crate::adjunction::kleisli_resolution;
use crate::algebra::{
    algebra_idempotence_report, build_algebra_category, is_algebraically_idempotent, RelAlgebra,
    DEFAULT_ALGEBRA_CAP,
};
use crate::error::{Error, Result};
use crate::fincat::is_dense;
use crate::relmonad::{idempotence_report, monad_idempotence_report, Condition, MonadData, RelMonad};

/// Every flag the library can compute for a relative monad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub idempotent: bool,
    pub algebraically_idempotent: bool,
    pub dense_root: bool,
    pub identity_root: bool,
    pub free_algebras_idempotent: bool,
    pub kleisli_to_image_fully_faithful: bool,
    pub kleisli_j_reflective: bool,
    pub forgetful_fully_faithful: bool,
    pub kleisli_equiv_algebras: bool,
    pub algebras: usize,
    pub idempotent_algebras: usize,
    /// `(carrier, number of algebras on it)` in object order.
    pub algebras_per_carrier: Vec<(String, usize)>,
    pub algebra_morphisms: usize,
    pub kleisli_objects: usize,
    pub kleisli_morphisms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub fingerprint: String,
    pub conditions: Vec<Condition>,
    pub flags: Flags,
    /// Named witnesses for the negative flags, in a fixed order.
    pub witnesses: Vec<(String, String)>,
}

/// Plain-text rendering of the tables of `t`, stable across runs.
pub fn fingerprint(t: &RelMonad) -> String {
    let (ac, e) = (t.source(), t.cat());
    let na = ac.objects();
    let mut parts = Vec::new();
    for a in 0..na {
        parts.push(format!(
            "{}: j={} t={} η={}",
            ac.ob_name(a),
            e.ob_name(t.root().ob(a)),
            e.ob_name(t.carrier(a)),
            e.mor_name(t.unit(a))
        ));
    }
    for a in 0..na {
        for b in 0..na {
            for &f in t.keys(a, b) {
                parts.push(format!(
                    "({}, {}, {})† = {}",
                    ac.ob_name(a),
                    ac.ob_name(b),
                    e.mor_name(f),
                    e.mor_name(t.ext(a, b, f))
                ));
            }
        }
    }
    parts.join("; ")
}

fn describe_algebra(alg: &RelAlgebra) -> String {
    let s = alg.summary();
    let ext: Vec<String> = s.ext.iter().map(|(a, f, g)| format!("({a}, {f}) ↦ {g}")).collect();
    format!("on {}: {}", s.carrier, ext.join(", "))
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantViolation(what.to_string()))
    }
}

/// Runs every check on `t` and asserts the implications between them.
pub fn classify(t: &Arc<RelMonad>) -> Result<Classification> {
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let (ac, e) = (t.source(), t.cat());
    let report = idempotence_report(t)?;
    let idempotent = report.idempotent();
    let algebraic = is_algebraically_idempotent(t)?;
    let alg = build_algebra_category(t, DEFAULT_ALGEBRA_CAP)?;
    for a in &alg.algebras {
        algebra_idempotence_report(a)?;
    }
    let kl = kleisli_resolution(t, Some(&alg))?;
    let density = is_dense(t.root());
    let identity_root = t.root().is_identity();

    let free_algebras_idempotent = (0..ac.objects()).all(|b| RelAlgebra::free(t.clone(), b).is_idempotent());
    let kleisli_to_image_fully_faithful = kl.to_image.is_fully_faithful();
    let kleisli_j_reflective = kl.adjunction.is_j_reflective()?;
    let forgetful_fully_faithful = alg.forgetful.is_fully_faithful();
    let comparison = kl.to_algebras.as_ref().expect("algebras supplied");
    let kleisli_equiv_algebras = comparison.is_fully_faithful() && comparison.is_essentially_surjective();

    check(
        !algebraic.holds || idempotent,
        "algebraically idempotent but not idempotent",
    )?;
    check(
        idempotent == free_algebras_idempotent,
        "idempotence disagrees with idempotence of the free algebras",
    )?;
    check(
        idempotent == kleisli_to_image_fully_faithful,
        "idempotence disagrees with full faithfulness of Kl(T) → Im(t)",
    )?;
    check(
        idempotent == kleisli_j_reflective,
        "idempotence disagrees with j-reflectivity of the Kleisli resolution",
    )?;
    check(
        algebraic.holds == forgetful_fully_faithful,
        "algebraic idempotence disagrees with full faithfulness of u_T",
    )?;
    if identity_root {
        check(
            !idempotent || algebraic.holds,
            "idempotent monad that is not algebraically idempotent",
        )?;
        let m = MonadData::from_relative(t)?;
        let mrep = monad_idempotence_report(&m)?;
        check(mrep.idempotent() == idempotent, "monad and relative idempotence disagree")?;
    }

    let algebras_per_carrier = (0..e.objects())
        .map(|x| {
            let n = alg.algebras.iter().filter(|a| a.carrier() == x).count();
            (e.ob_name(x).to_string(), n)
        })
        .collect();

    let mut witnesses = Vec::new();
    if let Some(c) = report.conditions.iter().find(|c| !c.holds) {
        witnesses.push((
            "idempotence".to_string(),
            format!("{}: {}", c.label, c.witness.clone().unwrap_or_default()),
        ));
    }
    if let Some(a) = &algebraic.counterexample {
        witnesses.push(("algebraic_idempotence".to_string(), describe_algebra(a)));
    }
    if let Some(w) = density.witness() {
        witnesses.push((
            "density".to_string(),
            format!(
                "({}, {}): {} morphisms, {} transformations",
                e.ob_name(w.e),
                e.ob_name(w.e_prime),
                w.morphisms,
                w.transformations
            ),
        ));
    }

    Ok(Classification {
        fingerprint: fingerprint(t),
        conditions: report.conditions.clone(),
        flags: Flags {
            idempotent,
            algebraically_idempotent: algebraic.holds,
            dense_root: density.dense,
            identity_root,
            free_algebras_idempotent,
            kleisli_to_image_fully_faithful,
            kleisli_j_reflective,
            forgetful_fully_faithful,
            kleisli_equiv_algebras,
            algebras: alg.algebras.len(),
            idempotent_algebras: alg.idempotent.len(),
            algebras_per_carrier,
            algebra_morphisms: alg.category.morphisms(),
            kleisli_objects: kl.category.objects(),
            kleisli_morphisms: kl.category.morphisms(),
        },
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::gallery_build;

    fn gallery_monad(name: &str) -> Arc<RelMonad> {
        gallery_build(name).unwrap().monad("T").unwrap().monad.clone()
    }

    #[test]
    fn first_counterexample() {
        let c = classify(&gallery_monad("paper-idem-not-alg")).unwrap();
        assert!(c.flags.idempotent);
        assert!(!c.flags.algebraically_idempotent);
        assert!(!c.flags.dense_root);
        assert!(c.conditions.iter().all(|c| c.holds));
        assert!(c.flags.algebras_per_carrier.contains(&("e".to_string(), 2)));
    }

    #[test]
    fn second_counterexample() {
        let c = classify(&gallery_monad("paper-alg-not-free")).unwrap();
        assert!(c.flags.idempotent && c.flags.algebraically_idempotent);
        assert!(!c.flags.kleisli_equiv_algebras);
        assert_eq!((c.flags.kleisli_objects, c.flags.kleisli_morphisms), (1, 1));
    }

    #[test]
    fn trivial_has_every_positive_flag() {
        let c = classify(&gallery_monad("trivial")).unwrap();
        let f = &c.flags;
        assert!(f.idempotent && f.algebraically_idempotent && f.free_algebras_idempotent);
        assert!(f.kleisli_to_image_fully_faithful && f.kleisli_j_reflective && f.forgetful_fully_faithful);
    }

    #[test]
    fn split_endo_is_not_idempotent() {
        let c = classify(&gallery_monad("split-endo")).unwrap();
        assert!(!c.flags.idempotent && !c.flags.kleisli_j_reflective);
        assert!(c.witnesses[0].1.contains("eta.p"), "{:?}", c.witnesses);
    }
}
