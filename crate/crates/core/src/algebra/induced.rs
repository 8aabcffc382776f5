use std::sync::Arc;

use super::{build_algebra_category, is_algebraically_idempotent, AlgebraCategory, RelAlgebra};
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, FunctorProperties, Mor};
use crate::relmonad::{precompose, RelMonad, RelMonadMorphism};

/// A functor between algebra categories over `E`, with both categories.
#[derive(Debug, Clone)]
pub struct InducedFunctor {
    pub source: AlgebraCategory,
    pub target: AlgebraCategory,
    pub functor: FinFunctor,
}

/// Builds a functor between materialised algebra categories from an object
/// assignment, sending each morphism to the one with the same underlying
/// morphism, and checks that it commutes with the forgetful functors.
fn over_e(source: AlgebraCategory, target: AlgebraCategory, ob_map: Vec<usize>) -> Result<InducedFunctor> {
    let mor_map: Vec<Mor> = (0..source.category.morphisms())
        .map(|m| {
            let c = &source.category;
            target
                .morphism_over(ob_map[c.dom(m)], ob_map[c.cod(m)], source.underlying[m])
                .ok_or_else(|| Error::InvariantViolation("algebra morphism is not preserved".into()))
        })
        .collect::<Result<_>>()?;
    let functor = FinFunctor::new(source.category.clone(), target.category.clone(), ob_map, mor_map)?;
    if functor.then(&target.forgetful)? != source.forgetful {
        return Err(Error::InvariantViolation("functor does not commute with the forgetful functors".into()));
    }
    Ok(InducedFunctor {
        source,
        target,
        functor,
    })
}

/// `Alg(τ) : Alg(T′) → Alg(T)` for `τ : T → T′`, with `f^⋊ := f^⋊′ ∘ τ_a`
/// (by convention).
pub fn morphism_induced_functor(tau: &RelMonadMorphism, cap: usize) -> Result<InducedFunctor> {
    let t = Arc::new(tau.source().clone());
    let tp = Arc::new(tau.target().clone());
    let (ac, e) = (t.source().clone(), t.cat().clone());
    let source = build_algebra_category(&tp, cap)?;
    let target = build_algebra_category(&t, cap)?;
    let ob_map = source
        .algebras
        .iter()
        .map(|alg| {
            let ext = (0..ac.objects())
                .map(|a| {
                    alg.keys(a)
                        .iter()
                        .map(|&f| e.compose(alg.ext(a, f), tau.component(a)))
                        .collect()
                })
                .collect();
            let pulled = RelAlgebra::new(t.clone(), alg.carrier(), ext).map_err(|err| match err {
                Error::Laws(r) => Error::InvariantViolation(format!("pulled-back algebra breaks the laws: {r}")),
                other => other,
            })?;
            target
                .find(&pulled)
                .ok_or_else(|| Error::InvariantViolation("pulled-back algebra missing".into()))
        })
        .collect::<Result<_>>()?;
    over_e(source, target, ob_map)
}

/// The `Tj`-algebra underlying a `T`-algebra.
pub fn restrict_algebra(alg: &RelAlgebra, j: &FinFunctor, tj: &Arc<RelMonad>) -> Result<RelAlgebra> {
    let ext = (0..j.source().objects())
        .map(|a| {
            tj.cat()
                .hom(tj.root().ob(a), alg.carrier())
                .iter()
                .map(|&f| alg.ext(j.ob(a), f))
                .collect()
        })
        .collect();
    RelAlgebra::new(tj.clone(), alg.carrier(), ext)
}

#[derive(Debug, Clone)]
pub struct JAry {
    pub holds: bool,
    pub canonical: InducedFunctor,
    pub properties: FunctorProperties,
    /// `(T algebraically idempotent, Tj algebraically idempotent)` when `T`
    /// is `j`-ary.
    pub transfer: Option<(bool, bool)>,
}

/// Is the canonical functor `Alg(T) → Alg(Tj)` an equivalence?
pub fn is_j_ary(t: &Arc<RelMonad>, j: &FinFunctor, cap: usize) -> Result<JAry> {
    let tj = Arc::new(precompose(t, j)?);
    let source = build_algebra_category(t, cap)?;
    let target = build_algebra_category(&tj, cap)?;
    let ob_map = source
        .algebras
        .iter()
        .map(|alg| {
            let r = restrict_algebra(alg, j, &tj).map_err(|err| match err {
                Error::Laws(r) => Error::InvariantViolation(format!("restricted algebra breaks the laws: {r}")),
                other => other,
            })?;
            target
                .find(&r)
                .ok_or_else(|| Error::InvariantViolation("restricted algebra missing".into()))
        })
        .collect::<Result<_>>()?;
    let canonical = over_e(source, target, ob_map)?;
    let properties = canonical.functor.properties();
    let holds = properties.equivalence == Some(true);
    let transfer = if holds {
        let whole = is_algebraically_idempotent(t)?.holds;
        let part = is_algebraically_idempotent(&tj)?.holds;
        if whole != part {
            return Err(Error::InvariantViolation(format!(
                "j-ary monad with algebraic idempotence {whole} but restriction {part}"
            )));
        }
        Some((whole, part))
    } else {
        None
    };
    Ok(JAry {
        holds,
        canonical,
        properties,
        transfer,
    })
}
