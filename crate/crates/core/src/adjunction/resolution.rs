use std::ops::ControlFlow;
use std::sync::Arc;

use super::RelAdjunction;
use crate::algebra::AlgebraCategory;
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, FunctorSearch, Mor};
use crate::relmonad::RelMonad;

/// A relative adjunction certified to induce `monad`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub adjunction: RelAdjunction,
    pub monad: Arc<RelMonad>,
}

impl Resolution {
    pub fn new(adjunction: RelAdjunction, monad: Arc<RelMonad>) -> Result<Self> {
        if adjunction.induced_relmonad()? != *monad {
            return Err(Error::Precondition("adjunction does not induce the relative monad".into()));
        }
        Ok(Resolution { adjunction, monad })
    }
}

/// `φ(s) = u(s) ∘ η_a` for a left adjoint landing in free algebras.
fn over_algebras(t: &RelMonad, left: FinFunctor, right: FinFunctor, underlying: impl Fn(Mor) -> Mor) -> Result<RelAdjunction> {
    let (c, e) = (left.target().clone(), t.cat().clone());
    let na = t.source().objects();
    let mut phi = Vec::with_capacity(na * c.objects());
    for a in 0..na {
        for x in 0..c.objects() {
            phi.push(
                c.hom(left.ob(a), x)
                    .iter()
                    .map(|&s| e.compose(underlying(s), t.unit(a)))
                    .collect(),
            );
        }
    }
    RelAdjunction::new(t.root().clone(), left, right, phi)
}

/// `f_T ⊣_j u_T`.
pub fn algebra_resolution(alg: &AlgebraCategory) -> Result<RelAdjunction> {
    over_algebras(&alg.monad, alg.free.clone(), alg.forgetful.clone(), |s| alg.underlying[s])
}

/// `f_T ⊣_j u_T` restricted to idempotent algebras; `None` unless every free
/// algebra is idempotent.
pub fn idem_algebra_resolution(alg: &AlgebraCategory) -> Result<Option<RelAdjunction>> {
    let Some(left) = alg.idem_free.clone() else {
        return Ok(None);
    };
    let right = alg.idem_inclusion.then(&alg.forgetful)?;
    let incl = alg.idem_inclusion.clone();
    over_algebras(&alg.monad, left, right, |s| alg.underlying[incl.mor(s)]).map(Some)
}

/// Every functor between the apices that commutes strictly with both left
/// and both right adjoints.
pub fn enumerate_resolution_morphisms(src: &Resolution, dst: &Resolution, limit: usize) -> Result<Vec<FinFunctor>> {
    if *src.monad != *dst.monad {
        return Err(Error::Precondition("resolutions of different relative monads".into()));
    }
    let (s, d) = (&src.adjunction, &dst.adjunction);
    let (c, cp) = (s.apex().clone(), d.apex().clone());
    let ac = s.root().source();
    let mut search = FunctorSearch::new(c.clone(), cp.clone());
    for x in 0..c.objects() {
        let forced: Vec<_> = (0..ac.objects()).filter(|&a| s.left().ob(a) == x).map(|a| d.left().ob(a)).collect();
        let cands = (0..cp.objects())
            .filter(|&y| d.right().ob(y) == s.right().ob(x) && forced.iter().all(|&f| f == y))
            .collect();
        search = search.restrict_object(x, cands);
    }
    let forced_mor: Vec<Option<Mor>> = {
        let mut v = vec![None; c.morphisms()];
        for h in 0..ac.morphisms() {
            let m = s.left().mor(h);
            match v[m] {
                Some(prev) if prev != d.left().mor(h) => return Ok(Vec::new()),
                _ => v[m] = Some(d.left().mor(h)),
            }
        }
        v
    };
    let search = search.filter_morphisms(|m, mp| {
        d.right().mor(mp) == s.right().mor(m) && forced_mor[m].is_none_or(|f| f == mp)
    });
    let mut out = Vec::new();
    let mut overflow = false;
    search.for_each(|f| {
        if out.len() == limit {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(f);
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::Precondition(format!("more than {limit} resolution morphisms")));
    }
    for f in &out {
        if s.left().then(f)? != *d.left() || f.then(d.right())? != *s.right() {
            return Err(Error::InvariantViolation("resolution morphism does not commute".into()));
        }
    }
    Ok(out)
}
