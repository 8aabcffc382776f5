use super::RelMonad;
use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::FinFunctor;

/// `Tj`: restricts a `j′`-relative monad along `j : A → E`, giving a
/// `j′j`-relative monad.
pub fn precompose(t: &RelMonad, j: &FinFunctor) -> Result<RelMonad> {
    if !same_cat(j.target(), t.source()) {
        return Err(Error::Precondition("functor does not land in the source of the relative monad's root".into()));
    }
    if !j.is_functorial() {
        return Err(Error::Laws(j.functoriality_report()));
    }
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let root = j.then(t.root())?;
    let carrier = j.ob_map().iter().map(|&x| t.carrier(x)).collect();
    let unit = j.ob_map().iter().map(|&x| t.unit(x)).collect();
    let out = RelMonad::from_fn(root, carrier, unit, |a, b, f| t.ext(j.ob(a), j.ob(b), f)).map_err(cross_check)?;
    if t.is_idempotent() && !out.is_idempotent() {
        return Err(Error::InvariantViolation("precomposition lost idempotence".into()));
    }
    Ok(out)
}

/// `j′T`: transports a `j`-relative monad along a fully faithful
/// `j′ : E → I`.
pub fn postcompose(jp: &FinFunctor, t: &RelMonad) -> Result<RelMonad> {
    if !same_cat(jp.source(), t.cat()) {
        return Err(Error::Precondition("functor does not start at the relative monad's target".into()));
    }
    if !jp.is_functorial() {
        return Err(Error::Laws(jp.functoriality_report()));
    }
    if let Some((x, y)) = jp.non_fully_faithful_pair() {
        let e = jp.source();
        return Err(Error::Precondition(format!(
            "functor is not fully faithful on the hom-set ({}, {})",
            e.ob_name(x),
            e.ob_name(y)
        )));
    }
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let root = t.root().then(jp)?;
    let carrier = t.carriers().iter().map(|&x| jp.ob(x)).collect();
    let unit = t.units().iter().map(|&u| jp.mor(u)).collect();
    let j = t.root();
    let out = RelMonad::from_fn(root, carrier, unit, |a, b, f| {
        let pre = jp.preimage(j.ob(a), t.carrier(b), f).expect("fully faithful");
        jp.mor(t.ext(a, b, pre))
    })
    .map_err(cross_check)?;
    if t.is_idempotent() != out.is_idempotent() {
        return Err(Error::InvariantViolation("postcomposition changed idempotence".into()));
    }
    Ok(out)
}

fn cross_check(err: Error) -> Error {
    match err {
        Error::Laws(r) => Error::InvariantViolation(format!("transported relative monad breaks the laws: {r}")),
        other => other,
    }
}
