use super::RelMonad;
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, Mor, Ob};

/// The idempotent relative monad determined by a carrier and unit, with
/// `f^†` the unique extension of `f` along `η_a`.
pub fn from_orthogonal_data(root: FinFunctor, carrier: Vec<Ob>, unit: Vec<Mor>) -> Result<RelMonad> {
    let (ac, e) = (root.source().clone(), root.target().clone());
    let na = ac.objects();
    if carrier.len() != na || unit.len() != na || carrier.iter().any(|&x| x >= e.objects()) {
        return Err(Error::Malformed("carrier or unit table does not cover the root's source".into()));
    }
    for a in 0..na {
        let u = unit[a];
        if u >= e.morphisms() || e.dom(u) != root.ob(a) || e.cod(u) != carrier[a] {
            return Err(Error::Malformed(format!("unit at {} is not a morphism ja -> ta", ac.ob_name(a))));
        }
    }
    let mut ext = Vec::with_capacity(na * na);
    for a in 0..na {
        for b in 0..na {
            let mut row = Vec::new();
            for &f in e.hom(root.ob(a), carrier[b]) {
                match e.extensions_along(unit[a], f)[..] {
                    [g] => row.push(g),
                    [] => {
                        return Err(Error::NoExtension {
                            a: ac.ob_name(a).into(),
                            b: ac.ob_name(b).into(),
                            f: e.mor_name(f).into(),
                        })
                    }
                    [g1, g2, ..] => {
                        return Err(Error::NonUniqueExtension {
                            a: ac.ob_name(a).into(),
                            b: ac.ob_name(b).into(),
                            f: e.mor_name(f).into(),
                            g1: e.mor_name(g1).into(),
                            g2: e.mor_name(g2).into(),
                        })
                    }
                }
            }
            ext.push(row);
        }
    }
    let t = RelMonad::new(root, carrier, unit, ext).map_err(|err| match err {
        Error::Laws(r) => Error::InvariantViolation(format!("unique extensions broke the laws: {r}")),
        other => other,
    })?;
    if !t.is_idempotent() {
        return Err(Error::InvariantViolation("unique extensions gave a non-idempotent monad".into()));
    }
    Ok(t)
}
