use std::sync::Arc;

use super::{algebra_resolution, RelAdjunction};
use crate::algebra::AlgebraCategory;
use crate::error::{Error, Result};
use crate::fincat::{full_image, CatTables, FinCat, FinFunctor, FullImage, Mor};
use crate::relmonad::RelMonad;

/// `Kl(T)` with `k_T ⊣_j v_T` and the comparison functors into `Im(t)` and
/// `Alg(T)`.
#[derive(Debug, Clone)]
pub struct Kleisli {
    pub category: Arc<FinCat>,
    /// Underlying morphism `ja → tb` of each Kleisli morphism.
    pub underlying: Vec<Mor>,
    pub k: FinFunctor,
    pub v: FinFunctor,
    pub adjunction: RelAdjunction,
    pub image: FullImage,
    /// `Kl(T) → Im(t)`, `f ↦ f^†`.
    pub to_image: FinFunctor,
    /// `Kl(T) → Alg(T)`, `a ↦ (ta, †)`; present when `Alg(T)` was supplied.
    pub to_algebras: Option<FinFunctor>,
}

pub fn kleisli_resolution(t: &RelMonad, algebras: Option<&AlgebraCategory>) -> Result<Kleisli> {
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let (ac, e) = (t.source().clone(), t.cat().clone());
    let na = ac.objects();
    let mut triples: Vec<(usize, usize, Mor)> = Vec::new();
    let mut offset = vec![0; na * na];
    for a in 0..na {
        for b in 0..na {
            offset[a * na + b] = triples.len();
            triples.extend(t.keys(a, b).iter().map(|&f| (a, b, f)));
        }
    }
    let index = |a: usize, b: usize, f: Mor| offset[a * na + b] + e.hom_pos(f);
    let distinct = {
        let mut seen: Vec<Mor> = triples.iter().map(|x| x.2).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    };
    let n = triples.len();
    let mut compose = vec![None; n * n];
    for (gi, &(b, c, g)) in triples.iter().enumerate() {
        for (fi, &(a, b2, f)) in triples.iter().enumerate() {
            if b == b2 {
                compose[gi * n + fi] = Some(index(a, c, e.compose(t.ext(b, c, g), f)));
            }
        }
    }
    let tables = CatTables {
        ob_names: ac.ob_names().to_vec(),
        mor_names: triples
            .iter()
            .map(|&(a, b, f)| {
                if distinct {
                    e.mor_name(f).to_string()
                } else {
                    format!("{}[{},{}]", e.mor_name(f), ac.ob_name(a), ac.ob_name(b))
                }
            })
            .collect(),
        dom: triples.iter().map(|x| x.0).collect(),
        cod: triples.iter().map(|x| x.1).collect(),
        identity: (0..na).map(|a| index(a, a, t.unit(a))).collect(),
        compose,
    };
    let category = Arc::new(FinCat::new(tables).map_err(|err| match err {
        Error::Laws(r) => Error::InvariantViolation(format!("Kleisli category breaks the category laws: {r}")),
        other => other,
    })?);
    let underlying: Vec<Mor> = triples.iter().map(|x| x.2).collect();
    let j = t.root();
    let k = FinFunctor::new(
        ac.clone(),
        category.clone(),
        (0..na).collect(),
        (0..ac.morphisms())
            .map(|h| {
                let (a, b) = (ac.dom(h), ac.cod(h));
                index(a, b, e.compose(t.unit(b), j.mor(h)))
            })
            .collect(),
    )?;
    let v = FinFunctor::new(
        category.clone(),
        e.clone(),
        t.carriers().to_vec(),
        triples.iter().map(|&(a, b, f)| t.ext(a, b, f)).collect(),
    )?;
    let adjunction = RelAdjunction::new(
        j.clone(),
        k.clone(),
        v.clone(),
        (0..na * na)
            .map(|i| triples[offset[i]..offset[i] + t.keys(i / na, i % na).len()].iter().map(|x| x.2).collect())
            .collect(),
    )?;

    let (tf, _) = t.underlying_functor()?;
    let image = full_image(&tf);
    let to_image = FinFunctor::new(
        category.clone(),
        image.category.clone(),
        (0..na).collect(),
        triples
            .iter()
            .map(|&(a, b, f)| {
                let g = t.ext(a, b, f);
                image
                    .category
                    .hom(a, b)
                    .iter()
                    .copied()
                    .find(|&m| image.ff.mor(m) == g)
                    .expect("image contains every ta -> tb")
            })
            .collect(),
    )?;
    if k.then(&to_image)? != image.ioo || to_image.then(&image.ff)? != v {
        return Err(Error::InvariantViolation("comparison into the image does not commute".into()));
    }

    let to_algebras = match algebras {
        None => None,
        Some(alg) => {
            let ob_map = alg.free.ob_map().to_vec();
            let mor_map = triples
                .iter()
                .map(|&(a, b, f)| {
                    alg.morphism_over(ob_map[a], ob_map[b], t.ext(a, b, f))
                        .ok_or_else(|| Error::InvariantViolation("f^† is not an algebra morphism".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let c = FinFunctor::new(category.clone(), alg.category.clone(), ob_map, mor_map)?;
            let res = algebra_resolution(alg)?;
            if k.then(&c)? != *res.left() || c.then(res.right())? != v {
                return Err(Error::InvariantViolation("comparison into algebras does not commute".into()));
            }
            Some(c)
        }
    };
    Ok(Kleisli {
        category,
        underlying,
        k,
        v,
        adjunction,
        image,
        to_image,
        to_algebras,
    })
}
