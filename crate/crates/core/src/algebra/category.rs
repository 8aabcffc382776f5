use std::sync::Arc;

use super::{enumerate_algebras, RelAlgebra};
use crate::error::{Error, Result};
use crate::fincat::{CatTables, FinCat, FinFunctor, Mor, Ob};
use crate::relmonad::RelMonad;

pub const DEFAULT_ALGEBRA_CAP: usize = 512;

/// `Alg(T)` materialised as a finite category, with the forgetful functor
/// `u_T`, the free-algebra functor `f_T` and the full subcategory of
/// idempotent algebras.
#[derive(Debug, Clone)]
pub struct AlgebraCategory {
    pub monad: Arc<RelMonad>,
    pub algebras: Vec<RelAlgebra>,
    pub category: Arc<FinCat>,
    /// Underlying morphism of each morphism of `category`.
    pub underlying: Vec<Mor>,
    pub forgetful: FinFunctor,
    pub free: FinFunctor,
    /// Indices into `algebras` of the idempotent ones.
    pub idempotent: Vec<Ob>,
    pub idem_category: Arc<FinCat>,
    pub idem_inclusion: FinFunctor,
    /// `f_T` factored through `Alg_idem(T)`, when every free algebra is
    /// idempotent.
    pub idem_free: Option<FinFunctor>,
}

impl AlgebraCategory {
    /// Index of an algebra with the same structure as `alg`.
    pub fn find(&self, alg: &RelAlgebra) -> Option<Ob> {
        self.algebras.iter().position(|x| x.same_structure(alg))
    }

    /// The morphism of `Alg(T)` from `x` to `y` over `eps`, if `eps` is an
    /// algebra morphism.
    pub fn morphism_over(&self, x: Ob, y: Ob, eps: Mor) -> Option<Mor> {
        self.category.hom(x, y).iter().copied().find(|&m| self.underlying[m] == eps)
    }
}

/// Materialises `Alg(T)`; refuses when there are more than `cap` algebras.
pub fn build_algebra_category(t: &Arc<RelMonad>, cap: usize) -> Result<AlgebraCategory> {
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let (ac, e) = (t.source().clone(), t.cat().clone());
    let algebras = enumerate_algebras(t, None);
    if algebras.len() > cap {
        return Err(Error::AlgebraCap {
            count: algebras.len(),
            cap,
        });
    }
    let n = algebras.len();
    let mut per_carrier = vec![0usize; e.objects()];
    for a in &algebras {
        per_carrier[a.carrier()] += 1;
    }
    let ob_names: Vec<String> = {
        let mut seen = vec![0usize; e.objects()];
        algebras
            .iter()
            .map(|a| {
                let x = a.carrier();
                seen[x] += 1;
                if per_carrier[x] == 1 {
                    e.ob_name(x).to_string()
                } else {
                    format!("{}_{}", e.ob_name(x), seen[x])
                }
            })
            .collect()
    };
    let injective = per_carrier.iter().all(|&c| c <= 1);

    // (source algebra, target algebra, underlying morphism), grouped by pair
    let mut triples: Vec<(Ob, Ob, Mor)> = Vec::new();
    let mut offsets: Vec<Vec<Mor>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            for &eps in e.hom(algebras[x].carrier(), algebras[y].carrier()) {
                if algebras[x].is_morphism_to(&algebras[y], eps) {
                    offsets[x * n + y].push(triples.len());
                    triples.push((x, y, eps));
                }
            }
        }
    }
    let lookup = |x: Ob, y: Ob, eps: Mor| -> Option<Mor> {
        offsets[x * n + y].iter().copied().find(|&i| triples[i].2 == eps)
    };
    let m = triples.len();
    let mut compose = vec![None; m * m];
    for (gi, &(y, z, g)) in triples.iter().enumerate() {
        for (fi, &(x, y2, f)) in triples.iter().enumerate() {
            if y == y2 {
                let h = lookup(x, z, e.compose(g, f)).ok_or_else(|| {
                    Error::InvariantViolation("algebra morphisms are not closed under composition".into())
                })?;
                compose[gi * m + fi] = Some(h);
            }
        }
    }
    let mut identity = Vec::with_capacity(n);
    for (x, alg) in algebras.iter().enumerate() {
        identity.push(
            lookup(x, x, e.id(alg.carrier()))
                .ok_or_else(|| Error::InvariantViolation("identity is not an algebra morphism".into()))?,
        );
    }
    let tables = CatTables {
        mor_names: triples
            .iter()
            .map(|&(x, y, eps)| {
                if injective {
                    e.mor_name(eps).to_string()
                } else {
                    format!("{}[{},{}]", e.mor_name(eps), ob_names[x], ob_names[y])
                }
            })
            .collect(),
        ob_names,
        dom: triples.iter().map(|t| t.0).collect(),
        cod: triples.iter().map(|t| t.1).collect(),
        identity,
        compose,
    };
    let category = Arc::new(FinCat::new(tables)?);
    let underlying: Vec<Mor> = triples.iter().map(|t| t.2).collect();
    let forgetful = FinFunctor::new(
        category.clone(),
        e.clone(),
        algebras.iter().map(|a| a.carrier()).collect(),
        underlying.clone(),
    )?;

    let free_obs: Vec<Ob> = (0..ac.objects())
        .map(|b| {
            let free = RelAlgebra::free(t.clone(), b);
            algebras
                .iter()
                .position(|a| a.same_structure(&free))
                .ok_or_else(|| Error::InvariantViolation("free algebra missing from the enumeration".into()))
        })
        .collect::<Result<_>>()?;
    let (tf, _) = t.underlying_functor()?;
    let free_mors: Vec<Mor> = (0..ac.morphisms())
        .map(|h| {
            lookup(free_obs[ac.dom(h)], free_obs[ac.cod(h)], tf.mor(h))
                .ok_or_else(|| Error::InvariantViolation("t(h) is not a morphism of free algebras".into()))
        })
        .collect::<Result<_>>()?;
    let free = FinFunctor::new(ac.clone(), category.clone(), free_obs.clone(), free_mors)?;

    let idempotent: Vec<Ob> = (0..n).filter(|&x| algebras[x].is_idempotent()).collect();
    let (sub, mors) = category.full_subcategory(&idempotent);
    let idem_category = Arc::new(sub);
    let idem_inclusion = FinFunctor::new(idem_category.clone(), category.clone(), idempotent.clone(), mors.clone())?;
    let idem_free = if free_obs.iter().all(|x| idempotent.contains(x)) {
        let obs = free_obs
            .iter()
            .map(|x| idempotent.iter().position(|y| y == x).unwrap())
            .collect();
        let ms = free
            .mor_map()
            .iter()
            .map(|m| mors.iter().position(|y| y == m).unwrap())
            .collect();
        Some(FinFunctor::new(ac.clone(), idem_category.clone(), obs, ms)?)
    } else {
        None
    };
    if t.is_idempotent() && idem_free.is_none() {
        return Err(Error::InvariantViolation(
            "idempotent monad whose free algebras are not all idempotent".into(),
        ));
    }
    Ok(AlgebraCategory {
        monad: t.clone(),
        algebras,
        category,
        underlying,
        forgetful,
        free,
        idempotent,
        idem_category,
        idem_inclusion,
        idem_free,
    })
}
