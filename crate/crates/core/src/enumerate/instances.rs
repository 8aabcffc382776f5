use std::ops::ControlFlow;
use std::sync::Arc;

use rayon::prelude::*;

use crate::fincat::{enumerate_nat_transformations, FinCat, FinFunctor, FunctorSearch, Mor, Ob};
use crate::relmonad::{MonadData, RelMonad};

/// The first `limit` items of an enumeration in canonical order.
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    /// Set when more than `limit` items exist.
    pub truncated: bool,
}

impl<T> Enumeration<T> {
    fn from_parts(parts: Vec<Vec<T>>, limit: usize) -> Self {
        let mut items: Vec<T> = parts.into_iter().flatten().collect();
        let truncated = items.len() > limit;
        items.truncate(limit);
        Enumeration { items, truncated }
    }
}

/// Every monad on `e`: endofunctors in functor-search order, then units,
/// then multiplications, each in component order.
pub fn enumerate_monads(e: &Arc<FinCat>, limit: usize) -> Enumeration<MonadData> {
    assert!(limit > 0, "limit must be positive");
    let mut endos = Vec::new();
    FunctorSearch::new(e.clone(), e.clone()).for_each(|t| {
        endos.push(t);
        ControlFlow::Continue(())
    });
    let id = FinFunctor::identity(e.clone());
    let parts = endos
        .par_iter()
        .map(|t| monads_on(&id, t, limit + 1))
        .collect();
    Enumeration::from_parts(parts, limit)
}

fn monads_on(id: &FinFunctor, t: &FinFunctor, limit: usize) -> Vec<MonadData> {
    let e = t.source();
    let tt = t.then(t).expect("endofunctors compose");
    let mut out = Vec::new();
    enumerate_nat_transformations(id, t, |_, _| true, |unit| {
        let unit_ok = |x: Ob, m: Mor| {
            let tx = t.ob(x);
            e.compose(m, unit[tx]) == e.id(tx) && e.compose(m, t.mor(unit[x])) == e.id(tx)
        };
        enumerate_nat_transformations(&tt, t, unit_ok, |mult| {
            if let Ok(m) = MonadData::new(t.clone(), unit.clone(), mult) {
                out.push(m);
            }
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Every relative monad over `j`: carriers in object order, then units in
/// hom order, then extension tables. The extension search only offers
/// extensions along the unit and prunes with the associativity law as soon
/// as its three entries are known.
pub fn enumerate_relmonads(j: &FinFunctor, limit: usize) -> Enumeration<RelMonad> {
    assert!(limit > 0, "limit must be positive");
    let parts = carrier_unit_prefixes(j)
        .par_iter()
        .map(|(carrier, unit)| {
            let mut out = Vec::new();
            extension_tables(j, carrier, unit, &mut |ext| {
                out.push(RelMonad::unchecked(j.clone(), carrier.clone(), unit.clone(), ext).expect("well typed"));
                if out.len() > limit {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            out
        })
        .collect();
    let en = Enumeration::from_parts(parts, limit);
    debug_assert!(en.items.iter().all(|t| t.check_laws().is_ok()));
    en
}

/// Every `(t, η)` with `η_a : ja → ta`.
pub(crate) fn carrier_unit_prefixes(j: &FinFunctor) -> Vec<(Vec<Ob>, Vec<Mor>)> {
    let e = j.target();
    let na = j.source().objects();
    let mut out = vec![(Vec::new(), Vec::new())];
    for a in 0..na {
        let mut next = Vec::new();
        for (carrier, unit) in &out {
            for x in 0..e.objects() {
                for &u in e.hom(j.ob(a), x) {
                    let mut c: Vec<Ob> = carrier.clone();
                    let mut v: Vec<Mor> = unit.clone();
                    c.push(x);
                    v.push(u);
                    next.push((c, v));
                }
            }
        }
        out = next;
    }
    out
}

pub(crate) fn extension_tables(
    j: &FinFunctor,
    carrier: &[Ob],
    unit: &[Mor],
    visit: &mut dyn FnMut(Vec<Vec<Mor>>) -> ControlFlow<()>,
) {
    let e = j.target();
    let na = carrier.len();
    // keys (a, b, f), grouped by (a, b) then hom order
    let mut keys: Vec<(Ob, Ob, Mor)> = Vec::new();
    let mut key_index: Vec<Vec<usize>> = vec![Vec::new(); na * na];
    for a in 0..na {
        for b in 0..na {
            for &f in e.hom(j.ob(a), carrier[b]) {
                key_index[a * na + b].push(keys.len());
                keys.push((a, b, f));
            }
        }
    }
    let candidates: Vec<Vec<Mor>> = keys
        .iter()
        .map(|&(a, b, f)| {
            if a == b && f == unit[a] {
                vec![e.id(carrier[a])]
            } else {
                e.extensions_along(unit[a], f)
            }
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return;
    }

    struct Ctx<'a> {
        e: &'a FinCat,
        na: usize,
        keys: &'a [(Ob, Ob, Mor)],
        key_index: &'a [Vec<usize>],
        candidates: &'a [Vec<Mor>],
    }

    // (g^† ∘ f)^† = g^† ∘ f^† for every pair of keys up to k that involves k
    fn consistent(cx: &Ctx<'_>, val: &[Mor], k: usize) -> bool {
        for kf in 0..=k {
            let (a, b, f) = cx.keys[kf];
            for c in 0..cx.na {
                for &kg in &cx.key_index[b * cx.na + c] {
                    if kg > k {
                        break;
                    }
                    let gd = val[kg];
                    let h = cx.e.compose(gd, f);
                    let kh = cx.key_index[a * cx.na + c][cx.e.hom_pos(h)];
                    if kh > k || (kf != k && kg != k && kh != k) {
                        continue;
                    }
                    if val[kh] != cx.e.compose(gd, val[kf]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(
        cx: &Ctx<'_>,
        val: &mut Vec<Mor>,
        k: usize,
        visit: &mut dyn FnMut(Vec<Vec<Mor>>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == cx.keys.len() {
            let table = cx.key_index.iter().map(|ks| ks.iter().map(|&i| val[i]).collect()).collect();
            return visit(table);
        }
        for &g in &cx.candidates[k] {
            val[k] = g;
            if consistent(cx, val, k) {
                go(cx, val, k + 1, visit)?;
            }
        }
        val[k] = usize::MAX;
        ControlFlow::Continue(())
    }

    let cx = Ctx {
        e,
        na,
        keys: &keys,
        key_index: &key_index,
        candidates: &candidates,
    };
    let mut val = vec![usize::MAX; keys.len()];
    let _ = go(&cx, &mut val, 0, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn monads_on_small_categories() {
        assert_eq!(enumerate_monads(&arc(FinCat::terminal()), 10).items.len(), 1);
        assert_eq!(enumerate_monads(&arc(FinCat::chain(2)), 10).items.len(), 2);
    }

    #[test]
    fn monad_limit_truncates() {
        let en = enumerate_monads(&arc(FinCat::chain(2)), 1);
        assert_eq!(en.items.len(), 1);
        assert!(en.truncated);
    }

    #[test]
    fn discrete_target_has_one_relmonad() {
        let one = arc(FinCat::terminal());
        let e = arc(FinCat::discrete(&["x", "y"]));
        let j = FinFunctor::point(one, e, 0);
        let en = enumerate_relmonads(&j, 10);
        assert_eq!(en.items.len(), 1);
        assert_eq!(en.items[0].carrier(0), 0);
    }

    #[test]
    fn empty_source_gives_the_vacuous_relmonad() {
        let j = FinFunctor::new(arc(FinCat::empty()), arc(FinCat::chain(2)), vec![], vec![]).unwrap();
        let en = enumerate_relmonads(&j, 10);
        assert_eq!(en.items.len(), 1);
        assert!(en.items[0].is_vacuous());
    }
}
