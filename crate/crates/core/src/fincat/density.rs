use std::ops::ControlFlow;

use serde::Serialize;

use super::{FinFunctor, Mor, Ob};

/// A pair `(e, e′)` at which `E(e, e′) → Nat(E(j−, e), E(j−, e′))` fails to be
/// a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityFailure {
    pub e: Ob,
    pub e_prime: Ob,
    pub morphisms: usize,
    pub transformations: usize,
    /// Two morphisms inducing the same transformation, if any.
    pub collision: Option<(Mor, Mor)>,
    /// A transformation not induced by any morphism: its components listed
    /// over `(a, x ∈ E(ja, e))` in source-object then hom order.
    pub unmatched: Option<Vec<Mor>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Density {
    pub dense: bool,
    /// Every failing pair, in lexicographic order; the first is the witness.
    pub failures: Vec<DensityFailure>,
}

impl Density {
    pub fn witness(&self) -> Option<&DensityFailure> {
        self.failures.first()
    }
}

/// Decides density of `j : A → E` by enumerating, for every pair of objects of
/// `E`, all families of hom-set functions and keeping the natural ones.
pub fn is_dense(j: &FinFunctor) -> Density {
    let e_cat = j.target();
    let n = e_cat.objects();
    let mut failures = Vec::new();
    for e in 0..n {
        for e2 in 0..n {
            if let Some(f) = check_pair(j, e, e2, false) {
                failures.push(f);
            }
        }
    }
    Density {
        dense: failures.is_empty(),
        failures,
    }
}

/// Same decision, stopping at the first failure.
pub(crate) fn is_dense_flag(j: &FinFunctor) -> bool {
    let n = j.target().objects();
    (0..n).all(|e| (0..n).all(|e2| check_pair(j, e, e2, true).is_none()))
}

fn check_pair(j: &FinFunctor, e: Ob, e2: Ob, quick: bool) -> Option<DensityFailure> {
    let (a_cat, e_cat) = (j.source(), j.target());
    // Variables: (a, x) with x : ja → e.
    let vars: Vec<(Ob, Mor)> = (0..a_cat.objects())
        .flat_map(|a| e_cat.hom(j.ob(a), e).iter().map(move |&x| (a, x)))
        .collect();
    let var_index = |a: Ob, x: Mor| vars.iter().position(|&v| v == (a, x)).unwrap();
    // Constraint α_b(x ∘ jh) = α_a(x) ∘ jh for h : b → a, checked at the later variable.
    let mut constraints: Vec<Vec<(usize, usize, Mor)>> = vec![Vec::new(); vars.len()];
    for h in 0..a_cat.morphisms() {
        let (b, a) = (a_cat.dom(h), a_cat.cod(h));
        for &x in e_cat.hom(j.ob(a), e) {
            let src = var_index(a, x);
            let dst = var_index(b, e_cat.compose(x, j.mor(h)));
            constraints[src.max(dst)].push((src, dst, j.mor(h)));
        }
    }

    let induced = |g: Mor| -> Vec<Mor> { vars.iter().map(|&(_, x)| e_cat.compose(g, x)).collect() };
    let homs = e_cat.hom(e, e2);
    let images: Vec<Vec<Mor>> = homs.iter().map(|&g| induced(g)).collect();
    let mut collision = None;
    'outer: for i in 0..images.len() {
        for k in i + 1..images.len() {
            if images[i] == images[k] {
                collision = Some((homs[i], homs[k]));
                break 'outer;
            }
        }
    }
    if quick && collision.is_some() {
        return Some(DensityFailure {
            e,
            e_prime: e2,
            morphisms: homs.len(),
            transformations: 0,
            collision,
            unmatched: None,
        });
    }

    let mut count = 0usize;
    let mut unmatched = None;
    let mut values = vec![0; vars.len()];
    fn go(
        k: usize,
        values: &mut Vec<Mor>,
        vars: &[(Ob, Mor)],
        constraints: &[Vec<(usize, usize, Mor)>],
        j: &FinFunctor,
        e2: Ob,
        visit: &mut dyn FnMut(&[Mor]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let e_cat = j.target();
        if k == vars.len() {
            return visit(values);
        }
        for &m in e_cat.hom(j.ob(vars[k].0), e2) {
            values[k] = m;
            let ok = constraints[k]
                .iter()
                .all(|&(src, dst, jh)| values[dst] == e_cat.compose(values[src], jh));
            if ok {
                go(k + 1, values, vars, constraints, j, e2, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = go(0, &mut values, &vars, &constraints, j, e2, &mut |t: &[Mor]| {
        count += 1;
        if quick && count > homs.len() {
            return ControlFlow::Break(());
        }
        if unmatched.is_none() && !images.iter().any(|img| img.as_slice() == t) {
            unmatched = Some(t.to_vec());
            if quick {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    if collision.is_none() && unmatched.is_none() && count <= homs.len() {
        return None;
    }
    Some(DensityFailure {
        e,
        e_prime: e2,
        morphisms: homs.len(),
        transformations: count,
        collision,
        unmatched,
    })
}
