use std::sync::Arc;

use super::{CatTables, FinCat, FinFunctor};

/// The full image factorisation `F = m ∘ e` with `e` identity-on-objects and
/// `m` fully faithful.
#[derive(Debug, Clone)]
pub struct FullImage {
    pub category: Arc<FinCat>,
    pub ioo: FinFunctor,
    pub ff: FinFunctor,
}

pub fn full_image(f: &FinFunctor) -> FullImage {
    let (c, d) = (f.source(), f.target());
    let o = c.objects();
    let injective_on_objects = {
        let mut seen = vec![false; d.objects()];
        f.ob_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };

    // Morphisms are triples (a, b, g : Fa → Fb), ordered by (a, b, hom order).
    let mut triples = Vec::new();
    let mut offset = vec![0; o * o];
    for a in 0..o {
        for b in 0..o {
            offset[a * o + b] = triples.len();
            triples.extend(d.hom(f.ob(a), f.ob(b)).iter().map(|&g| (a, b, g)));
        }
    }
    let index = |a: usize, b: usize, g: usize| offset[a * o + b] + d.hom_pos(g);
    let n = triples.len();
    let mut compose = vec![None; n * n];
    for (gi, &(b, c2, g)) in triples.iter().enumerate() {
        for (fi, &(a, b2, h)) in triples.iter().enumerate() {
            if b == b2 {
                compose[gi * n + fi] = Some(index(a, c2, d.compose(g, h)));
            }
        }
    }
    let tables = CatTables {
        ob_names: c.ob_names().to_vec(),
        mor_names: triples
            .iter()
            .map(|&(a, b, g)| {
                if injective_on_objects {
                    d.mor_name(g).to_string()
                } else {
                    format!("{}[{},{}]", d.mor_name(g), c.ob_name(a), c.ob_name(b))
                }
            })
            .collect(),
        dom: triples.iter().map(|t| t.0).collect(),
        cod: triples.iter().map(|t| t.1).collect(),
        identity: (0..o).map(|a| index(a, a, d.id(f.ob(a)))).collect(),
        compose,
    };
    let category = Arc::new(FinCat::from_valid(tables));
    let ioo = FinFunctor::from_valid(
        c.clone(),
        category.clone(),
        (0..o).collect(),
        (0..c.morphisms())
            .map(|m| index(c.dom(m), c.cod(m), f.mor(m)))
            .collect(),
    );
    let ff = FinFunctor::from_valid(
        category.clone(),
        d.clone(),
        f.ob_map().to_vec(),
        triples.iter().map(|t| t.2).collect(),
    );
    FullImage { category, ioo, ff }
}
