//! Small categories up to isomorphism.
//!
//! A category with `n` objects and `m` morphisms is laid out as: identities
//! `0..n`, then the non-identity morphisms grouped by `(dom, cod)` in
//! row-major order. The hom-count matrix is chosen least under object
//! permutations; within a shape, a composition table is kept only when no
//! relabelling (object permutation fixing the shape, composed with
//! permutations inside hom-sets) gives a lexicographically smaller table.

use rayon::prelude::*;

use crate::fincat::{CatTables, FinCat, Mor, Ob};

/// Bounds for [`enumerate_categories`]. Objects range over `1..=max_objects`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategoryBounds {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

/// Every nonempty category within the bounds, one per isomorphism class,
/// ordered by morphism count, then by non-identity morphism count, then by
/// composition table.
pub fn enumerate_categories(bounds: CategoryBounds) -> Vec<FinCat> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for m in 1..=bounds.max_morphisms {
        for k in 0..m {
            let n = m - k;
            if n <= bounds.max_objects {
                groups.push((n, k));
            }
        }
    }
    groups.into_iter().flat_map(|(n, k)| categories_of_shape_size(n, k)).collect()
}

/// Categories with exactly `n` objects and `k` non-identity morphisms.
pub fn categories_of_shape_size(n: usize, k: usize) -> Vec<FinCat> {
    let shapes = shapes(n, k);
    let mut per_shape: Vec<Vec<(Vec<Mor>, FinCat)>> = shapes.par_iter().map(|s| categories_of_shape(n, s)).collect();
    let mut all: Vec<(Vec<Mor>, FinCat)> = per_shape.drain(..).flatten().collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.into_iter().map(|(_, c)| c).collect()
}

/// Hom-count matrices (non-identity morphisms) with entry sum `k`, least
/// under simultaneous row and column permutation.
fn shapes(n: usize, k: usize) -> Vec<Vec<usize>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut cur = vec![0; n * n];
    fn fill(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize, perms: &[Vec<usize>]) {
        if i == cur.len() - 1 {
            cur[i] = left;
            if perms.iter().all(|p| permute_matrix(cur, p, n) >= *cur) {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            fill(i + 1, left - v, cur, out, n, perms);
        }
    }
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    fill(0, k, &mut cur, &mut out, n, &perms);
    out
}

fn permute_matrix(c: &[usize], p: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[p[i] * n + p[j]] = c[i * n + j];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

struct Shape {
    n: usize,
    m: usize,
    dom: Vec<Ob>,
    cod: Vec<Ob>,
    /// `homs[x * n + y]`, identities included.
    homs: Vec<Vec<Mor>>,
    /// Composable pairs of non-identity morphisms, in `(g, f)` order.
    pairs: Vec<(Mor, Mor)>,
    pair_index: Vec<usize>,
    relabellings: Vec<Vec<Mor>>,
}

const UNSET: usize = usize::MAX;

impl Shape {
    fn new(n: usize, c: &[usize]) -> Self {
        let mut dom: Vec<Ob> = (0..n).collect();
        let mut cod: Vec<Ob> = (0..n).collect();
        for x in 0..n {
            for y in 0..n {
                for _ in 0..c[x * n + y] {
                    dom.push(x);
                    cod.push(y);
                }
            }
        }
        let m = dom.len();
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..m {
            homs[dom[f] * n + cod[f]].push(f);
        }
        let mut pairs = Vec::new();
        let mut pair_index = vec![UNSET; m * m];
        for g in n..m {
            for f in n..m {
                if cod[f] == dom[g] {
                    pair_index[g * m + f] = pairs.len();
                    pairs.push((g, f));
                }
            }
        }
        let relabellings = relabellings(n, c, &homs);
        Shape {
            n,
            m,
            dom,
            cod,
            homs,
            pairs,
            pair_index,
            relabellings,
        }
    }

    fn comp(&self, val: &[Mor], g: Mor, f: Mor) -> Mor {
        if g < self.n {
            f
        } else if f < self.n {
            g
        } else {
            val[self.pair_index[g * self.m + f]]
        }
    }

    /// Associativity on the triples that became decidable when pair `p` was
    /// assigned: `p` is one of the four composites the check reads.
    fn associative_after(&self, val: &[Mor], p: usize) -> bool {
        let (g0, f0) = self.pairs[p];
        let holds = |h: Mor, g: Mor, f: Mor| {
            let (hg, gf) = (self.comp(val, h, g), self.comp(val, g, f));
            if hg == UNSET || gf == UNSET {
                return true;
            }
            let (l, r) = (self.comp(val, hg, f), self.comp(val, h, gf));
            l == UNSET || r == UNSET || l == r
        };
        let n = self.n;
        for x in n..self.m {
            // p as (h, g) or (g, f)
            if self.cod[x] == self.dom[f0] && !holds(g0, f0, x) {
                return false;
            }
            if self.dom[x] == self.cod[g0] && !holds(x, g0, f0) {
                return false;
            }
        }
        for &(a, b) in &self.pairs {
            // p as (h∘g, f) with h∘g = g0, or as (h, g∘f) with g∘f = f0
            let ab = self.comp(val, a, b);
            if ab == g0 && !holds(a, b, f0) {
                return false;
            }
            if ab == f0 && !holds(g0, a, b) {
                return false;
            }
        }
        true
    }

    /// Prunes a partial table that some relabelling already beats on a
    /// decided prefix.
    fn may_be_canonical(&self, val: &[Mor], assigned: usize) -> bool {
        let mut inv = vec![0; self.m];
        'perm: for p in &self.relabellings[1..] {
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            for (i, &(g, f)) in self.pairs[..assigned].iter().enumerate() {
                let src = self.comp(val, inv[g], inv[f]);
                if src == UNSET {
                    continue 'perm;
                }
                match p[src].cmp(&val[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => continue 'perm,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    /// Is `val` least among its relabellings?
    fn is_canonical(&self, val: &[Mor]) -> bool {
        let mut inv = vec![0; self.m];
        'perm: for p in &self.relabellings {
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            for (i, &(g, f)) in self.pairs.iter().enumerate() {
                let other = p[self.comp(val, inv[g], inv[f])];
                match other.cmp(&val[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => continue 'perm,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn build(&self, val: &[Mor]) -> FinCat {
        let (n, m) = (self.n, self.m);
        let ob_names: Vec<String> = (0..n).map(|x| format!("x{x}")).collect();
        let mut mor_names: Vec<String> = (0..n).map(|x| format!("id_x{x}")).collect();
        mor_names.extend((n..m).map(|f| format!("m{}", f - n + 1)));
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if self.cod[f] == self.dom[g] {
                    compose[g * m + f] = Some(self.comp(val, g, f));
                }
            }
        }
        FinCat::new(CatTables {
            ob_names,
            mor_names,
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            identity: (0..n).collect(),
            compose,
        })
        .expect("enumerated tables satisfy the category laws")
    }
}

/// Morphism relabellings induced by object permutations that fix the shape,
/// combined with permutations inside each hom-set. Identity first.
fn relabellings(n: usize, c: &[usize], homs: &[Vec<Mor>]) -> Vec<Vec<Mor>> {
    let m: usize = n + c.iter().sum::<usize>();
    let mut out = Vec::new();
    for p in permutations(n) {
        if permute_matrix(c, &p, n) != c {
            continue;
        }
        // block (x, y) goes to block (p x, p y), then gets permuted inside
        let blocks: Vec<(usize, usize)> = (0..n * n).filter(|&b| !homs[b].is_empty()).map(|b| (b / n, b % n)).collect();
        let inner: Vec<Vec<Vec<usize>>> = blocks
            .iter()
            .map(|&(x, y)| {
                let size = c[x * n + y];
                permutations(size)
            })
            .collect();
        let mut choice = vec![0; blocks.len()];
        loop {
            let mut map = vec![0; m];
            for x in 0..n {
                map[x] = p[x];
            }
            for (bi, &(x, y)) in blocks.iter().enumerate() {
                let src: Vec<Mor> = homs[x * n + y].iter().copied().filter(|&f| f >= n).collect();
                let dst: Vec<Mor> = homs[p[x] * n + p[y]].iter().copied().filter(|&f| f >= n).collect();
                let perm = &inner[bi][choice[bi]];
                for (i, &f) in src.iter().enumerate() {
                    map[f] = dst[perm[i]];
                }
            }
            out.push(map);
            let mut i = 0;
            loop {
                if i == choice.len() {
                    break;
                }
                choice[i] += 1;
                if choice[i] < inner[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    let id: Vec<Mor> = (0..m).collect();
    out.retain(|p| *p != id);
    out.insert(0, id);
    out
}

fn categories_of_shape(n: usize, c: &[usize]) -> Vec<(Vec<Mor>, FinCat)> {
    let shape = Shape::new(n, c);
    let candidates: Vec<&[Mor]> = shape
        .pairs
        .iter()
        .map(|&(g, f)| shape.homs[shape.dom[f] * n + shape.cod[g]].as_slice())
        .collect();
    let mut val = vec![UNSET; shape.pairs.len()];
    let mut out = Vec::new();
    fn go(s: &Shape, cands: &[&[Mor]], val: &mut Vec<Mor>, i: usize, out: &mut Vec<(Vec<Mor>, FinCat)>) {
        if i == val.len() {
            if s.is_canonical(val) {
                out.push((val.clone(), s.build(val)));
            }
            return;
        }
        for &h in cands[i] {
            val[i] = h;
            if s.associative_after(val, i) && s.may_be_canonical(val, i + 1) {
                go(s, cands, val, i + 1, out);
            }
        }
        val[i] = UNSET;
    }
    if candidates.iter().all(|c| !c.is_empty()) {
        go(&shape, &candidates, &mut val, 0, &mut out);
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    // shapes are visited in a fixed order; prefix the key with the shape
    out.into_iter()
        .map(|(v, cat)| {
            let mut key: Vec<Mor> = c.to_vec();
            key.extend(v);
            (key, cat)
        })
        .collect()
}

/// A canonical relabelling of `cat` together with its table key: two
/// categories are isomorphic iff their keys agree.
pub fn canonical_key(cat: &FinCat) -> Vec<usize> {
    let n = cat.objects();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(n) {
        // hom counts under this object order
        let mut c = vec![0; n * n];
        for f in 0..cat.morphisms() {
            if !cat.is_identity(f) {
                c[p[cat.dom(f)] * n + p[cat.cod(f)]] += 1;
            }
        }
        let shape = Shape::new(n, &c);
        // seed labelling: non-identity morphisms in block order, hom order
        let mut base = vec![0; cat.morphisms()];
        let mut next = vec![0; n * n];
        for x in 0..n {
            base[cat.id(x)] = p[x];
        }
        for f in 0..cat.morphisms() {
            if cat.is_identity(f) {
                continue;
            }
            let b = p[cat.dom(f)] * n + p[cat.cod(f)];
            let block: Vec<Mor> = shape.homs[b].iter().copied().filter(|&g| g >= n).collect();
            base[f] = block[next[b]];
            next[b] += 1;
        }
        for r in &shape.relabellings {
            let lab: Vec<Mor> = base.iter().map(|&x| r[x]).collect();
            let mut inv = vec![0; lab.len()];
            for (i, &x) in lab.iter().enumerate() {
                inv[x] = i;
            }
            let mut key = c.clone();
            key.extend(shape.pairs.iter().map(|&(g, f)| lab[cat.compose(inv[g], inv[f])]));
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    let mut key = vec![n];
    key.extend(best.unwrap_or_default());
    key
}

/// Automorphisms of a category in enumerated layout, as morphism maps,
/// identity first. Other layouts only get the identity.
pub fn automorphisms(cat: &FinCat) -> Vec<Vec<Mor>> {
    let (n, m) = (cat.objects(), cat.morphisms());
    let identity: Vec<Mor> = (0..m).collect();
    let mut c = vec![0; n * n];
    for f in n..m {
        c[cat.dom(f) * n + cat.cod(f)] += 1;
    }
    let shape = Shape::new(n, &c);
    let laid_out = (0..n).all(|x| cat.id(x) == x) && shape.dom == cat.tables().dom && shape.cod == cat.tables().cod;
    if !laid_out {
        return vec![identity];
    }
    shape
        .relabellings
        .into_iter()
        .filter(|r| {
            (0..m).all(|g| (0..m).all(|f| cat.try_compose(g, f).map_or(true, |h| cat.compose(r[g], r[f]) == r[h])))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, k: usize) -> usize {
        categories_of_shape_size(n, k).len()
    }

    #[test]
    fn automorphism_counts() {
        let chain = FinCat::chain(2);
        assert_eq!(automorphisms(&chain).len(), 1);
        // two parallel arrows can be swapped
        let par = categories_of_shape_size(2, 2)
            .into_iter()
            .find(|c| c.hom(0, 1).len() == 2 || c.hom(1, 0).len() == 2)
            .unwrap();
        assert_eq!(automorphisms(&par).len(), 2);
    }

    #[test]
    fn monoid_counts() {
        // monoids of order 1..=5 up to isomorphism
        assert_eq!((0..5).map(|k| count(1, k)).collect::<Vec<_>>(), vec![1, 2, 7, 35, 228]);
    }

    fn plain_key(c: &FinCat) -> Vec<usize> {
        let n = c.objects();
        let mut key = vec![n];
        let mut counts = vec![0; n * n];
        for f in n..c.morphisms() {
            counts[c.dom(f) * n + c.cod(f)] += 1;
        }
        key.extend(counts);
        for g in n..c.morphisms() {
            for f in n..c.morphisms() {
                if let Some(h) = c.try_compose(g, f) {
                    key.push(h);
                }
            }
        }
        key
    }

    #[test]
    fn enumerated_tables_are_their_own_keys() {
        for c in enumerate_categories(CategoryBounds {
            max_objects: 3,
            max_morphisms: 5,
        }) {
            assert_eq!(canonical_key(&c), plain_key(&c));
        }
    }

    #[test]
    fn relabelled_categories_share_a_key() {
        let cats = enumerate_categories(CategoryBounds {
            max_objects: 2,
            max_morphisms: 5,
        });
        let keys: Vec<_> = cats.iter().map(canonical_key).collect();
        for (c, k) in cats.iter().zip(&keys) {
            let ob: Vec<Ob> = (0..c.objects()).rev().collect();
            let mor: Vec<Mor> = (0..c.morphisms()).rev().collect();
            assert_eq!(&canonical_key(&c.relabel(&ob, &mor)), k);
        }
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), keys.len());
    }
}
