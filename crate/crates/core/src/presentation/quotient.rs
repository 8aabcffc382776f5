//! Finite quotients of free categories by congruence closure.
//!
//! For every vertex `v` we grow the automaton of morphisms out of `v`: a state
//! is a class of paths starting at `v`, and following an edge post-composes
//! it. States are defined breadth first; every relation is imposed at every
//! state, and coincidences are merged with a union-find that also merges
//! successors, so the resulting equivalence is closed under composition on
//! both sides. The build succeeds once every live state has all of its
//! out-edges defined and every relation holds everywhere.

use crate::error::{Error, Exhaustion, Result};
use crate::fincat::{CatTables, FinCat, Mor};

use super::{CatPresentation, Path};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientBuildConfig {
    pub max_word_length: usize,
    pub max_classes: usize,
}

impl Default for QuotientBuildConfig {
    fn default() -> Self {
        QuotientBuildConfig {
            max_word_length: 16,
            max_classes: 4096,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub category: FinCat,
    pub resolver: WordResolver,
    /// Canonical representative path of every morphism.
    pub representatives: Vec<Path>,
}

/// Maps paths of the presentation to morphisms of the built category.
#[derive(Debug, Clone)]
pub struct WordResolver {
    presentation: CatPresentation,
    roots: Vec<usize>,
    trans: Vec<Vec<Option<usize>>>,
    class_of_state: Vec<Mor>,
}

impl WordResolver {
    pub fn resolve(&self, path: &Path) -> Mor {
        let mut s = self.roots[path.source];
        for &e in &path.edges {
            s = self.trans[s][e].expect("complete automaton");
        }
        self.class_of_state[s]
    }

    pub fn resolve_word(&self, word: &crate::dsl::Word) -> Result<Mor> {
        Ok(self.resolve(&self.presentation.path(word)?))
    }

    /// Resolves written text such as `f.eta` or `id_t`.
    pub fn resolve_text(&self, text: &str) -> Result<Mor> {
        let parts = text
            .split('.')
            .map(|s| crate::dsl::Ident {
                name: s.trim().to_string(),
                line: 0,
                column: 0,
            })
            .collect();
        self.resolve_word(&crate::dsl::Word { parts })
    }

    pub fn presentation(&self) -> &CatPresentation {
        &self.presentation
    }
}

struct Closure<'a> {
    p: &'a CatPresentation,
    cfg: QuotientBuildConfig,
    parent: Vec<usize>,
    depth: Vec<usize>,
    cod: Vec<usize>,
    trans: Vec<Vec<Option<usize>>>,
    live: usize,
}

impl<'a> Closure<'a> {
    fn find(&mut self, mut s: usize) -> usize {
        while self.parent[s] != s {
            self.parent[s] = self.parent[self.parent[s]];
            s = self.parent[s];
        }
        s
    }

    fn new_state(&mut self, cod: usize, depth: usize) -> Result<usize> {
        if depth > self.cfg.max_word_length {
            return Err(Error::Exhausted(Exhaustion::MaxWordLength(self.cfg.max_word_length)));
        }
        if self.live >= self.cfg.max_classes {
            return Err(Error::Exhausted(Exhaustion::MaxClasses(self.cfg.max_classes)));
        }
        let s = self.parent.len();
        self.parent.push(s);
        self.depth.push(depth);
        self.cod.push(cod);
        self.trans.push(vec![None; self.p.edges.len()]);
        self.live += 1;
        Ok(s)
    }

    fn step(&mut self, s: usize, e: usize, define: bool) -> Result<Option<usize>> {
        let s = self.find(s);
        match self.trans[s][e] {
            Some(t) => Ok(Some(self.find(t))),
            None if define => {
                let t = self.new_state(self.p.edges[e].target, self.depth[s] + 1)?;
                self.trans[s][e] = Some(t);
                Ok(Some(t))
            }
            None => Ok(None),
        }
    }

    fn trace(&mut self, s: usize, path: &Path, define: bool) -> Result<Option<usize>> {
        let mut cur = self.find(s);
        for &e in &path.edges {
            match self.step(cur, e, define)? {
                Some(t) => cur = t,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    fn merge(&mut self, a: usize, b: usize) -> bool {
        let mut queue = vec![(a, b)];
        let mut changed = false;
        while let Some((x, y)) = queue.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            changed = true;
            let (keep, drop) = (x.min(y), x.max(y));
            self.parent[drop] = keep;
            self.depth[keep] = self.depth[keep].min(self.depth[drop]);
            self.live -= 1;
            for e in 0..self.p.edges.len() {
                if let Some(t) = self.trans[drop][e] {
                    match self.trans[keep][e] {
                        Some(u) => queue.push((u, t)),
                        None => self.trans[keep][e] = Some(t),
                    }
                }
            }
        }
        changed
    }

    fn impose_relations(&mut self, s: usize, define: bool) -> Result<bool> {
        let mut changed = false;
        for r in 0..self.p.relations.len() {
            let s = self.find(s);
            let (l, rr) = (&self.p.relations[r].0, &self.p.relations[r].1);
            if l.source != self.cod[s] {
                continue;
            }
            let (l, rr) = (l.clone(), rr.clone());
            let a = self.trace(s, &l, define)?;
            let b = self.trace(s, &rr, define)?;
            if let (Some(a), Some(b)) = (a, b) {
                changed |= self.merge(a, b);
            }
        }
        Ok(changed)
    }
}

/// Builds the finite category presented by `p`, or reports which bound was
/// hit first when the quotient is (possibly) infinite.
pub fn build_finite_quotient(p: &CatPresentation, cfg: QuotientBuildConfig) -> Result<Quotient> {
    if cfg.max_word_length == 0 || cfg.max_classes == 0 {
        return Err(Error::Precondition("quotient bounds must be positive".into()));
    }
    let mut c = Closure {
        p,
        cfg,
        parent: vec![],
        depth: vec![],
        cod: vec![],
        trans: vec![],
        live: 0,
    };
    let mut roots = Vec::with_capacity(p.vertices.len());
    for v in 0..p.vertices.len() {
        roots.push(c.new_state(v, 0)?);
    }
    let mut i = 0;
    while i < c.parent.len() {
        if c.find(i) == i {
            c.impose_relations(i, true)?;
            if c.find(i) == i {
                let cod = c.cod[i];
                for e in (0..p.edges.len()).filter(|&e| p.edges[e].source == cod) {
                    c.step(i, e, true)?;
                }
            }
        }
        i += 1;
    }
    // Every live state is now complete; re-impose relations until stable.
    loop {
        let mut changed = false;
        for s in 0..c.parent.len() {
            if c.find(s) == s {
                changed |= c.impose_relations(s, false)?;
            }
        }
        if !changed {
            break;
        }
    }
    finish(p, c, roots)
}

fn finish(p: &CatPresentation, mut c: Closure<'_>, roots: Vec<usize>) -> Result<Quotient> {
    let n_states = c.parent.len();
    // Canonical representative: shortest path, ties broken by the written word
    // compared edge by edge in declaration order.
    let mut rep: Vec<Option<Path>> = vec![None; n_states];
    let mut frontier = Vec::new();
    for (v, &r) in roots.iter().enumerate() {
        let r = c.find(r);
        rep[r] = Some(Path {
            source: v,
            target: v,
            edges: vec![],
        });
        frontier.push(r);
    }
    let written = |path: &Path| -> Vec<usize> { path.edges.iter().rev().copied().collect() };
    while !frontier.is_empty() {
        let mut next: Vec<usize> = Vec::new();
        let mut best: std::collections::BTreeMap<usize, Path> = Default::default();
        for &s in &frontier {
            let base = rep[s].clone().unwrap();
            for e in (0..p.edges.len()).filter(|&e| p.edges[e].source == base.target) {
                let t = c.step(s, e, false)?.expect("complete automaton");
                if rep[t].is_some() {
                    continue;
                }
                let mut cand = base.clone();
                cand.edges.push(e);
                cand.target = p.edges[e].target;
                match best.get(&t) {
                    Some(cur) if written(cur) <= written(&cand) => {}
                    _ => {
                        best.insert(t, cand);
                    }
                }
            }
        }
        for (t, path) in best {
            rep[t] = Some(path);
            next.push(t);
        }
        frontier = next;
    }

    let live: Vec<usize> = (0..n_states).filter(|&s| c.find(s) == s).collect();
    debug_assert!(live.iter().all(|&s| rep[s].is_some()));
    let mut order: Vec<usize> = live.clone();
    order.sort_by_key(|&s| {
        let path = rep[s].as_ref().unwrap();
        (path.edges.len(), written(path), path.source)
    });
    let mut class_of_state = vec![usize::MAX; n_states];
    for (m, &s) in order.iter().enumerate() {
        class_of_state[s] = m;
    }
    for s in 0..n_states {
        let r = c.find(s);
        class_of_state[s] = class_of_state[r];
    }
    let representatives: Vec<Path> = order.iter().map(|&s| rep[s].clone().unwrap()).collect();
    let n = representatives.len();
    let mut compose = vec![None; n * n];
    for (fi, &fs) in order.iter().enumerate() {
        for (gi, g) in representatives.iter().enumerate() {
            if g.source != representatives[fi].target {
                continue;
            }
            let h = c.trace(fs, g, false)?.expect("complete automaton");
            compose[gi * n + fi] = Some(class_of_state[h]);
        }
    }
    let tables = CatTables {
        ob_names: p.vertices.clone(),
        mor_names: representatives.iter().map(|path| p.word_text(path)).collect(),
        dom: representatives.iter().map(|path| path.source).collect(),
        cod: representatives.iter().map(|path| path.target).collect(),
        identity: roots.iter().map(|&r| class_of_state[r]).collect(),
        compose,
    };
    let category = FinCat::new(tables)?;
    let resolver = WordResolver {
        presentation: p.clone(),
        roots: roots.clone(),
        trans: (0..n_states)
            .map(|s| {
                let r = c.find(s);
                (0..p.edges.len()).map(|e| c.trans[r][e].map(|t| c.find(t))).collect()
            })
            .collect(),
        class_of_state,
    };
    Ok(Quotient {
        category,
        resolver,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn build(text: &str) -> Result<Quotient> {
        build_finite_quotient(&parse_presentation(text).unwrap(), QuotientBuildConfig::default())
    }

    #[test]
    fn first_counterexample_has_seven_morphisms() {
        let q = build(
            "category E { objects: j, t, e; arrows: eta : j -> t, f : t -> e, fp : t -> e; relations: f.eta = fp.eta; }",
        )
        .unwrap();
        assert_eq!(q.category.morphisms(), 7);
        let names: Vec<&str> = q.category.mor_names().iter().map(String::as_str).collect();
        assert_eq!(names, ["id_j", "id_t", "id_e", "eta", "f", "fp", "f.eta"]);
        assert_eq!(q.resolver.resolve_text("fp.eta").unwrap(), 6);
    }

    #[test]
    fn second_counterexample_has_six_morphisms() {
        let q = build("category E { objects: j, t, e; arrows: eta : j -> t, f : t -> e; }").unwrap();
        assert_eq!(q.category.morphisms(), 6);
    }

    #[test]
    fn free_loop_is_exhausted() {
        let err = build("category L { objects: x; arrows: a : x -> x; }").unwrap_err();
        assert!(matches!(err, Error::Exhausted(Exhaustion::MaxWordLength(16))), "{err:?}");
        let p = parse_presentation("category L { objects: x; arrows: a : x -> x; }").unwrap();
        let err = build_finite_quotient(
            &p,
            QuotientBuildConfig {
                max_word_length: 100,
                max_classes: 10,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Exhausted(Exhaustion::MaxClasses(10))));
    }

    #[test]
    fn idempotent_loop_is_finite() {
        let q = build("category M { objects: x; arrows: s : x -> x; relations: s.s = s; }").unwrap();
        assert_eq!(q.category.morphisms(), 2);
        let q = build("category Z3 { objects: x; arrows: r : x -> x; relations: r.r.r = id_x; }").unwrap();
        assert_eq!(q.category.morphisms(), 3);
        assert!(q.category.is_iso(q.resolver.resolve_text("r").unwrap()));
    }

    #[test]
    fn split_idempotent() {
        let q = build("category S { objects: j, t; arrows: eta : j -> t, p : t -> j; relations: p.eta = id_j; }")
            .unwrap();
        assert_eq!(q.category.morphisms(), 5);
        let s = q.resolver.resolve_text("eta.p").unwrap();
        assert_eq!(q.category.compose(s, s), s);
    }
}
