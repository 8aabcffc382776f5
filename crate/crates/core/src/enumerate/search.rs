use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::categories::{automorphisms, enumerate_categories, CategoryBounds};
use super::classify::{classify, Classification};
use super::instances::{carrier_unit_prefixes, enumerate_relmonads};
use crate::adjunction::kleisli_resolution;
use crate::algebra::{enumerate_algebras, RelAlgebra};
use crate::error::{Error, Result};
use crate::fincat::{is_dense_flag, FinCat, FinFunctor, Mor};
use crate::relmonad::RelMonad;
use crate::workspace::instance_source;

pub const DEFAULT_SEARCH_CAP: u128 = 10_000_000;

/// Category enumeration is exhaustive, so it is refused beyond this size.
pub const MAX_SEARCH_MORPHISMS: usize = 8;

/// Categories searched concurrently before looking for the earliest match.
const FIRST_MATCH_CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchFlag {
    Idempotent,
    AlgebraicallyIdempotent,
    DenseRoot,
    KleisliJReflective,
}

impl SearchFlag {
    pub fn name(self) -> &'static str {
        match self {
            SearchFlag::Idempotent => "idempotent",
            SearchFlag::AlgebraicallyIdempotent => "algebraically_idempotent",
            SearchFlag::DenseRoot => "dense_root",
            SearchFlag::KleisliJReflective => "kleisli_j_reflective",
        }
    }

    fn of(self, c: &Classification) -> bool {
        match self {
            SearchFlag::Idempotent => c.flags.idempotent,
            SearchFlag::AlgebraicallyIdempotent => c.flags.algebraically_idempotent,
            SearchFlag::DenseRoot => c.flags.dense_root,
            SearchFlag::KleisliJReflective => c.flags.kleisli_j_reflective,
        }
    }
}

#[derive(Debug, Clone)]
pub enum RootSource {
    /// Every `1 → E` with `E` ranging over the category bounds.
    FromTerminal,
    Explicit(FinFunctor),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    FirstMatch,
    Census,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub roots: RootSource,
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// `(flag, required value)`, all of which must hold.
    pub predicates: Vec<(SearchFlag, bool)>,
    pub mode: SearchMode,
    /// Refuse when the number of carrier/unit candidates exceeds this.
    pub cap: u128,
}

impl SearchSpec {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        SearchSpec {
            roots: RootSource::FromTerminal,
            max_objects,
            max_morphisms,
            predicates: Vec::new(),
            mode: SearchMode::FirstMatch,
            cap: DEFAULT_SEARCH_CAP,
        }
    }

    pub fn require(mut self, flag: SearchFlag) -> Self {
        self.predicates.push((flag, true));
        self
    }

    pub fn forbid(mut self, flag: SearchFlag) -> Self {
        self.predicates.push((flag, false));
        self
    }

    pub fn census(mut self) -> Self {
        self.mode = SearchMode::Census;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_objects == 0 || self.max_morphisms == 0 || self.cap == 0 {
            return Err(Error::Precondition("search bounds must be positive".into()));
        }
        if self.max_morphisms > MAX_SEARCH_MORPHISMS {
            return Err(Error::Precondition(format!(
                "category enumeration is limited to {MAX_SEARCH_MORPHISMS} morphisms"
            )));
        }
        for (i, &(f, v)) in self.predicates.iter().enumerate() {
            if self.predicates[..i].iter().any(|&(g, w)| g == f && w != v) {
                return Err(Error::Precondition(format!("`{}` is both required and forbidden", f.name())));
            }
        }
        Ok(())
    }
}

/// One census cell: how many instances have this combination of flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub idempotent: bool,
    pub algebraically_idempotent: bool,
    pub dense_root: bool,
    pub count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub categories: u64,
    pub roots: u64,
    /// Relative monads enumerated, before isomorph rejection.
    pub labelled_instances: u64,
    /// One per isomorphism class of `(E, j, T)`.
    pub instances: u64,
    pub matches: u64,
    pub rows: Vec<CensusRow>,
}

#[derive(Default)]
struct Partial {
    categories: u64,
    roots: u64,
    labelled: u64,
    instances: u64,
    matches: u64,
    rows: BTreeMap<(bool, bool, bool), u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.categories += other.categories;
        self.roots += other.roots;
        self.labelled += other.labelled;
        self.instances += other.instances;
        self.matches += other.matches;
        for (k, v) in other.rows {
            *self.rows.entry(k).or_default() += v;
        }
        self
    }

    fn finish(self) -> Census {
        Census {
            categories: self.categories,
            roots: self.roots,
            labelled_instances: self.labelled,
            instances: self.instances,
            matches: self.matches,
            rows: self
                .rows
                .into_iter()
                .map(|((i, a, d), count)| CensusRow {
                    idempotent: i,
                    algebraically_idempotent: a,
                    dense_root: d,
                    count,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Found {
    pub monad: Arc<RelMonad>,
    pub classification: Classification,
    /// DSL text declaring the instance as `A`, `E`, `J` and `T`.
    pub source: String,
    /// Isomorphism classes examined before this one, in search order.
    pub position: u64,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Found>),
    Exhausted(Census),
}

/// The candidate count the cap is compared against: carrier and unit choices
/// summed over every root.
pub fn search_estimate(spec: &SearchSpec) -> Result<u128> {
    spec.validate()?;
    Ok(estimate_of(&roots_of(spec)))
}

fn estimate_of(groups: &[RootGroup]) -> u128 {
    groups
        .iter()
        .flat_map(|(_, js)| js.iter())
        .map(|j| carrier_unit_prefixes(j).len() as u128)
        .sum()
}

type RootGroup = (Arc<FinCat>, Vec<FinFunctor>);

fn roots_of(spec: &SearchSpec) -> Vec<RootGroup> {
    match &spec.roots {
        RootSource::Explicit(j) => vec![(j.target().clone(), vec![j.clone()])],
        RootSource::FromTerminal => {
            let one = Arc::new(FinCat::terminal());
            enumerate_categories(CategoryBounds {
                max_objects: spec.max_objects,
                max_morphisms: spec.max_morphisms,
            })
            .into_iter()
            .map(|e| {
                let e = Arc::new(e);
                let js = (0..e.objects()).map(|x| FinFunctor::point(one.clone(), e.clone(), x)).collect();
                (e, js)
            })
            .collect()
        }
    }
}

/// Encoding of a `1 → E` instance after applying a morphism relabelling.
fn instance_code(t: &RelMonad, sigma: &[Mor]) -> Vec<usize> {
    let e = t.cat();
    let ob = |x: usize| e.dom(sigma[e.id(x)]);
    let (j, c) = (t.root().ob(0), t.carrier(0));
    let keys = t.keys(0, 0);
    let mut ext = vec![0; keys.len()];
    for &f in keys {
        ext[e.hom_pos(sigma[f])] = sigma[t.ext(0, 0, f)];
    }
    let mut code = vec![ob(j), ob(c), sigma[t.unit(0)]];
    code.extend(ext);
    code
}

fn is_canonical_instance(t: &RelMonad, autos: &[Vec<Mor>]) -> bool {
    if t.source().objects() != 1 || autos.len() <= 1 {
        return true;
    }
    let own = instance_code(t, &autos[0]);
    autos[1..].iter().all(|s| own <= instance_code(t, s))
}

struct Evaluator<'a> {
    t: &'a Arc<RelMonad>,
    dense: &'a dyn Fn() -> bool,
    idempotent: Option<bool>,
    algebraic: Option<bool>,
}

impl Evaluator<'_> {
    fn idempotent(&mut self) -> bool {
        *self.idempotent.get_or_insert_with(|| self.t.is_idempotent())
    }

    fn algebraic(&mut self) -> bool {
        let t = self.t;
        *self
            .algebraic
            .get_or_insert_with(|| enumerate_algebras(t, None).iter().all(RelAlgebra::is_idempotent))
    }

    fn flag(&mut self, f: SearchFlag) -> Result<bool> {
        Ok(match f {
            SearchFlag::Idempotent => self.idempotent(),
            SearchFlag::AlgebraicallyIdempotent => self.algebraic(),
            SearchFlag::DenseRoot => (self.dense)(),
            SearchFlag::KleisliJReflective => kleisli_resolution(self.t, None)?.adjunction.is_j_reflective()?,
        })
    }

    fn matches(&mut self, spec: &SearchSpec) -> Result<bool> {
        for &(f, v) in &spec.predicates {
            if self.flag(f)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The implications every census row must respect.
    fn check_lattice(&mut self) -> Result<()> {
        let (i, a) = (self.idempotent(), self.algebraic());
        if a && !i {
            return Err(Error::InvariantViolation(
                "algebraically idempotent but not idempotent".into(),
            ));
        }
        let t = self.t;
        let free = (0..t.source().objects()).all(|b| RelAlgebra::free(t.clone(), b).is_idempotent());
        if free != i {
            return Err(Error::InvariantViolation(
                "idempotence disagrees with idempotence of the free algebras".into(),
            ));
        }
        Ok(())
    }
}

/// Searches roots and relative monads within the bounds. In first-match mode
/// returns the earliest instance, in search order, satisfying every
/// predicate; otherwise, or when none exists, returns the census.
pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate()?;
    let groups = roots_of(spec);
    let estimate = estimate_of(&groups);
    if estimate > spec.cap {
        return Err(Error::TooLarge {
            estimate,
            cap: spec.cap,
        });
    }
    let iso_reject = matches!(spec.roots, RootSource::FromTerminal);

    // Per category: the census part and the first match with its index
    // among that category's accepted instances.
    let per_group = |(e, js): &RootGroup, stop_at_match: bool| -> Result<(Partial, Option<(u64, Arc<RelMonad>)>)> {
        let autos = if iso_reject { automorphisms(e) } else { vec![(0..e.morphisms()).collect()] };
        let mut part = Partial {
            categories: 1,
            ..Partial::default()
        };
        for j in js {
            part.roots += 1;
            let dense_cell = std::cell::OnceCell::new();
            let dense = || *dense_cell.get_or_init(|| is_dense_flag(j));
            for t in enumerate_relmonads(j, usize::MAX - 1).items {
                part.labelled += 1;
                if iso_reject && !is_canonical_instance(&t, &autos) {
                    continue;
                }
                part.instances += 1;
                let t = Arc::new(t);
                let mut ev = Evaluator {
                    t: &t,
                    dense: &dense,
                    idempotent: None,
                    algebraic: None,
                };
                let hit = ev.matches(spec)?;
                if hit {
                    part.matches += 1;
                    if stop_at_match {
                        return Ok((part, Some((0, t))));
                    }
                }
                if spec.mode == SearchMode::Census {
                    ev.check_lattice()?;
                    let key = (ev.idempotent(), ev.algebraic(), dense());
                    *part.rows.entry(key).or_default() += 1;
                }
            }
        }
        Ok((part, None))
    };

    match spec.mode {
        SearchMode::FirstMatch => {
            let mut before = 0u64;
            let mut census = Partial::default();
            for chunk in groups.chunks(FIRST_MATCH_CHUNK) {
                let results: Vec<Result<(Partial, Option<(u64, Arc<RelMonad>)>)>> =
                    chunk.par_iter().map(|g| per_group(g, true)).collect();
                for r in results {
                    let (part, hit) = r?;
                    if let Some((_, t)) = hit {
                        let position = before + part.instances - 1;
                        return found(spec, t, position).map(|f| SearchOutcome::Found(Box::new(f)));
                    }
                    before += part.instances;
                    census = census.merge(part);
                }
            }
            Ok(SearchOutcome::Exhausted(census.finish()))
        }
        SearchMode::Census => {
            let parts: Vec<Result<(Partial, _)>> = groups.par_iter().map(|g| per_group(g, false)).collect();
            let mut census = Partial::default();
            for r in parts {
                census = census.merge(r?.0);
            }
            Ok(SearchOutcome::Exhausted(census.finish()))
        }
    }
}

fn found(spec: &SearchSpec, t: Arc<RelMonad>, position: u64) -> Result<Found> {
    let classification = classify(&t)?;
    for &(f, v) in &spec.predicates {
        if f.of(&classification) != v {
            return Err(Error::InvariantViolation(format!(
                "search matched on `{}` but classification disagrees",
                f.name()
            )));
        }
    }
    Ok(Found {
        source: instance_source(&t),
        monad: t,
        classification,
        position,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_predicates_are_refused() {
        let spec = SearchSpec::new(2, 3)
            .require(SearchFlag::Idempotent)
            .forbid(SearchFlag::Idempotent);
        assert!(matches!(search(&spec), Err(Error::Precondition(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let mut spec = SearchSpec::new(2, 3);
        spec.cap = 1;
        assert!(matches!(search(&spec), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn census_is_deterministic() {
        let spec = SearchSpec::new(2, 4).require(SearchFlag::DenseRoot).census();
        let a = match search(&spec).unwrap() {
            SearchOutcome::Exhausted(c) => c,
            SearchOutcome::Found(_) => unreachable!(),
        };
        let b = match search(&spec).unwrap() {
            SearchOutcome::Exhausted(c) => c,
            SearchOutcome::Found(_) => unreachable!(),
        };
        assert_eq!(a, b);
        assert_eq!(a.rows.iter().map(|r| r.count).sum::<u64>(), a.instances);
    }

    #[test]
    fn trivial_predicate_finds_the_first_instance() {
        let spec = SearchSpec::new(1, 1);
        match search(&spec).unwrap() {
            SearchOutcome::Found(f) => assert_eq!(f.position, 0),
            SearchOutcome::Exhausted(_) => panic!("terminal category has a relative monad"),
        }
    }
}
