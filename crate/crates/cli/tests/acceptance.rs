//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;

use relidem_cli::resolutions_report;
use relidem_core::adjunction::{algebra_resolution, idem_algebra_resolution, kleisli_resolution, RelAdjunction};
use relidem_core::algebra::{build_algebra_category, enumerate_algebras, is_j_ary, RelAlgebra, DEFAULT_ALGEBRA_CAP};
use relidem_core::enumerate::{enumerate_categories, enumerate_monads, enumerate_relmonads, CategoryBounds};
use relidem_core::fincat::FunctorSearch;
use relidem_core::relmonad::{
    exhibits_left_extension, postcompose, precompose, raw_monad_conditions, MonadData, RelMonad,
};
use relidem_core::workspace::{gallery_build, GALLERY};
use relidem_core::{FinCat, FinFunctor, Mor, Ob};

const GALLERY_BUDGET: Duration = Duration::from_secs(1);
const CHARACTERIZATION_BUDGET: Duration = Duration::from_secs(5 * 60);
const SEARCH_BUDGET: Duration = Duration::from_secs(10 * 60);
const POPULATION: CategoryBounds = CategoryBounds {
    max_objects: 2,
    max_morphisms: 5,
};
const SEARCH_OBJECTS: &str = "3";
const SEARCH_MORPHISMS: &str = "7";
const ENUMERATION_LIMIT: usize = 1 << 20;
const ENDOFUNCTOR_LIMIT: usize = 1 << 16;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn relidem(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_relidem"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "relidem {} exited {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn gallery_monad(name: &str) -> Arc<RelMonad> {
    gallery_build(name).unwrap().monad("T").unwrap().monad.clone()
}

fn flag<'a>(r: &'a Value, key: &str) -> &'a Value {
    &r["flags"][key]
}

// Brute-force oracles, written against the definitions only.

/// `f ↦ f^†` is a bijection `E(ja, tb) → E(ta, tb)` for all `a, b`.
fn oracle_idempotent(t: &RelMonad) -> bool {
    let (ac, e) = (t.source(), t.cat());
    (0..ac.objects()).all(|a| {
        (0..ac.objects()).all(|b| {
            let mut images: Vec<Mor> = t.keys(a, b).iter().map(|&f| t.ext(a, b, f)).collect();
            images.sort_unstable();
            images.dedup();
            images.len() == t.keys(a, b).len() && images.len() == e.hom(t.carrier(a), t.carrier(b)).len()
        })
    })
}

/// `f ↦ f^⋊` is a bijection `E(ja, e) → E(ta, e)` for all `a`.
fn oracle_algebra_idempotent(alg: &RelAlgebra) -> bool {
    let t = alg.monad();
    let (ac, e) = (t.source(), t.cat());
    (0..ac.objects()).all(|a| {
        let mut images: Vec<Mor> = alg.keys(a).iter().map(|&f| alg.ext(a, f)).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == alg.keys(a).len() && images.len() == e.hom(t.carrier(a), alg.carrier()).len()
    })
}

/// Number of algebra structures, by trying every table of the right type.
fn oracle_algebra_count(t: &RelMonad) -> usize {
    let (ac, e) = (t.source(), t.cat());
    let na = ac.objects();
    let mut total = 0;
    for x in 0..e.objects() {
        let keys: Vec<(Ob, Mor)> = (0..na)
            .flat_map(|a| e.hom(t.root().ob(a), x).iter().map(move |&f| (a, f)))
            .collect();
        let cands: Vec<&[Mor]> = keys.iter().map(|&(a, _)| e.hom(t.carrier(a), x)).collect();
        if cands.iter().any(|c| c.is_empty()) && !keys.is_empty() {
            continue;
        }
        let lookup = |val: &[Mor], a: Ob, f: Mor| val[keys.iter().position(|&k| k == (a, f)).unwrap()];
        let lawful = |val: &[Mor]| {
            keys.iter().enumerate().all(|(i, &(a, f))| e.compose(val[i], t.unit(a)) == f)
                && keys.iter().enumerate().all(|(i, &(b, _))| {
                    (0..na).all(|a| {
                        t.keys(a, b).iter().all(|&f| {
                            lookup(val, a, e.compose(val[i], f)) == e.compose(val[i], t.ext(a, b, f))
                        })
                    })
                })
        };
        let mut idx = vec![0usize; keys.len()];
        loop {
            let val: Vec<Mor> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            if lawful(&val) {
                total += 1;
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < cands[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    total
}

fn isolated_inclusion(e: &Arc<FinCat>) -> FinFunctor {
    let big = Arc::new(e.with_isolated_object("z"));
    FinFunctor::new(e.clone(), big, (0..e.objects()).collect(), (0..e.morphisms()).collect()).unwrap()
}

fn all_functors(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    FunctorSearch::new(c.clone(), d.clone()).for_each(|f| {
        out.push(f);
        ControlFlow::Continue(())
    });
    out
}

struct Population {
    categories: Vec<Arc<FinCat>>,
    relmonads: Vec<Arc<RelMonad>>,
    monads: Vec<MonadData>,
}

fn population() -> Population {
    let categories: Vec<Arc<FinCat>> = enumerate_categories(POPULATION).into_iter().map(Arc::new).collect();
    let one = Arc::new(FinCat::terminal());
    let mut relmonads = Vec::new();
    let mut monads = Vec::new();
    for e in &categories {
        for x in 0..e.objects() {
            let en = enumerate_relmonads(&FinFunctor::point(one.clone(), e.clone(), x), ENUMERATION_LIMIT);
            assert!(!en.truncated, "relative monad enumeration truncated");
            relmonads.extend(en.items.into_iter().map(Arc::new));
        }
        let en = enumerate_monads(e, ENUMERATION_LIMIT);
        assert!(!en.truncated, "monad enumeration truncated");
        monads.extend(en.items);
    }
    relmonads.extend(GALLERY.iter().map(|g| gallery_monad(g)));
    Population {
        categories,
        relmonads,
        monads,
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = relidem(&["gallery", "paper-idem-not-alg", "--json"])?;
    let elapsed = start.elapsed();
    ensure(flag(&r, "morphisms") == 7, || format!("morphisms = {}", flag(&r, "morphisms")))?;
    ensure(flag(&r, "idempotent") == true, || "not idempotent".into())?;
    let conds = flag(&r, "conditions").as_object().ok_or("no conditions")?;
    ensure(conds.len() == 8 && conds.values().all(|v| v == true), || format!("conditions {conds:?}"))?;
    ensure(flag(&r, "algebraically_idempotent") == false, || "algebraically idempotent".into())?;
    ensure(flag(&r, "algebras_on_e") == 2, || format!("algebras on e = {}", flag(&r, "algebras_on_e")))?;
    ensure(flag(&r, "forgetful_fully_faithful") == false, || "u_T fully faithful".into())?;

    let t = gallery_monad("paper-idem-not-alg");
    let e = t.cat().find_object("e").unwrap();
    let on_e = enumerate_algebras(&t, Some(e));
    ensure(on_e.len() == 2, || format!("{} algebras on e", on_e.len()))?;
    ensure(on_e.iter().all(|a| !a.is_idempotent() && !oracle_algebra_idempotent(a)), || {
        "an algebra on e is idempotent".into()
    })?;
    let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
    ensure(!alg.forgetful.is_full(), || "u_T full".into())?;
    ensure(elapsed < GALLERY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("7 morphisms, 8/8 conditions, 2 non-idempotent algebras on e, u_T not full, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = relidem(&["gallery", "paper-alg-not-free", "--json"])?;
    let elapsed = start.elapsed();
    ensure(flag(&r, "idempotent") == true, || "not idempotent".into())?;
    ensure(flag(&r, "algebraically_idempotent") == true, || "not algebraically idempotent".into())?;
    ensure(flag(&r, "kleisli_objects") == 1 && flag(&r, "kleisli_morphisms") == 1, || "Kleisli size".into())?;
    ensure(flag(&r, "kleisli_equiv_algebras") == false, || "Kl(T) ≃ Alg(T)".into())?;

    let t = gallery_monad("paper-alg-not-free");
    let alg = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
    ensure(alg.category.objects() == 2, || format!("Alg(T) has {} objects", alg.category.objects()))?;
    ensure(!alg.category.isomorphic_objects(0, 1), || "the two algebras are isomorphic".into())?;
    let kl = kleisli_resolution(&t, Some(&alg)).map_err(|e| e.to_string())?;
    let comparison = kl.to_algebras.as_ref().unwrap();
    ensure(!comparison.is_essentially_surjective(), || "comparison essentially surjective".into())?;
    ensure(elapsed < GALLERY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("Kl(T) 1 object 1 morphism, Alg(T) 2 non-isomorphic objects, comparison not essentially surjective, {elapsed:.2?}"))
}

fn criterion_3(pop: &Population, elapsed_population: Duration) -> Outcome {
    let start = Instant::now();
    let mut disagreements = Vec::new();
    let mut algebras = 0usize;
    for t in &pop.relmonads {
        let report = t.raw_idempotence_conditions();
        if !report.agree() || report.idempotent() != oracle_idempotent(t) {
            disagreements.push(format!("relative monad: {:?}", report.flags()));
        }
        let algs = enumerate_algebras(t, None);
        if algs.len() != oracle_algebra_count(t) {
            disagreements.push(format!("algebra count {} vs oracle {}", algs.len(), oracle_algebra_count(t)));
        }
        for a in &algs {
            algebras += 1;
            let r = a.raw_idempotence_conditions();
            if !r.agree() || r.idempotent() != oracle_algebra_idempotent(a) {
                disagreements.push(format!("algebra: {:?}", r.flags()));
            }
        }
    }
    let elapsed = start.elapsed() + elapsed_population;
    ensure(disagreements.is_empty(), || {
        format!("{} disagreements, first: {}", disagreements.len(), disagreements[0])
    })?;
    ensure(elapsed < CHARACTERIZATION_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} categories, {} relative monads, {} algebras, 0 disagreements, {elapsed:.2?}",
        pop.categories.len(),
        pop.relmonads.len(),
        algebras
    ))
}

fn criterion_4(pop: &Population) -> Outcome {
    let mut disagreements = 0;
    let mut idempotent = 0;
    for m in &pop.monads {
        let conds = raw_monad_conditions(m);
        let rel = m.to_relative().map_err(|e| e.to_string())?;
        let r = rel.raw_idempotence_conditions();
        let first = conds[0].holds;
        if conds.iter().any(|c| c.holds != first) || r.idempotent() != first || !r.agree() {
            disagreements += 1;
        }
        if MonadData::from_relative(&rel).map_err(|e| e.to_string())? != *m {
            disagreements += 1;
        }
        idempotent += usize::from(first);
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("{} monads ({idempotent} idempotent), 0 disagreements", pop.monads.len()))
}

fn criterion_5(pop: &Population) -> Outcome {
    let mut violations: Vec<String> = Vec::new();
    let mut adjunctions = 0usize;
    let mut v = |ok: bool, what: &str| {
        if !ok {
            violations.push(what.to_string());
        }
    };
    let mut relmonads: Vec<Arc<RelMonad>> = pop.relmonads.clone();
    for m in &pop.monads {
        relmonads.push(Arc::new(m.to_relative().map_err(|e| e.to_string())?));
    }
    for t in &relmonads {
        let idem = t.is_idempotent();
        let free = (0..t.source().objects()).all(|b| RelAlgebra::free(t.clone(), b).is_idempotent());
        v(idem == free, "idempotent ⇔ free algebras idempotent");
        let alg = build_algebra_category(t, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
        let kl = kleisli_resolution(t, Some(&alg)).map_err(|e| e.to_string())?;
        v(idem == kl.to_image.is_fully_faithful(), "idempotent ⇔ Kl → Im fully faithful");
        let kl_reflective = kl.adjunction.is_j_reflective().map_err(|e| e.to_string())?;
        v(idem == kl_reflective, "idempotent ⇔ Kleisli j-reflective");
        let alg_idem = alg.algebras.iter().all(RelAlgebra::is_idempotent);
        v(alg_idem == alg.forgetful.is_fully_faithful(), "algebraically idempotent ⇔ u_T fully faithful");
        let mut adjs: Vec<RelAdjunction> = vec![kl.adjunction.clone(), algebra_resolution(&alg).map_err(|e| e.to_string())?];
        if let Some(a) = idem_algebra_resolution(&alg).map_err(|e| e.to_string())? {
            adjs.push(a);
        }
        for adj in &adjs {
            adjunctions += 1;
            if adj.is_j_reflective().map_err(|e| e.to_string())? {
                let induced = adj.induced_relmonad().map_err(|e| e.to_string())?;
                v(induced.is_idempotent(), "j-reflective adjunction ⇒ induced monad idempotent");
            }
        }
        if t.root().is_identity() {
            v(!idem || alg_idem, "idempotent monad ⇒ algebraically idempotent");
        }
        let post = postcompose(&isolated_inclusion(t.cat()), t).map_err(|e| e.to_string())?;
        v(post.is_idempotent() == idem, "postcompose preserves and reflects idempotence");
        let same = postcompose(&FinFunctor::identity(t.cat().clone()), t).map_err(|e| e.to_string())?;
        v(same.is_idempotent() == idem, "postcompose along the identity");
    }
    let mut precomposed = 0usize;
    let one = Arc::new(FinCat::terminal());
    for m in &pop.monads {
        let t = m.to_relative().map_err(|e| e.to_string())?;
        let e = t.cat().clone();
        let mut roots: Vec<FinFunctor> = (0..e.objects()).map(|x| FinFunctor::point(one.clone(), e.clone(), x)).collect();
        roots.extend(all_functors(&e, &e));
        for j in &roots {
            precomposed += 1;
            let tj = precompose(&t, j).map_err(|e| e.to_string())?;
            v(!t.is_idempotent() || tj.is_idempotent(), "precompose preserves idempotence");
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    Ok(format!(
        "{} relative monads, {adjunctions} resolutions, {precomposed} precompositions, 0 violations",
        relmonads.len()
    ))
}

fn criterion_6(pop: &Population) -> Outcome {
    let mut checked = 0;
    let mut fixed = 0;
    for m in &pop.monads {
        let t = Arc::new(m.to_relative().map_err(|e| e.to_string())?);
        let e = t.cat();
        let Some(one) = e.terminal_object() else { continue };
        checked += 1;
        let on_one: Vec<RelAlgebra> = enumerate_algebras(&t, Some(one));
        ensure(on_one.len() == 1, || format!("{} algebras on the terminal object", on_one.len()))?;
        let alg = &on_one[0];
        ensure(alg.is_idempotent() && oracle_algebra_idempotent(alg), || "terminal algebra not idempotent".into())?;
        // the Eilenberg–Moore structure map t1 → 1
        let structure = alg.ext(one, e.id(one));
        let is_fixed = e.is_iso(structure);
        let preserves = e.terminal_object().is_some_and(|z| e.isomorphic_objects(t.carrier(one), z));
        ensure(is_fixed == preserves, || {
            format!("fixed point {is_fixed} but t preserves 1: {preserves}")
        })?;
        fixed += usize::from(is_fixed);
    }
    Ok(format!("{checked} monads on categories with a terminal object ({fixed} fixed points), 0 violations"))
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    for name in GALLERY {
        let t = gallery_monad(name);
        let r = resolutions_report("T", &t).map_err(|e| e.to_string())?;
        let count = |k: &str| r.flags.get(k).and_then(Value::as_u64);
        ensure(count("morphisms_kleisli_to_alg") == Some(1), || {
            format!("{name}: Kl → Alg morphisms {:?}", count("morphisms_kleisli_to_alg"))
        })?;
        let into_idem: Vec<(&String, &Value)> =
            r.flags.iter().filter(|(k, _)| k.ends_with("_to_alg_idem")).collect();
        if t.is_idempotent() {
            ensure(r.flags["alg_idem_resolution"] == true, || format!("{name}: no Alg_idem resolution"))?;
            for (k, src) in [("kleisli", "kleisli_j_reflective"), ("alg", "alg_j_reflective"), ("alg_idem", "alg_idem_j_reflective")] {
                if r.flags[src] == true {
                    let key = format!("morphisms_{k}_to_alg_idem");
                    ensure(count(&key) == Some(1), || format!("{name}: {key} = {:?}", count(&key)))?;
                }
            }
            ensure(!into_idem.is_empty(), || format!("{name}: no reflective resolutions"))?;
        }
        lines.push(format!("{name} ({} into Alg_idem)", into_idem.len()));
    }
    Ok(format!("unique resolution morphisms for {}", lines.join(", ")))
}

fn criterion_8() -> Outcome {
    let chain = Arc::new(FinCat::chain(2));
    let sources = [
        Arc::new(FinCat::terminal()),
        Arc::new(FinCat::discrete(&["p", "q"])),
        Arc::new(FinCat::empty()),
        chain.clone(),
    ];
    let monads = enumerate_monads(&chain, ENUMERATION_LIMIT);
    let (mut cases, mut extensions, mut jary) = (0, 0, 0);
    for m in &monads.items {
        let t = Arc::new(m.to_relative().map_err(|e| e.to_string())?);
        for a in &sources {
            for j in all_functors(a, &chain) {
                cases += 1;
                let le = exhibits_left_extension(m, &j, ENDOFUNCTOR_LIMIT).map_err(|e| e.to_string())?;
                let holds = le.holds().ok_or("left extension undecided")?;
                let tj = precompose(&t, &j).map_err(|e| e.to_string())?;
                if holds {
                    extensions += 1;
                    ensure(t.is_idempotent() == tj.is_idempotent(), || "idempotence does not transfer".into())?;
                }
                let ja = is_j_ary(&t, &j, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
                if ja.holds {
                    jary += 1;
                    let tj = Arc::new(tj);
                    let lhs = build_algebra_category(&t, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
                    let rhs = build_algebra_category(&tj, DEFAULT_ALGEBRA_CAP).map_err(|e| e.to_string())?;
                    let l = lhs.algebras.iter().all(RelAlgebra::is_idempotent);
                    let r = rhs.algebras.iter().all(RelAlgebra::is_idempotent);
                    ensure(l == r, || format!("algebraic idempotence {l} vs {r} for a j-ary monad"))?;
                }
            }
        }
    }
    Ok(format!(
        "{} monads, {cases} (monad, j) pairs, {extensions} left extensions, {jary} j-ary, 0 violations",
        monads.items.len()
    ))
}

fn scratch_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
}

fn criterion_9() -> Outcome {
    for name in GALLERY {
        let path = scratch_dir().join(format!("acceptance-{name}.dsl"));
        let p = path.to_str().unwrap();
        let g = relidem(&["gallery", name, "--emit", p, "--json"])?;
        let c = relidem(&["classify", p, "--monad", "T", "--json"])?;
        let gf = serde_json::to_string(&g["flags"]).unwrap();
        let cf = serde_json::to_string(&c["flags"]).unwrap();
        ensure(gf == cf, || format!("{name}: flags differ\n{gf}\n{cf}"))?;
        let strip = |mut v: Value| {
            v.as_object_mut().unwrap().remove("timing_ms");
            v
        };
        ensure(strip(g) == strip(c), || format!("{name}: reports differ beyond timing"))?;
    }
    Ok(format!("{} gallery instances round-trip with byte-identical flags", GALLERY.len()))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let found = relidem(&[
        "search",
        "--require-idempotent",
        "--forbid-algebraically-idempotent",
        "--max-objects",
        SEARCH_OBJECTS,
        "--max-morphisms",
        SEARCH_MORPHISMS,
        "--json",
    ])?;
    ensure(found["outcome"] == "found", || format!("outcome {}", found["outcome"]))?;
    let r = &found["report"];
    ensure(flag(r, "idempotent") == true && flag(r, "algebraically_idempotent") == false, || {
        "found instance does not match the predicates".into()
    })?;
    let first = start.elapsed();
    let census_args = [
        "search",
        "--require-idempotent",
        "--forbid-algebraically-idempotent",
        "--require-dense-root",
        "--max-objects",
        SEARCH_OBJECTS,
        "--max-morphisms",
        SEARCH_MORPHISMS,
        "--census",
        "--json",
    ];
    let a = relidem(&census_args)?;
    let b = relidem(&census_args)?;
    ensure(a["outcome"] == "exhausted", || format!("dense outcome {}", a["outcome"]))?;
    ensure(a["census"] == b["census"], || "census differs between runs".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < SEARCH_BUDGET, || format!("took {elapsed:?}"))?;
    let c = &a["census"];
    Ok(format!(
        "found at position {} ({} objects, {} morphisms) in {first:.1?}; dense census {} instances, {} matches, identical on re-run; {elapsed:.1?}",
        found["position"],
        flag(r, "objects"),
        flag(r, "morphisms"),
        c["instances"],
        c["matches"]
    ))
}

fn main() {
    // `cargo test` passes harness flags; a name filter that excludes us is honoured.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let start = Instant::now();
    let pop = population();
    let elapsed_population = start.elapsed();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "gallery: idempotent, not algebraically idempotent", Box::new(criterion_1)),
        (2, "gallery: algebraically idempotent, Kl not Alg", Box::new(criterion_2)),
        (3, "characterization agreement", Box::new(|| criterion_3(&pop, elapsed_population))),
        (4, "monad lemma", Box::new(|| criterion_4(&pop))),
        (5, "theorem suite", Box::new(|| criterion_5(&pop))),
        (6, "terminal-object claim", Box::new(|| criterion_6(&pop))),
        (7, "resolution universality", Box::new(criterion_7)),
        (8, "j-ary and left extension", Box::new(criterion_8)),
        (9, "emit round trip", Box::new(criterion_9)),
        (10, "search sanity", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, name, run) in &criteria {
        match run() {
            Ok(detail) => println!("criterion {n:>2} [{name}]: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} [{name}]: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
