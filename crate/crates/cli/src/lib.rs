//! Command-line front end: DSL files in, reports out.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use relidem_core::adjunction::{
    algebra_resolution, enumerate_resolution_morphisms, idem_algebra_resolution, kleisli_resolution, RelAdjunction,
    Resolution,
};
use relidem_core::algebra::{build_algebra_category, DEFAULT_ALGEBRA_CAP};
use relidem_core::enumerate::{
    classify, enumerate_relmonads, fingerprint, search, SearchFlag, SearchOutcome, SearchSpec, DEFAULT_SEARCH_CAP,
};
use relidem_core::fincat::validate_category;
use relidem_core::relmonad::RelMonad;
use relidem_core::workspace::gallery_build;
use relidem_core::{Error, Workspace};

pub mod report;

pub use report::{classification_flags, classification_witnesses, LawLine, Report};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for a law violation, failed check or library error.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;

const RESOLUTION_MORPHISM_LIMIT: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "relidem", version, about = "Idempotence checks for relative monads on finite categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and law-check every declaration in the given files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classify one relative monad.
    Classify {
        file: PathBuf,
        #[arg(long)]
        monad: String,
        #[arg(long)]
        json: bool,
    },
    /// List the algebras of a relative monad.
    Algebras {
        file: PathBuf,
        #[arg(long)]
        monad: String,
        #[arg(long)]
        json: bool,
    },
    /// Build the Kleisli, algebra and idempotent-algebra resolutions.
    Resolutions {
        file: PathBuf,
        #[arg(long)]
        monad: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate relative monads over a root functor.
    Enumerate {
        #[arg(long)]
        root: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search small instances for a flag combination.
    Search(SearchArgs),
    /// Build and classify a named built-in instance.
    Gallery {
        name: String,
        /// Write the instance as DSL text to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub require_idempotent: bool,
    #[arg(long)]
    pub forbid_idempotent: bool,
    #[arg(long)]
    pub require_algebraically_idempotent: bool,
    #[arg(long)]
    pub forbid_algebraically_idempotent: bool,
    #[arg(long)]
    pub require_dense_root: bool,
    #[arg(long)]
    pub forbid_dense_root: bool,
    #[arg(long, default_value_t = 3)]
    pub max_objects: usize,
    #[arg(long, default_value_t = 7)]
    pub max_morphisms: usize,
    /// Count every instance instead of stopping at the first match.
    #[arg(long)]
    pub census: bool,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub json: bool,
}

impl SearchArgs {
    pub fn spec(&self) -> SearchSpec {
        let mut spec = SearchSpec::new(self.max_objects, self.max_morphisms);
        spec.cap = self.cap;
        let pairs = [
            (SearchFlag::Idempotent, self.require_idempotent, self.forbid_idempotent),
            (
                SearchFlag::AlgebraicallyIdempotent,
                self.require_algebraically_idempotent,
                self.forbid_algebraically_idempotent,
            ),
            (SearchFlag::DenseRoot, self.require_dense_root, self.forbid_dense_root),
        ];
        for (flag, require, forbid) in pairs {
            if require {
                spec = spec.require(flag);
            }
            if forbid {
                spec = spec.forbid(flag);
            }
        }
        if self.census {
            spec = spec.census();
        }
        spec
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code_of(&e)
        }
    }
}

fn exit_code_of(e: &anyhow::Error) -> i32 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Parse { .. } | Error::UnknownName { .. }) => EXIT_USAGE,
        Some(_) => EXIT_VIOLATION,
        None if e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some()) => EXIT_USAGE,
        None => EXIT_VIOLATION,
    }
}

pub fn load(files: &[PathBuf]) -> Result<Workspace> {
    let mut ws = Workspace::new();
    for f in files {
        let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        ws.add_text(&text).with_context(|| format!("in {}", f.display()))?;
    }
    Ok(ws)
}

fn load_one(file: &Path) -> Result<Workspace> {
    load(&[file.to_path_buf()])
}

fn monad_of(ws: &Workspace, name: &str) -> Result<Arc<RelMonad>> {
    Ok(ws.require_monad(name)?.monad.clone())
}

fn emit(out: &mut dyn Write, json: bool, reports: &[Report]) -> Result<()> {
    if json {
        let v = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            Value::Array(reports.iter().map(Report::to_json).collect())
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        for r in reports {
            write!(out, "{}", r.to_text())?;
        }
    }
    Ok(())
}

/// Classification report for a relative monad, without timing.
pub fn monad_report(name: &str, t: &Arc<RelMonad>) -> Result<Report> {
    let c = classify(t)?;
    let mut r = Report::new(name, "relmonad").with_laws(&t.check_laws());
    r.flag("objects", t.cat().objects());
    r.flag("morphisms", t.cat().morphisms());
    r.flags.extend(classification_flags(&c));
    r.witnesses = classification_witnesses(&c);
    Ok(r)
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    match cmd {
        Command::Check { files, json } => {
            let ws = load(files)?;
            let reports = check_reports(&ws)?;
            emit(out, *json, &reports)?;
            let ok = reports.iter().all(Report::ok);
            Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Classify { file, monad, json } => {
            let ws = load_one(file)?;
            let mut r = monad_report(monad, &monad_of(&ws, monad)?)?;
            r.timing_ms = Some(elapsed_ms(start));
            emit(out, *json, &[r])?;
            Ok(EXIT_OK)
        }
        Command::Algebras { file, monad, json } => {
            let ws = load_one(file)?;
            let mut r = algebras_report(monad, &monad_of(&ws, monad)?)?;
            r.timing_ms = Some(elapsed_ms(start));
            emit(out, *json, &[r])?;
            Ok(EXIT_OK)
        }
        Command::Resolutions { file, monad, json } => {
            let ws = load_one(file)?;
            let mut r = resolutions_report(monad, &monad_of(&ws, monad)?)?;
            r.timing_ms = Some(elapsed_ms(start));
            emit(out, *json, &[r])?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            root,
            functor,
            limit,
            json,
        } => {
            anyhow::ensure!(*limit > 0, "--limit must be positive");
            let ws = load_one(root)?;
            let j = &ws
                .functor(functor)
                .ok_or_else(|| Error::UnknownName {
                    kind: "functor",
                    name: functor.clone(),
                })?
                .functor;
            let en = enumerate_relmonads(j, *limit);
            let mut reports = Vec::new();
            for (i, t) in en.items.into_iter().enumerate() {
                let t = Arc::new(t);
                let mut r = monad_report(&format!("T{i}"), &t)?;
                r.flags.shift_insert(0, "tables".into(), json!(fingerprint(&t)));
                reports.push(r);
            }
            if *json {
                let v = json!({
                    "root": functor,
                    "count": reports.len(),
                    "truncated": en.truncated,
                    "instances": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(
                    out,
                    "{} relative monads over {functor}{}",
                    reports.len(),
                    if en.truncated { " (truncated)" } else { "" }
                )?;
                for r in &reports {
                    writeln!(
                        out,
                        "{}: idempotent={} algebraically_idempotent={} | {}",
                        r.entity,
                        r.flags["idempotent"],
                        r.flags["algebraically_idempotent"],
                        r.flags["tables"].as_str().unwrap_or_default()
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Search(args) => run_search(args, out, start),
        Command::Gallery { name, emit: path, json } => {
            let ws = gallery_build(name)?;
            if let Some(p) = path {
                std::fs::write(p, ws.emit()).with_context(|| format!("writing {}", p.display()))?;
            }
            let mut r = monad_report("T", &monad_of(&ws, "T")?)?;
            r.timing_ms = Some(elapsed_ms(start));
            emit(out, *json, &[r])?;
            Ok(EXIT_OK)
        }
    }
}

fn run_search(args: &SearchArgs, out: &mut dyn Write, start: Instant) -> Result<i32> {
    let spec = args.spec();
    let outcome = search(&spec)?;
    let ms = elapsed_ms(start);
    match outcome {
        SearchOutcome::Found(found) => {
            let mut r = monad_report("T", &found.monad)?;
            r.timing_ms = Some(ms);
            if args.json {
                let v = json!({
                    "outcome": "found",
                    "position": found.position,
                    "source": found.source,
                    "report": r.to_json(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "found after {} isomorphism classes", found.position)?;
                write!(out, "{}", found.source)?;
                write!(out, "{}", r.to_text())?;
            }
        }
        SearchOutcome::Exhausted(census) => {
            if args.json {
                let v = json!({ "outcome": "exhausted", "census": census, "timing_ms": ms });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(
                    out,
                    "exhausted: {} categories, {} roots, {} instances ({} labelled), {} matches",
                    census.categories, census.roots, census.instances, census.labelled_instances, census.matches
                )?;
                for row in &census.rows {
                    writeln!(
                        out,
                        "  idempotent={} algebraically_idempotent={} dense_root={}: {}",
                        row.idempotent, row.algebraically_idempotent, row.dense_root, row.count
                    )?;
                }
                writeln!(out, "  timing_ms: {ms:.1}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn check_reports(ws: &Workspace) -> Result<Vec<Report>> {
    let mut reports = Vec::new();
    for c in &ws.categories {
        let mut r = Report::new(&c.name, "category").with_laws(&validate_category(c.category.tables())?);
        r.flag("objects", c.category.objects());
        r.flag("morphisms", c.category.morphisms());
        reports.push(r);
    }
    for f in &ws.functors {
        let r = Report::new(&f.name, "functor").with_laws(&f.functor.functoriality_report());
        reports.push(r);
    }
    for m in &ws.monads {
        reports.push(Report::new(&m.name, "relmonad").with_laws(&m.monad.check_laws()));
    }
    for a in &ws.algebras {
        let mut r = Report::new(&a.name, "algebra").with_laws(&a.algebra.check_laws());
        r.flag("idempotent", a.algebra.is_idempotent());
        reports.push(r);
    }
    for a in &ws.adjunctions {
        let mut r = Report::new(&a.name, "adjunction").with_laws(&a.adjunction.check_laws());
        if r.ok() {
            r.flag("j_reflective", a.adjunction.is_j_reflective()?);
        }
        reports.push(r);
    }
    Ok(reports)
}

pub fn algebras_report(name: &str, t: &Arc<RelMonad>) -> Result<Report> {
    let alg = build_algebra_category(t, DEFAULT_ALGEBRA_CAP)?;
    let kl = kleisli_resolution(t, Some(&alg))?;
    let comparison = kl.to_algebras.as_ref().expect("algebras supplied");
    let mut r = Report::new(name, "algebras").with_laws(&t.check_laws());
    let list: Vec<Value> = alg
        .algebras
        .iter()
        .map(|a| {
            let s = a.summary();
            let ext: Map<String, Value> = s
                .ext
                .iter()
                .map(|(x, f, g)| (format!("({x}, {f})"), json!(g)))
                .collect();
            json!({ "carrier": s.carrier, "idempotent": s.idempotent, "free_on": s.free_on, "ext": ext })
        })
        .collect();
    r.flag("algebras", Value::Array(list));
    r.flag("alg_objects", alg.category.objects());
    r.flag("alg_morphisms", alg.category.morphisms());
    r.flag("alg_idem_objects", alg.idem_category.objects());
    r.flag("alg_idem_morphisms", alg.idem_category.morphisms());
    r.flag("forgetful_fully_faithful", alg.forgetful.is_fully_faithful());
    r.flag("comparison_fully_faithful", comparison.is_fully_faithful());
    r.flag("comparison_essentially_surjective", comparison.is_essentially_surjective());
    Ok(r)
}

fn resolution_flags(r: &mut Report, prefix: &str, adj: &RelAdjunction) -> Result<()> {
    r.flag(&format!("{prefix}_objects"), adj.apex().objects());
    r.flag(&format!("{prefix}_morphisms"), adj.apex().morphisms());
    r.flag(&format!("{prefix}_j_reflective"), adj.is_j_reflective()?);
    Ok(())
}

pub fn resolutions_report(name: &str, t: &Arc<RelMonad>) -> Result<Report> {
    let alg = build_algebra_category(t, DEFAULT_ALGEBRA_CAP)?;
    let kl = kleisli_resolution(t, Some(&alg))?;
    let em = algebra_resolution(&alg)?;
    let idem = idem_algebra_resolution(&alg)?;
    let mut r = Report::new(name, "resolutions").with_laws(&t.check_laws());
    resolution_flags(&mut r, "kleisli", &kl.adjunction)?;
    resolution_flags(&mut r, "alg", &em)?;
    r.flag("alg_idem_resolution", idem.is_some());
    if let Some(adj) = &idem {
        resolution_flags(&mut r, "alg_idem", adj)?;
    }
    let kl_res = Resolution::new(kl.adjunction.clone(), t.clone())?;
    let em_res = Resolution::new(em, t.clone())?;
    let n = enumerate_resolution_morphisms(&kl_res, &em_res, RESOLUTION_MORPHISM_LIMIT)?.len();
    r.flag("morphisms_kleisli_to_alg", n);
    if let Some(adj) = idem {
        let idem_res = Resolution::new(adj, t.clone())?;
        for (label, src) in [("kleisli", &kl_res), ("alg", &em_res), ("alg_idem", &idem_res)] {
            if src.adjunction.is_j_reflective()? {
                let n = enumerate_resolution_morphisms(src, &idem_res, RESOLUTION_MORPHISM_LIMIT)?.len();
                r.flag(&format!("morphisms_{label}_to_alg_idem"), n);
            }
        }
    }
    Ok(r)
}
