use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn relidem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relidem")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

const SPLIT: &str = "\
category One { objects: star; }
category E {
  objects: j, t;
  arrows: eta : j -> t, p : t -> j;
  relations: p.eta = id_j;
}
functor J : One -> E { objects: star |-> j; }
";

#[test]
fn idem_not_alg_gallery_matches() {
    let o = relidem(&["gallery", "paper-idem-not-alg", "--json"]);
    assert!(o.status.success());
    let r = json(&o);
    let f = &r["flags"];
    assert_eq!(f["idempotent"], true);
    assert_eq!(f["algebraically_idempotent"], false);
    assert_eq!(f["algebras_on_e"], 2);
    assert_eq!(f["morphisms"], 7);
}

#[test]
fn alg_not_free_gallery_matches() {
    let r = json(&relidem(&["gallery", "paper-alg-not-free", "--json"]));
    let f = &r["flags"];
    assert_eq!(f["idempotent"], true);
    assert_eq!(f["algebraically_idempotent"], true);
    assert_eq!(f["kleisli_objects"], 1);
    assert_eq!(f["kleisli_equiv_algebras"], false);
    assert_eq!(f["morphisms"], 6);
}

#[test]
fn report_keys_are_in_fixed_order() {
    let r = json(&relidem(&["gallery", "trivial", "--json"]));
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["entity", "kind", "laws", "flags", "witnesses", "timing_ms"]);
}

#[test]
fn unknown_subcommand_prints_usage() {
    let o = relidem(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn unknown_gallery_name_is_an_error() {
    let o = relidem(&["gallery", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn human_and_json_flags_agree() {
    for name in ["paper-idem-not-alg", "paper-alg-not-free", "trivial", "split-endo"] {
        let r = json(&relidem(&["gallery", name, "--json"]));
        let text = stdout(&relidem(&["gallery", name]));
        let mut expected = Vec::new();
        for (k, v) in r["flags"].as_object().unwrap() {
            match v {
                Value::Object(inner) => {
                    for (k2, v2) in inner {
                        expected.push(format!("  {k}.{k2}: {v2}"));
                    }
                }
                other => expected.push(format!("  {k}: {other}")),
            }
        }
        for line in expected {
            assert!(text.lines().any(|l| l == line), "{name}: missing `{line}`");
        }
    }
}

#[test]
fn emitted_gallery_reclassifies_identically() {
    for name in ["paper-idem-not-alg", "paper-alg-not-free", "trivial", "split-endo"] {
        let path = scratch(&format!("{name}.dsl"));
        let g = json(&relidem(&["gallery", name, "--emit", path.to_str().unwrap(), "--json"]));
        let c = json(&relidem(&["classify", path.to_str().unwrap(), "--monad", "T", "--json"]));
        assert_eq!(g["flags"].to_string(), c["flags"].to_string(), "{name}");
        assert_eq!(g["laws"], c["laws"]);
        assert_eq!(g["witnesses"], c["witnesses"]);
    }
}

#[test]
fn check_accepts_valid_files() {
    let path = scratch("check-ok.dsl");
    std::fs::write(&path, format!("{SPLIT}relmonad T over J {{ carrier: star |-> t; unit: star |-> eta; ext: (star, star, eta) |-> id_t; }}\n")).unwrap();
    let o = relidem(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("relmonad T"));
}

#[test]
fn law_violation_exits_one() {
    let path = scratch("check-bad.dsl");
    std::fs::write(&path, format!("{SPLIT}relmonad T over J {{ carrier: star |-> t; unit: star |-> eta; ext: (star, star, eta) |-> eta.p; }}\n")).unwrap();
    let o = relidem(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("law"));
}

#[test]
fn parse_error_exits_two_with_location() {
    let path = scratch("check-parse.dsl");
    std::fs::write(&path, "category C {\n  objects: a\n  arrows: f : a -> a;\n}\n").unwrap();
    let o = relidem(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 3:"));
}

#[test]
fn ambiguous_omitted_extension_is_reported() {
    let path = scratch("ambiguous.dsl");
    std::fs::write(&path, format!("{SPLIT}relmonad T over J {{ carrier: star |-> t; unit: star |-> eta; }}\n")).unwrap();
    let o = relidem(&["classify", path.to_str().unwrap(), "--monad", "T"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not unique"));
}

#[test]
fn enumerate_lists_every_relmonad() {
    let path = scratch("root.dsl");
    std::fs::write(&path, SPLIT).unwrap();
    let r = json(&relidem(&["enumerate", "--root", path.to_str().unwrap(), "--functor", "J", "--limit", "50", "--json"]));
    assert_eq!(r["truncated"], false);
    let items = r["instances"].as_array().unwrap();
    assert_eq!(items.len(), r["count"].as_u64().unwrap() as usize);
    assert!(items.iter().any(|i| i["flags"]["idempotent"] == false));
    let small = json(&relidem(&["enumerate", "--root", path.to_str().unwrap(), "--functor", "J", "--limit", "1", "--json"]));
    assert_eq!(small["truncated"], items.len() > 1);
}

#[test]
fn algebras_and_resolutions_run() {
    let path = scratch("alg.dsl");
    relidem(&["gallery", "paper-alg-not-free", "--emit", path.to_str().unwrap()]);
    let a = json(&relidem(&["algebras", path.to_str().unwrap(), "--monad", "T", "--json"]));
    assert_eq!(a["flags"]["alg_objects"], 2);
    assert_eq!(a["flags"]["comparison_essentially_surjective"], false);
    let r = json(&relidem(&["resolutions", path.to_str().unwrap(), "--monad", "T", "--json"]));
    assert_eq!(r["flags"]["morphisms_kleisli_to_alg"], 1);
}

#[test]
fn small_census_is_deterministic() {
    let args = [
        "search",
        "--require-idempotent",
        "--forbid-algebraically-idempotent",
        "--require-dense-root",
        "--max-objects",
        "2",
        "--max-morphisms",
        "4",
        "--census",
        "--json",
    ];
    let a = json(&relidem(&args));
    let b = json(&relidem(&args));
    assert_eq!(a["outcome"], "exhausted");
    assert_eq!(a["census"], b["census"]);
}

#[test]
fn contradictory_search_is_refused() {
    let o = relidem(&["search", "--require-idempotent", "--forbid-idempotent"]);
    assert_eq!(o.status.code(), Some(1));
}
