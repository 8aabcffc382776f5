use std::fmt::Write;

use super::Workspace;
use crate::fincat::{FinCat, Mor};
use crate::relmonad::RelMonad;

impl Workspace {
    /// Writes every declaration back out as DSL text, with all table entries
    /// spelled out.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for c in &self.categories {
            let p = c.presentation();
            let _ = writeln!(out, "category {} {{", c.name);
            let _ = writeln!(out, "  objects: {};", p.vertices.join(", "));
            if !p.edges.is_empty() {
                let arrows: Vec<String> = p
                    .edges
                    .iter()
                    .map(|e| format!("{} : {} -> {}", e.name, p.vertices[e.source], p.vertices[e.target]))
                    .collect();
                let _ = writeln!(out, "  arrows: {};", arrows.join(", "));
            }
            if !p.relations.is_empty() {
                let rels: Vec<String> = p
                    .relations
                    .iter()
                    .map(|(l, r)| format!("{} = {}", p.word_text(l), p.word_text(r)))
                    .collect();
                let _ = writeln!(out, "  relations: {};", rels.join(", "));
            }
            out.push_str("}\n");
        }
        for f in &self.functors {
            let (src, dst) = (self.category(&f.source).unwrap(), &f.functor.target());
            let p = src.presentation();
            let _ = writeln!(out, "functor {} : {} -> {} {{", f.name, f.source, f.target);
            let obs: Vec<String> = (0..p.vertices.len())
                .map(|x| format!("{} |-> {}", p.vertices[x], dst.ob_name(f.functor.ob(x))))
                .collect();
            let _ = writeln!(out, "  objects: {};", obs.join(", "));
            if !p.edges.is_empty() {
                let arrows: Vec<String> = p
                    .edges
                    .iter()
                    .map(|e| {
                        let m = src.resolver.resolve_text(&e.name).expect("edge resolves");
                        format!("{} |-> {}", e.name, dst.mor_name(f.functor.mor(m)))
                    })
                    .collect();
                let _ = writeln!(out, "  arrows: {};", arrows.join(", "));
            }
            out.push_str("}\n");
        }
        for m in &self.monads {
            let t = &m.monad;
            let (ac, e) = (t.source(), t.cat());
            let _ = writeln!(out, "relmonad {} over {} {{", m.name, m.root);
            let carrier: Vec<String> = (0..ac.objects())
                .map(|a| format!("{} |-> {}", ac.ob_name(a), e.ob_name(t.carrier(a))))
                .collect();
            let unit: Vec<String> = (0..ac.objects())
                .map(|a| format!("{} |-> {}", ac.ob_name(a), e.mor_name(t.unit(a))))
                .collect();
            let _ = writeln!(out, "  carrier: {};", carrier.join(", "));
            let _ = writeln!(out, "  unit: {};", unit.join(", "));
            let mut ext = Vec::new();
            for a in 0..ac.objects() {
                for b in 0..ac.objects() {
                    for &f in t.keys(a, b) {
                        ext.push(format!(
                            "({}, {}, {}) |-> {}",
                            ac.ob_name(a),
                            ac.ob_name(b),
                            e.mor_name(f),
                            e.mor_name(t.ext(a, b, f))
                        ));
                    }
                }
            }
            if !ext.is_empty() {
                let _ = writeln!(out, "  ext: {};", ext.join(", "));
            }
            out.push_str("}\n");
        }
        for a in &self.algebras {
            let alg = &a.algebra;
            let t = alg.monad();
            let (ac, e) = (t.source(), t.cat());
            let _ = writeln!(out, "algebra {} for {} {{", a.name, a.monad);
            let _ = writeln!(out, "  carrier: {};", e.ob_name(alg.carrier()));
            let ext: Vec<String> = (0..ac.objects())
                .flat_map(|x| {
                    alg.keys(x)
                        .iter()
                        .map(move |&f| format!("({}, {}) |-> {}", ac.ob_name(x), e.mor_name(f), e.mor_name(alg.ext(x, f))))
                })
                .collect();
            if !ext.is_empty() {
                let _ = writeln!(out, "  ext: {};", ext.join(", "));
            }
            out.push_str("}\n");
        }
        for a in &self.adjunctions {
            let adj = &a.adjunction;
            let (ac, cc, e) = (adj.root().source(), adj.apex(), adj.root().target());
            let _ = writeln!(out, "adjunction {} over {} {{", a.name, a.root);
            let _ = writeln!(out, "  left: {};", a.left);
            let _ = writeln!(out, "  right: {};", a.right);
            let mut phi = Vec::new();
            for x in 0..ac.objects() {
                for c in 0..cc.objects() {
                    for &s in cc.hom(adj.left().ob(x), c) {
                        phi.push(format!(
                            "({}, {}, {}) |-> {}",
                            ac.ob_name(x),
                            cc.ob_name(c),
                            cc.mor_name(s),
                            e.mor_name(adj.phi(x, s))
                        ));
                    }
                }
            }
            if !phi.is_empty() {
                let _ = writeln!(out, "  phi: {};", phi.join(", "));
            }
            out.push_str("}\n");
        }
        out
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Object and non-identity morphism names usable in DSL text: the category's
/// own names when they are distinct identifiers, generated ones otherwise.
fn dsl_names(c: &FinCat) -> (Vec<String>, Vec<String>) {
    let obs: Vec<String> = c.ob_names().to_vec();
    let mut all: Vec<&str> = obs.iter().map(String::as_str).collect();
    let mut mors = Vec::new();
    for f in 0..c.morphisms() {
        if c.is_identity(f) {
            mors.push(format!("id_{}", obs[c.dom(f)]));
        } else {
            mors.push(c.mor_name(f).to_string());
            all.push(c.mor_name(f));
        }
    }
    let mut sorted = all.clone();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    let usable = distinct
        && all.iter().all(|s| is_ident(s))
        && (0..c.morphisms()).all(|f| c.is_identity(f) || !c.mor_name(f).starts_with("id_"));
    if usable {
        return (obs, mors);
    }
    let obs: Vec<String> = (0..c.objects()).map(|x| format!("x{x}")).collect();
    let mut k = 0;
    let mors = (0..c.morphisms())
        .map(|f| {
            if c.is_identity(f) {
                format!("id_x{}", c.dom(f))
            } else {
                k += 1;
                format!("m{k}")
            }
        })
        .collect();
    (obs, mors)
}

/// A presentation with one generator per non-identity morphism and one
/// relation per composable pair of them.
fn category_source(out: &mut String, name: &str, c: &FinCat) -> (Vec<String>, Vec<String>) {
    let (obs, mors) = dsl_names(c);
    let _ = writeln!(out, "category {name} {{");
    let _ = writeln!(out, "  objects: {};", obs.join(", "));
    let gens: Vec<Mor> = (0..c.morphisms()).filter(|&f| !c.is_identity(f)).collect();
    if !gens.is_empty() {
        let arrows: Vec<String> = gens
            .iter()
            .map(|&f| format!("{} : {} -> {}", mors[f], obs[c.dom(f)], obs[c.cod(f)]))
            .collect();
        let _ = writeln!(out, "  arrows: {};", arrows.join(", "));
        let mut rels = Vec::new();
        for &g in &gens {
            for &f in &gens {
                if let Some(h) = c.try_compose(g, f) {
                    rels.push(format!("{}.{} = {}", mors[g], mors[f], mors[h]));
                }
            }
        }
        if !rels.is_empty() {
            let _ = writeln!(out, "  relations: {};", rels.join(", "));
        }
    }
    out.push_str("}\n");
    (obs, mors)
}

/// DSL text declaring `A`, `E`, the root `J` and the relative monad `T`.
pub fn instance_source(t: &RelMonad) -> String {
    let mut out = String::new();
    let (ac, e) = (t.source(), t.cat());
    let (a_obs, a_mors) = category_source(&mut out, "A", ac);
    let (e_obs, e_mors) = category_source(&mut out, "E", e);
    let j = t.root();
    out.push_str("functor J : A -> E {\n");
    if ac.objects() > 0 {
        let obs: Vec<String> = (0..ac.objects()).map(|a| format!("{} |-> {}", a_obs[a], e_obs[j.ob(a)])).collect();
        let _ = writeln!(out, "  objects: {};", obs.join(", "));
    }
    let arrows: Vec<String> = (0..ac.morphisms())
        .filter(|&f| !ac.is_identity(f))
        .map(|f| format!("{} |-> {}", a_mors[f], e_mors[j.mor(f)]))
        .collect();
    if !arrows.is_empty() {
        let _ = writeln!(out, "  arrows: {};", arrows.join(", "));
    }
    out.push_str("}\nrelmonad T over J {\n");
    let na = ac.objects();
    if na > 0 {
        let carrier: Vec<String> = (0..na).map(|a| format!("{} |-> {}", a_obs[a], e_obs[t.carrier(a)])).collect();
        let unit: Vec<String> = (0..na).map(|a| format!("{} |-> {}", a_obs[a], e_mors[t.unit(a)])).collect();
        let _ = writeln!(out, "  carrier: {};", carrier.join(", "));
        let _ = writeln!(out, "  unit: {};", unit.join(", "));
        let mut ext = Vec::new();
        for a in 0..na {
            for b in 0..na {
                for &f in t.keys(a, b) {
                    ext.push(format!("({}, {}, {}) |-> {}", a_obs[a], a_obs[b], e_mors[f], e_mors[t.ext(a, b, f)]));
                }
            }
        }
        let _ = writeln!(out, "  ext: {};", ext.join(", "));
    }
    out.push_str("}\n");
    out
}
