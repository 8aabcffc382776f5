use serde::Serialize;

use super::RelMonad;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor};

pub const CONDITION_LABELS: [&str; 8] = ["(1)", "(2)", "(3)", "(4)", "(5)", "(1')", "(2')", "(3')"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub label: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// The eight equivalent formulations of idempotence, each evaluated on its
/// own. `vacuous` is set when there is nothing to quantify over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotenceReport {
    pub vacuous: bool,
    pub conditions: Vec<Condition>,
}

impl IdempotenceReport {
    pub fn idempotent(&self) -> bool {
        self.conditions[0].holds
    }

    pub fn agree(&self) -> bool {
        self.conditions.iter().all(|c| c.holds == self.conditions[0].holds)
    }

    pub fn condition(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }

    pub fn flags(&self) -> Vec<bool> {
        self.conditions.iter().map(|c| c.holds).collect()
    }
}

/// One hom-component of an extension operator `E(ja, x) → E(ta, x)`.
pub(crate) struct ExtComponent<'a> {
    pub label: String,
    pub eta: Mor,
    /// `E(ja, x)` in hom order.
    pub sources: &'a [Mor],
    /// `E(ta, x)` in hom order.
    pub targets: &'a [Mor],
    /// `ext[i]` extends `sources[i]`.
    pub ext: &'a [Mor],
}

struct Tally {
    holds: bool,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            holds: true,
            witness: None,
        }
    }

    fn fail(&mut self, w: impl FnOnce() -> String) {
        if self.holds {
            self.holds = false;
            self.witness = Some(w());
        }
    }
}

/// Evaluates the eight conditions without asserting that they agree.
pub(crate) fn evaluate_conditions(e: &FinCat, comps: &[ExtComponent<'_>]) -> IdempotenceReport {
    let mut t: Vec<Tally> = (0..8).map(|_| Tally::new()).collect();
    let name = |m: Mor| e.mor_name(m).to_string();
    for c in comps {
        let (ns, nt) = (c.sources.len(), c.targets.len());
        let psi: Vec<usize> = c.targets.iter().map(|&g| e.hom_pos(e.compose(g, c.eta))).collect();
        let dag: Vec<usize> = c.ext.iter().map(|&g| e.hom_pos(g)).collect();
        let mut dag_pre: Vec<Vec<usize>> = vec![Vec::new(); nt];
        for (i, &g) in dag.iter().enumerate() {
            dag_pre[g].push(i);
        }
        let mut psi_pre: Vec<Vec<usize>> = vec![Vec::new(); ns];
        for (k, &f) in psi.iter().enumerate() {
            psi_pre[f].push(k);
        }
        let at = &c.label;

        // (1) and (2): the extension operator as a map of hom-sets.
        if let Some(g) = dag_pre.iter().position(|p| p.is_empty()) {
            let w = format!("{} at {at} has no †-preimage", name(c.targets[g]));
            t[0].fail(|| w.clone());
            t[1].fail(|| w);
        }
        if let Some(p) = dag_pre.iter().find(|p| p.len() > 1) {
            t[0].fail(|| {
                format!(
                    "{} and {} at {at} share the extension {}",
                    name(c.sources[p[0]]),
                    name(c.sources[p[1]]),
                    name(c.ext[p[0]])
                )
            });
        }

        // (3): (g ∘ η)^† = g for every g.
        let back = (0..nt).find(|&k| dag[psi[k]] != k);
        if let Some(k) = back {
            let w = format!(
                "({} ∘ η)^† = {} at {at}",
                name(c.targets[k]),
                name(c.ext[psi[k]])
            );
            t[2].fail(|| w.clone());
            t[3].fail(|| w);
        }
        // (4) also needs f^† ∘ η = f.
        if let Some(i) = (0..ns).find(|&i| psi[dag[i]] != i) {
            t[3].fail(|| format!("{}^† ∘ η ≠ {} at {at}", name(c.sources[i]), name(c.sources[i])));
        }

        // (5): each f has exactly one extension along η.
        if let Some(f) = psi_pre.iter().position(|p| p.len() != 1) {
            let p = &psi_pre[f];
            t[4].fail(|| match p.len() {
                0 => format!("{} at {at} has no extension along η", name(c.sources[f])),
                _ => format!(
                    "{} at {at} has extensions {} and {} along η",
                    name(c.sources[f]),
                    name(c.targets[p[0]]),
                    name(c.targets[p[1]])
                ),
            });
        }

        // (1') and (2'): restriction along η.
        if let Some(p) = psi_pre.iter().find(|p| p.len() > 1) {
            let w = format!(
                "{} and {} at {at} both restrict to {}",
                name(c.targets[p[0]]),
                name(c.targets[p[1]]),
                name(c.sources[psi[p[0]]])
            );
            t[5].fail(|| w.clone());
            t[6].fail(|| w);
        }
        if let Some(f) = psi_pre.iter().position(|p| p.is_empty()) {
            t[5].fail(|| format!("{} at {at} is not a restriction along η", name(c.sources[f])));
        }

        // (3'): every g restricting to f is f^†.
        'fibres: for (f, p) in psi_pre.iter().enumerate() {
            for &k in p {
                if dag[f] != k {
                    t[7].fail(|| {
                        format!(
                            "{} restricts to {} at {at} but {}^† = {}",
                            name(c.targets[k]),
                            name(c.sources[f]),
                            name(c.sources[f]),
                            name(c.ext[f])
                        )
                    });
                    break 'fibres;
                }
            }
        }
    }
    IdempotenceReport {
        vacuous: comps.is_empty(),
        conditions: t
            .into_iter()
            .zip(CONDITION_LABELS)
            .map(|(t, label)| Condition {
                label,
                holds: t.holds,
                witness: t.witness,
            })
            .collect(),
    }
}

pub(crate) fn assert_agreement(report: IdempotenceReport, what: &str) -> Result<IdempotenceReport> {
    if report.agree() {
        return Ok(report);
    }
    let detail: Vec<String> = report
        .conditions
        .iter()
        .map(|c| format!("{}={}", c.label, c.holds))
        .collect();
    Err(Error::InvariantViolation(format!(
        "idempotence conditions disagree for {what}: {}",
        detail.join(" ")
    )))
}

impl RelMonad {
    pub(crate) fn ext_components(&self) -> Vec<ExtComponent<'_>> {
        let (ac, e) = (self.source(), self.cat());
        let na = ac.objects();
        let mut out = Vec::with_capacity(na * na);
        for a in 0..na {
            for b in 0..na {
                out.push(ExtComponent {
                    label: format!("({}, {})", ac.ob_name(a), ac.ob_name(b)),
                    eta: self.unit(a),
                    sources: self.keys(a, b),
                    targets: e.hom(self.carrier(a), self.carrier(b)),
                    ext: &self.ext_table()[a * na + b],
                });
            }
        }
        out
    }

    /// The eight conditions without law checks or agreement assertion.
    pub fn raw_idempotence_conditions(&self) -> IdempotenceReport {
        evaluate_conditions(self.cat(), &self.ext_components())
    }

    pub fn is_idempotent(&self) -> bool {
        self.raw_idempotence_conditions().idempotent()
    }
}

/// Evaluates every idempotence condition for a law-abiding relative monad and
/// checks that they agree.
pub fn idempotence_report(t: &RelMonad) -> Result<IdempotenceReport> {
    let laws = t.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    assert_agreement(t.raw_idempotence_conditions(), "relative monad")
}
