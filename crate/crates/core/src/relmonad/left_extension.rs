use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{precompose, MonadData};
use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{enumerate_functors, enumerate_nat_transformations, FinFunctor};

/// Above this many endofunctors the check is reported as costly.
pub const ENDOFUNCTOR_WARNING_THRESHOLD: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LeftExtensionVerdict {
    Holds,
    /// Restriction `[E,E](t,s) → [A,E](tj,sj)` is not a bijection for the
    /// endofunctor `s` (listed by its object map).
    Fails {
        endofunctor: Vec<String>,
        before: usize,
        after: usize,
        injective: bool,
    },
    /// The endofunctor enumeration hit its limit before a failure was found.
    Inconclusive { enumerated: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftExtension {
    pub verdict: LeftExtensionVerdict,
    pub endofunctors: usize,
    pub warnings: Vec<String>,
    /// `(M idempotent, Mj idempotent)` when the verdict holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotence: Option<(bool, bool)>,
}

impl LeftExtension {
    pub fn holds(&self) -> Option<bool> {
        match self.verdict {
            LeftExtensionVerdict::Holds => Some(true),
            LeftExtensionVerdict::Fails { .. } => Some(false),
            LeftExtensionVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Decides whether `t` together with `η` restricted along `j` is a left
/// extension of `tj` along `j`, by checking the universal property against
/// every endofunctor of `E`.
pub fn exhibits_left_extension(m: &MonadData, j: &FinFunctor, limit: usize) -> Result<LeftExtension> {
    let t = m.endofunctor();
    let e = t.source();
    if !same_cat(j.target(), e) {
        return Err(Error::Precondition("functor does not land in the monad's category".into()));
    }
    let laws = m.check_laws();
    if !laws.is_ok() {
        return Err(Error::Laws(laws));
    }
    let ends = enumerate_functors(e, e, limit);
    let mut warnings = Vec::new();
    if ends.functors.len() > ENDOFUNCTOR_WARNING_THRESHOLD {
        warnings.push(format!("checked {} endofunctors", ends.functors.len()));
    }
    let tj = j.then(t)?;
    for s in &ends.functors {
        let sj = j.then(s)?;
        let mut restricted = HashSet::new();
        let mut before = 0usize;
        let mut injective = true;
        enumerate_nat_transformations(t, s, |_, _| true, |alpha| {
            before += 1;
            let r: Vec<_> = j.ob_map().iter().map(|&x| alpha[x]).collect();
            injective &= restricted.insert(r);
            ControlFlow::Continue(())
        });
        let mut after = 0usize;
        enumerate_nat_transformations(&tj, &sj, |_, _| true, |_| {
            after += 1;
            ControlFlow::Continue(())
        });
        if !injective || before != after {
            return Ok(LeftExtension {
                verdict: LeftExtensionVerdict::Fails {
                    endofunctor: s.ob_map().iter().map(|&x| e.ob_name(x).to_string()).collect(),
                    before,
                    after,
                    injective,
                },
                endofunctors: ends.functors.len(),
                warnings,
                idempotence: None,
            });
        }
    }
    if ends.truncated {
        return Ok(LeftExtension {
            verdict: LeftExtensionVerdict::Inconclusive {
                enumerated: ends.functors.len(),
            },
            endofunctors: ends.functors.len(),
            warnings,
            idempotence: None,
        });
    }
    let whole = m.to_relative()?.is_idempotent();
    let part = precompose(&m.to_relative()?, j)?.is_idempotent();
    if whole != part {
        return Err(Error::InvariantViolation(format!(
            "left extension holds but idempotence differs: monad {whole}, restriction {part}"
        )));
    }
    Ok(LeftExtension {
        verdict: LeftExtensionVerdict::Holds,
        endofunctors: ends.functors.len(),
        warnings,
        idempotence: Some((whole, part)),
    })
}
