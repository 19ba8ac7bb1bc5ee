//! Checks relating the alternative calculi to the suspension calculus.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::rewrite::{apply_rule, enumerate_redexes, rm_normalize_term, similar, MetaMode, RuleSet, SuspSystem};
use crate::susp::{SuspExpr, SuspTerm};
use crate::tree::{first_redex, Position, RewriteError, Tree};

use super::lambda_s::{ls_step, ls_to_susp, LsRule, LsTerm};
use super::sigma::{sigma_nf, sigma_to_susp, susp_to_sigma, SigTerm, SigmaNormalizeError, TranslateError};
use super::upsilon::{ups_to_susp, UpsTerm};

/// How a `⊳r+` derivation was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// On the leftmost-outermost reading path, after this many steps.
    LeftmostOutermost(usize),
    /// By breadth-first search, at this depth.
    Search(usize),
}

const LO_FUEL: usize = 10_000;
const BFS_DEPTH: usize = 32;
const BFS_NODES: usize = 200_000;

/// Find a derivation `from ⊳r+ to` using the reading rules only.
pub fn reading_path(from: &SuspTerm, to: &SuspTerm) -> Result<Option<Certificate>, RewriteError> {
    let mode = MetaMode::Graftable;
    let sys = SuspSystem::new(RuleSet::reading(), mode);
    let target = SuspExpr::Term(to.clone());
    let mut cur = SuspExpr::Term(from.clone());
    for n in 1..=LO_FUEL {
        let Some((pos, rule)) = first_redex(&sys, &cur) else { break };
        cur = apply_rule(&cur, rule, &pos, mode)?;
        if cur == target {
            return Ok(Some(Certificate::LeftmostOutermost(n)));
        }
    }
    let start = SuspExpr::Term(from.clone());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((x, depth)) = queue.pop_front() {
        if depth == BFS_DEPTH {
            continue;
        }
        for (pos, rule) in enumerate_redexes(&x, RuleSet::reading(), mode) {
            let y = apply_rule(&x, rule, &pos, mode)?;
            if y == target {
                return Ok(Some(Certificate::Search(depth + 1)));
            }
            if seen.len() < BFS_NODES && seen.insert(y.clone()) {
                queue.push_back((y, depth + 1));
            }
        }
    }
    Ok(None)
}

/// For the λs step `a → b` at `pos`, certify `T(a) ⊳r+ T(b)`.
///
/// The translation is compositional, so a derivation between the
/// translations of the redex and its contractum lifts to the whole term.
pub fn ls_simulation_certificate(a: &LsTerm, pos: &Position, rule: LsRule) -> Result<Option<Certificate>, RewriteError> {
    let redex = a.at(pos).ok_or_else(|| RewriteError::BadPosition(pos.clone()))?;
    let contractum = ls_step(&redex, &Position::root(), rule)?;
    reading_path(&ls_to_susp(&redex), &ls_to_susp(&contractum))
}

/// Whether the translations of `a` and `b` have the same rm-normal form.
pub fn ups_joinable(a: &UpsTerm, b: &UpsTerm) -> Result<bool, RewriteError> {
    let mode = MetaMode::Graftable;
    Ok(rm_normalize_term(&ups_to_susp(a), mode)? == rm_normalize_term(&ups_to_susp(b), mode)?)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SigmaCheckError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Normalize(#[from] SigmaNormalizeError),
}

/// Whether `S(a)` and `S(b)` have the same σ-normal form.
pub fn sigma_joinable(a: &SuspTerm, b: &SuspTerm) -> Result<bool, SigmaCheckError> {
    let na = sigma_nf(&susp_to_sigma(a)?.into())?;
    let nb = sigma_nf(&susp_to_sigma(b)?.into())?;
    Ok(na == nb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preservation {
    Identical,
    Similar,
    Diverged,
}

/// Compare the rm-normal forms of `T(a)` and `T(b)`.
pub fn sigma_step_preserved(a: &SigTerm, b: &SigTerm) -> Result<Preservation, RewriteError> {
    let mode = MetaMode::Graftable;
    let x = SuspExpr::Term(rm_normalize_term(&sigma_to_susp(a), mode)?);
    let y = SuspExpr::Term(rm_normalize_term(&sigma_to_susp(b), mode)?);
    Ok(if x == y {
        Preservation::Identical
    } else if similar(&x, &y) {
        Preservation::Similar
    } else {
        Preservation::Diverged
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt::sigma::{sigma_step, SigExpr, SigRule, SigSub};
    use crate::alt::upsilon::{ups_step, UpsRule};
    use crate::rewrite::{env_to_simple, merge_normalize};

    #[test]
    fn lambda_s_destruction_is_simulated() {
        let a = LsTerm::parse("3 s{2} ?b").unwrap();
        let c = ls_simulation_certificate(&a, &Position::root(), LsRule::SigmaDestruction).unwrap();
        assert_eq!(c, Some(Certificate::LeftmostOutermost(3)));
        let a = LsTerm::parse("\\ (phi{1,2} (1 2))").unwrap();
        let c = ls_simulation_certificate(&a, &Position(vec![0]), LsRule::PhiApp).unwrap();
        assert_eq!(c, Some(Certificate::LeftmostOutermost(1)));
    }

    #[test]
    fn upsilon_steps_join() {
        let a = UpsTerm::parse("3[^(?x/)]").unwrap();
        let b = ups_step(&a.clone().into(), &Position::root(), UpsRule::RVarLift).unwrap();
        assert!(ups_joinable(&a, b.as_term().unwrap()).unwrap());
    }

    #[test]
    fn sigma_forward_joinability() {
        let a = SuspTerm::parse("[#2, 0, 2, nil]").unwrap();
        assert!(sigma_joinable(&a, &SuspTerm::Index(4)).unwrap());
        assert!(!sigma_joinable(&a, &SuspTerm::Index(3)).unwrap());
    }

    #[test]
    fn sigma_steps_preserved() {
        let a = SigTerm::parse("(1 1)[(\\ 1) . !]").unwrap();
        let b = sigma_step(&a.clone().into(), &Position::root(), SigRule::App).unwrap();
        assert_eq!(sigma_step_preserved(&a, b.as_term().unwrap()).unwrap(), Preservation::Identical);
    }

    #[test]
    fn map_yields_similar_environments() {
        // (?t . !) ∘ (?u . id): the environments of both sides of (Map)
        // are similar once their spines are simplified.
        let l = SigSub::parse("(?t . !) o (?u . id)").unwrap();
        let r = sigma_step(&l.clone().into(), &Position::root(), SigRule::Map).unwrap();
        let SigExpr::Sub(r) = r else { panic!() };
        let env = |s: &SigSub| {
            let (_, _, e) = crate::alt::sigma::sigma_sub_to_env(s);
            merge_normalize(&SuspExpr::Env(env_to_simple(&e)))
        };
        assert!(similar(&env(&l), &env(&r)));
        // With an empty right environment (m2) wins and similarity fails.
        let l = SigSub::parse("(?t . !) o !").unwrap();
        let r = sigma_step(&l.clone().into(), &Position::root(), SigRule::Map).unwrap();
        let SigExpr::Sub(r) = r else { panic!() };
        assert!(!similar(&env(&l), &env(&r)));
    }
}
