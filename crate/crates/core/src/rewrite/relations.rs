use std::sync::Arc;

use thiserror::Error;

use super::normalize::{rm_normalize, rm_normalize_env};
use super::rules::{apply_rule, enumerate_redexes, MetaMode, RuleId, RuleSet};
use crate::susp::{check_wellformed, EnvTerm, SuspEnv, SuspExpr, SuspTerm, WellformednessViolation};
use crate::tree::{Position, RewriteError};

/// Contract every βs-redex of `x` at once, developing inside arguments first.
pub fn parallel_beta_step(x: &SuspExpr) -> SuspExpr {
    fn term(t: &SuspTerm) -> SuspTerm {
        match t {
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => t.clone(),
            SuspTerm::App(f, a) => {
                let a2 = Arc::new(term(a));
                match &**f {
                    SuspTerm::Abs(_, body) => {
                        let env = SuspEnv::Cons(EnvTerm { term: a2, level: 0 }, Arc::new(SuspEnv::Nil));
                        SuspTerm::Susp(Arc::new(term(body)), 1, 0, Arc::new(env))
                    }
                    _ => SuspTerm::App(Arc::new(term(f)), a2),
                }
            }
            SuspTerm::Abs(ann, b) => SuspTerm::Abs(ann.clone(), Arc::new(term(b))),
            SuspTerm::Susp(b, ol, nl, e) => SuspTerm::Susp(Arc::new(term(b)), *ol, *nl, Arc::new(env(e))),
        }
    }
    fn env(e: &SuspEnv) -> SuspEnv {
        match e {
            SuspEnv::Nil => SuspEnv::Nil,
            SuspEnv::Cons(et, tail) => SuspEnv::Cons(EnvTerm::new(term(&et.term), et.level), Arc::new(env(tail))),
            SuspEnv::Merged(e1, nl1, ol2, e2) => SuspEnv::Merged(Arc::new(env(e1)), *nl1, *ol2, Arc::new(env(e2))),
        }
    }
    match x {
        SuspExpr::Term(t) => term(t).into(),
        SuspExpr::Env(e) => env(e).into(),
        SuspExpr::EnvTerm(et) => SuspExpr::EnvTerm(EnvTerm::new(term(&et.term), et.level)),
    }
}

/// Whether `y` is reachable from `x` by one parallel βs step.
pub fn is_parallel_successor(x: &SuspExpr, y: &SuspExpr) -> bool {
    fn term(x: &SuspTerm, y: &SuspTerm) -> bool {
        if x == y {
            return true;
        }
        match (x, y) {
            (SuspTerm::App(f, a), SuspTerm::Susp(b2, 1, 0, e)) => match (&**f, &**e) {
                (SuspTerm::Abs(_, b), SuspEnv::Cons(et, tail)) => {
                    et.level == 0 && matches!(**tail, SuspEnv::Nil) && term(b, b2) && term(a, &et.term)
                }
                _ => false,
            },
            (SuspTerm::App(f, a), SuspTerm::App(f2, a2)) => term(f, f2) && term(a, a2),
            (SuspTerm::Abs(n, b), SuspTerm::Abs(n2, b2)) => n == n2 && term(b, b2),
            (SuspTerm::Susp(b, ol, nl, e), SuspTerm::Susp(b2, ol2, nl2, e2)) => {
                ol == ol2 && nl == nl2 && term(b, b2) && env(e, e2)
            }
            _ => false,
        }
    }
    fn env(x: &SuspEnv, y: &SuspEnv) -> bool {
        match (x, y) {
            (SuspEnv::Nil, SuspEnv::Nil) => true,
            (SuspEnv::Cons(a, t), SuspEnv::Cons(b, t2)) => a.level == b.level && term(&a.term, &b.term) && env(t, t2),
            (SuspEnv::Merged(a, n, o, b), SuspEnv::Merged(a2, n2, o2, b2)) => {
                n == n2 && o == o2 && env(a, a2) && env(b, b2)
            }
            _ => false,
        }
    }
    match (x, y) {
        (SuspExpr::Term(a), SuspExpr::Term(b)) => term(a, b),
        (SuspExpr::Env(a), SuspExpr::Env(b)) => env(a, b),
        (SuspExpr::EnvTerm(a), SuspExpr::EnvTerm(b)) => a.level == b.level && term(&a.term, &b.term),
        _ => false,
    }
}

/// The similarity relation: structural congruence plus the rule relating
/// `(⟦t,ol,nl,r⟧, nl+k) :: e` and `(⟦t',ol,nl',r'⟧, nl'+k) :: e'`.
pub fn similar(x: &SuspExpr, y: &SuspExpr) -> bool {
    fn term(x: &SuspTerm, y: &SuspTerm) -> bool {
        if x == y {
            return true;
        }
        match (x, y) {
            (SuspTerm::App(f, a), SuspTerm::App(f2, a2)) => term(f, f2) && term(a, a2),
            (SuspTerm::Abs(n, b), SuspTerm::Abs(n2, b2)) => n == n2 && term(b, b2),
            (SuspTerm::Susp(b, ol, nl, e), SuspTerm::Susp(b2, ol2, nl2, e2)) => {
                ol == ol2 && nl == nl2 && term(b, b2) && env(e, e2)
            }
            _ => false,
        }
    }
    fn env(x: &SuspEnv, y: &SuspEnv) -> bool {
        if x == y {
            return true;
        }
        match (x, y) {
            (SuspEnv::Cons(a, t), SuspEnv::Cons(b, t2)) => {
                if !env(t, t2) {
                    return false;
                }
                if a.level == b.level && term(&a.term, &b.term) {
                    return true;
                }
                match (&*a.term, &*b.term) {
                    (SuspTerm::Susp(s, ol, nl, r), SuspTerm::Susp(s2, ol2, nl2, r2)) if ol == ol2 => {
                        let k = a.level.checked_sub(*nl);
                        k.is_some() && k == b.level.checked_sub(*nl2) && term(s, s2) && env(r, r2)
                    }
                    _ => false,
                }
            }
            (SuspEnv::Merged(a, n, o, b), SuspEnv::Merged(a2, n2, o2, b2)) => {
                n == n2 && o == o2 && env(a, a2) && env(b, b2)
            }
            _ => false,
        }
    }
    match (x, y) {
        (SuspExpr::Term(a), SuspExpr::Term(b)) => term(a, b),
        (SuspExpr::Env(a), SuspExpr::Env(b)) => env(a, b),
        (SuspExpr::EnvTerm(a), SuspExpr::EnvTerm(b)) => a.level == b.level && term(&a.term, &b.term),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceCounterexample {
    pub left: (Position, RuleId),
    pub right: (Position, RuleId),
    pub left_normal: SuspExpr,
    pub right_normal: SuspExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfluenceError {
    #[error("one-step successors {:?} and {:?} have different rm-normal forms", .0.left, .0.right)]
    Counterexample(Box<ConfluenceCounterexample>),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Check that every pair of one-step rm-successors of `x` has the same
/// rm-normal form. At most `budget` redexes are examined.
pub fn check_local_confluence(x: &SuspExpr, mode: MetaMode, budget: usize) -> Result<(), ConfluenceError> {
    let mut first: Option<((Position, RuleId), SuspExpr)> = None;
    for (pos, rule) in enumerate_redexes(x, RuleSet::rm(), mode).into_iter().take(budget) {
        let nf = rm_normalize(&apply_rule(x, rule, &pos, mode)?, mode)?;
        match &first {
            None => first = Some(((pos, rule), nf)),
            Some((step, want)) if *want != nf => {
                return Err(ConfluenceError::Counterexample(Box::new(ConfluenceCounterexample {
                    left: step.clone(),
                    right: (pos, rule),
                    left_normal: want.clone(),
                    right_normal: nf,
                })))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Inputs to the associativity check: the environments and levels of
/// `⟪⟪e1,nl1,ol2,e2⟫, nl2 + (nl1 ∸ ol2), ol3, e3⟫` and
/// `⟪e1, nl1, ol2 + (ol3 ∸ nl2), ⟪e2,nl2,ol3,e3⟫⟫`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocInstance {
    pub e1: SuspEnv,
    pub nl1: u64,
    pub ol2: u64,
    pub e2: SuspEnv,
    pub nl2: u64,
    pub ol3: u64,
    pub e3: SuspEnv,
}

impl AssocInstance {
    pub fn left(&self) -> Result<SuspEnv, RewriteError> {
        let inner = SuspEnv::merged(self.e1.clone(), self.nl1, self.ol2, self.e2.clone());
        let nl = self.nl2.checked_add(self.nl1.saturating_sub(self.ol2)).ok_or(RewriteError::LevelsOverflow)?;
        Ok(SuspEnv::merged(inner, nl, self.ol3, self.e3.clone()))
    }

    pub fn right(&self) -> Result<SuspEnv, RewriteError> {
        let inner = SuspEnv::merged(self.e2.clone(), self.nl2, self.ol3, self.e3.clone());
        let ol = self.ol2.checked_add(self.ol3.saturating_sub(self.nl2)).ok_or(RewriteError::LevelsOverflow)?;
        Ok(SuspEnv::merged(self.e1.clone(), self.nl1, ol, inner))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssocError {
    #[error("ill-formed inputs: {0}")]
    IllFormedInputs(WellformednessViolation),
    #[error("sides normalize differently: {left} vs {right}")]
    Counterexample { left: SuspEnv, right: SuspEnv },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

pub fn check_assoc(inst: &AssocInstance) -> Result<(), AssocError> {
    let (a, b) = (inst.left()?, inst.right()?);
    for side in [&a, &b] {
        check_wellformed(&SuspExpr::Env(side.clone())).map_err(AssocError::IllFormedInputs)?;
    }
    let na = rm_normalize_env(&a, MetaMode::Graftable)?;
    let nb = rm_normalize_env(&b, MetaMode::Graftable)?;
    if na != nb {
        return Err(AssocError::Counterexample { left: na, right: nb });
    }
    Ok(())
}
