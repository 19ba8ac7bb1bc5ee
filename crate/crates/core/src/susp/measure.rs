use thiserror::Error;

use super::{SuspEnv, SuspExpr, SuspTerm};
use crate::tree::Position;

/// Truncated subtraction, `a ∸ b`.
pub fn monus(a: u64, b: u64) -> u64 {
    a.saturating_sub(b)
}

/// Length of an environment. Saturates instead of overflowing.
pub fn env_len(e: &SuspEnv) -> u64 {
    match e {
        SuspEnv::Nil => 0,
        SuspEnv::Cons(_, tail) => env_len(tail).saturating_add(1),
        SuspEnv::Merged(e1, nl1, ol2, _) => env_len(e1).saturating_add(monus(*ol2, *nl1)),
    }
}

pub fn env_lev(e: &SuspEnv) -> u64 {
    match e {
        SuspEnv::Nil => 0,
        SuspEnv::Cons(et, _) => et.level,
        SuspEnv::Merged(_, nl1, ol2, e2) => env_lev(e2).saturating_add(monus(*nl1, *ol2)),
    }
}

/// The i-th index of an environment.
pub fn env_ind(e: &SuspEnv, i: u64) -> u64 {
    match e {
        SuspEnv::Nil => 0,
        SuspEnv::Cons(et, tail) => {
            if i == 0 {
                et.level
            } else {
                env_ind(tail, i - 1)
            }
        }
        SuspEnv::Merged(e1, nl, ol, e2) => {
            let l = env_len(e1);
            if i < l {
                let m = monus(*nl, env_ind(e1, i));
                if env_len(e2) > m {
                    env_ind(e2, m).saturating_add(monus(*nl, *ol))
                } else {
                    env_ind(e1, i)
                }
            } else {
                env_ind(e2, (i - l).saturating_add(*nl))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("wellformedness violation at `{position}`: {reason}")]
pub struct WellformednessViolation {
    pub position: Position,
    pub reason: String,
}

/// First violated wellformedness clause in preorder.
pub fn check_wellformed(x: &SuspExpr) -> Result<(), WellformednessViolation> {
    fn term(t: &SuspTerm, here: &mut Vec<usize>) -> Result<(), WellformednessViolation> {
        match t {
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => {}
            SuspTerm::App(f, a) => {
                descend(here, 0, |h| term(f, h))?;
                descend(here, 1, |h| term(a, h))?;
            }
            SuspTerm::Abs(_, b) => descend(here, 0, |h| term(b, h))?,
            SuspTerm::Susp(b, ol, nl, e) => {
                let (len, lev) = (env_len(e), env_lev(e));
                if len != *ol {
                    return Err(violation(here, format!("suspension has ol = {ol} but len(env) = {len}")));
                }
                if lev > *nl {
                    return Err(violation(here, format!("suspension has nl = {nl} but lev(env) = {lev}")));
                }
                descend(here, 0, |h| term(b, h))?;
                descend(here, 1, |h| env(e, h))?;
            }
        }
        Ok(())
    }
    fn env(e: &SuspEnv, here: &mut Vec<usize>) -> Result<(), WellformednessViolation> {
        match e {
            SuspEnv::Nil => {}
            SuspEnv::Cons(et, tail) => {
                let lev = env_lev(tail);
                if lev > et.level {
                    return Err(violation(
                        here,
                        format!("entry level {} is below lev(tail) = {lev}", et.level),
                    ));
                }
                descend(here, 0, |h| descend(h, 0, |h| term(&et.term, h)))?;
                descend(here, 1, |h| env(tail, h))?;
            }
            SuspEnv::Merged(e1, nl1, ol2, e2) => {
                let (len, lev) = (env_len(e2), env_lev(e1));
                if len != *ol2 {
                    return Err(violation(here, format!("merge has ol2 = {ol2} but len(e2) = {len}")));
                }
                if lev > *nl1 {
                    return Err(violation(here, format!("merge has nl1 = {nl1} but lev(e1) = {lev}")));
                }
                descend(here, 0, |h| env(e1, h))?;
                descend(here, 1, |h| env(e2, h))?;
            }
        }
        Ok(())
    }
    fn descend<R>(here: &mut Vec<usize>, i: usize, f: impl FnOnce(&mut Vec<usize>) -> R) -> R {
        here.push(i);
        let r = f(here);
        here.pop();
        r
    }
    fn violation(here: &[usize], reason: String) -> WellformednessViolation {
        WellformednessViolation { position: Position(here.to_vec()), reason }
    }
    let mut here = Vec::new();
    match x {
        SuspExpr::Term(t) => term(t, &mut here),
        SuspExpr::Env(e) => env(e, &mut here),
        SuspExpr::EnvTerm(et) => descend(&mut here, 0, |h| term(&et.term, h)),
    }
}

pub fn is_simple(e: &SuspEnv) -> bool {
    match e {
        SuspEnv::Nil => true,
        SuspEnv::Cons(_, tail) => is_simple(tail),
        SuspEnv::Merged(..) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("environment is not simple")]
pub struct NotSimple;

/// `e{i}`: drop the first `i` entries of a simple environment.
pub fn truncate(e: &SuspEnv, i: u64) -> Result<SuspEnv, NotSimple> {
    if !is_simple(e) {
        return Err(NotSimple);
    }
    let mut cur = e;
    for _ in 0..i {
        match cur {
            SuspEnv::Cons(_, tail) => cur = tail,
            _ => break,
        }
    }
    Ok(cur.clone())
}
