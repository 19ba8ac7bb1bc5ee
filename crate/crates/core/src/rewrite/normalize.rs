use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::rules::{enumerate_redexes, MetaMode, RuleId, RuleSet, SuspSystem};
use crate::susp::{monus, EnvTerm, SuspEnv, SuspExpr, SuspTerm};
use crate::tree::{self, Limits, NormalizeError, Reduction, RewriteError};

pub type SuspReduction = Reduction<SuspExpr, RuleId>;
pub type SuspNormalizeError = NormalizeError<SuspExpr, RuleId>;

/// Safety cap on rule applications in a single normalization.
pub const RM_FUEL: usize = 10_000_000;
pub const DEFAULT_BUDGET: usize = 10_000;

fn add(a: u64, b: u64) -> Result<u64, RewriteError> {
    a.checked_add(b).ok_or(RewriteError::LevelsOverflow)
}

fn sub(a: u64, b: u64) -> Result<u64, RewriteError> {
    a.checked_sub(b).ok_or(RewriteError::LevelsOverflow)
}

/// Innermost-first rm normalizer. Subterms are normalized before the
/// suspension above them is pushed inward, so every intermediate `push`
/// and `merge` works on normal components.
struct Nf {
    mode: MetaMode,
    steps: usize,
    fuel: usize,
}

impl Nf {
    fn new(mode: MetaMode) -> Self {
        Nf { mode, steps: 0, fuel: RM_FUEL }
    }

    fn tick(&mut self) -> Result<(), RewriteError> {
        self.steps += 1;
        if self.steps > self.fuel {
            return Err(RewriteError::InternalFuelExhausted(self.fuel));
        }
        Ok(())
    }

    fn term(&mut self, t: &Arc<SuspTerm>) -> Result<Arc<SuspTerm>, RewriteError> {
        Ok(match &**t {
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => t.clone(),
            SuspTerm::App(f, a) => Arc::new(SuspTerm::App(self.term(f)?, self.term(a)?)),
            SuspTerm::Abs(ann, b) => Arc::new(SuspTerm::Abs(ann.clone(), self.term(b)?)),
            SuspTerm::Susp(b, ol, nl, e) => {
                let b = self.term(b)?;
                let e = self.env(e)?;
                self.push(&b, *ol, *nl, &e)?
            }
        })
    }

    fn env(&mut self, e: &Arc<SuspEnv>) -> Result<Arc<SuspEnv>, RewriteError> {
        Ok(match &**e {
            SuspEnv::Nil => e.clone(),
            SuspEnv::Cons(et, tail) => {
                let term = self.term(&et.term)?;
                Arc::new(SuspEnv::Cons(EnvTerm { term, level: et.level }, self.env(tail)?))
            }
            SuspEnv::Merged(e1, nl1, ol2, e2) => {
                let a = self.env(e1)?;
                let b = self.env(e2)?;
                self.merge(&a, *nl1, *ol2, &b)?
            }
        })
    }

    fn push(&mut self, t: &Arc<SuspTerm>, ol: u64, nl: u64, e: &Arc<SuspEnv>) -> Result<Arc<SuspTerm>, RewriteError> {
        let stuck = || Arc::new(SuspTerm::Susp(t.clone(), ol, nl, e.clone()));
        match &**t {
            SuspTerm::Const(_) => {
                self.tick()?;
                Ok(t.clone())
            }
            SuspTerm::Meta(_) => {
                if self.mode == MetaMode::Logical {
                    self.tick()?;
                    Ok(t.clone())
                } else {
                    Ok(stuck())
                }
            }
            SuspTerm::Index(i) => match &**e {
                SuspEnv::Nil if ol == 0 => {
                    self.tick()?;
                    Ok(Arc::new(SuspTerm::Index(add(*i, nl)?)))
                }
                SuspEnv::Cons(et, _) if *i == 1 => {
                    self.tick()?;
                    self.push(&et.term, 0, sub(nl, et.level)?, &Arc::new(SuspEnv::Nil))
                }
                SuspEnv::Cons(_, tail) if *i > 1 => {
                    self.tick()?;
                    self.push(&Arc::new(SuspTerm::Index(i - 1)), sub(ol, 1)?, nl, tail)
                }
                _ => Ok(stuck()),
            },
            SuspTerm::App(a, b) => {
                self.tick()?;
                Ok(Arc::new(SuspTerm::App(self.push(a, ol, nl, e)?, self.push(b, ol, nl, e)?)))
            }
            SuspTerm::Abs(ann, b) => {
                self.tick()?;
                let nl1 = add(nl, 1)?;
                let env = Arc::new(SuspEnv::Cons(EnvTerm::new(SuspTerm::Index(1), nl1), e.clone()));
                Ok(Arc::new(SuspTerm::Abs(ann.clone(), self.push(b, add(ol, 1)?, nl1, &env)?)))
            }
            SuspTerm::Susp(inner, ol1, nl1, e1) => {
                self.tick()?;
                let merged = self.merge(e1, *nl1, ol, e)?;
                let ol_new = add(*ol1, monus(ol, *nl1))?;
                let nl_new = add(nl, monus(*nl1, ol))?;
                self.push(inner, ol_new, nl_new, &merged)
            }
        }
    }

    fn merge(&mut self, e1: &Arc<SuspEnv>, nl1: u64, ol2: u64, e2: &Arc<SuspEnv>) -> Result<Arc<SuspEnv>, RewriteError> {
        spine_merge(e1, nl1, ol2, e2, self)
    }
}

trait Merger {
    fn tick(&mut self) -> Result<(), RewriteError>;
    /// First component of an (m6) entry.
    fn head(&mut self, t: &Arc<SuspTerm>, ol: u64, nl: u64, e: &Arc<SuspEnv>) -> Result<Arc<SuspTerm>, RewriteError>;
}

impl Merger for Nf {
    fn tick(&mut self) -> Result<(), RewriteError> {
        Nf::tick(self)
    }

    fn head(&mut self, t: &Arc<SuspTerm>, ol: u64, nl: u64, e: &Arc<SuspEnv>) -> Result<Arc<SuspTerm>, RewriteError> {
        self.push(t, ol, nl, e)
    }
}

/// Leaves (m6) heads as suspensions.
struct Lazy;

impl Merger for Lazy {
    fn tick(&mut self) -> Result<(), RewriteError> {
        Ok(())
    }

    fn head(&mut self, t: &Arc<SuspTerm>, ol: u64, nl: u64, e: &Arc<SuspEnv>) -> Result<Arc<SuspTerm>, RewriteError> {
        Ok(Arc::new(SuspTerm::Susp(t.clone(), ol, nl, e.clone())))
    }
}

/// (m2)–(m6) along the spine of a merge whose components are already
/// simple.
fn spine_merge(
    e1: &Arc<SuspEnv>,
    nl1: u64,
    ol2: u64,
    e2: &Arc<SuspEnv>,
    m: &mut dyn Merger,
) -> Result<Arc<SuspEnv>, RewriteError> {
    if matches!(**e2, SuspEnv::Nil) && ol2 == 0 {
        m.tick()?;
        return Ok(e1.clone());
    }
    match (&**e1, &**e2) {
        (SuspEnv::Nil, _) if nl1 == 0 => {
            m.tick()?;
            Ok(e2.clone())
        }
        (SuspEnv::Nil, SuspEnv::Cons(_, tail)) => {
            m.tick()?;
            spine_merge(e1, nl1 - 1, sub(ol2, 1)?, tail, m)
        }
        (SuspEnv::Cons(et, _), SuspEnv::Cons(_, tail)) if nl1 > et.level => {
            m.tick()?;
            spine_merge(e1, nl1 - 1, sub(ol2, 1)?, tail, m)
        }
        (SuspEnv::Cons(et, rest), SuspEnv::Cons(h2, _)) if nl1 == et.level => {
            m.tick()?;
            let n = et.level;
            let term = m.head(&et.term, ol2, h2.level, e2)?;
            let level = add(h2.level, monus(n, ol2))?;
            let tail = spine_merge(rest, n, ol2, e2, m)?;
            Ok(Arc::new(SuspEnv::Cons(EnvTerm { term, level }, tail)))
        }
        _ => Ok(Arc::new(SuspEnv::Merged(e1.clone(), nl1, ol2, e2.clone()))),
    }
}

pub fn rm_normalize_term(t: &SuspTerm, mode: MetaMode) -> Result<SuspTerm, RewriteError> {
    Ok((*Nf::new(mode).term(&Arc::new(t.clone()))?).clone())
}

pub fn rm_normalize_env(e: &SuspEnv, mode: MetaMode) -> Result<SuspEnv, RewriteError> {
    Ok((*Nf::new(mode).env(&Arc::new(e.clone()))?).clone())
}

/// The rm-normal form `|x|`.
pub fn rm_normalize(x: &SuspExpr, mode: MetaMode) -> Result<SuspExpr, RewriteError> {
    Ok(match x {
        SuspExpr::Term(t) => rm_normalize_term(t, mode)?.into(),
        SuspExpr::Env(e) => rm_normalize_env(e, mode)?.into(),
        SuspExpr::EnvTerm(et) => SuspExpr::EnvTerm(EnvTerm::new(rm_normalize_term(&et.term, mode)?, et.level)),
    })
}

/// Number of rule applications the innermost-first normalizer performs.
pub fn rm_step_count(x: &SuspExpr, mode: MetaMode) -> Result<usize, RewriteError> {
    let mut nf = Nf::new(mode);
    match x {
        SuspExpr::Term(t) => nf.term(&Arc::new(t.clone())).map(|_| ()),
        SuspExpr::Env(e) => nf.env(&Arc::new(e.clone())).map(|_| ()),
        SuspExpr::EnvTerm(et) => nf.term(&et.term).map(|_| ()),
    }?;
    Ok(nf.steps)
}

fn lo_limits(record: bool) -> Limits {
    Limits { budget: None, fuel: RM_FUEL, record }
}

fn fuel_to_rewrite(e: SuspNormalizeError) -> RewriteError {
    match e {
        NormalizeError::Rewrite(r) => r,
        NormalizeError::FuelExhausted { steps, .. } | NormalizeError::BudgetExhausted { steps, .. } => {
            RewriteError::InternalFuelExhausted(steps)
        }
    }
}

/// Leftmost-outermost rm reduction, step by step.
pub fn rm_normalize_lo(x: &SuspExpr, mode: MetaMode, record: bool) -> Result<SuspReduction, RewriteError> {
    let sys = SuspSystem::new(RuleSet::rm(), mode);
    tree::normalize_lo(&sys, x.clone(), lo_limits(record)).map_err(fuel_to_rewrite)
}

/// Leftmost-outermost normalization using the reading rules only.
pub fn r_normalize(x: &SuspExpr, mode: MetaMode) -> Result<SuspExpr, RewriteError> {
    let sys = SuspSystem::new(RuleSet::reading(), mode);
    tree::normalize_lo(&sys, x.clone(), lo_limits(false))
        .map(|r| r.result)
        .map_err(fuel_to_rewrite)
}

/// Contract `steps` uniformly chosen redexes of `ruleset`, stopping early at a normal form.
pub fn random_derivation<R: Rng>(
    x: &SuspExpr,
    ruleset: RuleSet,
    mode: MetaMode,
    steps: usize,
    rng: &mut R,
) -> Result<(SuspExpr, usize), RewriteError> {
    let sys = SuspSystem::new(ruleset, mode);
    let mut cur = x.clone();
    for done in 0..steps {
        let redexes = enumerate_redexes(&cur, ruleset, mode);
        let Some((pos, rule)) = redexes.choose(rng).cloned() else {
            return Ok((cur, done));
        };
        cur = tree::apply_at(&sys, &cur, rule, &pos)?;
    }
    Ok((cur, steps))
}

/// rm-normalize by contracting a uniformly random redex at every step.
pub fn rm_normalize_random<R: Rng>(x: &SuspExpr, mode: MetaMode, rng: &mut R) -> Result<SuspExpr, RewriteError> {
    let (result, done) = random_derivation(x, RuleSet::rm(), mode, RM_FUEL, rng)?;
    if done == RM_FUEL && !enumerate_redexes(&result, RuleSet::rm(), mode).is_empty() {
        return Err(RewriteError::InternalFuelExhausted(done));
    }
    Ok(result)
}

/// Simplify the spine of `e` with (m2)–(m6) only; entry terms are left alone.
pub fn env_to_simple(e: &SuspEnv) -> SuspEnv {
    fn go(e: &Arc<SuspEnv>) -> Result<Arc<SuspEnv>, RewriteError> {
        Ok(match &**e {
            SuspEnv::Nil => e.clone(),
            SuspEnv::Cons(et, tail) => Arc::new(SuspEnv::Cons(et.clone(), go(tail)?)),
            SuspEnv::Merged(e1, nl1, ol2, e2) => spine_merge(
                &go(e1)?,
                *nl1,
                *ol2,
                &go(e2)?,
                &mut Lazy,
            )?,
        })
    }
    // Without pushing suspensions, no level ever grows, so the only
    // possible failure is an ill-formed merge, which is left in place.
    go(&Arc::new(e.clone())).map(|e| (*e).clone()).unwrap_or_else(|_| e.clone())
}

/// Apply (m2)–(m6) everywhere, including inside entry terms and suspensions.
pub fn merge_normalize(x: &SuspExpr) -> SuspExpr {
    fn term(t: &Arc<SuspTerm>) -> Arc<SuspTerm> {
        match &**t {
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => t.clone(),
            SuspTerm::App(f, a) => Arc::new(SuspTerm::App(term(f), term(a))),
            SuspTerm::Abs(ann, b) => Arc::new(SuspTerm::Abs(ann.clone(), term(b))),
            SuspTerm::Susp(b, ol, nl, e) => Arc::new(SuspTerm::Susp(term(b), *ol, *nl, env(e))),
        }
    }
    fn env(e: &Arc<SuspEnv>) -> Arc<SuspEnv> {
        match &**e {
            SuspEnv::Nil => e.clone(),
            SuspEnv::Cons(et, tail) => {
                Arc::new(SuspEnv::Cons(EnvTerm { term: term(&et.term), level: et.level }, env(tail)))
            }
            SuspEnv::Merged(e1, nl1, ol2, e2) => {
                let (a, b) = (env(e1), env(e2));
                spine_merge(&a, *nl1, *ol2, &b, &mut Lazy)
                .unwrap_or_else(|_| Arc::new(SuspEnv::Merged(a.clone(), *nl1, *ol2, b.clone())))
            }
        }
    }
    match x {
        SuspExpr::Term(t) => (*term(&Arc::new(t.clone()))).clone().into(),
        SuspExpr::Env(e) => (*env(&Arc::new(e.clone()))).clone().into(),
        SuspExpr::EnvTerm(et) => SuspExpr::EnvTerm(EnvTerm { term: term(&et.term), level: et.level }),
    }
}

/// Leftmost-outermost normalization with βs and the rm rules. Only βs
/// steps count toward `budget`; every step is recorded.
pub fn full_normalize(x: &SuspExpr, budget: usize, mode: MetaMode) -> Result<SuspReduction, SuspNormalizeError> {
    full_normalize_with(x, mode, Limits { budget: Some(budget), fuel: RM_FUEL, record: true })
}

pub fn full_normalize_with(x: &SuspExpr, mode: MetaMode, limits: Limits) -> Result<SuspReduction, SuspNormalizeError> {
    tree::normalize_lo(&SuspSystem::new(RuleSet::all(), mode), x.clone(), limits)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::lambda::{db_shift, DbTerm};

    fn t(s: &str) -> SuspExpr {
        SuspExpr::parse(s).unwrap()
    }

    fn g() -> MetaMode {
        MetaMode::Graftable
    }

    #[test]
    fn documented_rm_examples() {
        assert_eq!(rm_normalize(&t("[c:c, 1, 5, (c:d, 0) :: nil]"), g()).unwrap(), t("c:c"));
        assert_eq!(rm_normalize(&t("[#1, 1, 0, (c:c, 0) :: nil]"), g()).unwrap(), t("c:c"));
        let shifted = rm_normalize(&t("[\\ #2, 0, 1, nil]"), g()).unwrap();
        let oracle = db_shift(&DbTerm::parse("\\ #2").unwrap(), 1, 0).unwrap();
        assert_eq!(shifted.as_term().unwrap().to_db(), Some(oracle));
        assert_eq!(shifted, t("\\ #3"));
    }

    #[test]
    fn fast_and_stepwise_agree() {
        for s in [
            "[[#2, 0, 1, nil], 0, 1, nil]",
            "[\\ (#1 [#2, 1, 1, (?x, 1) :: nil]), 1, 0, (c:a, 0) :: nil]",
            "[[?t, 1, 1, (?s, 0) :: nil], 2, 1, (#1, 1) :: (c:b, 0) :: nil]",
            "{(?t, 0) :: nil, 0, 2, (?a, 1) :: (?b, 0) :: nil}",
        ] {
            let x = t(s);
            for mode in [MetaMode::Graftable, MetaMode::Logical] {
                let fast = rm_normalize(&x, mode).unwrap();
                let slow = rm_normalize_lo(&x, mode, false).unwrap().result;
                assert_eq!(fast, slow, "{s}");
            }
        }
    }

    #[test]
    fn random_strategy_reaches_the_same_form() {
        let x = t("[[\\ (#2 #1), 1, 1, (?a, 1) :: nil], 1, 2, ([#1, 0, 1, nil], 1) :: nil]");
        let want = rm_normalize(&x, g()).unwrap();
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(rm_normalize_random(&x, g(), &mut rng).unwrap(), want);
        }
    }

    #[test]
    fn env_simplification_examples() {
        let e = |s: &str| SuspEnv::parse(s).unwrap();
        assert_eq!(env_to_simple(&e("{nil, 0, 1, (c:c, 0) :: nil}")), e("(c:c, 0) :: nil"));
        assert_eq!(
            env_to_simple(&e("{(?t, 0) :: nil, 0, 2, (?a, 1) :: (?b, 0) :: nil}")),
            e("([?t, 2, 1, (?a, 1) :: (?b, 0) :: nil], 1) :: (?a, 1) :: (?b, 0) :: nil")
        );
        assert_eq!(env_to_simple(&e("{nil, 1, 1, (c:c, 0) :: nil}")), e("nil"));
    }

    #[test]
    fn full_normalization() {
        let r = full_normalize(&t("(\\ #1 c:c)"), DEFAULT_BUDGET, g()).unwrap();
        assert_eq!(r.result, t("c:c"));
        assert_eq!(r.counted, 1);
        assert_eq!(r.trace.len(), r.steps);
        let omega = t("(\\ (#1 #1) \\ (#1 #1))");
        match full_normalize(&omega, 50, g()) {
            Err(NormalizeError::BudgetExhausted { steps, .. }) => assert_eq!(steps, 50),
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn reading_rules_suffice_for_simple_environments() {
        let x = t("[\\ (#1 #2), 1, 0, (\\ #1, 0) :: nil]");
        assert_eq!(r_normalize(&x, g()).unwrap(), rm_normalize(&x, g()).unwrap());
    }

    #[test]
    fn step_counting() {
        assert_eq!(rm_step_count(&t("c:c"), g()).unwrap(), 0);
        assert_eq!(rm_step_count(&t("[#1, 1, 0, (c:c, 0) :: nil]"), g()).unwrap(), 2);
    }
}
