//! Mellies' non-terminating λσ reduction of a strongly normalizing term,
//! and the corresponding run in the suspension calculus.

use thiserror::Error;

use crate::rewrite::{full_normalize, MetaMode, SuspNormalizeError, SuspReduction};
use crate::susp::{SuspEnv, SuspExpr, SuspTerm};
use crate::tree::{Position, RewriteError, TraceStep, Tree};

use super::sigma::{sigma_step, SigExpr, SigRule, SigSub, SigTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    /// Term size after each cycle.
    pub sizes: Vec<usize>,
    /// Where `X ∘ (↑ ∘ (b[X] · id))` was found after each cycle.
    pub pattern_positions: Vec<Position>,
    pub strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MelliesError {
    #[error("cycle pattern not found after cycle {cycle}")]
    PatternNotFound { cycle: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

pub type MelliesTrace = Vec<TraceStep<SigExpr, SigRule>>;

struct Run {
    cur: SigExpr,
    trace: MelliesTrace,
}

impl Run {
    fn step(&mut self, rule: SigRule, pos: Position) -> Result<(), RewriteError> {
        let next = sigma_step(&self.cur, &pos, rule)?;
        let before = std::mem::replace(&mut self.cur, next.clone());
        self.trace.push(TraceStep { step_index: self.trace.len(), rule, pos, before, after: next });
        Ok(())
    }
}

fn pos(base: &Position, rel: &[usize]) -> Position {
    let mut p = base.clone();
    p.0.extend_from_slice(rel);
    p
}

/// `X ∘ (↑ ∘ (b[X] · id))` for some `X`.
fn is_cycle_pattern(x: &SigExpr, b: &SigTerm) -> bool {
    let SigExpr::Sub(SigSub::Comp(x1, rest)) = x else { return false };
    let SigSub::Comp(shift, cons) = &**rest else { return false };
    let SigSub::Cons(head, tail) = &**cons else { return false };
    **shift == SigSub::Shift
        && **tail == SigSub::Id
        && matches!(&**head, SigTerm::Closure(b2, x2) if **b2 == *b && x2 == x1)
}

/// `((λa) b · id) ∘ (↑ ∘ (b[Y] · id))` for some `Y`: where a cycle can start.
fn is_cycle_start(x: &SigExpr, a: &SigTerm, b: &SigTerm) -> bool {
    let SigExpr::Sub(SigSub::Comp(s, rest)) = x else { return false };
    let redex = SigTerm::app(SigTerm::abs(a.clone()), b.clone());
    **s == SigSub::cons(redex, SigSub::Id)
        && matches!(&**rest, SigSub::Comp(shift, cons) if **shift == SigSub::Shift
            && matches!(&**cons, SigSub::Cons(h, t) if **t == SigSub::Id
                && matches!(&**h, SigTerm::Closure(b2, _) if **b2 == *b)))
}

/// Unfold Mellies' reduction of `((λa) b)[s]` with `s = ((λa) b) · id`.
///
/// Six opening steps expose `s ∘ (↑ ∘ (b[s] · id))`. Each cycle is the
/// eight steps Map, IdL, App, Abs, Beta, Clos, Map, Ass, ending in a fresh
/// `s' ∘ (↑ ∘ (b[s'] · id))`. Between cycles, rounds of Ass, Map and Clos
/// push the composition inward until `s` meets the new shift again.
pub fn mellies_unfold(a: &SigTerm, b: &SigTerm, cycles: usize) -> Result<(MelliesTrace, GrowthReport), MelliesError> {
    let redex = SigTerm::app(SigTerm::abs(a.clone()), b.clone());
    let s = SigSub::cons(redex.clone(), SigSub::Id);
    let mut run = Run { cur: SigExpr::Term(SigTerm::closure(redex, s)), trace: Vec::new() };
    let root = Position::root();
    for (rule, p) in [
        (SigRule::App, vec![]),
        (SigRule::Abs, vec![0]),
        (SigRule::Beta, vec![]),
        (SigRule::Clos, vec![]),
        (SigRule::Map, vec![1]),
        (SigRule::Ass, vec![1, 1]),
    ] {
        run.step(rule, pos(&root, &p))?;
    }
    let mut start = Position(vec![1, 1]);
    let mut report = GrowthReport { sizes: Vec::new(), pattern_positions: Vec::new(), strictly_increasing: true };
    for cycle in 1..=cycles {
        if !run.cur.at(&start).is_some_and(|x| is_cycle_start(&x, a, b)) {
            return Err(MelliesError::PatternNotFound { cycle: cycle - 1 });
        }
        for (rule, p) in [
            (SigRule::Map, vec![]),
            (SigRule::IdL, vec![1]),
            (SigRule::App, vec![0]),
            (SigRule::Abs, vec![0, 0]),
            (SigRule::Beta, vec![0]),
            (SigRule::Clos, vec![0]),
            (SigRule::Map, vec![0, 1]),
            (SigRule::Ass, vec![0, 1, 1]),
        ] {
            run.step(rule, pos(&start, &p))?;
        }
        let found = pos(&start, &[0, 1, 1]);
        if !run.cur.at(&found).is_some_and(|x| is_cycle_pattern(&x, b)) {
            return Err(MelliesError::PatternNotFound { cycle });
        }
        let size = run.cur.node_count();
        if report.sizes.last().is_some_and(|&prev| prev >= size) {
            report.strictly_increasing = false;
        }
        report.sizes.push(size);
        report.pattern_positions.push(found.clone());
        if cycle < cycles {
            // Peel `↑ ∘ (b[Y] · id)` layers off the left operand until the
            // original `s` is exposed; there is one layer per cycle so far.
            start = found;
            for _ in 0..cycle {
                if run.cur.at(&start).is_some_and(|x| is_cycle_start(&x, a, b)) {
                    break;
                }
                run.step(SigRule::Ass, start.clone())?;
                run.step(SigRule::Map, pos(&start, &[1]))?;
                run.step(SigRule::Clos, pos(&start, &[1, 0]))?;
                start = pos(&start, &[1, 0, 1]);
            }
        }
    }
    Ok((run.trace, report))
}

/// `⟦(λa) b, ol, nl, e⟧`
pub fn mellies_susp_start(a: &SuspTerm, b: &SuspTerm, ol: u64, nl: u64, e: &SuspEnv) -> SuspTerm {
    SuspTerm::susp(SuspTerm::app(SuspTerm::abs(a.clone()), b.clone()), ol, nl, e.clone())
}

/// `⟦a, ol+1, nl, (⟦b, ol, nl, e⟧, nl) :: e⟧`
pub fn mellies_susp_fixed_form(a: &SuspTerm, b: &SuspTerm, ol: u64, nl: u64, e: &SuspEnv) -> SuspTerm {
    let arg = SuspTerm::susp(b.clone(), ol, nl, e.clone());
    SuspTerm::susp(a.clone(), ol + 1, nl, SuspEnv::cons(arg, nl, e.clone()))
}

/// Fully normalize the suspension start with graftable metas.
pub fn mellies_susp_replay(a: &SuspTerm, b: &SuspTerm, ol: u64, nl: u64, e: &SuspEnv) -> Result<SuspReduction, SuspNormalizeError> {
    full_normalize(&SuspExpr::Term(mellies_susp_start(a, b, ol, nl, e)), 100, MetaMode::Graftable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{enumerate_redexes, RuleSet};

    fn metas() -> (SigTerm, SigTerm) {
        (SigTerm::meta("a"), SigTerm::meta("b"))
    }

    #[test]
    fn opening_matches_the_displayed_reduction() {
        let (a, b) = metas();
        let (trace, _) = mellies_unfold(&a, &b, 1).unwrap();
        let rules: Vec<_> = trace.iter().take(6).map(|s| s.rule).collect();
        use SigRule::*;
        assert_eq!(rules, [App, Abs, Beta, Clos, Map, Ass]);
        assert_eq!(
            trace[5].after.to_string(),
            "?a[1[?b[(\\ ?a) ?b . id] . id] . (((\\ ?a) ?b . id) o (! o (?b[(\\ ?a) ?b . id] . id)))]"
        );
        let cycle: Vec<_> = trace[6..14].iter().map(|s| s.rule).collect();
        assert_eq!(cycle, [Map, IdL, App, Abs, Beta, Clos, Map, Ass]);
    }

    #[test]
    fn one_cycle_relocates_the_pattern() {
        let (a, b) = metas();
        let (trace, report) = mellies_unfold(&a, &b, 1).unwrap();
        let last = &trace.last().unwrap().after;
        let found = last.at(&report.pattern_positions[0]).unwrap();
        let SigExpr::Sub(SigSub::Comp(x, _)) = &found else { panic!() };
        let s = SigSub::cons(SigTerm::app(SigTerm::abs(a), b.clone()), SigSub::Id);
        let s1 = SigSub::comp(SigSub::Shift, SigSub::cons(SigTerm::closure(b, s), SigSub::Id));
        assert_eq!(**x, s1);
    }

    #[test]
    fn sizes_grow() {
        let (a, b) = metas();
        let (_, report) = mellies_unfold(&a, &b, 4).unwrap();
        assert_eq!(report.sizes.len(), 4);
        assert!(report.strictly_increasing);
    }

    #[test]
    fn suspension_replay_stops() {
        let (a, b) = (SuspTerm::meta("a"), SuspTerm::meta("b"));
        let e = SuspEnv::cons(SuspTerm::constant("k"), 0, SuspEnv::Nil);
        let r = mellies_susp_replay(&a, &b, 1, 1, &e).unwrap();
        let want = mellies_susp_fixed_form(&a, &b, 1, 1, &e);
        assert_eq!(r.result, SuspExpr::Term(want));
        assert!(enumerate_redexes(&r.result, RuleSet::all(), MetaMode::Graftable).is_empty());
    }
}
