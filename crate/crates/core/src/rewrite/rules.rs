use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::susp::{monus, EnvTerm, SuspEnv, SuspExpr, SuspTerm};
use crate::tree::{self, Position, RewriteError, RewriteSystem, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    BetaS,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
}

impl RuleId {
    pub const ALL: [RuleId; 14] = [
        RuleId::BetaS,
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::M1,
        RuleId::M2,
        RuleId::M3,
        RuleId::M4,
        RuleId::M5,
        RuleId::M6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::BetaS => "beta_s",
            RuleId::R1 => "r1",
            RuleId::R2 => "r2",
            RuleId::R3 => "r3",
            RuleId::R4 => "r4",
            RuleId::R5 => "r5",
            RuleId::R6 => "r6",
            RuleId::R7 => "r7",
            RuleId::M1 => "m1",
            RuleId::M2 => "m2",
            RuleId::M3 => "m3",
            RuleId::M4 => "m4",
            RuleId::M5 => "m5",
            RuleId::M6 => "m6",
        }
    }

    pub fn is_reading(self) -> bool {
        matches!(
            self,
            RuleId::R1 | RuleId::R2 | RuleId::R3 | RuleId::R4 | RuleId::R5 | RuleId::R6 | RuleId::R7
        )
    }

    pub fn is_merging(self) -> bool {
        matches!(
            self,
            RuleId::M1 | RuleId::M2 | RuleId::M3 | RuleId::M4 | RuleId::M5 | RuleId::M6
        )
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A subset of the rules, kept in figure order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet(u16);

impl RuleSet {
    pub const EMPTY: RuleSet = RuleSet(0);

    pub fn of(rules: &[RuleId]) -> Self {
        RuleSet(rules.iter().fold(0, |acc, r| acc | r.bit()))
    }

    /// Reading rules (r1)–(r7).
    pub fn reading() -> Self {
        Self::of(&[RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7])
    }

    /// Merging rules (m1)–(m6).
    pub fn merging() -> Self {
        Self::of(&[RuleId::M1, RuleId::M2, RuleId::M3, RuleId::M4, RuleId::M5, RuleId::M6])
    }

    pub fn rm() -> Self {
        Self::reading().union(Self::merging())
    }

    pub fn beta() -> Self {
        Self::of(&[RuleId::BetaS])
    }

    pub fn all() -> Self {
        Self::rm().union(Self::beta())
    }

    pub fn union(self, other: RuleSet) -> Self {
        RuleSet(self.0 | other.0)
    }

    pub fn contains(self, r: RuleId) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = RuleId> {
        RuleId::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

/// How meta variables interact with suspensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MetaMode {
    /// Suspensions stay on meta variables; (r7) is disabled.
    #[default]
    Graftable,
    /// (r7) erases suspensions over meta variables.
    Logical,
}

fn add(a: u64, b: u64) -> Result<u64, RewriteError> {
    a.checked_add(b).ok_or(RewriteError::LevelsOverflow)
}

fn sub(a: u64, b: u64) -> Result<u64, RewriteError> {
    a.checked_sub(b).ok_or(RewriteError::LevelsOverflow)
}

/// Whether `rule`'s left-hand side and side conditions match `x` at its root.
pub fn rule_matches(rule: RuleId, x: &SuspExpr, mode: MetaMode) -> bool {
    use SuspTerm as T;
    match (rule, x) {
        (RuleId::BetaS, SuspExpr::Term(T::App(f, _))) => matches!(**f, T::Abs(..)),
        (RuleId::M1, SuspExpr::Term(T::Susp(t, ..))) => matches!(**t, T::Susp(..)),
        (r, SuspExpr::Term(T::Susp(t, ol, _, e))) => match (r, &**t, &**e) {
            (RuleId::R1, T::Const(_), _) => true,
            (RuleId::R2, T::Index(_), SuspEnv::Nil) => *ol == 0,
            (RuleId::R3, T::Index(1), SuspEnv::Cons(..)) => true,
            (RuleId::R4, T::Index(i), SuspEnv::Cons(..)) => *i > 1,
            (RuleId::R5, T::App(..), _) => true,
            (RuleId::R6, T::Abs(..), _) => true,
            (RuleId::R7, T::Meta(_), _) => mode == MetaMode::Logical,
            _ => false,
        },
        (r, SuspExpr::Env(SuspEnv::Merged(e1, nl1, ol2, e2))) => match (r, &**e1, &**e2) {
            (RuleId::M2, _, SuspEnv::Nil) => *ol2 == 0,
            (RuleId::M3, SuspEnv::Nil, _) => *nl1 == 0,
            (RuleId::M4, SuspEnv::Nil, SuspEnv::Cons(..)) => *nl1 >= 1,
            (RuleId::M5, SuspEnv::Cons(et, _), SuspEnv::Cons(..)) => *nl1 > et.level,
            (RuleId::M6, SuspEnv::Cons(et, _), SuspEnv::Cons(..)) => *nl1 == et.level,
            _ => false,
        },
        _ => false,
    }
}

/// Instantiate the right-hand side of `rule` at the root of `x`.
pub fn contract_root(rule: RuleId, x: &SuspExpr, mode: MetaMode) -> Result<Option<SuspExpr>, RewriteError> {
    use SuspTerm as T;
    if !rule_matches(rule, x, mode) {
        return Ok(None);
    }
    let out = match x {
        SuspExpr::Term(T::App(f, a)) => match &**f {
            T::Abs(_, body) => T::Susp(body.clone(), 1, 0, Arc::new(SuspEnv::Cons(EnvTerm { term: a.clone(), level: 0 }, Arc::new(SuspEnv::Nil)))).into(),
            _ => unreachable!(),
        },
        SuspExpr::Term(T::Susp(t, ol, nl, e)) => {
            let (ol, nl) = (*ol, *nl);
            match (rule, &**t) {
                (RuleId::R1, _) | (RuleId::R7, _) => (**t).clone().into(),
                (RuleId::R2, T::Index(i)) => T::Index(add(*i, nl)?).into(),
                (RuleId::R3, _) => match &**e {
                    SuspEnv::Cons(et, _) => T::Susp(et.term.clone(), 0, sub(nl, et.level)?, Arc::new(SuspEnv::Nil)).into(),
                    _ => unreachable!(),
                },
                (RuleId::R4, T::Index(i)) => match &**e {
                    SuspEnv::Cons(_, tail) => T::Susp(Arc::new(T::Index(i - 1)), sub(ol, 1)?, nl, tail.clone()).into(),
                    _ => unreachable!(),
                },
                (RuleId::R5, T::App(t1, t2)) => T::App(
                    Arc::new(T::Susp(t1.clone(), ol, nl, e.clone())),
                    Arc::new(T::Susp(t2.clone(), ol, nl, e.clone())),
                )
                .into(),
                (RuleId::R6, T::Abs(ann, body)) => {
                    let nl1 = add(nl, 1)?;
                    let env = SuspEnv::Cons(EnvTerm::new(T::Index(1), nl1), e.clone());
                    T::Abs(ann.clone(), Arc::new(T::Susp(body.clone(), add(ol, 1)?, nl1, Arc::new(env)))).into()
                }
                (RuleId::M1, T::Susp(inner, ol1, nl1, e1)) => {
                    let ol_new = add(*ol1, monus(ol, *nl1))?;
                    let nl_new = add(nl, monus(*nl1, ol))?;
                    let merged = SuspEnv::Merged(e1.clone(), *nl1, ol, e.clone());
                    T::Susp(inner.clone(), ol_new, nl_new, Arc::new(merged)).into()
                }
                _ => unreachable!(),
            }
        }
        SuspExpr::Env(SuspEnv::Merged(e1, nl1, ol2, e2)) => {
            let (nl1, ol2) = (*nl1, *ol2);
            match rule {
                RuleId::M2 => (**e1).clone().into(),
                RuleId::M3 => (**e2).clone().into(),
                RuleId::M4 | RuleId::M5 => match &**e2 {
                    SuspEnv::Cons(_, tail) => {
                        SuspEnv::Merged(e1.clone(), sub(nl1, 1)?, sub(ol2, 1)?, tail.clone()).into()
                    }
                    _ => unreachable!(),
                },
                RuleId::M6 => match (&**e1, &**e2) {
                    (SuspEnv::Cons(et, rest), SuspEnv::Cons(head2, _)) => {
                        let n = et.level;
                        let l = head2.level;
                        let head = T::Susp(et.term.clone(), ol2, l, e2.clone());
                        let level = add(l, monus(n, ol2))?;
                        let tail = SuspEnv::Merged(rest.clone(), n, ol2, e2.clone());
                        SuspEnv::Cons(EnvTerm { term: Arc::new(head), level }, Arc::new(tail)).into()
                    }
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            }
        }
        _ => unreachable!(),
    };
    Ok(Some(out))
}

/// A rule set under a meta-variable mode, usable with the generic driver.
#[derive(Debug, Clone, Copy)]
pub struct SuspSystem {
    pub ruleset: RuleSet,
    pub mode: MetaMode,
}

impl SuspSystem {
    pub fn new(ruleset: RuleSet, mode: MetaMode) -> Self {
        SuspSystem { ruleset, mode }
    }
}

impl RewriteSystem for SuspSystem {
    type Expr = SuspExpr;
    type Rule = RuleId;

    fn rules(&self) -> Vec<RuleId> {
        self.ruleset.iter().filter(|r| *r != RuleId::R7 || self.mode == MetaMode::Logical).collect()
    }

    fn rule_name(&self, rule: RuleId) -> &'static str {
        rule.name()
    }

    fn contract(&self, rule: RuleId, x: &SuspExpr) -> Result<Option<SuspExpr>, RewriteError> {
        if !self.ruleset.contains(rule) {
            return Ok(None);
        }
        contract_root(rule, x, self.mode)
    }

    fn counts_toward_budget(&self, rule: RuleId) -> bool {
        rule == RuleId::BetaS
    }

    fn matching_rules(&self, x: &SuspExpr) -> Vec<RuleId> {
        let candidates: &[RuleId] = match x {
            SuspExpr::Term(SuspTerm::App(..)) => &[RuleId::BetaS],
            SuspExpr::Term(SuspTerm::Susp(..)) => &[
                RuleId::R1,
                RuleId::R2,
                RuleId::R3,
                RuleId::R4,
                RuleId::R5,
                RuleId::R6,
                RuleId::R7,
                RuleId::M1,
            ],
            SuspExpr::Env(SuspEnv::Merged(..)) => &[RuleId::M2, RuleId::M3, RuleId::M4, RuleId::M5, RuleId::M6],
            _ => &[],
        };
        candidates
            .iter()
            .copied()
            .filter(|r| self.ruleset.contains(*r) && rule_matches(*r, x, self.mode))
            .collect()
    }
}

/// Rules whose left-hand side and side conditions match at `pos`, in figure order.
pub fn applicable_rules(x: &SuspExpr, pos: &Position, mode: MetaMode) -> Result<Vec<RuleId>, RewriteError> {
    let sub = x.at(pos).ok_or_else(|| RewriteError::BadPosition(pos.clone()))?;
    Ok(SuspSystem::new(RuleSet::all(), mode).matching_rules(&sub))
}

pub fn apply_rule(x: &SuspExpr, rule: RuleId, pos: &Position, mode: MetaMode) -> Result<SuspExpr, RewriteError> {
    tree::apply_at(&SuspSystem::new(RuleSet::all(), mode), x, rule, pos)
}

/// All matches of the given rules, in preorder with figure order per position.
pub fn enumerate_redexes(x: &SuspExpr, ruleset: RuleSet, mode: MetaMode) -> Vec<(Position, RuleId)> {
    tree::redexes(&SuspSystem::new(ruleset, mode), x)
}
