//! Positions, generic tree access and a small rewriting driver shared by all
//! calculi in the crate.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Path of 0-based child ordinals from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, i: usize) -> Self {
        let mut p = self.0.clone();
        p.push(i);
        Position(p)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strict_prefix_of(&self, other: &Position) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("/"))
    }
}

impl FromStr for Position {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Position::root());
        }
        s.split('/').map(str::parse).collect::<Result<Vec<_>, _>>().map(Position)
    }
}

/// Uniform child access used by position lookup and redex enumeration.
pub trait Tree: Clone {
    fn children(&self) -> Vec<Self>;
    /// Rebuild this node with replaced children (same arity as `children`).
    fn with_children(&self, kids: Vec<Self>) -> Self;

    fn at(&self, pos: &Position) -> Option<Self> {
        let mut cur = self.clone();
        for &i in &pos.0 {
            cur = cur.children().into_iter().nth(i)?;
        }
        Some(cur)
    }

    fn replace_at(&self, pos: &Position, new: Self) -> Option<Self> {
        fn go<T: Tree>(t: &T, path: &[usize], new: T) -> Option<T> {
            match path.split_first() {
                None => Some(new),
                Some((&i, rest)) => {
                    let mut kids = t.children();
                    let k = kids.get(i)?;
                    kids[i] = go(k, rest, new)?;
                    Some(t.with_children(kids))
                }
            }
        }
        go(self, &pos.0, new)
    }

    /// All positions in preorder.
    fn positions(&self) -> Vec<Position> {
        fn go<T: Tree>(t: &T, here: &mut Vec<usize>, out: &mut Vec<Position>) {
            out.push(Position(here.clone()));
            for (i, k) in t.children().iter().enumerate() {
                here.push(i);
                go(k, here, out);
                here.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    fn node_count(&self) -> usize {
        1 + self.children().iter().map(Tree::node_count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("no subexpression at position `{0}`")]
    BadPosition(Position),
    #[error("rule {rule} does not apply at position `{pos}`")]
    RuleNotApplicable { rule: String, pos: Position },
    #[error("embedding level arithmetic out of range")]
    LevelsOverflow,
    #[error("internal fuel exhausted after {0} steps")]
    InternalFuelExhausted(usize),
    #[error("ill-formed input: {0}")]
    IllFormed(String),
}

/// A rule set over one expression type.
pub trait RewriteSystem {
    type Expr: Tree + PartialEq + fmt::Debug;
    type Rule: Copy + Eq + fmt::Debug;

    /// Enabled rules in their canonical order.
    fn rules(&self) -> Vec<Self::Rule>;
    fn rule_name(&self, rule: Self::Rule) -> &'static str;
    /// Contract `x` at its root; `Ok(None)` when the rule does not match.
    fn contract(&self, rule: Self::Rule, x: &Self::Expr)
        -> Result<Option<Self::Expr>, RewriteError>;
    /// Whether a step with this rule counts toward the user budget.
    fn counts_toward_budget(&self, rule: Self::Rule) -> bool;

    fn matching_rules(&self, x: &Self::Expr) -> Vec<Self::Rule> {
        self.rules()
            .into_iter()
            .filter(|&r| matches!(self.contract(r, x), Ok(Some(_)) | Err(_)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep<E, R> {
    pub step_index: usize,
    pub rule: R,
    pub pos: Position,
    pub before: E,
    pub after: E,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormalizeError<E: fmt::Debug, R: fmt::Debug> {
    #[error("step budget exhausted after {steps} counted steps")]
    BudgetExhausted { partial: E, steps: usize, trace: Vec<TraceStep<E, R>> },
    #[error("fuel exhausted after {steps} steps")]
    FuelExhausted { partial: E, steps: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Every match in preorder, rules in canonical order within a position.
pub fn redexes<S: RewriteSystem>(sys: &S, x: &S::Expr) -> Vec<(Position, S::Rule)> {
    let mut out = Vec::new();
    for p in x.positions() {
        let sub = x.at(&p).expect("position from enumeration");
        for r in sys.matching_rules(&sub) {
            out.push((p.clone(), r));
        }
    }
    out
}

/// The first redex in preorder (leftmost-outermost).
pub fn first_redex<S: RewriteSystem>(sys: &S, x: &S::Expr) -> Option<(Position, S::Rule)> {
    fn go<S: RewriteSystem>(sys: &S, t: &S::Expr, here: &mut Vec<usize>) -> Option<(Position, S::Rule)> {
        if let Some(&r) = sys.matching_rules(t).first() {
            return Some((Position(here.clone()), r));
        }
        for (i, k) in t.children().iter().enumerate() {
            here.push(i);
            if let Some(hit) = go(sys, k, here) {
                return Some(hit);
            }
            here.pop();
        }
        None
    }
    go(sys, x, &mut Vec::new())
}

pub fn apply_at<S: RewriteSystem>(
    sys: &S,
    x: &S::Expr,
    rule: S::Rule,
    pos: &Position,
) -> Result<S::Expr, RewriteError> {
    let sub = x.at(pos).ok_or_else(|| RewriteError::BadPosition(pos.clone()))?;
    let new = sys.contract(rule, &sub)?.ok_or_else(|| RewriteError::RuleNotApplicable {
        rule: sys.rule_name(rule).to_string(),
        pos: pos.clone(),
    })?;
    Ok(x.replace_at(pos, new).expect("position was valid"))
}

/// Limits for a reduction run.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of budget-counted steps.
    pub budget: Option<usize>,
    /// Maximum number of steps of any kind.
    pub fuel: usize,
    pub record: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<E, R> {
    pub result: E,
    pub steps: usize,
    pub counted: usize,
    pub trace: Vec<TraceStep<E, R>>,
}

/// Repeatedly contract the redex chosen by `select` until none remains.
pub type NormalizeResult<E, R> = Result<Reduction<E, R>, NormalizeError<E, R>>;

pub fn drive<S, F>(
    sys: &S,
    x: S::Expr,
    limits: Limits,
    mut select: F,
) -> NormalizeResult<S::Expr, S::Rule>
where
    S: RewriteSystem,
    F: FnMut(&S::Expr) -> Option<(Position, S::Rule)>,
{
    let mut cur = x;
    let mut trace = Vec::new();
    let (mut steps, mut counted) = (0usize, 0usize);
    while let Some((pos, rule)) = select(&cur) {
        let counts = sys.counts_toward_budget(rule);
        if counts && limits.budget.is_some_and(|b| counted >= b) {
            return Err(NormalizeError::BudgetExhausted { partial: cur, steps: counted, trace });
        }
        if steps >= limits.fuel {
            return Err(NormalizeError::FuelExhausted { partial: cur, steps });
        }
        let next = apply_at(sys, &cur, rule, &pos)?;
        if limits.record {
            trace.push(TraceStep {
                step_index: steps,
                rule,
                pos,
                before: cur,
                after: next.clone(),
            });
        }
        cur = next;
        steps += 1;
        if counts {
            counted += 1;
        }
    }
    Ok(Reduction { result: cur, steps, counted, trace })
}

/// Leftmost-outermost normalization.
pub fn normalize_lo<S: RewriteSystem>(
    sys: &S,
    x: S::Expr,
    limits: Limits,
) -> NormalizeResult<S::Expr, S::Rule> {
    drive(sys, x, limits, |e| first_redex(sys, e))
}
