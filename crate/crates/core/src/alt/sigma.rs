//! The λσ-calculus.
//!
//! ```text
//! term := \ term | postfix+
//! postfix := atom ( [ sub ] )*
//! atom := 1 | ?IDENT | ( term )
//! sub := item ( o item )*          composition, left-associative
//! item := id | ! | postfix+ . item | ( sub )
//! ```
//! `!` is the shift, `a . s` the cons and `s o t` the composition.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::susp::{monus, Name, SuspEnv, SuspTerm};
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::tree::{self, Limits, NormalizeError, Position, RewriteError, RewriteSystem, TraceStep, Tree};

use super::ALT_FUEL;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigTerm {
    One,
    Meta(Name),
    App(Arc<SigTerm>, Arc<SigTerm>),
    Abs(Arc<SigTerm>),
    Closure(Arc<SigTerm>, Arc<SigSub>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigSub {
    Id,
    Shift,
    Cons(Arc<SigTerm>, Arc<SigSub>),
    Comp(Arc<SigSub>, Arc<SigSub>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigExpr {
    Term(SigTerm),
    Sub(SigSub),
}

impl SigTerm {
    pub fn meta(name: &str) -> Self {
        SigTerm::Meta(name.into())
    }

    pub fn app(f: SigTerm, a: SigTerm) -> Self {
        SigTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn abs(b: SigTerm) -> Self {
        SigTerm::Abs(Arc::new(b))
    }

    pub fn closure(a: SigTerm, s: SigSub) -> Self {
        SigTerm::Closure(Arc::new(a), Arc::new(s))
    }

    /// `1[↑^(n-1)]`, with the shifts nested to the left.
    pub fn index(n: u64) -> Self {
        match n {
            0 | 1 => SigTerm::One,
            _ => SigTerm::closure(SigTerm::One, SigSub::shifts(n - 1)),
        }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }

    pub fn size(&self) -> usize {
        SigExpr::Term(self.clone()).node_count()
    }
}

impl SigSub {
    pub fn cons(a: SigTerm, s: SigSub) -> Self {
        SigSub::Cons(Arc::new(a), Arc::new(s))
    }

    pub fn comp(s: SigSub, t: SigSub) -> Self {
        SigSub::Comp(Arc::new(s), Arc::new(t))
    }

    /// `↑^n` for `n ≥ 1`: `(…(↑ ∘ ↑) ∘ …) ∘ ↑`.
    pub fn shifts(n: u64) -> Self {
        (1..n).fold(SigSub::Shift, |acc, _| SigSub::comp(acc, SigSub::Shift))
    }

    /// `n` when this is `↑^n` in the left-nested form.
    pub fn shift_power(&self) -> Option<u64> {
        match self {
            SigSub::Shift => Some(1),
            SigSub::Comp(s, t) if **t == SigSub::Shift => s.shift_power().map(|n| n + 1),
            _ => None,
        }
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, sub)
    }
}

impl From<SigTerm> for SigExpr {
    fn from(t: SigTerm) -> Self {
        SigExpr::Term(t)
    }
}

impl From<SigSub> for SigExpr {
    fn from(s: SigSub) -> Self {
        SigExpr::Sub(s)
    }
}

impl SigExpr {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        match SigTerm::parse(src) {
            Ok(t) => Ok(SigExpr::Term(t)),
            Err(e) => SigSub::parse(src).map(SigExpr::Sub).map_err(|_| e),
        }
    }

    pub fn as_term(&self) -> Option<&SigTerm> {
        match self {
            SigExpr::Term(t) => Some(t),
            SigExpr::Sub(_) => None,
        }
    }

    pub fn as_sub(&self) -> Option<&SigSub> {
        match self {
            SigExpr::Sub(s) => Some(s),
            SigExpr::Term(_) => None,
        }
    }
}

impl Tree for SigExpr {
    fn children(&self) -> Vec<Self> {
        match self {
            SigExpr::Term(t) => match t {
                SigTerm::One | SigTerm::Meta(_) => vec![],
                SigTerm::App(f, a) => vec![SigExpr::Term((**f).clone()), SigExpr::Term((**a).clone())],
                SigTerm::Abs(b) => vec![SigExpr::Term((**b).clone())],
                SigTerm::Closure(a, s) => vec![SigExpr::Term((**a).clone()), SigExpr::Sub((**s).clone())],
            },
            SigExpr::Sub(s) => match s {
                SigSub::Id | SigSub::Shift => vec![],
                SigSub::Cons(a, s) => vec![SigExpr::Term((**a).clone()), SigExpr::Sub((**s).clone())],
                SigSub::Comp(s, t) => vec![SigExpr::Sub((**s).clone()), SigExpr::Sub((**t).clone())],
            },
        }
    }

    fn with_children(&self, kids: Vec<Self>) -> Self {
        let mut it = kids.into_iter();
        let mut t = || match it.next() {
            Some(SigExpr::Term(t)) => Arc::new(t),
            other => panic!("expected a term child, got {other:?}"),
        };
        let term_kids = match self {
            SigExpr::Term(SigTerm::App(..)) => {
                let f = t();
                return SigExpr::Term(SigTerm::App(f, t()));
            }
            SigExpr::Term(SigTerm::Abs(_)) => return SigExpr::Term(SigTerm::Abs(t())),
            SigExpr::Term(SigTerm::Closure(..)) | SigExpr::Sub(SigSub::Cons(..)) => Some(t()),
            SigExpr::Sub(SigSub::Comp(..)) => None,
            _ => return self.clone(),
        };
        let mut s = || match it.next() {
            Some(SigExpr::Sub(s)) => Arc::new(s),
            other => panic!("expected a substitution child, got {other:?}"),
        };
        match (self, term_kids) {
            (SigExpr::Term(_), Some(a)) => SigExpr::Term(SigTerm::Closure(a, s())),
            (_, Some(a)) => SigExpr::Sub(SigSub::Cons(a, s())),
            (_, None) => {
                let l = s();
                SigExpr::Sub(SigSub::Comp(l, s()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigRule {
    Beta,
    App,
    Abs,
    Clos,
    Map,
    Ass,
    VarId,
    VarCons,
    IdL,
    ShiftId,
    ShiftCons,
}

impl SigRule {
    pub const ALL: [SigRule; 11] = [
        SigRule::Beta,
        SigRule::App,
        SigRule::Abs,
        SigRule::Clos,
        SigRule::Map,
        SigRule::Ass,
        SigRule::VarId,
        SigRule::VarCons,
        SigRule::IdL,
        SigRule::ShiftId,
        SigRule::ShiftCons,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SigRule::Beta => "sigma.Beta",
            SigRule::App => "sigma.App",
            SigRule::Abs => "sigma.Abs",
            SigRule::Clos => "sigma.Clos",
            SigRule::Map => "sigma.Map",
            SigRule::Ass => "sigma.Ass",
            SigRule::VarId => "sigma.VarId",
            SigRule::VarCons => "sigma.VarCons",
            SigRule::IdL => "sigma.IdL",
            SigRule::ShiftId => "sigma.ShiftId",
            SigRule::ShiftCons => "sigma.ShiftCons",
        }
    }
}

impl fmt::Display for SigRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SigRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SigRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigRules {
    /// Everything except (Beta).
    SigmaOnly,
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct SigSystem(pub SigRules);

fn contract(rule: SigRule, x: &SigExpr) -> Option<SigExpr> {
    use SigSub::*;
    Some(match x {
        SigExpr::Term(t) => SigExpr::Term(match (rule, t) {
            (SigRule::Beta, SigTerm::App(f, b)) => match &**f {
                SigTerm::Abs(a) => SigTerm::Closure(a.clone(), Arc::new(Cons(b.clone(), Arc::new(Id)))),
                _ => return None,
            },
            (_, SigTerm::Closure(a, s)) => match (rule, &**a, &**s) {
                (SigRule::App, SigTerm::App(f, b), _) => SigTerm::App(
                    Arc::new(SigTerm::Closure(f.clone(), s.clone())),
                    Arc::new(SigTerm::Closure(b.clone(), s.clone())),
                ),
                (SigRule::Abs, SigTerm::Abs(b), _) => SigTerm::abs(SigTerm::closure(
                    (**b).clone(),
                    SigSub::cons(SigTerm::One, Comp(s.clone(), Arc::new(Shift))),
                )),
                (SigRule::Clos, SigTerm::Closure(b, s0), _) => {
                    SigTerm::Closure(b.clone(), Arc::new(Comp(s0.clone(), s.clone())))
                }
                (SigRule::VarId, SigTerm::One, Id) => SigTerm::One,
                (SigRule::VarCons, SigTerm::One, Cons(b, _)) => (**b).clone(),
                _ => return None,
            },
            _ => return None,
        }),
        SigExpr::Sub(Comp(l, r)) => SigExpr::Sub(match (rule, &**l, &**r) {
            (SigRule::Map, Cons(a, s), _) => {
                Cons(Arc::new(SigTerm::Closure(a.clone(), r.clone())), Arc::new(Comp(s.clone(), r.clone())))
            }
            (SigRule::Ass, Comp(s, t), _) => Comp(s.clone(), Arc::new(Comp(t.clone(), r.clone()))),
            (SigRule::IdL, Id, _) => (**r).clone(),
            (SigRule::ShiftId, Shift, Id) => Shift,
            (SigRule::ShiftCons, Shift, Cons(_, s)) => (**s).clone(),
            _ => return None,
        }),
        SigExpr::Sub(_) => return None,
    })
}

impl RewriteSystem for SigSystem {
    type Expr = SigExpr;
    type Rule = SigRule;

    fn rules(&self) -> Vec<SigRule> {
        SigRule::ALL.into_iter().filter(|r| self.0 == SigRules::Full || *r != SigRule::Beta).collect()
    }

    fn rule_name(&self, rule: SigRule) -> &'static str {
        rule.name()
    }

    fn contract(&self, rule: SigRule, x: &SigExpr) -> Result<Option<SigExpr>, RewriteError> {
        if rule == SigRule::Beta && self.0 == SigRules::SigmaOnly {
            return Ok(None);
        }
        Ok(contract(rule, x))
    }

    fn counts_toward_budget(&self, rule: SigRule) -> bool {
        rule == SigRule::Beta
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SigReduction {
    pub result: SigExpr,
    pub steps: usize,
    pub trace: Vec<TraceStep<SigExpr, SigRule>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SigmaNormalizeError {
    #[error("σ fragment did not terminate within {steps} steps")]
    SigmaFuelExhausted { partial: SigExpr, steps: usize },
    #[error("step budget exhausted after {steps} (Beta) steps")]
    BudgetExhausted { partial: SigExpr, steps: usize, trace: Vec<TraceStep<SigExpr, SigRule>> },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

pub fn sigma_step(x: &SigExpr, pos: &Position, rule: SigRule) -> Result<SigExpr, RewriteError> {
    tree::apply_at(&SigSystem(SigRules::Full), x, rule, pos)
}

pub fn sigma_redexes(x: &SigExpr, rules: SigRules) -> Vec<(Position, SigRule)> {
    tree::redexes(&SigSystem(rules), x)
}

/// Leftmost-outermost normalization. The budget bounds (Beta) steps; the
/// σ fragment runs on fuel alone.
pub fn sigma_normalize(x: &SigExpr, budget: usize, rules: SigRules) -> Result<SigReduction, SigmaNormalizeError> {
    sigma_normalize_with(x, rules, Limits { budget: Some(budget), fuel: ALT_FUEL, record: false })
}

pub fn sigma_normalize_with(x: &SigExpr, rules: SigRules, mut limits: Limits) -> Result<SigReduction, SigmaNormalizeError> {
    if rules == SigRules::SigmaOnly {
        limits.budget = None;
    }
    match tree::normalize_lo(&SigSystem(rules), x.clone(), limits) {
        Ok(r) => Ok(SigReduction { result: r.result, steps: r.steps, trace: r.trace }),
        Err(NormalizeError::FuelExhausted { partial, steps }) => Err(SigmaNormalizeError::SigmaFuelExhausted { partial, steps }),
        Err(NormalizeError::BudgetExhausted { partial, steps, trace }) => {
            Err(SigmaNormalizeError::BudgetExhausted { partial, steps, trace })
        }
        Err(NormalizeError::Rewrite(e)) => Err(e.into()),
    }
}

/// σ-normal form; fuel exhaustion is an error.
pub fn sigma_nf(x: &SigExpr) -> Result<SigExpr, SigmaNormalizeError> {
    sigma_normalize(x, 0, SigRules::SigmaOnly).map(|r| r.result)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("constant `{0}` has no λσ counterpart")]
    Constant(String),
    #[error("environment of level {lev} translated at level {j}")]
    LevelViolation { lev: u64, j: u64 },
}

/// `S(t)`. Abstraction annotations are dropped.
pub fn susp_to_sigma(t: &SuspTerm) -> Result<SigTerm, TranslateError> {
    Ok(match t {
        SuspTerm::Const(c) => return Err(TranslateError::Constant(c.to_string())),
        SuspTerm::Meta(m) => SigTerm::Meta(m.clone()),
        SuspTerm::Index(n) => SigTerm::index(*n),
        SuspTerm::App(f, a) => SigTerm::app(susp_to_sigma(f)?, susp_to_sigma(a)?),
        SuspTerm::Abs(_, b) => SigTerm::abs(susp_to_sigma(b)?),
        SuspTerm::Susp(b, _, nl, e) => SigTerm::closure(susp_to_sigma(b)?, env_to_sigma(e, *nl)?),
    })
}

fn shifted(s: SigSub, k: u64) -> SigSub {
    (0..k).fold(s, |acc, _| SigSub::comp(acc, SigSub::Shift))
}

/// `R(e, j)`.
pub fn env_to_sigma(e: &SuspEnv, j: u64) -> Result<SigSub, TranslateError> {
    Ok(match e {
        SuspEnv::Nil => shifted(SigSub::Id, j),
        SuspEnv::Cons(et, tail) => {
            let k = j.checked_sub(et.level).ok_or(TranslateError::LevelViolation { lev: et.level, j })?;
            shifted(SigSub::cons(susp_to_sigma(&et.term)?, env_to_sigma(tail, et.level)?), k)
        }
        SuspEnv::Merged(e1, nl1, ol2, e2) => {
            let d = monus(*nl1, *ol2);
            let j2 = j.checked_sub(d).ok_or(TranslateError::LevelViolation { lev: d, j })?;
            SigSub::comp(env_to_sigma(e1, *nl1)?, env_to_sigma(e2, j2)?)
        }
    })
}

/// `T(a)`.
pub fn sigma_to_susp(a: &SigTerm) -> SuspTerm {
    match a {
        SigTerm::One => SuspTerm::Index(1),
        SigTerm::Meta(m) => SuspTerm::Meta(m.clone()),
        SigTerm::App(f, b) => SuspTerm::app(sigma_to_susp(f), sigma_to_susp(b)),
        SigTerm::Abs(b) => SuspTerm::abs(sigma_to_susp(b)),
        SigTerm::Closure(b, s) => match (&**b, s.shift_power()) {
            (SigTerm::One, Some(n)) => SuspTerm::Index(n + 1),
            _ => {
                let (ol, nl, e) = sigma_sub_to_env(s);
                SuspTerm::susp(sigma_to_susp(b), ol, nl, e)
            }
        },
    }
}

/// `E(s)`, the `(ol, nl, e)` triple of a substitution.
pub fn sigma_sub_to_env(s: &SigSub) -> (u64, u64, SuspEnv) {
    match s {
        SigSub::Id => (0, 0, SuspEnv::Nil),
        SigSub::Shift => (0, 1, SuspEnv::Nil),
        SigSub::Cons(a, s) => {
            let (ol, nl, e) = sigma_sub_to_env(s);
            (ol + 1, nl, SuspEnv::cons(sigma_to_susp(a), nl, e))
        }
        SigSub::Comp(s, t) if **t == SigSub::Shift => {
            let (ol, nl, e) = sigma_sub_to_env(s);
            (ol, nl + 1, e)
        }
        SigSub::Comp(s, t) => {
            let (ol1, nl1, e1) = sigma_sub_to_env(s);
            let (ol2, nl2, e2) = sigma_sub_to_env(t);
            (ol1 + monus(ol2, nl1), nl2 + monus(nl1, ol2), SuspEnv::merged(e1, nl1, ol2, e2))
        }
    }
}

fn term(cur: &mut Cursor) -> Result<SigTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        return Ok(SigTerm::abs(term(cur)?));
    }
    let mut acc = postfix(cur)?;
    loop {
        match cur.peek() {
            Some(Tok::Backslash) => return Ok(SigTerm::app(acc, term(cur)?)),
            Some(Tok::Nat(_)) | Some(Tok::Question) | Some(Tok::LParen) => acc = SigTerm::app(acc, postfix(cur)?),
            _ => return Ok(acc),
        }
    }
}

fn postfix(cur: &mut Cursor) -> Result<SigTerm, ParseError> {
    let mut a = atom(cur)?;
    while cur.eat(&Tok::LBracket) {
        let s = sub(cur)?;
        cur.expect(&Tok::RBracket)?;
        a = SigTerm::closure(a, s);
    }
    Ok(a)
}

fn atom(cur: &mut Cursor) -> Result<SigTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Nat(1)) => {
            cur.bump();
            Ok(SigTerm::One)
        }
        Some(Tok::Question) => {
            cur.bump();
            Ok(SigTerm::meta(&cur.ident()?))
        }
        Some(Tok::LParen) => {
            cur.bump();
            let t = term(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(t)
        }
        Some(Tok::Nat(_)) => Err(cur.error("the only index is `1`".into())),
        _ => Err(cur.error("expected a λσ term".into())),
    }
}

fn sub(cur: &mut Cursor) -> Result<SigSub, ParseError> {
    let mut acc = item(cur)?;
    while cur.is_ident("o") {
        cur.bump();
        acc = SigSub::comp(acc, item(cur)?);
    }
    Ok(acc)
}

fn item(cur: &mut Cursor) -> Result<SigSub, ParseError> {
    if cur.is_ident("id") {
        cur.bump();
        return Ok(SigSub::Id);
    }
    if cur.eat(&Tok::Bang) {
        return Ok(SigSub::Shift);
    }
    // `(` opens either a parenthesized substitution or a term.
    if cur.peek() == Some(&Tok::LParen) {
        let mark = cur.mark();
        cur.bump();
        if let Ok(s) = sub(cur).and_then(|s| cur.expect(&Tok::RParen).map(|_| s)) {
            if cur.peek() != Some(&Tok::Dot) && cur.peek() != Some(&Tok::LBracket) {
                return Ok(s);
            }
        }
        cur.reset(mark);
    }
    let mut a = postfix(cur)?;
    while matches!(cur.peek(), Some(Tok::Nat(_)) | Some(Tok::Question) | Some(Tok::LParen)) {
        a = SigTerm::app(a, postfix(cur)?);
    }
    cur.expect(&Tok::Dot)?;
    Ok(SigSub::cons(a, item(cur)?))
}

impl fmt::Display for SigTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigTerm::One => f.write_str("1"),
            SigTerm::Meta(m) => write!(f, "?{m}"),
            SigTerm::Abs(b) => write!(f, "\\ {b}"),
            SigTerm::App(g, a) => {
                match **g {
                    SigTerm::Abs(_) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    SigTerm::App(..) | SigTerm::Abs(_) => write!(f, " ({a})"),
                    _ => write!(f, " {a}"),
                }
            }
            SigTerm::Closure(a, s) => match **a {
                SigTerm::App(..) | SigTerm::Abs(_) => write!(f, "({a})[{s}]"),
                _ => write!(f, "{a}[{s}]"),
            },
        }
    }
}

impl fmt::Display for SigSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigSub::Id => f.write_str("id"),
            SigSub::Shift => f.write_str("!"),
            SigSub::Cons(a, s) => {
                match **a {
                    SigTerm::Abs(_) => write!(f, "({a}) . ")?,
                    _ => write!(f, "{a} . ")?,
                }
                match **s {
                    SigSub::Comp(..) => write!(f, "({s})"),
                    _ => write!(f, "{s}"),
                }
            }
            SigSub::Comp(s, t) => {
                match **s {
                    SigSub::Cons(..) => write!(f, "({s}) o ")?,
                    _ => write!(f, "{s} o ")?,
                }
                match **t {
                    SigSub::Id | SigSub::Shift => write!(f, "{t}"),
                    _ => write!(f, "({t})"),
                }
            }
        }
    }
}

impl fmt::Display for SigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigExpr::Term(t) => t.fmt(f),
            SigExpr::Sub(s) => s.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susp::{check_wellformed, SuspExpr};

    fn sg(s: &str) -> SigTerm {
        SigTerm::parse(s).unwrap()
    }

    fn ss(s: &str) -> SigSub {
        SigSub::parse(s).unwrap()
    }

    fn root(rule: SigRule, x: SigExpr) -> String {
        sigma_step(&x, &Position::root(), rule).unwrap().to_string()
    }

    #[test]
    fn rules_at_root() {
        assert_eq!(root(SigRule::VarCons, sg("1[?a . ?s . id]").into()), "?a");
        assert_eq!(root(SigRule::IdL, ss("id o (! o !)").into()), "! o !");
        assert_eq!(root(SigRule::ShiftCons, ss("! o (?a . !)").into()), "!");
        assert_eq!(root(SigRule::ShiftId, ss("! o id").into()), "!");
        assert_eq!(root(SigRule::VarId, sg("1[id]").into()), "1");
        assert_eq!(root(SigRule::Beta, sg("(\\ ?a) ?b").into()), "?a[?b . id]");
        assert_eq!(root(SigRule::App, sg("(?a ?b)[!]").into()), "?a[!] ?b[!]");
        assert_eq!(root(SigRule::Abs, sg("(\\ ?a)[!]").into()), "\\ ?a[1 . (! o !)]");
        assert_eq!(root(SigRule::Clos, sg("?a[!][id]").into()), "?a[! o id]");
        assert_eq!(root(SigRule::Map, ss("(?a . id) o !").into()), "?a[!] . (id o !)");
        assert_eq!(root(SigRule::Ass, ss("(! o !) o id").into()), "! o (! o id)");
    }

    #[test]
    fn sigma_only_normal_forms() {
        let nf = sigma_nf(&sg("(\\ 1[! o !])[?a . id]").into()).unwrap();
        assert_eq!(nf.to_string(), "\\ 1[!]");
        let r = sigma_normalize(&sg("(\\ 1) ?a").into(), 5, SigRules::SigmaOnly).unwrap();
        assert_eq!(r.steps, 0);
        let r = sigma_normalize(&sg("(\\ 1) ?a").into(), 5, SigRules::Full).unwrap();
        assert_eq!(r.result, SigExpr::Term(sg("?a")));
    }

    #[test]
    fn susp_to_sigma_examples() {
        assert_eq!(susp_to_sigma(&SuspTerm::Index(3)).unwrap(), SigTerm::closure(SigTerm::One, SigSub::comp(SigSub::Shift, SigSub::Shift)));
        assert_eq!(env_to_sigma(&SuspEnv::Nil, 2).unwrap().to_string(), "id o ! o !");
        let e = SuspEnv::cons(SuspTerm::meta("c"), 0, SuspEnv::Nil);
        assert_eq!(env_to_sigma(&e, 1).unwrap().to_string(), "(?c . id) o !");
        assert!(matches!(env_to_sigma(&SuspEnv::cons(SuspTerm::Index(1), 2, SuspEnv::Nil), 1), Err(TranslateError::LevelViolation { .. })));
        assert!(matches!(susp_to_sigma(&SuspTerm::constant("k")), Err(TranslateError::Constant(_))));
    }

    #[test]
    fn sigma_to_susp_examples() {
        assert_eq!(sigma_sub_to_env(&SigSub::Id), (0, 0, SuspEnv::Nil));
        assert_eq!(sigma_sub_to_env(&ss("id o !")), (0, 1, SuspEnv::Nil));
        assert_eq!(sigma_sub_to_env(&SigSub::Shift), (0, 1, SuspEnv::Nil));
        assert_eq!(sigma_to_susp(&sg("1[! o !]")), SuspTerm::Index(3));
        assert_eq!(sigma_to_susp(&sg("1[(! o !)]")), SuspTerm::Index(3));
        let t = sigma_to_susp(&sg("?a[(?b . !) o (1 . id)]"));
        assert_eq!(t.to_string(), "[?a, 1, 0, {(?b, 1) :: nil, 1, 1, (#1, 0) :: nil}]");
        assert!(check_wellformed(&SuspExpr::Term(t)).is_ok());
    }

    #[test]
    fn left_inverse_on_examples() {
        for s in ["#4", "[(#1 #2), 2, 1, (#3, 1) :: (?x, 0) :: nil]", "[\\ #2, 1, 3, {(#1, 2) :: nil, 2, 0, nil}]"] {
            let t = SuspTerm::parse(s).unwrap();
            assert_eq!(sigma_to_susp(&susp_to_sigma(&t).unwrap()), t, "{s}");
        }
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "1[! o !]",
            "\\ 1 1[?a . (! o !)]",
            "(1 . id) o (! o (?a . id))",
            "((\\ ?a) ?b . id) o !",
            "1[(1 . id) o !][id]",
            "(\\ 1)[(\\ 1) . id]",
        ] {
            let x = SigExpr::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(SigTerm::parse("2").is_err());
    }
}
