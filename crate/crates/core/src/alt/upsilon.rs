//! The λυ-calculus.
//!
//! ```text
//! term := \ term | postfix+
//! postfix := atom ( [ sub ] )*
//! atom := NAT | ?IDENT | ( term )
//! sub := ! | ^( sub ) | term /
//! ```
//! `!` is the shift and `^(s)` the lift.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::susp::{Name, SuspEnv, SuspTerm};
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::tree::{self, Limits, NormalizeError, Position, Reduction, RewriteError, RewriteSystem, Tree};

use super::ALT_FUEL;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpsTerm {
    Index(u64),
    /// Graftable meta variable; no rule looks inside it.
    Meta(Name),
    App(Arc<UpsTerm>, Arc<UpsTerm>),
    Abs(Arc<UpsTerm>),
    Closure(Arc<UpsTerm>, Arc<UpsSub>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpsSub {
    Slash(Arc<UpsTerm>),
    Lift(Arc<UpsSub>),
    Shift,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpsExpr {
    Term(UpsTerm),
    Sub(UpsSub),
}

impl UpsTerm {
    pub fn meta(name: &str) -> Self {
        UpsTerm::Meta(name.into())
    }

    pub fn app(f: UpsTerm, a: UpsTerm) -> Self {
        UpsTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn abs(b: UpsTerm) -> Self {
        UpsTerm::Abs(Arc::new(b))
    }

    pub fn closure(a: UpsTerm, s: UpsSub) -> Self {
        UpsTerm::Closure(Arc::new(a), Arc::new(s))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }
}

impl UpsSub {
    pub fn slash(a: UpsTerm) -> Self {
        UpsSub::Slash(Arc::new(a))
    }

    pub fn lift(s: UpsSub) -> Self {
        UpsSub::Lift(Arc::new(s))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, sub)
    }
}

impl From<UpsTerm> for UpsExpr {
    fn from(t: UpsTerm) -> Self {
        UpsExpr::Term(t)
    }
}

impl From<UpsSub> for UpsExpr {
    fn from(s: UpsSub) -> Self {
        UpsExpr::Sub(s)
    }
}

impl UpsExpr {
    /// A term, or failing that a substitution.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        match UpsTerm::parse(src) {
            Ok(t) => Ok(UpsExpr::Term(t)),
            Err(e) => UpsSub::parse(src).map(UpsExpr::Sub).map_err(|_| e),
        }
    }

    pub fn as_term(&self) -> Option<&UpsTerm> {
        match self {
            UpsExpr::Term(t) => Some(t),
            UpsExpr::Sub(_) => None,
        }
    }
}

impl Tree for UpsExpr {
    fn children(&self) -> Vec<Self> {
        match self {
            UpsExpr::Term(t) => match t {
                UpsTerm::Index(_) | UpsTerm::Meta(_) => vec![],
                UpsTerm::App(f, a) => vec![UpsExpr::Term((**f).clone()), UpsExpr::Term((**a).clone())],
                UpsTerm::Abs(b) => vec![UpsExpr::Term((**b).clone())],
                UpsTerm::Closure(a, s) => vec![UpsExpr::Term((**a).clone()), UpsExpr::Sub((**s).clone())],
            },
            UpsExpr::Sub(s) => match s {
                UpsSub::Slash(a) => vec![UpsExpr::Term((**a).clone())],
                UpsSub::Lift(s) => vec![UpsExpr::Sub((**s).clone())],
                UpsSub::Shift => vec![],
            },
        }
    }

    fn with_children(&self, kids: Vec<Self>) -> Self {
        let mut it = kids.into_iter();
        let mut t = || match it.next() {
            Some(UpsExpr::Term(t)) => Arc::new(t),
            other => panic!("expected a term child, got {other:?}"),
        };
        match self {
            UpsExpr::Term(UpsTerm::App(..)) => {
                let f = t();
                UpsExpr::Term(UpsTerm::App(f, t()))
            }
            UpsExpr::Term(UpsTerm::Abs(_)) => UpsExpr::Term(UpsTerm::Abs(t())),
            UpsExpr::Term(UpsTerm::Closure(..)) => {
                let a = t();
                match it.next() {
                    Some(UpsExpr::Sub(s)) => UpsExpr::Term(UpsTerm::Closure(a, Arc::new(s))),
                    other => panic!("expected a substitution child, got {other:?}"),
                }
            }
            UpsExpr::Sub(UpsSub::Slash(_)) => UpsExpr::Sub(UpsSub::Slash(t())),
            UpsExpr::Sub(UpsSub::Lift(_)) => match it.next() {
                Some(UpsExpr::Sub(s)) => UpsExpr::Sub(UpsSub::lift(s)),
                other => panic!("expected a substitution child, got {other:?}"),
            },
            _ => self.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UpsRule {
    B,
    App,
    Lambda,
    FVar,
    RVar,
    VarShift,
    FVarLift,
    RVarLift,
}

impl UpsRule {
    pub const ALL: [UpsRule; 8] = [
        UpsRule::B,
        UpsRule::App,
        UpsRule::Lambda,
        UpsRule::FVar,
        UpsRule::RVar,
        UpsRule::VarShift,
        UpsRule::FVarLift,
        UpsRule::RVarLift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UpsRule::B => "ups.B",
            UpsRule::App => "ups.App",
            UpsRule::Lambda => "ups.Lambda",
            UpsRule::FVar => "ups.FVar",
            UpsRule::RVar => "ups.RVar",
            UpsRule::VarShift => "ups.VarShift",
            UpsRule::FVarLift => "ups.FVarLift",
            UpsRule::RVarLift => "ups.RVarLift",
        }
    }
}

impl fmt::Display for UpsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UpsRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UpsRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpsRules {
    /// Everything except (B).
    UpsilonOnly,
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct UpsSystem(pub UpsRules);

fn contract(rule: UpsRule, x: &UpsExpr) -> Option<UpsExpr> {
    let UpsExpr::Term(t) = x else { return None };
    let out = match (rule, t) {
        (UpsRule::B, UpsTerm::App(f, b)) => match &**f {
            UpsTerm::Abs(a) => UpsTerm::Closure(a.clone(), Arc::new(UpsSub::Slash(b.clone()))),
            _ => return None,
        },
        (_, UpsTerm::Closure(a, s)) => match (rule, &**a, &**s) {
            (UpsRule::App, UpsTerm::App(f, b), _) => {
                UpsTerm::App(Arc::new(UpsTerm::Closure(f.clone(), s.clone())), Arc::new(UpsTerm::Closure(b.clone(), s.clone())))
            }
            (UpsRule::Lambda, UpsTerm::Abs(b), _) => {
                UpsTerm::abs(UpsTerm::Closure(b.clone(), Arc::new(UpsSub::Lift(s.clone()))))
            }
            (UpsRule::FVar, UpsTerm::Index(1), UpsSub::Slash(b)) => (**b).clone(),
            (UpsRule::RVar, UpsTerm::Index(n), UpsSub::Slash(_)) if *n > 1 => UpsTerm::Index(n - 1),
            (UpsRule::VarShift, UpsTerm::Index(n), UpsSub::Shift) => UpsTerm::Index(n.checked_add(1)?),
            (UpsRule::FVarLift, UpsTerm::Index(1), UpsSub::Lift(_)) => UpsTerm::Index(1),
            (UpsRule::RVarLift, UpsTerm::Index(n), UpsSub::Lift(inner)) if *n > 1 => UpsTerm::closure(
                UpsTerm::Closure(Arc::new(UpsTerm::Index(n - 1)), inner.clone()),
                UpsSub::Shift,
            ),
            _ => return None,
        },
        _ => return None,
    };
    Some(UpsExpr::Term(out))
}

impl RewriteSystem for UpsSystem {
    type Expr = UpsExpr;
    type Rule = UpsRule;

    fn rules(&self) -> Vec<UpsRule> {
        UpsRule::ALL.into_iter().filter(|r| self.0 == UpsRules::Full || *r != UpsRule::B).collect()
    }

    fn rule_name(&self, rule: UpsRule) -> &'static str {
        rule.name()
    }

    fn contract(&self, rule: UpsRule, x: &UpsExpr) -> Result<Option<UpsExpr>, RewriteError> {
        if rule == UpsRule::B && self.0 == UpsRules::UpsilonOnly {
            return Ok(None);
        }
        Ok(contract(rule, x))
    }

    fn counts_toward_budget(&self, rule: UpsRule) -> bool {
        rule == UpsRule::B
    }
}

pub type UpsReduction = Reduction<UpsExpr, UpsRule>;
pub type UpsNormalizeError = NormalizeError<UpsExpr, UpsRule>;

pub fn ups_step(x: &UpsExpr, pos: &Position, rule: UpsRule) -> Result<UpsExpr, RewriteError> {
    tree::apply_at(&UpsSystem(UpsRules::Full), x, rule, pos)
}

pub fn ups_redexes(x: &UpsExpr, rules: UpsRules) -> Vec<(Position, UpsRule)> {
    tree::redexes(&UpsSystem(rules), x)
}

/// Leftmost-outermost normalization. The budget bounds (B) steps; the
/// υ-only fragment runs on fuel alone.
pub fn ups_normalize(a: &UpsTerm, budget: usize, rules: UpsRules) -> Result<UpsReduction, UpsNormalizeError> {
    ups_normalize_with(a, rules, Limits { budget: Some(budget), fuel: ALT_FUEL, record: false })
}

pub fn ups_normalize_with(a: &UpsTerm, rules: UpsRules, mut limits: Limits) -> Result<UpsReduction, UpsNormalizeError> {
    if rules == UpsRules::UpsilonOnly {
        limits.budget = None;
    }
    tree::normalize_lo(&UpsSystem(rules), UpsExpr::Term(a.clone()), limits)
}

pub fn ups_to_susp(a: &UpsTerm) -> SuspTerm {
    match a {
        UpsTerm::Index(n) => SuspTerm::Index(*n),
        UpsTerm::Meta(m) => SuspTerm::Meta(m.clone()),
        UpsTerm::App(f, b) => SuspTerm::app(ups_to_susp(f), ups_to_susp(b)),
        UpsTerm::Abs(b) => SuspTerm::abs(ups_to_susp(b)),
        UpsTerm::Closure(b, s) => {
            let (ol, nl, e) = ups_sub_to_env(s);
            SuspTerm::susp(ups_to_susp(b), ol, nl, e)
        }
    }
}

/// The `(ol, nl, e)` triple of a substitution.
pub fn ups_sub_to_env(s: &UpsSub) -> (u64, u64, SuspEnv) {
    match s {
        UpsSub::Slash(a) => (1, 0, SuspEnv::cons(ups_to_susp(a), 0, SuspEnv::Nil)),
        UpsSub::Shift => (0, 1, SuspEnv::Nil),
        UpsSub::Lift(s) => {
            let (ol, nl, e) = ups_sub_to_env(s);
            (ol + 1, nl + 1, SuspEnv::cons(SuspTerm::Index(1), nl + 1, e))
        }
    }
}

fn term(cur: &mut Cursor) -> Result<UpsTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        return Ok(UpsTerm::abs(term(cur)?));
    }
    let mut acc = postfix(cur)?;
    loop {
        match cur.peek() {
            Some(Tok::Backslash) => return Ok(UpsTerm::app(acc, term(cur)?)),
            Some(Tok::Nat(_)) | Some(Tok::Question) | Some(Tok::LParen) => acc = UpsTerm::app(acc, postfix(cur)?),
            _ => return Ok(acc),
        }
    }
}

fn postfix(cur: &mut Cursor) -> Result<UpsTerm, ParseError> {
    let mut a = atom(cur)?;
    while cur.eat(&Tok::LBracket) {
        let s = sub(cur)?;
        cur.expect(&Tok::RBracket)?;
        a = UpsTerm::closure(a, s);
    }
    Ok(a)
}

fn atom(cur: &mut Cursor) -> Result<UpsTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Nat(_)) => Ok(UpsTerm::Index(cur.positive()?)),
        Some(Tok::Question) => {
            cur.bump();
            Ok(UpsTerm::meta(&cur.ident()?))
        }
        Some(Tok::LParen) => {
            cur.bump();
            let t = term(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(t)
        }
        _ => Err(cur.error("expected a λυ term".into())),
    }
}

fn sub(cur: &mut Cursor) -> Result<UpsSub, ParseError> {
    if cur.eat(&Tok::Bang) {
        return Ok(UpsSub::Shift);
    }
    if cur.eat(&Tok::Caret) {
        cur.expect(&Tok::LParen)?;
        let s = sub(cur)?;
        cur.expect(&Tok::RParen)?;
        return Ok(UpsSub::lift(s));
    }
    let a = term(cur)?;
    cur.expect(&Tok::Slash)?;
    Ok(UpsSub::slash(a))
}

impl fmt::Display for UpsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpsTerm::Index(n) => write!(f, "{n}"),
            UpsTerm::Meta(m) => write!(f, "?{m}"),
            UpsTerm::Abs(b) => write!(f, "\\ {b}"),
            UpsTerm::App(g, a) => {
                match **g {
                    UpsTerm::Abs(_) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    UpsTerm::App(..) | UpsTerm::Abs(_) => write!(f, " ({a})"),
                    _ => write!(f, " {a}"),
                }
            }
            UpsTerm::Closure(a, s) => match **a {
                UpsTerm::App(..) | UpsTerm::Abs(_) => write!(f, "({a})[{s}]"),
                _ => write!(f, "{a}[{s}]"),
            },
        }
    }
}

impl fmt::Display for UpsSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpsSub::Slash(a) => write!(f, "{a}/"),
            UpsSub::Lift(s) => write!(f, "^({s})"),
            UpsSub::Shift => f.write_str("!"),
        }
    }
}

impl fmt::Display for UpsExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpsExpr::Term(t) => t.fmt(f),
            UpsExpr::Sub(s) => s.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susp::{check_wellformed, SuspExpr};

    fn u(s: &str) -> UpsTerm {
        UpsTerm::parse(s).unwrap()
    }

    fn root(rule: UpsRule, s: &str) -> String {
        ups_step(&u(s).into(), &Position::root(), rule).unwrap().to_string()
    }

    #[test]
    fn rules_at_root() {
        assert_eq!(root(UpsRule::FVar, "1[?a/]"), "?a");
        assert_eq!(root(UpsRule::RVar, "3[?a/]"), "2");
        assert_eq!(root(UpsRule::VarShift, "3[!]"), "4");
        assert_eq!(root(UpsRule::FVarLift, "1[^(!)]"), "1");
        assert_eq!(root(UpsRule::RVarLift, "3[^(!)]"), "2[!][!]");
        assert_eq!(root(UpsRule::App, "(1 2)[!]"), "1[!] 2[!]");
        assert_eq!(root(UpsRule::Lambda, "(\\ 1)[!]"), "\\ 1[^(!)]");
        assert_eq!(root(UpsRule::B, "(\\ 1) 2"), "1[2/]");
        let err = ups_step(&u("1[!]").into(), &Position::root(), UpsRule::FVar).unwrap_err();
        assert!(matches!(err, RewriteError::RuleNotApplicable { .. }));
    }

    #[test]
    fn lifted_slash_normal_form() {
        let r = ups_normalize(&u("4[^(^(^(?a/)))]"), 0, UpsRules::UpsilonOnly).unwrap();
        assert_eq!(r.result.to_string(), "?a[!][!][!]");
    }

    #[test]
    fn upsilon_only_skips_beta() {
        let r = ups_normalize(&u("(\\ 1) 2"), 10, UpsRules::UpsilonOnly).unwrap();
        assert_eq!(r.result.to_string(), "(\\ 1) 2");
        let r = ups_normalize(&u("(\\ 1) 2"), 10, UpsRules::Full).unwrap();
        assert_eq!(r.result.to_string(), "2");
        let omega = u("(\\ 1 1) (\\ 1 1)");
        assert!(matches!(ups_normalize(&omega, 5, UpsRules::Full), Err(NormalizeError::BudgetExhausted { .. })));
    }

    #[test]
    fn translation_examples() {
        assert_eq!(ups_sub_to_env(&UpsSub::Shift), (0, 1, SuspEnv::Nil));
        let c = UpsTerm::meta("c");
        assert_eq!(
            ups_sub_to_env(&UpsSub::slash(c.clone())),
            (1, 0, SuspEnv::cons(SuspTerm::meta("c"), 0, SuspEnv::Nil))
        );
        assert_eq!(
            ups_sub_to_env(&UpsSub::lift(UpsSub::slash(c))),
            (2, 1, SuspEnv::from_entries([(SuspTerm::Index(1), 1), (SuspTerm::meta("c"), 0)]))
        );
        let t = ups_to_susp(&u("(\\ 2[^(1/)])[!]"));
        assert_eq!(t.to_string(), "[\\ [#2, 2, 1, (#1, 1) :: (#1, 0) :: nil], 0, 1, nil]");
        assert!(check_wellformed(&SuspExpr::Term(t)).is_ok());
    }

    #[test]
    fn printing_round_trips() {
        for s in ["\\ 1 (2 3)", "(\\ 1)[\\ 2 1/]", "1[^(^(!))][2 3/]", "?x (\\ 1) 2", "(1 2)[!] 3"] {
            assert_eq!(u(s).to_string(), s);
        }
        assert!(UpsTerm::parse("1[").is_err());
        assert!(UpsTerm::parse("0").is_err());
    }
}
