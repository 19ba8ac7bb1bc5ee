//! The λs-calculus and its λs_e extension.
//!
//! ```text
//! term := \ term | phi{K,I} term | app ( s{I} app )*
//! app := atom+
//! atom := NAT | ?IDENT | ( term )
//! ```
//! `a s{i} b` is `a σ^i b` and associates to the left; `phi{k,i} a` is `φ^i_k a`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::susp::{Name, SuspEnv, SuspTerm};
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::tree::{self, Limits, NormalizeError, Position, Reduction, RewriteError, RewriteSystem, Tree};

use super::ALT_FUEL;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LsTerm {
    Index(u64),
    Meta(Name),
    App(Arc<LsTerm>, Arc<LsTerm>),
    Abs(Arc<LsTerm>),
    /// `a σ^i b`
    Sigma(Arc<LsTerm>, u64, Arc<LsTerm>),
    /// `φ^i_k a`, stored as `(k, i, a)`.
    Phi(u64, u64, Arc<LsTerm>),
}

impl LsTerm {
    pub fn meta(name: &str) -> Self {
        LsTerm::Meta(name.into())
    }

    pub fn app(f: LsTerm, a: LsTerm) -> Self {
        LsTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn abs(b: LsTerm) -> Self {
        LsTerm::Abs(Arc::new(b))
    }

    pub fn sigma(a: LsTerm, i: u64, b: LsTerm) -> Self {
        LsTerm::Sigma(Arc::new(a), i, Arc::new(b))
    }

    pub fn phi(k: u64, i: u64, a: LsTerm) -> Self {
        LsTerm::Phi(k, i, Arc::new(a))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }
}

impl Tree for LsTerm {
    fn children(&self) -> Vec<Self> {
        match self {
            LsTerm::Index(_) | LsTerm::Meta(_) => vec![],
            LsTerm::App(a, b) | LsTerm::Sigma(a, _, b) => vec![(**a).clone(), (**b).clone()],
            LsTerm::Abs(a) | LsTerm::Phi(_, _, a) => vec![(**a).clone()],
        }
    }

    fn with_children(&self, kids: Vec<Self>) -> Self {
        let mut it = kids.into_iter().map(Arc::new);
        let mut next = || it.next().expect("arity");
        match self {
            LsTerm::Index(_) | LsTerm::Meta(_) => self.clone(),
            LsTerm::App(..) => {
                let a = next();
                LsTerm::App(a, next())
            }
            LsTerm::Sigma(_, i, _) => {
                let a = next();
                LsTerm::Sigma(a, *i, next())
            }
            LsTerm::Abs(_) => LsTerm::Abs(next()),
            LsTerm::Phi(k, i, _) => LsTerm::Phi(*k, *i, next()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LsRule {
    SigmaGeneration,
    SigmaLambda,
    SigmaApp,
    SigmaDestruction,
    PhiLambda,
    PhiApp,
    PhiDestruction,
    SigmaSigma,
    SigmaPhi1,
    SigmaPhi2,
    PhiSigma,
    PhiPhi1,
    PhiPhi2,
}

impl LsRule {
    pub const ALL: [LsRule; 13] = [
        LsRule::SigmaGeneration,
        LsRule::SigmaLambda,
        LsRule::SigmaApp,
        LsRule::SigmaDestruction,
        LsRule::PhiLambda,
        LsRule::PhiApp,
        LsRule::PhiDestruction,
        LsRule::SigmaSigma,
        LsRule::SigmaPhi1,
        LsRule::SigmaPhi2,
        LsRule::PhiSigma,
        LsRule::PhiPhi1,
        LsRule::PhiPhi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LsRule::SigmaGeneration => "ls.sigma-generation",
            LsRule::SigmaLambda => "ls.sigma-lambda-transition",
            LsRule::SigmaApp => "ls.sigma-app-transition",
            LsRule::SigmaDestruction => "ls.sigma-destruction",
            LsRule::PhiLambda => "ls.phi-lambda-transition",
            LsRule::PhiApp => "ls.phi-app-transition",
            LsRule::PhiDestruction => "ls.phi-destruction",
            LsRule::SigmaSigma => "se.sigma-sigma",
            LsRule::SigmaPhi1 => "se.sigma-phi-1",
            LsRule::SigmaPhi2 => "se.sigma-phi-2",
            LsRule::PhiSigma => "se.phi-sigma",
            LsRule::PhiPhi1 => "se.phi-phi-1",
            LsRule::PhiPhi2 => "se.phi-phi-2",
        }
    }

    pub fn is_extension(self) -> bool {
        matches!(
            self,
            LsRule::SigmaSigma | LsRule::SigmaPhi1 | LsRule::SigmaPhi2 | LsRule::PhiSigma | LsRule::PhiPhi1 | LsRule::PhiPhi2
        )
    }
}

impl fmt::Display for LsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LsRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LsRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsRules {
    /// The λs rules without σ-generation.
    SOnly,
    /// All λs rules.
    Full,
    /// λs plus the six λs_e rules.
    SeFull,
}

impl LsRules {
    pub fn contains(self, r: LsRule) -> bool {
        match self {
            LsRules::SOnly => r != LsRule::SigmaGeneration && !r.is_extension(),
            LsRules::Full => !r.is_extension(),
            LsRules::SeFull => true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LsSystem(pub LsRules);

fn contract(rule: LsRule, t: &LsTerm) -> Option<LsTerm> {
    use LsTerm::*;
    Some(match (rule, t) {
        (LsRule::SigmaGeneration, App(f, b)) => match &**f {
            Abs(a) => Sigma(a.clone(), 1, b.clone()),
            _ => return None,
        },
        (LsRule::SigmaLambda, Sigma(a, i, b)) => match &**a {
            Abs(a) => LsTerm::abs(Sigma(a.clone(), i.checked_add(1)?, b.clone())),
            _ => return None,
        },
        (LsRule::SigmaApp, Sigma(a, i, b)) => match &**a {
            App(a1, a2) => {
                LsTerm::app(Sigma(a1.clone(), *i, b.clone()), Sigma(a2.clone(), *i, b.clone()))
            }
            _ => return None,
        },
        (LsRule::SigmaDestruction, Sigma(a, i, b)) => match &**a {
            Index(n) if n > i => Index(n - 1),
            Index(n) if n == i => Phi(0, *i, b.clone()),
            Index(n) => Index(*n),
            _ => return None,
        },
        (LsRule::PhiLambda, Phi(k, i, a)) => match &**a {
            Abs(a) => LsTerm::abs(Phi(k.checked_add(1)?, *i, a.clone())),
            _ => return None,
        },
        (LsRule::PhiApp, Phi(k, i, a)) => match &**a {
            App(a1, a2) => LsTerm::app(Phi(*k, *i, a1.clone()), Phi(*k, *i, a2.clone())),
            _ => return None,
        },
        (LsRule::PhiDestruction, Phi(k, i, a)) => match &**a {
            Index(n) if n > k => Index(n.checked_add(i - 1)?),
            Index(n) => Index(*n),
            _ => return None,
        },
        (LsRule::SigmaSigma, Sigma(inner, j, c)) => match &**inner {
            Sigma(a, i, b) if i <= j => Sigma(
                Arc::new(Sigma(a.clone(), j.checked_add(1)?, c.clone())),
                *i,
                Arc::new(Sigma(b.clone(), j - i + 1, c.clone())),
            ),
            _ => return None,
        },
        (LsRule::SigmaPhi1, Sigma(inner, j, _)) => match &**inner {
            Phi(k, i, a) if k < j && *j < k.checked_add(*i)? => Phi(*k, i - 1, a.clone()),
            _ => return None,
        },
        (LsRule::SigmaPhi2, Sigma(inner, j, b)) => match &**inner {
            Phi(k, i, a) if k.checked_add(*i)? <= *j => Phi(*k, *i, Arc::new(Sigma(a.clone(), j - i + 1, b.clone()))),
            _ => return None,
        },
        (LsRule::PhiSigma, Phi(k, i, inner)) => match &**inner {
            Sigma(a, j, b) if *j <= k.checked_add(1)? => Sigma(
                Arc::new(Phi(k + 1, *i, a.clone())),
                *j,
                Arc::new(Phi(k + 1 - j, *i, b.clone())),
            ),
            _ => return None,
        },
        (LsRule::PhiPhi1, Phi(k, i, inner)) => match &**inner {
            Phi(l, j, a) if l.checked_add(*j)? <= *k => Phi(*l, *j, Arc::new(Phi(k + 1 - j, *i, a.clone()))),
            _ => return None,
        },
        (LsRule::PhiPhi2, Phi(k, i, inner)) => match &**inner {
            Phi(l, j, a) if l <= k && *k < l.checked_add(*j)? => Phi(*l, (j + i).checked_sub(1)?, a.clone()),
            _ => return None,
        },
        _ => return None,
    })
}

impl RewriteSystem for LsSystem {
    type Expr = LsTerm;
    type Rule = LsRule;

    fn rules(&self) -> Vec<LsRule> {
        LsRule::ALL.into_iter().filter(|r| self.0.contains(*r)).collect()
    }

    fn rule_name(&self, rule: LsRule) -> &'static str {
        rule.name()
    }

    fn contract(&self, rule: LsRule, x: &LsTerm) -> Result<Option<LsTerm>, RewriteError> {
        if !self.0.contains(rule) {
            return Ok(None);
        }
        Ok(contract(rule, x))
    }

    fn counts_toward_budget(&self, rule: LsRule) -> bool {
        rule == LsRule::SigmaGeneration
    }
}

pub type LsReduction = Reduction<LsTerm, LsRule>;
pub type LsNormalizeError = NormalizeError<LsTerm, LsRule>;

pub fn ls_step(a: &LsTerm, pos: &Position, rule: LsRule) -> Result<LsTerm, RewriteError> {
    tree::apply_at(&LsSystem(LsRules::SeFull), a, rule, pos)
}

pub fn ls_redexes(a: &LsTerm, rules: LsRules) -> Vec<(Position, LsRule)> {
    tree::redexes(&LsSystem(rules), a)
}

/// Leftmost-outermost normalization. The budget bounds σ-generation steps.
pub fn ls_normalize(a: &LsTerm, budget: usize, rules: LsRules) -> Result<LsReduction, LsNormalizeError> {
    ls_normalize_with(a, rules, Limits { budget: Some(budget), fuel: ALT_FUEL, record: false })
}

pub fn ls_normalize_with(a: &LsTerm, rules: LsRules, limits: Limits) -> Result<LsReduction, LsNormalizeError> {
    tree::normalize_lo(&LsSystem(rules), a.clone(), limits)
}

/// `(#1, hi) :: (#1, hi-1) :: … :: (#1, lo) :: tail`
fn dummies(hi: u64, lo: u64, tail: SuspEnv) -> SuspEnv {
    (lo..=hi).fold(tail, |acc, l| SuspEnv::cons(SuspTerm::Index(1), l, acc))
}

pub fn ls_to_susp(a: &LsTerm) -> SuspTerm {
    match a {
        LsTerm::Index(n) => SuspTerm::Index(*n),
        LsTerm::Meta(m) => SuspTerm::Meta(m.clone()),
        LsTerm::App(f, b) => SuspTerm::app(ls_to_susp(f), ls_to_susp(b)),
        LsTerm::Abs(b) => SuspTerm::abs(ls_to_susp(b)),
        LsTerm::Sigma(a, i, b) => {
            let e = dummies(i - 1, 1, SuspEnv::cons(ls_to_susp(b), 0, SuspEnv::Nil));
            SuspTerm::susp(ls_to_susp(a), *i, i - 1, e)
        }
        LsTerm::Phi(k, i, a) => {
            let e = dummies(k + i - 1, *i, SuspEnv::Nil);
            SuspTerm::susp(ls_to_susp(a), *k, k + i - 1, e)
        }
    }
}

fn term(cur: &mut Cursor) -> Result<LsTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        return Ok(LsTerm::abs(term(cur)?));
    }
    if cur.is_ident("phi") {
        cur.bump();
        cur.expect(&Tok::LBrace)?;
        let k = cur.nat()?;
        cur.expect(&Tok::Comma)?;
        let i = cur.positive()?;
        cur.expect(&Tok::RBrace)?;
        return Ok(LsTerm::phi(k, i, term(cur)?));
    }
    let mut acc = app(cur)?;
    while cur.is_ident("s") {
        cur.bump();
        cur.expect(&Tok::LBrace)?;
        let i = cur.positive()?;
        cur.expect(&Tok::RBrace)?;
        acc = LsTerm::sigma(acc, i, app(cur)?);
    }
    Ok(acc)
}

fn app(cur: &mut Cursor) -> Result<LsTerm, ParseError> {
    let mut acc = atom(cur)?;
    while matches!(cur.peek(), Some(Tok::Nat(_)) | Some(Tok::Question) | Some(Tok::LParen)) {
        acc = LsTerm::app(acc, atom(cur)?);
    }
    Ok(acc)
}

fn atom(cur: &mut Cursor) -> Result<LsTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Nat(_)) => Ok(LsTerm::Index(cur.positive()?)),
        Some(Tok::Question) => {
            cur.bump();
            Ok(LsTerm::meta(&cur.ident()?))
        }
        Some(Tok::LParen) => {
            cur.bump();
            let t = term(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(t)
        }
        _ => Err(cur.error("expected a λs term".into())),
    }
}

fn is_atom(t: &LsTerm) -> bool {
    matches!(t, LsTerm::Index(_) | LsTerm::Meta(_))
}

impl fmt::Display for LsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LsTerm::Index(n) => write!(f, "{n}"),
            LsTerm::Meta(m) => write!(f, "?{m}"),
            LsTerm::Abs(b) => write!(f, "\\ {b}"),
            LsTerm::Phi(k, i, a) => write!(f, "phi{{{k},{i}}} {a}"),
            LsTerm::App(g, a) => {
                match **g {
                    LsTerm::App(..) => write!(f, "{g}")?,
                    _ if is_atom(g) => write!(f, "{g}")?,
                    _ => write!(f, "({g})")?,
                }
                if is_atom(a) {
                    write!(f, " {a}")
                } else {
                    write!(f, " ({a})")
                }
            }
            LsTerm::Sigma(a, i, b) => {
                match **a {
                    LsTerm::Abs(_) | LsTerm::Phi(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                match **b {
                    LsTerm::App(..) => write!(f, " s{{{i}}} {b}"),
                    _ if is_atom(b) => write!(f, " s{{{i}}} {b}"),
                    _ => write!(f, " s{{{i}}} ({b})"),
                }
            }
        }
    }
}
