use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::LambdaError;
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::tree::{Position, RewriteError, RewriteSystem, Tree};
use crate::types::{parse_type, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DbTerm {
    Const(String),
    Index(u64),
    App(Box<DbTerm>, Box<DbTerm>),
    Abs(Option<SimpleType>, Box<DbTerm>),
}

impl DbTerm {
    pub fn app(f: DbTerm, a: DbTerm) -> Self {
        DbTerm::App(Box::new(f), Box::new(a))
    }

    pub fn abs(body: DbTerm) -> Self {
        DbTerm::Abs(None, Box::new(body))
    }

    pub fn constant(c: &str) -> Self {
        DbTerm::Const(c.to_string())
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }

    fn is_redex(&self) -> bool {
        matches!(self, DbTerm::App(f, _) if matches!(**f, DbTerm::Abs(..)))
    }
}

impl Tree for DbTerm {
    fn children(&self) -> Vec<Self> {
        match self {
            DbTerm::Const(_) | DbTerm::Index(_) => vec![],
            DbTerm::App(f, a) => vec![(**f).clone(), (**a).clone()],
            DbTerm::Abs(_, b) => vec![(**b).clone()],
        }
    }

    fn with_children(&self, mut kids: Vec<Self>) -> Self {
        match self {
            DbTerm::Const(_) | DbTerm::Index(_) => self.clone(),
            DbTerm::App(..) => {
                let a = kids.pop().unwrap();
                DbTerm::app(kids.pop().unwrap(), a)
            }
            DbTerm::Abs(ann, _) => DbTerm::Abs(ann.clone(), Box::new(kids.pop().unwrap())),
        }
    }
}

/// Add `delta` to every index above `cutoff` (cutoff grows under binders).
pub fn db_shift(t: &DbTerm, delta: i64, cutoff: u64) -> Result<DbTerm, LambdaError> {
    Ok(match t {
        DbTerm::Const(_) => t.clone(),
        DbTerm::Index(i) if *i <= cutoff => t.clone(),
        DbTerm::Index(i) => {
            let j = (*i as i128) + delta as i128;
            if j < 1 || j > u64::MAX as i128 {
                return Err(LambdaError::IndexUnderflow);
            }
            DbTerm::Index(j as u64)
        }
        DbTerm::App(f, a) => DbTerm::app(db_shift(f, delta, cutoff)?, db_shift(a, delta, cutoff)?),
        DbTerm::Abs(ann, b) => DbTerm::Abs(ann.clone(), Box::new(db_shift(b, delta, cutoff + 1)?)),
    })
}

/// `S(body; arg, #1, #2, …)`.
pub fn db_beta_contract(body: &DbTerm, arg: &DbTerm) -> DbTerm {
    fn go(t: &DbTerm, arg: &DbTerm, depth: u64) -> DbTerm {
        match t {
            DbTerm::Const(_) => t.clone(),
            DbTerm::Index(i) if *i <= depth => t.clone(),
            DbTerm::Index(i) if *i == depth + 1 => {
                db_shift(arg, depth as i64, 0).expect("upward shift cannot underflow")
            }
            DbTerm::Index(i) => DbTerm::Index(i - 1),
            DbTerm::App(f, a) => DbTerm::app(go(f, arg, depth), go(a, arg, depth)),
            DbTerm::Abs(ann, b) => DbTerm::Abs(ann.clone(), Box::new(go(b, arg, depth + 1))),
        }
    }
    go(body, arg, 0)
}

/// The single rule of [`BetaSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Beta;

/// β-contraction as a rewrite system, so de Bruijn terms can go through the
/// generic driver and emit traces.
#[derive(Debug, Clone, Copy, Default)]
pub struct BetaSystem;

impl RewriteSystem for BetaSystem {
    type Expr = DbTerm;
    type Rule = Beta;

    fn rules(&self) -> Vec<Beta> {
        vec![Beta]
    }

    fn rule_name(&self, _: Beta) -> &'static str {
        "beta"
    }

    fn contract(&self, _: Beta, x: &DbTerm) -> Result<Option<DbTerm>, RewriteError> {
        Ok(contract(x))
    }

    fn counts_toward_budget(&self, _: Beta) -> bool {
        true
    }
}

/// Position of the head redex, if any.
pub fn db_head_redex(t: &DbTerm) -> Option<Position> {
    let mut here = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            DbTerm::Abs(_, b) => cur = b,
            DbTerm::App(..) if cur.is_redex() => return Some(Position(here)),
            DbTerm::App(f, _) => cur = f,
            _ => return None,
        }
        here.push(0);
    }
}

fn contract(t: &DbTerm) -> Option<DbTerm> {
    match t {
        DbTerm::App(f, a) => match &**f {
            DbTerm::Abs(_, body) => Some(db_beta_contract(body, a)),
            _ => None,
        },
        _ => None,
    }
}

pub fn beta_step(t: &DbTerm, pos: &Position) -> Result<DbTerm, LambdaError> {
    let sub = t.at(pos).ok_or_else(|| LambdaError::BadPosition(pos.clone()))?;
    let new = contract(&sub).ok_or_else(|| LambdaError::NotARedex(pos.clone()))?;
    Ok(t.replace_at(pos, new).expect("valid position"))
}

/// Redex positions in normal order (preorder, function before argument).
pub fn beta_redexes(t: &DbTerm) -> Vec<Position> {
    t.positions()
        .into_iter()
        .filter(|p| t.at(p).is_some_and(|s| s.is_redex()))
        .collect()
}

pub fn is_beta_normal(t: &DbTerm) -> bool {
    match t {
        DbTerm::Const(_) | DbTerm::Index(_) => true,
        DbTerm::App(f, a) => !t.is_redex() && is_beta_normal(f) && is_beta_normal(a),
        DbTerm::Abs(_, b) => is_beta_normal(b),
    }
}

fn normal_order_step(t: &DbTerm) -> Option<DbTerm> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    match t {
        DbTerm::Const(_) | DbTerm::Index(_) => None,
        DbTerm::App(f, a) => normal_order_step(f)
            .map(|f2| DbTerm::app(f2, (**a).clone()))
            .or_else(|| normal_order_step(a).map(|a2| DbTerm::app((**f).clone(), a2))),
        DbTerm::Abs(ann, b) => normal_order_step(b).map(|b2| DbTerm::Abs(ann.clone(), Box::new(b2))),
    }
}

/// Normal-order reduction to β-normal form within `budget` contractions.
pub fn beta_normalize(t: &DbTerm, budget: usize) -> Result<DbTerm, LambdaError> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = normal_order_step(&cur) {
        if steps == budget {
            return Err(LambdaError::BudgetExhausted { partial: Box::new(cur), steps });
        }
        cur = next;
        steps += 1;
    }
    Ok(cur)
}

fn head_step(t: &DbTerm) -> Option<DbTerm> {
    match t {
        DbTerm::Abs(ann, b) => head_step(b).map(|b2| DbTerm::Abs(ann.clone(), Box::new(b2))),
        DbTerm::App(f, a) => {
            contract(t).or_else(|| head_step(f).map(|f2| DbTerm::app(f2, (**a).clone())))
        }
        _ => None,
    }
}

/// Contract head redexes until the term is a head normal form.
pub fn head_normalize_db(t: &DbTerm, budget: usize) -> Result<DbTerm, LambdaError> {
    let mut cur = t.clone();
    let mut steps = 0;
    while let Some(next) = head_step(&cur) {
        if steps == budget {
            return Err(LambdaError::BudgetExhausted { partial: Box::new(cur), steps });
        }
        cur = next;
        steps += 1;
    }
    Ok(cur)
}

/// Breadth-first search for a β-reduction sequence from `from` to `to`,
/// expanding at most `budget` terms. Returns the redex positions contracted.
pub fn beta_path(from: &DbTerm, to: &DbTerm, budget: usize) -> Option<Vec<Position>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut seen: HashSet<DbTerm> = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), Vec::<Position>::new())]);
    let mut expanded = 0;
    while let Some((t, path)) = queue.pop_front() {
        if expanded == budget {
            return None;
        }
        expanded += 1;
        for p in beta_redexes(&t) {
            let next = beta_step(&t, &p).expect("enumerated redex");
            let mut path2 = path.clone();
            path2.push(p);
            if &next == to {
                return Some(path2);
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, path2));
            }
        }
    }
    None
}

// term := `\` [`:` TYPE `.`] term | atom+
fn term(cur: &mut Cursor) -> Result<DbTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        let ann = if cur.eat(&Tok::Colon) {
            let a = parse_type(cur)?;
            cur.expect(&Tok::Dot)?;
            Some(a)
        } else {
            None
        };
        return Ok(DbTerm::Abs(ann, Box::new(term(cur)?)));
    }
    let mut acc = atom(cur)?;
    loop {
        match cur.peek() {
            Some(Tok::Backslash) => return Ok(DbTerm::app(acc, term(cur)?)),
            Some(Tok::Hash) | Some(Tok::Ident(_)) | Some(Tok::LParen) => acc = DbTerm::app(acc, atom(cur)?),
            _ => return Ok(acc),
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<DbTerm, ParseError> {
    if cur.eat(&Tok::LParen) {
        let t = term(cur)?;
        cur.expect(&Tok::RParen)?;
        return Ok(t);
    }
    if cur.eat(&Tok::Hash) {
        return Ok(DbTerm::Index(cur.positive()?));
    }
    if cur.is_ident("c") && cur.peek_at(1) == Some(&Tok::Colon) {
        cur.bump();
        cur.bump();
        return Ok(DbTerm::Const(cur.ident()?));
    }
    Err(cur.error("expected a de Bruijn term".into()))
}

impl fmt::Display for DbTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DbTerm::Const(c) => write!(f, "c:{c}"),
            DbTerm::Index(i) => write!(f, "#{i}"),
            DbTerm::Abs(None, b) => write!(f, "\\ {b}"),
            DbTerm::Abs(Some(a), b) => write!(f, "\\:{a}. {b}"),
            DbTerm::App(g, a) => {
                match **g {
                    DbTerm::Abs(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    DbTerm::App(..) | DbTerm::Abs(..) => write!(f, " ({a})"),
                    _ => write!(f, " {a}"),
                }
            }
        }
    }
}
