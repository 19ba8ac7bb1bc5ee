use std::collections::BTreeSet;
use std::fmt;

use super::{DbTerm, LambdaError};
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::tree::Tree;
use crate::types::{parse_type, SimpleType};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedTerm {
    Const(String),
    Var(String),
    App(Box<NamedTerm>, Box<NamedTerm>),
    Abs(String, Option<SimpleType>, Box<NamedTerm>),
}

pub type FreeVarSet = BTreeSet<String>;

impl NamedTerm {
    pub fn var(x: &str) -> Self {
        NamedTerm::Var(x.to_string())
    }

    pub fn constant(c: &str) -> Self {
        NamedTerm::Const(c.to_string())
    }

    pub fn app(f: NamedTerm, a: NamedTerm) -> Self {
        NamedTerm::App(Box::new(f), Box::new(a))
    }

    pub fn abs(x: &str, body: NamedTerm) -> Self {
        NamedTerm::Abs(x.to_string(), None, Box::new(body))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }
}

impl Tree for NamedTerm {
    fn children(&self) -> Vec<Self> {
        match self {
            NamedTerm::Const(_) | NamedTerm::Var(_) => vec![],
            NamedTerm::App(f, a) => vec![(**f).clone(), (**a).clone()],
            NamedTerm::Abs(_, _, b) => vec![(**b).clone()],
        }
    }

    fn with_children(&self, mut kids: Vec<Self>) -> Self {
        match self {
            NamedTerm::Const(_) | NamedTerm::Var(_) => self.clone(),
            NamedTerm::App(..) => {
                let a = kids.pop().unwrap();
                NamedTerm::app(kids.pop().unwrap(), a)
            }
            NamedTerm::Abs(x, ann, _) => NamedTerm::Abs(x.clone(), ann.clone(), Box::new(kids.pop().unwrap())),
        }
    }
}

pub fn free_vars(t: &NamedTerm) -> FreeVarSet {
    match t {
        NamedTerm::Const(_) => FreeVarSet::new(),
        NamedTerm::Var(x) => FreeVarSet::from([x.clone()]),
        NamedTerm::App(f, a) => {
            let mut s = free_vars(f);
            s.extend(free_vars(a));
            s
        }
        NamedTerm::Abs(x, _, b) => {
            let mut s = free_vars(b);
            s.remove(x);
            s
        }
    }
}

fn fresh(avoid: &FreeVarSet) -> String {
    (1..)
        .map(|k| format!("x{k}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply")
}

/// `t[s/x]`, renaming a binder when it would capture a free variable of `s`.
pub fn subst_named(t: &NamedTerm, s: &NamedTerm, x: &str) -> NamedTerm {
    match t {
        NamedTerm::Const(_) => t.clone(),
        NamedTerm::Var(y) if y == x => s.clone(),
        NamedTerm::Var(_) => t.clone(),
        NamedTerm::App(f, a) => NamedTerm::app(subst_named(f, s, x), subst_named(a, s, x)),
        NamedTerm::Abs(y, _, _) if y == x => t.clone(),
        NamedTerm::Abs(y, ann, body) => {
            let fv_s = free_vars(s);
            if fv_s.contains(y) {
                let mut avoid = free_vars(body);
                avoid.extend(fv_s);
                avoid.insert(x.to_string());
                let y2 = fresh(&avoid);
                let renamed = subst_named(body, &NamedTerm::Var(y2.clone()), y);
                NamedTerm::Abs(y2, ann.clone(), Box::new(subst_named(&renamed, s, x)))
            } else {
                NamedTerm::Abs(y.clone(), ann.clone(), Box::new(subst_named(body, s, x)))
            }
        }
    }
}

pub fn to_debruijn(t: &NamedTerm, free_order: &[String]) -> Result<DbTerm, LambdaError> {
    fn go(t: &NamedTerm, bound: &mut Vec<String>, free: &[String]) -> Result<DbTerm, LambdaError> {
        Ok(match t {
            NamedTerm::Const(c) => DbTerm::Const(c.clone()),
            NamedTerm::Var(x) => {
                let d = bound.len();
                if let Some(k) = bound.iter().rev().position(|b| b == x) {
                    DbTerm::Index(k as u64 + 1)
                } else if let Some(k) = free.iter().position(|f| f == x) {
                    DbTerm::Index((d + k + 1) as u64)
                } else {
                    return Err(LambdaError::UnknownFreeVariable(x.clone()));
                }
            }
            NamedTerm::App(f, a) => DbTerm::app(go(f, bound, free)?, go(a, bound, free)?),
            NamedTerm::Abs(x, ann, b) => {
                bound.push(x.clone());
                let body = go(b, bound, free);
                bound.pop();
                DbTerm::Abs(ann.clone(), Box::new(body?))
            }
        })
    }
    go(t, &mut Vec::new(), free_order)
}

/// Binder at depth d (1-based) is named by the d-th of x1, x2, … that does
/// not clash with the free listing.
pub fn from_debruijn(t: &DbTerm, free_order: &[String]) -> Result<NamedTerm, LambdaError> {
    fn go(
        t: &DbTerm,
        names: &mut Vec<String>,
        supply: &mut impl Iterator<Item = String>,
        pool: &mut Vec<String>,
        free: &[String],
    ) -> Result<NamedTerm, LambdaError> {
        Ok(match t {
            DbTerm::Const(c) => NamedTerm::Const(c.clone()),
            DbTerm::Index(i) => {
                let i = *i as usize;
                let d = names.len();
                if i <= d {
                    NamedTerm::Var(names[d - i].clone())
                } else if i - d <= free.len() {
                    NamedTerm::Var(free[i - d - 1].clone())
                } else {
                    return Err(LambdaError::DanglingIndex(i as u64));
                }
            }
            DbTerm::App(f, a) => NamedTerm::app(go(f, names, supply, pool, free)?, go(a, names, supply, pool, free)?),
            DbTerm::Abs(ann, b) => {
                let d = names.len();
                while pool.len() <= d {
                    pool.push(supply.next().expect("unbounded supply"));
                }
                names.push(pool[d].clone());
                let body = go(b, names, supply, pool, free);
                let x = names.pop().unwrap();
                NamedTerm::Abs(x, ann.clone(), Box::new(body?))
            }
        })
    }
    let mut supply = (1..).map(|k| format!("x{k}")).filter(|n| !free_order.contains(n));
    go(t, &mut Vec::new(), &mut supply, &mut Vec::new(), free_order)
}

/// Structural equality of de Bruijn images under one shared free listing.
pub fn alpha_eq(t1: &NamedTerm, t2: &NamedTerm) -> bool {
    let mut fv = free_vars(t1);
    fv.extend(free_vars(t2));
    let order: Vec<String> = fv.into_iter().collect();
    match (to_debruijn(t1, &order), to_debruijn(t2, &order)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

// term := `\` IDENT [`:` TYPE] `.` term | atom+
fn term(cur: &mut Cursor) -> Result<NamedTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        let x = cur.ident()?;
        let ann = if cur.eat(&Tok::Colon) { Some(parse_type(cur)?) } else { None };
        cur.expect(&Tok::Dot)?;
        return Ok(NamedTerm::Abs(x, ann, Box::new(term(cur)?)));
    }
    let mut acc = atom(cur)?;
    loop {
        match cur.peek() {
            Some(Tok::Backslash) => return Ok(NamedTerm::app(acc, term(cur)?)),
            Some(Tok::Ident(_)) | Some(Tok::LParen) => acc = NamedTerm::app(acc, atom(cur)?),
            _ => return Ok(acc),
        }
    }
}

fn atom(cur: &mut Cursor) -> Result<NamedTerm, ParseError> {
    if cur.eat(&Tok::LParen) {
        let t = term(cur)?;
        cur.expect(&Tok::RParen)?;
        return Ok(t);
    }
    if cur.is_ident("c") && cur.peek_at(1) == Some(&Tok::Colon) {
        cur.bump();
        cur.bump();
        return Ok(NamedTerm::Const(cur.ident()?));
    }
    match cur.peek() {
        Some(Tok::Ident(_)) => Ok(NamedTerm::Var(cur.ident()?)),
        _ => Err(cur.error("expected a term".into())),
    }
}

impl fmt::Display for NamedTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedTerm::Const(c) => write!(f, "c:{c}"),
            NamedTerm::Var(x) => f.write_str(x),
            NamedTerm::Abs(x, None, b) => write!(f, "\\{x}. {b}"),
            NamedTerm::Abs(x, Some(a), b) => write!(f, "\\{x}:{a}. {b}"),
            NamedTerm::App(g, a) => {
                match **g {
                    NamedTerm::Abs(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match **a {
                    NamedTerm::App(..) | NamedTerm::Abs(..) => write!(f, " ({a})"),
                    _ => write!(f, " {a}"),
                }
            }
        }
    }
}
