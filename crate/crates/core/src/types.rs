//! Simple types and their concrete syntax.

use std::fmt;
use std::sync::Arc;

use crate::text::{parse_all, Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    Base(Arc<str>),
    Arrow(Arc<SimpleType>, Arc<SimpleType>),
}

impl SimpleType {
    pub fn base(name: &str) -> Self {
        SimpleType::Base(name.into())
    }

    pub fn arrow(dom: SimpleType, cod: SimpleType) -> Self {
        SimpleType::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `A1 -> ... -> An -> B` from argument types and a result.
    pub fn curried(args: &[SimpleType], result: SimpleType) -> Self {
        args.iter().rev().fold(result, |acc, a| SimpleType::arrow(a.clone(), acc))
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, parse_type)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Base(n) => f.write_str(n),
            SimpleType::Arrow(a, b) => match **a {
                SimpleType::Arrow(..) => write!(f, "({a}) -> {b}"),
                SimpleType::Base(_) => write!(f, "{a} -> {b}"),
            },
        }
    }
}

/// `TYPE := IDENT | TYPE -> TYPE | ( TYPE )`, arrows to the right.
pub fn parse_type(cur: &mut Cursor) -> Result<SimpleType, ParseError> {
    let dom = if cur.eat(&Tok::LParen) {
        let t = parse_type(cur)?;
        cur.expect(&Tok::RParen)?;
        t
    } else {
        SimpleType::base(&cur.ident()?)
    };
    if cur.eat(&Tok::Arrow) {
        Ok(SimpleType::arrow(dom, parse_type(cur)?))
    } else {
        Ok(dom)
    }
}
