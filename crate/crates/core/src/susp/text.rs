//! Concrete syntax:
//!
//! ```text
//! term := c:IDENT | ?IDENT | #NAT | \ term | \:TYPE. term | ( term term ) | [ term , NAT , NAT , env ]
//! env  := nil | ( term , NAT ) :: env | { env , NAT , NAT , env }
//! ```

use std::fmt;

use super::{EnvTerm, SuspEnv, SuspExpr, SuspTerm};
use crate::text::{parse_all, Cursor, ParseError, Tok};
use crate::types::parse_type;

impl SuspTerm {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, term)
    }
}

impl SuspEnv {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        parse_all(src, env)
    }
}

impl SuspExpr {
    /// A term, an environment, or a lone `(t, l)` environment term.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(src)?;
        let first = match term(&mut cur).and_then(|t| cur.finish().map(|_| t)) {
            Ok(t) => return Ok(SuspExpr::Term(t)),
            Err(e) => e,
        };
        cur.reset(0);
        if let Ok(e) = env(&mut cur).and_then(|e| cur.finish().map(|_| e)) {
            return Ok(SuspExpr::Env(e));
        }
        cur.reset(0);
        if let Ok(et) = env_term(&mut cur).and_then(|et| cur.finish().map(|_| et)) {
            return Ok(SuspExpr::EnvTerm(et));
        }
        Err(first)
    }
}

pub(crate) fn term(cur: &mut Cursor) -> Result<SuspTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Hash) => {
            cur.bump();
            Ok(SuspTerm::Index(cur.positive()?))
        }
        Some(Tok::Question) => {
            cur.bump();
            Ok(SuspTerm::meta(&cur.ident()?))
        }
        Some(Tok::Ident(c)) if c == "c" => {
            cur.bump();
            cur.expect(&Tok::Colon)?;
            Ok(SuspTerm::constant(&cur.ident()?))
        }
        Some(Tok::Backslash) => {
            cur.bump();
            if cur.eat(&Tok::Colon) {
                let ty = parse_type(cur)?;
                cur.expect(&Tok::Dot)?;
                Ok(SuspTerm::abs_typed(ty, term(cur)?))
            } else {
                Ok(SuspTerm::abs(term(cur)?))
            }
        }
        Some(Tok::LParen) => {
            cur.bump();
            let f = term(cur)?;
            let a = term(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(SuspTerm::app(f, a))
        }
        Some(Tok::LBracket) => {
            cur.bump();
            let t = term(cur)?;
            cur.expect(&Tok::Comma)?;
            let ol = cur.nat()?;
            cur.expect(&Tok::Comma)?;
            let nl = cur.nat()?;
            cur.expect(&Tok::Comma)?;
            let e = env(cur)?;
            cur.expect(&Tok::RBracket)?;
            Ok(SuspTerm::susp(t, ol, nl, e))
        }
        _ => Err(cur.error("expected a suspension term".into())),
    }
}

fn env_term(cur: &mut Cursor) -> Result<EnvTerm, ParseError> {
    cur.expect(&Tok::LParen)?;
    let t = term(cur)?;
    cur.expect(&Tok::Comma)?;
    let l = cur.nat()?;
    cur.expect(&Tok::RParen)?;
    Ok(EnvTerm::new(t, l))
}

pub(crate) fn env(cur: &mut Cursor) -> Result<SuspEnv, ParseError> {
    match cur.peek() {
        Some(Tok::Ident(n)) if n == "nil" => {
            cur.bump();
            Ok(SuspEnv::Nil)
        }
        Some(Tok::LParen) => {
            let et = env_term(cur)?;
            cur.expect(&Tok::ColonColon)?;
            let tail = env(cur)?;
            Ok(SuspEnv::Cons(et, tail.into()))
        }
        Some(Tok::LBrace) => {
            cur.bump();
            let e1 = env(cur)?;
            cur.expect(&Tok::Comma)?;
            let nl1 = cur.nat()?;
            cur.expect(&Tok::Comma)?;
            let ol2 = cur.nat()?;
            cur.expect(&Tok::Comma)?;
            let e2 = env(cur)?;
            cur.expect(&Tok::RBrace)?;
            Ok(SuspEnv::merged(e1, nl1, ol2, e2))
        }
        _ => Err(cur.error("expected an environment".into())),
    }
}

impl fmt::Display for SuspTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuspTerm::Const(c) => write!(f, "c:{c}"),
            SuspTerm::Meta(m) => write!(f, "?{m}"),
            SuspTerm::Index(i) => write!(f, "#{i}"),
            SuspTerm::App(g, a) => write!(f, "({g} {a})"),
            SuspTerm::Abs(None, b) => write!(f, "\\ {b}"),
            SuspTerm::Abs(Some(ty), b) => write!(f, "\\:{ty}. {b}"),
            SuspTerm::Susp(t, ol, nl, e) => write!(f, "[{t}, {ol}, {nl}, {e}]"),
        }
    }
}

impl fmt::Display for EnvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.term, self.level)
    }
}

impl fmt::Display for SuspEnv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuspEnv::Nil => f.write_str("nil"),
            SuspEnv::Cons(et, tail) => write!(f, "{et} :: {tail}"),
            SuspEnv::Merged(e1, nl1, ol2, e2) => write!(f, "{{{e1}, {nl1}, {ol2}, {e2}}}"),
        }
    }
}

impl fmt::Display for SuspExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuspExpr::Term(t) => t.fmt(f),
            SuspExpr::Env(e) => e.fmt(f),
            SuspExpr::EnvTerm(et) => et.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_forms() {
        let t = SuspTerm::parse("[c:a, 1, 5, (c:b,0)::nil]").unwrap();
        let want = SuspTerm::susp(
            SuspTerm::constant("a"),
            1,
            5,
            SuspEnv::cons(SuspTerm::constant("b"), 0, SuspEnv::Nil),
        );
        assert_eq!(t, want);
        let e = SuspEnv::parse("{nil, 0, 1, (?x, 0) :: nil}").unwrap();
        assert!(matches!(e, SuspEnv::Merged(..)));
    }

    #[test]
    fn printed_forms_round_trip() {
        for s in [
            "(\\ #1 c:a)",
            "\\:A -> B. (#1 ?m)",
            "[[#2, 0, 1, nil], 0, 1, {(#1, 1) :: nil, 1, 0, nil}]",
        ] {
            let t = SuspTerm::parse(s).unwrap();
            assert_eq!(SuspTerm::parse(&t.to_string()).unwrap(), t, "{s}");
        }
    }

    #[test]
    fn expression_sorts() {
        assert!(matches!(SuspExpr::parse("nil").unwrap(), SuspExpr::Env(_)));
        assert!(matches!(SuspExpr::parse("(c:a, 2)").unwrap(), SuspExpr::EnvTerm(_)));
        assert!(matches!(SuspExpr::parse("(c:a c:b)").unwrap(), SuspExpr::Term(_)));
        assert!(matches!(SuspExpr::parse("(c:a, 2) :: nil").unwrap(), SuspExpr::Env(_)));
    }

    #[test]
    fn errors_carry_locations() {
        let e = SuspTerm::parse("[c:a, 1,\n  x, nil]").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }
}
