//! Simple typing for annotated de Bruijn and suspension terms.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lambda::DbTerm;
use crate::susp::{SuspEnv, SuspTerm};
use crate::text::{parse_all, ParseError, Tok};
use crate::types::{parse_type, SimpleType};

/// Types of the free indices, innermost binder first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context(pub Vec<SimpleType>);

impl Context {
    pub fn empty() -> Self {
        Context(Vec::new())
    }

    pub fn get(&self, i: u64) -> Option<&SimpleType> {
        let k = usize::try_from(i).ok()?.checked_sub(1)?;
        self.0.get(k)
    }

    pub fn push(&self, ty: SimpleType) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(ty);
        v.extend(self.0.iter().cloned());
        Context(v)
    }

    fn pop(&self) -> Option<Self> {
        self.0.split_first().map(|(_, rest)| Context(rest.to_vec()))
    }

    /// Parse a comma-separated list of types, innermost first.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        if src.trim().is_empty() {
            return Ok(Context::empty());
        }
        parse_all(src, |cur| {
            let mut v = vec![parse_type(cur)?];
            while cur.eat(&Tok::Comma) {
                v.push(parse_type(cur)?);
            }
            Ok(Context(v))
        })
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ty in &self.0 {
            match ty {
                SimpleType::Arrow(..) => write!(f, "({ty}).")?,
                SimpleType::Base(_) => write!(f, "{ty}.")?,
            }
        }
        f.write_str("∅")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature(pub BTreeMap<String, SimpleType>);

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn with(mut self, name: &str, ty: SimpleType) -> Self {
        self.0.insert(name.to_string(), ty);
        self
    }

    pub fn get(&self, name: &str) -> Option<&SimpleType> {
        self.0.get(name)
    }

    /// One `name : TYPE` declaration per line; blank lines are skipped.
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let mut sig = Signature::new();
        for (n, line) in src.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (name, ty) = parse_all(line, |cur| {
                let name = cur.ident()?;
                cur.expect(&Tok::Colon)?;
                Ok((name, parse_type(cur)?))
            })
            .map_err(|e| ParseError { line: n + 1, ..e })?;
            if sig.0.contains_key(&name) {
                return Err(ParseError { line: n + 1, col: 1, msg: format!("constant `{name}` declared twice") });
            }
            sig.0.insert(name, ty);
        }
        Ok(sig)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("index #{0} exceeds the context")]
    UnboundIndex(u64),
    #[error("constant `{0}` is not in the signature")]
    UnknownConstant(String),
    #[error("cannot apply a term of type {function} to an argument of type {argument}")]
    ApplicationMismatch { function: SimpleType, argument: SimpleType },
    #[error("abstraction without a type annotation")]
    MissingAnnotation,
    #[error("meta variable ?{0} has no typing rule")]
    MetaVariable(String),
    #[error("environment judgment failed for {env} at level {nl}: {source}")]
    EnvJudgmentFailure { env: String, nl: u64, source: Box<TypeError> },
    #[error("environment needs more context entries than available")]
    ContextUnderflow,
    #[error("no environment rule applies: entry level {level} exceeds {nl}")]
    LevelMismatch { level: u64, nl: u64 },
}

fn apply(f: SimpleType, a: SimpleType) -> Result<SimpleType, TypeError> {
    match &f {
        SimpleType::Arrow(dom, cod) if **dom == a => Ok((**cod).clone()),
        _ => Err(TypeError::ApplicationMismatch { function: f, argument: a }),
    }
}

pub fn typecheck_db(ctx: &Context, sig: &Signature, t: &DbTerm) -> Result<SimpleType, TypeError> {
    match t {
        DbTerm::Const(c) => sig.get(c).cloned().ok_or_else(|| TypeError::UnknownConstant(c.clone())),
        DbTerm::Index(i) => ctx.get(*i).cloned().ok_or(TypeError::UnboundIndex(*i)),
        DbTerm::App(f, a) => apply(typecheck_db(ctx, sig, f)?, typecheck_db(ctx, sig, a)?),
        DbTerm::Abs(None, _) => Err(TypeError::MissingAnnotation),
        DbTerm::Abs(Some(ty), b) => {
            Ok(SimpleType::arrow(ty.clone(), typecheck_db(&ctx.push(ty.clone()), sig, b)?))
        }
    }
}

pub fn typecheck_susp(ctx: &Context, sig: &Signature, t: &SuspTerm) -> Result<SimpleType, TypeError> {
    match t {
        SuspTerm::Const(c) => sig.get(c).cloned().ok_or_else(|| TypeError::UnknownConstant(c.to_string())),
        SuspTerm::Meta(m) => Err(TypeError::MetaVariable(m.to_string())),
        SuspTerm::Index(i) => ctx.get(*i).cloned().ok_or(TypeError::UnboundIndex(*i)),
        SuspTerm::App(f, a) => apply(typecheck_susp(ctx, sig, f)?, typecheck_susp(ctx, sig, a)?),
        SuspTerm::Abs(None, _) => Err(TypeError::MissingAnnotation),
        SuspTerm::Abs(Some(ty), b) => {
            Ok(SimpleType::arrow(ty.clone(), typecheck_susp(&ctx.push(ty.clone()), sig, b)?))
        }
        SuspTerm::Susp(b, _, nl, e) => {
            let inner = infer_env(ctx, sig, e, *nl).map_err(|source| TypeError::EnvJudgmentFailure {
                env: e.to_string(),
                nl: *nl,
                source: Box::new(source),
            })?;
            typecheck_susp(&inner, sig, b)
        }
    }
}

/// The context `Γ'` with `Γ ⊢ e ⇒nl Γ'`.
pub fn infer_env(ctx: &Context, sig: &Signature, e: &SuspEnv, nl: u64) -> Result<Context, TypeError> {
    match e {
        SuspEnv::Nil => {
            let mut cur = ctx.clone();
            for _ in 0..nl {
                cur = cur.pop().ok_or(TypeError::ContextUnderflow)?;
            }
            Ok(cur)
        }
        SuspEnv::Cons(et, tail) => {
            if et.level > nl {
                return Err(TypeError::LevelMismatch { level: et.level, nl });
            }
            let mut cur = ctx.clone();
            for _ in et.level..nl {
                cur = cur.pop().ok_or(TypeError::ContextUnderflow)?;
            }
            let ty = typecheck_susp(&cur, sig, &et.term)?;
            Ok(infer_env(&cur, sig, tail, et.level)?.push(ty))
        }
        SuspEnv::Merged(e1, nl1, ol2, e2) => {
            let level = nl
                .checked_sub(nl1.saturating_sub(*ol2))
                .ok_or(TypeError::LevelMismatch { level: nl1.saturating_sub(*ol2), nl })?;
            let mid = infer_env(ctx, sig, e2, level)?;
            infer_env(&mid, sig, e1, *nl1)
        }
    }
}
