//! Suspension-calculus expressions: terms, environments and environment terms.

mod measure;
mod text;

use std::sync::Arc;

use crate::lambda::DbTerm;
use crate::tree::Tree;
use crate::types::SimpleType;

pub use measure::{
    check_wellformed, env_ind, env_len, env_lev, is_simple, monus, truncate, NotSimple,
    WellformednessViolation,
};

pub type Name = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SuspTerm {
    Const(Name),
    Meta(Name),
    Index(u64),
    App(Arc<SuspTerm>, Arc<SuspTerm>),
    Abs(Option<SimpleType>, Arc<SuspTerm>),
    /// `⟦t, ol, nl, e⟧`
    Susp(Arc<SuspTerm>, u64, u64, Arc<SuspEnv>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SuspEnv {
    Nil,
    Cons(EnvTerm, Arc<SuspEnv>),
    /// `⟪e1, nl1, ol2, e2⟫`
    Merged(Arc<SuspEnv>, u64, u64, Arc<SuspEnv>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnvTerm {
    pub term: Arc<SuspTerm>,
    pub level: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SuspExpr {
    Term(SuspTerm),
    Env(SuspEnv),
    EnvTerm(EnvTerm),
}

impl SuspTerm {
    pub fn constant(name: &str) -> Self {
        SuspTerm::Const(name.into())
    }

    pub fn meta(name: &str) -> Self {
        SuspTerm::Meta(name.into())
    }

    pub fn index(i: u64) -> Self {
        SuspTerm::Index(i)
    }

    pub fn app(f: SuspTerm, a: SuspTerm) -> Self {
        SuspTerm::App(Arc::new(f), Arc::new(a))
    }

    pub fn abs(body: SuspTerm) -> Self {
        SuspTerm::Abs(None, Arc::new(body))
    }

    pub fn abs_typed(ty: SimpleType, body: SuspTerm) -> Self {
        SuspTerm::Abs(Some(ty), Arc::new(body))
    }

    pub fn susp(t: SuspTerm, ol: u64, nl: u64, e: SuspEnv) -> Self {
        SuspTerm::Susp(Arc::new(t), ol, nl, Arc::new(e))
    }

    pub fn has_meta(&self) -> bool {
        match self {
            SuspTerm::Meta(_) => true,
            SuspTerm::Const(_) | SuspTerm::Index(_) => false,
            SuspTerm::App(f, a) => f.has_meta() || a.has_meta(),
            SuspTerm::Abs(_, b) => b.has_meta(),
            SuspTerm::Susp(t, _, _, e) => t.has_meta() || e.has_meta(),
        }
    }

    /// The pure de Bruijn term, when there are no suspensions or metas.
    pub fn to_db(&self) -> Option<DbTerm> {
        Some(match self {
            SuspTerm::Const(c) => DbTerm::Const(c.to_string()),
            SuspTerm::Index(i) => DbTerm::Index(*i),
            SuspTerm::App(f, a) => DbTerm::app(f.to_db()?, a.to_db()?),
            SuspTerm::Abs(ann, b) => DbTerm::Abs(ann.clone(), Box::new(b.to_db()?)),
            SuspTerm::Meta(_) | SuspTerm::Susp(..) => return None,
        })
    }

    /// Strip every abstraction annotation.
    pub fn erase_types(&self) -> SuspTerm {
        match self {
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => self.clone(),
            SuspTerm::App(f, a) => SuspTerm::app(f.erase_types(), a.erase_types()),
            SuspTerm::Abs(_, b) => SuspTerm::abs(b.erase_types()),
            SuspTerm::Susp(t, ol, nl, e) => SuspTerm::susp(t.erase_types(), *ol, *nl, e.erase_types()),
        }
    }
}

impl From<&DbTerm> for SuspTerm {
    fn from(t: &DbTerm) -> Self {
        match t {
            DbTerm::Const(c) => SuspTerm::constant(c),
            DbTerm::Index(i) => SuspTerm::Index(*i),
            DbTerm::App(f, a) => SuspTerm::app(f.as_ref().into(), a.as_ref().into()),
            DbTerm::Abs(ann, b) => SuspTerm::Abs(ann.clone(), Arc::new(b.as_ref().into())),
        }
    }
}

impl SuspEnv {
    pub fn nil() -> Self {
        SuspEnv::Nil
    }

    pub fn cons(t: SuspTerm, level: u64, tail: SuspEnv) -> Self {
        SuspEnv::Cons(EnvTerm::new(t, level), Arc::new(tail))
    }

    pub fn merged(e1: SuspEnv, nl1: u64, ol2: u64, e2: SuspEnv) -> Self {
        SuspEnv::Merged(Arc::new(e1), nl1, ol2, Arc::new(e2))
    }

    /// Build a simple environment from entries, head first.
    pub fn from_entries(entries: impl IntoIterator<Item = (SuspTerm, u64)>) -> Self {
        let v: Vec<_> = entries.into_iter().collect();
        v.into_iter().rev().fold(SuspEnv::Nil, |acc, (t, l)| SuspEnv::cons(t, l, acc))
    }

    pub fn has_meta(&self) -> bool {
        match self {
            SuspEnv::Nil => false,
            SuspEnv::Cons(et, tail) => et.term.has_meta() || tail.has_meta(),
            SuspEnv::Merged(e1, _, _, e2) => e1.has_meta() || e2.has_meta(),
        }
    }

    fn erase_types(&self) -> SuspEnv {
        match self {
            SuspEnv::Nil => SuspEnv::Nil,
            SuspEnv::Cons(et, tail) => SuspEnv::cons(et.term.erase_types(), et.level, tail.erase_types()),
            SuspEnv::Merged(e1, a, b, e2) => SuspEnv::merged(e1.erase_types(), *a, *b, e2.erase_types()),
        }
    }
}

impl EnvTerm {
    pub fn new(t: SuspTerm, level: u64) -> Self {
        EnvTerm { term: Arc::new(t), level }
    }
}

impl SuspExpr {
    pub fn as_term(&self) -> Option<&SuspTerm> {
        match self {
            SuspExpr::Term(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_env(&self) -> Option<&SuspEnv> {
        match self {
            SuspExpr::Env(e) => Some(e),
            _ => None,
        }
    }

    pub fn has_meta(&self) -> bool {
        match self {
            SuspExpr::Term(t) => t.has_meta(),
            SuspExpr::Env(e) => e.has_meta(),
            SuspExpr::EnvTerm(et) => et.term.has_meta(),
        }
    }

    /// Whether any `Susp` or `Merged` node occurs.
    pub fn has_closure(&self) -> bool {
        self.positions().iter().any(|p| {
            matches!(
                self.at(p),
                Some(SuspExpr::Term(SuspTerm::Susp(..))) | Some(SuspExpr::Env(SuspEnv::Merged(..)))
            )
        })
    }

    pub fn size(&self) -> usize {
        self.node_count()
    }
}

impl From<SuspTerm> for SuspExpr {
    fn from(t: SuspTerm) -> Self {
        SuspExpr::Term(t)
    }
}

impl From<SuspEnv> for SuspExpr {
    fn from(e: SuspEnv) -> Self {
        SuspExpr::Env(e)
    }
}

impl Tree for SuspExpr {
    fn children(&self) -> Vec<Self> {
        use SuspExpr as X;
        match self {
            X::Term(t) => match t {
                SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => vec![],
                SuspTerm::App(f, a) => vec![X::Term((**f).clone()), X::Term((**a).clone())],
                SuspTerm::Abs(_, b) => vec![X::Term((**b).clone())],
                SuspTerm::Susp(b, _, _, e) => vec![X::Term((**b).clone()), X::Env((**e).clone())],
            },
            X::Env(e) => match e {
                SuspEnv::Nil => vec![],
                SuspEnv::Cons(et, tail) => vec![X::EnvTerm(et.clone()), X::Env((**tail).clone())],
                SuspEnv::Merged(e1, _, _, e2) => vec![X::Env((**e1).clone()), X::Env((**e2).clone())],
            },
            X::EnvTerm(et) => vec![X::Term((*et.term).clone())],
        }
    }

    fn with_children(&self, kids: Vec<Self>) -> Self {
        use SuspExpr as X;
        let term = |k: &X| match k {
            X::Term(t) => Arc::new(t.clone()),
            other => panic!("expected a term child, got {other:?}"),
        };
        let env = |k: &X| match k {
            X::Env(e) => Arc::new(e.clone()),
            other => panic!("expected an environment child, got {other:?}"),
        };
        match self {
            X::Term(t) => X::Term(match t {
                SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => t.clone(),
                SuspTerm::App(..) => SuspTerm::App(term(&kids[0]), term(&kids[1])),
                SuspTerm::Abs(ann, _) => SuspTerm::Abs(ann.clone(), term(&kids[0])),
                SuspTerm::Susp(_, ol, nl, _) => SuspTerm::Susp(term(&kids[0]), *ol, *nl, env(&kids[1])),
            }),
            X::Env(e) => X::Env(match e {
                SuspEnv::Nil => SuspEnv::Nil,
                SuspEnv::Cons(..) => match &kids[0] {
                    X::EnvTerm(et) => SuspEnv::Cons(et.clone(), env(&kids[1])),
                    other => panic!("expected an environment term child, got {other:?}"),
                },
                SuspEnv::Merged(_, nl1, ol2, _) => SuspEnv::Merged(env(&kids[0]), *nl1, *ol2, env(&kids[1])),
            }),
            X::EnvTerm(et) => X::EnvTerm(EnvTerm { term: term(&kids[0]), level: et.level }),
        }
    }
}
