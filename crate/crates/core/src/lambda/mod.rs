//! Reference lambda calculus: named terms with capture-avoiding substitution
//! and de Bruijn terms with shifting and β-contraction. Every simulation test
//! in the crate compares against this module.

mod db;
mod named;

use thiserror::Error;

use crate::tree::Position;

pub use db::{
    beta_normalize, beta_path, db_head_redex, Beta, BetaSystem, beta_redexes, beta_step, db_beta_contract, db_shift,
    head_normalize_db, is_beta_normal, DbTerm,
};
pub use named::{alpha_eq, free_vars, from_debruijn, subst_named, to_debruijn, FreeVarSet, NamedTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("free variable `{0}` is missing from the listing")]
    UnknownFreeVariable(String),
    #[error("index #{0} is not bound and exceeds the free-variable listing")]
    DanglingIndex(u64),
    #[error("shifting produced an index below 1")]
    IndexUnderflow,
    #[error("no β-redex at position `{0}`")]
    NotARedex(Position),
    #[error("no subterm at position `{0}`")]
    BadPosition(Position),
    #[error("budget exhausted after {steps} steps")]
    BudgetExhausted { partial: Box<DbTerm>, steps: usize },
}
