//! Rewriting for suspension expressions.

mod head;
mod normalize;
mod relations;
mod rules;

pub use head::{head_normalize, head_normalize_classic, head_normalize_classic_with, head_normalize_with, head_redex, hnf_decompose, HeadNormalForm, NotHnf};
pub use normalize::{
    env_to_simple, full_normalize, full_normalize_with, merge_normalize, r_normalize, random_derivation,
    rm_normalize, rm_normalize_env, rm_normalize_lo, rm_normalize_random, rm_normalize_term, rm_step_count,
    SuspNormalizeError, SuspReduction, DEFAULT_BUDGET, RM_FUEL,
};
pub use relations::{
    check_assoc, check_local_confluence, is_parallel_successor, parallel_beta_step, similar, AssocError,
    AssocInstance, ConfluenceCounterexample, ConfluenceError,
};
pub use rules::{
    applicable_rules, apply_rule, contract_root, enumerate_redexes, rule_matches, MetaMode, RuleId, RuleSet,
    SuspSystem,
};
