//! Engines for the λυ, λs, λs_e and λσ calculi and their translations to
//! and from suspension terms.

mod checks;
mod lambda_s;
mod mellies;
mod sigma;
mod upsilon;

pub use checks::{
    ls_simulation_certificate, reading_path, sigma_joinable, sigma_step_preserved, ups_joinable, Certificate,
    Preservation, SigmaCheckError,
};
pub use lambda_s::{
    ls_normalize, ls_normalize_with, ls_redexes, ls_step, ls_to_susp, LsNormalizeError, LsReduction, LsRule, LsRules,
    LsSystem, LsTerm,
};
pub use mellies::{
    mellies_susp_fixed_form, mellies_susp_replay, mellies_susp_start, mellies_unfold, GrowthReport, MelliesError,
    MelliesTrace,
};
pub use sigma::{
    env_to_sigma, sigma_nf, sigma_normalize, sigma_normalize_with, sigma_redexes, sigma_step, sigma_sub_to_env,
    sigma_to_susp, susp_to_sigma, SigExpr, SigReduction, SigRule, SigRules, SigSub, SigSystem, SigTerm,
    SigmaNormalizeError, TranslateError,
};
pub use upsilon::{
    ups_normalize, ups_normalize_with, ups_redexes, ups_step, ups_sub_to_env, ups_to_susp, UpsExpr,
    UpsNormalizeError, UpsReduction, UpsRule, UpsRules, UpsSub, UpsSystem, UpsTerm,
};

/// Step cap for the rule fragments that terminate without (B)/(Beta).
pub const ALT_FUEL: usize = 1_000_000;
