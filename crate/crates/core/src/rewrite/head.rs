use thiserror::Error;

use super::normalize::{SuspNormalizeError, SuspReduction, RM_FUEL};
use super::rules::{rule_matches, MetaMode, RuleId, RuleSet, SuspSystem};
use crate::susp::{SuspEnv, SuspExpr, SuspTerm};
use crate::tree::{self, Limits, Position, RewriteSystem};

/// The next generalized head redex of `x`.
///
/// Walks the spine (abstraction bodies, application functions,
/// suspension bodies). The first rm-redex met on the way fires; otherwise
/// a βs-redex at the spine's application node does. A suspension over an
/// index whose environment is still merged is unblocked by the
/// leftmost-outermost rm-redex inside that environment.
pub fn head_redex(x: &SuspExpr, mode: MetaMode) -> Option<(Position, RuleId)> {
    let SuspExpr::Term(t) = x else {
        return None;
    };
    let rm = SuspSystem::new(RuleSet::rm(), mode);
    let mut here = Position::root();
    let mut cur = t.clone();
    loop {
        let expr = SuspExpr::Term(cur.clone());
        if let Some(&r) = rm.matching_rules(&expr).first() {
            return Some((here, r));
        }
        match &cur {
            SuspTerm::App(f, _) => {
                if rule_matches(RuleId::BetaS, &expr, mode) {
                    return Some((here, RuleId::BetaS));
                }
                here = here.child(0);
                cur = (**f).clone();
            }
            SuspTerm::Abs(_, b) => {
                here = here.child(0);
                cur = (**b).clone();
            }
            SuspTerm::Susp(b, _, _, e) => {
                if matches!(**b, SuspTerm::Index(_)) && matches!(**e, SuspEnv::Merged(..)) {
                    let env = SuspExpr::Env((**e).clone());
                    let (p, r) = tree::first_redex(&rm, &env)?;
                    let mut full = here.child(1);
                    full.0.extend(p.0);
                    return Some((full, r));
                }
                return None;
            }
            SuspTerm::Const(_) | SuspTerm::Meta(_) | SuspTerm::Index(_) => return None,
        }
    }
}

/// Generalized head reduction to head normal form.
pub fn head_normalize(x: &SuspExpr, budget: usize, mode: MetaMode) -> Result<SuspReduction, SuspNormalizeError> {
    head_normalize_with(x, mode, Limits { budget: Some(budget), fuel: RM_FUEL, record: true })
}

pub fn head_normalize_with(x: &SuspExpr, mode: MetaMode, limits: Limits) -> Result<SuspReduction, SuspNormalizeError> {
    let sys = SuspSystem::new(RuleSet::all(), mode);
    tree::drive(&sys, x.clone(), limits, |e| head_redex(e, mode))
}

/// Head reduction on rm-normal forms: rm-normalize leftmost-outermost,
/// then contract the head βs-redex, and repeat.
pub fn head_normalize_classic(x: &SuspExpr, budget: usize, mode: MetaMode) -> Result<SuspReduction, SuspNormalizeError> {
    head_normalize_classic_with(x, mode, Limits { budget: Some(budget), fuel: RM_FUEL, record: true })
}

pub fn head_normalize_classic_with(x: &SuspExpr, mode: MetaMode, limits: Limits) -> Result<SuspReduction, SuspNormalizeError> {
    let sys = SuspSystem::new(RuleSet::all(), mode);
    let rm = SuspSystem::new(RuleSet::rm(), mode);
    tree::drive(&sys, x.clone(), limits, |e| {
        tree::first_redex(&rm, e).or_else(|| spine_beta(e, mode))
    })
}

fn spine_beta(x: &SuspExpr, mode: MetaMode) -> Option<(Position, RuleId)> {
    let SuspExpr::Term(t) = x else {
        return None;
    };
    let mut here = Position::root();
    let mut cur = t.clone();
    loop {
        match &cur {
            SuspTerm::App(f, _) => {
                if rule_matches(RuleId::BetaS, &SuspExpr::Term(cur.clone()), mode) {
                    return Some((here, RuleId::BetaS));
                }
                here = here.child(0);
                cur = (**f).clone();
            }
            SuspTerm::Abs(_, b) => {
                here = here.child(0);
                cur = (**b).clone();
            }
            _ => return None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expression is not in head normal form")]
pub struct NotHnf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadNormalForm {
    pub binders: usize,
    pub head: SuspExpr,
    pub args: Vec<SuspExpr>,
}

/// Split `λ…λ (h t1 … tn)`. A graftable suspension over a meta variable
/// counts as a (flexible) head.
pub fn hnf_decompose(x: &SuspExpr) -> Result<HeadNormalForm, NotHnf> {
    let SuspExpr::Term(t) = x else {
        return Err(NotHnf);
    };
    let mut binders = 0;
    let mut cur = t;
    while let SuspTerm::Abs(_, b) = cur {
        binders += 1;
        cur = b;
    }
    let mut args = Vec::new();
    while let SuspTerm::App(f, a) = cur {
        args.push(SuspExpr::Term((**a).clone()));
        cur = f;
    }
    args.reverse();
    match cur {
        SuspTerm::Const(_) | SuspTerm::Index(_) | SuspTerm::Meta(_) => {}
        SuspTerm::Susp(b, ..) if matches!(**b, SuspTerm::Meta(_)) => {}
        _ => return Err(NotHnf),
    }
    Ok(HeadNormalForm { binders, head: SuspExpr::Term(cur.clone()), args })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::normalize::rm_normalize;
    use crate::tree::NormalizeError;

    fn t(s: &str) -> SuspExpr {
        SuspExpr::parse(s).unwrap()
    }

    const G: MetaMode = MetaMode::Graftable;

    #[test]
    fn decomposition() {
        let h = hnf_decompose(&t("\\ \\ ((c:c #1) #2)")).unwrap();
        assert_eq!((h.binders, h.head.clone(), h.args.clone()), (2, t("c:c"), vec![t("#1"), t("#2")]));
        assert_eq!(hnf_decompose(&t("c:c")).unwrap().binders, 0);
        assert_eq!(hnf_decompose(&t("(\\ #1 c:c)")), Err(NotHnf));
        assert!(hnf_decompose(&t("([?f, 0, 1, nil] c:c)")).is_ok());
    }

    #[test]
    fn head_reduction_leaves_arguments_alone() {
        let r = head_normalize(&t("(\\ #1 (c:c c:d))"), 100, G).unwrap();
        let h = hnf_decompose(&r.result).unwrap();
        assert_eq!(h.head, t("c:c"));
        assert_eq!(rm_normalize(&r.result, G).unwrap(), t("(c:c c:d)"));
        assert_eq!(r.result, t("(c:c [c:d, 0, 0, nil])"));

        let r = head_normalize(&t("\\ ((\\ #1 c:c) (\\ #1 c:d))"), 100, G).unwrap();
        assert_eq!(r.result, t("\\ (c:c (\\ #1 c:d))"));
    }

    #[test]
    fn arguments_are_not_reduced() {
        let x = t("(c:f (\\ #1 c:a))");
        let r = head_normalize(&x, 100, G).unwrap();
        assert_eq!(r.result, x);
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn divergence_exhausts_budget() {
        let omega = t("(\\ (#1 #1) \\ (#1 #1))");
        assert!(matches!(head_normalize(&omega, 20, G), Err(NormalizeError::BudgetExhausted { .. })));
        assert!(matches!(head_normalize_classic(&omega, 20, G), Err(NormalizeError::BudgetExhausted { .. })));
    }

    #[test]
    fn merged_environment_under_index_is_unblocked() {
        let x = t("[#1, 1, 1, {(c:a, 0) :: nil, 0, 0, nil}]");
        let (p, r) = head_redex(&x, G).unwrap();
        assert_eq!((p.to_string(), r), ("1".to_string(), RuleId::M2));
        assert_eq!(head_normalize(&x, 10, G).unwrap().result, t("c:a"));
    }

    #[test]
    fn classic_head_gives_rm_normal_result() {
        let r = head_normalize_classic(&t("(\\ #1 (c:c c:d))"), 100, G).unwrap();
        assert_eq!(r.result, t("(c:c c:d)"));
    }
}
