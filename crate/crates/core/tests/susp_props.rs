use proptest::prelude::*;
use suspcalc::gen::{gen_env, gen_expr, gen_simple_env, rng, GenConfig};
use suspcalc::susp::{check_wellformed, env_ind, env_len, env_lev, is_simple, truncate, SuspEnv, SuspExpr};
use suspcalc::tree::Tree;

fn envs_of(x: &SuspExpr) -> Vec<SuspEnv> {
    x.positions()
        .into_iter()
        .filter_map(|p| match x.at(&p) {
            Some(SuspExpr::Env(e)) => Some(e),
            _ => None,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generated_expressions_are_wellformed(seed in any::<u64>(), metas in any::<bool>()) {
        let x = gen_expr(seed, 40, metas);
        prop_assert!(check_wellformed(&x).is_ok(), "{x}");
    }

    #[test]
    fn lev_dominates_ind(seed in any::<u64>()) {
        let x = gen_expr(seed, 40, true);
        for e in envs_of(&x) {
            for i in 0..=env_len(&e) {
                prop_assert!(env_lev(&e) >= env_ind(&e, i), "{e} at {i}");
            }
        }
    }

    #[test]
    fn simple_index_is_head_level(seed in any::<u64>(), len in 0usize..5) {
        let e = gen_simple_env(&mut rng(seed), len, 6, GenConfig::metas(true));
        prop_assert!(is_simple(&e));
        let want = match &e {
            SuspEnv::Cons(et, _) => et.level,
            _ => 0,
        };
        prop_assert_eq!(env_ind(&e, 0), want);
    }

    #[test]
    fn truncation_length(seed in any::<u64>(), len in 0usize..6, i in 0u64..8) {
        let e = gen_simple_env(&mut rng(seed), len, 6, GenConfig::default());
        prop_assert_eq!(env_len(&truncate(&e, i).unwrap()), env_len(&e).saturating_sub(i));
    }

    #[test]
    fn parse_print(seed in any::<u64>()) {
        let x = gen_expr(seed, 40, true);
        prop_assert_eq!(SuspExpr::parse(&x.to_string()).unwrap(), x);
        let e = gen_env(&mut rng(seed), 30, GenConfig::metas(true));
        prop_assert_eq!(SuspEnv::parse(&e.to_string()).unwrap(), e);
    }
}
