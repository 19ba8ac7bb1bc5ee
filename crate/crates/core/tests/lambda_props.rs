use proptest::prelude::*;
use suspcalc::gen::{gen_db, gen_db_redex, gen_named, rng};
use suspcalc::lambda::{
    beta_normalize, beta_redexes, beta_step, db_shift, free_vars, from_debruijn, subst_named, to_debruijn, NamedTerm,
};
use suspcalc::tree::Tree;

fn listing(n: usize) -> Vec<String> {
    ["u", "v", "w", "x1"].iter().take(n).map(|s| s.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn named_round_trip(seed in any::<u64>()) {
        let t = gen_db(&mut rng(seed), 20, 3, true);
        // x1 in the listing forces binder names to skip it.
        let fo = listing(4);
        let named = from_debruijn(&t, &fo).unwrap();
        prop_assert_eq!(to_debruijn(&named, &fo).unwrap(), t);
    }

    #[test]
    fn named_contraction_agrees_with_de_bruijn(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = gen_db_redex(&mut r, 14, 0);
        let named = from_debruijn(&t, &[]).unwrap();
        prop_assert!(free_vars(&named).is_empty());
        for p in beta_redexes(&t) {
            let NamedTerm::App(f, a) = named.at(&p).unwrap() else { panic!("redex shape") };
            let NamedTerm::Abs(x, _, body) = *f else { panic!("redex shape") };
            let contracted = named.replace_at(&p, subst_named(&body, &a, &x)).unwrap();
            prop_assert_eq!(to_debruijn(&contracted, &[]).unwrap(), beta_step(&t, &p).unwrap());
        }
    }

    #[test]
    fn church_rosser(seed in any::<u64>()) {
        let t = gen_db_redex(&mut rng(seed), 14, 2);
        let Ok(nf) = beta_normalize(&t, 2000) else { return Ok(()) };
        for p in beta_redexes(&t) {
            let succ = beta_step(&t, &p).unwrap();
            prop_assert_eq!(beta_normalize(&succ, 2000).unwrap(), nf.clone());
        }
    }

    #[test]
    fn zero_shift_is_identity(seed in any::<u64>(), cutoff in 0u64..5) {
        let t = gen_db(&mut rng(seed), 20, 3, true);
        prop_assert_eq!(db_shift(&t, 0, cutoff).unwrap(), t);
    }

    #[test]
    fn named_parse_print(seed in any::<u64>()) {
        let t = gen_named(&mut rng(seed), 20);
        prop_assert_eq!(NamedTerm::parse(&t.to_string()).unwrap(), t);
    }
}
