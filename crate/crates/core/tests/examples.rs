//! Every example in `examples/` runs to completion.

macro_rules! examples {
    ($($name:ident),* $(,)?) => {$(
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().unwrap();
        }
    )*};
}

examples!(rm_normalize, beta_then_merge, measures, typing, translations, mellies, named_terms, head_normalize);
