// Named λ-terms through de Bruijn form: Church 2 applied to itself.

use std::error::Error;

use suspcalc::lambda::{beta_normalize, from_debruijn, to_debruijn, NamedTerm};
use suspcalc::rewrite::{full_normalize, MetaMode};
use suspcalc::susp::{SuspExpr, SuspTerm};

pub fn run() -> Result<(), Box<dyn Error>> {
    let two = "(\\f. \\x. f (f x))";
    let t = NamedTerm::parse(&format!("{two} {two}"))?;
    let d = to_debruijn(&t, &[])?;
    println!("named {t}\nindex {d}");
    let nf = beta_normalize(&d, 1000)?;
    println!("β-nf  {nf}\nnamed {}", from_debruijn(&nf, &[])?);

    // The suspension calculus reaches the same term.
    let red = full_normalize(&SuspExpr::Term(SuspTerm::from(&d)), 1000, MetaMode::Graftable)?;
    assert_eq!(red.result, SuspExpr::Term(SuspTerm::from(&nf)));
    println!("suspension calculus: {} steps, {} of them βs", red.steps, red.counted);
    Ok(())
}

fn main() {
    run().unwrap();
}
