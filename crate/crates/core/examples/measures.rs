// The termination measures on a small derivation: μ, η0 and the essence,
// with the path ordering checked between consecutive expressions.

use std::error::Error;

use suspcalc::measures::{essence, eta, expr_gg, mu};
use suspcalc::rewrite::{rm_normalize_lo, MetaMode};
use suspcalc::susp::SuspExpr;

pub fn run() -> Result<(), Box<dyn Error>> {
    let x = SuspExpr::parse("[[(#1 \\ #2), 1, 1, (?t, 0) :: nil], 1, 2, (c:a, 1) :: nil]")?;
    let red = rm_normalize_lo(&x, MetaMode::Graftable, true)?;
    let mut exprs = vec![x];
    exprs.extend(red.trace.iter().map(|s| s.after.clone()));
    for (i, e) in exprs.iter().enumerate() {
        let order = match exprs.get(i + 1) {
            Some(next) if expr_gg(e, next) => "≫ next",
            Some(_) => "not ≫ next",
            None => "normal",
        };
        println!("mu {} eta0 {:>2}  {:<11} {}", mu(e), eta(0, e), order, essence(e));
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
