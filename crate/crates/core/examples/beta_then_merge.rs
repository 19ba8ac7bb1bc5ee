// Two βs steps leave nested suspensions; a reading step and the merging
// rules then collapse them into one environment.

use std::error::Error;

use suspcalc::rewrite::{apply_rule, full_normalize, rm_normalize_lo, MetaMode, RuleId};
use suspcalc::susp::SuspExpr;
use suspcalc::tree::Position;

const G: MetaMode = MetaMode::Graftable;

pub fn run() -> Result<(), Box<dyn Error>> {
    let x = SuspExpr::parse("(\\ \\ (\\ ?t ?s1) ?s2)")?;
    println!("{x}");
    let x = apply_rule(&x, RuleId::BetaS, &Position::root(), G)?;
    let x = apply_rule(&x, RuleId::BetaS, &Position(vec![0, 0]), G)?;
    println!("  βs βs  {x}");
    let x = apply_rule(&x, RuleId::R6, &Position::root(), G)?;
    println!("  r6     {x}");
    let red = rm_normalize_lo(&x, G, true)?;
    let rules: Vec<_> = red.trace.iter().map(|s| s.rule.name()).collect();
    println!("  {}  {}", rules.join(" "), red.result);

    let full = full_normalize(&SuspExpr::parse("(\\ \\ (\\ ?t ?s1) ?s2)")?, 100, G)?;
    assert_eq!(full.result, red.result);
    println!("full normalization agrees after {} steps", full.steps);
    Ok(())
}

fn main() {
    run().unwrap();
}
