// A strongly normalizing λσ term whose σ-reduction can be unfolded forever,
// next to the suspension reduction of the same redex, which stops.

use std::error::Error;

use suspcalc::alt::{mellies_susp_replay, mellies_unfold, SigTerm};
use suspcalc::susp::{SuspEnv, SuspTerm};

pub fn run() -> Result<(), Box<dyn Error>> {
    let (trace, report) = mellies_unfold(&SigTerm::meta("a"), &SigTerm::meta("b"), 4)?;
    println!("λσ: {} steps, term sizes after each cycle {:?}", trace.len(), report.sizes);

    let (a, b) = (SuspTerm::meta("a"), SuspTerm::meta("b"));
    let e = SuspEnv::cons(SuspTerm::constant("k"), 0, SuspEnv::Nil);
    let red = mellies_susp_replay(&a, &b, 1, 1, &e)?;
    println!("suspensions: normal after {} steps: {}", red.steps, red.result);
    Ok(())
}

fn main() {
    run().unwrap();
}
