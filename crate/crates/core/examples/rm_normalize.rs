// Reading and merging a suspension to its rm-normal form, one step per line.

use std::error::Error;

use suspcalc::rewrite::{rm_normalize_lo, MetaMode};
use suspcalc::susp::SuspExpr;

pub fn run() -> Result<(), Box<dyn Error>> {
    let x = SuspExpr::parse("[(\\ (#1 #2) #3), 2, 3, (c:a, 2) :: (?t, 1) :: nil]")?;
    println!("start  {x}");
    let red = rm_normalize_lo(&x, MetaMode::Graftable, true)?;
    for s in &red.trace {
        println!("{:>5}  {:<3} at /{:<6} {}", s.step_index, s.rule, s.pos, s.after);
    }
    println!("normal {}", red.result);
    Ok(())
}

fn main() {
    run().unwrap();
}
