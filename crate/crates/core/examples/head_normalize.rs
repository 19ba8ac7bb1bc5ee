// Classic and generalized head normalization. The argument of the head is
// left alone, so a divergent argument does no harm.

use std::error::Error;

use suspcalc::rewrite::{head_normalize, head_normalize_classic, hnf_decompose, MetaMode};
use suspcalc::susp::SuspExpr;

pub fn run() -> Result<(), Box<dyn Error>> {
    let omega = "(\\ (#1 #1) \\ (#1 #1))";
    let x = SuspExpr::parse(&format!("((\\ \\ ((c:f #2) #1) c:a) {omega})"))?;
    for (name, red) in [
        ("classic", head_normalize_classic(&x, 100, MetaMode::Graftable)?),
        ("generalized", head_normalize(&x, 100, MetaMode::Graftable)?),
    ] {
        let hnf = hnf_decompose(&red.result)?;
        println!("{name:<12} {} steps: {}", red.steps, red.result);
        println!("{:<12} {} binders, head {}, {} args", "", hnf.binders, hnf.head, hnf.args.len());
    }
    Ok(())
}

fn main() {
    run().unwrap();
}
