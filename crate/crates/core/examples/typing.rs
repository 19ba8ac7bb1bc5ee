// Type checking annotated suspension terms, and watching the type survive
// every step of a full normalization.

use std::error::Error;

use suspcalc::rewrite::{full_normalize, MetaMode};
use suspcalc::susp::{SuspExpr, SuspTerm};
use suspcalc::typing::{typecheck_susp, Context, Signature};

pub fn run() -> Result<(), Box<dyn Error>> {
    let sig = Signature::parse("zero : nat\nsucc : nat -> nat\nplus : nat -> nat -> nat")?;
    let ctx = Context::parse("nat")?;
    let src = "(\\:nat -> nat. (#1 (#1 #2)) \\:nat. ((c:plus #1) #2))";
    let t = SuspTerm::parse(src)?;
    let ty = typecheck_susp(&ctx, &sig, &t)?;
    println!("{t} : {ty}");
    let red = full_normalize(&SuspExpr::Term(t), 1000, MetaMode::Graftable)?;
    for s in &red.trace {
        let step_ty = typecheck_susp(&ctx, &sig, s.after.as_term().expect("terms stay terms"))?;
        assert_eq!(step_ty, ty);
    }
    println!("{} steps, each typed {ty}; normal form {}", red.steps, red.result);

    let bad = SuspTerm::parse("(c:succ c:succ)")?;
    println!("(c:succ c:succ): {}", typecheck_susp(&ctx, &sig, &bad).unwrap_err());
    Ok(())
}

fn main() {
    run().unwrap();
}
