// Terms of λυ, λs and λσ mapped into the suspension notation, plus the
// round trip from suspensions to λσ and back.

use std::error::Error;

use suspcalc::alt::{
    ls_to_susp, sigma_nf, sigma_to_susp, susp_to_sigma, ups_to_susp, LsTerm, SigExpr, UpsExpr,
};
use suspcalc::rewrite::{rm_normalize_term, MetaMode};
use suspcalc::susp::SuspTerm;

pub fn run() -> Result<(), Box<dyn Error>> {
    let UpsExpr::Term(u) = UpsExpr::parse("(\\ 1 2)[?a/]")? else { unreachable!() };
    let tu = ups_to_susp(&u);
    println!("λυ  {u}\n    ↦ {tu}\n    ↦ {}", rm_normalize_term(&tu, MetaMode::Graftable)?);

    let l = LsTerm::parse("(\\ 1 2) s{1} 3")?;
    println!("λs  {l}\n    ↦ {}", ls_to_susp(&l));

    let t = SuspTerm::parse("[\\ (#1 #2), 1, 2, (#1, 1) :: nil]")?;
    let s = susp_to_sigma(&t)?;
    println!("susp {t}\n    ↦ {s}\n    ↦ {}", sigma_to_susp(&s));
    println!("σ-normal {}", sigma_nf(&SigExpr::Term(s))?);
    Ok(())
}

fn main() {
    run().unwrap();
}
