//! Deterministic random generators for tests, examples and the acceptance
//! suite. Every suspension expression produced here is wellformed by
//! construction.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alt::{LsTerm, SigSub, SigTerm, UpsSub, UpsTerm};
use crate::lambda::{DbTerm, NamedTerm};
use crate::rewrite::{random_derivation, MetaMode, RuleSet};
use crate::susp::{env_len, env_lev, EnvTerm, SuspEnv, SuspExpr, SuspTerm};
use crate::typing::{Context, Signature};
use crate::types::SimpleType;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub allow_meta: bool,
    pub allow_const: bool,
    /// Largest index generated at a leaf.
    pub max_index: u64,
    /// Largest slack added above the minimal legal level.
    pub level_slack: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { allow_meta: false, allow_const: true, max_index: 3, level_slack: 2 }
    }
}

impl GenConfig {
    pub fn metas(allow_meta: bool) -> Self {
        GenConfig { allow_meta, ..GenConfig::default() }
    }
}

const CONSTS: [&str; 3] = ["a", "b", "c"];
const METAS: [&str; 3] = ["t", "s", "u"];

/// A suspension expression with at most `size` nodes; terms are favoured.
pub fn gen_expr(seed: u64, size: usize, allow_meta: bool) -> SuspExpr {
    let mut r = rng(seed);
    gen_expr_with(&mut r, size, GenConfig::metas(allow_meta))
}

pub fn gen_expr_with<R: Rng>(r: &mut R, size: usize, cfg: GenConfig) -> SuspExpr {
    let size = size.max(1);
    if size >= 3 && r.gen_bool(0.2) {
        SuspExpr::Env(gen_env(r, size, cfg))
    } else {
        SuspExpr::Term(gen_term(r, size, cfg))
    }
}

fn leaf<R: Rng>(r: &mut R, cfg: GenConfig) -> SuspTerm {
    let mut kinds = vec![0];
    if cfg.allow_const {
        kinds.push(1);
    }
    if cfg.allow_meta {
        kinds.push(2);
    }
    match *kinds.choose(r).unwrap() {
        0 => SuspTerm::Index(r.gen_range(1..=cfg.max_index.max(1))),
        1 => SuspTerm::constant(CONSTS.choose(r).unwrap()),
        _ => SuspTerm::meta(METAS.choose(r).unwrap()),
    }
}

/// A wellformed term with at most `size` nodes.
pub fn gen_term<R: Rng>(r: &mut R, size: usize, cfg: GenConfig) -> SuspTerm {
    let budget = r.gen_range(1..=size.max(1));
    term_exact(r, budget, cfg)
}

fn term_exact<R: Rng>(r: &mut R, n: usize, cfg: GenConfig) -> SuspTerm {
    if n <= 1 {
        return leaf(r, cfg);
    }
    let choice = if n == 2 { 0 } else { r.gen_range(0..3) };
    match choice {
        0 => SuspTerm::abs(term_exact(r, n - 1, cfg)),
        1 => {
            let k = r.gen_range(1..n - 1);
            SuspTerm::app(term_exact(r, k, cfg), term_exact(r, n - 1 - k, cfg))
        }
        _ => {
            let k = r.gen_range(1..n - 1);
            let body = term_exact(r, k, cfg);
            let e = env_exact(r, n - 1 - k, cfg);
            let nl = env_lev(&e) + r.gen_range(0..=cfg.level_slack);
            SuspTerm::susp(body, env_len(&e), nl, e)
        }
    }
}

/// A wellformed environment with at most `size` nodes.
pub fn gen_env<R: Rng>(r: &mut R, size: usize, cfg: GenConfig) -> SuspEnv {
    let budget = r.gen_range(1..=size.max(1));
    env_exact(r, budget, cfg)
}

fn env_exact<R: Rng>(r: &mut R, n: usize, cfg: GenConfig) -> SuspEnv {
    if n < 3 {
        return SuspEnv::Nil;
    }
    if n >= 4 && r.gen_bool(0.6) {
        // cons node, entry node, term, tail
        let k = r.gen_range(1..=n - 3);
        let t = term_exact(r, k, cfg);
        let tail = env_exact(r, n - 2 - k, cfg);
        let level = env_lev(&tail) + r.gen_range(0..=cfg.level_slack);
        SuspEnv::Cons(EnvTerm::new(t, level), Arc::new(tail))
    } else {
        let k = r.gen_range(1..n - 1);
        let e1 = env_exact(r, k, cfg);
        let e2 = env_exact(r, n - 1 - k, cfg);
        let nl1 = env_lev(&e1) + r.gen_range(0..=cfg.level_slack);
        SuspEnv::merged(e1, nl1, env_len(&e2), e2)
    }
}

/// A simple environment of exactly `len` entries with terms of at most `size` nodes.
pub fn gen_simple_env<R: Rng>(r: &mut R, len: usize, size: usize, cfg: GenConfig) -> SuspEnv {
    let mut e = SuspEnv::Nil;
    for _ in 0..len {
        let t = gen_term(r, size, cfg);
        let level = env_lev(&e) + r.gen_range(0..=cfg.level_slack);
        e = SuspEnv::Cons(EnvTerm::new(t, level), Arc::new(e));
    }
    e
}

/// Components for the associativity check; both sides are wellformed.
pub fn gen_assoc<R: Rng>(r: &mut R, size: usize, cfg: GenConfig) -> crate::rewrite::AssocInstance {
    let e1 = gen_env(r, size, cfg);
    let e2 = gen_env(r, size, cfg);
    let e3 = gen_env(r, size, cfg);
    let nl1 = env_lev(&e1) + r.gen_range(0..=cfg.level_slack + 1);
    let nl2 = env_lev(&e2) + r.gen_range(0..=cfg.level_slack + 1);
    crate::rewrite::AssocInstance { ol2: env_len(&e2), ol3: env_len(&e3), e1, nl1, e2, nl2, e3 }
}

/// A de Bruijn term whose free indices are at most `free` above the binder depth.
pub fn gen_db<R: Rng>(r: &mut R, size: usize, free: u64, allow_const: bool) -> DbTerm {
    let n = r.gen_range(1..=size.max(1));
    db_exact(r, n, 0, free, allow_const)
}

fn db_exact<R: Rng>(r: &mut R, n: usize, depth: u64, free: u64, allow_const: bool) -> DbTerm {
    if n <= 1 {
        let max = depth + free;
        if max == 0 || (allow_const && r.gen_bool(0.3)) {
            return DbTerm::Const(CONSTS.choose(r).unwrap().to_string());
        }
        return DbTerm::Index(r.gen_range(1..=max));
    }
    if n == 2 || r.gen_bool(0.4) {
        DbTerm::abs(db_exact(r, n - 1, depth + 1, free, allow_const))
    } else {
        let k = r.gen_range(1..n - 1);
        DbTerm::app(db_exact(r, k, depth, free, allow_const), db_exact(r, n - 1 - k, depth, free, allow_const))
    }
}

/// A de Bruijn term with at least one β-redex (when size allows).
pub fn gen_db_redex<R: Rng>(r: &mut R, size: usize, free: u64) -> DbTerm {
    let body = gen_db(r, size / 2 + 1, free + 1, true);
    let arg = gen_db(r, size / 2 + 1, free, true);
    let redex = DbTerm::app(DbTerm::abs(body), arg);
    match r.gen_range(0..3) {
        0 => redex,
        1 => DbTerm::abs(redex),
        _ => DbTerm::app(gen_db(r, 3, free, true), redex),
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

pub fn gen_named<R: Rng>(r: &mut R, size: usize) -> NamedTerm {
    let n = r.gen_range(1..=size.max(1));
    named_exact(r, n)
}

fn named_exact<R: Rng>(r: &mut R, n: usize) -> NamedTerm {
    if n <= 1 {
        return if r.gen_bool(0.2) {
            NamedTerm::Const(CONSTS.choose(r).unwrap().to_string())
        } else {
            NamedTerm::Var(VARS.choose(r).unwrap().to_string())
        };
    }
    if n == 2 || r.gen_bool(0.4) {
        NamedTerm::Abs(VARS.choose(r).unwrap().to_string(), None, Box::new(named_exact(r, n - 1)))
    } else {
        let k = r.gen_range(1..n - 1);
        NamedTerm::App(Box::new(named_exact(r, k)), Box::new(named_exact(r, n - 1 - k)))
    }
}

/// Signature used by the typed generator.
pub fn typed_signature() -> Signature {
    let a = SimpleType::base("A");
    let b = SimpleType::base("B");
    Signature::new()
        .with("a", a.clone())
        .with("b", b.clone())
        .with("f", SimpleType::arrow(a.clone(), b.clone()))
        .with("g", SimpleType::arrow(b.clone(), a.clone()))
        .with("h", SimpleType::curried(&[a.clone(), a.clone()], a.clone()))
}

fn small_type<R: Rng>(r: &mut R) -> SimpleType {
    let a = SimpleType::base("A");
    let b = SimpleType::base("B");
    match r.gen_range(0..5) {
        0 | 1 => a,
        2 => b,
        3 => SimpleType::arrow(a, b),
        _ => SimpleType::arrow(a.clone(), a),
    }
}

/// A well-typed annotated term: `(context, signature, term, type)`.
/// After construction up to `steps` random ⊳rmβs steps introduce suspensions.
pub fn gen_typed<R: Rng>(r: &mut R, size: usize, steps: usize) -> (Context, Signature, SuspTerm, SimpleType) {
    let sig = typed_signature();
    let ctx = Context((0..r.gen_range(0..=2)).map(|_| small_type(r)).collect());
    let ty = small_type(r);
    let t = typed_term(r, &sig, &ctx, &ty, size.max(1));
    let x = SuspExpr::Term(t);
    let (x, _) = random_derivation(&x, RuleSet::all(), MetaMode::Graftable, r.gen_range(0..=steps), r)
        .expect("typed terms have small levels");
    let SuspExpr::Term(t) = x else { unreachable!() };
    (ctx, sig, t, ty)
}

fn typed_term<R: Rng>(r: &mut R, sig: &Signature, ctx: &Context, ty: &SimpleType, n: usize) -> SuspTerm {
    let vars: Vec<u64> = (1..=ctx.0.len() as u64).filter(|&i| ctx.get(i) == Some(ty)).collect();
    let consts: Vec<&String> = sig.0.iter().filter(|(_, t)| *t == ty).map(|(c, _)| c).collect();
    let leaf_ok = !vars.is_empty() || !consts.is_empty();
    if leaf_ok && (n <= 1 || r.gen_bool(0.2)) {
        let use_var = !vars.is_empty() && (consts.is_empty() || r.gen_bool(0.5));
        return if use_var {
            SuspTerm::Index(*vars.choose(r).unwrap())
        } else {
            SuspTerm::constant(consts.choose(r).unwrap())
        };
    }
    let n = n.saturating_sub(1).max(1);
    match ty {
        SimpleType::Arrow(dom, cod) if r.gen_bool(0.6) => {
            SuspTerm::abs_typed((**dom).clone(), typed_term(r, sig, &ctx.push((**dom).clone()), cod, n))
        }
        SimpleType::Base(_) if n <= 2 => {
            // Saturate a constant whose result is `ty` with leaf arguments.
            let heads: Vec<(&String, &SimpleType)> = sig.0.iter().filter(|(_, t)| result_of(t) == ty).collect();
            let (c, cty) = heads.choose(r).unwrap();
            let mut acc = SuspTerm::constant(c);
            let mut cur = (*cty).clone();
            while let SimpleType::Arrow(dom, cod) = cur {
                acc = SuspTerm::app(acc, typed_term(r, sig, ctx, &dom, 1));
                cur = (*cod).clone();
            }
            acc
        }
        _ => {
            let arg_ty = small_type(r);
            let k = r.gen_range(1..=n.max(2) - 1);
            let f = typed_term(r, sig, ctx, &SimpleType::arrow(arg_ty.clone(), ty.clone()), k);
            let a = typed_term(r, sig, ctx, &arg_ty, (n - k).max(1));
            SuspTerm::app(f, a)
        }
    }
}

fn result_of(t: &SimpleType) -> &SimpleType {
    match t {
        SimpleType::Arrow(_, cod) => result_of(cod),
        base => base,
    }
}

fn alt_leaf<R: Rng>(r: &mut R, allow_meta: bool) -> Option<&'static str> {
    (allow_meta && r.gen_bool(0.25)).then(|| *METAS.choose(r).unwrap())
}

/// A λυ term with at most `size` nodes.
pub fn gen_ups<R: Rng>(r: &mut R, size: usize, allow_meta: bool) -> UpsTerm {
    let n = r.gen_range(1..=size.max(1));
    ups_exact(r, n, allow_meta)
}

fn ups_exact<R: Rng>(r: &mut R, n: usize, allow_meta: bool) -> UpsTerm {
    if n <= 1 {
        return match alt_leaf(r, allow_meta) {
            Some(m) => UpsTerm::meta(m),
            None => UpsTerm::Index(r.gen_range(1..=4)),
        };
    }
    match if n == 2 { 0 } else { r.gen_range(0..3) } {
        0 => UpsTerm::abs(ups_exact(r, n - 1, allow_meta)),
        1 => {
            let k = r.gen_range(1..n - 1);
            UpsTerm::app(ups_exact(r, k, allow_meta), ups_exact(r, n - 1 - k, allow_meta))
        }
        _ => {
            let k = r.gen_range(1..n - 1);
            UpsTerm::closure(ups_exact(r, k, allow_meta), ups_sub_exact(r, n - 1 - k, allow_meta))
        }
    }
}

fn ups_sub_exact<R: Rng>(r: &mut R, n: usize, allow_meta: bool) -> UpsSub {
    if n <= 1 {
        return UpsSub::Shift;
    }
    if r.gen_bool(0.4) {
        UpsSub::lift(ups_sub_exact(r, n - 1, allow_meta))
    } else {
        UpsSub::slash(ups_exact(r, n - 1, allow_meta))
    }
}

/// A λs term with at most `size` nodes.
pub fn gen_ls<R: Rng>(r: &mut R, size: usize, allow_meta: bool) -> LsTerm {
    let n = r.gen_range(1..=size.max(1));
    ls_exact(r, n, allow_meta)
}

fn ls_exact<R: Rng>(r: &mut R, n: usize, allow_meta: bool) -> LsTerm {
    if n <= 1 {
        return match alt_leaf(r, allow_meta) {
            Some(m) => LsTerm::meta(m),
            None => LsTerm::Index(r.gen_range(1..=4)),
        };
    }
    let choice = if n == 2 { [0, 3][r.gen_range(0..2)] } else { r.gen_range(0..4) };
    match choice {
        0 => LsTerm::abs(ls_exact(r, n - 1, allow_meta)),
        1 => {
            let k = r.gen_range(1..n - 1);
            LsTerm::app(ls_exact(r, k, allow_meta), ls_exact(r, n - 1 - k, allow_meta))
        }
        2 => {
            let k = r.gen_range(1..n - 1);
            LsTerm::sigma(ls_exact(r, k, allow_meta), r.gen_range(1..=3), ls_exact(r, n - 1 - k, allow_meta))
        }
        _ => LsTerm::phi(r.gen_range(0..=2), r.gen_range(1..=3), ls_exact(r, n - 1, allow_meta)),
    }
}

/// A λσ term with at most `size` nodes.
pub fn gen_sig<R: Rng>(r: &mut R, size: usize, allow_meta: bool) -> SigTerm {
    let n = r.gen_range(1..=size.max(1));
    sig_exact(r, n, allow_meta)
}

fn sig_exact<R: Rng>(r: &mut R, n: usize, allow_meta: bool) -> SigTerm {
    if n <= 1 {
        return match alt_leaf(r, allow_meta) {
            Some(m) => SigTerm::meta(m),
            None => SigTerm::One,
        };
    }
    match if n == 2 { 0 } else { r.gen_range(0..3) } {
        0 => SigTerm::abs(sig_exact(r, n - 1, allow_meta)),
        1 => {
            let k = r.gen_range(1..n - 1);
            SigTerm::app(sig_exact(r, k, allow_meta), sig_exact(r, n - 1 - k, allow_meta))
        }
        _ => {
            let k = r.gen_range(1..n - 1);
            SigTerm::closure(sig_exact(r, k, allow_meta), sig_sub_exact(r, n - 1 - k, allow_meta))
        }
    }
}

/// A λσ substitution with at most `size` nodes.
pub fn gen_sig_sub<R: Rng>(r: &mut R, size: usize, allow_meta: bool) -> SigSub {
    let n = r.gen_range(1..=size.max(1));
    sig_sub_exact(r, n, allow_meta)
}

fn sig_sub_exact<R: Rng>(r: &mut R, n: usize, allow_meta: bool) -> SigSub {
    if n <= 2 {
        return if r.gen_bool(0.6) { SigSub::Shift } else { SigSub::Id };
    }
    let k = r.gen_range(1..n - 1);
    if r.gen_bool(0.5) {
        SigSub::cons(sig_exact(r, k, allow_meta), sig_sub_exact(r, n - 1 - k, allow_meta))
    } else {
        SigSub::comp(sig_sub_exact(r, k, allow_meta), sig_sub_exact(r, n - 1 - k, allow_meta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{from_debruijn, to_debruijn};
    use crate::susp::check_wellformed;
    use crate::typing::typecheck_susp;

    #[test]
    fn generator_contract() {
        for seed in 0..300 {
            let x = gen_expr(seed, 30, seed % 2 == 0);
            assert_eq!(check_wellformed(&x), Ok(()), "{x}");
            assert!(x.size() <= 30);
            if seed % 2 == 1 {
                assert!(!x.has_meta());
            }
        }
        for seed in 0..20 {
            let x = gen_expr(seed, 1, false);
            assert!(matches!(x, SuspExpr::Term(SuspTerm::Const(_) | SuspTerm::Index(_))), "{x}");
        }
        assert_eq!(gen_expr(7, 25, true), gen_expr(7, 25, true));
    }

    #[test]
    fn assoc_instances_are_wellformed() {
        let mut r = rng(1);
        for _ in 0..100 {
            let inst = gen_assoc(&mut r, 12, GenConfig::metas(true));
            assert_eq!(check_wellformed(&SuspExpr::Env(inst.left().unwrap())), Ok(()));
            assert_eq!(check_wellformed(&SuspExpr::Env(inst.right().unwrap())), Ok(()));
        }
    }

    #[test]
    fn typed_terms_typecheck() {
        let mut r = rng(2);
        for _ in 0..200 {
            let (ctx, sig, t, ty) = gen_typed(&mut r, 15, 4);
            assert_eq!(typecheck_susp(&ctx, &sig, &t), Ok(ty), "{t}");
            assert_eq!(check_wellformed(&SuspExpr::Term(t)), Ok(()));
        }
    }

    #[test]
    fn db_and_named_terms() {
        let mut r = rng(3);
        for _ in 0..100 {
            let d = gen_db(&mut r, 15, 2, true);
            let names = vec!["p".to_string(), "q".to_string()];
            let n = from_debruijn(&d, &names).unwrap();
            assert_eq!(to_debruijn(&n, &names).unwrap(), d);
            let _ = gen_named(&mut r, 10);
        }
    }
}
