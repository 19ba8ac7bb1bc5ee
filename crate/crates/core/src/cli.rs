//! Command-line front end. `run` does all the work so tests can drive it
//! in-process; the binary only wires up the process streams.

use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::alt::{
    ls_to_susp, sigma_to_susp, susp_to_sigma, ups_to_susp, LsRules, LsSystem, LsTerm, SigExpr, SigRules, SigSystem,
    UpsExpr, UpsRules, UpsSystem, UpsTerm, ALT_FUEL,
};
use crate::lambda::{db_head_redex, free_vars, from_debruijn, to_debruijn, Beta, BetaSystem, DbTerm, NamedTerm};
use crate::measures::{essence, eta, mu};
use crate::rewrite::{
    apply_rule, full_normalize_with, head_normalize_classic_with, head_normalize_with, rm_normalize_lo, MetaMode,
    RuleId, RuleSet, RM_FUEL,
};
use crate::susp::{SuspExpr, SuspTerm};
use crate::text::ParseError;
use crate::trace::TraceLine;
use crate::tree::{self, Limits, NormalizeError, NormalizeResult, Position, RewriteError, RewriteSystem};
use crate::typing::{typecheck_db, typecheck_susp, Context, Signature, TypeError};

#[derive(Debug, Parser)]
#[command(name = "suspcalc", version, about = "Suspension calculus workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an expression and print it in canonical form.
    Parse {
        /// Expression text, or `-` for stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = Grammar::Susp)]
        calculus: Grammar,
    },
    /// Reduce an expression to normal form.
    Normalize {
        input: String,
        #[arg(long, value_enum, default_value_t = Calculus::Susp)]
        calculus: Calculus,
        /// Only meaningful for susp and db.
        #[arg(long, value_enum, default_value_t = Strategy::Full)]
        strategy: Strategy,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Emit one JSON line per step before the result.
        #[arg(long)]
        trace: bool,
        /// Treat meta variables as logical, enabling (r7).
        #[arg(long)]
        logical_meta: bool,
    },
    /// Translate between calculi.
    Translate {
        input: String,
        #[arg(long, value_enum)]
        from: Grammar,
        #[arg(long, value_enum)]
        to: Grammar,
        /// Free-variable listing for named/db conversion, comma separated.
        #[arg(long)]
        free: Option<String>,
    },
    /// Infer the type of an annotated term.
    Typecheck {
        input: String,
        /// Signature file: one `name : TYPE` per line.
        #[arg(long)]
        sig: Option<PathBuf>,
        /// Context types, innermost first, comma separated.
        #[arg(long, default_value = "")]
        context: String,
        #[arg(long, value_enum, default_value_t = TypedGrammar::Susp)]
        calculus: TypedGrammar,
    },
    /// Report mu, eta(0..3) and the first-order essence.
    Measure { input: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    Susp,
    Db,
    Sigma,
    Upsilon,
    S,
    Se,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grammar {
    Susp,
    Db,
    Named,
    Sigma,
    Upsilon,
    S,
    Se,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypedGrammar {
    Susp,
    Db,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Rm,
    Full,
    Head,
    Ghead,
}

/// Why a command failed; each kind maps to one exit status.
#[derive(Debug)]
pub enum Failure {
    Parse(ParseError),
    Budget { partial: String, message: String },
    Type(TypeError),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Other(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Budget { .. } => 3,
            Failure::Type(_) => 4,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Self {
        Failure::Other(e.to_string())
    }
}

/// Lines for stdout, whether or not the command succeeded.
#[derive(Debug, Default)]
pub struct Output {
    pub lines: Vec<String>,
}

/// Run `cli`, writing results to `out` and diagnostics to `err`. Returns
/// the exit status.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut o = Output::default();
    let res = execute(cli.command, stdin, &mut o);
    for l in &o.lines {
        let _ = writeln!(out, "{l}");
    }
    match res {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Parse(e) => {
                    let _ = writeln!(err, "error: {e}");
                }
                Failure::Budget { partial, message } => {
                    let _ = writeln!(out, "{partial}");
                    let _ = writeln!(err, "error: {message}");
                }
                Failure::Type(e) => {
                    let _ = writeln!(err, "type error: {e}");
                }
                Failure::Other(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
            }
            f.exit_code()
        }
    }
}

/// Parse argv and run; convenience for tests.
pub fn run_args<I, T>(args: I, stdin: &str) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, &mut stdin.as_bytes(), &mut out, &mut err),
        Err(e) => {
            let _ = write!(err, "{e}");
            e.exit_code()
        }
    };
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn read_input(input: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if input != "-" {
        return Ok(input.to_string());
    }
    let mut s = String::new();
    stdin.read_to_string(&mut s).map_err(|e| Failure::Other(format!("reading stdin: {e}")))?;
    Ok(s.trim_end().to_string())
}

fn execute(cmd: Command, stdin: &mut dyn Read, o: &mut Output) -> Result<(), Failure> {
    match cmd {
        Command::Parse { input, calculus } => {
            let src = read_input(&input, stdin)?;
            o.lines.push(reprint(calculus, &src)?);
            Ok(())
        }
        Command::Normalize { input, calculus, strategy, max_steps, trace, logical_meta } => {
            let src = read_input(&input, stdin)?;
            let mode = if logical_meta { MetaMode::Logical } else { MetaMode::Graftable };
            let opts = NormalizeOpts { strategy, max_steps, trace, mode };
            normalize(calculus, &src, opts, o)
        }
        Command::Translate { input, from, to, free } => {
            let src = read_input(&input, stdin)?;
            let free: Option<Vec<String>> =
                free.map(|f| f.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect());
            o.lines.push(translate(from, to, &src, free.as_deref())?);
            Ok(())
        }
        Command::Typecheck { input, sig, context, calculus } => {
            let src = read_input(&input, stdin)?;
            let sig = match sig {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| Failure::Other(format!("reading {}: {e}", p.display())))?;
                    Signature::parse(&text)?
                }
                None => Signature::new(),
            };
            let ctx = Context::parse(&context)?;
            let ty = match calculus {
                TypedGrammar::Susp => typecheck_susp(&ctx, &sig, &SuspTerm::parse(&src)?),
                TypedGrammar::Db => typecheck_db(&ctx, &sig, &DbTerm::parse(&src)?),
            }
            .map_err(Failure::Type)?;
            o.lines.push(ty.to_string());
            Ok(())
        }
        Command::Measure { input } => {
            let src = read_input(&input, stdin)?;
            let x = SuspExpr::parse(&src)?;
            o.lines.push(format!("mu {}", mu(&x)));
            for i in 0..=3 {
                o.lines.push(format!("eta{i} {}", eta(i, &x)));
            }
            o.lines.push(format!("essence {}", essence(&x)));
            Ok(())
        }
    }
}

/// Parse `src` in grammar `g` and print it back.
pub fn reprint(g: Grammar, src: &str) -> Result<String, ParseError> {
    Ok(match g {
        Grammar::Susp => SuspExpr::parse(src)?.to_string(),
        Grammar::Db => DbTerm::parse(src)?.to_string(),
        Grammar::Named => NamedTerm::parse(src)?.to_string(),
        Grammar::Sigma => SigExpr::parse(src)?.to_string(),
        Grammar::Upsilon => UpsExpr::parse(src)?.to_string(),
        Grammar::S | Grammar::Se => LsTerm::parse(src)?.to_string(),
    })
}

/// Translate `src` from one calculus to another.
pub fn translate(from: Grammar, to: Grammar, src: &str, free: Option<&[String]>) -> Result<String, Failure> {
    use Grammar as G;
    Ok(match (from, to) {
        (G::Upsilon, G::Susp) => ups_to_susp(&UpsTerm::parse(src)?).to_string(),
        (G::S | G::Se, G::Susp) => ls_to_susp(&LsTerm::parse(src)?).to_string(),
        (G::Susp, G::Sigma) => {
            susp_to_sigma(&SuspTerm::parse(src)?).map_err(|e| Failure::Other(e.to_string()))?.to_string()
        }
        (G::Sigma, G::Susp) => sigma_to_susp(&crate::alt::SigTerm::parse(src)?).to_string(),
        (G::Named, G::Db) => {
            let t = NamedTerm::parse(src)?;
            let order: Vec<String> = match free {
                Some(f) => f.to_vec(),
                None => free_vars(&t).into_iter().collect(),
            };
            to_debruijn(&t, &order).map_err(|e| Failure::Other(e.to_string()))?.to_string()
        }
        (G::Db, G::Named) => {
            let t = DbTerm::parse(src)?;
            from_debruijn(&t, free.unwrap_or(&[])).map_err(|e| Failure::Other(e.to_string()))?.to_string()
        }
        (f, t) => {
            return Err(Failure::Other(format!(
                "no translation from {} to {}",
                f.to_possible_value().expect("no skipped variants").get_name(),
                t.to_possible_value().expect("no skipped variants").get_name()
            )))
        }
    })
}

#[derive(Debug, Clone, Copy)]
pub struct NormalizeOpts {
    pub strategy: Strategy,
    pub max_steps: usize,
    pub trace: bool,
    pub mode: MetaMode,
}

impl Default for NormalizeOpts {
    fn default() -> Self {
        NormalizeOpts { strategy: Strategy::Full, max_steps: 10_000, trace: false, mode: MetaMode::Graftable }
    }
}

fn emit<E, R>(
    o: &mut Output,
    trace: bool,
    res: NormalizeResult<E, R>,
    name: impl Fn(&R) -> String,
) -> Result<(), Failure>
where
    E: Display + std::fmt::Debug,
    R: std::fmt::Debug,
{
    let lines = |o: &mut Output, t: &[tree::TraceStep<E, R>]| {
        if trace {
            o.lines.extend(t.iter().map(|s| TraceLine::from_step(s, &name).to_line()));
        }
    };
    match res {
        Ok(r) => {
            lines(o, &r.trace);
            o.lines.push(r.result.to_string());
            Ok(())
        }
        Err(NormalizeError::BudgetExhausted { partial, steps, trace: t }) => {
            lines(o, &t);
            Err(Failure::Budget { partial: partial.to_string(), message: format!("budget exhausted after {steps} steps") })
        }
        Err(NormalizeError::FuelExhausted { partial, steps }) => {
            Err(Failure::Budget { partial: partial.to_string(), message: format!("gave up after {steps} steps") })
        }
        Err(NormalizeError::Rewrite(e)) => Err(e.into()),
    }
}

fn lo<S: RewriteSystem>(sys: &S, x: S::Expr, limits: Limits) -> NormalizeResult<S::Expr, S::Rule> {
    tree::normalize_lo(sys, x, limits)
}

/// Normalize `src` in `calculus`, pushing trace lines and the result.
pub fn normalize(calculus: Calculus, src: &str, opts: NormalizeOpts, o: &mut Output) -> Result<(), Failure> {
    let NormalizeOpts { strategy, max_steps, trace, mode } = opts;
    let limits = |fuel| Limits { budget: Some(max_steps), fuel, record: trace };
    match calculus {
        Calculus::Susp => {
            let x = SuspExpr::parse(src)?;
            let res = match strategy {
                Strategy::Rm => rm_normalize_lo(&x, mode, trace).map_err(NormalizeError::Rewrite),
                Strategy::Full => full_normalize_with(&x, mode, limits(RM_FUEL)),
                Strategy::Head => head_normalize_classic_with(&x, mode, limits(RM_FUEL)),
                Strategy::Ghead => head_normalize_with(&x, mode, limits(RM_FUEL)),
            };
            // rm normalization reports fuel as a rewrite error; surface it as
            // exhaustion rather than a generic failure.
            let res = res.map_err(|e| match e {
                NormalizeError::Rewrite(RewriteError::InternalFuelExhausted(steps)) => {
                    NormalizeError::FuelExhausted { partial: x.clone(), steps }
                }
                e => e,
            });
            emit(o, trace, res, |r: &RuleId| r.name().to_string())
        }
        Calculus::Db => {
            let t = DbTerm::parse(src)?;
            let res = match strategy {
                Strategy::Full => lo(&BetaSystem, t, limits(usize::MAX)),
                Strategy::Head | Strategy::Ghead => {
                    tree::drive(&BetaSystem, t, limits(usize::MAX), |e| db_head_redex(e).map(|p| (p, Beta)))
                }
                Strategy::Rm => return Err(Failure::Other("strategy rm needs suspensions; use --calculus susp".into())),
            };
            emit(o, trace, res, |_| "beta".to_string())
        }
        Calculus::Sigma => {
            let x = SigExpr::parse(src)?;
            emit(o, trace, lo(&SigSystem(SigRules::Full), x, limits(ALT_FUEL)), |r| r.name().to_string())
        }
        Calculus::Upsilon => {
            let x = UpsExpr::parse(src)?;
            emit(o, trace, lo(&UpsSystem(UpsRules::Full), x, limits(ALT_FUEL)), |r| r.name().to_string())
        }
        Calculus::S | Calculus::Se => {
            let rules = if calculus == Calculus::S { LsRules::Full } else { LsRules::SeFull };
            let x = LsTerm::parse(src)?;
            emit(o, trace, lo(&LsSystem(rules), x, limits(ALT_FUEL)), |r| r.name().to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("line {0}: malformed trace record")]
    Malformed(usize),
    #[error("line {0}: unknown rule")]
    UnknownRule(usize),
    #[error("line {0}: {1}")]
    Step(usize, RewriteError),
    #[error("line {0}: step index out of sequence")]
    OutOfSequence(usize),
    #[error("line {0}: replayed step disagrees with the recorded expression")]
    Mismatch(usize),
}

/// Re-apply each recorded (rule, position) of a susp trace, starting from
/// `start`, and check every recorded after-expression.
pub fn replay_susp_trace(start: &SuspExpr, lines: &[String], mode: MetaMode) -> Result<SuspExpr, ReplayError> {
    let mut cur = start.clone();
    for (n, l) in lines.iter().enumerate() {
        let rec = TraceLine::parse_line(l).map_err(|_| ReplayError::Malformed(n))?;
        if rec.step_index != n {
            return Err(ReplayError::OutOfSequence(n));
        }
        let rule: RuleId = rec.rule.parse().map_err(|_| ReplayError::UnknownRule(n))?;
        let pos: Position = rec.pos().map_err(|_| ReplayError::Malformed(n))?;
        let next = apply_rule(&cur, rule, &pos, mode).map_err(|e| ReplayError::Step(n, e))?;
        let recorded = SuspExpr::parse(&rec.after).map_err(|_| ReplayError::Malformed(n))?;
        if next != recorded {
            return Err(ReplayError::Mismatch(n));
        }
        cur = next;
    }
    Ok(cur)
}

/// Whether no rule at all applies anywhere in `x`.
pub fn is_normal(x: &SuspExpr, mode: MetaMode) -> bool {
    crate::rewrite::enumerate_redexes(x, RuleSet::all(), mode).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, String, String) {
        let mut v = vec!["suspcalc"];
        v.extend_from_slice(args);
        run_args(v, "")
    }

    #[test]
    fn rm_reads_a_constant() {
        let (code, out, _) = go(&["normalize", "--calculus", "susp", "--strategy", "rm", "[c:a, 1, 5, (c:b,0)::nil]"]);
        assert_eq!((code, out.trim()), (0, "c:a"));
    }

    #[test]
    fn sigma_shift_power_translates_to_an_index() {
        let (code, out, _) = go(&["translate", "--from", "sigma", "--to", "susp", "1[(! o !)]"]);
        assert_eq!((code, out.trim()), (0, "#3"));
    }

    #[test]
    fn divergent_term_exhausts_the_budget() {
        let omega = "(\\ (#1 #1) \\ (#1 #1))";
        let (code, out, err) = go(&["normalize", "--calculus", "susp", "--strategy", "full", "--max-steps", "5", omega]);
        assert_eq!(code, 3);
        assert!(SuspExpr::parse(out.trim()).is_ok());
        assert!(err.contains("budget"));
    }

    #[test]
    fn parse_errors_carry_a_location() {
        let (code, _, err) = go(&["parse", "[#1, 0,"]);
        assert_eq!(code, 2);
        assert!(err.contains("line 1, column"), "{err}");
    }

    #[test]
    fn type_errors_exit_4() {
        let (code, _, _) = go(&["typecheck", "--context", "A", "(#1 #1)"]);
        assert_eq!(code, 4);
        let (code, out, _) = go(&["typecheck", "--context", "A", "\\:A. #2"]);
        assert_eq!((code, out.trim()), (0, "A -> A"));
    }

    #[test]
    fn stdin_input() {
        let (code, out, _) = run_args(["suspcalc", "parse", "--calculus", "db", "-"], "(\\ #1) c:x\n");
        assert_eq!((code, out.trim()), (0, "(\\ #1) c:x"));
    }

    #[test]
    fn trace_replays() {
        let src = "(\\ \\ (#2 #1) c:a)";
        let (code, out, _) = go(&["normalize", "--trace", src]);
        assert_eq!(code, 0);
        let lines: Vec<String> = out.lines().map(String::from).collect();
        let (result, trace) = lines.split_last().unwrap();
        let start = SuspExpr::parse(src).unwrap();
        let end = replay_susp_trace(&start, trace, MetaMode::Graftable).unwrap();
        assert_eq!(end.to_string(), *result);
        assert!(is_normal(&end, MetaMode::Graftable));
    }

    #[test]
    fn db_and_named_round_trip() {
        let (_, db, _) = go(&["translate", "--from", "named", "--to", "db", "\\x. x y"]);
        assert_eq!(db.trim(), "\\ #1 #2");
        let (_, named, _) = go(&["translate", "--from", "db", "--to", "named", "--free", "y", "\\ #1 #2"]);
        assert_eq!(go(&["translate", "--from", "named", "--to", "db", "--free", "y", named.trim()]).1.trim(), "\\ #1 #2");
    }

    #[test]
    fn measures_are_reported() {
        let (code, out, _) = go(&["measure", "[#1, 1, 1, (c:a, 0) :: nil]"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("mu 1\neta0 "), "{out}");
        assert!(out.contains("essence "));
    }

    #[test]
    fn unsupported_direction() {
        let (code, _, err) = go(&["translate", "--from", "susp", "--to", "upsilon", "#1"]);
        assert_eq!(code, 1);
        assert!(err.contains("no translation"));
    }
}
