//! Command-line driver: every suite and computation with deterministic JSON output.
//!
//! Exit status is 0 when every check passes, 1 when a check fails, and 2 on
//! usage errors.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use num::{One, Zero};
use serde_json::{json, Value};

use crate::cherednik::{selftest, Algebra, HElement};
use crate::cuspidal::{classify_lie, lie_algebra_at_origin, lie_suite, tangent_dim_origin};
use crate::psi::psi;
use crate::report::{CheckReport, Mutation, Report, VerifyOptions};
use crate::scalar::{fmt_rational, parse_rational};
use crate::sl2::{kernel_basis_2d, rho, sl2_suite};
use crate::tau::{fixed_locus_analysis, tau_suite};
use crate::verify::{self, Generators};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `symbolic` or an exact rational `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AMode {
    Symbolic,
    Value(BigRational),
}

impl AMode {
    /// The value used where `a` must be specialized; `1` when symbolic.
    pub fn value_or_one(&self) -> BigRational {
        match self {
            AMode::Symbolic => BigRational::one(),
            AMode::Value(v) => v.clone(),
        }
    }
}

impl fmt::Display for AMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AMode::Symbolic => f.write_str("symbolic"),
            AMode::Value(v) => f.write_str(&fmt_rational(v)),
        }
    }
}

impl FromStr for AMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(AMode::Symbolic);
        }
        parse_rational(s).map(AMode::Value).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Psi,
    Z0,
    Zc,
    Horreur,
    Poisson,
    Phi,
    Lie,
    Sl2,
    Tau,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Psi,
        Suite::Z0,
        Suite::Zc,
        Suite::Horreur,
        Suite::Poisson,
        Suite::Phi,
        Suite::Lie,
        Suite::Sl2,
        Suite::Tau,
    ];

    /// Expands `all` and sorts into canonical order.
    pub fn expand(selection: &[Suite]) -> Vec<Suite> {
        let mut v: Vec<Suite> = if selection.is_empty() || selection.contains(&Suite::All) {
            Suite::EACH.to_vec()
        } else {
            selection.to_vec()
        };
        v.sort();
        v.dedup();
        v
    }
}

/// Flags shared by every subcommand that runs the engine.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Half the order of the dihedral group.
    #[arg(long, default_value_t = 5)]
    pub d: u32,
    /// `symbolic` or an exact rational `p/q`. Suites keep `a` symbolic; the
    /// Lie algebra and fixed-locus computations use this value (1 if symbolic).
    #[arg(long, default_value = "symbolic")]
    pub a: AMode,
    /// Truncation order in `t` for displayed commutators.
    #[arg(long = "t-order", default_value_t = 1)]
    pub t_order: u8,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Witness truncation.
    #[arg(long = "max-terms", default_value_t = 50)]
    pub max_terms: usize,
    /// Record per-suite wall time in the report.
    #[arg(long)]
    pub timings: bool,
    /// Apply a negative-control perturbation.
    #[arg(long)]
    pub mutation: Option<Mutation>,
    /// Largest accepted `d`.
    #[arg(long = "max-d", default_value_t = 8)]
    pub max_d: u32,
}

impl RunConfig {
    pub fn options(&self) -> VerifyOptions {
        VerifyOptions {
            max_terms: self.max_terms,
            mutation: self.mutation,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.d < 2 {
            return Err(format!("--d must be at least 2, got {}", self.d));
        }
        if self.d > self.max_d {
            return Err(format!("--d {} exceeds the ceiling {} (raise --max-d)", self.d, self.max_d));
        }
        if self.t_order < 1 {
            return Err("--t-order must be at least 1".into());
        }
        if self.jobs == Some(0) {
            return Err("--jobs must be positive".into());
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "dihedral-cm", version, about = "Exact verification engine for the rational Cherednik algebra of a dihedral group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run suites and print a PASS/FAIL summary (JSON with --out).
    Verify {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        suite: Vec<Suite>,
    },
    /// Run suites and emit the full JSON report.
    Report {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        suite: Vec<Suite>,
    },
    /// Print Ψ_i.
    Psi {
        #[arg(long)]
        i: usize,
    },
    /// Poisson bracket of two generators (q, Q, eu, a0, …, ad).
    Bracket {
        #[command(flatten)]
        config: RunConfig,
        lhs: String,
        rhs: String,
    },
    /// The Lie algebra at the cuspidal point and its classification.
    Lie {
        #[command(flatten)]
        config: RunConfig,
    },
    /// The τ-fixed locus analysis.
    Fixed {
        #[command(flatten)]
        config: RunConfig,
    },
    /// The sl₂ layer: kernel basis, ρ_d and its checks.
    Sl2 {
        #[command(flatten)]
        config: RunConfig,
    },
}

/// Runs one suite; `a_value` is used by the suites that need a number.
pub fn run_suite(suite: Suite, d: u32, a_value: &BigRational, opts: &VerifyOptions) -> CheckReport {
    match suite {
        Suite::Psi => verify::psi_suite(d, opts),
        Suite::Z0 => verify::z0_suite(d, opts),
        Suite::Zc => verify::zc_suite(d, opts),
        Suite::Horreur => verify::horreur_suite(d, opts),
        Suite::Poisson => verify::poisson_suite(d, opts),
        Suite::Phi => verify::phi_suite(d, opts),
        Suite::Lie => lie_suite(d, a_value),
        Suite::Sl2 => sl2_suite(d, opts),
        Suite::Tau => tau_suite(d, a_value, opts),
        Suite::All => unreachable!("expanded before dispatch"),
    }
}

/// Runs the selected suites in canonical order.
pub fn run(config: &RunConfig, selection: &[Suite]) -> Report {
    let opts = config.options();
    let a_value = config.a.value_or_one();
    let mut report = Report::new(config.d, config.a.to_string());
    for s in Suite::expand(selection) {
        let start = Instant::now();
        let mut rep = run_suite(s, config.d, &a_value, &opts);
        if config.timings {
            rep.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        report.suites.push(rep);
    }
    report
}

fn generator_by_name(alg: &Algebra, g: &Generators, name: &str) -> Result<HElement, String> {
    match name {
        "q" => Ok(g.q.clone()),
        "Q" => Ok(g.big_q.clone()),
        "eu" => Ok(g.eu.clone()),
        _ => name
            .strip_prefix('a')
            .and_then(|i| i.parse::<usize>().ok())
            .and_then(|i| g.a.get(i).cloned())
            .ok_or_else(|| format!("unknown generator '{name}' (expected q, Q, eu, a0..a{})", alg.d())),
    }
}

fn emit(config: &RunConfig, v: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("json serializes");
    emit_text(config, &text)
}

fn emit_text(config: &RunConfig, text: &str) -> Result<(), String> {
    match &config.out {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            out_line(text);
            Ok(())
        }
    }
}

fn prepare(config: &RunConfig) -> Result<(), (i32, String)> {
    config.validate().map_err(|e| (EXIT_USAGE, e))?;
    if config.d > 6 {
        eprintln!("warning: d = {} is above 6; expect long running times", config.d);
    }
    if let Some(j) = config.jobs {
        // fails only if a pool already exists (e.g. repeated in-process runs)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    selftest(config.d).map_err(|e| (EXIT_FAIL, format!("engine self-test failed: {e}")))
}

/// Writes a line to stdout, ignoring a closed pipe.
fn out_line(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_summary(report: &Report) {
    for s in &report.suites {
        out_line(&format!("{} {}", if s.passed() { "PASS" } else { "FAIL" }, s.summary()));
        for c in s.failures() {
            out_line(&match &c.witness {
                Some(w) => format!("  FAIL {}: lhs = {}; rhs = {}; difference = {}", c.id, w.lhs, w.rhs, w.difference),
                None => format!("  FAIL {}", c.id),
            });
        }
    }
}

fn execute(cmd: Command) -> Result<i32, (i32, String)> {
    let io = |e: String| (EXIT_USAGE, e);
    match cmd {
        Command::Psi { i } => {
            out_line(&psi(i).to_string());
            Ok(EXIT_OK)
        }
        Command::Verify { config, suite } => {
            prepare(&config)?;
            let report = run(&config, &suite);
            print_summary(&report);
            if let Some(p) = &config.out {
                std::fs::write(p, format!("{}\n", report.to_json())).map_err(|e| io(format!("{}: {e}", p.display())))?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Report { config, suite } => {
            prepare(&config)?;
            let report = run(&config, &suite);
            emit_text(&config, &report.to_json()).map_err(io)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Bracket { config, lhs, rhs } => {
            prepare(&config)?;
            let alg = Algebra::new(config.d, 1);
            let g = Generators::new(&alg);
            let u = generator_by_name(&alg, &g, &lhs).map_err(io)?;
            let v = generator_by_name(&alg, &g, &rhs).map_err(io)?;
            let b = alg.poisson_zc(&u, &v).map_err(|e| (EXIT_FAIL, e.to_string()))?;
            let mut out = json!({
                "d": config.d,
                "lhs": lhs,
                "rhs": rhs,
                "bracket": b.render_truncated(config.max_terms),
                "trunc_c": b.trunc_c().render_truncated(config.max_terms),
            });
            if config.t_order >= 2 {
                let big = Algebra::new(config.d, config.t_order);
                let c = big.commutator(&u.with_t_order(config.t_order), &v.with_t_order(config.t_order));
                out["commutator"] = json!(c.render_truncated(config.max_terms));
            }
            emit(&config, &out).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Lie { config } => {
            prepare(&config)?;
            let a = config.a.value_or_one();
            if a.is_zero() {
                return Err((EXIT_USAGE, "lie needs a nonzero --a".into()));
            }
            let table = lie_algebra_at_origin(config.d, &a).map_err(|e| (EXIT_USAGE, e.to_string()))?;
            let cls = classify_lie(&table);
            let suite = lie_suite(config.d, &a);
            let mut out = cls.to_json();
            out["d"] = json!(config.d);
            out["a"] = json!(fmt_rational(&a));
            out["tangent_dim"] = json!(tangent_dim_origin(config.d, &a));
            out["table"] = table.to_json();
            out["checks"] = serde_json::to_value(&suite.checks).expect("checks serialize");
            emit(&config, &out).map_err(io)?;
            Ok(if suite.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Fixed { config } => {
            prepare(&config)?;
            if config.d < 3 {
                return Err((EXIT_USAGE, "fixed needs d >= 3".into()));
            }
            let a = config.a.value_or_one();
            if a.is_zero() {
                return Err((EXIT_USAGE, "fixed needs a nonzero --a".into()));
            }
            let f = fixed_locus_analysis(config.d, &a);
            let poisson = crate::tau::fixed_quadric_poisson_check(config.d, &config.options());
            let names = crate::mpoly::Layout::new(config.d).names();
            let residual: Vec<Value> = f
                .residual_system
                .iter()
                .map(|r| json!({ "id": r.id, "poly": r.poly.render(&names) }))
                .collect();
            let passed = f.report.passed() && poisson.passed();
            let mut checks = f.report.checks.clone();
            checks.extend(poisson.checks);
            let out = json!({
                "d": config.d,
                "a": fmt_rational(&a),
                "quadric": f.quadric.render(&names),
                "stratum": f.stratum.render(&names),
                "residual_system": residual,
                "checks": checks,
            });
            emit(&config, &out).map_err(io)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Sl2 { config } => {
            prepare(&config)?;
            let d = config.d;
            let basis: Vec<Value> = kernel_basis_2d(d)
                .iter()
                .map(|b| {
                    let r = rho(d, b).map(|r| r.to_string()).unwrap_or_else(|e| e.to_string());
                    json!({ "element": b.to_string(), "rho": r })
                })
                .collect();
            let suite = sl2_suite(d, &config.options());
            let out = json!({ "d": d, "kernel_basis": basis, "checks": suite.checks });
            emit(&config, &out).map_err(io)?;
            Ok(if suite.passed() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// Parses arguments and runs; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_mode() {
        assert_eq!("symbolic".parse::<AMode>(), Ok(AMode::Symbolic));
        assert_eq!("3/2".parse::<AMode>().unwrap().to_string(), "3/2");
        assert!("0.5".parse::<AMode>().is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(main_with_args(["dihedral-cm", "verify", "--d", "x"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dihedral-cm", "verify", "--d", "1"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dihedral-cm", "verify", "--d", "9"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dihedral-cm", "nope"]), EXIT_USAGE);
        assert_eq!(main_with_args(["dihedral-cm", "bracket", "--d", "3", "q", "zz"]), EXIT_USAGE);
    }

    #[test]
    fn suite_expansion() {
        assert_eq!(Suite::expand(&[Suite::All]), Suite::EACH.to_vec());
        assert_eq!(Suite::expand(&[Suite::Tau, Suite::Psi, Suite::Tau]), vec![Suite::Psi, Suite::Tau]);
    }

    #[test]
    fn mutation_makes_verify_fail() {
        let code = main_with_args(["dihedral-cm", "verify", "--d", "3", "--suite", "z0", "--mutation", "z0-quadric"]);
        assert_eq!(code, EXIT_FAIL);
        assert_eq!(main_with_args(["dihedral-cm", "verify", "--d", "3", "--suite", "z0"]), EXIT_OK);
    }
}
