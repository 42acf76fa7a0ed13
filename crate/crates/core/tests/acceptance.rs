//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact; the only numeric thresholds are the wall-clock
//! budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dihedral_cm::cli::{run, run_suite, AMode, RunConfig, Suite};
use dihedral_cm::cuspidal::{classify_lie, lie_algebra_at_origin, tangent_dim_origin, LieType};
use dihedral_cm::psi::{self, PsiPoly};
use dihedral_cm::report::{CheckReport, Mutation, VerifyOptions};
use dihedral_cm::sl2::{self, kernel_basis_2d, verify_rho_equivariance, verify_zi_intrinsic};
use dihedral_cm::tau::{fixed_locus_analysis, fixed_quadric_poisson_check, tau_suite};
use dihedral_cm::verify::{self, phi_decomposition};
use num::{BigRational, One};

/// Mandatory range of `d`.
const D_MAX: u32 = 6;
/// Range for the commutative presentation, where computation is cheap.
const D_MAX_Z0: u32 = 8;
/// Budget for `verify --d 5 --suite all`.
const FULL_RUN_BUDGET: Duration = Duration::from_secs(120);
/// Minimum number of sampled quadric points.
const MIN_QUADRIC_SAMPLES: usize = 20;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.ok = false;
            self.notes.push(what());
        }
    }

    fn report(&mut self, rep: &CheckReport) {
        let failed: Vec<&str> = rep.failures().map(|c| c.id.as_str()).take(3).collect();
        self.require(failed.is_empty(), || format!("{}: {}", rep.summary(), failed.join(", ")));
    }

    fn has(&mut self, rep: &CheckReport, prefix: &str) {
        let found = rep.checks.iter().any(|c| c.id.starts_with(prefix));
        self.require(found, || format!("{} d={}: no check '{prefix}'", rep.name, rep.d));
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn defaults() -> VerifyOptions {
    VerifyOptions::default()
}

fn psi_criterion() -> Outcome {
    let mut o = Outcome::new();
    for i in 0..=8 {
        for d in 2..=D_MAX {
            o.require(psi::verify_psi_closed_form(i, d), || format!("closed form i={i} d={d}"));
        }
    }
    for i in 1..=8 {
        o.require(psi::verify_psi_derivatives(i), || format!("derivatives i={i}"));
    }
    let zero = rat(0);
    let t = rat(3);
    for k in 0..=10 {
        let v = psi::psi(k).evaluate_rational([&t, &zero, &zero]);
        let want = num::pow(t.clone(), k);
        o.require(v == want, || format!("Psi_{k}(T,0,0) != T^{k}"));
        let pure_t = PsiPoly::from_terms(psi::psi(k).terms().filter(|(e, _)| e[1] == 0 && e[2] == 0));
        let want = PsiPoly::monomial([k as u16, 0, 0], BigRational::one());
        o.require(pure_t == want, || format!("Psi_{k}(T,0,0) != T^{k}"));
    }
    for k in 0..=8 {
        o.require(psi::verify_basis(k), || format!("basis rank k={k}"));
    }
    o
}

fn z0_criterion() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=D_MAX_Z0 {
        let rep = verify::z0_suite(d, &defaults());
        o.report(&rep);
        o.has(&rep, "z0/Z_i");
        o.has(&rep, "z0/bracket");
    }
    o
}

fn central_criterion(zc: &[CheckReport]) -> Outcome {
    let mut o = Outcome::new();
    for rep in zc {
        let d = rep.d;
        o.require(rep.check("zc/central/eu").is_some_and(|c| c.passed()), || format!("eu d={d}"));
        for j in 0..=d {
            let id = format!("zc/central/a{j}");
            o.require(rep.check(&id).is_some_and(|c| c.passed()), || format!("{id} d={d}"));
        }
        o.require(rep.check("zc/trunc/eu^2").is_some_and(|c| c.passed()), || format!("trunc eu^2 d={d}"));
    }
    o
}

fn zc_criterion(zc: &[CheckReport]) -> Outcome {
    let mut o = Outcome::new();
    for rep in zc {
        let d = rep.d;
        o.report(rep);
        let relations = rep
            .checks
            .iter()
            .filter(|c| c.id.starts_with("zc/Z_i/") || c.id.starts_with("zc/Z_ij/"))
            .count() as u32;
        let want = (d - 1) + d * (d - 1) / 2;
        o.require(relations == want, || format!("d={d}: {relations} relations, expected {want}"));
        o.report(&verify::horreur_suite(d, &defaults()));
    }
    o
}

fn poisson_criterion() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=D_MAX {
        let rep = verify::poisson_suite(d, &defaults());
        o.report(&rep);
        for id in ["poisson/q,Q", "poisson/eu,q", "poisson/eu,Q", "poisson/casimir", "poisson/a0,a1", "poisson/a0,a2"] {
            o.has(&rep, id);
        }
    }
    o
}

fn phi_criterion() -> Outcome {
    let mut o = Outcome::new();
    for d in 4..=D_MAX {
        o.report(&verify::phi_suite(d, &defaults()));
        for i in 0..=d {
            for j in i + 1..=d {
                match phi_decomposition(d, i, j, false) {
                    Ok(dec) => {
                        o.require(dec.residual.is_zero(), || format!("d={d} ({i},{j}): residual"));
                        let phi_ok = dec.phi.is_zero() || dec.phi.homogeneous_degree() == Some(d - 3);
                        let pi_ok = dec.pi.is_zero() || dec.pi.homogeneous_degree() == Some(d - 1);
                        o.require(phi_ok && pi_ok, || format!("d={d} ({i},{j}): degrees"));
                    }
                    Err(e) => o.require(false, || format!("d={d} ({i},{j}): {e}")),
                }
            }
        }
    }
    o
}

fn cuspidal_criterion() -> Outcome {
    let mut o = Outcome::new();
    let one = BigRational::one();
    for d in 4..=D_MAX {
        let dim = tangent_dim_origin(d, &one);
        o.require(dim == d as usize + 4, || format!("d={d}: tangent dim {dim}"));
        let table = match lie_algebra_at_origin(d, &one) {
            Ok(t) => t,
            Err(e) => {
                o.require(false, || format!("d={d}: {e}"));
                continue;
            }
        };
        o.require(table.antisymmetry_failures().is_empty(), || format!("d={d}: antisymmetry"));
        o.require(table.jacobi_failures().is_empty(), || format!("d={d}: Jacobi"));
        let cls = classify_lie(&table);
        let ok = match (d, &cls.kind) {
            (4, LieType::Sl3) => cls.description == "sl3 (dim 8, Killing rank 8)",
            (4, _) => false,
            (_, LieType::Sl2Irreducible { module_dim }) => *module_dim == d as usize + 1,
            _ => false,
        };
        o.require(ok, || format!("d={d}: classified as {}", cls.description));
    }
    o
}

fn sl2_criterion() -> Outcome {
    let mut o = Outcome::new();
    for d in 2..=D_MAX {
        let rank = sl2::rank(&kernel_basis_2d(d));
        let want = (d * (d - 1) / 2) as usize;
        o.require(rank == want, || format!("d={d}: kernel rank {rank}, expected {want}"));
        o.report(&verify_rho_equivariance(d, &defaults()));
        o.report(&verify_zi_intrinsic(d));
    }
    for c in sl2::hermite_checks(6) {
        o.require(c.passed(), || c.id.clone());
    }
    for m in 1..=6 {
        for n in 1..=6 {
            o.require(sl2::sym_sym_dim(m, n) == sl2::sym_sym_dim(n, m), || format!("hermite {m},{n}"));
        }
    }
    o
}

fn tau_criterion() -> Outcome {
    let mut o = Outcome::new();
    let one = BigRational::one();
    for d in 2..=D_MAX {
        let rep = tau_suite(d, &one, &defaults());
        o.report(&rep);
        o.has(&rep, "tau/fixes");
        o.has(&rep, "tau/negates");
        o.report(&fixed_quadric_poisson_check(d, &defaults()));
    }
    for d in 3..=D_MAX {
        let f = fixed_locus_analysis(d, &one);
        o.report(&f.report);
        for id in [
            "tau/fixed/quadric",
            "tau/fixed/point/origin",
            "tau/fixed/point/e=+da",
            "tau/fixed/point/e=-da",
            "tau/fixed/display-discrepancy-flagged",
        ] {
            o.require(f.report.check(id).is_some_and(|c| c.passed()), || format!("d={d}: {id}"));
        }
        let samples = f
            .report
            .check("tau/fixed/quadric-samples")
            .and_then(|c| c.detail.as_ref())
            .and_then(|v| v.get("samples"))
            .and_then(|v| v.as_u64())
            .unwrap_or(0) as usize;
        o.require(samples >= MIN_QUADRIC_SAMPLES, || format!("d={d}: {samples} quadric samples"));
        let flagged = f
            .report
            .check("tau/fixed/display-discrepancy-flagged")
            .and_then(|c| c.detail.as_ref())
            .and_then(|v| v.get("matches_display"))
            .and_then(|v| v.as_bool());
        o.require(flagged == Some(false), || format!("d={d}: discrepancy not flagged"));
    }
    o
}

fn negative_controls() -> Outcome {
    let mut o = Outcome::new();
    let d = 5;
    let one = BigRational::one();
    for m in Mutation::ALL {
        let opts = VerifyOptions::mutated(m);
        let failing: Vec<String> = Suite::EACH
            .iter()
            .map(|&s| run_suite(s, d, &one, &opts))
            .filter(|rep| !rep.passed())
            .map(|rep| rep.name)
            .collect();
        o.require(failing == [m.suite()], || format!("{}: failing suites {failing:?}", m.name()));
    }
    o.require(Mutation::ALL.len() == 10, || format!("{} mutations", Mutation::ALL.len()));
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new();
    let config = RunConfig {
        d: 5,
        a: AMode::Symbolic,
        t_order: 1,
        out: None,
        jobs: None,
        max_terms: 50,
        timings: false,
        mutation: None,
        max_d: 8,
    };
    let start = Instant::now();
    let first = run(&config, &[Suite::All]);
    let elapsed = start.elapsed();
    let second = run(&config, &[Suite::All]);
    o.require(first.passed(), || "verify --d 5 --suite all has failures".into());
    o.require(elapsed < FULL_RUN_BUDGET, || format!("took {elapsed:?}"));
    o.require(first.to_json() == second.to_json(), || "reports differ".into());
    o.notes.push(format!("{:.1}s", elapsed.as_secs_f64()));
    o
}

fn main() -> ExitCode {
    let zc: Vec<CheckReport> = (2..=D_MAX).map(|d| verify::zc_suite(d, &defaults())).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("psi polynomials", Box::new(psi_criterion)),
        ("invariant ring presentation", Box::new(z0_criterion)),
        ("central elements", Box::new(|| central_criterion(&zc))),
        ("Z_c relations and truncation formula", Box::new(|| zc_criterion(&zc))),
        ("Poisson table", Box::new(poisson_criterion)),
        ("Phi decomposition", Box::new(phi_criterion)),
        ("cuspidal point", Box::new(cuspidal_criterion)),
        ("sl2 layer", Box::new(sl2_criterion)),
        ("tau layer", Box::new(tau_criterion)),
        ("negative controls", Box::new(negative_controls)),
        ("determinism and runtime", Box::new(determinism)),
    ];
    let mut all = true;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let out = f();
        all &= out.ok;
        let status = if out.ok { "PASS" } else { "FAIL" };
        let notes = if out.notes.is_empty() { String::new() } else { format!(" [{}]", out.notes.join("; ")) };
        println!("{status} criterion {}: {name}{notes}", n + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
