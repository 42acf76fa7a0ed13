// Every suite at one `d`, with the deterministic JSON report.

use dihedral_cm::cli::{run, RunConfig, Suite};
use dihedral_cm::cli::AMode;

pub fn run_all(d: u32) -> dihedral_cm::Report {
    let config = RunConfig {
        d,
        a: AMode::Symbolic,
        t_order: 1,
        out: None,
        jobs: None,
        max_terms: 50,
        timings: false,
        mutation: None,
        max_d: 8,
    };
    run(&config, &[Suite::All])
}

#[allow(dead_code)]
fn main() {
    let d = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let report = run_all(d);
    for s in &report.suites {
        println!("{}", s.summary());
    }
    println!("all pass: {}", report.passed());
    std::fs::write("report.json", report.to_json()).expect("write report.json");
    println!("wrote report.json");
}
