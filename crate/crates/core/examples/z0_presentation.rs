// The invariant ring `C[V × V*]^W` (the case `a = 0`): generators, relations
// and the Poisson bracket table.

use dihedral_cm::report::VerifyOptions;
use dihedral_cm::verify::z0_suite;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for d in 3..=6 {
        let rep = z0_suite(d, &VerifyOptions::default());
        println!("{}", rep.summary());
        let first = rep.failures().next().map(|c| c.id.clone());
        if let Some(id) = first {
            println!("  first failure: {id}");
        }
    }
    let rep = z0_suite(4, &VerifyOptions::default());
    let ids: Vec<&str> = rep
        .checks
        .iter()
        .map(|c| c.id.as_str())
        .filter(|id| id.contains("Z_") || id.contains("bracket"))
        .take(8)
        .collect();
    println!("sample checks at d=4: {}", ids.join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("z0 example");
}
