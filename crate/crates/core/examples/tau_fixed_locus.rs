// The diagram automorphism `τ` and its fixed locus in `Z_c`.

use dihedral_cm::cherednik::Algebra;
use dihedral_cm::mpoly::Layout;
use dihedral_cm::report::VerifyOptions;
use dihedral_cm::tau::{fixed_locus_analysis, fixed_quadric_poisson_check, tau_act};
use dihedral_cm::verify::Generators;
use num::BigRational;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 5;
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    println!("tau(eu) = eu: {}", tau_act(&g.eu) == g.eu);
    println!("tau(a_2) = -a_2: {}", tau_act(&g.a[2]) == g.a[2].neg());

    let f = fixed_locus_analysis(d, &BigRational::from_integer(1.into()));
    let names = Layout::new(d).names();
    println!("quadric: {} = 0", f.quadric.render(&names));
    println!("q = Q = 0 stratum: {} = 0", f.stratum.render(&names));
    for c in &f.report.checks {
        println!("  {} {}", c.status, c.id);
    }
    println!("{}", fixed_quadric_poisson_check(d, &VerifyOptions::default()).summary());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("tau example");
}
