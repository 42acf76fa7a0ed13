// The tangent space and Lie algebra of `Z_c` at its singular point.

use dihedral_cm::cuspidal::{classify_lie, lie_algebra_at_origin, tangent_dim_origin};
use num::BigRational;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let one = BigRational::from_integer(1.into());
    for d in 4..=6 {
        let table = lie_algebra_at_origin(d, &one)?;
        let cls = classify_lie(&table);
        println!(
            "d={d}: tangent dim {}, {} nonzero structure constants, Jacobi ok: {}, {}",
            tangent_dim_origin(d, &one),
            table.constants.len(),
            table.jacobi_failures().is_empty(),
            cls.description
        );
    }
    let zero = BigRational::from_integer(0.into());
    println!("d=4, a=0: tangent dim {}", tangent_dim_origin(4, &zero));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("cuspidal example");
}
