// Splitting `{a_i, a_j}` as `Π_{i,j}(eu, q, Q) + a² Φ_{i,j}(eu, q, Q)`.

use dihedral_cm::verify::phi_decomposition;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (d, pairs) in [(4u32, vec![(1u32, 3u32), (0, 4)]), (5, vec![(0, 1), (0, 2), (1, 4)])] {
        for (i, j) in pairs {
            let dec = phi_decomposition(d, i, j, false)?;
            println!(
                "d={d} {{a_{i}, a_{j}}}: Pi = {}, Phi = {}, residual zero: {}",
                dec.pi,
                dec.phi,
                dec.residual.is_zero()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("phi example");
}
