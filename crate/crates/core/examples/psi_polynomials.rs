// The polynomials `Ψ_i(T, T', T'')`, their identities and the graded basis.

use dihedral_cm::psi::{self, psi};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for i in 0..=6 {
        println!("Psi_{i} = {}", psi(i));
    }
    let closed = (0..=8).all(|i| psi::verify_psi_closed_form(i, 5));
    let deriv = (1..=10).all(psi::verify_psi_derivatives);
    println!("closed form (i <= 8): {closed}");
    println!("derivative identities (i <= 10): {deriv}");
    for k in [3, 6, 8] {
        println!(
            "degree {k}: {} basis elements, basis: {}, substitution injective at d=5: {}",
            psi::basis_indices(k).len(),
            psi::verify_basis(k),
            psi::substitution_is_injective(k, 5)
        );
    }
    let p = psi(4);
    let coords = psi::basis_coordinates(&p, 4)?;
    for (idx, c) in coords.iter().filter(|(_, c)| !num::Zero::is_zero(*c)) {
        println!("Psi_4 basis coordinate {idx:?}: {c}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("psi example");
}
