// The `sl_2` action on `Sym(E)`, the kernel of `ε_{2,d}` and the map `ρ_d`.

use dihedral_cm::report::VerifyOptions;
use dihedral_cm::sl2::{kernel_basis_2d, rho, sl2_act, sym_sym_dim, verify_rho_equivariance, Sl2, SymElement};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 4;
    for b in kernel_basis_2d(d) {
        println!("rho({b}) = {}", rho(d, &b)?);
    }
    let a1 = SymElement::a(d, 1);
    for xi in Sl2::ALL {
        println!("{} . a1 = {}", xi.name(), sl2_act(xi, &a1));
    }
    for d in 2..=6 {
        println!("{}", verify_rho_equivariance(d, &VerifyOptions::default()).summary());
    }
    for (m, n) in [(2, 3), (3, 4), (2, 6)] {
        println!("dim Sym^{m}(Sym^{n} V) = {} = dim Sym^{n}(Sym^{m} V) = {}", sym_sym_dim(m, n), sym_sym_dim(n, m));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("sl2 example");
}
