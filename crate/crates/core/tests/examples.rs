//! Runs each cargo example's entry point so they stay in sync with the library.

mod scalar_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scalar_arithmetic.rs"));
}

mod dihedral_group {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dihedral_group.rs"));
}

mod psi_polynomials {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/psi_polynomials.rs"));
}

mod z0_presentation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/z0_presentation.rs"));
}

mod central_elements {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/central_elements.rs"));
}

mod poisson_brackets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/poisson_brackets.rs"));
}

mod phi_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/phi_decomposition.rs"));
}

mod cuspidal_lie {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cuspidal_lie.rs"));
}

mod sl2_hermite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sl2_hermite.rs"));
}

mod tau_fixed_locus {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tau_fixed_locus.rs"));
}

mod verify_all {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_all.rs"));
}

#[test]
fn scalar_arithmetic_runs() {
    scalar_arithmetic::run().unwrap();
}

#[test]
fn dihedral_group_runs() {
    dihedral_group::run().unwrap();
}

#[test]
fn psi_polynomials_runs() {
    psi_polynomials::run().unwrap();
}

#[test]
fn z0_presentation_runs() {
    z0_presentation::run().unwrap();
}

#[test]
fn central_elements_runs() {
    central_elements::run().unwrap();
}

#[test]
fn poisson_brackets_runs() {
    poisson_brackets::run().unwrap();
}

#[test]
fn phi_decomposition_runs() {
    phi_decomposition::run().unwrap();
}

#[test]
fn cuspidal_lie_runs() {
    cuspidal_lie::run().unwrap();
}

#[test]
fn sl2_hermite_runs() {
    sl2_hermite::run().unwrap();
}

#[test]
fn tau_fixed_locus_runs() {
    tau_fixed_locus::run().unwrap();
}

#[test]
fn verify_all_passes_at_d3() {
    assert!(verify_all::run_all(3).passed());
}
