// Exact arithmetic in `Q(z)[a][t]/(t^N)` with `z` a primitive `2d`-th root of unity.

use dihedral_cm::scalar::{Cyclotomic, ScalarRing};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 5;
    let ring = ScalarRing::for_dihedral(d, 2);
    let field = ring.field();
    println!("Q(z) with z^{} = 1: degree {}", 2 * d, field.degree());

    // ζ = z² has order d, so the sum of its powers vanishes
    let sum = (0..d as i64).fold(Cyclotomic::zero(field), |acc, k| {
        acc.try_add(&Cyclotomic::root(field, 2 * k)).expect("same field")
    });
    println!("1 + ζ + … + ζ^{} = {sum}", d - 1);

    let w = Cyclotomic::root(field, 1).try_add(&Cyclotomic::one(field))?;
    let inv = w.inv()?;
    println!("(1 + z)^-1 = {inv}");
    println!("(1 + z)(1 + z)^-1 = {}", w.try_mul(&inv)?);

    let a = ring.a();
    let t = ring.t();
    let x = &(&a + &t) * &(&a - &t);
    println!("(a + t)(a - t) = {x}");
    println!("t^2 truncates: t * t = {}", &t * &t);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("scalar example");
}
