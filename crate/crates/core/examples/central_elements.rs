// PBW arithmetic in `H_c` and the central generators `eu, q, Q, a_0, …, a_d`.

use dihedral_cm::cherednik::Algebra;
use dihedral_cm::verify::Generators;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 3;
    let alg = Algebra::new(d, 2);
    let (x, big_x) = (alg.x(), alg.big_x());
    println!("X x = {}", alg.mul(&big_x, &x));
    println!("[X, x] = {}", alg.commutator(&big_x, &x));
    println!("s[1] x = {}", alg.mul(&alg.s(1), &x));

    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    println!("eu = {}", g.eu);
    for (j, a) in g.a.iter().enumerate() {
        println!("a_{j} = {}  (central: {})", a.render_truncated(6), alg.is_central(a));
    }
    println!("x central: {}", alg.is_central(&alg.x()));
    let prod = alg.mul(&g.a[0], &g.a[2]).sub(&alg.mul(&g.a[1], &g.a[1]));
    println!("trunc(a_0 a_2 - a_1^2) = {}", prod.trunc_c());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("central elements example");
}
