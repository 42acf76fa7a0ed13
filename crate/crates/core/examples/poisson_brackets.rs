// Poisson brackets on the center, computed from the `t`-linear part of
// commutators.

use dihedral_cm::cherednik::Algebra;
use dihedral_cm::verify::Generators;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 4;
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    let named = [("q", &g.q), ("Q", &g.big_q), ("eu", &g.eu)];
    for (i, (n1, z1)) in named.iter().enumerate() {
        for (n2, z2) in &named[i + 1..] {
            println!("{{{n1}, {n2}}} = {}", alg.poisson_zc(z1, z2)?);
        }
    }
    for j in 0..=d as usize {
        let b = alg.poisson_zc(&g.q, &g.a[j])?;
        let expected = g.a.get(j.wrapping_sub(1)).map(|a| a.scale_int(j as i64)).unwrap_or_else(|| alg.zero());
        println!("{{q, a_{j}}} = {j} * a_(j-1): {}", b == expected);
    }
    let b = alg.poisson_zc(&g.a[0], &g.a[1])?;
    println!("trunc {{a_0, a_1}} = {}", b.trunc_c());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("poisson example");
}
