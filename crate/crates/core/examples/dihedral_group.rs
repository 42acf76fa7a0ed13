// The dihedral group of order `2d` acting on `V × V*`, and the diagram automorphism.

use dihedral_cm::dihedral::{longest_element, GroupElement};
use dihedral_cm::polyring::{inv, CommPoly, Invariant};
use dihedral_cm::scalar::ScalarRing;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = 4;
    let group = GroupElement::all(d);
    let names: Vec<String> = group.iter().map(ToString::to_string).collect();
    println!("W(d={d}) = {{{}}}", names.join(", "));

    let s0 = GroupElement::reflection(d, 0);
    let s1 = GroupElement::reflection(d, 1);
    println!("s[0] s[1] = {}", s0.compose(&s1));
    println!("longest element = {}", longest_element(d));
    for g in [s0, s1, GroupElement::rotation(d, 1)] {
        println!("tau {g} tau^-1 = {}", g.tau_conjugate());
    }

    let ring = ScalarRing::for_dihedral(d, 1);
    let x = CommPoly::x(&ring);
    println!("s[1] . x = {}", x.act(&s1));
    println!("tau(x) = {}", x.tau());
    for name in [Invariant::Q, Invariant::BigQ, Invariant::Eu0, Invariant::A0(1)] {
        let p = inv(&ring, d, name);
        let fixed = group.iter().all(|g| p.act(g) == p);
        println!("{name:?} = {p}  (W-invariant: {fixed})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().expect("dihedral example");
}
