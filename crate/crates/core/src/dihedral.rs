//! The dihedral group `W` of order `2d`: reflections `s_i` and rotations `c^k`.
//!
//! `s_i` is the matrix `[[0, ζ^i], [ζ^-i, 0]]` and `c = s_1 s_0 = diag(ζ, ζ^-1)`,
//! acting on `V` (basis `x, y`) by column vectors and on `V*` (basis `X, Y`)
//! by the contragredient. Hence `s_i: x ↦ ζ^-i y, y ↦ ζ^i x, X ↦ ζ^i Y,
//! Y ↦ ζ^-i X`.

use std::fmt;

use crate::scalar::{CycloField, Cyclotomic};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Rotation,
    Reflection,
}

/// `c^k` or `s_k` with `k` reduced mod `d`. Ordered with the identity first,
/// then rotations, then reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    d: u32,
    kind: Kind,
    index: u32,
}

fn reduce(k: i64, d: u32) -> u32 {
    k.rem_euclid(d as i64) as u32
}

impl GroupElement {
    pub fn identity(d: u32) -> Self {
        Self::rotation(d, 0)
    }

    pub fn rotation(d: u32, k: i64) -> Self {
        assert!(d >= 1);
        GroupElement {
            d,
            kind: Kind::Rotation,
            index: reduce(k, d),
        }
    }

    pub fn reflection(d: u32, k: i64) -> Self {
        assert!(d >= 1);
        GroupElement {
            d,
            kind: Kind::Reflection,
            index: reduce(k, d),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_identity(&self) -> bool {
        self.kind == Kind::Rotation && self.index == 0
    }

    pub fn is_reflection(&self) -> bool {
        self.kind == Kind::Reflection
    }

    /// All `2d` elements in canonical order.
    pub fn all(d: u32) -> Vec<Self> {
        (0..d as i64)
            .map(|k| Self::rotation(d, k))
            .chain((0..d as i64).map(|k| Self::reflection(d, k)))
            .collect()
    }

    /// Group law: `s_i s_j = c^(i-j)`, `c^k s_j = s_(j+k)`, `s_j c^k = s_(j-k)`,
    /// `c^k c^l = c^(k+l)`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "group elements of different dihedral groups");
        let (i, j) = (self.index as i64, other.index as i64);
        match (self.kind, other.kind) {
            (Kind::Reflection, Kind::Reflection) => Self::rotation(self.d, i - j),
            (Kind::Rotation, Kind::Reflection) => Self::reflection(self.d, j + i),
            (Kind::Reflection, Kind::Rotation) => Self::reflection(self.d, i - j),
            (Kind::Rotation, Kind::Rotation) => Self::rotation(self.d, i + j),
        }
    }

    pub fn inverse(&self) -> Self {
        match self.kind {
            Kind::Reflection => *self,
            Kind::Rotation => Self::rotation(self.d, -(self.index as i64)),
        }
    }

    /// Conjugation by the diagram automorphism: `s_i ↦ s_(1-i)`, `c^k ↦ c^-k`.
    pub fn tau_conjugate(&self) -> Self {
        match self.kind {
            Kind::Reflection => Self::reflection(self.d, 1 - self.index as i64),
            Kind::Rotation => Self::rotation(self.d, -(self.index as i64)),
        }
    }

    /// Action on the monomial `x^α y^β X^γ Y^δ`: returns `(e, m')` with
    /// `g·m = ζ^e m'`.
    pub fn act_monomial(&self, m: [u16; 4]) -> (i64, [u16; 4]) {
        let [a, b, c, dd] = m.map(i64::from);
        let k = self.index as i64;
        match self.kind {
            Kind::Rotation => (k * (a - b - c + dd), m),
            Kind::Reflection => (k * (-a + b + c - dd), [m[1], m[0], m[3], m[2]]),
        }
    }

    /// Exact 2×2 matrix on `V` over `Q(z)`, `z = ζ_{2d}`, `ζ = z^2`.
    pub fn matrix(&self, field: &Arc<CycloField>) -> [[Cyclotomic; 2]; 2] {
        let k = self.index as i64;
        let zeta = |e: i64| Cyclotomic::root(field, 2 * e);
        let zero = Cyclotomic::zero(field);
        match self.kind {
            Kind::Rotation => [[zeta(k), zero.clone()], [zero, zeta(-k)]],
            Kind::Reflection => [[zero.clone(), zeta(k)], [zeta(-k), zero]],
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Rotation if self.index == 0 => write!(f, "1"),
            Kind::Rotation => write!(f, "c[{}]", self.index),
            Kind::Reflection => write!(f, "s[{}]", self.index),
        }
    }
}

/// `w_0 = t (s t)^((d-1)/2)` for odd `d`, `(s t)^(d/2)` for even `d`, with
/// `s = s_0`, `t = s_1`.
pub fn longest_element(d: u32) -> GroupElement {
    let s = GroupElement::reflection(d, 0);
    let t = GroupElement::reflection(d, 1);
    let st = s.compose(&t);
    let (mut w, reps) = if d % 2 == 1 {
        (t, (d - 1) / 2)
    } else {
        (GroupElement::identity(d), d / 2)
    };
    for _ in 0..reps {
        w = w.compose(&st);
    }
    w
}

/// Action of the diagram automorphism on a monomial: `x ↦ z^-1 y`, `y ↦ z x`,
/// `X ↦ z Y`, `Y ↦ z^-1 X` with `z = √ζ`. Returns `(e, m')` with
/// `τ·m = z^e m'`.
pub fn tau_monomial(m: [u16; 4]) -> (i64, [u16; 4]) {
    let [a, b, c, dd] = m.map(i64::from);
    (-a + b + c - dd, [m[1], m[0], m[3], m[2]])
}

/// Matrix of the diagram automorphism on `V`: `[[0, z], [z^-1, 0]]`.
pub fn tau_matrix(field: &Arc<CycloField>) -> [[Cyclotomic; 2]; 2] {
    let zero = Cyclotomic::zero(field);
    [
        [zero.clone(), Cyclotomic::root(field, 1)],
        [Cyclotomic::root(field, -1), zero],
    ]
}

pub fn mat_mul(a: &[[Cyclotomic; 2]; 2], b: &[[Cyclotomic; 2]; 2]) -> [[Cyclotomic; 2]; 2] {
    let entry = |i: usize, j: usize| {
        a[i][0]
            .try_mul(&b[0][j])
            .and_then(|p| p.try_add(&a[i][1].try_mul(&b[1][j])?))
            .expect("matrices over one field")
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarRing;

    #[test]
    fn composition_examples() {
        let d = 5;
        let s0 = GroupElement::reflection(d, 0);
        let s1 = GroupElement::reflection(d, 1);
        let c = GroupElement::rotation(d, 1);
        assert!(s0.compose(&s0).is_identity());
        assert_eq!(s1.compose(&s0), c);
        assert_eq!(c.compose(&s0), s1);
        assert_eq!(GroupElement::reflection(d, 2).to_string(), "s[2]");
        assert_eq!(GroupElement::rotation(d, -1).to_string(), "c[4]");
        assert_eq!(GroupElement::identity(d).to_string(), "1");
    }

    #[test]
    fn compose_matches_matrix_product_exhaustively() {
        for d in 1..=8 {
            let ring = ScalarRing::for_dihedral(d, 1);
            let f = ring.field();
            let all = GroupElement::all(d);
            assert_eq!(all.len(), 2 * d as usize);
            for g in &all {
                for h in &all {
                    let lhs = g.compose(h).matrix(f);
                    let rhs = mat_mul(&g.matrix(f), &h.matrix(f));
                    assert_eq!(lhs, rhs, "d={d} g={g} h={h}");
                    for k in &all {
                        assert_eq!(g.compose(h).compose(k), g.compose(&h.compose(k)));
                    }
                }
            }
        }
    }

    #[test]
    fn longest_element_examples() {
        assert_eq!(longest_element(2), GroupElement::rotation(2, 1));
        let s0 = GroupElement::reflection(3, 0);
        let s1 = GroupElement::reflection(3, 1);
        assert_eq!(longest_element(3), s1.compose(&s0.compose(&s1)));
        assert_eq!(longest_element(3), GroupElement::reflection(3, 2));
        for d in 1..=8 {
            let w = longest_element(d);
            assert!(w.compose(&w).is_identity(), "d={d}");
        }
    }

    #[test]
    fn tau_conjugation() {
        let d = 6;
        assert_eq!(GroupElement::reflection(d, 0).tau_conjugate(), GroupElement::reflection(d, 1));
        assert_eq!(GroupElement::reflection(d, 1).tau_conjugate(), GroupElement::reflection(d, 0));
        assert_eq!(GroupElement::reflection(d, 2).tau_conjugate(), GroupElement::reflection(d, -1));
        for d in 1..=8 {
            let ring = ScalarRing::for_dihedral(d, 1);
            let f = ring.field();
            let tau = tau_matrix(f);
            for g in GroupElement::all(d) {
                assert_eq!(g.tau_conjugate().tau_conjugate(), g);
                // τ g τ^-1 as matrices; τ is an involution
                let conj = mat_mul(&mat_mul(&tau, &g.matrix(f)), &tau);
                assert_eq!(conj, g.tau_conjugate().matrix(f), "d={d} g={g}");
                for h in GroupElement::all(d) {
                    assert_eq!(
                        g.compose(&h).tau_conjugate(),
                        g.tau_conjugate().compose(&h.tau_conjugate())
                    );
                }
            }
        }
    }

    #[test]
    fn monomial_action_is_a_group_action() {
        let monos = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [2, 1, 0, 3]];
        for d in 1..=6u32 {
            for g in GroupElement::all(d) {
                for h in GroupElement::all(d) {
                    for m in monos {
                        let (e1, m1) = h.act_monomial(m);
                        let (e2, m2) = g.act_monomial(m1);
                        let (e, mm) = g.compose(&h).act_monomial(m);
                        assert_eq!(mm, m2);
                        assert_eq!((e1 + e2 - e).rem_euclid(d as i64), 0);
                    }
                }
            }
        }
    }
}
