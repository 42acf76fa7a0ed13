//! Commutative polynomials in `x, y, X, Y` over [`Scalar`], with the `W`-action,
//! the canonical Poisson bracket and exact division.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use thiserror::Error;

use crate::dihedral::{self, GroupElement};
use crate::scalar::{Scalar, ScalarRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division is not exact: {0}")]
    NotExact(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient {0} of the divisor is not invertible")]
    NonUnitLeading(String),
    #[error("index {index} out of range for {name} (d = {d})")]
    OutOfRange { name: &'static str, index: u32, d: u32 },
}

/// Exponents of `x^α y^β X^γ Y^δ`, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [u16; 4]);

pub const X_LOW: usize = 0;
pub const Y_LOW: usize = 1;
pub const X_UP: usize = 2;
pub const Y_UP: usize = 3;

const VAR_NAMES: [&str; 4] = ["x", "y", "X", "Y"];

impl Mono {
    pub const ONE: Mono = Mono([0; 4]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// `(x,y)`-degree and `(X,Y)`-degree.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.0[0] as u32 + self.0[1] as u32, self.0[2] as u32 + self.0[3] as u32)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..4).all(|i| self.0[i] <= other.0[i])
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i] - other.0[i]))
    }

    /// The `x, y` part.
    pub fn lower(&self) -> Mono {
        Mono([self.0[0], self.0[1], 0, 0])
    }

    /// The `X, Y` part.
    pub fn upper(&self) -> Mono {
        Mono([0, 0, self.0[2], self.0[3]])
    }
}

impl fmt::Display for Mono {
    /// `x^a y^b X^c Y^d`, omitting zero exponents; `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Writes `coef*mono` terms joined by signs. Shared with the noncommutative renderer.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coef: &Scalar,
    body: &str,
) -> fmt::Result {
    let text = coef.fmt_factor();
    let (neg, mag) = match text.strip_prefix('-') {
        Some(rest) if coef.is_negative_monomial() => (true, rest.to_string()),
        _ => (false, text),
    };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    match (mag.as_str(), body) {
        (m, "1") => write!(f, "{m}"),
        ("1", b) => write!(f, "{b}"),
        (m, b) => write!(f, "{m}*{b}"),
    }
}

/// Sparse polynomial in `x, y, X, Y`. Canonical: no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CommPoly {
    ring: ScalarRing,
    terms: BTreeMap<Mono, Scalar>,
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, c, &m.to_string())?;
        }
        Ok(())
    }
}

impl CommPoly {
    pub fn zero(ring: &ScalarRing) -> Self {
        CommPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn one(ring: &ScalarRing) -> Self {
        Self::constant(ring.one())
    }

    pub fn term(c: Scalar, m: Mono) -> Self {
        let mut p = Self::zero(&c.ring());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(ring: &ScalarRing, m: Mono) -> Self {
        Self::term(ring.one(), m)
    }

    pub fn var(ring: &ScalarRing, i: usize) -> Self {
        Self::monomial(ring, Mono::var(i))
    }

    pub fn x(ring: &ScalarRing) -> Self {
        Self::var(ring, X_LOW)
    }
    pub fn y(ring: &ScalarRing) -> Self {
        Self::var(ring, Y_LOW)
    }
    pub fn big_x(ring: &ScalarRing) -> Self {
        Self::var(ring, X_UP)
    }
    pub fn big_y(ring: &ScalarRing) -> Self {
        Self::var(ring, Y_UP)
    }

    pub fn from_terms(ring: &ScalarRing, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// `Some(k)` if every term has total degree `k`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> CommPoly {
        self.scale(&self.ring.from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m, v) in &self.terms {
            let p = v * c;
            if !p.is_zero() {
                out.terms.insert(*m, p);
            }
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> CommPoly {
        self.scale(&self.ring.from_int(k))
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut out = Self::one(&self.ring);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> CommPoly {
        CommPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// `∂/∂(var i)`.
    pub fn derivative(&self, i: usize) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            out.add_term(n, &c.scale_int(e as i64));
        }
        out
    }

    /// `{f,g} = f_x g_X − f_X g_x + f_y g_Y − f_Y g_y`.
    pub fn poisson(&self, other: &CommPoly) -> CommPoly {
        poisson_vv(self, other)
    }

    /// Action of a group element (an algebra automorphism).
    pub fn act(&self, g: &GroupElement) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let (e, n) = g.act_monomial(m.0);
            out.add_term(Mono(n), &c.mul_root(2 * e));
        }
        out
    }

    /// Action of the diagram automorphism.
    pub fn tau(&self) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let (e, n) = dihedral::tau_monomial(m.0);
            out.add_term(Mono(n), &c.mul_root(e));
        }
        out
    }

    /// Exact multivariate division; fails when `g` does not divide `self`.
    pub fn divide_exact(&self, g: &CommPoly) -> Result<CommPoly, PolyError> {
        let (lm, lc) = g.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc
            .inv()
            .map_err(|_| PolyError::NonUnitLeading(lc.to_string()))?;
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.ring);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(PolyError::NotExact(format!(
                    "({self}) / ({g}) leaves a term {c} * {m}"
                )));
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rem = rem.sub(&g.mul_mono(&qm).scale(&qc));
            quo.add_term(qm, &qc);
        }
        Ok(quo)
    }

    /// Component of a given `a`-degree (coefficients become `a`-free).
    pub fn a_component(&self, k: u16) -> CommPoly {
        self.map_coefficients(|c| c.a_component(k))
    }

    /// Component of a given `t`-degree, retagged to truncation order `t_order`.
    pub fn t_component(&self, k: u8, t_order: u8) -> CommPoly {
        let ring = self.ring.with_t_order(t_order);
        let mut out = Self::zero(&ring);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.t_component(k, t_order));
        }
        out
    }

    pub fn with_t_order(&self, t_order: u8) -> CommPoly {
        let ring = self.ring.with_t_order(t_order);
        let mut out = Self::zero(&ring);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.with_t_order(t_order));
        }
        out
    }

    pub fn specialize_a(&self, value: &BigRational) -> CommPoly {
        self.map_coefficients(|c| c.specialize_a(value))
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> CommPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(*m, v);
            }
        }
        out
    }

    /// Terms whose monomial satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> CommPoly {
        CommPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Rendering truncated to the first `max_terms` terms.
    pub fn render_truncated(&self, max_terms: usize) -> String {
        if self.terms.len() <= max_terms {
            return self.to_string();
        }
        let head = CommPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().take(max_terms).map(|(m, c)| (*m, c.clone())).collect(),
        };
        format!("{head} + ... ({} more terms)", self.terms.len() - max_terms)
    }
}

pub fn poisson_vv(f: &CommPoly, g: &CommPoly) -> CommPoly {
    let d = |p: &CommPoly, i| p.derivative(i);
    d(f, X_LOW)
        .mul(&d(g, X_UP))
        .sub(&d(f, X_UP).mul(&d(g, X_LOW)))
        .add(&d(f, Y_LOW).mul(&d(g, Y_UP)))
        .sub(&d(f, Y_UP).mul(&d(g, Y_LOW)))
}

/// `true` iff `f` is fixed by `s_0` and `s_1` (which generate `W`).
pub fn is_w_invariant(f: &CommPoly, d: u32) -> bool {
    [0, 1]
        .iter()
        .all(|&k| &f.act(&GroupElement::reflection(d, k)) == f)
}

/// The named invariants of `C[V × V*]^W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// `q = xy`
    Q,
    /// `Q = XY`
    BigQ,
    /// `xX + yY`
    Eu0,
    /// `x^(d-i) Y^i + y^(d-i) X^i`, `0 ≤ i ≤ d`
    A0(u32),
    /// `(xX)^i + (yY)^i`
    Eu0Round(u32),
    /// `Σ_{k=0}^{i} (xX)^(i-k) (yY)^k`
    Eu0Square(u32),
}

pub fn invariant_generator(ring: &ScalarRing, d: u32, name: Invariant) -> Result<CommPoly, PolyError> {
    let m = |e: [u16; 4]| CommPoly::monomial(ring, Mono(e));
    Ok(match name {
        Invariant::Q => m([1, 1, 0, 0]),
        Invariant::BigQ => m([0, 0, 1, 1]),
        Invariant::Eu0 => m([1, 0, 1, 0]).add(&m([0, 1, 0, 1])),
        Invariant::A0(i) => {
            if i > d {
                return Err(PolyError::OutOfRange { name: "a0", index: i, d });
            }
            let (p, i) = ((d - i) as u16, i as u16);
            m([p, 0, 0, i]).add(&m([0, p, i, 0]))
        }
        Invariant::Eu0Round(i) => {
            let i = i as u16;
            m([i, 0, i, 0]).add(&m([0, i, 0, i]))
        }
        Invariant::Eu0Square(i) => {
            let mut p = CommPoly::zero(ring);
            for k in 0..=i as u16 {
                let j = i as u16 - k;
                p = p.add(&m([j, k, j, k]));
            }
            p
        }
    })
}

/// Shorthand for [`invariant_generator`] on indices known to be in range.
pub fn inv(ring: &ScalarRing, d: u32, name: Invariant) -> CommPoly {
    invariant_generator(ring, d, name).expect("index in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(d: u32) -> ScalarRing {
        ScalarRing::for_dihedral(d, 1)
    }

    #[test]
    fn bracket_examples() {
        let r = ring(5);
        let q = inv(&r, 5, Invariant::Q);
        let bq = inv(&r, 5, Invariant::BigQ);
        assert_eq!(poisson_vv(&q, &bq), inv(&r, 5, Invariant::Eu0));
        assert!(poisson_vv(&CommPoly::x(&r), &CommPoly::y(&r)).is_zero());
        assert_eq!(poisson_vv(&CommPoly::x(&r), &CommPoly::big_x(&r)), CommPoly::one(&r));
        for d in 2..=8 {
            let r = ring(d);
            let eu = inv(&r, d, Invariant::Eu0);
            for i in 0..=d {
                let a = inv(&r, d, Invariant::A0(i));
                assert_eq!(poisson_vv(&eu, &a), a.scale_int(2 * i as i64 - d as i64));
            }
        }
    }

    #[test]
    fn division_examples() {
        let d = 5;
        let r = ring(d);
        let (bx, by) = (CommPoly::big_x(&r), CommPoly::big_y(&r));
        for i in 0..d as i64 {
            let z = r.zeta_power(i);
            let lin = bx.sub(&by.scale(&z));
            let sq = bx.pow(2).sub(&by.pow(2).scale(&r.zeta_power(2 * i)));
            assert_eq!(sq.divide_exact(&lin).unwrap(), bx.add(&by.scale(&z)));
            assert_eq!(lin.act(&GroupElement::reflection(d, i)), lin.neg());
        }
        let xx = CommPoly::monomial(&r, Mono([1, 0, 1, 0]));
        let yy = CommPoly::monomial(&r, Mono([0, 1, 0, 1]));
        assert_eq!(xx.pow(2).sub(&yy.pow(2)).divide_exact(&xx.sub(&yy)).unwrap(), xx.add(&yy));
        assert!(matches!(
            CommPoly::x(&r).divide_exact(&CommPoly::y(&r)),
            Err(PolyError::NotExact(_))
        ));
        assert_eq!(CommPoly::x(&r).divide_exact(&CommPoly::zero(&r)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn named_invariants() {
        for d in 2..=8 {
            let r = ring(d);
            assert_eq!(
                inv(&r, d, Invariant::A0(0)),
                CommPoly::x(&r).pow(d).add(&CommPoly::y(&r).pow(d))
            );
            assert!(is_w_invariant(&inv(&r, d, Invariant::Q), d));
            assert!(!is_w_invariant(&CommPoly::x(&r), d));
            for j in 0..=d {
                let a = inv(&r, d, Invariant::A0(j));
                assert!(is_w_invariant(&a, d), "a_{j},0 at d={d}");
                for k in 0..d as i64 {
                    assert_eq!(a.act(&GroupElement::reflection(d, k)), a);
                }
            }
            assert!(invariant_generator(&r, d, Invariant::A0(d + 1)).is_err());
        }
        let r = ring(4);
        assert_eq!(inv(&r, 4, Invariant::Eu0Round(1)), inv(&r, 4, Invariant::Eu0));
        let xx = CommPoly::monomial(&r, Mono([1, 0, 1, 0]));
        let yy = CommPoly::monomial(&r, Mono([0, 1, 0, 1]));
        for i in 0..=6 {
            assert_eq!(
                inv(&r, 4, Invariant::Eu0Square(i)).mul(&xx.sub(&yy)),
                xx.pow(i + 1).sub(&yy.pow(i + 1))
            );
        }
    }

    #[test]
    fn sl2_determinant_is_a_casimir() {
        let d = 5;
        let r = ring(d);
        let (q, bq, eu) = (inv(&r, d, Invariant::Q), inv(&r, d, Invariant::BigQ), inv(&r, d, Invariant::Eu0));
        let cas = eu.pow(2).sub(&q.mul(&bq).scale_int(4));
        for g in [&q, &bq, &eu] {
            assert!(poisson_vv(g, &cas).is_zero());
        }
    }

    #[test]
    fn rendering() {
        let r = ring(3);
        let p = CommPoly::x(&r).pow(2).mul(&CommPoly::big_y(&r)).sub(&CommPoly::y(&r).scale_int(3));
        assert_eq!(p.to_string(), "-3*y + x^2 Y");
        assert_eq!(CommPoly::zero(&r).to_string(), "0");
        assert_eq!(CommPoly::big_x(&r).scale(&r.zeta_power(1)).to_string(), "(-1 + z)*X");
        let r4 = ring(4);
        assert_eq!(CommPoly::big_x(&r4).scale(&r4.zeta_power(1)).to_string(), "z^2*X");
    }

    fn arb_poly(d: u32) -> impl Strategy<Value = CommPoly> {
        prop::collection::vec(((0u16..3, 0u16..3, 0u16..3, 0u16..3), -3i64..4, 0i64..6), 0..5).prop_map(
            move |terms| {
                let r = ring(d);
                let mut p = CommPoly::zero(&r);
                for ((a, b, c, e), k, z) in terms {
                    p.add_term(Mono([a, b, c, e]), &r.zeta_power(z).scale_int(k));
                }
                p
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn bracket_axioms(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
            let b = poisson_vv;
            prop_assert_eq!(b(&f, &g), b(&g, &f).neg());
            prop_assert_eq!(b(&f, &g.add(&h)), b(&f, &g).add(&b(&f, &h)));
            prop_assert_eq!(b(&f, &g.mul(&h)), b(&f, &g).mul(&h).add(&g.mul(&b(&f, &h))));
            let jac = b(&f, &b(&g, &h)).add(&b(&g, &b(&h, &f))).add(&b(&h, &b(&f, &g)));
            prop_assert!(jac.is_zero());
        }

        #[test]
        fn division_inverts_multiplication(f in arb_poly(4), k in 0i64..4) {
            let r = ring(4);
            let g = CommPoly::big_x(&r).sub(&CommPoly::big_y(&r).scale(&r.zeta_power(k)));
            prop_assert_eq!(f.mul(&g).divide_exact(&g).unwrap(), f);
        }

        #[test]
        fn invariant_brackets_stay_invariant(i in 0u32..=4, j in 0u32..=4) {
            let d = 4;
            let r = ring(d);
            let (f, g) = (inv(&r, d, Invariant::A0(i)), inv(&r, d, Invariant::A0(j)));
            prop_assert!(is_w_invariant(&poisson_vv(&f, &g), d));
            prop_assert!(is_w_invariant(&poisson_vv(&f, &inv(&r, d, Invariant::Eu0)), d));
        }
    }
}
