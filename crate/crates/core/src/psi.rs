//! The polynomials `Ψ_i(T, T', T'')` defined by `Ψ_0 = 1`, `Ψ_1 = T`,
//! `Ψ_{i+1} = T Ψ_i − T'T'' Ψ_{i−1}`, the degree-`k` basis
//! `T'^{k−j} T''^i Ψ_{j−i}` (`0 ≤ i ≤ j ≤ k`), and coordinates in it.
//!
//! Substituting `(T, T', T'') = (eu_0, q, Q)` gives
//! `Ψ_i(eu_0, q, Q) = ((xX)^{i+1} − (yY)^{i+1}) / (xX − yY)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::polyring::{inv, CommPoly, Invariant, Mono};
use crate::scalar::{fmt_rational, Cyclotomic, ScalarRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsiError {
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("polynomial is not in the span of the degree-{0} basis")]
    NotInSpan(u32),
    #[error("coefficient {0} is not rational")]
    NotRational(String),
}

/// Exponents of `T^a T'^b T''^c`.
pub type PsiExp = [u16; 3];

/// Sparse polynomial in `T, T', T''` (rendered `T, T1, T2`) with rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PsiPoly {
    terms: BTreeMap<PsiExp, BigRational>,
}

impl fmt::Debug for PsiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PsiPoly({self})")
    }
}

impl fmt::Display for PsiPoly {
    /// Descending in `T`, e.g. `T^2 - T1*T2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut vars = Vec::new();
            for (name, &p) in ["T", "T1", "T2"].iter().zip(e.iter()) {
                match p {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{p}")),
                }
            }
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mag = fmt_rational(&c.abs());
            let body = vars.join("*");
            match (mag.as_str(), body.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                ("1", false) => write!(f, "{body}")?,
                (m, false) => write!(f, "{m}*{body}")?,
            }
        }
        Ok(())
    }
}

impl PsiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0], BigRational::one())
    }

    pub fn monomial(e: PsiExp, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, &c);
        p
    }

    /// `T`, `T'` or `T''` for `i = 0, 1, 2`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a PsiExp, &'a BigRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(*e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PsiExp, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &PsiExp) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: PsiExp, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &PsiPoly) -> PsiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &PsiPoly) -> PsiPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> PsiPoly {
        let mut out = PsiPoly::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &PsiPoly) -> PsiPoly {
        let mut out = PsiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(std::array::from_fn(|i| e1[i] + e2[i]), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, e: PsiExp) -> PsiPoly {
        PsiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (std::array::from_fn(|i| k[i] + e[i]), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> PsiPoly {
        let mut out = PsiPoly::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut n = *e;
            n[i] -= 1;
            out.add_term(n, &(c * BigRational::from_integer(e[i].into())));
        }
        out
    }

    /// `Some(k)` if homogeneous of degree `k` (the zero polynomial has none).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// Degree in `T`.
    pub fn t_degree(&self) -> Option<u16> {
        self.terms.keys().map(|e| e[0]).max()
    }

    /// Evaluates at `(T, T', T'')` in any commutative ring given by closures.
    pub fn evaluate<R: Clone>(
        &self,
        vars: [&R; 3],
        one: R,
        mul: impl Fn(&R, &R) -> R,
        add: impl Fn(&R, &R) -> R,
        scale: impl Fn(&R, &BigRational) -> R,
    ) -> Option<R> {
        let mut powers: [Vec<R>; 3] = [vec![one.clone()], vec![one.clone()], vec![one.clone()]];
        let mut acc: Option<R> = None;
        for (e, c) in &self.terms {
            let mut term = one.clone();
            for i in 0..3 {
                while powers[i].len() <= e[i] as usize {
                    let next = mul(powers[i].last().expect("seeded"), vars[i]);
                    powers[i].push(next);
                }
                if e[i] > 0 {
                    term = mul(&term, &powers[i][e[i] as usize]);
                }
            }
            let term = scale(&term, c);
            acc = Some(match acc {
                None => term,
                Some(a) => add(&a, &term),
            });
        }
        acc
    }

    pub fn evaluate_rational(&self, vals: [&BigRational; 3]) -> BigRational {
        self.evaluate(vals, BigRational::one(), |a, b| a * b, |a, b| a + b, |a, c| a * c)
            .unwrap_or_else(BigRational::zero)
    }

    /// `P(eu_0, q, Q)` in `C[V × V*]`.
    pub fn substitute_invariants(&self, ring: &ScalarRing, d: u32) -> CommPoly {
        let vals = [
            inv(ring, d, Invariant::Eu0),
            inv(ring, d, Invariant::Q),
            inv(ring, d, Invariant::BigQ),
        ];
        self.evaluate(
            [&vals[0], &vals[1], &vals[2]],
            CommPoly::one(ring),
            CommPoly::mul,
            CommPoly::add,
            |p, c| p.scale(&ring.from_rational(c)),
        )
        .unwrap_or_else(|| CommPoly::zero(ring))
    }
}

static PSI_CACHE: RwLock<Vec<PsiPoly>> = RwLock::new(Vec::new());

/// `Ψ_i`, memoized.
pub fn psi(i: usize) -> PsiPoly {
    if let Some(p) = PSI_CACHE.read().expect("psi cache poisoned").get(i) {
        return p.clone();
    }
    let mut cache = PSI_CACHE.write().expect("psi cache poisoned");
    if cache.is_empty() {
        cache.push(PsiPoly::one());
        cache.push(PsiPoly::var(0));
    }
    while cache.len() <= i {
        let n = cache.len();
        let next = cache[n - 1]
            .mul_monomial([1, 0, 0])
            .sub(&cache[n - 2].mul_monomial([0, 1, 1]));
        cache.push(next);
    }
    cache[i].clone()
}

/// `Ψ_i(eu_0, q, Q) == ((xX)^{i+1} − (yY)^{i+1}) / (xX − yY)` in `C[V × V*]`.
pub fn verify_psi_closed_form(i: usize, d: u32) -> bool {
    verify_psi_closed_form_with(i, d, false)
}

/// As [`verify_psi_closed_form`]; `mutate` perturbs the `T^i` coefficient.
pub fn verify_psi_closed_form_with(i: usize, d: u32, mutate: bool) -> bool {
    let ring = ScalarRing::for_dihedral(d, 1);
    let mut p = psi(i);
    if mutate {
        p.add_term([i as u16, 0, 0], &BigRational::one());
    }
    let lhs = p.substitute_invariants(&ring, d);
    let xx = CommPoly::monomial(&ring, Mono([1, 0, 1, 0]));
    let yy = CommPoly::monomial(&ring, Mono([0, 1, 0, 1]));
    let num = xx.pow(i as u32 + 1).sub(&yy.pow(i as u32 + 1));
    match num.divide_exact(&xx.sub(&yy)) {
        Ok(rhs) => lhs == rhs,
        Err(_) => false,
    }
}

/// Both derivative identities
/// `2T' ∂Ψ_i/∂T + T ∂Ψ_i/∂T'' = (i+1) T' Ψ_{i−1}` and
/// `2T'' ∂Ψ_i/∂T + T ∂Ψ_i/∂T' = (i+1) T'' Ψ_{i−1}` for `i ≥ 1`.
pub fn verify_psi_derivatives(i: usize) -> bool {
    verify_psi_derivatives_with(i, false)
}

/// As [`verify_psi_derivatives`]; `mutate` uses the factor `(i+2)`.
pub fn verify_psi_derivatives_with(i: usize, mutate: bool) -> bool {
    assert!(i >= 1, "derivative identities start at i = 1");
    let p = psi(i);
    let prev = psi(i - 1);
    let factor = BigRational::from_integer((i as i64 + if mutate { 2 } else { 1 }).into());
    let two = BigRational::from_integer(2.into());
    let dt = p.derivative(0);
    let first = dt
        .mul_monomial([0, 1, 0])
        .scale(&two)
        .add(&p.derivative(2).mul_monomial([1, 0, 0]));
    let second = dt
        .mul_monomial([0, 0, 1])
        .scale(&two)
        .add(&p.derivative(1).mul_monomial([1, 0, 0]));
    first == prev.mul_monomial([0, 1, 0]).scale(&factor)
        && second == prev.mul_monomial([0, 0, 1]).scale(&factor)
}

/// Index set `{(i, j) : 0 ≤ i ≤ j ≤ k}` in lexicographic order.
pub fn basis_indices(k: u32) -> Vec<(u32, u32)> {
    (0..=k).flat_map(|i| (i..=k).map(move |j| (i, j))).collect()
}

/// `T'^{k−j} T''^i Ψ_{j−i}`.
pub fn basis_element(k: u32, i: u32, j: u32) -> PsiPoly {
    psi((j - i) as usize).mul_monomial([0, (k - j) as u16, i as u16])
}

/// Monomials `T^a T'^b T''^c` with `a + b + c = k`, lexicographic.
pub fn monomials_of_degree(k: u32) -> Vec<PsiExp> {
    let k = k as u16;
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=k - a {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

fn basis_matrix(k: u32) -> Matrix {
    let monos = monomials_of_degree(k);
    let cols: Vec<Vec<BigRational>> = basis_indices(k)
        .into_iter()
        .map(|(i, j)| {
            let b = basis_element(k, i, j);
            monos.iter().map(|m| b.coefficient(m)).collect()
        })
        .collect();
    Matrix::from_columns(&cols)
}

/// Rank of the degree-`k` basis family equals `(k+1)(k+2)/2`.
pub fn verify_basis(k: u32) -> bool {
    basis_matrix(k).rank() == ((k + 1) * (k + 2) / 2) as usize
}

/// Coordinates of a homogeneous `p` of degree `k` in the family
/// `T'^{k−j} T''^i Ψ_{j−i}`.
pub fn basis_coordinates(p: &PsiPoly, k: u32) -> Result<BTreeMap<(u32, u32), BigRational>, PsiError> {
    if !p.is_zero() && p.homogeneous_degree() != Some(k) {
        return Err(PsiError::NotHomogeneous(k));
    }
    let monos = monomials_of_degree(k);
    let rhs: Vec<BigRational> = monos.iter().map(|m| p.coefficient(m)).collect();
    let sol = basis_matrix(k).solve(&rhs).ok_or(PsiError::NotInSpan(k))?;
    Ok(basis_indices(k).into_iter().zip(sol).collect())
}

/// Rebuilds a polynomial from basis coordinates.
pub fn from_basis_coordinates(k: u32, coords: &BTreeMap<(u32, u32), BigRational>) -> PsiPoly {
    coords.iter().fold(PsiPoly::zero(), |acc, (&(i, j), c)| {
        acc.add(&basis_element(k, i, j).scale(c))
    })
}

/// Injectivity of `T^a T'^b T''^c ↦ eu_0^a q^b Q^c` on degree `k`.
pub fn substitution_is_injective(k: u32, d: u32) -> bool {
    let ring = ScalarRing::for_dihedral(d, 1);
    let (matrix, _) = substitution_matrix(&ring, d, k);
    matrix.rank() == monomials_of_degree(k).len()
}

/// Columns: images of degree-`k` monomials in `C[V × V*]`, rows indexed by the
/// returned list of `x,y,X,Y` monomials.
fn substitution_matrix(ring: &ScalarRing, d: u32, k: u32) -> (Matrix, Vec<Mono>) {
    let images: Vec<CommPoly> = monomials_of_degree(k)
        .into_iter()
        .map(|e| PsiPoly::monomial(e, BigRational::one()).substitute_invariants(ring, d))
        .collect();
    let mut rows: Vec<Mono> = images.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
    rows.sort();
    rows.dedup();
    let cols: Vec<Vec<BigRational>> = images
        .iter()
        .map(|p| {
            rows.iter()
                .map(|m| {
                    p.coefficient(m)
                        .as_rational()
                        .expect("invariant monomials have rational coefficients")
                })
                .collect()
        })
        .collect();
    (Matrix::from_columns(&cols), rows)
}

/// Writes an `a`- and `t`-free polynomial of degree `2k` as `P(eu_0, q, Q)`
/// with `P` homogeneous of degree `k`; the answer is unique by injectivity.
pub fn express_in_invariants(f: &CommPoly, d: u32, k: u32) -> Result<PsiPoly, PsiError> {
    let ring = ScalarRing::for_dihedral(d, 1);
    let (matrix, rows) = substitution_matrix(&ring, d, k);
    if f.terms().any(|(m, _)| !rows.contains(m)) {
        return Err(PsiError::NotInSpan(k));
    }
    let mut rhs = Vec::with_capacity(rows.len());
    for m in &rows {
        let c: Cyclotomic = f
            .coefficient(m)
            .as_cyclotomic()
            .ok_or_else(|| PsiError::NotRational(f.coefficient(m).to_string()))?;
        rhs.push(c.as_rational().ok_or_else(|| PsiError::NotRational(c.to_string()))?);
    }
    let sol = matrix.solve(&rhs).ok_or(PsiError::NotInSpan(k))?;
    Ok(monomials_of_degree(k)
        .into_iter()
        .zip(sol)
        .fold(PsiPoly::zero(), |mut acc, (e, c)| {
            acc.add_term(e, &c);
            acc
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn first_polynomials() {
        assert_eq!(psi(0), PsiPoly::one());
        assert_eq!(psi(1), PsiPoly::var(0));
        assert_eq!(psi(2).to_string(), "T^2 - T1*T2");
        assert_eq!(psi(3).to_string(), "T^3 - 2*T*T1*T2");
        for k in 0..=10 {
            let v = psi(k).evaluate_rational([&q(3), &q(0), &q(0)]);
            assert_eq!(v, q(3i64.pow(k as u32)), "Ψ_{k}(T,0,0) = T^{k}");
            let collapsed = psi(k).terms().filter(|(e, _)| e[1] == 0 && e[2] == 0).count();
            assert_eq!(collapsed, 1);
        }
    }

    #[test]
    fn shape_of_psi() {
        for i in 0..=12 {
            let p = psi(i);
            assert_eq!(p.homogeneous_degree(), Some(i as u32));
            assert_eq!(p.t_degree(), Some(i as u16));
            assert_eq!(p.coefficient(&[i as u16, 0, 0]), q(1));
            assert!(p.terms().all(|(_, c)| c.is_integer()));
        }
    }

    #[test]
    fn closed_form_and_derivatives() {
        for i in 0..=8 {
            assert!(verify_psi_closed_form(i, 5), "closed form i={i}");
            assert!(!verify_psi_closed_form_with(i, 5, true));
        }
        for i in 1..=10 {
            assert!(verify_psi_derivatives(i), "derivatives i={i}");
            assert!(!verify_psi_derivatives_with(i, true));
        }
    }

    #[test]
    fn basis_rank_and_examples() {
        for k in 0..=8 {
            assert!(verify_basis(k), "k={k}");
            assert!(substitution_is_injective(k, 3));
        }
        let c = basis_coordinates(&PsiPoly::var(0), 1).unwrap();
        assert_eq!(c[&(0, 1)], q(1));
        assert!(c.iter().filter(|(k, _)| **k != (0, 1)).all(|(_, v)| v.is_zero()));
        // k = 2: T'T'' is the (i,j) = (1,1) element
        let c = basis_coordinates(&PsiPoly::monomial([0, 1, 1], q(1)), 2).unwrap();
        assert_eq!(c[&(1, 1)], q(1));
        assert_eq!(c.values().filter(|v| !v.is_zero()).count(), 1);
        // T^2 = Ψ_2 + T'T''
        let c = basis_coordinates(&PsiPoly::monomial([2, 0, 0], q(1)), 2).unwrap();
        assert_eq!((c[&(0, 2)].clone(), c[&(1, 1)].clone()), (q(1), q(1)));
        assert_eq!(
            basis_coordinates(&PsiPoly::var(0).add(&PsiPoly::one()), 1),
            Err(PsiError::NotHomogeneous(1))
        );
    }

    #[test]
    fn express_recovers_known_polynomials() {
        let d = 4;
        let ring = ScalarRing::for_dihedral(d, 1);
        for k in 0..=5 {
            let f = psi(k).substitute_invariants(&ring, d);
            assert_eq!(express_in_invariants(&f, d, k as u32).unwrap(), psi(k));
        }
        let x = CommPoly::x(&ring).pow(2);
        assert_eq!(express_in_invariants(&x, d, 1), Err(PsiError::NotInSpan(1)));
    }

    proptest! {
        #[test]
        fn coordinates_roundtrip(k in 0u32..=6, coeffs in prop::collection::vec(-5i64..6, 28)) {
            let monos = monomials_of_degree(k);
            let mut p = PsiPoly::zero();
            for (e, c) in monos.iter().zip(&coeffs) {
                p.add_term(*e, &q(*c));
            }
            let coords = basis_coordinates(&p, k).unwrap();
            prop_assert_eq!(from_basis_coordinates(k, &coords), p);
        }
    }
}
