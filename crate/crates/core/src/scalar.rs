//! Exact coefficient arithmetic: the cyclotomic field `Q(z)` with `z` a
//! primitive `m`-th root of unity, extended by a formal parameter `a` and a
//! nilpotent deformation parameter `t` (with `t^N = 0`).
//!
//! Everything here is exact. Rationals are arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed session parameters: {0}")]
    Mismatch(String),
    #[error("element is not invertible in the coefficient ring")]
    NotInvertible,
    #[error("cannot parse exact rational from {0:?}")]
    Parse(String),
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    // x^m - 1 divided by Phi_k for every proper divisor k of m.
    let mut poly: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for k in 1..m {
        if m % k == 0 {
            let divisor = cyclotomic_polynomial(k);
            poly = exact_int_poly_div(&poly, &divisor);
        }
    }
    poly
}

fn exact_int_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quo = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (l, dc) in den.iter().enumerate() {
            rem[k + l] -= &c * dc;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// The field `Q(z)`, `z` a primitive `m`-th root of unity, in the power basis
/// `1, z, ..., z^(phi(m)-1)`.
#[derive(Debug)]
pub struct CycloField {
    m: u32,
    phi: usize,
    modulus: Vec<BigInt>,
    /// `z^k` reduced, for `0 <= k < m`.
    powers: Vec<Vec<BigInt>>,
}

impl CycloField {
    pub fn new(m: u32) -> Arc<Self> {
        assert!(m >= 1, "cyclotomic order must be positive");
        let phi = euler_phi(m);
        let modulus = cyclotomic_polynomial(m);
        let mut field = CycloField {
            m,
            phi,
            modulus,
            powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(m as usize);
        for k in 0..m as usize {
            let mut v = vec![BigInt::zero(); k.max(phi) + 1];
            v[k] = BigInt::one();
            field.reduce(&mut v);
            v.truncate(phi);
            powers.push(v);
        }
        field.powers = powers;
        Arc::new(field)
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduce a coefficient vector of arbitrary length modulo `Phi_m` in place.
    fn reduce(&self, v: &mut Vec<BigInt>) {
        let phi = self.phi;
        if v.len() <= phi {
            v.resize(phi, BigInt::zero());
            return;
        }
        for k in (phi..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[k]);
            for l in 0..phi {
                let mc = &self.modulus[l];
                if !mc.is_zero() {
                    v[k - phi + l] -= &c * mc;
                }
            }
        }
        v.truncate(phi);
    }
}

/// An element of `Q(z)` in canonical form: integer numerators over a common
/// positive denominator, fully reduced.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[m={}]({})", self.field.m, self)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}
impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            num: vec![BigInt::zero(); field.phi],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_integer(field, BigInt::one())
    }

    pub fn from_integer(field: &Arc<CycloField>, n: BigInt) -> Self {
        let mut c = Self::zero(field);
        c.num[0] = n;
        c
    }

    pub fn from_rational(field: &Arc<CycloField>, r: &BigRational) -> Self {
        let mut c = Self::zero(field);
        c.num[0] = r.numer().clone();
        c.den = r.denom().clone();
        c.normalize();
        c
    }

    /// `z^k`, exponent taken modulo `m`.
    pub fn root(field: &Arc<CycloField>, k: i64) -> Self {
        let e = k.rem_euclid(field.m as i64) as usize;
        Cyclotomic {
            field: field.clone(),
            num: field.powers[e].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds an element from rational coordinates in the power basis;
    /// `coeffs` may be longer than `phi(m)` and is reduced.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        field.reduce(&mut num);
        let mut c = Cyclotomic {
            field: field.clone(),
            num,
            den,
        };
        c.normalize();
        c
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Rational coordinates in the power basis, length `phi(m)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field.m != other.field.m {
            return Err(ScalarError::Mismatch(format!(
                "cyclotomic orders {} and {}",
                self.field.m, other.field.m
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate_other: bool) -> Self {
        let same = self.den == other.den;
        let num: Vec<BigInt> = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let (x, y) = if same {
                    (a.clone(), b.clone())
                } else {
                    (a * &other.den, b * &self.den)
                };
                if negate_other {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        let den = if same {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        let mut c = Cyclotomic {
            field: self.field.clone(),
            num,
            den,
        };
        c.normalize();
        c
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let phi = self.field.phi;
        if phi == 1 {
            let mut c = Cyclotomic {
                field: self.field.clone(),
                num: vec![&self.num[0] * &other.num[0]],
                den: &self.den * &other.den,
            };
            c.normalize();
            return c;
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce(&mut prod);
        let mut c = Cyclotomic {
            field: self.field.clone(),
            num: prod,
            den: &self.den * &other.den,
        };
        c.normalize();
        c
    }

    /// Multiplication by `z^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let e = k.rem_euclid(self.field.m as i64);
        if e == 0 {
            return self.clone();
        }
        let r = Cyclotomic::root(&self.field, e);
        self.mul_unchecked(&r)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let mut c = Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * k).collect(),
            den: self.den.clone(),
        };
        c.normalize();
        c
    }

    /// Exact field inverse via the extended Euclidean algorithm against `Phi_m`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let u: Vec<BigRational> = self.coeffs();
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // s*u + _*modulus = gcd (a nonzero constant since Phi_m is irreducible)
        let (g, s) = qpoly::ext_gcd(&u, &modulus);
        let g0 = g[0].clone();
        let s: Vec<BigRational> = s.into_iter().map(|c| c / &g0).collect();
        Ok(Cyclotomic::from_coeffs(&self.field, &s))
    }

    /// Complex embedding `z -> exp(2 pi i / m)`, for diagnostics only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        let den = bigint_to_f64(&self.den);
        for (k, n) in self.num.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.field.m as f64;
            let c = bigint_to_f64(n) / den;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    n.to_string().parse().unwrap_or(f64::NAN)
}

mod qpoly {
    //! Dense univariate polynomials over `Q`, just enough for inversion.
    use num::rational::BigRational;
    use num::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().map_or(false, Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigRational::zero());
        }
    }

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![BigRational::zero()], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (l, bc) in b.iter().enumerate() {
                r[k + l] = &r[k + l] - &c * bc;
            }
            q[k] = c;
        }
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        // a - q*b
        let n = a.len().max(q.len() + b.len() - 1);
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, qc) in q.iter().enumerate() {
            for (j, bc) in b.iter().enumerate() {
                out[i + j] = &out[i + j] - qc * bc;
            }
        }
        trim(&mut out);
        out
    }

    /// Returns `(g, s)` with `s*a = g (mod b)`.
    pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = b.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![num::One::one()];
        while !is_zero(&r1) {
            let (q, r) = divmod(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

fn fmt_rational_abs(n: &BigInt, d: &BigInt) -> String {
    if d.is_one() {
        n.abs().to_string()
    } else {
        format!("{}/{}", n.abs(), d)
    }
}

impl fmt::Display for Cyclotomic {
    /// Polynomial in `z` with ascending exponents, e.g. `1/2 + z - 3*z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let g = n.gcd(&self.den);
            let (nn, dd) = (n / &g, &self.den / &g);
            let neg = nn.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = fmt_rational_abs(&nn, &dd);
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses `"p/q"` or `"p"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Session parameters for [`Scalar`]: the cyclotomic field and the `t`
/// truncation order.
#[derive(Clone, Debug)]
pub struct ScalarRing {
    field: Arc<CycloField>,
    t_order: u8,
}

impl PartialEq for ScalarRing {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.t_order == other.t_order
    }
}
impl Eq for ScalarRing {}

impl ScalarRing {
    pub fn new(m: u32, t_order: u8) -> Self {
        assert!(t_order >= 1, "t_order must be at least 1");
        ScalarRing {
            field: CycloField::new(m),
            t_order,
        }
    }

    /// The ring for the dihedral group of order `2d`: `m = 2d`.
    pub fn for_dihedral(d: u32, t_order: u8) -> Self {
        Self::new(2 * d, t_order)
    }

    pub fn with_t_order(&self, t_order: u8) -> Self {
        assert!(t_order >= 1, "t_order must be at least 1");
        ScalarRing {
            field: self.field.clone(),
            t_order,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn t_order(&self) -> u8 {
        self.t_order
    }

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms: Vec::new(),
        }
    }

    pub fn from_cyclotomic(&self, c: Cyclotomic) -> Scalar {
        self.monomial(0, 0, c)
    }

    /// `c * a^a_exp * t^t_exp`.
    pub fn monomial(&self, a_exp: u16, t_exp: u8, c: Cyclotomic) -> Scalar {
        let mut s = self.zero();
        if !c.is_zero() && t_exp < self.t_order {
            s.terms.push((a_exp, t_exp, c));
        }
        s
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_cyclotomic(Cyclotomic::from_integer(&self.field, BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        self.from_cyclotomic(Cyclotomic::from_integer(&self.field, n))
    }

    pub fn from_rational(&self, r: &BigRational) -> Scalar {
        self.from_cyclotomic(Cyclotomic::from_rational(&self.field, r))
    }

    /// The formal parameter `a`.
    pub fn a(&self) -> Scalar {
        self.monomial(1, 0, Cyclotomic::one(&self.field))
    }

    /// The deformation parameter `t`.
    pub fn t(&self) -> Scalar {
        self.monomial(0, 1, Cyclotomic::one(&self.field))
    }

    /// `zeta^k` where `zeta = z^2` is a primitive `m/2`-th root of unity.
    pub fn zeta_power(&self, k: i64) -> Scalar {
        self.from_cyclotomic(self.root_power(k, false))
    }

    /// `zeta^k = z^(2k)`, or `z^k` (powers of a square root of `zeta`) when `half`.
    pub fn root_power(&self, k: i64, half: bool) -> Cyclotomic {
        Cyclotomic::root(&self.field, if half { k } else { 2 * k })
    }
}

/// Element of `Q(z)[a][t]/(t^N)`: sparse in `(a_exp, t_exp)`, sorted by key,
/// without zero coefficients.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CycloField>,
    t_order: u8,
    terms: Vec<(u16, u8, Cyclotomic)>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.t_order == other.t_order && self.terms == other.terms
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl Scalar {
    pub fn ring(&self) -> ScalarRing {
        ScalarRing {
            field: self.field.clone(),
            t_order: self.t_order,
        }
    }

    pub fn t_order(&self) -> u8 {
        self.t_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == 0 && self.terms[0].2.is_one()
    }

    /// Iterates `(a_exp, t_exp, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u16, u8, &Cyclotomic)> {
        self.terms.iter().map(|(a, t, c)| (*a, *t, c))
    }

    pub fn max_a_degree(&self) -> Option<u16> {
        self.terms.iter().map(|t| t.0).max()
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field.m != other.field.m {
            return Err(ScalarError::Mismatch(format!(
                "cyclotomic orders {} and {}",
                self.field.m, other.field.m
            )));
        }
        if self.t_order != other.t_order {
            return Err(ScalarError::Mismatch(format!(
                "t orders {} and {}",
                self.t_order, other.t_order
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(x), Some(y)) => (x.0, x.1).cmp(&(y.0, y.1)),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (a, t, c) = &other.terms[j];
                    terms.push((*a, *t, if negate { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (a, t, c) = &self.terms[i];
                    let s = c.add_unchecked(&other.terms[j].2, negate);
                    if !s.is_zero() {
                        terms.push((*a, *t, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms,
        }
    }

    /// In-place `self += other` (panics on session mismatch).
    pub fn add_assign_ref(&mut self, other: &Scalar) {
        if other.is_zero() {
            return;
        }
        if self.terms.is_empty() {
            self.check(other).expect("scalar session mismatch");
            self.terms = other.terms.clone();
            return;
        }
        *self = self.try_add(other).expect("scalar session mismatch");
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut terms: Vec<(u16, u8, Cyclotomic)> = Vec::new();
        for (a1, t1, c1) in &self.terms {
            for (a2, t2, c2) in &other.terms {
                let t = t1 + t2;
                if t >= self.t_order {
                    continue;
                }
                let key = (a1 + a2, t);
                let prod = c1.mul_unchecked(c2);
                match terms.binary_search_by(|x| (x.0, x.1).cmp(&key)) {
                    Ok(pos) => {
                        let s = terms[pos].2.add_unchecked(&prod, false);
                        terms[pos].2 = s;
                    }
                    Err(pos) => terms.insert(pos, (key.0, key.1, prod)),
                }
            }
        }
        terms.retain(|x| !x.2.is_zero());
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms: self.terms.iter().map(|(a, t, c)| (*a, *t, c.neg())).collect(),
        }
    }

    /// Multiplication by `z^k` (not `zeta^k`).
    pub fn mul_root(&self, k: i64) -> Self {
        if k.rem_euclid(self.field.m as i64) == 0 {
            return self.clone();
        }
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms: self
                .terms
                .iter()
                .map(|(a, t, c)| (*a, *t, c.mul_root(k)))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Scalar {
                field: self.field.clone(),
                t_order: self.t_order,
                terms: Vec::new(),
            };
        }
        let k = BigInt::from(k);
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms: self
                .terms
                .iter()
                .map(|(a, t, c)| (*a, *t, c.scale_int(&k)))
                .collect(),
        }
    }

    /// Coefficient of `a^a_exp t^t_exp`.
    pub fn coefficient(&self, a_exp: u16, t_exp: u8) -> Cyclotomic {
        self.terms
            .iter()
            .find(|x| x.0 == a_exp && x.1 == t_exp)
            .map(|x| x.2.clone())
            .unwrap_or_else(|| Cyclotomic::zero(&self.field))
    }

    /// The `t^k` component, re-tagged to a ring with the given truncation order.
    pub fn t_component(&self, k: u8, t_order: u8) -> Scalar {
        Scalar {
            field: self.field.clone(),
            t_order,
            terms: self
                .terms
                .iter()
                .filter(|x| x.1 == k)
                .map(|(a, _, c)| (*a, 0, c.clone()))
                .collect(),
        }
    }

    /// The `a^k` component (still a scalar in the same ring, without `a`).
    pub fn a_component(&self, k: u16) -> Scalar {
        Scalar {
            field: self.field.clone(),
            t_order: self.t_order,
            terms: self
                .terms
                .iter()
                .filter(|x| x.0 == k)
                .map(|(_, t, c)| (0, *t, c.clone()))
                .collect(),
        }
    }

    /// Re-tag into a ring with another truncation order, dropping `t^k` for `k >= t_order`.
    pub fn with_t_order(&self, t_order: u8) -> Scalar {
        Scalar {
            field: self.field.clone(),
            t_order,
            terms: self
                .terms
                .iter()
                .filter(|x| x.1 < t_order)
                .cloned()
                .collect(),
        }
    }

    /// Substitutes an exact rational for `a`.
    pub fn specialize_a(&self, value: &BigRational) -> Scalar {
        let ring = self.ring();
        let mut out = ring.zero();
        for (a, t, c) in &self.terms {
            let mut v = Cyclotomic::from_rational(&self.field, &num::pow(value.clone(), *a as usize));
            v = v.mul_unchecked(c);
            out = out.combine(&ring.monomial(0, *t, v), false);
        }
        out
    }

    /// `Some(r)` if the scalar is a plain rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, 0, c)] => c.as_rational(),
            _ => None,
        }
    }

    /// `Some(c)` if the scalar is free of `a` and `t`.
    pub fn as_cyclotomic(&self) -> Option<Cyclotomic> {
        match self.terms.as_slice() {
            [] => Some(Cyclotomic::zero(&self.field)),
            [(0, 0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Inverse, defined only for nonzero elements of `Q(z)`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let c = self.as_cyclotomic().ok_or(ScalarError::NotInvertible)?;
        Ok(self.ring().from_cyclotomic(c.inv()?))
    }

    fn is_single_factor(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].2.num.iter().filter(|n| !n.is_zero()).count() == 1
    }

    /// Renders as a factor: parenthesized unless it is a single signed monomial.
    pub fn fmt_factor(&self) -> String {
        if self.is_single_factor() || self.is_zero() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }

    /// Whether the leading printed sign is negative (used by renderers).
    pub fn is_negative_monomial(&self) -> bool {
        self.is_single_factor() && self.terms[0].2.num.iter().any(|n| n.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (a, t, c)) in self.terms.iter().enumerate() {
            let mut vars = String::new();
            if *a == 1 {
                vars.push_str("a");
            } else if *a > 1 {
                vars.push_str(&format!("a^{a}"));
            }
            if *t > 0 {
                if !vars.is_empty() {
                    vars.push('*');
                }
                if *t == 1 {
                    vars.push('t');
                } else {
                    vars.push_str(&format!("t^{t}"));
                }
            }
            let nonzero = c.num.iter().filter(|n| !n.is_zero()).count();
            let text = c.to_string();
            let (neg, body) = if nonzero == 1 && text.starts_with('-') {
                (true, text[1..].to_string())
            } else {
                (false, text)
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if vars.is_empty() {
                write!(f, "{body}")?;
            } else if nonzero == 1 && body == "1" {
                write!(f, "{vars}")?;
            } else if nonzero == 1 {
                write!(f, "{body}*{vars}")?;
            } else {
                write!(f, "({body})*{vars}")?;
            }
        }
        Ok(())
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on mixed session parameters; use the `try_*` variant to handle them.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs).expect("scalar session mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs).expect("scalar session mismatch")
            }
        }
    };
}
scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |m| {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_string().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(2), vec![1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(16), 8);
    }

    #[test]
    fn root_of_unity_order() {
        for d in 2..=8u32 {
            let ring = ScalarRing::for_dihedral(d, 1);
            let z = Cyclotomic::root(ring.field(), 1);
            let mut p = Cyclotomic::one(ring.field());
            for _ in 0..2 * d {
                p = p.try_mul(&z).unwrap();
            }
            assert!(p.is_one(), "z^(2d) = 1 for d = {d}");
            // sum of the d-th roots of unity zeta^i vanishes
            let mut s = Cyclotomic::zero(ring.field());
            for i in 0..d as i64 {
                s = s.try_add(&ring.root_power(i, false)).unwrap();
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn z8_square_squared_is_minus_one() {
        let ring = ScalarRing::new(8, 1);
        let z2 = Cyclotomic::root(ring.field(), 2);
        let p = z2.try_mul(&z2).unwrap();
        assert_eq!(p, Cyclotomic::from_integer(ring.field(), BigInt::from(-1)));
    }

    #[test]
    fn root_power_examples() {
        let d = 5;
        let ring = ScalarRing::for_dihedral(d, 1);
        assert!(ring.root_power(0, false).is_one());
        assert!(ring.root_power(d as i64, false).is_one());
        let h = ring.root_power(1, true);
        assert_eq!(h.try_mul(&h).unwrap(), ring.root_power(1, false));
    }

    #[test]
    fn phi_at_generator_vanishes() {
        for m in [3u32, 4, 5, 8, 10, 12, 14, 16] {
            let f = CycloField::new(m);
            let mut acc = Cyclotomic::zero(&f);
            for (k, c) in f.modulus().iter().enumerate() {
                acc = acc
                    .try_add(&Cyclotomic::root(&f, k as i64).scale_int(c))
                    .unwrap();
            }
            assert!(acc.is_zero(), "Phi_{m}(z) = 0");
        }
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = CycloField::new(10);
        assert_eq!(Cyclotomic::zero(&f).inv(), Err(ScalarError::DivisionByZero));
        let ring = ScalarRing::new(10, 2);
        assert_eq!(ring.a().inv(), Err(ScalarError::NotInvertible));
    }

    #[test]
    fn scalar_examples() {
        let ring = ScalarRing::for_dihedral(4, 2);
        let t = ring.t();
        let a = ring.a();
        assert!((&t * &t).is_zero());
        let lhs = &(&a + &t) * &(&a - &t);
        assert_eq!(lhs, &a * &a);
        assert_eq!((&a * &a).to_string(), "a^2");
        assert_eq!(ring.from_rational(&q(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn mixed_sessions_error() {
        let r1 = ScalarRing::new(8, 2);
        let r2 = ScalarRing::new(8, 1);
        let r3 = ScalarRing::new(10, 2);
        assert!(matches!(r1.one().try_add(&r2.one()), Err(ScalarError::Mismatch(_))));
        assert!(matches!(r1.one().try_mul(&r3.one()), Err(ScalarError::Mismatch(_))));
    }

    #[test]
    fn rendering() {
        let f = CycloField::new(12);
        let c = Cyclotomic::from_coeffs(&f, &[q(1, 2), q(1, 1), q(0, 1), q(-3, 1)]);
        assert_eq!(c.to_string(), "1/2 + z - 3*z^3");
        let ring = ScalarRing::new(12, 2);
        let s = &ring.from_cyclotomic(c) * &ring.a();
        assert_eq!(s.to_string(), "(1/2 + z - 3*z^3)*a");
        assert_eq!((-&ring.t()).to_string(), "-t");
        assert_eq!(parse_rational("-7/21").unwrap(), q(-1, 3));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    fn arb_cyclo(m: u32) -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-20i64..20, 1i64..6), euler_phi(m))
    }

    proptest! {
        #[test]
        fn inverse_is_exact(v in arb_cyclo(12)) {
            let f = CycloField::new(12);
            let c = Cyclotomic::from_coeffs(&f, &v.iter().map(|(n, d)| q(*n, *d)).collect::<Vec<_>>());
            prop_assume!(!c.is_zero());
            let inv = c.inv().unwrap();
            prop_assert!(c.try_mul(&inv).unwrap().is_one());
        }

        #[test]
        fn t_order_one_is_setting_t_to_zero(
            u in prop::collection::vec((0u16..3, 0u8..2, -5i64..5), 0..4),
            v in prop::collection::vec((0u16..3, 0u8..2, -5i64..5), 0..4),
        ) {
            let r2 = ScalarRing::new(10, 2);
            let r1 = ScalarRing::new(10, 1);
            let build = |ring: &ScalarRing, terms: &[(u16, u8, i64)]| {
                terms.iter().fold(ring.zero(), |acc, (a, t, c)| {
                    acc + ring.monomial(*a, *t, Cyclotomic::root(ring.field(), *c).scale_int(&BigInt::from(*c)))
                })
            };
            let p2 = build(&r2, &u) * build(&r2, &v);
            let p1 = build(&r1, &u) * build(&r1, &v);
            prop_assert_eq!(p2.with_t_order(1), p1);
        }

        #[test]
        fn specialization_is_a_homomorphism(
            u in prop::collection::vec((0u16..3, -5i64..5), 0..4),
            v in prop::collection::vec((0u16..3, -5i64..5), 0..4),
            num in -4i64..4, den in 1i64..4,
        ) {
            let ring = ScalarRing::new(8, 2);
            let val = q(num, den);
            let build = |terms: &[(u16, i64)]| {
                terms.iter().fold(ring.zero(), |acc, (a, c)| {
                    acc + ring.monomial(*a, 0, Cyclotomic::root(ring.field(), *c))
                })
            };
            let (x, y) = (build(&u), build(&v));
            prop_assert_eq!((&x * &y).specialize_a(&val), x.specialize_a(&val) * y.specialize_a(&val));
            prop_assert_eq!((&x + &y).specialize_a(&val), x.specialize_a(&val) + y.specialize_a(&val));
        }
    }
}
