//! Sparse multivariate polynomials over `Q` in the coordinates
//! `(q, Q, e, a_0, …, a_d, a)` of the ambient space of `Z_c`, and the relation
//! systems cutting out `Z_c` and its variants.

use std::collections::BTreeMap;
use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::psi::{psi, PsiPoly};
use crate::scalar::fmt_rational;

/// Variable layout for a given `d`: `q, Q, e, a_0..a_d, a` (the parameter last).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub d: u32,
}

impl Layout {
    pub const Q: usize = 0;
    pub const BIG_Q: usize = 1;
    pub const E: usize = 2;

    pub fn new(d: u32) -> Self {
        Layout { d }
    }

    pub fn a_index(&self, i: u32) -> usize {
        assert!(i <= self.d);
        3 + i as usize
    }

    /// Index of the parameter `a`.
    pub fn param(&self) -> usize {
        self.d as usize + 4
    }

    /// Number of coordinates, excluding the parameter.
    pub fn dim(&self) -> usize {
        self.d as usize + 4
    }

    pub fn nvars(&self) -> usize {
        self.d as usize + 5
    }

    pub fn names(&self) -> Vec<String> {
        let mut v = vec!["q".to_string(), "Q".into(), "e".into()];
        v.extend((0..=self.d).map(|i| format!("a{i}")));
        v.push("a".into());
        v
    }
}

/// Polynomial with rational coefficients; exponent vectors have fixed length.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self.render(&[]))
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, &BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u16]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Vec<u16>, c: &BigRational) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> MPoly {
        self.scale(&BigRational::from_integer(k.into()))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Evaluates at a full assignment.
    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars);
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num::pow(v.clone(), k as usize);
                }
            }
            acc + t
        })
    }

    /// Substitutes a value for one variable (the variable stays, with exponent 0).
    pub fn substitute(&self, var: usize, value: &BigRational) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut n = e.clone();
            let k = std::mem::take(&mut n[var]);
            out.add_term(n, &(c * num::pow(value.clone(), k as usize)));
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut n = e.clone();
            n[var] -= 1;
            out.add_term(n, &(c * BigRational::from_integer(e[var].into())));
        }
        out
    }

    /// Degree in the variables selected by `mask`.
    fn degree_in(e: &[u16], mask: &[bool]) -> u32 {
        e.iter().zip(mask).filter(|(_, m)| **m).map(|(k, _)| *k as u32).sum()
    }

    /// Component of degree `k` in the selected variables.
    pub fn homogeneous_component(&self, k: u32, mask: &[bool]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if Self::degree_in(e, mask) == k {
                out.add_term(e.clone(), c);
            }
        }
        out
    }

    /// Lowest degree in the selected variables, `None` for zero.
    pub fn min_degree(&self, mask: &[bool]) -> Option<u32> {
        self.terms.keys().map(|e| Self::degree_in(e, mask)).min()
    }

    pub fn max_degree(&self, mask: &[bool]) -> Option<u32> {
        self.terms.keys().map(|e| Self::degree_in(e, mask)).max()
    }

    /// `Some(k)` if every monomial is divisible by `var^k` and `k` is maximal.
    pub fn var_valuation(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).min()
    }

    /// Divides by `var^k` (exact only if `k ≤ var_valuation`).
    pub fn divide_var_power(&self, var: usize, k: u16) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut n = e.clone();
            assert!(n[var] >= k, "monomial not divisible");
            n[var] -= k;
            out.add_term(n, c);
        }
        out
    }

    /// `true` if the variable does not occur.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e[var] == 0)
    }

    /// Canonical text with the given variable names (generic `v0, v1, …` if
    /// too few names), highest-degree-first lexicographic.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > 0)
                .map(|(i, p)| {
                    let n = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                    if *p == 1 {
                        n
                    } else {
                        format!("{n}^{p}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = fmt_rational(&c.abs());
            let body = vars.join("*");
            match (mag.as_str(), body.is_empty()) {
                (m, true) => out.push_str(m),
                ("1", false) => out.push_str(&body),
                (m, false) => out.push_str(&format!("{m}*{body}")),
            }
        }
        out
    }

    /// Substitutes polynomials for the three variables of a [`PsiPoly`].
    pub fn from_psi(p: &PsiPoly, vars: [&MPoly; 3]) -> MPoly {
        let n = vars[0].nvars;
        p.evaluate(vars, MPoly::one(n), MPoly::mul, MPoly::add, |u, c| u.scale(c))
            .unwrap_or_else(|| MPoly::zero(n))
    }
}

/// A named equation `poly = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub poly: MPoly,
}

/// The equations `e a_i = q a_{i+1} + Q a_{i−1}` (`1 ≤ i ≤ d−1`) and
/// `a_{i−1}a_{j+1} − a_i a_j = P(e² − 4qQ) q^{d−j−1} Q^{i−1} Ψ_{j−i}(e,q,Q)`
/// (`1 ≤ i ≤ j ≤ d−1`), with `P` given by its coefficients in increasing degree.
pub fn relation_system(d: u32, p_coeffs: &[MPoly]) -> Vec<Relation> {
    assert!(d >= 2);
    let lay = Layout::new(d);
    let n = lay.nvars();
    let v = |i| MPoly::var(n, i);
    let (q, bq, e) = (v(Layout::Q), v(Layout::BIG_Q), v(Layout::E));
    let a = |i: u32| v(lay.a_index(i));
    let mut out = Vec::new();
    for i in 1..d {
        let poly = e.mul(&a(i)).sub(&q.mul(&a(i + 1))).sub(&bq.mul(&a(i - 1)));
        out.push(Relation {
            id: format!("Z_{i}"),
            poly,
        });
    }
    let t = e.mul(&e).sub(&q.mul(&bq).scale_int(4));
    let p_of_t = p_coeffs
        .iter()
        .enumerate()
        .fold(MPoly::zero(n), |acc, (k, c)| acc.add(&c.mul(&t.pow(k as u32))));
    for i in 1..d {
        for j in i..d {
            let lhs = a(i - 1).mul(&a(j + 1)).sub(&a(i).mul(&a(j)));
            let rhs = p_of_t
                .mul(&q.pow(d - j - 1))
                .mul(&bq.pow(i - 1))
                .mul(&MPoly::from_psi(&psi((j - i) as usize), [&e, &q, &bq]));
            out.push(Relation {
                id: format!("Z_{i},{j}"),
                poly: lhs.sub(&rhs),
            });
        }
    }
    out
}

/// The Calogero–Moser system: `P(T) = T − d² a²` with `a` symbolic.
pub fn calogero_moser_system(d: u32) -> Vec<Relation> {
    let lay = Layout::new(d);
    let n = lay.nvars();
    let a = MPoly::var(n, lay.param());
    let c0 = a.mul(&a).scale_int(-((d * d) as i64));
    relation_system(d, &[c0, MPoly::one(n)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_and_rendering() {
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let p = x.add(&y).pow(2);
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.render(&names), "x^2 + 2*x*y + y^2");
        assert_eq!(p.evaluate(&[q(1), q(2), q(0)]), q(9));
        assert_eq!(p.derivative(0), x.add(&y).scale_int(2));
        assert_eq!(p.substitute(1, &q(0)), x.mul(&x));
        assert_eq!(p.min_degree(&[true, false, false]), Some(0));
        assert_eq!(x.mul(&y).var_valuation(0), Some(1));
    }

    #[test]
    fn relation_counts() {
        for (d, count) in [(3, 2 + 3), (4, 3 + 6), (6, 5 + 15)] {
            assert_eq!(calogero_moser_system(d).len(), count);
        }
    }

    #[test]
    fn origin_lies_on_every_system() {
        // at d = 2 the relation Z_{1,1} has constant term −4a²
        for d in 3..=6 {
            let lay = Layout::new(d);
            for r in calogero_moser_system(d) {
                let mut pt = vec![q(0); lay.nvars()];
                pt[lay.param()] = q(1);
                assert!(r.poly.evaluate(&pt).is_zero(), "{} at d={d}", r.id);
            }
        }
    }
}
