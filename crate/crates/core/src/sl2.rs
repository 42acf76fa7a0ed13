//! The `sl_2` action on the generators of `Z_c`, the free model `Sym(E)` with
//! its `⋆` product, the evaluation maps `ε_{m,n}`, the correspondence `ρ_d`,
//! and the moment map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::cherednik::{Algebra, HElement};
use crate::cuspidal::VarietyPoint;
use crate::linalg::Matrix;
use crate::mpoly::Layout;
use crate::psi::psi;
use crate::report::{Check, CheckReport, Mutation, VerifyOptions};
use crate::scalar::fmt_rational;
use crate::verify::{quadratic_indices, Generators};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("expected a ⋆-homogeneous element of degree {m} over symbols of degree {n}")]
    DegreeMismatch { m: u32, n: u32 },
    #[error("element is not in the span of the kernel basis")]
    NotInKernel,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Polynomials in the basis `t, u` of the standard representation `V_2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct V2Poly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl V2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c t^i u^j`
    pub fn monomial(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), &c);
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, e: (u32, u32), c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &V2Poly) -> V2Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> V2Poly {
        let mut out = V2Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, &(c * k));
        }
        out
    }

    pub fn mul(&self, o: &V2Poly) -> V2Poly {
        let mut out = V2Poly::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), k) in &o.terms {
                out.add_term((a + x, b + y), &(c * k));
            }
        }
        out
    }

    /// `∂/∂t` (`var = 0`) or `∂/∂u` (`var = 1`).
    pub fn derivative(&self, var: usize) -> V2Poly {
        let mut out = V2Poly::zero();
        for (&(i, j), c) in &self.terms {
            let (p, e) = if var == 0 { (i, (i.wrapping_sub(1), j)) } else { (j, (i, j.wrapping_sub(1))) };
            if p > 0 {
                out.add_term(e, &(c * rat(p as i64)));
            }
        }
        out
    }
}

impl fmt::Display for V2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut vars = Vec::new();
            for (name, p) in [("t", i), ("u", j)] {
                match p {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{p}")),
                }
            }
            let mag = fmt_rational(&c.abs());
            match (mag.as_str(), vars.is_empty()) {
                (m, true) => f.write_str(m)?,
                ("1", false) => f.write_str(&vars.join("*"))?,
                (m, false) => write!(f, "{m}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Elements of `Sym(E)`, `E = ⟨q, Q, eu, a_0, …, a_d⟩`, with the free `⋆` product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    d: u32,
    terms: BTreeMap<Vec<u16>, BigRational>,
}

/// Generator symbols of `E`, indexed as `q, Q, eu, a_0, …, a_d`.
pub fn symbol_names(d: u32) -> Vec<String> {
    let mut v = vec!["q".to_string(), "Q".into(), "eu".into()];
    v.extend((0..=d).map(|i| format!("a{i}")));
    v
}

impl SymElement {
    pub fn zero(d: u32) -> Self {
        SymElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: u32) -> Self {
        let mut s = Self::zero(d);
        s.add_term(vec![0; Layout::new(d).dim()], &BigRational::one());
        s
    }

    pub fn symbol(d: u32, k: usize) -> Self {
        let mut e = vec![0; Layout::new(d).dim()];
        e[k] = 1;
        let mut s = Self::zero(d);
        s.add_term(e, &BigRational::one());
        s
    }

    pub fn q(d: u32) -> Self {
        Self::symbol(d, Layout::Q)
    }

    pub fn big_q(d: u32) -> Self {
        Self::symbol(d, Layout::BIG_Q)
    }

    pub fn eu(d: u32) -> Self {
        Self::symbol(d, Layout::E)
    }

    pub fn a(d: u32, i: u32) -> Self {
        Self::symbol(d, Layout::new(d).a_index(i))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u16>, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &SymElement) -> SymElement {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &SymElement) -> SymElement {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> SymElement {
        let mut out = SymElement::zero(self.d);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * k));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> SymElement {
        self.scale(&rat(k))
    }

    pub fn star(&self, o: &SymElement) -> SymElement {
        let mut out = SymElement::zero(self.d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), &(c1 * c2));
            }
        }
        out
    }

    pub fn star_pow(&self, k: u32) -> SymElement {
        (0..k).fold(SymElement::one(self.d), |acc, _| acc.star(self))
    }

    /// `Some(m)` if every monomial has `⋆`-degree `m`.
    pub fn star_degree(&self) -> Option<u32> {
        let degs: BTreeSet<u32> = self.terms.keys().map(|e| e.iter().map(|&k| k as u32).sum()).collect();
        match degs.len() {
            1 => degs.into_iter().next(),
            _ => None,
        }
    }

    /// Evaluates `Σ c_k ⋅ images[k]` through arbitrary ring operations.
    pub fn evaluate<R: Clone>(
        &self,
        images: &[R],
        one: R,
        mul: impl Fn(&R, &R) -> R,
        add: impl Fn(&R, &R) -> R,
        scale: impl Fn(&R, &BigRational) -> R,
        zero: R,
    ) -> R {
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = one.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    t = mul(&t, &images[k]);
                }
            }
            acc = add(&acc, &scale(&t, c));
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| json!({ "monomial": self.render_monomial(e), "coef": fmt_rational(c) }))
            .collect();
        json!({ "d": self.d, "terms": terms })
    }

    fn render_monomial(&self, e: &[u16]) -> String {
        let names = symbol_names(self.d);
        let parts: Vec<&str> = e
            .iter()
            .enumerate()
            .flat_map(|(k, &p)| std::iter::repeat_n(names[k].as_str(), p as usize))
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("\u{22c6}")
        }
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = fmt_rational(&c.abs());
            let mono = self.render_monomial(e);
            match (mag.as_str(), mono.as_str()) {
                (m, "1") => f.write_str(m)?,
                ("1", mo) => f.write_str(mo)?,
                (m, mo) => write!(f, "{m}*{mo}")?,
            }
        }
        Ok(())
    }
}

/// The three basis elements of `sl_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2 {
    E,
    H,
    F,
}

impl Sl2 {
    pub const ALL: [Sl2; 3] = [Sl2::E, Sl2::H, Sl2::F];

    pub fn name(&self) -> &'static str {
        match self {
            Sl2::E => "e",
            Sl2::H => "h",
            Sl2::F => "f",
        }
    }
}

/// `ξ • g` on a generator: `e • φ = {Q, φ}`, `h • φ = {eu, φ}`, `f • φ = {−q, φ}`.
pub fn sl2_on_symbol(d: u32, xi: Sl2, k: usize) -> SymElement {
    let lay = Layout::new(d);
    let di = d as i64;
    match (xi, k) {
        (Sl2::E, Layout::Q) => SymElement::eu(d).scale_int(-1),
        (Sl2::E, Layout::BIG_Q) => SymElement::zero(d),
        (Sl2::E, Layout::E) => SymElement::big_q(d).scale_int(-2),
        (Sl2::H, Layout::Q) => SymElement::q(d).scale_int(-2),
        (Sl2::H, Layout::BIG_Q) => SymElement::big_q(d).scale_int(2),
        (Sl2::H, Layout::E) => SymElement::zero(d),
        (Sl2::F, Layout::Q) => SymElement::zero(d),
        (Sl2::F, Layout::BIG_Q) => SymElement::eu(d).scale_int(-1),
        (Sl2::F, Layout::E) => SymElement::q(d).scale_int(-2),
        (xi, k) => {
            let j = (k - lay.a_index(0)) as i64;
            match xi {
                Sl2::E if j < di => SymElement::a(d, j as u32 + 1).scale_int(j - di),
                Sl2::E => SymElement::zero(d),
                Sl2::H => SymElement::a(d, j as u32).scale_int(2 * j - di),
                Sl2::F if j > 0 => SymElement::a(d, j as u32 - 1).scale_int(-j),
                Sl2::F => SymElement::zero(d),
            }
        }
    }
}

/// The action extended to `Sym(E)` as a derivation of `⋆`.
pub fn sl2_act(xi: Sl2, z: &SymElement) -> SymElement {
    let d = z.d;
    let mut out = SymElement::zero(d);
    for (e, c) in &z.terms {
        for (k, &p) in e.iter().enumerate() {
            if p == 0 {
                continue;
            }
            let mut rest = e.clone();
            rest[k] -= 1;
            let mut m = SymElement::zero(d);
            m.add_term(rest, &(c * rat(p as i64)));
            out = out.add(&m.star(&sl2_on_symbol(d, xi, k)));
        }
    }
    out
}

/// `σ^♯` and `σ_d` read backwards: the polynomial in `t, u` of each symbol.
pub fn symbol_image(d: u32, k: usize) -> V2Poly {
    let half = BigRational::new(1.into(), 2.into());
    match k {
        Layout::Q => V2Poly::monomial(2, 0, half),
        Layout::BIG_Q => V2Poly::monomial(0, 2, half),
        Layout::E => V2Poly::monomial(1, 1, BigRational::one()),
        _ => {
            let i = (k - Layout::new(d).a_index(0)) as u32;
            V2Poly::monomial(d - i, i, BigRational::one())
        }
    }
}

fn symbol_degree(d: u32, k: usize) -> u32 {
    if k < 3 {
        2
    } else {
        d
    }
}

/// Multiplies out every `⋆` monomial in `Sym(V_2)`.
pub fn evaluate_product(z: &SymElement) -> V2Poly {
    let images: Vec<V2Poly> = (0..Layout::new(z.d).dim()).map(|k| symbol_image(z.d, k)).collect();
    z.evaluate(&images, V2Poly::one(), V2Poly::mul, V2Poly::add, V2Poly::scale, V2Poly::zero())
}

/// `ε_{m,n}`: `z` must be a sum of `⋆`-products of `m` symbols of degree `n`.
pub fn epsilon(m: u32, n: u32, z: &SymElement) -> Result<V2Poly, Sl2Error> {
    let ok = z.terms.keys().all(|e| {
        e.iter().map(|&p| p as u32).sum::<u32>() == m
            && e.iter().enumerate().all(|(k, &p)| p == 0 || symbol_degree(z.d, k) == n)
    });
    if !ok {
        return Err(Sl2Error::DegreeMismatch { m, n });
    }
    Ok(evaluate_product(z))
}

/// `a_{i−1} ⋆ a_{j+1} − a_i ⋆ a_j`.
pub fn kernel_element(d: u32, i: u32, j: u32) -> SymElement {
    let a = |k| SymElement::a(d, k);
    a(i - 1).star(&a(j + 1)).sub(&a(i).star(&a(j)))
}

/// The family `a_{i−1}⋆a_{j+1} − a_i⋆a_j`, `1 ≤ i ≤ j ≤ d−1`, in that order.
pub fn kernel_basis_2d(d: u32) -> Vec<SymElement> {
    quadratic_indices(d).into_iter().map(|(i, j)| kernel_element(d, i, j)).collect()
}

/// All `⋆` monomials of degree `m` in the given symbols.
fn star_monomials(d: u32, symbols: &[usize], m: u32) -> Vec<SymElement> {
    fn go(d: u32, symbols: &[usize], m: u32, acc: &SymElement, out: &mut Vec<SymElement>) {
        match symbols.split_first() {
            None => {
                if m == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&k, rest)) => {
                for p in 0..=m {
                    let next = acc.star(&SymElement::symbol(d, k).star_pow(p));
                    go(d, rest, m - p, &next, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(d, symbols, m, &SymElement::one(d), &mut out);
    out
}

/// Coordinates of each element over a common monomial basis.
fn coordinate_matrix(elems: &[SymElement]) -> (Matrix, Vec<Vec<u16>>) {
    let monos: BTreeSet<Vec<u16>> = elems.iter().flat_map(|z| z.terms.keys().cloned()).collect();
    let monos: Vec<Vec<u16>> = monos.into_iter().collect();
    let cols: Vec<Vec<BigRational>> = elems
        .iter()
        .map(|z| monos.iter().map(|m| z.terms.get(m).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect();
    let m = if cols.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_columns(&cols) };
    (m, monos)
}

fn v2_coordinate_matrix(images: &[V2Poly]) -> Matrix {
    let monos: BTreeSet<(u32, u32)> = images.iter().flat_map(|p| p.terms.keys().copied()).collect();
    let cols: Vec<Vec<BigRational>> = images
        .iter()
        .map(|p| monos.iter().map(|&(i, j)| p.coefficient(i, j)).collect())
        .collect();
    Matrix::from_columns(&cols)
}

pub fn rank(elems: &[SymElement]) -> usize {
    coordinate_matrix(elems).0.rank()
}

/// `dim Ker(ε_{2,d})`, computed from the evaluation matrix on all monomials.
pub fn epsilon_kernel_dim(d: u32) -> usize {
    let lay = Layout::new(d);
    let symbols: Vec<usize> = (0..=d).map(|i| lay.a_index(i)).collect();
    let monos = star_monomials(d, &symbols, 2);
    let images: Vec<V2Poly> = monos.iter().map(|z| epsilon(2, d, z).expect("degree 2 in a_i")).collect();
    monos.len() - v2_coordinate_matrix(&images).rank()
}

/// Coefficients of `z` in the kernel basis.
pub fn kernel_coordinates(d: u32, z: &SymElement) -> Result<Vec<BigRational>, Sl2Error> {
    let basis = kernel_basis_2d(d);
    let mut all = basis.clone();
    all.push(z.clone());
    let (m, monos) = coordinate_matrix(&all);
    let rhs: Vec<BigRational> = monos.iter().map(|e| z.terms.get(e).cloned().unwrap_or_else(BigRational::zero)).collect();
    let cols: Vec<Vec<BigRational>> = (0..basis.len())
        .map(|c| (0..m.rows()).map(|r| m[(r, c)].clone()).collect())
        .collect();
    if cols.is_empty() {
        return if z.is_zero() { Ok(vec![]) } else { Err(Sl2Error::NotInKernel) };
    }
    Matrix::from_columns(&cols).solve(&rhs).ok_or(Sl2Error::NotInKernel)
}

/// `q^{⋆d−j−1} ⋆ Q^{⋆i−1} ⋆ Ψ^⋆_{j−i}(eu, q, Q)`.
pub fn rho_basis_image(d: u32, i: u32, j: u32) -> SymElement {
    let p = psi((j - i) as usize);
    let (eu, q, bq) = (SymElement::eu(d), SymElement::q(d), SymElement::big_q(d));
    let psi_star = p
        .evaluate([&eu, &q, &bq], SymElement::one(d), SymElement::star, SymElement::add, SymElement::scale)
        .unwrap_or_else(|| SymElement::zero(d));
    q.star_pow(d - j - 1).star(&bq.star_pow(i - 1)).star(&psi_star)
}

/// `ρ_d` extended linearly; `mutate` doubles the image of `b_{1,1}`.
pub fn rho_with(d: u32, z: &SymElement, mutate: bool) -> Result<SymElement, Sl2Error> {
    let coords = kernel_coordinates(d, z)?;
    let mut out = SymElement::zero(d);
    for (c, (i, j)) in coords.iter().zip(quadratic_indices(d)) {
        let mut img = rho_basis_image(d, i, j);
        if mutate && (i, j) == (1, 1) {
            img = img.scale_int(2);
        }
        out = out.add(&img.scale(c));
    }
    Ok(out)
}

pub fn rho(d: u32, z: &SymElement) -> Result<SymElement, Sl2Error> {
    rho_with(d, z, false)
}

/// `ρ(ξ • b) = ξ • ρ(b)` for every basis element and `ξ ∈ {e, h, f}`, plus
/// bijectivity by rank.
pub fn verify_rho_equivariance(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("sl2-rho", d);
    let mutate = opts.is(Mutation::RhoScale);
    for (i, j) in quadratic_indices(d) {
        let b = kernel_element(d, i, j);
        for xi in Sl2::ALL {
            let id = format!("sl2/rho/{}/{i},{j}", xi.name());
            let lhs = rho_with(d, &sl2_act(xi, &b), mutate);
            let rhs = rho_with(d, &b, mutate).map(|r| sl2_act(xi, &r));
            rep.push(match (lhs, rhs) {
                (Ok(l), Ok(r)) => Check::compare(id, &l, &r, ToString::to_string, || l.sub(&r).to_string()),
                (Err(e), _) | (_, Err(e)) => Check::from_bool(id, false, || e.to_string()),
            });
        }
    }
    let images: Vec<SymElement> = quadratic_indices(d).into_iter().map(|(i, j)| rho_basis_image(d, i, j)).collect();
    let target = if d >= 2 { star_monomials(d, &[0, 1, 2], d - 2).len() } else { 0 };
    let r = rank(&images);
    let n = (d * (d - 1) / 2) as usize;
    rep.push(Check::from_bool("sl2/rho/bijective", r == n && target == n, || {
        format!("rank {r}, dim Sym^(d-2)(E#) = {target}, expected {n}")
    }));
    rep
}

/// `Q⋆a_{i−1} − eu⋆a_i + q⋆a_{i+1}`.
pub fn zi_element(d: u32, i: u32) -> SymElement {
    let a = |k| SymElement::a(d, k);
    SymElement::big_q(d)
        .star(&a(i - 1))
        .sub(&SymElement::eu(d).star(&a(i)))
        .add(&SymElement::q(d).star(&a(i + 1)))
}

/// `D^{(2)}(φ ⋆ ψ) = D(φ) ψ` on `E^♯ ⋆ E_d`, for `D = ∂/∂t` or `∂/∂u`.
pub fn d2(var: usize, z: &SymElement) -> V2Poly {
    let mut out = V2Poly::zero();
    for (e, c) in &z.terms {
        let sharp = (0..3).find(|&k| e[k] > 0);
        let low = (3..e.len()).find(|&k| e[k] > 0);
        if let (Some(s), Some(l)) = (sharp, low) {
            let t = symbol_image(z.d, s).derivative(var).mul(&symbol_image(z.d, l));
            out = out.add(&t.scale(c));
        }
    }
    out
}

/// `μ_{2,d}`, `∂_t^{(2)}` and `∂_u^{(2)}` annihilate each `Q⋆a_{i−1} − eu⋆a_i +
/// q⋆a_{i+1}`, and their common kernel on `E^♯ ⊗ E_d` has dimension `d − 1`.
pub fn verify_zi_intrinsic(d: u32) -> CheckReport {
    let mut rep = CheckReport::new("sl2-zi", d);
    let zis: Vec<SymElement> = (1..d).map(|i| zi_element(d, i)).collect();
    for (i, z) in (1..d).zip(&zis) {
        let mu = evaluate_product(z);
        rep.push(Check::from_bool(format!("sl2/zi/{i}/mu"), mu.is_zero(), || mu.to_string()));
        for (var, name) in [(0, "dt"), (1, "du")] {
            let v = d2(var, z);
            rep.push(Check::from_bool(format!("sl2/zi/{i}/{name}"), v.is_zero(), || v.to_string()));
        }
    }
    // the three maps stacked, on the basis (sharp symbol) ⋆ a_k
    let lay = Layout::new(d);
    let basis: Vec<SymElement> = (0..3)
        .flat_map(|s| (0..=d).map(move |k| (s, k)))
        .map(|(s, k)| SymElement::symbol(d, s).star(&SymElement::symbol(d, lay.a_index(k))))
        .collect();
    let images: Vec<Vec<V2Poly>> = basis.iter().map(|b| vec![evaluate_product(b), d2(0, b), d2(1, b)]).collect();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for part in 0..3 {
        let monos: BTreeSet<(u32, u32)> = images.iter().flat_map(|im| im[part].terms.keys().copied()).collect();
        for &(i, j) in &monos {
            rows.push(images.iter().map(|im| im[part].coefficient(i, j)).collect());
        }
    }
    let kernel = Matrix::from_rows(rows).kernel().len();
    let span = rank(&zis);
    rep.push(Check::from_bool("sl2/zi/intersection-dim", kernel == d as usize - 1 && span == kernel, || {
        format!("kernel dimension {kernel}, span rank {span}, expected {}", d - 1)
    }));
    rep
}

/// `M(q, Q, e) = [[e, Q], [−q, −e]]`.
pub fn moment(pt: &VarietyPoint) -> [[BigRational; 2]; 2] {
    let c = &pt.coords;
    [
        [c[Layout::E].clone(), c[Layout::BIG_Q].clone()],
        [-c[Layout::Q].clone(), -c[Layout::E].clone()],
    ]
}

/// Weight multiset of `Sym^m(Sym^n V_2)`: counts of `Σ(2k_r − n)` over
/// multisets `{k_1, …, k_m} ⊂ {0, …, n}`.
pub fn sym_sym_weights(m: u32, n: u32) -> BTreeMap<i64, u64> {
    // dp over the values k = 0..=n, tracking (count chosen, weight)
    let mut dp: BTreeMap<(u32, i64), u64> = BTreeMap::from([((0, 0), 1)]);
    for k in 0..=n as i64 {
        let w = 2 * k - n as i64;
        let mut next = BTreeMap::new();
        for (&(c, s), &ways) in &dp {
            for extra in 0..=(m - c) {
                *next.entry((c + extra, s + w * extra as i64)).or_insert(0) += ways;
            }
        }
        dp = next;
    }
    dp.into_iter().filter(|((c, _), _)| *c == m).map(|((_, s), w)| (s, w)).collect()
}

/// `dim Sym^m(Sym^n V_2)`.
pub fn sym_sym_dim(m: u32, n: u32) -> u64 {
    sym_sym_weights(m, n).values().sum()
}

/// Equal dimensions (and characters) of `Sym^m(Sym^n V_2)` and `Sym^n(Sym^m V_2)`.
pub fn hermite_checks(max: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for m in 1..=max {
        for n in m..=max {
            let (a, b) = (sym_sym_weights(m, n), sym_sym_weights(n, m));
            let (da, db) = (sym_sym_dim(m, n), sym_sym_dim(n, m));
            out.push(Check::from_bool(format!("sl2/hermite/{m},{n}"), a == b && da == db, || {
                format!("dims {da} vs {db}")
            }));
        }
    }
    out
}

/// The generators of `Z_c` as elements of `H_c`, in symbol order.
fn h_symbols(alg: &Algebra) -> Vec<HElement> {
    let g = Generators::new(alg);
    let mut v = vec![g.q, g.big_q, g.eu];
    v.extend(g.a);
    v
}

fn linear_to_h(z: &SymElement, gens: &[HElement], alg: &Algebra) -> HElement {
    let r = alg.ring().clone();
    z.evaluate(gens, alg.one(), |a, b| alg.mul(a, b), HElement::add, |h, c| h.scale(&r.from_rational(c)), alg.zero())
}

/// All checks of the `sl_2` layer at one `d`.
pub fn sl2_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("sl2", d);
    let basis = kernel_basis_2d(d);
    let n = (d * (d - 1) / 2) as usize;
    let r = rank(&basis);
    let kd = epsilon_kernel_dim(d);
    rep.push(Check::from_bool("sl2/kernel/rank", r == n && kd == n, || {
        format!("rank {r}, dim Ker = {kd}, expected {n}")
    }));
    let nonzero: Vec<String> = basis
        .iter()
        .filter_map(|b| epsilon(2, d, b).ok().filter(|p| !p.is_zero()).map(|_| b.to_string()))
        .collect();
    rep.push(Check::from_bool("sl2/kernel/epsilon", nonzero.is_empty(), || nonzero.join("; ")));

    let lay = Layout::new(d);
    let syms: Vec<SymElement> = (0..lay.dim()).map(|k| SymElement::symbol(d, k)).collect();
    let act = |xi, z: &SymElement| sl2_act(xi, z);
    let mut bad = Vec::new();
    for (k, s) in syms.iter().enumerate() {
        let rel = |x, y, want: SymElement| {
            let c = act(x, &act(y, s)).sub(&act(y, &act(x, s)));
            (c == want).then_some(()).ok_or(k)
        };
        for res in [
            rel(Sl2::H, Sl2::E, act(Sl2::E, s).scale_int(2)),
            rel(Sl2::H, Sl2::F, act(Sl2::F, s).scale_int(-2)),
            rel(Sl2::E, Sl2::F, act(Sl2::H, s)),
        ] {
            if let Err(k) = res {
                bad.push(symbol_names(d)[k].clone());
            }
        }
    }
    rep.push(Check::from_bool("sl2/relations", bad.is_empty(), || format!("fails on {}", bad.join(", "))));

    let alg = Algebra::new(d, 1);
    let gens = h_symbols(&alg);
    let actors = [
        (Sl2::E, gens[Layout::BIG_Q].clone()),
        (Sl2::H, gens[Layout::E].clone()),
        (Sl2::F, gens[Layout::Q].scale_int(-1)),
    ];
    let names = symbol_names(d);
    for (xi, h) in &actors {
        for k in 0..lay.dim() {
            let id = format!("sl2/oracle/{}/{}", xi.name(), names[k]);
            let want = linear_to_h(&sl2_on_symbol(d, *xi, k), &gens, &alg);
            rep.push(match alg.poisson_zc(h, &gens[k]) {
                Ok(got) => Check::compare(id, &got, &want, |x| x.render_truncated(opts.max_terms), || {
                    got.sub(&want).render_truncated(opts.max_terms)
                }),
                Err(e) => Check::from_bool(id, false, || e.to_string()),
            });
        }
    }

    rep.extend(verify_rho_equivariance(d, opts).checks);
    rep.extend(verify_zi_intrinsic(d).checks);
    rep.extend(hermite_checks(6));

    let pts = [(0, 0, 0), (1, 2, 3), (-2, 5, 7)];
    let mut ok = true;
    for (q, bq, e) in pts {
        let pt = VarietyPoint::from_triple(d, rat(q), rat(bq), rat(e), BigRational::one());
        let m = moment(&pt);
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        ok &= (&m[0][0] + &m[1][1]).is_zero() && det == rat(q * bq - e * e);
    }
    rep.push(Check::from_bool("sl2/moment", ok, || "trace or determinant mismatch".into()));
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_examples() {
        let d = 5;
        let a = |i| SymElement::a(d, i);
        assert!(epsilon(2, d, &kernel_element(d, 1, 1)).unwrap().is_zero());
        let qq = SymElement::q(d).star(&SymElement::big_q(d));
        assert_eq!(epsilon(2, 2, &qq).unwrap(), V2Poly::monomial(2, 2, BigRational::new(1.into(), 4.into())));
        assert_eq!(epsilon(2, d, &a(0).star(&a(d))).unwrap(), V2Poly::monomial(d, d, BigRational::one()));
        assert!(epsilon(2, 2, &a(0).star(&a(1))).is_err());
        assert!(epsilon(3, d, &a(0).star(&a(1))).is_err());
    }

    #[test]
    fn star_is_unevaluated() {
        let d = 4;
        let a = |i| SymElement::a(d, i);
        assert_ne!(a(0).star(&a(2)), a(1).star(&a(1)));
        assert_eq!(kernel_element(d, 1, 1).to_string(), "a0\u{22c6}a2 - a1\u{22c6}a1");
    }

    #[test]
    fn action_on_generators() {
        let d = 5;
        for j in 0..=d {
            let a = SymElement::a(d, j);
            assert_eq!(sl2_act(Sl2::H, &a), a.scale_int(2 * j as i64 - d as i64));
        }
        assert_eq!(sl2_act(Sl2::F, &SymElement::a(d, 3)), SymElement::a(d, 2).scale_int(-3));
        assert_eq!(sl2_act(Sl2::E, &SymElement::q(d)), SymElement::eu(d).scale_int(-1));
    }

    #[test]
    fn kernel_basis_sizes() {
        assert_eq!(kernel_basis_2d(2), vec![kernel_element(2, 1, 1)]);
        for d in 2..=6 {
            let n = (d * (d - 1) / 2) as usize;
            assert_eq!(rank(&kernel_basis_2d(d)), n);
            assert_eq!(epsilon_kernel_dim(d), n);
        }
    }

    #[test]
    fn rho_examples() {
        let q = SymElement::q(4);
        assert_eq!(rho(4, &kernel_element(4, 1, 1)).unwrap(), q.star(&q));
        assert_eq!(rho(4, &kernel_element(4, 1, 2)).unwrap(), q.star(&SymElement::eu(4)));
        let d = 5;
        let (q, eu, bq) = (SymElement::q(d), SymElement::eu(d), SymElement::big_q(d));
        let want = q.star(&eu.star(&eu).sub(&q.star(&bq)));
        assert_eq!(rho(d, &kernel_element(d, 1, 3)).unwrap(), want);
        assert_eq!(rho(d, &SymElement::a(d, 0)), Err(Sl2Error::NotInKernel));
    }

    #[test]
    fn equivariance_and_zi() {
        for d in 2..=6 {
            let r = verify_rho_equivariance(d, &VerifyOptions::default());
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            let z = verify_zi_intrinsic(d);
            assert!(z.passed(), "{:?}", z.failures().collect::<Vec<_>>());
        }
        let m = verify_rho_equivariance(4, &VerifyOptions::mutated(Mutation::RhoScale));
        assert!(!m.passed());
    }

    #[test]
    fn hermite() {
        assert_eq!(sym_sym_dim(2, 3), 10);
        assert!(hermite_checks(6).iter().all(Check::passed));
    }

    #[test]
    fn moment_map() {
        let pt = VarietyPoint::from_triple(4, rat(2), rat(3), rat(5), rat(1));
        assert_eq!(moment(&pt), [[rat(5), rat(3)], [rat(-2), rat(-5)]]);
    }
}
