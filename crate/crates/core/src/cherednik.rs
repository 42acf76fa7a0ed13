//! The rational Cherednik algebra `H_{t,c}` of the dihedral group at equal
//! parameters, with elements in PBW normal form `Σ f(x,y) · w · F(X,Y)`.
//!
//! The defining commutation rules, for `P ∈ C[X,Y]`, are
//! `[x,P] = t ∂P/∂X − a Σ_i Δ_i(P) s_i` and
//! `[y,P] = t ∂P/∂Y + a Σ_i ζ^i Δ_i(P) s_i`, where
//! `Δ_i(P) = (P − s_i(P)) / (X − ζ^i Y)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex, RwLock};

use num::rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dihedral::GroupElement;
use crate::polyring::{write_term, CommPoly, Mono, PolyError, X_LOW, X_UP, Y_LOW, Y_UP};
use crate::scalar::{Scalar, ScalarRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element is not central at t = 0: {0}")]
    NotCentral(String),
    #[error("commutator of central elements has a nonzero t^0 part: {0}")]
    NonvanishingT0(String),
    #[error("index {j} out of range 0..={d}")]
    OutOfRange { j: u32, d: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A PBW basis label: the group element and the exponents of `x, y` (left of
/// `w`) and `X, Y` (right of `w`).
pub type TermKey = (GroupElement, Mono);

/// An element of `H_{t,c}` in PBW normal form. Canonical: no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct HElement {
    d: u32,
    ring: ScalarRing,
    terms: BTreeMap<TermKey, Scalar>,
}

impl fmt::Debug for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HElement({self})")
    }
}

fn term_body(w: &GroupElement, m: &Mono) -> String {
    if w.is_identity() {
        return m.to_string();
    }
    let mut parts = Vec::new();
    if m.lower() != Mono::ONE {
        parts.push(m.lower().to_string());
    }
    parts.push(w.to_string());
    if m.upper() != Mono::ONE {
        parts.push(m.upper().to_string());
    }
    parts.join(" * ")
}

impl fmt::Display for HElement {
    /// E.g. `-t + x X + a*s[0] + a*s[1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((w, m), c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, c, &term_body(w, m))?;
        }
        Ok(())
    }
}

impl HElement {
    pub fn zero(d: u32, ring: &ScalarRing) -> Self {
        HElement {
            d,
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
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

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &GroupElement, m: &Mono) -> Scalar {
        self.terms
            .get(&(*w, *m))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, w: GroupElement, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((w, m)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        for ((w, m), c) in &other.terms {
            out.add_term(*w, *m, c);
        }
        out
    }

    pub fn sub(&self, other: &HElement) -> HElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HElement {
        self.map_coefficients(Scalar::neg)
    }

    pub fn scale(&self, c: &Scalar) -> HElement {
        self.map_coefficients(|v| v * c)
    }

    pub fn scale_int(&self, k: i64) -> HElement {
        self.map_coefficients(|v| v.scale_int(k))
    }

    fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> HElement {
        HElement {
            d: self.d,
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn retag(&self, ring: ScalarRing, f: impl Fn(&Scalar) -> Scalar) -> HElement {
        HElement {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            ring,
        }
    }

    /// Left multiplication by a monomial in `x, y`.
    pub fn mul_left_lower(&self, m: &Mono) -> HElement {
        debug_assert_eq!(m.upper(), Mono::ONE);
        HElement {
            d: self.d,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|((w, n), c)| ((*w, n.mul(m)), c.clone())).collect(),
        }
    }

    /// Right multiplication by a group element: `f w F · g = f (wg) g⁻¹(F)`.
    pub fn mul_right_group(&self, g: &GroupElement) -> HElement {
        let ginv = g.inverse();
        let mut out = HElement::zero(self.d, &self.ring);
        for ((w, m), c) in &self.terms {
            let (e, up) = ginv.act_monomial(m.upper().0);
            out.add_term(w.compose(g), m.lower().mul(&Mono(up)), &c.mul_root(2 * e));
        }
        out
    }

    /// The coefficient of the identity group element, with `t` set to zero.
    pub fn trunc_c(&self) -> CommPoly {
        self.component(&GroupElement::identity(self.d))
            .t_component(0, 1)
    }

    /// The polynomial attached to `w` (left and right parts multiplied).
    pub fn component(&self, w: &GroupElement) -> CommPoly {
        CommPoly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|((g, _), _)| g == w)
                .map(|((_, m), c)| (*m, c.clone())),
        )
    }

    pub fn with_t_order(&self, t_order: u8) -> HElement {
        self.retag(self.ring.with_t_order(t_order), |c| c.with_t_order(t_order))
    }

    /// The `t^k` part, retagged to truncation order `t_order`.
    pub fn t_component(&self, k: u8, t_order: u8) -> HElement {
        self.retag(self.ring.with_t_order(t_order), |c| c.t_component(k, t_order))
    }

    pub fn a_component(&self, k: u16) -> HElement {
        self.map_coefficients(|c| c.a_component(k))
    }

    pub fn specialize_a(&self, value: &BigRational) -> HElement {
        self.map_coefficients(|c| c.specialize_a(value))
    }

    /// `Σ_w f_w · w · ∂F_w/∂V` for `V ∈ {X, Y}` (index `X_UP` or `Y_UP`).
    pub fn upper_derivative(&self, var: usize) -> HElement {
        assert!(var == X_UP || var == Y_UP);
        let mut out = HElement::zero(self.d, &self.ring);
        for ((w, m), c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[var] -= 1;
            out.add_term(*w, n, &c.scale_int(e as i64));
        }
        out
    }

    pub fn render_truncated(&self, max_terms: usize) -> String {
        if self.terms.len() <= max_terms {
            return self.to_string();
        }
        let head = HElement {
            d: self.d,
            ring: self.ring.clone(),
            terms: self.terms.iter().take(max_terms).map(|(k, c)| (*k, c.clone())).collect(),
        };
        format!("{head} + ... ({} more terms)", self.terms.len() - max_terms)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((w, m), c)| {
                json!({
                    "w": w.to_string(),
                    "left": [m.0[0], m.0[1]],
                    "right": [m.0[2], m.0[3]],
                    "coef": c.to_string(),
                })
            })
            .collect();
        json!({ "d": self.d, "t_order": self.ring.t_order(), "terms": terms })
    }
}

type ReorderCache = RwLock<HashMap<[u16; 4], Arc<HElement>>>;

/// Multiplication context for fixed `d` and `t`-truncation order. Caches the
/// normal form of `X^γ Y^δ · x^α y^β` and the quotients `Δ_i(X^γ Y^δ)`.
pub struct Algebra {
    d: u32,
    ring: ScalarRing,
    reorder_cache: ReorderCache,
    delta_cache: RwLock<HashMap<(u32, u16, u16), Arc<CommPoly>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(d={}, t_order={})", self.d, self.ring.t_order())
    }
}

static REGISTRY: LazyLock<Mutex<HashMap<(u32, u8), Arc<Algebra>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl Algebra {
    /// The shared context for `(d, t_order)`.
    pub fn new(d: u32, t_order: u8) -> Arc<Algebra> {
        assert!(d >= 2, "dihedral order parameter must be at least 2");
        let mut reg = REGISTRY.lock().expect("algebra registry poisoned");
        reg.entry((d, t_order))
            .or_insert_with(|| {
                Arc::new(Algebra {
                    d,
                    ring: ScalarRing::for_dihedral(d, t_order),
                    reorder_cache: RwLock::new(HashMap::new()),
                    delta_cache: RwLock::new(HashMap::new()),
                })
            })
            .clone()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn t_order(&self) -> u8 {
        self.ring.t_order()
    }

    pub fn zero(&self) -> HElement {
        HElement::zero(self.d, &self.ring)
    }

    pub fn scalar(&self, c: Scalar) -> HElement {
        let mut h = self.zero();
        h.add_term(GroupElement::identity(self.d), Mono::ONE, &c.with_t_order(self.t_order()));
        h
    }

    pub fn one(&self) -> HElement {
        self.scalar(self.ring.one())
    }

    pub fn group(&self, w: GroupElement) -> HElement {
        let mut h = self.zero();
        h.add_term(w, Mono::ONE, &self.ring.one());
        h
    }

    /// `s_i`.
    pub fn s(&self, i: i64) -> HElement {
        self.group(GroupElement::reflection(self.d, i))
    }

    fn monomial(&self, m: Mono) -> HElement {
        let mut h = self.zero();
        h.add_term(GroupElement::identity(self.d), m, &self.ring.one());
        h
    }

    pub fn x(&self) -> HElement {
        self.monomial(Mono::var(X_LOW))
    }

    pub fn y(&self) -> HElement {
        self.monomial(Mono::var(Y_LOW))
    }

    pub fn big_x(&self) -> HElement {
        self.monomial(Mono::var(X_UP))
    }

    pub fn big_y(&self) -> HElement {
        self.monomial(Mono::var(Y_UP))
    }

    /// `q = xy`.
    pub fn q(&self) -> HElement {
        self.monomial(Mono([1, 1, 0, 0]))
    }

    /// `Q = XY`.
    pub fn big_q(&self) -> HElement {
        self.monomial(Mono([0, 0, 1, 1]))
    }

    /// The normal-ordered lift `Σ c · x^α y^β X^γ Y^δ` of a commutative polynomial.
    pub fn from_poly(&self, p: &CommPoly) -> HElement {
        let mut h = self.zero();
        for (m, c) in p.terms() {
            h.add_term(GroupElement::identity(self.d), *m, &c.with_t_order(self.t_order()));
        }
        h
    }

    /// `f · w · F` with `f ∈ C[x,y]` and `F ∈ C[X,Y]`.
    pub fn from_parts(&self, f: &CommPoly, w: GroupElement, big_f: &CommPoly) -> HElement {
        let mut h = self.zero();
        for (m1, c1) in f.terms() {
            debug_assert_eq!(m1.upper(), Mono::ONE);
            for (m2, c2) in big_f.terms() {
                debug_assert_eq!(m2.lower(), Mono::ONE);
                h.add_term(w, m1.mul(m2), &(c1 * c2).with_t_order(self.t_order()));
            }
        }
        h
    }

    /// Re-tags an element from another `t`-order into this context.
    pub fn import(&self, h: &HElement) -> HElement {
        assert_eq!(h.d, self.d, "elements of different algebras");
        h.with_t_order(self.t_order())
    }

    fn check(&self, h: &HElement) {
        assert_eq!(h.d, self.d, "elements of different algebras");
        assert_eq!(h.ring, self.ring, "element from a different t-order");
    }

    /// `Δ_i(X^γ Y^δ)`.
    fn delta(&self, i: u32, g: u16, dd: u16) -> Arc<CommPoly> {
        if let Some(p) = self.delta_cache.read().expect("cache poisoned").get(&(i, g, dd)) {
            return p.clone();
        }
        let ring = &self.ring;
        let f = CommPoly::monomial(ring, Mono([0, 0, g, dd]));
        let si = GroupElement::reflection(self.d, i as i64);
        let divisor = CommPoly::big_x(ring).sub(&CommPoly::big_y(ring).scale(&ring.zeta_power(i as i64)));
        let q = f
            .sub(&f.act(&si))
            .divide_exact(&divisor)
            .expect("P - s_i(P) is divisible by the root of s_i");
        let q = Arc::new(q);
        self.delta_cache
            .write()
            .expect("cache poisoned")
            .insert((i, g, dd), q.clone());
        q
    }

    /// Normal form of `X^γ Y^δ · x^α y^β`, with `key = [α, β, γ, δ]`.
    fn reorder(&self, key: [u16; 4]) -> Arc<HElement> {
        if let Some(h) = self.reorder_cache.read().expect("cache poisoned").get(&key) {
            return h.clone();
        }
        let [al, be, ga, de] = key;
        let id = GroupElement::identity(self.d);
        let result = if (al == 0 && be == 0) || (ga == 0 && de == 0) {
            let mut h = self.zero();
            h.add_term(id, Mono(key), &self.ring.one());
            h
        } else {
            // F·(v f') = v (F f') − [v, F] f'
            let (v, rest) = if al > 0 { (X_LOW, [al - 1, be]) } else { (Y_LOW, [al, be - 1]) };
            let mut out = self
                .reorder([rest[0], rest[1], ga, de])
                .mul_left_lower(&Mono::var(v));
            let (dvar, e) = if v == X_LOW { (X_UP, ga) } else { (Y_UP, de) };
            if e > 0 && self.t_order() > 1 {
                let mut lowered = [ga, de];
                lowered[dvar - X_UP] -= 1;
                let r = self.reorder([rest[0], rest[1], lowered[0], lowered[1]]);
                out = out.sub(&r.scale(&self.ring.t().scale_int(e as i64)));
            }
            for i in 0..self.d {
                let si = GroupElement::reflection(self.d, i as i64);
                let (ez, moved) = si.act_monomial([rest[0], rest[1], 0, 0]);
                // x: + a Δ_i s_i f';  y: − a ζ^i Δ_i s_i f'
                let mut coef = self.ring.a().mul_root(2 * ez);
                if v == Y_LOW {
                    coef = coef.mul_root(2 * i as i64).neg();
                }
                for (gm, gc) in self.delta(i, ga, de).terms() {
                    let r = self.reorder([moved[0], moved[1], gm.0[2], gm.0[3]]);
                    out = out.add(&r.mul_right_group(&si).scale(&(gc * &coef)));
                }
            }
            out
        };
        let result = Arc::new(result);
        self.reorder_cache
            .write()
            .expect("cache poisoned")
            .insert(key, result.clone());
        result
    }

    /// The product in `H_{t,c}`.
    pub fn mul(&self, a: &HElement, b: &HElement) -> HElement {
        self.check(a);
        self.check(b);
        let mut acc: HashMap<TermKey, Scalar> = HashMap::new();
        for ((w1, m1), c1) in &a.terms {
            let lower1 = m1.lower();
            for ((w2, m2), c2) in &b.terms {
                let c12 = c1 * c2;
                if c12.is_zero() {
                    continue;
                }
                let w2inv = w2.inverse();
                let upper2 = m2.upper();
                let r = self.reorder([m2.0[0], m2.0[1], m1.0[2], m1.0[3]]);
                for ((v, n), c) in &r.terms {
                    let (e1, g) = w1.act_monomial(n.lower().0);
                    let (e2, big_g) = w2inv.act_monomial(n.upper().0);
                    let key = (
                        w1.compose(v).compose(w2),
                        lower1.mul(&Mono(g)).mul(&Mono(big_g)).mul(&upper2),
                    );
                    let coef = if c.is_one() { c12.clone() } else { &c12 * c };
                    let coef = coef.mul_root(2 * (e1 + e2));
                    match acc.entry(key) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(coef);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            e.get_mut().add_assign_ref(&coef);
                        }
                    }
                }
            }
        }
        HElement {
            d: self.d,
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn commutator(&self, a: &HElement, b: &HElement) -> HElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    pub fn pow(&self, a: &HElement, k: u32) -> HElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The six generators `x, y, X, Y, s_0, s_1`.
    pub fn generators(&self) -> Vec<HElement> {
        vec![self.x(), self.y(), self.big_x(), self.big_y(), self.s(0), self.s(1)]
    }

    /// Commutes with all six generators at `t = 0`.
    pub fn is_central(&self, h: &HElement) -> bool {
        let alg = Algebra::new(self.d, 1);
        let h = alg.import(h);
        alg.generators().iter().all(|g| alg.commutator(g, &h).is_zero())
    }

    /// `eu = xX + yY + a Σ_i s_i`.
    pub fn euler(&self) -> HElement {
        let mut h = self.zero();
        let id = GroupElement::identity(self.d);
        h.add_term(id, Mono([1, 0, 1, 0]), &self.ring.one());
        h.add_term(id, Mono([0, 1, 0, 1]), &self.ring.one());
        for i in 0..self.d as i64 {
            h.add_term(GroupElement::reflection(self.d, i), Mono::ONE, &self.ring.a());
        }
        h
    }

    /// `γ_{i,j} = (x^{d−j} − ζ^{ij} y^{d−j}) / (x − ζ^{−i} y)`.
    pub fn gamma_low(&self, i: u32, j: u32) -> Result<CommPoly, AlgebraError> {
        let r = &self.ring;
        let (i, j, d) = (i as i64, j as i64, self.d as i64);
        let p = (d - j) as u16;
        let num = CommPoly::monomial(r, Mono([p, 0, 0, 0]))
            .sub(&CommPoly::monomial(r, Mono([0, p, 0, 0])).scale(&r.zeta_power(i * j)));
        let den = CommPoly::x(r).sub(&CommPoly::y(r).scale(&r.zeta_power(-i)));
        Ok(num.divide_exact(&den)?)
    }

    /// `Γ_{i,j} = (X^j − ζ^{ij} Y^j) / (X − ζ^i Y)`.
    pub fn gamma_up(&self, i: u32, j: u32) -> Result<CommPoly, AlgebraError> {
        let r = &self.ring;
        let (i, j) = (i as i64, j as u16);
        let num = CommPoly::monomial(r, Mono([0, 0, j, 0]))
            .sub(&CommPoly::monomial(r, Mono([0, 0, 0, j])).scale(&r.zeta_power(i * j as i64)));
        let den = CommPoly::big_x(r).sub(&CommPoly::big_y(r).scale(&r.zeta_power(i)));
        Ok(num.divide_exact(&den)?)
    }

    /// `a_j = x^{d−j} Y^j + y^{d−j} X^j − a Σ_i ζ^{−ij} γ_{i,j} s_i Γ_{i,j}`.
    pub fn central_a(&self, j: u32) -> Result<HElement, AlgebraError> {
        self.central_a_with(j, false)
    }

    /// As [`Algebra::central_a`]; with `gamma_first` the reflection terms are
    /// formed as `γ_{i,j} Γ_{i,j} · s_i` through the product.
    pub fn central_a_with(&self, j: u32, gamma_first: bool) -> Result<HElement, AlgebraError> {
        let d = self.d;
        if j > d {
            return Err(AlgebraError::OutOfRange { j, d });
        }
        let id = GroupElement::identity(d);
        let mut h = self.zero();
        let p = (d - j) as u16;
        h.add_term(id, Mono([p, 0, 0, j as u16]), &self.ring.one());
        h.add_term(id, Mono([0, p, j as u16, 0]), &self.ring.one());
        for i in 0..d {
            let coef = self.ring.a().mul_root(-2 * (i as i64) * (j as i64)).neg();
            let (gl, gu) = (self.gamma_low(i, j)?, self.gamma_up(i, j)?);
            let si = GroupElement::reflection(d, i as i64);
            let part = if gamma_first {
                let one = CommPoly::one(&self.ring);
                let prod = self.mul(&self.from_parts(&gl, id, &gu), &self.from_parts(&one, si, &one));
                prod.scale(&coef)
            } else {
                self.from_parts(&gl, si, &gu).scale(&coef)
            };
            h = h.add(&part);
        }
        Ok(h)
    }

    /// The Poisson bracket on `Z_c`: the `t`-linear part of the commutator of
    /// the PBW lifts to `t`-order 2.
    pub fn poisson_zc(&self, z1: &HElement, z2: &HElement) -> Result<HElement, AlgebraError> {
        for z in [z1, z2] {
            if !self.is_central(z) {
                return Err(AlgebraError::NotCentral(z.render_truncated(8)));
            }
        }
        self.poisson_lift(z1, z2)
    }

    /// The `t`-linear part of `[z1, z2]` after lifting, without the centrality
    /// precondition. Errors if the `t^0` part is nonzero.
    pub fn poisson_lift(&self, z1: &HElement, z2: &HElement) -> Result<HElement, AlgebraError> {
        let alg = Algebra::new(self.d, 2);
        let lift = |z: &HElement| z.with_t_order(1).with_t_order(2);
        let c = alg.commutator(&lift(z1), &lift(z2));
        let t0 = c.t_component(0, self.t_order());
        if !t0.is_zero() {
            return Err(AlgebraError::NonvanishingT0(t0.render_truncated(8)));
        }
        Ok(c.t_component(1, self.t_order()))
    }

    /// The `t`-linear part of `[x, z]` after lifting (no `t^0` condition).
    pub fn x_bracket_t1(&self, z: &HElement) -> HElement {
        let alg = Algebra::new(self.d, 2);
        let c = alg.commutator(&alg.x(), &z.with_t_order(1).with_t_order(2));
        c.t_component(1, self.t_order())
    }

    /// The `t`-linear part of `[y, z]` after lifting.
    pub fn y_bracket_t1(&self, z: &HElement) -> HElement {
        let alg = Algebra::new(self.d, 2);
        let c = alg.commutator(&alg.y(), &z.with_t_order(1).with_t_order(2));
        c.t_component(1, self.t_order())
    }
}

/// Letters of words in the generators, for the independent rewriting oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    /// `x` (0) or `y` (1)
    Low(usize),
    /// `X` (0) or `Y` (1)
    Up(usize),
    G(GroupElement),
}

impl Letter {
    fn rank(&self) -> u8 {
        match self {
            Letter::Low(_) => 0,
            Letter::G(_) => 1,
            Letter::Up(_) => 2,
        }
    }
}

/// Normal form of a word computed only by adjacent swaps, using the four base
/// relations `Xx = xX − t + aΣs_i`, `Yx = xY − aΣζ^{−i}s_i`,
/// `Xy = yX − aΣζ^i s_i`, `Yy = yY − t + aΣs_i` and the group action.
pub fn normalize_word(d: u32, ring: &ScalarRing, word: &[Letter]) -> HElement {
    let mut out = HElement::zero(d, ring);
    let mut work: Vec<(Scalar, Vec<Letter>)> = vec![(ring.one(), word.to_vec())];
    let low_of = |m: [u16; 4]| if m[0] == 1 { 0 } else { 1 };
    let up_of = |m: [u16; 4]| if m[2] == 1 { 0 } else { 1 };
    while let Some((c, w)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let bad = (0..w.len().saturating_sub(1)).find(|&k| {
            let (l, r) = (w[k], w[k + 1]);
            l.rank() > r.rank() || matches!((l, r), (Letter::G(_), Letter::G(_)))
        });
        let Some(k) = bad else {
            let mut m = [0u16; 4];
            let mut g = GroupElement::identity(d);
            for l in &w {
                match l {
                    Letter::Low(v) => m[*v] += 1,
                    Letter::Up(v) => m[2 + *v] += 1,
                    Letter::G(h) => g = *h,
                }
            }
            out.add_term(g, Mono(m), &c);
            continue;
        };
        let splice = |mid: &[Letter]| {
            let mut n = w[..k].to_vec();
            n.extend_from_slice(mid);
            n.extend_from_slice(&w[k + 2..]);
            n
        };
        match (w[k], w[k + 1]) {
            (Letter::G(g), Letter::G(h)) => work.push((c, splice(&[Letter::G(g.compose(&h))]))),
            (Letter::G(g), Letter::Low(v)) => {
                let mut m = [0u16; 4];
                m[v] = 1;
                let (e, n) = g.act_monomial(m);
                work.push((c.mul_root(2 * e), splice(&[Letter::Low(low_of(n)), Letter::G(g)])));
            }
            (Letter::Up(v), Letter::G(g)) => {
                let mut m = [0u16; 4];
                m[2 + v] = 1;
                let (e, n) = g.inverse().act_monomial(m);
                work.push((c.mul_root(2 * e), splice(&[Letter::G(g), Letter::Up(up_of(n))])));
            }
            (Letter::Up(big), Letter::Low(small)) => {
                work.push((c.clone(), splice(&[Letter::Low(small), Letter::Up(big)])));
                if big == small {
                    work.push(((&c * &ring.t()).neg(), splice(&[])));
                }
                for i in 0..d as i64 {
                    let zeta = match (big, small) {
                        (1, 0) => -i,
                        (0, 1) => i,
                        _ => 0,
                    };
                    let mut coef = (&c * &ring.a()).mul_root(2 * zeta);
                    if big != small {
                        coef = coef.neg();
                    }
                    work.push((coef, splice(&[Letter::G(GroupElement::reflection(d, i))])));
                }
            }
            _ => unreachable!("pair is in order"),
        }
    }
    out
}

/// Converts an element to a list of words (one per PBW term).
fn letters_of(w: &GroupElement, m: &Mono) -> Vec<Letter> {
    let mut out = Vec::new();
    out.extend(std::iter::repeat_n(Letter::Low(0), m.0[0] as usize));
    out.extend(std::iter::repeat_n(Letter::Low(1), m.0[1] as usize));
    if !w.is_identity() {
        out.push(Letter::G(*w));
    }
    out.extend(std::iter::repeat_n(Letter::Up(0), m.0[2] as usize));
    out.extend(std::iter::repeat_n(Letter::Up(1), m.0[3] as usize));
    out
}

/// Product of two elements computed by the rewriting oracle.
pub fn oracle_mul(a: &HElement, b: &HElement) -> HElement {
    let mut out = HElement::zero(a.d, &a.ring);
    for ((w1, m1), c1) in &a.terms {
        for ((w2, m2), c2) in &b.terms {
            let mut word = letters_of(w1, m1);
            word.extend(letters_of(w2, m2));
            out = out.add(&normalize_word(a.d, &a.ring, &word).scale(&(c1 * c2)));
        }
    }
    out
}

/// Startup consistency checks: the four base relations, `P · v` against the
/// rewriting oracle for `P ∈ {X², XY, Y², X³}` and `v ∈ {x, y}`, and the sign
/// normalization `{q, Q} = +eu`.
pub fn selftest(d: u32) -> Result<(), String> {
    let alg = Algebra::new(d, 2);
    let r = alg.ring();
    let sum_s = |k: i64| {
        (0..d as i64).fold(alg.zero(), |acc, i| {
            acc.add(&alg.s(i).scale(&r.a().mul_root(2 * k * i)))
        })
    };
    let t = alg.scalar(r.t());
    let xx = alg.mul(&alg.x(), &alg.big_x());
    let yy = alg.mul(&alg.y(), &alg.big_y());
    let expected = [
        ("X x", alg.mul(&alg.big_x(), &alg.x()), xx.sub(&t).add(&sum_s(0))),
        ("Y x", alg.mul(&alg.big_y(), &alg.x()), alg.mul(&alg.x(), &alg.big_y()).sub(&sum_s(-1))),
        ("X y", alg.mul(&alg.big_x(), &alg.y()), alg.mul(&alg.y(), &alg.big_x()).sub(&sum_s(1))),
        ("Y y", alg.mul(&alg.big_y(), &alg.y()), yy.sub(&t).add(&sum_s(0))),
    ];
    for (name, got, want) in expected {
        if got != want {
            return Err(format!("base relation {name}: got {got}, expected {want}"));
        }
    }
    let polys = [[0, 0, 2, 0], [0, 0, 1, 1], [0, 0, 0, 2], [0, 0, 3, 0]];
    for p in polys {
        let big_p = alg.from_poly(&CommPoly::monomial(r, Mono(p)));
        for v in [alg.x(), alg.y()] {
            let got = alg.mul(&big_p, &v);
            let want = oracle_mul(&big_p, &v);
            if got != want {
                return Err(format!("{} * {v}: engine {got}, oracle {want}", Mono(p)));
            }
        }
    }
    let alg1 = Algebra::new(d, 1);
    let b = alg1
        .poisson_zc(&alg1.q(), &alg1.big_q())
        .map_err(|e| e.to_string())?;
    if b != alg1.euler() {
        return Err(format!("{{q, Q}} = {b}, expected +eu"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{inv, Invariant};
    use proptest::prelude::*;

    #[test]
    fn base_commutators() {
        let alg = Algebra::new(3, 1);
        let r = alg.ring();
        let sum = |k: i64| {
            (0..3).fold(alg.zero(), |acc, i| acc.add(&alg.s(i).scale(&r.a().mul_root(2 * k * i))))
        };
        assert_eq!(alg.commutator(&alg.x(), &alg.big_y()), sum(-1));
        assert_eq!(alg.commutator(&alg.y(), &alg.big_x()), sum(1));
        assert!(alg.commutator(&alg.x(), &alg.y()).is_zero());
        assert!(alg.commutator(&alg.big_x(), &alg.big_y()).is_zero());
        assert_eq!(alg.mul(&alg.s(0), &alg.x()), alg.mul(&alg.y(), &alg.s(0)));
        assert_eq!(
            alg.mul(&alg.big_x(), &alg.x()).to_string(),
            "x X + a*s[0] + a*s[1] + a*s[2]"
        );
        let alg2 = Algebra::new(3, 2);
        assert_eq!(
            alg2.mul(&alg2.big_x(), &alg2.x()).to_string(),
            "-t + x X + a*s[0] + a*s[1] + a*s[2]"
        );
    }

    #[test]
    fn selftest_passes() {
        for d in 2..=6 {
            selftest(d).unwrap_or_else(|e| panic!("d={d}: {e}"));
        }
    }

    #[test]
    fn engine_matches_oracle_on_mixed_words() {
        let alg = Algebra::new(4, 2);
        let r = alg.ring();
        let a = alg
            .from_parts(&CommPoly::x(r).mul(&CommPoly::y(r)), GroupElement::reflection(4, 1), &CommPoly::big_y(r).pow(2))
            .add(&alg.big_x());
        let b = alg
            .from_parts(&CommPoly::y(r), GroupElement::rotation(4, 1), &CommPoly::big_x(r))
            .add(&alg.from_poly(&CommPoly::x(r).pow(2)));
        assert_eq!(alg.mul(&a, &b), oracle_mul(&a, &b));
    }

    #[test]
    fn euler_and_central_a() {
        for d in 2..=6 {
            let alg = Algebra::new(d, 1);
            let r = alg.ring();
            let eu = alg.euler();
            assert!(alg.is_central(&eu), "d={d}");
            assert_eq!(eu.trunc_c(), inv(r, d, Invariant::Eu0));
            assert!(!alg.is_central(&alg.x()));
            assert!(alg.is_central(&alg.q()));
            for j in 0..=d {
                let aj = alg.central_a(j).unwrap();
                assert!(alg.is_central(&aj), "d={d} j={j}");
                assert_eq!(aj.trunc_c(), inv(r, d, Invariant::A0(j)));
                assert_eq!(aj, alg.central_a_with(j, true).unwrap());
            }
            assert_eq!(alg.central_a(0).unwrap(), alg.from_poly(&inv(r, d, Invariant::A0(0))));
            assert!(alg.central_a(d + 1).is_err());
        }
    }

    #[test]
    fn euler_square_truncation() {
        for d in 2..=6 {
            let alg = Algebra::new(d, 1);
            let r = alg.ring();
            let eu = alg.euler();
            let got = alg.mul(&eu, &eu).trunc_c();
            let want = CommPoly::monomial(r, Mono([2, 0, 2, 0]))
                .add(&CommPoly::monomial(r, Mono([0, 2, 0, 2])))
                .add(&CommPoly::monomial(r, Mono([1, 1, 1, 1])).scale_int(2))
                .add(&CommPoly::constant((&r.a() * &r.a()).scale_int(d as i64)));
            assert_eq!(got, want, "d={d}");
        }
    }

    #[test]
    fn poisson_examples() {
        let d = 4;
        let alg = Algebra::new(d, 1);
        let eu = alg.euler();
        assert_eq!(alg.poisson_zc(&alg.q(), &alg.big_q()).unwrap(), eu);
        for j in 0..=d {
            let aj = alg.central_a(j).unwrap();
            assert_eq!(alg.poisson_zc(&eu, &aj).unwrap(), aj.scale_int(2 * j as i64 - d as i64));
        }
        let a0 = alg.central_a(0).unwrap();
        let a1 = alg.central_a(1).unwrap();
        let want = alg.pow(&alg.q(), d - 1).scale_int(2 * d as i64);
        assert_eq!(alg.poisson_zc(&a0, &a1).unwrap(), want);
        assert!(matches!(alg.poisson_zc(&alg.x(), &eu), Err(AlgebraError::NotCentral(_))));
    }

    #[test]
    fn x_bracket_is_x_derivative() {
        for d in 2..=5 {
            let alg = Algebra::new(d, 1);
            for z in [alg.euler(), alg.central_a(0).unwrap(), alg.central_a(1).unwrap()] {
                assert_eq!(alg.x_bracket_t1(&z), z.upper_derivative(X_UP), "d={d}");
            }
        }
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        let d = 3;
        let alg = Algebra::new(d, 1);
        let (q, bq, a0) = (alg.q(), alg.big_q(), alg.central_a(0).unwrap());
        let br = |u: &HElement, v: &HElement| alg.poisson_zc(u, v).unwrap();
        assert_eq!(br(&q, &a0), br(&a0, &q).neg());
        let jac = br(&q, &br(&bq, &a0))
            .add(&br(&bq, &br(&a0, &q)))
            .add(&br(&a0, &br(&q, &bq)));
        assert!(jac.is_zero());
    }

    #[test]
    fn smash_product_at_zero_parameters() {
        let d = 3;
        let alg = Algebra::new(d, 1);
        let r = alg.ring();
        let zero = BigRational::from_integer(0.into());
        // f w F ↦ (f · w(F), w) in C[V × V*] ⋊ W
        let flat = |h: &HElement| -> BTreeMap<GroupElement, CommPoly> {
            let mut out: BTreeMap<GroupElement, CommPoly> = BTreeMap::new();
            for ((w, m), c) in h.terms() {
                let p = CommPoly::term(c.clone(), m.upper()).act(w).mul_mono(&m.lower());
                let e = out.entry(*w).or_insert_with(|| CommPoly::zero(r));
                *e = e.add(&p);
            }
            out.retain(|_, p| !p.is_zero());
            out
        };
        let a = alg
            .from_parts(&CommPoly::x(r), GroupElement::reflection(d, 1), &CommPoly::big_y(r))
            .add(&alg.big_x());
        let b = alg
            .from_parts(&CommPoly::y(r).pow(2), GroupElement::rotation(d, 2), &CommPoly::big_x(r))
            .add(&alg.x());
        let got = flat(&alg.mul(&a, &b).specialize_a(&zero));
        let mut want: BTreeMap<GroupElement, CommPoly> = BTreeMap::new();
        for (w1, p1) in flat(&a) {
            for (w2, p2) in flat(&b) {
                let e = want.entry(w1.compose(&w2)).or_insert_with(|| CommPoly::zero(r));
                *e = e.add(&p1.mul(&p2.act(&w1)));
            }
        }
        want.retain(|_, p| !p.is_zero());
        assert_eq!(got, want);
    }

    #[test]
    fn rendering_and_json() {
        let alg = Algebra::new(2, 1);
        let h = alg.from_parts(&CommPoly::x(alg.ring()), GroupElement::reflection(2, 1), &CommPoly::big_y(alg.ring()));
        assert_eq!(h.to_string(), "x * s[1] * Y");
        let j = h.to_json();
        assert_eq!(j["terms"][0]["w"], "s[1]");
        assert_eq!(j["terms"][0]["left"], json!([1, 0]));
    }

    fn element(d: u32, spec: &[(u8, u8, [u16; 4], i64)]) -> HElement {
        let alg = Algebra::new(d, 2);
        let mut h = alg.zero();
        for &(kind, idx, m, c) in spec {
            let w = if kind == 0 {
                GroupElement::rotation(d, idx as i64)
            } else {
                GroupElement::reflection(d, idx as i64)
            };
            h.add_term(w, Mono(m), &alg.ring().from_int(c));
        }
        h
    }

    fn term_strategy() -> impl Strategy<Value = (u8, u8, [u16; 4], i64)> {
        (0u8..2, 0u8..3, [0u16..2, 0u16..2, 0u16..2, 0u16..2], -2i64..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn associativity(
            u in prop::collection::vec(term_strategy(), 1..3),
            v in prop::collection::vec(term_strategy(), 1..3),
            w in prop::collection::vec(term_strategy(), 1..3),
        ) {
            let d = 3;
            let alg = Algebra::new(d, 2);
            let (u, v, w) = (element(d, &u), element(d, &v), element(d, &w));
            prop_assert_eq!(alg.mul(&alg.mul(&u, &v), &w), alg.mul(&u, &alg.mul(&v, &w)));
        }

        #[test]
        fn engine_agrees_with_oracle(
            u in prop::collection::vec(term_strategy(), 1..3),
            v in prop::collection::vec(term_strategy(), 1..3),
        ) {
            let d = 3;
            let alg = Algebra::new(d, 2);
            let (u, v) = (element(d, &u), element(d, &v));
            prop_assert_eq!(alg.mul(&u, &v), oracle_mul(&u, &v));
        }
    }
}
