//! Verification suites: the `Ψ` identities, the presentations of `Z_0` and
//! `Z_c`, the truncation formula for `a_{i−1}a_{j+1} − a_i a_j`, the Poisson
//! table, and the decomposition `{a_i, a_j} = Π_{i,j} + a² Φ_{i,j}`.
//!
//! Every identity is checked with `a` symbolic.

use num::rational::BigRational;
use num::One;
use rayon::prelude::*;
use serde_json::json;

use crate::cherednik::{Algebra, HElement};
use crate::polyring::{inv, is_w_invariant, poisson_vv, CommPoly, Invariant, Mono, X_UP, Y_UP};
use crate::psi::{self, psi, PsiPoly};
use crate::report::{Check, CheckReport, Mutation, VerifyOptions, Witness};
use crate::scalar::ScalarRing;

/// The named generators of `Z_c` inside `H_c`.
pub struct Generators {
    pub eu: HElement,
    pub q: HElement,
    pub big_q: HElement,
    /// `a_0, …, a_d`
    pub a: Vec<HElement>,
}

impl Generators {
    pub fn new(alg: &Algebra) -> Self {
        Generators {
            eu: alg.euler(),
            q: alg.q(),
            big_q: alg.big_q(),
            a: (0..=alg.d())
                .map(|j| alg.central_a(j).expect("index in range"))
                .collect(),
        }
    }

    /// `a_j`, or zero outside `0..=d`.
    pub fn a_or_zero(&self, alg: &Algebra, j: i64) -> HElement {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.a.get(j).cloned())
            .unwrap_or_else(|| alg.zero())
    }
}

/// `P(eu, q, Q)` computed with the product of `H_c`.
pub fn eval_psi_in_h(alg: &Algebra, p: &PsiPoly, g: &Generators) -> HElement {
    let r = alg.ring().clone();
    p.evaluate(
        [&g.eu, &g.q, &g.big_q],
        alg.one(),
        |u, v| alg.mul(u, v),
        HElement::add,
        |u, c| u.scale(&r.from_rational(c)),
    )
    .unwrap_or_else(|| alg.zero())
}

fn h_check(id: String, lhs: &HElement, rhs: &HElement, max: usize) -> Check {
    Check::compare(id, lhs, rhs, |h| h.render_truncated(max), || lhs.sub(rhs).render_truncated(max))
}

fn poly_check(id: String, lhs: &CommPoly, rhs: &CommPoly, max: usize) -> Check {
    Check::compare(id, lhs, rhs, |p| p.render_truncated(max), || lhs.sub(rhs).render_truncated(max))
}

/// Index pairs `1 ≤ i ≤ j ≤ d−1` of the quadratic relations.
pub fn quadratic_indices(d: u32) -> Vec<(u32, u32)> {
    (1..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect()
}

/// The `Ψ` identities.
pub fn psi_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("psi", d);
    let closed_mut = opts.is(Mutation::PsiClosedForm);
    for i in 0..=8 {
        rep.push(Check::from_bool(
            format!("psi/closed-form/{i}"),
            psi::verify_psi_closed_form_with(i, d, closed_mut),
            || format!("Psi_{i}(eu0, q, Q) differs from ((xX)^{}-(yY)^{})/(xX-yY)", i + 1, i + 1),
        ));
    }
    let der_mut = opts.is(Mutation::PsiDerivative);
    for i in 1..=10 {
        rep.push(Check::from_bool(
            format!("psi/derivatives/{i}"),
            psi::verify_psi_derivatives_with(i, der_mut),
            || format!("derivative identities fail for Psi_{i} = {}", psi(i)),
        ));
    }
    for k in 0..=10usize {
        let p = psi(k);
        let collapsed = PsiPoly::from_terms(p.terms().filter(|(e, _)| e[1] == 0 && e[2] == 0));
        let want = PsiPoly::monomial([k as u16, 0, 0], BigRational::one());
        rep.push(Check::compare(
            format!("psi/at-T/{k}"),
            &collapsed,
            &want,
            ToString::to_string,
            || collapsed.sub(&want).to_string(),
        ));
    }
    for i in 0..=12usize {
        let p = psi(i);
        let ok = p.homogeneous_degree() == Some(i as u32)
            && p.coefficient(&[i as u16, 0, 0]).is_one()
            && p.t_degree() == Some(i as u16)
            && p.terms().all(|(_, c)| c.is_integer());
        rep.push(Check::from_bool(format!("psi/monic-integral/{i}"), ok, || p.to_string()));
    }
    for k in 0..=8 {
        rep.push(Check::from_bool(format!("psi/basis-rank/{k}"), psi::verify_basis(k), || {
            format!("the degree-{k} family is not a basis")
        }));
        rep.push(Check::from_bool(
            format!("psi/injective/{k}"),
            psi::substitution_is_injective(k, d),
            || format!("(eu0, q, Q) substitution has a kernel in degree {k}"),
        ));
    }
    rep
}

/// `{a_{i,0}, a_{j,0}}` from the closed formula, `0 ≤ i < j ≤ d`.
pub fn z0_aij_bracket(ring: &ScalarRing, d: u32, i: u32, j: u32) -> CommPoly {
    let p = |name| inv(ring, d, name);
    let mono = |a: u32, b: u32| CommPoly::monomial(ring, Mono([a as u16, a as u16, b as u16, b as u16]));
    let mut out = mono(d - j, i)
        .mul(&p(Invariant::Eu0Round(j - i - 1)))
        .scale_int((j * (d - i)) as i64);
    // the second term carries the factor i(d−j)
    if i >= 1 && j < d {
        let second = mono(d - j - 1, i - 1)
            .mul(&p(Invariant::Eu0Round(j - i + 1)))
            .scale_int((i * (d - j)) as i64);
        out = out.sub(&second);
    }
    out
}

/// The presentation of `Z_0 = C[V × V*]^W` and its Poisson brackets.
pub fn z0_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("z0", d);
    let ring = ScalarRing::for_dihedral(d, 1);
    let max = opts.max_terms;
    let p = |name| inv(&ring, d, name);
    let (eu0, q, bq) = (p(Invariant::Eu0), p(Invariant::Q), p(Invariant::BigQ));
    let a: Vec<CommPoly> = (0..=d).map(|j| p(Invariant::A0(j))).collect();
    let a_or_zero = |j: i64| {
        usize::try_from(j)
            .ok()
            .and_then(|j| a.get(j).cloned())
            .unwrap_or_else(|| CommPoly::zero(&ring))
    };

    for (name, f) in [("q", &q), ("Q", &bq), ("eu0", &eu0)] {
        rep.push(Check::from_bool(format!("z0/invariant/{name}"), is_w_invariant(f, d), || f.to_string()));
    }
    for (j, f) in a.iter().enumerate() {
        rep.push(Check::from_bool(format!("z0/invariant/a{j}"), is_w_invariant(f, d), || f.to_string()));
    }

    for i in 1..d {
        let lhs = eu0.mul(&a[i as usize]);
        let rhs = q.mul(&a[i as usize + 1]).add(&bq.mul(&a[i as usize - 1]));
        rep.push(poly_check(format!("z0/Z_i/{i}"), &lhs, &rhs, max));
    }
    let four = if opts.is(Mutation::Z0Quadric) { 3 } else { 4 };
    let quad = eu0.mul(&eu0).sub(&q.mul(&bq).scale_int(four));
    for (i, j) in quadratic_indices(d) {
        let lhs = a[i as usize - 1].mul(&a[j as usize + 1]).sub(&a[i as usize].mul(&a[j as usize]));
        let rhs = quad
            .mul(&q.pow(d - j - 1))
            .mul(&bq.pow(i - 1))
            .mul(&psi((j - i) as usize).substitute_invariants(&ring, d));
        rep.push(poly_check(format!("z0/Z_ij/{i},{j}"), &lhs, &rhs, max));
    }

    let br = poisson_vv;
    rep.push(poly_check("z0/bracket/q,Q".into(), &br(&q, &bq), &eu0, max));
    rep.push(poly_check("z0/bracket/eu0,q".into(), &br(&eu0, &q), &q.scale_int(-2), max));
    rep.push(poly_check("z0/bracket/eu0,Q".into(), &br(&eu0, &bq), &bq.scale_int(2), max));
    let shift = if opts.is(Mutation::Z0Bracket) { 1 } else { 0 };
    for i in 0..=d as i64 {
        let ai = &a[i as usize];
        let d = d as i64;
        rep.push(poly_check(
            format!("z0/bracket/eu0,a{i}"),
            &br(&eu0, ai),
            &ai.scale_int(2 * i - d + shift),
            max,
        ));
        rep.push(poly_check(format!("z0/bracket/q,a{i}"), &br(&q, ai), &a_or_zero(i - 1).scale_int(i), max));
        rep.push(poly_check(
            format!("z0/bracket/Q,a{i}"),
            &br(&bq, ai),
            &a_or_zero(i + 1).scale_int(i - d),
            max,
        ));
    }
    for i in 0..=d {
        for j in i + 1..=d {
            let lhs = br(&a[i as usize], &a[j as usize]);
            let rhs = z0_aij_bracket(&ring, d, i, j);
            rep.push(poly_check(format!("z0/bracket/a{i},a{j}"), &lhs, &rhs, max));
        }
    }
    let det = eu0.mul(&eu0).sub(&q.mul(&bq).scale_int(4));
    for (name, f) in [("Q", &bq), ("q", &q), ("eu0", &eu0)] {
        let b = br(f, &det);
        rep.push(poly_check(format!("z0/casimir/{name}"), &b, &CommPoly::zero(&ring), max));
    }
    rep
}

/// Centrality of `eu`, `a_j`, their truncations, and the relations of `Z_c`
/// evaluated in `H_c`.
pub fn zc_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("zc", d);
    let alg = Algebra::new(d, 1);
    let ring = alg.ring().clone();
    let max = opts.max_terms;
    let g = Generators::new(&alg);

    let named: Vec<(String, &HElement)> = [("eu".to_string(), &g.eu), ("q".into(), &g.q), ("Q".into(), &g.big_q)]
        .into_iter()
        .chain(g.a.iter().enumerate().map(|(j, h)| (format!("a{j}"), h)))
        .collect();
    let central: Vec<Check> = named
        .par_iter()
        .map(|(name, h)| {
            Check::from_bool(format!("zc/central/{name}"), alg.is_central(h), || {
                h.render_truncated(max)
            })
        })
        .collect();
    rep.extend(central);

    rep.push(poly_check("zc/trunc/eu".into(), &g.eu.trunc_c(), &inv(&ring, d, Invariant::Eu0), max));
    for j in 0..=d {
        let h = &g.a[j as usize];
        rep.push(poly_check(format!("zc/trunc/a{j}"), &h.trunc_c(), &inv(&ring, d, Invariant::A0(j)), max));
        let other = alg.central_a_with(j, true).expect("index in range");
        rep.push(h_check(format!("zc/orderings/a{j}"), h, &other, max));
    }
    let a2 = &ring.a() * &ring.a();
    let eu_sq_want = CommPoly::monomial(&ring, Mono([2, 0, 2, 0]))
        .add(&CommPoly::monomial(&ring, Mono([0, 2, 0, 2])))
        .add(&CommPoly::monomial(&ring, Mono([1, 1, 1, 1])).scale_int(2))
        .add(&CommPoly::constant(a2.scale_int(d as i64)));
    let eu_sq = alg.mul(&g.eu, &g.eu);
    rep.push(poly_check("zc/trunc/eu^2".into(), &eu_sq.trunc_c(), &eu_sq_want, max));

    let linear: Vec<Check> = (1..d)
        .into_par_iter()
        .map(|i| {
            let lhs = alg.mul(&g.eu, &g.a[i as usize]);
            let rhs = alg
                .mul(&g.q, &g.a[i as usize + 1])
                .add(&alg.mul(&g.big_q, &g.a[i as usize - 1]));
            h_check(format!("zc/Z_i/{i}"), &lhs, &rhs, max)
        })
        .collect();
    rep.extend(linear);

    let d2 = (d * d) as i64 - if opts.is(Mutation::ZcQuadric) { 1 } else { 0 };
    let quad = eu_sq
        .sub(&alg.mul(&g.q, &g.big_q).scale_int(4))
        .sub(&alg.scalar(a2.scale_int(d2)));
    let quadratic: Vec<Check> = quadratic_indices(d)
        .into_par_iter()
        .map(|(i, j)| {
            let (i_, j_) = (i as usize, j as usize);
            let lhs = alg
                .mul(&g.a[i_ - 1], &g.a[j_ + 1])
                .sub(&alg.mul(&g.a[i_], &g.a[j_]));
            let rhs = [
                alg.pow(&g.q, d - j - 1),
                alg.pow(&g.big_q, i - 1),
                eval_psi_in_h(&alg, &psi(j_ - i_), &g),
            ]
            .iter()
            .fold(quad.clone(), |acc, f| alg.mul(&acc, f));
            h_check(format!("zc/Z_ij/{i},{j}"), &lhs, &rhs, max)
        })
        .collect();
    rep.extend(quadratic);
    rep
}

/// The closed form of `Trunc_c(a_{i−1}a_{j+1} − a_i a_j)`, `1 ≤ i ≤ j ≤ d−1`.
pub fn horreur_closed_form(ring: &ScalarRing, d: u32, i: u32, j: u32, mutate: bool) -> CommPoly {
    let m = |e: [u32; 4]| CommPoly::monomial(ring, Mono(e.map(|v| v as u16)));
    let k = j - i;
    let first = m([d - j - 1, d - j - 1, i - 1, i - 1]).mul(&inv(ring, d, Invariant::Eu0Round(k + 2)));
    let second = m([d - j, d - j, i, i]).mul(&inv(ring, d, Invariant::Eu0Round(k)));
    let mut sum = CommPoly::zero(ring);
    for big_m in i - 1..j {
        sum = sum.add(&m([big_m + d - i - j, d - 2 - big_m, big_m, i + j - 2 - big_m]));
    }
    let shift = if mutate { 2 } else { 1 };
    let coef = d as i64 * (shift + j as i64 - i as i64 - d as i64);
    let a2 = &ring.a() * &ring.a();
    first.sub(&second).add(&sum.scale(&a2.scale_int(coef)))
}

pub fn horreur_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("horreur", d);
    let alg = Algebra::new(d, 1);
    let ring = alg.ring().clone();
    let g = Generators::new(&alg);
    let mutate = opts.is(Mutation::Horreur);
    let zero = BigRational::from_integer(0.into());
    let checks: Vec<Vec<Check>> = quadratic_indices(d)
        .into_par_iter()
        .map(|(i, j)| {
            let (i_, j_) = (i as usize, j as usize);
            let diff = alg
                .mul(&g.a[i_ - 1], &g.a[j_ + 1])
                .sub(&alg.mul(&g.a[i_], &g.a[j_]))
                .trunc_c();
            let want = horreur_closed_form(&ring, d, i, j, mutate);
            let a0: Vec<CommPoly> = (0..=d).map(|k| inv(&ring, d, Invariant::A0(k))).collect();
            let z0_diff = a0[i_ - 1].mul(&a0[j_ + 1]).sub(&a0[i_].mul(&a0[j_]));
            vec![
                poly_check(format!("horreur/{i},{j}"), &diff, &want, opts.max_terms),
                poly_check(
                    format!("horreur/a=0/{i},{j}"),
                    &want.specialize_a(&zero),
                    &z0_diff,
                    opts.max_terms,
                ),
            ]
        })
        .collect();
    rep.extend(checks.into_iter().flatten());
    rep
}

/// Prop.-level Poisson brackets in `Z_c`, the `x`/`y` bracket formula, the
/// Casimir `eu² − 4qQ`, antisymmetry and one Jacobi triple.
pub fn poisson_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("poisson", d);
    let alg = Algebra::new(d, 1);
    let max = opts.max_terms;
    let g = Generators::new(&alg);
    let br = |u: &HElement, v: &HElement| alg.poisson_zc(u, v).expect("central inputs");

    rep.push(h_check("poisson/q,Q".into(), &br(&g.q, &g.big_q), &g.eu, max));
    rep.push(h_check("poisson/eu,q".into(), &br(&g.eu, &g.q), &g.q.scale_int(-2), max));
    rep.push(h_check("poisson/eu,Q".into(), &br(&g.eu, &g.big_q), &g.big_q.scale_int(2), max));
    rep.push(h_check("poisson/antisymmetry/Q,q".into(), &br(&g.big_q, &g.q), &g.eu.neg(), max));

    let shift = if opts.is(Mutation::PoissonTable) { 1 } else { 0 };
    let per_j: Vec<Vec<Check>> = (0..=d as i64)
        .into_par_iter()
        .map(|j| {
            let aj = &g.a[j as usize];
            let dd = d as i64;
            vec![
                h_check(
                    format!("poisson/q,a{j}"),
                    &br(&g.q, aj),
                    &g.a_or_zero(&alg, j - 1).scale_int(j + shift),
                    max,
                ),
                h_check(format!("poisson/eu,a{j}"), &br(&g.eu, aj), &aj.scale_int(2 * j - dd), max),
                h_check(
                    format!("poisson/Q,a{j}"),
                    &br(&g.big_q, aj),
                    &g.a_or_zero(&alg, j + 1).scale_int(j - dd),
                    max,
                ),
            ]
        })
        .collect();
    rep.extend(per_j.into_iter().flatten());

    let dd = d as i64;
    let want01 = alg.pow(&g.q, d - 1).scale_int(2 * dd);
    rep.push(h_check("poisson/a0,a1".into(), &br(&g.a[0], &g.a[1]), &want01, max));
    let want02 = alg.mul(&alg.pow(&g.q, d - 2), &g.eu).scale_int(2 * dd);
    rep.push(h_check("poisson/a0,a2".into(), &br(&g.a[0], &g.a[2]), &want02, max));

    let casimir = alg
        .mul(&g.eu, &g.eu)
        .sub(&alg.mul(&g.q, &g.big_q).scale_int(4));
    for (name, f) in [("q", &g.q), ("eu", &g.eu), ("Q", &g.big_q)] {
        rep.push(h_check(format!("poisson/casimir/{name}"), &br(f, &casimir), &alg.zero(), max));
    }

    for (name, z) in [("eu", &g.eu), ("a0", &g.a[0]), ("a1", &g.a[1])] {
        rep.push(h_check(
            format!("poisson/x-formula/{name}"),
            &alg.x_bracket_t1(z),
            &z.upper_derivative(X_UP),
            max,
        ));
        rep.push(h_check(
            format!("poisson/y-formula/{name}"),
            &alg.y_bracket_t1(z),
            &z.upper_derivative(Y_UP),
            max,
        ));
    }

    let jac = br(&g.q, &br(&g.big_q, &g.a[0]))
        .add(&br(&g.big_q, &br(&g.a[0], &g.q)))
        .add(&br(&g.a[0], &br(&g.q, &g.big_q)));
    rep.push(h_check("poisson/jacobi/q,Q,a0".into(), &jac, &alg.zero(), max));
    rep
}

/// The outcome of splitting `{a_i, a_j}` as `Π(eu,q,Q) + a² Φ(eu,q,Q)`.
#[derive(Clone, Debug)]
pub struct PhiDecomposition {
    pub i: u32,
    pub j: u32,
    pub pi: PsiPoly,
    pub phi: PsiPoly,
    /// `{a_i, a_j} − Π(eu,q,Q) − a² Φ(eu,q,Q)`; zero on success.
    pub residual: HElement,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("need 0 <= i < j <= d and d >= 3, got ({i}, {j}) at d = {d}")]
    BadIndex { i: u32, j: u32, d: u32 },
    #[error("a^0 part of the truncated bracket is not a polynomial in (eu0, q, Q): {0}")]
    Pi(String),
    #[error("a^2 part of the truncated remainder is not a polynomial in (eu0, q, Q): {0}")]
    Phi(String),
}

pub fn phi_decomposition(d: u32, i: u32, j: u32, mutate: bool) -> Result<PhiDecomposition, PhiError> {
    if d < 3 || i >= j || j > d {
        return Err(PhiError::BadIndex { i, j, d });
    }
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    let b = alg
        .poisson_zc(&g.a[i as usize], &g.a[j as usize])
        .expect("a_i are central");
    let t = b.trunc_c();
    let mut pi = psi::express_in_invariants(&t.a_component(0), d, d - 1)
        .map_err(|e| PhiError::Pi(e.to_string()))?;
    if mutate {
        let e = pi.terms().next().map(|(e, _)| *e).unwrap_or([d as u16 - 1, 0, 0]);
        pi.add_term(e, &BigRational::one());
    }
    let r = b.sub(&eval_psi_in_h(&alg, &pi, &g));
    let phi = psi::express_in_invariants(&r.trunc_c().a_component(2), d, d - 3)
        .map_err(|e| PhiError::Phi(e.to_string()))?;
    let a2 = &alg.ring().a() * &alg.ring().a();
    let residual = r.sub(&eval_psi_in_h(&alg, &phi, &g).scale(&a2));
    Ok(PhiDecomposition { i, j, pi, phi, residual })
}

pub fn phi_suite(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("phi", d);
    if d < 3 {
        rep.push(Check::pass("phi/not-applicable").with_detail(json!("requires d >= 3")));
        return rep;
    }
    let ring = ScalarRing::for_dihedral(d, 1);
    let mutate = opts.is(Mutation::PhiCoefficient);
    let pairs: Vec<(u32, u32)> = (0..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    let checks: Vec<Vec<Check>> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let id = format!("phi/{i},{j}");
            match phi_decomposition(d, i, j, mutate) {
                Err(e) => vec![Check::from_bool(id, false, || e.to_string())],
                Ok(dec) => {
                    let detail = json!({ "Pi": dec.pi.to_string(), "Phi": dec.phi.to_string() });
                    let zero = HElement::zero(d, &ring);
                    let mut out = vec![h_check(id.clone(), &dec.residual, &zero, opts.max_terms).with_detail(detail)];
                    let deg_ok = |p: &PsiPoly, k: u32| p.is_zero() || p.homogeneous_degree() == Some(k);
                    out.push(Check::from_bool(format!("{id}/degrees"), deg_ok(&dec.pi, d - 1) && deg_ok(&dec.phi, d - 3), || {
                        format!("Pi = {}, Phi = {}", dec.pi, dec.phi)
                    }));
                    out.push(poly_check(
                        format!("{id}/a=0"),
                        &dec.pi.substitute_invariants(&ring, d),
                        &z0_aij_bracket(&ring, d, i, j),
                        opts.max_terms,
                    ));
                    out
                }
            }
        })
        .collect();
    rep.extend(checks.into_iter().flatten());
    rep
}

/// Renders a failed identity in the standard witness form.
pub fn witness(relation: &str, lhs: &HElement, rhs: &HElement, max: usize) -> Witness {
    Witness {
        relation: relation.to_string(),
        lhs: lhs.render_truncated(max),
        rhs: rhs.render_truncated(max),
        difference: lhs.sub(rhs).render_truncated(max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(rep: &CheckReport) {
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{}: {:#?}", rep.summary(), bad);
    }

    #[test]
    fn psi_and_z0_small() {
        for d in 2..=5 {
            assert_passes(&psi_suite(d, &VerifyOptions::default()));
            assert_passes(&z0_suite(d, &VerifyOptions::default()));
        }
    }

    #[test]
    fn zc_horreur_poisson_small() {
        for d in 2..=4 {
            assert_passes(&zc_suite(d, &VerifyOptions::default()));
            assert_passes(&horreur_suite(d, &VerifyOptions::default()));
            assert_passes(&poisson_suite(d, &VerifyOptions::default()));
        }
    }

    #[test]
    fn phi_examples() {
        let dec = phi_decomposition(5, 0, 1, false).unwrap();
        assert_eq!(dec.pi.to_string(), "10*T1^4");
        assert!(dec.phi.is_zero());
        let dec = phi_decomposition(5, 0, 2, false).unwrap();
        assert_eq!(dec.pi.to_string(), "10*T*T1^3");
        assert!(dec.residual.is_zero());
        let dec = phi_decomposition(4, 1, 3, false).unwrap();
        assert!(dec.residual.is_zero());
        assert_eq!(dec.phi.homogeneous_degree().unwrap_or(1), 1);
        assert!(phi_decomposition(4, 2, 2, false).is_err());
    }

    #[test]
    fn mutations_are_detected() {
        let d = 4;
        let cases: [(Mutation, fn(u32, &VerifyOptions) -> CheckReport); 7] = [
            (Mutation::PsiClosedForm, psi_suite),
            (Mutation::PsiDerivative, psi_suite),
            (Mutation::Z0Quadric, z0_suite),
            (Mutation::Z0Bracket, z0_suite),
            (Mutation::ZcQuadric, zc_suite),
            (Mutation::Horreur, horreur_suite),
            (Mutation::PoissonTable, poisson_suite),
        ];
        for (m, suite) in cases {
            assert!(!suite(d, &VerifyOptions::mutated(m)).passed(), "{m} went undetected");
        }
        assert!(!phi_suite(4, &VerifyOptions::mutated(Mutation::PhiCoefficient)).passed());
    }
}
