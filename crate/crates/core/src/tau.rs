//! The diagram automorphism `τ` on `H_c` and `Z_c`, and the fixed locus `Z_c^τ`.

use num::rational::BigRational;
use num::{One, Zero};
use serde_json::json;

use crate::cherednik::{Algebra, HElement};
use crate::cuspidal::{evaluate_point, is_on_variety, VarietyPoint};
use crate::dihedral::tau_monomial;
use crate::mpoly::{calogero_moser_system, Layout, MPoly, Relation};
use crate::polyring::Mono;
use crate::report::{Check, CheckReport, Mutation, VerifyOptions};
use crate::scalar::fmt_rational;
use crate::verify::Generators;

/// `τ(f · w · F) = τ(f) · τwτ⁻¹ · τ(F)`, with `x ↦ z⁻¹y`, `y ↦ zx`, `X ↦ zY`,
/// `Y ↦ z⁻¹X` where `z² = ζ`.
pub fn tau_act(h: &HElement) -> HElement {
    let mut out = HElement::zero(h.d(), h.ring());
    for ((w, m), c) in h.terms() {
        let (e, n) = tau_monomial(m.0);
        out.add_term(w.tau_conjugate(), Mono(n), &c.mul_root(e));
    }
    out
}

/// `τ` on the coordinates of `C^{d+4}`: fixes `q, Q, e` and negates each `a_i`.
pub fn tau_on_coordinates(d: u32, p: &MPoly) -> MPoly {
    let lay = Layout::new(d);
    let mut out = MPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        let odd: u32 = (0..=d).map(|i| e[lay.a_index(i)] as u32).sum::<u32>() % 2;
        out.add_term(e.clone(), &if odd == 1 { -c.clone() } else { c.clone() });
    }
    out
}

/// Points of `Z_c^τ` on the quadric `e² − 4qQ = d²a²` with `q = 1` and
/// `e = −k, …, k` where `2k + 1 ≥ count`.
pub fn sample_quadric_points(d: u32, a_value: &BigRational, count: usize) -> Vec<VarietyPoint> {
    let k = count as i64 / 2;
    let da2 = BigRational::from_integer((d * d).into()) * a_value * a_value;
    (-k..=k)
        .map(|e| {
            let e = BigRational::from_integer(e.into());
            let big_q = (&e * &e - &da2) / BigRational::from_integer(4.into());
            VarietyPoint::from_triple(d, BigRational::one(), big_q, e, a_value.clone())
        })
        .collect()
}

/// The outcome of [`fixed_locus_analysis`].
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub report: CheckReport,
    /// The relations with every `a_i = 0` and `a` specialized.
    pub residual_system: Vec<Relation>,
    /// The quadric cutting out the 2-dimensional part, normalized to leading `e²`.
    pub quadric: MPoly,
    /// The equation on the stratum `q = Q = 0`.
    pub stratum: MPoly,
}

fn names(d: u32) -> Vec<String> {
    Layout::new(d).names()
}

/// Quotient of `p` by the largest power of `var` dividing it.
fn strip_power(p: &MPoly, var: usize) -> MPoly {
    let k = p.var_valuation(var).unwrap_or(0);
    p.divide_var_power(var, k)
}

/// Sign-normalizes so the `e²` coefficient is positive.
fn normalize_e2(d: u32, p: &MPoly) -> MPoly {
    let lay = Layout::new(d);
    let mut e2 = vec![0; lay.nvars()];
    e2[Layout::E] = 2;
    if p.coefficient(&e2) < BigRational::zero() {
        p.scale_int(-1)
    } else {
        p.clone()
    }
}

/// Substitutes `a_i = 0` and `a = a_value`, derives the quadric and the
/// `q = Q = 0` stratum, and tests membership of the predicted points.
pub fn fixed_locus_analysis(d: u32, a_value: &BigRational) -> FixedLocus {
    assert!(d >= 3, "fixed locus analysis needs d >= 3");
    let lay = Layout::new(d);
    let n = lay.nvars();
    let nm = names(d);
    let zero = BigRational::zero();
    let mut rep = CheckReport::new("tau-fixed", d);

    let on_fixed: Vec<Relation> = calogero_moser_system(d)
        .into_iter()
        .map(|r| {
            let mut p = r.poly.substitute(lay.param(), a_value);
            for i in 0..=d {
                p = p.substitute(lay.a_index(i), &zero);
            }
            Relation { id: r.id, poly: p }
        })
        .collect();
    let (zi, zij): (Vec<_>, Vec<_>) = on_fixed.into_iter().partition(|r| !r.id.contains(','));
    let nonzero: Vec<&str> = zi.iter().filter(|r| !r.poly.is_zero()).map(|r| r.id.as_str()).collect();
    rep.push(Check::from_bool("tau/fixed/Z_i-vanish", nonzero.is_empty(), || nonzero.join(", ")));

    let rel = |id: &str| zij.iter().find(|r| r.id == id).map(|r| r.poly.clone()).expect("relation present");
    let from_q = normalize_e2(d, &strip_power(&rel("Z_1,1"), Layout::Q));
    let from_big_q = normalize_e2(d, &strip_power(&rel(&format!("Z_{0},{0}", d - 1)), Layout::BIG_Q));
    rep.push(Check::compare("tau/fixed/quadric-agrees", &from_q, &from_big_q, |p| p.render(&nm), || {
        from_q.sub(&from_big_q).render(&nm)
    }));

    let v = |i| MPoly::var(n, i);
    let da2 = BigRational::from_integer((d * d).into()) * a_value * a_value;
    let expected = v(Layout::E)
        .pow(2)
        .sub(&v(Layout::Q).mul(&v(Layout::BIG_Q)).scale_int(4))
        .sub(&MPoly::constant(n, da2.clone()));
    rep.push(Check::compare("tau/fixed/quadric", &from_q, &expected, |p| p.render(&nm), || {
        from_q.sub(&expected).render(&nm)
    }));

    // the displayed form without the factor 4 on qQ
    let displayed = v(Layout::E)
        .pow(2)
        .sub(&v(Layout::Q).mul(&v(Layout::BIG_Q)))
        .sub(&MPoly::constant(n, da2.clone()));
    let differs = from_q != displayed;
    rep.push(
        Check::from_bool("tau/fixed/display-discrepancy-flagged", differs, || {
            "derived quadric unexpectedly equals e^2 - qQ - d^2a^2".into()
        })
        .with_detail(json!({
            "derived": from_q.render(&nm),
            "displayed": displayed.render(&nm),
            "displayed_factored": "(e - d*a)*(e + d*a) = q*Q",
            "matches_display": !differs,
            "note": "the displayed equation lacks the factor 4 on qQ carried by the relations; the derived form is used",
        })),
    );

    // every residual equation is a multiple of the quadric
    let not_multiple: Vec<String> = zij
        .iter()
        .filter(|r| {
            let mut p = r.poly.clone();
            for var in [Layout::Q, Layout::BIG_Q] {
                p = strip_power(&p, var);
            }
            // remaining cofactor is Ψ_{j−i}(e, q, Q); test divisibility by evaluation on quadric samples
            sample_quadric_points(d, a_value, 7).iter().any(|pt| {
                let mut vals = pt.coords.clone();
                vals.push(a_value.clone());
                !p.evaluate(&vals).is_zero()
            })
        })
        .map(|r| r.id.clone())
        .collect();
    rep.push(Check::from_bool("tau/fixed/residuals-vanish-on-quadric", not_multiple.is_empty(), || {
        not_multiple.join(", ")
    }));

    // stratum q = Q = 0
    let stratum_eqs: Vec<MPoly> = zij
        .iter()
        .map(|r| r.poly.substitute(Layout::Q, &zero).substitute(Layout::BIG_Q, &zero))
        .filter(|p| !p.is_zero())
        .collect();
    let want_stratum = v(Layout::E)
        .pow(2)
        .sub(&MPoly::constant(n, da2.clone()))
        .mul(&v(Layout::E).pow(d - 2));
    let stratum = match stratum_eqs.first() {
        Some(p) if *p == want_stratum.scale_int(-1) => want_stratum.clone(),
        Some(p) => p.clone(),
        None => MPoly::zero(n),
    };
    let stratum_ok = stratum_eqs.len() == 1 && stratum == want_stratum;
    rep.push(Check::from_bool("tau/fixed/stratum", stratum_ok, || {
        let s: Vec<String> = stratum_eqs.iter().map(|p| p.render(&nm)).collect();
        s.join("; ")
    }).with_detail(json!({ "equation": stratum.render(&nm) })));

    let full = calogero_moser_system(d);
    let da = BigRational::from_integer(d.into()) * a_value;
    let isolated = [
        ("origin", zero.clone()),
        ("e=+da", da.clone()),
        ("e=-da", -da.clone()),
    ];
    for (label, e) in isolated {
        let pt = VarietyPoint::from_triple(d, zero.clone(), zero.clone(), e, a_value.clone());
        rep.push(Check::from_bool(format!("tau/fixed/point/{label}"), is_on_variety(&pt, &full), || {
            let r: Vec<String> = evaluate_point(&pt, &full).iter().map(fmt_rational).collect();
            format!("residuals [{}]", r.join(", "))
        }));
    }
    let off = VarietyPoint::from_triple(d, zero.clone(), zero.clone(), da.clone() + BigRational::one(), a_value.clone());
    rep.push(Check::from_bool("tau/fixed/point/off-stratum-rejected", !is_on_variety(&off, &full), || {
        "(0, 0, da + 1) accepted".into()
    }));
    let samples = sample_quadric_points(d, a_value, 21);
    let bad: Vec<String> = samples
        .iter()
        .filter(|p| !is_on_variety(p, &full))
        .map(|p| fmt_rational(&p.coords[Layout::E]))
        .collect();
    rep.push(
        Check::from_bool("tau/fixed/quadric-samples", bad.is_empty() && samples.len() >= 20, || {
            format!("e = {}", bad.join(", "))
        })
        .with_detail(json!({ "samples": samples.len() })),
    );

    let mut residual_system = zi;
    residual_system.extend(zij);
    FixedLocus {
        report: rep,
        residual_system,
        quadric: from_q,
        stratum,
    }
}

/// The brackets of `eu² − 4qQ − d²a²` with `q`, `Q`, `eu` vanish in `Z_c`.
pub fn fixed_quadric_poisson_check(d: u32, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("tau-poisson", d);
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    let r = alg.ring();
    let f = if opts.is(Mutation::FixedQuadric) {
        alg.pow(&g.eu, 3).sub(&g.q)
    } else {
        let da2 = (&r.a() * &r.a()).scale_int((d * d) as i64);
        alg.mul(&g.eu, &g.eu)
            .sub(&alg.mul(&g.q, &g.big_q).scale_int(4))
            .sub(&alg.scalar(da2))
    };
    for (name, x) in [("q", &g.q), ("Q", &g.big_q), ("eu", &g.eu)] {
        let id = format!("tau/quadric-bracket/{name}");
        rep.push(match alg.poisson_zc(&f, x) {
            Ok(b) => Check::from_bool(id, b.is_zero(), || b.render_truncated(opts.max_terms)),
            Err(e) => Check::from_bool(id, false, || e.to_string()),
        });
    }
    rep
}

/// `τ` on `H_c`: fixes `q, Q, eu`, negates `a_i`, is an involution, is
/// multiplicative on sample products, and acts on the relations with the
/// expected parity.
pub fn tau_suite(d: u32, a_value: &BigRational, opts: &VerifyOptions) -> CheckReport {
    let mut rep = CheckReport::new("tau", d);
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    let max = opts.max_terms;
    let cmp = |id: String, lhs: &HElement, rhs: &HElement| {
        Check::compare(id, lhs, rhs, |h| h.render_truncated(max), || lhs.sub(rhs).render_truncated(max))
    };
    for (name, x) in [("q", &g.q), ("Q", &g.big_q), ("eu", &g.eu)] {
        rep.push(cmp(format!("tau/fixes/{name}"), &tau_act(x), x));
    }
    for (i, a) in g.a.iter().enumerate() {
        rep.push(cmp(format!("tau/negates/a{i}"), &tau_act(a), &a.neg()));
    }
    let mut span = alg.generators();
    span.extend([g.eu.clone(), g.a[0].clone(), alg.s(2), alg.group(crate::dihedral::GroupElement::rotation(d, 1))]);
    let invol = span.iter().all(|h| tau_act(&tau_act(h)) == *h);
    rep.push(Check::from_bool("tau/involution", invol, || "tau^2 != id on a generator".into()));
    let pairs = [
        (alg.big_x(), alg.x()),
        (alg.big_y(), alg.x()),
        (alg.mul(&alg.big_x(), &alg.big_y()), alg.mul(&alg.y(), &alg.s(1))),
        (alg.s(1), alg.big_x()),
    ];
    let hom = pairs
        .iter()
        .all(|(u, v)| tau_act(&alg.mul(u, v)) == alg.mul(&tau_act(u), &tau_act(v)));
    rep.push(Check::from_bool("tau/multiplicative", hom, || "tau(uv) != tau(u)tau(v)".into()));

    let mut parity_bad = Vec::new();
    for r in calogero_moser_system(d) {
        let sign = if r.id.contains(',') { 1 } else { -1 };
        if tau_on_coordinates(d, &r.poly) != r.poly.scale_int(sign) {
            parity_bad.push(r.id);
        }
    }
    rep.push(Check::from_bool("tau/relation-parity", parity_bad.is_empty(), || parity_bad.join(", ")));

    if d >= 3 && !a_value.is_zero() {
        rep.extend(fixed_locus_analysis(d, a_value).report.checks);
    }
    rep.extend(fixed_quadric_poisson_check(d, opts).checks);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn fixes_invariants_and_negates_a() {
        for d in 2..=6 {
            let alg = Algebra::new(d, 1);
            let g = Generators::new(&alg);
            assert_eq!(tau_act(&g.q), g.q);
            assert_eq!(tau_act(&g.big_q), g.big_q);
            assert_eq!(tau_act(&g.eu), g.eu);
            for a in &g.a {
                assert_eq!(tau_act(a), a.neg());
            }
        }
    }

    #[test]
    fn fixed_locus_d4_and_d5() {
        for d in [4, 5] {
            let f = fixed_locus_analysis(d, &q(1));
            assert!(f.report.passed(), "{:?}", f.report.failures().collect::<Vec<_>>());
        }
        // d = 4: (1, 5, 6) lies on e² − 4qQ = 16
        let pt = VarietyPoint::from_triple(4, q(1), q(5), q(6), q(1));
        assert!(is_on_variety(&pt, &calogero_moser_system(4)));
        let pt = VarietyPoint::from_triple(5, q(0), q(0), q(-5), q(1));
        assert!(is_on_variety(&pt, &calogero_moser_system(5)));
    }

    #[test]
    fn quadric_bracket_and_mutation() {
        assert!(fixed_quadric_poisson_check(4, &VerifyOptions::default()).passed());
        assert!(!fixed_quadric_poisson_check(4, &VerifyOptions::mutated(Mutation::FixedQuadric)).passed());
    }

    #[test]
    fn suite_passes() {
        let r = tau_suite(4, &q(1), &VerifyOptions::default());
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn sampler_points_lie_on_zc() {
        for d in 3..=6 {
            let sys = calogero_moser_system(d);
            for pt in sample_quadric_points(d, &q(2), 21) {
                assert!(is_on_variety(&pt, &sys));
            }
        }
    }

    fn element(d: u32, spec: &[(bool, u8, [u16; 4], i64)]) -> HElement {
        let alg = Algebra::new(d, 2);
        let mut h = alg.zero();
        for &(refl, idx, m, c) in spec {
            let w = if refl {
                crate::dihedral::GroupElement::reflection(d, idx as i64)
            } else {
                crate::dihedral::GroupElement::rotation(d, idx as i64)
            };
            h.add_term(w, Mono(m), &alg.ring().from_int(c));
        }
        h
    }

    fn term() -> impl Strategy<Value = (bool, u8, [u16; 4], i64)> {
        (any::<bool>(), 0u8..4, [0u16..2, 0u16..2, 0u16..2, 0u16..2], -2i64..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn tau_is_multiplicative(
            d in 3u32..=5,
            u in prop::collection::vec(term(), 1..3),
            v in prop::collection::vec(term(), 1..3),
        ) {
            let alg = Algebra::new(d, 2);
            let (u, v) = (element(d, &u), element(d, &v));
            prop_assert_eq!(tau_act(&alg.mul(&u, &v)), alg.mul(&tau_act(&u), &tau_act(&v)));
        }
    }
}
