//! The variety `Z_c ⊂ C^{d+4}`, its tangent space at the origin, and the Lie
//! algebra `Lie_0(Z_c)` on `m_0/m_0²`.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cherednik::{Algebra, HElement};
use crate::linalg::Matrix;
use crate::mpoly::{calogero_moser_system, Layout, Relation};
use crate::report::{Check, CheckReport};
use crate::scalar::fmt_rational;
use crate::verify::{phi_decomposition, Generators};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CuspidalError {
    #[error("the cuspidal Lie algebra needs d >= 4, got d = {0}")]
    SmallD(u32),
    #[error("a must be nonzero")]
    ZeroParameter,
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("bracket {0} is not a multiple of a single generator")]
    NonLinear(String),
    #[error("bracket {0}: {1}")]
    Engine(String, String),
}

/// A point `(q, Q, e, a_0, …, a_d)` together with the value of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPoint {
    pub coords: Vec<BigRational>,
    pub a_value: BigRational,
}

impl VarietyPoint {
    pub fn new(d: u32, coords: Vec<BigRational>, a_value: BigRational) -> Result<Self, CuspidalError> {
        let expected = Layout::new(d).dim();
        if coords.len() != expected {
            return Err(CuspidalError::Dimension {
                got: coords.len(),
                expected,
            });
        }
        Ok(VarietyPoint { coords, a_value })
    }

    pub fn origin(d: u32, a_value: BigRational) -> Self {
        VarietyPoint {
            coords: vec![BigRational::zero(); Layout::new(d).dim()],
            a_value,
        }
    }

    /// A point with all `a_i = 0`.
    pub fn from_triple(d: u32, q: BigRational, big_q: BigRational, e: BigRational, a_value: BigRational) -> Self {
        let mut p = Self::origin(d, a_value);
        p.coords[Layout::Q] = q;
        p.coords[Layout::BIG_Q] = big_q;
        p.coords[Layout::E] = e;
        p
    }

    pub fn d(&self) -> u32 {
        (self.coords.len() - 4) as u32
    }

    fn assignment(&self) -> Vec<BigRational> {
        let mut v = self.coords.clone();
        v.push(self.a_value.clone());
        v
    }
}

/// Exact residuals of every relation at the point.
pub fn evaluate_point(pt: &VarietyPoint, system: &[Relation]) -> Vec<BigRational> {
    let vals = pt.assignment();
    system.iter().map(|r| r.poly.evaluate(&vals)).collect()
}

pub fn is_on_variety(pt: &VarietyPoint, system: &[Relation]) -> bool {
    evaluate_point(pt, system).iter().all(Zero::is_zero)
}

/// Jacobian of the relations at the origin with `a` specialized.
pub fn jacobian_at_origin(d: u32, a_value: &BigRational) -> Matrix {
    let lay = Layout::new(d);
    let origin = VarietyPoint::origin(d, a_value.clone()).assignment();
    let rows = calogero_moser_system(d)
        .iter()
        .map(|r| (0..lay.dim()).map(|v| r.poly.derivative(v).evaluate(&origin)).collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Lowest degree in the coordinates of each relation with `a` specialized.
pub fn min_degrees_at_origin(d: u32, a_value: &BigRational) -> Vec<(String, Option<u32>)> {
    let lay = Layout::new(d);
    let mut mask = vec![true; lay.nvars()];
    mask[lay.param()] = false;
    calogero_moser_system(d)
        .into_iter()
        .map(|r| {
            let p = r.poly.substitute(lay.param(), a_value);
            (r.id, p.min_degree(&mask))
        })
        .collect()
}

/// `d + 4 − rank(J(0))`.
pub fn tangent_dim_origin(d: u32, a_value: &BigRational) -> usize {
    Layout::new(d).dim() - jacobian_at_origin(d, a_value).rank()
}

/// Structure constants of a Lie algebra on a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieTable {
    pub labels: Vec<String>,
    /// `(i, j, k) ↦ c` with `[b_i, b_j] = Σ_k c b_k`; zero entries omitted.
    pub constants: BTreeMap<(usize, usize, usize), BigRational>,
}

impl LieTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim()];
        for ((_, _, k), c) in self.constants.range((i, j, 0)..=(i, j, usize::MAX)) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, u: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for ((i, j, k), c) in &self.constants {
            if u[*i].is_zero() || v[*j].is_zero() {
                continue;
            }
            out[*k] += &u[*i] * &v[*j] * c;
        }
        out
    }

    /// `ad(b_i)` as a matrix acting on column vectors.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for ((a, j, k), c) in &self.constants {
            if *a == i {
                m[(*k, *j)] = c.clone();
            }
        }
        m
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(i)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                k[(i, j)] = ads[i].mul(&ads[j]).trace();
            }
        }
        k
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[i] = BigRational::one();
        v
    }

    /// Pairs `(i, j)` where `[b_i, b_j] ≠ −[b_j, b_i]`.
    pub fn antisymmetry_failures(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i..n {
                let (u, v) = (self.bracket_basis(i, j), self.bracket_basis(j, i));
                if u.iter().zip(&v).any(|(a, b)| !(a + b).is_zero()) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Triples `i < j < k` violating the Jacobi identity.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let b = |i| self.basis_vector(i);
        let mut bad = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket(&b(i), &self.bracket_basis(j, k));
                    let t2 = self.bracket(&b(j), &self.bracket_basis(k, i));
                    let t3 = self.bracket(&b(k), &self.bracket_basis(i, j));
                    if (0..n).any(|m| !(&t1[m] + &t2[m] + &t3[m]).is_zero()) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    pub fn to_json(&self) -> Value {
        let consts: Vec<Value> = self
            .constants
            .iter()
            .map(|((i, j, k), c)| json!([i, j, k, fmt_rational(c)]))
            .collect();
        json!({ "basis": self.labels, "constants": consts })
    }
}

pub fn lie_labels(d: u32) -> Vec<String> {
    let mut v = vec!["q\u{307}".to_string(), "Q\u{307}".into(), "e\u{307}".into()];
    v.extend((0..=d).map(|i| format!("a\u{307}{i}")));
    v
}

/// Finds `c` and `k` with `b = c · gens[k]`; `None` for `b = 0`.
fn as_generator_multiple(b: &HElement, gens: &[HElement]) -> Option<Option<(usize, BigRational)>> {
    if b.is_zero() {
        return Some(None);
    }
    for (k, g) in gens.iter().enumerate() {
        let Some(((w, m), cg)) = g.terms().find(|(_, c)| c.as_rational().is_some()) else {
            continue;
        };
        let Some(cb) = b.coefficient(w, m).as_rational() else {
            continue;
        };
        let c = cb / cg.as_rational().expect("checked rational");
        if c.is_zero() {
            continue;
        }
        if g.scale(&b.ring().from_rational(&c)) == *b {
            return Some(Some((k, c)));
        }
    }
    None
}

/// Structure constants of `Lie_0(Z_c)` at `a = a_value`.
///
/// Brackets of `q, Q, eu` with every generator are exact multiples of single
/// generators and are read off from the engine; `[ȧ_i, ȧ_j]` is the linear
/// part of `Π_{i,j} + a² Φ_{i,j}`.
pub fn lie_algebra_at_origin(d: u32, a_value: &BigRational) -> Result<LieTable, CuspidalError> {
    if d < 4 {
        return Err(CuspidalError::SmallD(d));
    }
    if a_value.is_zero() {
        return Err(CuspidalError::ZeroParameter);
    }
    let labels = lie_labels(d);
    let n = labels.len();
    let alg = Algebra::new(d, 1);
    let g = Generators::new(&alg);
    let mut gens = vec![g.q.clone(), g.big_q.clone(), g.eu.clone()];
    gens.extend(g.a.iter().cloned());

    let linear_pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let linear: Vec<Result<Vec<((usize, usize, usize), BigRational)>, CuspidalError>> = linear_pairs
        .par_iter()
        .map(|&(i, j)| {
            let id = format!("[{},{}]", labels[i], labels[j]);
            let b = alg
                .poisson_zc(&gens[i], &gens[j])
                .map_err(|e| CuspidalError::Engine(id.clone(), e.to_string()))?;
            let m = as_generator_multiple(&b, &gens).ok_or_else(|| CuspidalError::NonLinear(id))?;
            Ok(match m {
                None => vec![],
                Some((k, c)) => vec![((i, j, k), c.clone()), ((j, i, k), -c)],
            })
        })
        .collect();

    let a2 = a_value * a_value;
    let a_pairs: Vec<(u32, u32)> = (0..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    let quadratic: Vec<Result<Vec<((usize, usize, usize), BigRational)>, CuspidalError>> = a_pairs
        .par_iter()
        .map(|&(i, j)| {
            let dec = phi_decomposition(d, i, j, false)
                .map_err(|e| CuspidalError::Engine(format!("[a{i},a{j}]"), e.to_string()))?;
            let (ri, rj) = (3 + i as usize, 3 + j as usize);
            let mut out = Vec::new();
            // T ↦ ė, T' ↦ q̇, T'' ↦ Q̇
            for (e, k) in [([1u16, 0, 0], 2usize), ([0, 1, 0], 0), ([0, 0, 1], 1)] {
                let c = dec.pi.coefficient(&e) + &a2 * dec.phi.coefficient(&e);
                if !c.is_zero() {
                    out.push(((ri, rj, k), c.clone()));
                    out.push(((rj, ri, k), -c));
                }
            }
            Ok(out)
        })
        .collect();

    let mut constants = BTreeMap::new();
    for part in linear.into_iter().chain(quadratic) {
        for (key, c) in part? {
            // entries with both indices < 3 are produced twice; they must agree
            if let Some(prev) = constants.insert(key, c.clone()) {
                if prev != c {
                    return Err(CuspidalError::Engine(format!("{key:?}"), "inconsistent bracket".into()));
                }
            }
        }
    }
    Ok(LieTable { labels, constants })
}

/// Isomorphism types recognized by [`classify_lie`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieType {
    Sl3,
    /// `sl_2 ⋉ S` with `S` an abelian ideal that is an irreducible module.
    Sl2Irreducible { module_dim: usize },
    Unidentified,
}

impl LieType {
    pub fn name(&self) -> &'static str {
        match self {
            LieType::Sl3 => "sl3",
            LieType::Sl2Irreducible { .. } => "sl2+irreducible-abelian",
            LieType::Unidentified => "unidentified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieClassification {
    pub kind: LieType,
    pub description: String,
    pub killing_rank: usize,
    /// Why each recognizer rejected the table.
    pub notes: Vec<String>,
}

impl LieClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "classification": self.kind.name(),
            "description": self.description,
            "killing_rank": self.killing_rank,
            "notes": self.notes,
        })
    }
}

/// Checks `(e, h, f) = (Q̇, ė, −q̇)` is an sl₂-triple, `span(ȧ_j)` is an abelian
/// ideal, `ad(ė)` acts on it diagonally with weights `−d, −d+2, …, d`, and
/// `ad(Q̇)` is injective off the top weight.
fn check_sl2_irreducible(t: &LieTable) -> Result<usize, String> {
    let n = t.dim();
    if n < 4 {
        return Err("dimension below 4".into());
    }
    let s = n - 3;
    let d = s as i64 - 1;
    let zero = vec![BigRational::zero(); n];
    let (q, bq, e) = (t.basis_vector(0), t.basis_vector(1), t.basis_vector(2));
    let f: Vec<BigRational> = q.iter().map(|c| -c).collect();
    let scaled = |v: &[BigRational], k: i64| -> Vec<BigRational> {
        v.iter().map(|c| c * BigRational::from_integer(k.into())).collect()
    };
    if t.bracket(&e, &bq) != scaled(&bq, 2) {
        return Err("[h, e] != 2e".into());
    }
    if t.bracket(&e, &f) != scaled(&f, -2) {
        return Err("[h, f] != -2f".into());
    }
    if t.bracket(&bq, &f) != e {
        return Err("[e, f] != h".into());
    }
    for i in 3..n {
        for j in 3..n {
            if t.bracket_basis(i, j) != zero {
                return Err(format!("[{}, {}] != 0", t.labels[i], t.labels[j]));
            }
        }
        for x in 0..3 {
            let b = t.bracket_basis(x, i);
            if b[..3].iter().any(|c| !c.is_zero()) {
                return Err(format!("[{}, {}] leaves the ideal", t.labels[x], t.labels[i]));
            }
        }
    }
    let ad_h = t.ad(2);
    let mut weights = Vec::new();
    for i in 3..n {
        for k in 3..n {
            if k != i && !ad_h[(k, i)].is_zero() {
                return Err("ad(h) is not diagonal on the ideal".into());
            }
        }
        weights.push(ad_h[(i, i)].clone());
    }
    let mut sorted = weights.clone();
    sorted.sort();
    let expected: Vec<BigRational> = (0..=d).map(|j| BigRational::from_integer((2 * j - d).into())).collect();
    if sorted != expected {
        let w: Vec<String> = weights.iter().map(fmt_rational).collect();
        return Err(format!("weights [{}]", w.join(", ")));
    }
    let top = BigRational::from_integer(d.into());
    let ad_e = t.ad(1);
    for i in 3..n {
        if weights[i - 3] == top {
            continue;
        }
        if (3..n).all(|k| ad_e[(k, i)].is_zero()) {
            return Err(format!("ad(e) kills {}", t.labels[i]));
        }
    }
    Ok(s)
}

pub fn classify_lie(t: &LieTable) -> LieClassification {
    let killing_rank = t.killing_form().rank();
    let mut notes = Vec::new();
    match check_sl2_irreducible(t) {
        Ok(s) => {
            return LieClassification {
                kind: LieType::Sl2Irreducible { module_dim: s },
                description: format!("sl2 \u{2295} irreducible abelian S_{} (dim {s})", s - 1),
                killing_rank,
                notes,
            }
        }
        Err(e) => notes.push(format!("sl2 + abelian ideal: {e}")),
    }
    if t.dim() == 8 && killing_rank == 8 {
        return LieClassification {
            kind: LieType::Sl3,
            description: "sl3 (dim 8, Killing rank 8)".into(),
            killing_rank,
            notes,
        };
    }
    notes.push(format!("dim {}, Killing rank {killing_rank}", t.dim()));
    LieClassification {
        kind: LieType::Unidentified,
        description: format!("unidentified (dim {}, Killing rank {killing_rank})", t.dim()),
        killing_rank,
        notes,
    }
}

/// The type `classify_lie` must return at a given `d ≥ 4`.
pub fn expected_lie_type(d: u32) -> LieType {
    if d == 4 {
        LieType::Sl3
    } else {
        LieType::Sl2Irreducible { module_dim: d as usize + 1 }
    }
}

/// Tangent space, Lie table axioms, classification and its stability under
/// rescaling `a`.
pub fn lie_suite(d: u32, a_value: &BigRational) -> CheckReport {
    let mut rep = CheckReport::new("lie", d);
    if d < 4 {
        rep.push(Check::pass("lie/not-applicable").with_detail(json!("requires d >= 4")));
        return rep;
    }
    if a_value.is_zero() {
        rep.push(Check::from_bool("lie/a-nonzero", false, || "a = 0".into()));
        return rep;
    }
    let dim = tangent_dim_origin(d, a_value);
    rep.push(Check::from_bool("lie/tangent-dim", dim == d as usize + 4, || {
        format!("tangent dimension {dim}, expected {}", d + 4)
    }));
    let mins = min_degrees_at_origin(d, a_value);
    let bad: Vec<String> = mins
        .iter()
        .filter(|(_, m)| *m != Some(2))
        .map(|(id, m)| format!("{id}: {m:?}"))
        .collect();
    rep.push(Check::from_bool("lie/min-degree-2", bad.is_empty(), || bad.join("; ")));

    let table = match lie_algebra_at_origin(d, a_value) {
        Ok(t) => t,
        Err(e) => {
            rep.push(Check::from_bool("lie/table", false, || e.to_string()));
            return rep;
        }
    };
    let anti = table.antisymmetry_failures();
    rep.push(Check::from_bool("lie/antisymmetry", anti.is_empty(), || format!("{anti:?}")));
    let jac = table.jacobi_failures();
    rep.push(Check::from_bool("lie/jacobi", jac.is_empty(), || format!("{jac:?}")));
    let cls = classify_lie(&table);
    let want = expected_lie_type(d);
    rep.push(
        Check::from_bool("lie/classification", cls.kind == want, || {
            format!("got {} ({}), expected {}", cls.description, cls.notes.join("; "), want.name())
        })
        .with_detail(cls.to_json()),
    );
    let aa_nonzero = (3..table.dim()).any(|i| (3..table.dim()).any(|j| table.bracket_basis(i, j).iter().any(|c| !c.is_zero())));
    rep.push(Check::from_bool("lie/a-brackets", aa_nonzero == (d == 4), || {
        format!("some [a_i, a_j] nonzero: {aa_nonzero}")
    }));
    for lambda in [2, 3] {
        let scaled = a_value * BigRational::from_integer(lambda.into());
        let id = format!("lie/scaling/{lambda}");
        match lie_algebra_at_origin(d, &scaled) {
            Ok(t) => {
                let c = classify_lie(&t);
                rep.push(Check::from_bool(id, c.kind == cls.kind, || c.description.clone()));
            }
            Err(e) => rep.push(Check::from_bool(id, false, || e.to_string())),
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{relation_system, MPoly};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn tangent_space_at_origin() {
        for d in 4..=6 {
            assert_eq!(tangent_dim_origin(d, &q(1)), d as usize + 4);
            assert!(min_degrees_at_origin(d, &q(1)).iter().all(|(_, m)| *m == Some(2)));
        }
        // d = 3: the a²-term makes some relations linear
        assert!(tangent_dim_origin(3, &q(1)) < 7);
    }

    #[test]
    fn d3_t_system_is_z0() {
        let lay = Layout::new(3);
        let sys = relation_system(3, &[MPoly::zero(lay.nvars()), MPoly::one(lay.nvars())]);
        assert_eq!(sys.len(), 5);
        assert!(sys.iter().all(|r| r.poly.is_free_of(lay.param())));
    }

    #[test]
    fn membership() {
        let d = 5;
        let sys = calogero_moser_system(d);
        assert!(is_on_variety(&VarietyPoint::origin(d, q(1)), &sys));
        let mut coords = vec![q(0); 9];
        coords[3] = q(1);
        coords[5] = q(1);
        let p = VarietyPoint::new(d, coords, q(1)).unwrap();
        assert!(!is_on_variety(&p, &sys));
        assert!(VarietyPoint::new(d, vec![q(0); 3], q(1)).is_err());
    }

    #[test]
    fn lie_table_d5() {
        let t = lie_algebra_at_origin(5, &q(1)).unwrap();
        assert!(t.antisymmetry_failures().is_empty());
        assert!(t.jacobi_failures().is_empty());
        // [Q̇, ė] = −2 Q̇
        assert_eq!(t.bracket_basis(1, 2)[1], q(-2));
        let c = classify_lie(&t);
        assert_eq!(c.kind, LieType::Sl2Irreducible { module_dim: 6 });
        assert_eq!(c.description, "sl2 \u{2295} irreducible abelian S_5 (dim 6)");
    }

    #[test]
    fn lie_table_d4_is_sl3() {
        let t = lie_algebra_at_origin(4, &q(1)).unwrap();
        assert!(t.jacobi_failures().is_empty());
        let c = classify_lie(&t);
        assert_eq!(c.kind, LieType::Sl3, "{c:?}");
        assert_eq!(c.description, "sl3 (dim 8, Killing rank 8)");
    }

    #[test]
    fn rejects_small_d_and_zero_a() {
        assert_eq!(lie_algebra_at_origin(3, &q(1)), Err(CuspidalError::SmallD(3)));
        assert_eq!(lie_algebra_at_origin(5, &q(0)), Err(CuspidalError::ZeroParameter));
    }
}
