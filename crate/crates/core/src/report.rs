//! Check results and the versioned JSON report (`cm-report/1`).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "cm-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// The two sides of a failed identity and their difference, rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(id: impl Into<String>, witness: Witness) -> Self {
        Check {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness),
            detail: None,
        }
    }

    /// Pass or fail on a boolean, with a plain-text reason on failure.
    pub fn from_bool(id: impl Into<String>, ok: bool, reason: impl FnOnce() -> String) -> Self {
        let id = id.into();
        if ok {
            Check::pass(id)
        } else {
            let r = reason();
            Check::fail(
                id.clone(),
                Witness {
                    relation: id,
                    lhs: r,
                    rhs: String::new(),
                    difference: String::new(),
                },
            )
        }
    }

    /// Compares two rendered values; `difference` is rendered only on failure.
    pub fn compare<T: PartialEq>(
        id: impl Into<String>,
        lhs: &T,
        rhs: &T,
        render: impl Fn(&T) -> String,
        difference: impl FnOnce() -> String,
    ) -> Self {
        let id = id.into();
        if lhs == rhs {
            Check::pass(id)
        } else {
            Check::fail(
                id.clone(),
                Witness {
                    relation: id,
                    lhs: render(lhs),
                    rhs: render(rhs),
                    difference: difference(),
                },
            )
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The checks of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub d: u32,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, d: u32) -> Self {
        CheckReport {
            name: name.into(),
            d,
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// `suite d=5: 42/42 pass`.
    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        format!("{} d={}: {}/{} pass", self.name, self.d, ok, self.checks.len())
    }
}

/// A full run: several suites at one `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub d: u32,
    pub a: String,
    pub suites: Vec<CheckReport>,
}

impl Report {
    pub fn new(d: u32, a: impl Into<String>) -> Self {
        Report {
            version: SCHEMA_VERSION,
            d,
            a: a.into(),
            suites: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(CheckReport::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Single-coefficient perturbations used as negative controls: each one must
/// make its verifier fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// `T^i` coefficient of `Ψ_i` shifted by one.
    PsiClosedForm,
    /// `(i+1)` replaced by `(i+2)` in the derivative identities.
    PsiDerivative,
    /// `4qQ` replaced by `3qQ` in the commutative relations.
    Z0Quadric,
    /// `(2i−d)` replaced by `(2i−d+1)` in `{eu_0, a_{i,0}}`.
    Z0Bracket,
    /// `d²a²` replaced by `(d²−1)a²` in the `Z_c` relations.
    ZcQuadric,
    /// `d(1+j−i−d)` replaced by `d(2+j−i−d)` in the truncation formula.
    Horreur,
    /// `j a_{j−1}` replaced by `(j+1) a_{j−1}` in `{q, a_j}`.
    PoissonTable,
    /// One coefficient of `Π` or `Φ` shifted by one before the residual check.
    PhiCoefficient,
    /// `ρ(b_{1,1})` doubled.
    RhoScale,
    /// The fixed-locus quadric replaced by `eu³ − q`.
    FixedQuadric,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::PsiClosedForm,
        Mutation::PsiDerivative,
        Mutation::Z0Quadric,
        Mutation::Z0Bracket,
        Mutation::ZcQuadric,
        Mutation::Horreur,
        Mutation::PoissonTable,
        Mutation::PhiCoefficient,
        Mutation::RhoScale,
        Mutation::FixedQuadric,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::PsiClosedForm => "psi-closed-form",
            Mutation::PsiDerivative => "psi-derivative",
            Mutation::Z0Quadric => "z0-quadric",
            Mutation::Z0Bracket => "z0-bracket",
            Mutation::ZcQuadric => "zc-quadric",
            Mutation::Horreur => "horreur",
            Mutation::PoissonTable => "poisson-table",
            Mutation::PhiCoefficient => "phi-coefficient",
            Mutation::RhoScale => "rho-scale",
            Mutation::FixedQuadric => "fixed-quadric",
        }
    }

    /// The suite whose verifier the mutation targets.
    pub fn suite(&self) -> &'static str {
        match self {
            Mutation::PsiClosedForm | Mutation::PsiDerivative => "psi",
            Mutation::Z0Quadric | Mutation::Z0Bracket => "z0",
            Mutation::ZcQuadric => "zc",
            Mutation::Horreur => "horreur",
            Mutation::PoissonTable => "poisson",
            Mutation::PhiCoefficient => "phi",
            Mutation::RhoScale => "sl2",
            Mutation::FixedQuadric => "tau",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Mutation::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| {
                let names: Vec<&str> = Mutation::ALL.iter().map(Mutation::name).collect();
                format!("unknown mutation '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// Settings shared by all verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Witness truncation.
    pub max_terms: usize,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_terms: 50,
            mutation: None,
        }
    }
}

impl VerifyOptions {
    pub fn mutated(m: Mutation) -> Self {
        VerifyOptions {
            mutation: Some(m),
            ..Self::default()
        }
    }

    pub fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_names_roundtrip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>().unwrap(), m);
        }
        assert!("nope".parse::<Mutation>().is_err());
    }

    #[test]
    fn report_json_shape() {
        let mut r = Report::new(3, "symbolic");
        let mut s = CheckReport::new("psi", 3);
        s.push(Check::pass("psi/closed-form/0"));
        s.push(Check::from_bool("psi/x", false, || "broken".into()));
        r.suites.push(s);
        assert!(!r.passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["version"], SCHEMA_VERSION);
        assert_eq!(v["suites"][0]["checks"][0]["status"], "pass");
        assert!(v["suites"][0]["checks"][0].get("witness").is_none());
        assert_eq!(v["suites"][0]["checks"][1]["witness"]["lhs"], "broken");
        assert!(v["suites"][0].get("elapsed_ms").is_none());
    }
}
