//! Serializable reports. Field names are part of the published schema.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const MONOMIAL_ORDER: &str =
    "graded lexicographic with y1 > y2 > ... > yn; terms listed from largest to smallest";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    #[serde(rename = "T")]
    pub t: usize,
    pub is_ci: CiReport,
    pub hilbert: Vec<usize>,
    pub socle: Option<SocleReport>,
    pub assoc_form: Option<AssocFormReport>,
    pub condition_smooth: Option<SmoothReport>,
    pub condition_veronese: Option<VeroneseReport>,
    pub slp: Vec<SlpReport>,
    pub consistency: Option<ConsistencyReport>,
    /// Milliseconds per stage; absent with `--no-timing`.
    pub timing: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    /// `file`, `expr` or `milnor`.
    pub source: String,
    pub n: usize,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub degrees: Vec<u32>,
    pub field: String,
    pub seed: u64,
    pub k: Vec<usize>,
    pub trials: usize,
    pub coeff_bound: u64,
    pub milnor: Option<MilnorEcho>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MilnorEcho {
    pub form: String,
    pub degree: u32,
    /// `n (d - 2)`.
    #[serde(rename = "expected_T")]
    pub expected_t: usize,
    /// `Jac(grad f) = Hess(f)` as a polynomial identity.
    pub hess_equals_jac: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CiReport {
    pub value: bool,
    /// First degree where the quotient exceeds the complete-intersection series.
    pub counterexample_degree: Option<usize>,
    pub expected_hilbert: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SocleReport {
    pub socle_monomial: String,
    pub jacobian: String,
    /// `NF(Jac) = c * socle_monomial`.
    pub c: String,
    /// `omega(socle_monomial) = 1 / c`.
    pub omega_socle: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssocFormReport {
    pub vars: Vec<String>,
    pub degree: usize,
    pub monomial_order: String,
    /// Every monomial of degree `T`, including zero coefficients.
    pub exact: Vec<Term>,
    /// Scaled so the leading coefficient is 1.
    pub projective: Vec<Term>,
    pub exact_text: String,
    pub projective_text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothReport {
    pub value: bool,
    pub form_degree: u32,
    pub decision_degree: u32,
    pub quotient_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VeroneseReport {
    pub value: bool,
    pub form_degree: u32,
    pub decision_degree: u32,
    pub quotient_dim: usize,
    /// `l` with `l^(T-1) in J`, checked by normal form.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlpReport {
    pub k: usize,
    pub map_degree: usize,
    pub outcome: String,
    pub witness: Option<String>,
    pub trials: usize,
    pub field: String,
    /// Failure probability of one trial is at most `degree_bound / sample_set_size`.
    pub degree_bound: usize,
    pub sample_set_size: u64,
    pub symbolic_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    #[serde(rename = "thmA3_equivalence")]
    pub a3_equivalence: bool,
    #[serde(rename = "thmSLP1_implication")]
    pub slp1_implication: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AciSample {
    pub index: usize,
    pub seed: u64,
    pub passed: bool,
    pub failed_claims: Vec<String>,
    pub ideal_dims: Vec<usize>,
    pub k_dims: Vec<usize>,
    pub quotient_dim: usize,
    /// Linear forms drawn for the pure-power and ideal-membership checks.
    pub linear_forms: usize,
    pub c1_holds: usize,
    pub power_outside_ideal: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AciBatchReport {
    pub multidegree: Vec<u32>,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub field: String,
    pub seed: u64,
    pub coeff_bound: u64,
    pub samples: usize,
    pub passed: usize,
    pub pass_rate: Option<f64>,
    /// `dim (S/J(g))_(T-1) = n` on every passing sample.
    pub quotient_dim_on_passing: bool,
    pub c1_rate: Option<f64>,
    pub power_outside_ideal_rate: Option<f64>,
    pub details: Vec<AciSample>,
    pub timing: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSample {
    pub index: usize,
    pub seed: u64,
    /// Draws until a complete intersection appeared.
    pub draws: usize,
    pub field: String,
    pub escalated: bool,
    pub condition_smooth: bool,
    pub condition_veronese: bool,
    pub slp1: String,
    pub slp1_trials: usize,
    pub equivalence_ok: bool,
    pub implication_ok: bool,
    /// Q sweeps only: the F_p screen with Q re-verification agrees.
    pub screen_agrees: Option<bool>,
    pub line: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub multidegree: Vec<u32>,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub field: String,
    pub seed: u64,
    pub coeff_bound: Option<u64>,
    pub samples: usize,
    pub completed: usize,
    /// Samples with no complete intersection within the draw limit.
    pub exhausted: usize,
    pub total_draws: usize,
    pub ci_rate: Option<f64>,
    pub condition1_rate: Option<f64>,
    pub condition2_rate: Option<f64>,
    pub slp1_rate: Option<f64>,
    pub escalations: usize,
    pub equivalence_violations: usize,
    pub implication_violations: usize,
    pub screening_mismatches: usize,
    pub outcomes: Vec<SweepSample>,
    pub timing: Option<BTreeMap<String, f64>>,
}

impl SweepSummary {
    pub fn violations(&self) -> usize {
        self.equivalence_violations + self.implication_violations + self.screening_mismatches
    }
}
