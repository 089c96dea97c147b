//! certify -> quotient -> socle -> associated form -> conditions -> SLP -> consistency.

use std::collections::BTreeMap;
use std::time::Instant;

use lefschetz_core::assocform::{associated_form, milnor_system, AssociatedForm};
use lefschetz_core::gradedalg::socle_functional;
use lefschetz_core::lefschetz::{slp_witness_search, SlpSearch, SlpVerdict, DEFAULT_COEFF_BOUND};
use lefschetz_core::poly::{determinant, gradient, jacobian_det};
use lefschetz_core::projgeom::{condition_smooth_assocform, condition_veronese_empty};
use lefschetz_core::{Error as CoreError, GradedQuotient, Poly, SystemInput, VarSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::report::*;

/// Mixes a master seed with an index (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-stage wall clock, or nothing.
pub struct Stopwatch {
    stages: Option<BTreeMap<String, f64>>,
}

impl Stopwatch {
    pub fn new(enabled: bool) -> Self {
        Stopwatch {
            stages: enabled.then(BTreeMap::new),
        }
    }

    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(stages) = &mut self.stages {
            *stages.entry(stage.to_string()).or_insert(0.0) += start.elapsed().as_secs_f64() * 1e3;
        }
        out
    }

    pub fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.stages
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Lefschetz degrees; `1` is always added for the implication check.
    pub ks: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: u64,
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            ks: vec![1],
            trials: 20,
            seed: 0,
            coeff_bound: DEFAULT_COEFF_BOUND,
            timing: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotCi,
    Inconsistent,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotCi => 1,
            Status::Inconsistent => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub status: Status,
}

fn requested_ks(ks: &[usize]) -> Vec<usize> {
    let mut out = ks.to_vec();
    out.push(1);
    out.sort_unstable();
    out.dedup();
    out
}

fn dual_names(n: usize) -> Vec<String> {
    VarSpace::Dual.default_names(n)
}

fn terms_of(form: &Poly, a: &AssociatedForm) -> Vec<Term> {
    a.coefficients()
        .iter()
        .map(|(m, _)| Term {
            exponents: m.exponents().to_vec(),
            coefficient: form.coeff(m).to_string(),
        })
        .collect()
}

fn assoc_report(a: &AssociatedForm) -> AssocFormReport {
    let names = dual_names(a.form().nvars());
    let projective = a.projective();
    AssocFormReport {
        degree: a.degree(),
        monomial_order: MONOMIAL_ORDER.to_string(),
        exact: terms_of(a.form(), a),
        projective: terms_of(&projective, a),
        exact_text: a.form().fmt_with(&names),
        projective_text: projective.fmt_with(&names),
        vars: names,
    }
}

fn slp_report(v: &SlpVerdict, vars: &[String]) -> SlpReport {
    SlpReport {
        k: v.k,
        map_degree: v.map_degree,
        outcome: v.outcome.as_str().to_string(),
        witness: v.witness.as_ref().map(|l| l.fmt_with(vars)),
        trials: v.trials,
        field: v.field.to_string(),
        degree_bound: v.degree_bound,
        sample_set_size: v.sample_set_size,
        symbolic_checked: v.symbolic_checked,
    }
}

/// Runs the whole pipeline on one system.
pub fn analyze(
    sys: SystemInput,
    opts: &AnalyzeOptions,
    source: &str,
    milnor: Option<MilnorEcho>,
) -> Result<Analysis> {
    let mut clock = Stopwatch::new(opts.timing);
    let vars = sys.var_names().to_vec();
    let ks = requested_ks(&opts.ks);
    let t = sys.socle_degree();
    if let Some(&k) = ks.iter().find(|&&k| 2 * k >= t) {
        return Err(CliError::Core(CoreError::KOutOfRange {
            k,
            socle_degree: t,
        }));
    }
    let input = InputEcho {
        source: source.to_string(),
        n: sys.nvars(),
        generators: sys.generators().iter().map(|g| g.fmt_with(&vars)).collect(),
        vars: vars.clone(),
        degrees: sys.degrees(),
        field: sys.field().to_string(),
        seed: opts.seed,
        k: ks.clone(),
        trials: opts.trials,
        coeff_bound: opts.coeff_bound,
        milnor,
    };
    let q = clock.time("certify", || GradedQuotient::new(sys));
    let verdict = q.ci_verdict().clone();
    let is_ci = CiReport {
        value: verdict.is_ci,
        counterexample_degree: verdict.first_excess_degree,
        expected_hilbert: verdict.expected.clone(),
    };
    if !verdict.is_ci {
        return Ok(Analysis {
            report: AnalysisReport {
                input,
                t,
                is_ci,
                hilbert: verdict.hilbert,
                socle: None,
                assoc_form: None,
                condition_smooth: None,
                condition_veronese: None,
                slp: Vec::new(),
                consistency: None,
                timing: clock.finish(),
            },
            status: Status::NotCi,
        });
    }
    let socle = clock.time("socle", || socle_functional(&q))?;
    let a = clock.time("assoc_form", || associated_form(&q, &socle))?;
    let smooth = clock.time("condition_smooth", || condition_smooth_assocform(&a))?;
    let veronese = clock.time("condition_veronese", || condition_veronese_empty(&q))?;
    let search = SlpSearch {
        trials: opts.trials,
        coeff_bound: opts.coeff_bound,
        symbolic: true,
    };
    let verdicts = clock.time("slp", || {
        ks.iter()
            .map(|&k| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(opts.seed, k as u64));
                slp_witness_search(&q, k, &search, &mut rng)
            })
            .collect::<lefschetz_core::Result<Vec<_>>>()
    })?;
    let slp1 = verdicts
        .iter()
        .find(|v| v.k == 1)
        .expect("k = 1 is always requested");
    let consistency = ConsistencyReport {
        a3_equivalence: smooth.artinian == veronese.empty,
        slp1_implication: !smooth.artinian || slp1.holds(),
    };
    let status = if consistency.a3_equivalence && consistency.slp1_implication {
        Status::Ok
    } else {
        Status::Inconsistent
    };
    let socle_name = socle.socle_monomial.fmt_with(&vars);
    let report = AnalysisReport {
        input,
        t,
        is_ci,
        hilbert: q.hilbert_function()[..=t].to_vec(),
        socle: Some(SocleReport {
            socle_monomial: socle_name,
            jacobian: socle.jacobian.fmt_with(&vars),
            c: socle.jacobian_coefficient.to_string(),
            omega_socle: socle.omega_of_socle.to_string(),
        }),
        assoc_form: Some(assoc_report(&a)),
        condition_smooth: Some(SmoothReport {
            value: smooth.artinian,
            form_degree: smooth.form_degree,
            decision_degree: smooth.decision_degree,
            quotient_dim: smooth.quotient_dim,
        }),
        condition_veronese: Some(VeroneseReport {
            value: veronese.empty,
            form_degree: veronese.certificate.form_degree,
            decision_degree: veronese.certificate.decision_degree,
            quotient_dim: veronese.certificate.quotient_dim,
            witness: veronese.witness.as_ref().map(|l| l.fmt_with(&vars)),
        }),
        slp: verdicts.iter().map(|v| slp_report(v, &vars)).collect(),
        consistency: Some(consistency),
        timing: clock.finish(),
    };
    Ok(Analysis { report, status })
}

/// `det` of the matrix of second partials.
pub fn hessian(f: &Poly) -> lefschetz_core::Result<Poly> {
    let n = f.nvars();
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| f.partial(i).partial(j)).collect())
        .collect();
    determinant(&rows)
}

/// The Milnor algebra of `f` through the same pipeline.
pub fn analyze_milnor(f: &Poly, vars: Vec<String>, opts: &AnalyzeOptions) -> Result<Analysis> {
    let grad = milnor_system(f)?;
    let sys = SystemInput::new(vars.clone(), grad.generators().to_vec(), f.field())?;
    let hess = hessian(f)?;
    let jac = jacobian_det(&gradient(f)?)?;
    let echo = MilnorEcho {
        form: f.fmt_with(&vars),
        degree: f.degree(),
        expected_t: f.nvars() * (f.degree() as usize - 2),
        hess_equals_jac: hess == jac,
    };
    let consistent = echo.hess_equals_jac && echo.expected_t == sys.socle_degree();
    let mut analysis = analyze(sys, opts, "milnor", Some(echo))?;
    if !consistent && analysis.status == Status::Ok {
        analysis.status = Status::Inconsistent;
    }
    Ok(analysis)
}
