//! Random complete intersections, screened over F_p with Q escalation.

use lefschetz_core::assocform::associated_form;
use lefschetz_core::gradedalg::socle_functional;
use lefschetz_core::lefschetz::{slp_witness_search, SlpOutcome, SlpSearch, DEFAULT_COEFF_BOUND};
use lefschetz_core::monomial::monomials_of_degree;
use lefschetz_core::projgeom::{condition_smooth_assocform, condition_veronese_empty, reduce_mod};
use lefschetz_core::scalar::DEFAULT_PRIME;
use lefschetz_core::{
    FieldConfig, GradedQuotient, MultiDegree, Poly, Scalar, SystemInput, VarSpace,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::pipeline::{derive_seed, Stopwatch};
use crate::report::{SweepSample, SweepSummary};

pub const DEFAULT_Q_BOUND: u64 = 10;
pub const MAX_DRAWS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub multidegree: MultiDegree,
    pub samples: usize,
    pub field: FieldConfig,
    pub seed: u64,
    /// Box for Q draws; ignored over F_p.
    pub coeff_bound: u64,
    pub trials: usize,
    pub jobs: usize,
    pub timing: bool,
}

impl SweepOptions {
    pub fn new(multidegree: MultiDegree, samples: usize, field: FieldConfig, seed: u64) -> Self {
        SweepOptions {
            multidegree,
            samples,
            field,
            seed,
            coeff_bound: DEFAULT_Q_BOUND,
            trials: 20,
            jobs: 1,
            timing: true,
        }
    }
}

/// Dense forms: every monomial gets a coefficient from `[-bound, bound]`
/// over Q or a uniform residue over F_p.
pub fn random_system<R: Rng + ?Sized>(
    rng: &mut R,
    degrees: &MultiDegree,
    field: FieldConfig,
    bound: u64,
) -> SystemInput {
    let n = degrees.nvars();
    let forms = degrees
        .degrees()
        .iter()
        .map(|&d| {
            let terms: Vec<_> = monomials_of_degree(n, d)
                .into_iter()
                .map(|m| {
                    let c = match field {
                        FieldConfig::Rational => {
                            let b = bound as i64;
                            field.from_i64(rng.gen_range(-b..=b))
                        }
                        FieldConfig::Prime(p) => Scalar::Fp {
                            v: rng.gen_range(0..p),
                            p,
                        },
                    };
                    (m, c)
                })
                .collect();
            Poly::from_terms(VarSpace::Primal, n, d, field, terms)
                .expect("homogeneous by construction")
        })
        .collect();
    SystemInput::from_generators(forms, field).expect("valid multidegree")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Verdicts {
    smooth: bool,
    veronese: bool,
    slp1: SlpOutcome,
    slp1_trials: usize,
}

impl Verdicts {
    fn same_verdicts(&self, other: &Verdicts) -> bool {
        (self.smooth, self.veronese, self.slp1) == (other.smooth, other.veronese, other.slp1)
    }

    fn all_positive(&self) -> bool {
        self.smooth && self.veronese && self.slp1 == SlpOutcome::HoldsWithWitness
    }
}

fn verdicts(q: &GradedQuotient, trials: usize, seed: u64) -> lefschetz_core::Result<Verdicts> {
    let socle = socle_functional(q)?;
    let a = associated_form(q, &socle)?;
    let smooth = condition_smooth_assocform(&a)?.artinian;
    let veronese = condition_veronese_empty(q)?.empty;
    let search = SlpSearch {
        trials,
        coeff_bound: DEFAULT_COEFF_BOUND,
        symbolic: true,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = slp_witness_search(q, 1, &search, &mut rng)?;
    Ok(Verdicts {
        smooth,
        veronese,
        slp1: v.outcome,
        slp1_trials: v.trials,
    })
}

fn lift_to_q(sys: &SystemInput) -> lefschetz_core::Result<SystemInput> {
    sys.map_field(FieldConfig::Rational, |c| Scalar::Q(c.lift_to_rational()))
}

/// The F_p screen of a Q system: positive verdicts mod `p` stand, any
/// negative is recomputed over Q.
fn screened(sys: &SystemInput, trials: usize, seed: u64) -> lefschetz_core::Result<Verdicts> {
    let field = FieldConfig::Prime(DEFAULT_PRIME);
    let reduced = sys
        .generators()
        .iter()
        .map(|g| reduce_mod(g, field))
        .collect::<lefschetz_core::Result<Vec<_>>>()
        .and_then(|forms| SystemInput::new(sys.var_names().to_vec(), forms, field));
    if let Ok(reduced) = reduced {
        let q = GradedQuotient::new(reduced);
        if q.is_ci() {
            let v = verdicts(&q, trials, seed)?;
            if v.all_positive() {
                return Ok(v);
            }
        }
    }
    verdicts(&GradedQuotient::new(sys.clone()), trials, seed)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_sample(opts: &SweepOptions, index: usize) -> lefschetz_core::Result<Option<SweepSample>> {
    let seed = derive_seed(opts.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slp_seed = derive_seed(seed, u64::MAX);
    for draw in 1..=MAX_DRAWS {
        let sys = random_system(&mut rng, &opts.multidegree, opts.field, opts.coeff_bound);
        let q = GradedQuotient::new(sys.clone());
        if !q.is_ci() {
            continue;
        }
        let mut v = verdicts(&q, opts.trials, slp_seed)?;
        let mut field = opts.field;
        let mut escalated = false;
        let mut screen_agrees = None;
        match opts.field {
            FieldConfig::Prime(_) if !v.all_positive() => {
                let lifted = GradedQuotient::new(lift_to_q(&sys)?);
                lifted.require_ci()?;
                v = verdicts(&lifted, opts.trials, slp_seed)?;
                field = FieldConfig::Rational;
                escalated = true;
            }
            FieldConfig::Prime(_) => {}
            FieldConfig::Rational => {
                screen_agrees = Some(screened(&sys, opts.trials, slp_seed)?.same_verdicts(&v));
            }
        }
        let equivalence_ok = v.smooth == v.veronese;
        let implication_ok = !v.smooth || v.slp1 == SlpOutcome::HoldsWithWitness;
        let line = format!(
            "#{index:04} draws={draw} field={field} smooth={} veronese={} slp1={} escalated={}{}",
            yes(v.smooth),
            yes(v.veronese),
            v.slp1.as_str(),
            yes(escalated),
            if equivalence_ok && implication_ok && screen_agrees != Some(false) {
                ""
            } else {
                " VIOLATION"
            }
        );
        return Ok(Some(SweepSample {
            index,
            seed,
            draws: draw,
            field: field.to_string(),
            escalated,
            condition_smooth: v.smooth,
            condition_veronese: v.veronese,
            slp1: v.slp1.as_str().to_string(),
            slp1_trials: v.slp1_trials,
            equivalence_ok,
            implication_ok,
            screen_agrees,
            line,
        }));
    }
    Ok(None)
}

fn rate(count: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| count as f64 / total as f64)
}

pub fn run_sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    let mut clock = Stopwatch::new(opts.timing);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()?;
    let results = clock.time("sweep", || {
        pool.install(|| {
            (0..opts.samples)
                .into_par_iter()
                .map(|i| run_sample(opts, i))
                .collect::<lefschetz_core::Result<Vec<_>>>()
        })
    })?;
    let exhausted = results.iter().filter(|r| r.is_none()).count();
    let outcomes: Vec<SweepSample> = results.into_iter().flatten().collect();
    let completed = outcomes.len();
    let total_draws = outcomes.iter().map(|s| s.draws).sum::<usize>() + exhausted * MAX_DRAWS;
    let count = |f: fn(&SweepSample) -> bool| outcomes.iter().filter(|s| f(s)).count();
    Ok(SweepSummary {
        multidegree: opts.multidegree.degrees().to_vec(),
        n: opts.multidegree.nvars(),
        t: opts.multidegree.socle_degree(),
        field: opts.field.to_string(),
        seed: opts.seed,
        coeff_bound: opts.field.is_rational().then_some(opts.coeff_bound),
        samples: opts.samples,
        completed,
        exhausted,
        total_draws,
        ci_rate: rate(completed, total_draws),
        condition1_rate: rate(count(|s| s.condition_smooth), completed),
        condition2_rate: rate(count(|s| s.condition_veronese), completed),
        slp1_rate: rate(count(|s| s.slp1 == "HOLDS_WITH_WITNESS"), completed),
        escalations: count(|s| s.escalated),
        equivalence_violations: count(|s| !s.equivalence_ok),
        implication_violations: count(|s| !s.implication_ok),
        screening_mismatches: count(|s| s.screen_agrees == Some(false)),
        outcomes,
        timing: clock.finish(),
    })
}
