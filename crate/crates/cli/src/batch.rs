//! Seeded batches of almost complete intersections.

use lefschetz_core::aci::{check_c1, power_in_aci_ideal, sample_aci, verify_thm_a2};
use lefschetz_core::lefschetz::{random_linear_form, DEFAULT_COEFF_BOUND};
use lefschetz_core::{FieldConfig, MultiDegree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::pipeline::{derive_seed, Stopwatch};
use crate::report::{AciBatchReport, AciSample};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AciOptions {
    pub multidegree: MultiDegree,
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: u64,
    pub field: FieldConfig,
    /// Linear forms per fixture.
    pub linear_forms: usize,
    pub jobs: usize,
    pub timing: bool,
}

impl AciOptions {
    pub fn new(multidegree: MultiDegree, samples: usize, seed: u64) -> Self {
        AciOptions {
            multidegree,
            samples,
            seed,
            coeff_bound: 10,
            field: FieldConfig::Rational,
            linear_forms: 100,
            jobs: 1,
            timing: true,
        }
    }
}

fn run_fixture(opts: &AciOptions, index: usize) -> lefschetz_core::Result<AciSample> {
    let seed = derive_seed(opts.seed, index as u64);
    let fx = sample_aci(&opts.multidegree, seed, opts.coeff_bound, opts.field);
    let report = verify_thm_a2(&fx);
    let t = fx.socle_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, u64::MAX));
    let mut c1_holds = 0;
    let mut power_outside_ideal = 0;
    for _ in 0..opts.linear_forms {
        let l = random_linear_form(&mut rng, fx.nvars(), opts.field, DEFAULT_COEFF_BOUND);
        c1_holds += check_c1(&l, t)? as usize;
        power_outside_ideal += !power_in_aci_ideal(&fx, &l)? as usize;
    }
    Ok(AciSample {
        index,
        seed,
        passed: report.passed(),
        failed_claims: report
            .failed
            .iter()
            .map(|c| c.as_str().to_string())
            .collect(),
        ideal_dims: report.ideal_dims.clone(),
        k_dims: report.k_dims.clone(),
        quotient_dim: report.quotient_dim,
        linear_forms: opts.linear_forms,
        c1_holds,
        power_outside_ideal,
    })
}

pub fn run_aci(opts: &AciOptions) -> Result<AciBatchReport> {
    let mut clock = Stopwatch::new(opts.timing);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()?;
    let details = clock.time("aci", || {
        pool.install(|| {
            (0..opts.samples)
                .into_par_iter()
                .map(|i| run_fixture(opts, i))
                .collect::<lefschetz_core::Result<Vec<_>>>()
        })
    })?;
    let n = opts.multidegree.nvars();
    let passed = details.iter().filter(|s| s.passed).count();
    let draws = opts.samples * opts.linear_forms;
    let rate = |count: usize, total: usize| (total > 0).then(|| count as f64 / total as f64);
    Ok(AciBatchReport {
        multidegree: opts.multidegree.degrees().to_vec(),
        n,
        t: opts.multidegree.socle_degree(),
        field: opts.field.to_string(),
        seed: opts.seed,
        coeff_bound: opts.coeff_bound,
        samples: opts.samples,
        passed,
        pass_rate: rate(passed, opts.samples),
        quotient_dim_on_passing: details
            .iter()
            .filter(|s| s.passed)
            .all(|s| s.quotient_dim == n),
        c1_rate: rate(details.iter().map(|s| s.c1_holds).sum(), draws),
        power_outside_ideal_rate: rate(details.iter().map(|s| s.power_outside_ideal).sum(), draws),
        details,
        timing: clock.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_batch() {
        let mut opts = AciOptions::new("2,2,2".parse().unwrap(), 0, 1);
        opts.timing = false;
        let r = run_aci(&opts).unwrap();
        assert_eq!(r.samples, 0);
        assert!(r.details.is_empty());
        assert_eq!(r.pass_rate, None);
    }

    #[test]
    fn small_batch() {
        let mut opts = AciOptions::new("2,2,3".parse().unwrap(), 4, 1);
        opts.linear_forms = 10;
        opts.timing = false;
        let r = run_aci(&opts).unwrap();
        assert_eq!(r.passed, 4);
        assert!(r.quotient_dim_on_passing);
        assert_eq!(r.c1_rate, Some(1.0));
        assert_eq!(r.power_outside_ideal_rate, Some(1.0));
    }
}
