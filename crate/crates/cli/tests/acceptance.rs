//! Acceptance criteria, one line each. Run with
//! `cargo test -p lefschetz-lab --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use lefschetz_core::assocform::{apolar_annihilator_dims, associated_form, milnor_system};
use lefschetz_core::gradedalg::{gorenstein_pairing_check, socle_functional};
use lefschetz_core::lefschetz::{lefschetz_matrix, slp_witness_search, SlpSearch};
use lefschetz_core::linalg::Matrix;
use lefschetz_core::monomial::{count_monomials, monomials_of_degree};
use lefschetz_core::poly::{apolar_apply, jacobian_det};
use lefschetz_core::projgeom::{
    condition_smooth_assocform, condition_veronese_empty, power_in_ideal,
};
use lefschetz_core::scalar::DEFAULT_PRIME;
use lefschetz_core::{
    parse_poly, FieldConfig, GradedQuotient, Poly, Scalar, SystemInput, VarSpace,
};
use lefschetz_lab::batch::{run_aci, AciOptions};
use lefschetz_lab::sweep::{random_system, run_sweep, SweepOptions};
use lefschetz_lab::SweepSummary;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const Q: FieldConfig = FieldConfig::Rational;
const FP: FieldConfig = FieldConfig::Prime(DEFAULT_PRIME);
const SWEEP_SEED: u64 = 42;
const SWEEP_BUDGET: Duration = Duration::from_secs(600);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    }};
}

fn xyz() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

fn p(s: &str) -> Poly {
    parse_poly(s, &xyz(), Q).unwrap()
}

fn dual(s: &str) -> Poly {
    parse_poly(s, &xyz(), Q).unwrap().with_space(VarSpace::Dual)
}

fn quotient(gens: &[&str]) -> GradedQuotient {
    GradedQuotient::new(SystemInput::new(xyz(), gens.iter().map(|g| p(g)).collect(), Q).unwrap())
}

fn milnor(f: &str) -> GradedQuotient {
    GradedQuotient::new(milnor_system(&p(f)).unwrap())
}

fn slp1(q: &GradedQuotient) -> lefschetz_core::lefschetz::SlpVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    slp_witness_search(q, 1, &SlpSearch::default(), &mut rng).unwrap()
}

fn criterion_1() -> Outcome {
    let q = quotient(&["x^2", "y^2", "z^2"]);
    ensure!(
        q.hilbert_function()[..=3] == [1, 3, 3, 1],
        "hilbert {:?}",
        q.hilbert_function()
    );
    let jac = jacobian_det(q.system().generators()).unwrap();
    ensure!(jac == p("8*x*y*z"), "Jac = {jac}");
    let s = socle_functional(&q).unwrap();
    let a = associated_form(&q, &s).unwrap();
    ensure!(a.projective() == dual("x*y*z"), "A = {}", a.form());
    let smooth = condition_smooth_assocform(&a).unwrap();
    ensure!(!smooth.artinian, "condition (1) should fail");
    let v = condition_veronese_empty(&q).unwrap();
    ensure!(!v.empty, "condition (2) should fail");
    ensure!(
        v.witness.as_ref() == Some(&p("x")),
        "witness {:?}",
        v.witness
    );
    ensure!(q.normal_form(&p("x^2")).unwrap().is_zero(), "NF(x^2) != 0");
    ensure!(power_in_ideal(&q, &p("x")).unwrap(), "x^2 not in J");
    let l = p("x + y + z");
    let det = lefschetz_matrix(&q, 1, &l).unwrap().determinant();
    ensure!(det == Q.from_i64(-2), "det = {det}");
    ensure!(slp1(&q).holds(), "SLP-1 search failed");
    Ok(
        "hilbert 1,3,3,1; Jac 8xyz; A ~ y1*y2*y3; (1) false; (2) false with x; det(x+y+z) = -2"
            .into(),
    )
}

fn criterion_2() -> Outcome {
    let q = milnor("x^3 + y^3 + z^3 - 6*x*y*z");
    let s = socle_functional(&q).unwrap();
    let w = s.omega(&q, &p("x*y*z")).unwrap();
    let expected = Q.from_ratio(&(-1).into(), &1512.into()).unwrap();
    ensure!(w == expected, "omega(xyz) = {w}");
    let a = associated_form(&q, &s).unwrap();
    let want = dual("-1/756*(x^3 + y^3 + z^3 + 3*x*y*z)");
    ensure!(a.form() == &want, "A = {}", a.form());
    ensure!(
        condition_smooth_assocform(&a).unwrap().artinian,
        "condition (1) false"
    );
    ensure!(
        condition_veronese_empty(&q).unwrap().empty,
        "condition (2) false"
    );
    ensure!(slp1(&q).holds(), "SLP-1 search failed");
    Ok("omega(xyz) = -1/1512; A = -(y1^3+y2^3+y3^3+3*y1*y2*y3)/756; (1), (2), SLP-1 hold".into())
}

fn criterion_3() -> Outcome {
    let q = milnor("x^3 + y^3 + z^3 + 6*x*y*z");
    let s = socle_functional(&q).unwrap();
    let a = associated_form(&q, &s).unwrap();
    let want = dual("x^3 + y^3 + z^3 - 3*x*y*z");
    ensure!(a.projective() == want, "A ~ {}", a.projective());
    let one = vec![Q.one(); 3];
    for i in 0..3 {
        ensure!(
            a.form().partial(i).evaluate(&one).is_zero(),
            "A not singular at (1:1:1)"
        );
    }
    ensure!(
        !condition_smooth_assocform(&a).unwrap().artinian,
        "condition (1) true"
    );
    let v = condition_veronese_empty(&q).unwrap();
    ensure!(!v.empty, "condition (2) true");
    let verdict = slp1(&q);
    Ok(format!(
        "A ~ y1^3+y2^3+y3^3-3*y1*y2*y3, singular at (1:1:1); (1), (2) false; SLP-1 {}",
        verdict.outcome.as_str()
    ))
}

struct Sweeps {
    runs: Vec<SweepSummary>,
    elapsed: Duration,
}

fn sweeps() -> &'static Sweeps {
    static SWEEPS: OnceLock<Sweeps> = OnceLock::new();
    SWEEPS.get_or_init(|| {
        let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
        let start = Instant::now();
        let runs = [
            ("2,2,2", 100),
            ("2,2,3", 100),
            ("3,3,3", 100),
            ("2,2,2,2", 20),
        ]
        .into_iter()
        .map(|(md, samples)| {
            let mut opts = SweepOptions::new(md.parse().unwrap(), samples, FP, SWEEP_SEED);
            opts.jobs = jobs;
            opts.timing = false;
            run_sweep(&opts).unwrap()
        })
        .collect();
        Sweeps {
            runs,
            elapsed: start.elapsed(),
        }
    })
}

fn criterion_4() -> Outcome {
    let s = sweeps();
    let mut parts = Vec::new();
    for r in &s.runs {
        ensure!(
            r.completed == r.samples,
            "{:?}: {} of {} samples",
            r.multidegree,
            r.completed,
            r.samples
        );
        ensure!(
            r.equivalence_violations == 0,
            "{:?}: {} violations",
            r.multidegree,
            r.equivalence_violations
        );
        parts.push(format!(
            "{:?} n={} agree {}/{}",
            r.multidegree, r.n, r.completed, r.samples
        ));
    }
    ensure!(
        s.elapsed < SWEEP_BUDGET,
        "took {:.1}s",
        s.elapsed.as_secs_f64()
    );
    Ok(format!(
        "{}; {:.1}s over F_{}",
        parts.join(", "),
        s.elapsed.as_secs_f64(),
        DEFAULT_PRIME
    ))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for r in &sweeps().runs {
        ensure!(
            r.implication_violations == 0,
            "{:?}: {} violations",
            r.multidegree,
            r.implication_violations
        );
        for o in r.outcomes.iter().filter(|o| o.condition_smooth) {
            ensure!(
                o.slp1 == "HOLDS_WITH_WITNESS" && o.slp1_trials <= 20,
                "sample {} of {:?}",
                o.index,
                r.multidegree
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} samples with condition (1) all have an SLP-1 witness within 20 trials"
    ))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for r in &sweeps().runs {
        let rate = r.condition1_rate.unwrap_or(0.0);
        ensure!(
            rate >= 0.95,
            "{:?}: condition (1) rate {rate}",
            r.multidegree
        );
        parts.push(format!("{:?} {:.2}", r.multidegree, rate));
    }
    Ok(format!("condition (1) rates {}", parts.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for md in ["2,2,2", "2,2,3"] {
        let mut opts = AciOptions::new(md.parse().unwrap(), 50, 1);
        opts.linear_forms = 100;
        opts.jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
        opts.timing = false;
        let r = run_aci(&opts).unwrap();
        let rate = r.pass_rate.unwrap_or(0.0);
        ensure!(rate >= 0.98, "{md}: pass rate {rate}");
        for d in r.details.iter().filter(|d| d.passed) {
            ensure!(
                d.quotient_dim == 3,
                "{md} fixture {}: quotient dim {}",
                d.index,
                d.quotient_dim
            );
        }
        ensure!(r.c1_rate == Some(1.0), "{md}: C1 rate {:?}", r.c1_rate);
        parts.push(format!("{md} pass {:.2}, C1 on {} forms", rate, 50 * 100));
    }
    Ok(parts.join("; "))
}

/// `(A, q)` for every certified fixture of the structural suite.
fn structural_fixtures() -> Vec<(String, GradedQuotient)> {
    let mut out: Vec<(String, GradedQuotient)> = vec![
        ("squares".into(), quotient(&["x^2", "y^2", "z^2"])),
        ("fermat".into(), milnor("x^3 + y^3 + z^3")),
        ("hesse(2)".into(), milnor("x^3 + y^3 + z^3 - 6*x*y*z")),
        ("hesse(-2)".into(), milnor("x^3 + y^3 + z^3 + 6*x*y*z")),
        (
            "mixed".into(),
            quotient(&["x^2", "y^2 + x*z", "z^3 + x*y^2"]),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (md, field, count) in [
        ("2,2,2", Q, 4),
        ("2,2,3", Q, 3),
        ("3,3,3", FP, 2),
        ("2,2,2,2", FP, 2),
    ] {
        let degrees = md.parse().unwrap();
        let mut found = 0;
        while found < count {
            let q = GradedQuotient::new(random_system(&mut rng, &degrees, field, 3));
            if q.is_ci() {
                out.push((format!("random {md} over {field} #{found}"), q));
                found += 1;
            }
        }
    }
    out
}

/// `omega((sum y_i x_i)^T)` at `N` unisolvent integer points, `N` the number
/// of degree-`T` monomials, so agreement there is agreement as forms.
fn brute_force_agrees(
    q: &GradedQuotient,
    a: &Poly,
    socle: &lefschetz_core::SocleData,
) -> Result<(), String> {
    let n = q.nvars();
    let t = q.socle_degree() as u32;
    let field = q.field();
    let monos = monomials_of_degree(n, t);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let points: Vec<Vec<Scalar>> = (0..count_monomials(n, t))
        .map(|_| {
            (0..n)
                .map(|_| field.from_i64(rng.gen_range(-9..=9)))
                .collect()
        })
        .collect();
    let rows = points
        .iter()
        .map(|pt| {
            monos
                .iter()
                .map(|m| Poly::from_monomial(VarSpace::Dual, m.clone(), field.one()).evaluate(pt))
                .collect()
        })
        .collect();
    ensure!(
        Matrix::new(field, monos.len(), rows).rank() == monos.len(),
        "points not unisolvent"
    );
    for pt in &points {
        let l = Poly::linear(VarSpace::Primal, pt, field);
        let mut power = Poly::constant(VarSpace::Primal, n, field.one());
        for _ in 0..t {
            power = power.mul(&l).unwrap();
        }
        let direct = socle.omega(q, &power).unwrap();
        ensure!(direct == a.evaluate(pt), "mismatch at {pt:?}");
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let fixtures = structural_fixtures();
    let mut brute = 0;
    for (name, q) in &fixtures {
        let t = q.socle_degree();
        let hf = q.hilbert_function();
        for k in 0..=t {
            ensure!(hf[k] == hf[t - k], "{name}: hf not symmetric at {k}");
        }
        let s = socle_functional(q).unwrap();
        for k in 0..=t {
            ensure!(
                gorenstein_pairing_check(q, &s, k).unwrap(),
                "{name}: pairing singular at k = {k}"
            );
        }
        let a = associated_form(q, &s).unwrap();
        let report = apolar_annihilator_dims(&a, q).unwrap();
        ensure!(
            report.equal,
            "{name}: Ann dims {:?} vs J dims {:?}",
            report.annihilator_dims,
            report.ideal_dims
        );
        if t <= 4 {
            brute_force_agrees(q, a.form(), &s).map_err(|e| format!("{name}: {e}"))?;
            brute += 1;
        }
    }
    let mut pairs = 0;
    for n in [3, 4] {
        for d in 0..=6u32 {
            for m in monomials_of_degree(n, d) {
                let g = Poly::from_monomial(VarSpace::Primal, m.clone(), Q.one());
                let f = Poly::from_monomial(VarSpace::Dual, m.clone(), Q.one());
                let factorial = Q.from_bigint(&m.factorial_product().into());
                let got = apolar_apply(&g, &f).unwrap();
                ensure!(
                    got == Poly::constant(VarSpace::Dual, n, factorial.clone()),
                    "x^a o y^a = {got} for {m:?}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} fixtures: pairing, symmetry, Ann = J; closed form = expansion on {brute}; {pairs} apolar pairs",
        fixtures.len()
    ))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lefschetz-lab"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn criterion_9() -> Outcome {
    let runs: Vec<Vec<String>> = vec![
        vec![
            "analyze".into(),
            "--input".into(),
            fixture("hesse.sys"),
            "--k".into(),
            "0,1".into(),
        ],
        vec![
            "milnor".into(),
            "--expr".into(),
            "x^3+y^3+z^3+6*x*y*z".into(),
        ],
        vec![
            "sweep".into(),
            "--multidegree".into(),
            "2,2,3".into(),
            "--samples".into(),
            "6".into(),
            "--json".into(),
        ],
        vec![
            "aci".into(),
            "--multidegree".into(),
            "2,2,2".into(),
            "--samples".into(),
            "4".into(),
            "--json".into(),
        ],
    ];
    for args in &runs {
        let mut first: Option<Vec<u8>> = None;
        for rep in 0..5 {
            let out = binary()
                .args(args)
                .args([
                    "--seed",
                    "7",
                    "--no-timing",
                    "--jobs",
                    if rep % 2 == 0 { "1" } else { "3" },
                ])
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(
                out.status.code() == Some(0),
                "{args:?} exited {:?}",
                out.status.code()
            );
            match &first {
                None => first = Some(out.stdout),
                Some(f) => ensure!(f == &out.stdout, "{args:?} differs on repetition {rep}"),
            }
        }
    }
    Ok(format!(
        "{} commands byte-identical over 5 runs",
        runs.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("monomial fixture", criterion_1),
        ("Hesse lambda = 2", criterion_2),
        ("Hesse lambda = -2", criterion_3),
        ("condition (1) <=> condition (2) on sweeps", criterion_4),
        ("condition (1) => SLP-1 on sweeps", criterion_5),
        ("condition (1) rate >= 95%", criterion_6),
        ("almost complete intersection suite", criterion_7),
        ("structural properties", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
