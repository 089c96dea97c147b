//! Strong Lefschetz checks: is `l^(T-2k) : M_k -> M_(T-k)` an isomorphism?
//!
//! A single witness `l` certifies the property for generic forms, since the
//! failure locus `det = 0` is Zariski closed. Failing to find one is only
//! reported as probabilistic, unless the determinant is expanded
//! symbolically in the coefficients of `l` and found to vanish identically.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gradedalg::GradedQuotient;
use crate::linalg::Matrix;
use crate::monomial::monomials_of_degree;
use crate::poly::{determinant, Poly, VarSpace};
use crate::scalar::{multinomial, FieldConfig, Scalar};

/// Default half-width of the integer sampling box.
pub const DEFAULT_COEFF_BOUND: u64 = 50;

/// Largest `dim M_k` for which the determinant is expanded symbolically.
pub const SYMBOLIC_MAX_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpOutcome {
    HoldsWithWitness,
    ProbablyFails,
    FailsCertified,
}

impl SlpOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            SlpOutcome::HoldsWithWitness => "HOLDS_WITH_WITNESS",
            SlpOutcome::ProbablyFails => "PROBABLY_FAILS",
            SlpOutcome::FailsCertified => "FAILS_CERTIFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpVerdict {
    pub k: usize,
    /// `T - 2k`.
    pub map_degree: usize,
    pub outcome: SlpOutcome,
    pub witness: Option<Poly>,
    /// Trials consumed (the index of the witness, 1-based, on success).
    pub trials: usize,
    pub field: FieldConfig,
    /// Number of values each coefficient is drawn from: `2B + 1` over Q, `p` over F_p.
    pub sample_set_size: u64,
    /// Degree bound `hf(k) * (T - 2k)` of the determinant in the coefficients of `l`.
    pub degree_bound: usize,
    /// Whether the determinant was expanded symbolically.
    pub symbolic_checked: bool,
}

impl SlpVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == SlpOutcome::HoldsWithWitness
    }
}

/// Sampling parameters for witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlpSearch {
    pub trials: usize,
    /// Integer coefficients are drawn from `[-B, B]` over Q.
    pub coeff_bound: u64,
    pub symbolic: bool,
}

impl Default for SlpSearch {
    fn default() -> Self {
        SlpSearch {
            trials: 20,
            coeff_bound: DEFAULT_COEFF_BOUND,
            symbolic: true,
        }
    }
}

fn check_range(q: &GradedQuotient, k: usize) -> Result<()> {
    let t = q.socle_degree();
    if 2 * k >= t {
        return Err(Error::KOutOfRange { k, socle_degree: t });
    }
    Ok(())
}

pub(crate) fn check_linear(l: &Poly) -> Result<()> {
    l.require_space(VarSpace::Primal)?;
    if l.degree() != 1 {
        return Err(Error::NotLinear(l.degree()));
    }
    if l.is_zero() {
        return Err(Error::ZeroLinearForm);
    }
    Ok(())
}

/// Matrix of multiplication by `l^(T-2k)` from `M_k` to `M_(T-k)`.
pub fn lefschetz_matrix(q: &GradedQuotient, k: usize, l: &Poly) -> Result<Matrix> {
    q.require_ci()?;
    check_range(q, k)?;
    check_linear(l)?;
    q.multiplication_matrix(&l.pow((q.socle_degree() - 2 * k) as u32), k)
}

pub fn slp_at_degree(q: &GradedQuotient, k: usize, l: &Poly) -> Result<bool> {
    let m = lefschetz_matrix(q, k, l)?;
    Ok(m.rank() == q.hilbert_function()[k])
}

/// Linear form with coefficients uniform in `[-bound, bound]` over Q, or
/// uniform residues over F_p. Never returns the zero form.
pub fn random_linear_form<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldConfig,
    bound: u64,
) -> Poly {
    loop {
        let coeffs: Vec<Scalar> = (0..n)
            .map(|_| match field {
                FieldConfig::Rational => {
                    let b = bound as i64;
                    field.from_i64(rng.gen_range(-b..=b))
                }
                FieldConfig::Prime(p) => Scalar::Fp {
                    v: rng.gen_range(0..p),
                    p,
                },
            })
            .collect();
        let l = Poly::linear(VarSpace::Primal, &coeffs, field);
        if !l.is_zero() {
            return l;
        }
    }
}

/// The Lefschetz matrix with entries polynomial in the coefficients `a_i`
/// of `l = sum a_i x_i`.
pub fn symbolic_lefschetz_matrix(q: &GradedQuotient, k: usize) -> Result<Vec<Vec<Poly>>> {
    q.require_ci()?;
    check_range(q, k)?;
    let n = q.nvars();
    let field = q.field();
    let e = (q.socle_degree() - 2 * k) as u32;
    let sources = q.standard_monomials(k)?;
    let target_dim = q.hilbert_function()[q.socle_degree() - k];
    let alphas = monomials_of_degree(n, e);
    let mut rows = Vec::with_capacity(sources.len());
    for m in sources {
        let mut row = vec![Poly::zero(VarSpace::Coeff, n, e, field); target_dim];
        for alpha in &alphas {
            let coeff = field.from_bigint(&multinomial(alpha.exponents()));
            let image = Poly::from_monomial(VarSpace::Primal, alpha.mul(m), field.one());
            for (j, c) in q.coords(&image)?.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = Poly::from_monomial(VarSpace::Coeff, alpha.clone(), &coeff * &c);
                row[j] = row[j].add(&term)?;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Samples `l` until the Lefschetz map at degree `k` has full rank.
pub fn slp_witness_search<R: Rng + ?Sized>(
    q: &GradedQuotient,
    k: usize,
    search: &SlpSearch,
    rng: &mut R,
) -> Result<SlpVerdict> {
    q.require_ci()?;
    check_range(q, k)?;
    let field = q.field();
    let t = q.socle_degree();
    let dim = q.hilbert_function()[k];
    let sample_set_size = match field {
        FieldConfig::Rational => 2 * search.coeff_bound + 1,
        FieldConfig::Prime(p) => p,
    };
    let mut verdict = SlpVerdict {
        k,
        map_degree: t - 2 * k,
        outcome: SlpOutcome::ProbablyFails,
        witness: None,
        trials: 0,
        field,
        sample_set_size,
        degree_bound: dim * (t - 2 * k),
        symbolic_checked: false,
    };
    for trial in 1..=search.trials.max(1) {
        let l = random_linear_form(rng, q.nvars(), field, search.coeff_bound);
        verdict.trials = trial;
        if slp_at_degree(q, k, &l)? {
            verdict.outcome = SlpOutcome::HoldsWithWitness;
            verdict.witness = Some(l);
            return Ok(verdict);
        }
    }
    if search.symbolic && dim <= SYMBOLIC_MAX_DIM {
        let det = determinant(&symbolic_lefschetz_matrix(q, k)?)?;
        verdict.symbolic_checked = true;
        if det.is_zero() {
            verdict.outcome = SlpOutcome::FailsCertified;
        }
    }
    Ok(verdict)
}

/// Kernel of `S_1 -> M_(T-1)`, `v -> l^(T-2) v`: the forms `l_1` with
/// `l^(T-2) l_1 in J_(T-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp1Diagnostic {
    pub linear_form: Poly,
    pub kernel: Vec<Poly>,
    /// Rank of the map; `rank + kernel.len() = n`.
    pub rank: usize,
}

impl Slp1Diagnostic {
    pub fn holds(&self) -> bool {
        self.kernel.is_empty()
    }
}

pub fn slp1_kernel(q: &GradedQuotient, l: &Poly) -> Result<Slp1Diagnostic> {
    q.require_ci()?;
    check_linear(l)?;
    let n = q.nvars();
    let t = q.socle_degree();
    let field = q.field();
    let power = l.pow((t - 2) as u32);
    let rows = (0..n)
        .map(|i| q.coords(&power.mul(&Poly::var(VarSpace::Primal, n, i, field))?))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::new(field, q.hilbert_function()[t - 1], rows);
    let kernel: Vec<Poly> = m
        .left_kernel()
        .into_iter()
        .map(|c| Poly::linear(VarSpace::Primal, &c, field))
        .collect();
    Ok(Slp1Diagnostic {
        linear_form: l.clone(),
        rank: n - kernel.len(),
        kernel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::SystemInput;
    use crate::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldConfig = FieldConfig::Rational;
    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> Poly {
        parse_poly(s, &XYZ, Q).unwrap()
    }

    fn quotient(gens: &[&str]) -> GradedQuotient {
        GradedQuotient::new(
            SystemInput::new(
                XYZ.iter().map(|s| s.to_string()).collect(),
                gens.iter().map(|g| p(g)).collect(),
                Q,
            )
            .unwrap(),
        )
    }

    #[test]
    fn slp_on_squares() {
        let q = quotient(&["x^2", "y^2", "z^2"]);
        assert!(slp_at_degree(&q, 1, &p("x + y + z")).unwrap());
        assert_eq!(
            lefschetz_matrix(&q, 1, &p("x + y + z"))
                .unwrap()
                .determinant(),
            Q.from_i64(-2)
        );
        assert!(!slp_at_degree(&q, 1, &p("x")).unwrap());
        assert!(slp_at_degree(&q, 0, &p("x + y + z")).unwrap());
    }

    #[test]
    fn range_and_input_errors() {
        let q = quotient(&["x^2", "y^2", "z^2"]);
        assert!(matches!(
            slp_at_degree(&q, 2, &p("x")),
            Err(Error::KOutOfRange { k: 2, .. })
        ));
        let zero = Poly::zero(VarSpace::Primal, 3, 1, Q);
        assert_eq!(slp_at_degree(&q, 1, &zero), Err(Error::ZeroLinearForm));
        assert_eq!(slp_at_degree(&q, 1, &p("x^2")), Err(Error::NotLinear(2)));
    }

    #[test]
    fn witness_search_with_fixed_seed() {
        let q = quotient(&["x^2", "y^2", "z^2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = slp_witness_search(&q, 1, &SlpSearch::default(), &mut rng).unwrap();
        assert_eq!(v.outcome, SlpOutcome::HoldsWithWitness);
        assert!(v.trials <= 3);
        assert!(slp_at_degree(&q, 1, v.witness.as_ref().unwrap()).unwrap());
        assert_eq!(v.degree_bound, 3);
        assert_eq!(v.sample_set_size, 101);
    }

    #[test]
    fn witness_search_on_hesse() {
        let q = quotient(&["3*x^2 - 6*y*z", "3*y^2 - 6*x*z", "3*z^2 - 6*x*y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v = slp_witness_search(&q, 1, &SlpSearch::default(), &mut rng).unwrap();
        assert!(v.holds());
    }

    #[test]
    fn non_ci_is_refused() {
        let q = quotient(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            slp_witness_search(&q, 1, &SlpSearch::default(), &mut rng),
            Err(Error::NotCompleteIntersection { .. })
        ));
    }

    #[test]
    fn symbolic_determinant_of_squares() {
        // l = a1 x + a2 y + a3 z acts on (x, y, z) -> (xy, xz, yz) with det -2 a1 a2 a3
        let q = quotient(&["x^2", "y^2", "z^2"]);
        let det = determinant(&symbolic_lefschetz_matrix(&q, 1).unwrap()).unwrap();
        let expect = parse_poly("-2*a*b*c", &["a", "b", "c"], Q)
            .unwrap()
            .with_space(VarSpace::Coeff);
        assert_eq!(det, expect);
    }

    #[test]
    fn slp1_kernels() {
        let q = quotient(&["x^2", "y^2", "z^2"]);
        let d = slp1_kernel(&q, &p("x")).unwrap();
        assert_eq!(d.kernel, vec![p("x")]);
        assert_eq!(d.rank, 2);
        let d = slp1_kernel(&q, &p("x + y + z")).unwrap();
        assert!(d.holds());
        assert_eq!(d.rank, 3);
    }
}
