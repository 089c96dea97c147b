//! Almost complete intersections inside the off-diagonal ideal
//! `K = (x_i x_j : i < j)`.
//!
//! Generic `g_j in K_(d_j)` generate an ideal whose saturation is `K`, the
//! vanishing ideal of the coordinate points. The checks here verify the
//! consequences degree by degree: `J(g)_d` sits inside `K_d`, equals it in
//! degree `T-1`, and leaves an `n`-dimensional quotient there.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gradedalg::{ideal_piece, MultiDegree};
use crate::lefschetz::check_linear;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::poly::{Poly, VarSpace};
use crate::scalar::{FieldConfig, Scalar};

/// Monomial basis of `K_d`: every degree-`d` monomial except the pure powers.
pub fn offdiag_ideal_basis(n: usize, d: u32) -> Vec<Monomial> {
    if d < 2 {
        return Vec::new();
    }
    monomials_of_degree(n, d)
        .into_iter()
        .filter(|m| !m.is_pure_power())
        .collect()
}

pub fn offdiag_dim(n: usize, d: u32) -> usize {
    if d < 2 {
        0
    } else {
        count_monomials(n, d) - n
    }
}

/// Every monomial divisible by some `x_i x_j`, `i < j`.
pub fn in_offdiag_ideal(p: &Poly) -> bool {
    p.terms().all(|(m, _)| !m.is_pure_power())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AciFixture {
    pub multidegree: MultiDegree,
    pub generators: Vec<Poly>,
    pub seed: u64,
    pub bound: u64,
    pub field: FieldConfig,
}

impl AciFixture {
    pub fn nvars(&self) -> usize {
        self.multidegree.nvars()
    }

    pub fn socle_degree(&self) -> usize {
        self.multidegree.socle_degree()
    }
}

fn nonzero_coefficient<R: Rng + ?Sized>(rng: &mut R, field: FieldConfig, bound: u64) -> Scalar {
    match field {
        FieldConfig::Rational => {
            let b = bound.max(1) as i64;
            let v = rng.gen_range(1..=b);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
        FieldConfig::Prime(p) => Scalar::Fp {
            v: rng.gen_range(1..p),
            p,
        },
    }
}

/// Samples `g_j in K_(d_j)` with every coefficient on the monomial basis of
/// `K_(d_j)` drawn from `[-bound, bound] \ {0}` (or nonzero residues).
pub fn sample_aci(degrees: &MultiDegree, seed: u64, bound: u64, field: FieldConfig) -> AciFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = degrees.nvars();
    let generators = degrees
        .degrees()
        .iter()
        .map(|&d| {
            let terms: Vec<(Monomial, Scalar)> = offdiag_ideal_basis(n, d)
                .into_iter()
                .map(|m| (m, nonzero_coefficient(&mut rng, field, bound)))
                .collect();
            Poly::from_terms(VarSpace::Primal, n, d, field, terms)
                .expect("homogeneous by construction")
        })
        .collect();
    AciFixture {
        multidegree: degrees.clone(),
        generators,
        seed,
        bound,
        field,
    }
}

/// Which statement a fixture broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AciClaim {
    /// `J(g)_d` inside `K_d` and equal to it in degree `T-1`.
    SaturationEqualsK,
    /// `(K/J(g))_1 = (K/J(g))_(T-1) = 0`.
    DualityVanishing,
    /// `dim (S/J(g))_(T-1) = n`.
    QuotientDimension,
}

impl AciClaim {
    pub fn as_str(self) -> &'static str {
        match self {
            AciClaim::SaturationEqualsK => "claim1",
            AciClaim::DualityVanishing => "claim2",
            AciClaim::QuotientDimension => "claim3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThmA2Report {
    pub socle_degree: usize,
    /// `dim J(g)_d` for `0 <= d <= T-1`.
    pub ideal_dims: Vec<usize>,
    /// `dim K_d` for `0 <= d <= T-1`.
    pub k_dims: Vec<usize>,
    /// `J(g)_d` is inside `K_d` for every tabulated `d`.
    pub contained: bool,
    /// Containment plus `J(g)_(T-1) = K_(T-1)`.
    pub claim1: bool,
    pub n_g_1_zero: bool,
    pub n_g_t_minus_1_zero: bool,
    pub claim2: bool,
    /// `dim (S/J(g))_(T-1)`.
    pub quotient_dim: usize,
    pub claim3: bool,
    pub failed: Vec<AciClaim>,
}

impl ThmA2Report {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn advice(&self) -> Option<&'static str> {
        (!self.passed())
            .then_some("non-generic sample; draw again with another seed or a larger box")
    }
}

pub fn verify_thm_a2(fx: &AciFixture) -> ThmA2Report {
    let n = fx.nvars();
    let t = fx.socle_degree();
    let top = (t - 1) as u32;
    let mut ideal_dims = Vec::new();
    let mut k_dims = Vec::new();
    let mut contained = true;
    let mut top_piece = None;
    for d in 0..=top {
        let piece = ideal_piece(&fx.generators, n, d, fx.field);
        ideal_dims.push(piece.ideal_dim());
        k_dims.push(offdiag_dim(n, d));
        contained &= piece.basis_polys().iter().all(in_offdiag_ideal);
        if d == top {
            top_piece = Some(piece);
        }
    }
    let top_piece = top_piece.expect("T >= 3 so degree T-1 is tabulated");
    let claim1 = contained && ideal_dims[top as usize] == k_dims[top as usize];
    let n_g_1_zero = contained && ideal_dims[1] == k_dims[1];
    let n_g_t_minus_1_zero = claim1;
    let claim2 = n_g_1_zero && n_g_t_minus_1_zero;
    let quotient_dim = top_piece.quotient_dim();
    let claim3 = quotient_dim == n;
    let mut failed = Vec::new();
    if !claim1 {
        failed.push(AciClaim::SaturationEqualsK);
    }
    if !claim2 {
        failed.push(AciClaim::DualityVanishing);
    }
    if !claim3 {
        failed.push(AciClaim::QuotientDimension);
    }
    ThmA2Report {
        socle_degree: t,
        ideal_dims,
        k_dims,
        contained,
        claim1,
        n_g_1_zero,
        n_g_t_minus_1_zero,
        claim2,
        quotient_dim,
        claim3,
        failed,
    }
}

/// Samples seeds `seed, seed+1, ...` until `verify_thm_a2` passes, giving up after `attempts`.
pub fn sample_generic_aci(
    degrees: &MultiDegree,
    seed: u64,
    bound: u64,
    field: FieldConfig,
    attempts: usize,
) -> Option<(AciFixture, ThmA2Report)> {
    (0..attempts as u64).find_map(|i| {
        let fx = sample_aci(degrees, seed.wrapping_add(i), bound, field);
        let report = verify_thm_a2(&fx);
        report.passed().then_some((fx, report))
    })
}

/// `l^(T-1)` is never in `K_(T-1)`: some pure power `x_i^(T-1)` survives.
pub fn check_c1(l: &Poly, t: usize) -> Result<bool> {
    check_linear(l)?;
    if t < 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: t as i64,
        });
    }
    let power = l.pow((t - 1) as u32);
    let survives = power.terms().any(|(m, _)| m.is_pure_power());
    Ok(survives)
}

/// Whether `l^(T-1)` lies in `J(g)_(T-1)`.
pub fn power_in_aci_ideal(fx: &AciFixture, l: &Poly) -> Result<bool> {
    check_linear(l)?;
    let t = fx.socle_degree();
    let piece = ideal_piece(&fx.generators, fx.nvars(), (t - 1) as u32, fx.field);
    piece.contains(&l.pow((t - 1) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::parse::parse_poly;

    const Q: FieldConfig = FieldConfig::Rational;
    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> Poly {
        parse_poly(s, &XYZ, Q).unwrap()
    }

    fn md(s: &str) -> MultiDegree {
        s.parse().unwrap()
    }

    #[test]
    fn offdiag_bases() {
        let names: Vec<String> = XYZ.iter().map(|s| s.to_string()).collect();
        let two: Vec<String> = offdiag_ideal_basis(3, 2)
            .iter()
            .map(|m| m.fmt_with(&names))
            .collect();
        assert_eq!(two, ["x*y", "x*z", "y*z"]);
        assert!(offdiag_ideal_basis(3, 1).is_empty());
        assert!(offdiag_ideal_basis(3, 0).is_empty());
        assert_eq!(offdiag_ideal_basis(3, 3).len(), 7);
        for n in 2..5 {
            for d in 0..6 {
                assert_eq!(offdiag_ideal_basis(n, d).len(), offdiag_dim(n, d));
            }
        }
    }

    #[test]
    fn vanishing_ideal_of_coordinate_points_is_k() {
        // kernel of evaluation at e_1..e_n equals K_d for d >= 2
        for n in 3..5 {
            for d in 2..5u32 {
                let monos = monomials_of_degree(n, d);
                let rows: Vec<Vec<Scalar>> = (0..n)
                    .map(|i| {
                        let e: Vec<Scalar> = (0..n).map(|j| Q.from_i64((i == j) as i64)).collect();
                        monos
                            .iter()
                            .map(|m| {
                                Poly::from_monomial(VarSpace::Primal, m.clone(), Q.one())
                                    .evaluate(&e)
                            })
                            .collect()
                    })
                    .collect();
                let kernel = Matrix::new(Q, monos.len(), rows).kernel();
                assert_eq!(kernel.len(), offdiag_dim(n, d));
                // kernel vectors are supported exactly on the off-diagonal monomials
                let k = offdiag_ideal_basis(n, d);
                for v in kernel {
                    for (m, c) in monos.iter().zip(v) {
                        if !c.is_zero() {
                            assert!(k.contains(m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sampler_is_reproducible_and_lands_in_k() {
        let a = sample_aci(&md("2,2,2"), 7, 50, Q);
        let b = sample_aci(&md("2,2,2"), 7, 50, Q);
        assert_eq!(a, b);
        assert!(a.generators.iter().all(in_offdiag_ideal));
        assert!(a.generators.iter().all(|g| g.num_terms() == 3));
        let m = Matrix::new(
            Q,
            3,
            a.generators
                .iter()
                .map(|g| g.coefficients_on(&offdiag_ideal_basis(3, 2)))
                .collect(),
        );
        assert!(!m.determinant().is_zero());
    }

    #[test]
    fn generic_sample_222() {
        let fx = sample_aci(&md("2,2,2"), 7, 50, Q);
        let r = verify_thm_a2(&fx);
        assert_eq!(r.socle_degree, 3);
        assert_eq!(r.ideal_dims[2], 3);
        assert_eq!(r.k_dims[2], 3);
        assert_eq!(r.quotient_dim, 3);
        assert!(r.passed());
    }

    #[test]
    fn generic_sample_223() {
        let (fx, r) = sample_generic_aci(&md("2,2,3"), 11, 50, Q, 5).unwrap();
        assert_eq!(fx.socle_degree(), 4);
        assert_eq!(r.ideal_dims[3], 7);
        assert_eq!(r.quotient_dim, 3);
    }

    #[test]
    fn adversarial_sample_breaks_claim_one() {
        let fx = AciFixture {
            multidegree: md("2,2,2"),
            generators: vec![p("x*y"), p("x*y"), p("x*z")],
            seed: 0,
            bound: 1,
            field: Q,
        };
        let r = verify_thm_a2(&fx);
        assert_eq!(r.ideal_dims[2], 2);
        assert!(!r.claim1);
        assert!(r.failed.contains(&AciClaim::SaturationEqualsK));
        assert!(r.advice().is_some());
    }

    #[test]
    fn c1_examples() {
        assert!(check_c1(&p("x"), 3).unwrap());
        assert!(check_c1(&p("x + y + z"), 3).unwrap());
        assert_eq!(
            p("x + y + z").pow(2).coeff(&Monomial::new(vec![2, 0, 0])),
            Q.one()
        );
        assert_eq!(
            check_c1(&Poly::zero(VarSpace::Primal, 3, 1, Q), 3),
            Err(Error::ZeroLinearForm)
        );
    }

    #[test]
    fn c1_over_prime_field() {
        let f = FieldConfig::Prime(65537);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let l = crate::lefschetz::random_linear_form(&mut rng, 4, f, 0);
            assert!(check_c1(&l, 5).unwrap());
        }
    }

    #[test]
    fn no_power_lands_in_generic_aci_ideal() {
        let fx = sample_aci(&md("2,2,2"), 7, 50, Q);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let l = crate::lefschetz::random_linear_form(&mut rng, 3, Q, 10);
            assert!(!power_in_aci_ideal(&fx, &l).unwrap());
        }
    }
}
