//! Degree-by-degree linear algebra for `J = (f_1, ..., f_n)` and the quotient
//! `M = S/J`.
//!
//! Only degrees up to `T + 1` are ever needed, so each `J_d` is materialized
//! as the span of the shifted generators `m * f_j` and row-reduced once.
//! Columns are ordered largest monomial first, which makes the pivots the
//! leading monomials and the standard monomials the non-pivot columns.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{rref, Echelon, Matrix};
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::poly::{jacobian_det, Poly, VarSpace};
use crate::scalar::{FieldConfig, Scalar};

/// A multidegree `2 <= d_1 <= ... <= d_n`, `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() < 3 {
            return Err(Error::InvalidSystem(format!(
                "need at least 3 variables, got {}",
                degrees.len()
            )));
        }
        if degrees.iter().any(|&d| d < 2) {
            return Err(Error::InvalidSystem(
                "every degree must be at least 2".into(),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSystem("degrees must be nondecreasing".into()));
        }
        Ok(MultiDegree(degrees))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// `T = sum(d_j) - n`.
    pub fn socle_degree(&self) -> usize {
        socle_degree(&self.0)
    }
}

impl std::str::FromStr for MultiDegree {
    type Err = Error;

    /// Comma-separated degrees, e.g. `2,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let degrees = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidSystem(format!("bad degree '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiDegree::new(degrees)
    }
}

impl std::fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn socle_degree(degrees: &[u32]) -> usize {
    degrees.iter().map(|&d| d as usize).sum::<usize>() - degrees.len()
}

/// `n` homogeneous generators in `n` primal variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemInput {
    var_names: Vec<String>,
    generators: Vec<Poly>,
    field: FieldConfig,
}

impl SystemInput {
    pub fn new(var_names: Vec<String>, generators: Vec<Poly>, field: FieldConfig) -> Result<Self> {
        let n = var_names.len();
        if n < 3 {
            return Err(Error::InvalidSystem(format!(
                "need at least 3 variables, got {n}"
            )));
        }
        if generators.len() != n {
            return Err(Error::InvalidSystem(format!(
                "{} generators for {n} variables",
                generators.len()
            )));
        }
        for (j, g) in generators.iter().enumerate() {
            g.require_space(VarSpace::Primal)?;
            if g.nvars() != n {
                return Err(Error::InvalidSystem(format!(
                    "generator {} lives in {} variables",
                    j + 1,
                    g.nvars()
                )));
            }
            if g.field() != field {
                return Err(Error::InvalidField(format!(
                    "generator {} is over {}, system over {field}",
                    j + 1,
                    g.field()
                )));
            }
            if g.degree() < 2 {
                return Err(Error::InvalidSystem(format!(
                    "generator {} has degree {} < 2",
                    j + 1,
                    g.degree()
                )));
            }
        }
        Ok(SystemInput {
            var_names,
            generators,
            field,
        })
    }

    /// Uses the default names `x1..xn`.
    pub fn from_generators(generators: Vec<Poly>, field: FieldConfig) -> Result<Self> {
        let n = generators.first().map(Poly::nvars).unwrap_or(0);
        SystemInput::new(VarSpace::Primal.default_names(n), generators, field)
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(Poly::degree).collect()
    }

    pub fn socle_degree(&self) -> usize {
        socle_degree(&self.degrees())
    }

    /// Same system with every coefficient mapped into another field.
    pub fn map_field(&self, field: FieldConfig, f: impl Fn(&Scalar) -> Scalar) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                Poly::from_terms(
                    VarSpace::Primal,
                    g.nvars(),
                    g.degree(),
                    field,
                    g.terms().map(|(m, c)| (m.clone(), f(c))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        SystemInput::new(self.var_names.clone(), gens, field)
    }
}

/// `J_d` as a reduced echelon basis over the monomials of `S_d`.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    degree: u32,
    nvars: usize,
    space: VarSpace,
    field: FieldConfig,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    standard: Vec<usize>,
}

impl DegreePiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// All monomials of degree `d`, largest first.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn ideal_dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.standard.len()
    }

    pub fn pivot_monomials(&self) -> Vec<&Monomial> {
        self.echelon
            .pivots
            .iter()
            .map(|&c| &self.monomials[c])
            .collect()
    }

    /// Non-pivot monomials, largest first.
    pub fn standard_monomials(&self) -> Vec<&Monomial> {
        self.standard.iter().map(|&c| &self.monomials[c]).collect()
    }

    pub fn basis_polys(&self) -> Vec<Poly> {
        self.echelon
            .rows
            .iter()
            .map(|row| self.dense_poly(row.clone()))
            .collect()
    }

    fn check(&self, p: &Poly) -> Result<()> {
        p.require_space(self.space)?;
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                found: p.degree() as i64,
            });
        }
        if p.nvars() != self.nvars {
            return Err(Error::InvalidSystem("wrong number of variables".into()));
        }
        Ok(())
    }

    fn dense(&self, p: &Poly) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    fn dense_poly(&self, v: Vec<Scalar>) -> Poly {
        Poly::from_terms(
            self.space,
            self.nvars,
            self.degree,
            self.field,
            self.monomials.iter().cloned().zip(v),
        )
        .expect("dense vector over the monomials of one degree")
    }

    /// Unique representative of `p` modulo `J_d` supported on standard monomials.
    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        self.check(p)?;
        let mut v = self.dense(p);
        self.echelon.reduce(&mut v);
        Ok(self.dense_poly(v))
    }

    /// Coordinates of the normal form of `p` on the standard monomials.
    pub fn standard_coords(&self, p: &Poly) -> Result<Vec<Scalar>> {
        self.check(p)?;
        let mut v = self.dense(p);
        self.echelon.reduce(&mut v);
        Ok(self.standard.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

/// Tabulates `J_d` for the ideal generated by `gens` (any variable family).
pub fn ideal_piece(gens: &[Poly], nvars: usize, d: u32, field: FieldConfig) -> DegreePiece {
    let space = gens.first().map(Poly::space).unwrap_or(VarSpace::Primal);
    let monomials = monomials_of_degree(nvars, d);
    let index: HashMap<Monomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| g.degree() <= d && !g.is_zero()) {
        for m in monomials_of_degree(nvars, d - g.degree()) {
            let mut row = vec![field.zero(); monomials.len()];
            for (gm, c) in g.terms() {
                row[index[&gm.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let echelon = rref(field, monomials.len(), &rows);
    let standard = echelon.free_columns();
    DegreePiece {
        degree: d,
        nvars,
        space,
        field,
        monomials,
        index,
        echelon,
        standard,
    }
}

/// `J(f)_d` for the system's ideal.
pub fn ideal_degree_piece(sys: &SystemInput, d: u32) -> DegreePiece {
    ideal_piece(sys.generators(), sys.nvars(), d, sys.field())
}

/// Coefficients of `prod_j (1 + t + ... + t^(d_j - 1))` through degree `upto`.
pub fn ci_hilbert_series(degrees: &[u32], upto: usize) -> Vec<usize> {
    let mut series = vec![0usize; upto + 1];
    series[0] = 1;
    for &d in degrees {
        let mut next = vec![0usize; upto + 1];
        for (i, &c) in series.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..d as usize {
                if i + j <= upto {
                    next[i + j] += c;
                }
            }
        }
        series = next;
    }
    series
}

/// Outcome of the complete-intersection certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiVerdict {
    pub is_ci: bool,
    pub hilbert: Vec<usize>,
    pub expected: Vec<usize>,
    /// First degree whose quotient dimension differs from the complete
    /// intersection value, when the certificate fails.
    pub first_excess_degree: Option<usize>,
}

/// The quotient `S/J` tabulated through degree `T + 1`.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    system: SystemInput,
    socle_degree: usize,
    pieces: Vec<DegreePiece>,
    verdict: CiVerdict,
}

impl GradedQuotient {
    pub fn new(system: SystemInput) -> Self {
        let t = system.socle_degree();
        let pieces: Vec<DegreePiece> = (0..=t as u32 + 1)
            .map(|d| ideal_degree_piece(&system, d))
            .collect();
        let hilbert: Vec<usize> = pieces.iter().map(DegreePiece::quotient_dim).collect();
        let expected = ci_hilbert_series(&system.degrees(), t + 1);
        // quotient vanishing in degree T+1 makes it Artinian, hence n forms are a regular sequence
        let is_ci = hilbert[t + 1] == 0;
        let first_excess_degree = if is_ci {
            None
        } else {
            hilbert
                .iter()
                .zip(&expected)
                .position(|(h, e)| h != e)
                .or(Some(t + 1))
        };
        GradedQuotient {
            system,
            socle_degree: t,
            pieces,
            verdict: CiVerdict {
                is_ci,
                hilbert,
                expected,
                first_excess_degree,
            },
        }
    }

    pub fn system(&self) -> &SystemInput {
        &self.system
    }

    pub fn nvars(&self) -> usize {
        self.system.nvars()
    }

    pub fn field(&self) -> FieldConfig {
        self.system.field()
    }

    pub fn socle_degree(&self) -> usize {
        self.socle_degree
    }

    pub fn ci_verdict(&self) -> &CiVerdict {
        &self.verdict
    }

    pub fn is_ci(&self) -> bool {
        self.verdict.is_ci
    }

    /// Refuses with the counterexample degree unless the system is a complete intersection.
    pub fn require_ci(&self) -> Result<()> {
        match self.verdict.first_excess_degree {
            None => Ok(()),
            Some(degree) => Err(Error::NotCompleteIntersection { degree }),
        }
    }

    /// `hf(d) = dim M_d` for `0 <= d <= T + 1`.
    pub fn hilbert_function(&self) -> &[usize] {
        &self.verdict.hilbert
    }

    pub fn piece(&self, d: usize) -> Result<&DegreePiece> {
        self.pieces.get(d).ok_or(Error::DegreeOutOfRange {
            degree: d as i64,
            max: self.socle_degree as i64 + 1,
        })
    }

    pub fn standard_monomials(&self, d: usize) -> Result<Vec<&Monomial>> {
        Ok(self.piece(d)?.standard_monomials())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.piece(p.degree() as usize)?.reduce(p)
    }

    /// Normal form coordinates on the standard monomials of `deg p`.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Scalar>> {
        self.piece(p.degree() as usize)?.standard_coords(p)
    }

    /// Matrix of `M_k -> M_(k+e)`, `m -> mult * m`; row `i` is the image of
    /// the `i`-th standard monomial of degree `k`.
    pub fn multiplication_matrix(&self, mult: &Poly, k: usize) -> Result<Matrix> {
        mult.require_space(VarSpace::Primal)?;
        let e = mult.degree() as usize;
        let top = self.socle_degree + 1;
        if k + e > top {
            return Err(Error::DegreeOutOfRange {
                degree: (k + e) as i64,
                max: top as i64,
            });
        }
        let target = self.piece(k + e)?;
        let rows = self
            .piece(k)?
            .standard_monomials()
            .into_iter()
            .map(|m| target.standard_coords(&mult.mul_monomial(m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::new(self.field(), target.quotient_dim(), rows))
    }
}

/// Decides whether `sys` is a 0-dimensional complete intersection.
pub fn certify_complete_intersection(sys: &SystemInput) -> CiVerdict {
    GradedQuotient::new(sys.clone()).verdict
}

/// The socle functional `omega`, normalized by `omega(Jac) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleData {
    /// Standard monomial spanning `M_T`.
    pub socle_monomial: Monomial,
    pub jacobian: Poly,
    /// `NF(Jac) = c * m_T`.
    pub jacobian_coefficient: Scalar,
    /// `omega(m_T) = 1 / c`.
    pub omega_of_socle: Scalar,
}

impl SocleData {
    /// `omega` of the class of a degree-`T` form.
    pub fn omega(&self, q: &GradedQuotient, p: &Poly) -> Result<Scalar> {
        if p.degree() as usize != q.socle_degree() {
            return Err(Error::DegreeMismatch {
                expected: q.socle_degree() as i64,
                found: p.degree() as i64,
            });
        }
        let nf = q.normal_form(p)?;
        Ok(&nf.coeff(&self.socle_monomial) * &self.omega_of_socle)
    }
}

pub fn socle_functional(q: &GradedQuotient) -> Result<SocleData> {
    q.require_ci()?;
    let t = q.socle_degree();
    let top = q.piece(t)?;
    let std = top.standard_monomials();
    if std.len() != 1 {
        return Err(Error::Invariant(format!(
            "socle of a complete intersection has dimension {}",
            std.len()
        )));
    }
    let socle_monomial = std[0].clone();
    let jacobian = jacobian_det(q.system().generators())?;
    let c = q.normal_form(&jacobian)?.coeff(&socle_monomial);
    if c.is_zero() {
        return Err(Error::Invariant(
            "the Jacobian determinant vanishes in the socle".into(),
        ));
    }
    Ok(SocleData {
        socle_monomial,
        jacobian,
        omega_of_socle: c.inv(),
        jacobian_coefficient: c,
    })
}

/// Nonsingularity of the socle pairing `M_k x M_(T-k) -> M_T`.
pub fn gorenstein_pairing_check(q: &GradedQuotient, socle: &SocleData, k: usize) -> Result<bool> {
    q.require_ci()?;
    let t = q.socle_degree();
    if k > t {
        return Err(Error::DegreeOutOfRange {
            degree: k as i64,
            max: t as i64,
        });
    }
    let left = q.standard_monomials(k)?;
    let right = q.standard_monomials(t - k)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    let field = q.field();
    let rows = left
        .iter()
        .map(|a| {
            right
                .iter()
                .map(|b| {
                    let prod = Poly::from_monomial(VarSpace::Primal, a.mul(b), field.one());
                    socle.omega(q, &prod)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(field, right.len(), rows).rank() == left.len())
}

/// Number of monomials of degree `d` in `n` variables.
pub fn ambient_dim(n: usize, d: u32) -> usize {
    count_monomials(n, d)
}
