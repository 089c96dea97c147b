//! Sparse homogeneous polynomials and the calculus used throughout the crate:
//! partial derivatives, Jacobian determinants and the apolar action of
//! `x_i` as `d/dy_i` on dual forms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{FieldConfig, Scalar};

/// Which family of variables a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarSpace {
    /// `x_1..x_n`, the ring the ideal lives in.
    Primal,
    /// `y_1..y_n`, dual variables carrying inverse systems.
    Dual,
    /// `a_1..a_n`, coefficients of a linear form `sum a_i x_i`.
    Coeff,
}

impl VarSpace {
    pub fn name(self) -> &'static str {
        match self {
            VarSpace::Primal => "primal",
            VarSpace::Dual => "dual",
            VarSpace::Coeff => "coefficient",
        }
    }

    pub fn default_names(self, n: usize) -> Vec<String> {
        let stem = match self {
            VarSpace::Primal => "x",
            VarSpace::Dual => "y",
            VarSpace::Coeff => "a",
        };
        (1..=n).map(|i| format!("{stem}{i}")).collect()
    }
}

/// Homogeneous polynomial: every stored coefficient is nonzero and every
/// monomial has degree `degree`. The zero polynomial keeps its degree tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    space: VarSpace,
    nvars: usize,
    degree: u32,
    field: FieldConfig,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(space: VarSpace, nvars: usize, degree: u32, field: FieldConfig) -> Self {
        Poly {
            space,
            nvars,
            degree,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, nvars: usize, c: Scalar) -> Self {
        Poly::from_monomial(space, Monomial::one(nvars), c)
    }

    pub fn from_monomial(space: VarSpace, m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(space, m.nvars(), m.degree(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable with index `i` (0-based).
    pub fn var(space: VarSpace, nvars: usize, i: usize, field: FieldConfig) -> Self {
        Poly::from_monomial(space, Monomial::var(nvars, i), field.one())
    }

    /// The linear form `sum c_i * var_i`.
    pub fn linear(space: VarSpace, coeffs: &[Scalar], field: FieldConfig) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(space, n, 1, field);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c);
        }
        p
    }

    /// Builds a polynomial from terms, collecting repeated monomials.
    pub fn from_terms(
        space: VarSpace,
        nvars: usize,
        degree: u32,
        field: FieldConfig,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(space, nvars, degree, field);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::InvalidSystem(format!(
                    "monomial with {} variables in a ring with {nvars}",
                    m.nvars()
                )));
            }
            if m.degree() != degree {
                return Err(Error::NonHomogeneous {
                    first: degree,
                    second: m.degree(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Same coefficients, relabelled into another variable family.
    pub fn with_space(mut self, space: VarSpace) -> Self {
        self.space = space;
        self
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.degree(), self.degree);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.space != other.space {
            return Err(Error::WrongVarSpace {
                expected: self.space.name(),
                found: other.space.name(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::InvalidSystem(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub(crate) fn require_space(&self, space: VarSpace) -> Result<()> {
        if self.space != space {
            return Err(Error::WrongVarSpace {
                expected: space.name(),
                found: self.space.name(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                found: other.degree as i64,
            });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.space, self.nvars, self.degree, self.field);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(
            self.space,
            self.nvars,
            self.degree + other.degree,
            self.field,
        );
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero(self.space, self.nvars, self.degree + m.degree(), self.field);
        out.terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.mul(m), c.clone()))
            .collect();
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.space, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// `d/dvar_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(
            self.space,
            self.nvars,
            self.degree.saturating_sub(1),
            self.field,
        );
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), &(c * &self.field.from_i64(e as i64)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                t *= &x.pow(e);
            }
            acc += &t;
        }
        acc
    }

    /// Coefficient list on an explicit monomial basis.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Divides by the leading coefficient so the largest monomial has coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Renders with the given variable names.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.fmt_with(names);
            if m.degree() == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.space.default_names(self.nvars)))
    }
}

/// `(df/dx_1, ..., df/dx_n)` for a form in the primal variables.
pub fn gradient(f: &Poly) -> Result<Vec<Poly>> {
    f.require_space(VarSpace::Primal)?;
    Ok((0..f.nvars()).map(|i| f.partial(i)).collect())
}

/// Determinant of a square matrix of polynomials, expanded exactly by
/// dynamic programming over the set of used columns.
pub fn determinant(entries: &[Vec<Poly>]) -> Result<Poly> {
    let n = entries.len();
    if n == 0 || entries.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidSystem(
            "determinant needs a square matrix".into(),
        ));
    }
    let space = entries[0][0].space();
    let nvars = entries[0][0].nvars();
    let field = entries[0][0].field();
    // row degree = degree of entries in that row; all entries of a row share it
    let mut partial: Vec<Option<Poly>> = vec![None; 1 << n];
    partial[0] = Some(Poly::constant(space, nvars, field.one()));
    for (r, row) in entries.iter().enumerate() {
        for mask in 0usize..(1 << n) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let Some(acc) = partial[mask].take() else {
                continue;
            };
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 || entry.is_zero() {
                    continue;
                }
                let higher = (mask >> (j + 1)).count_ones();
                let mut term = acc.mul(entry)?;
                if higher % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut partial[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                });
            }
        }
    }
    let expected: u32 = entries.iter().map(|row| row[0].degree()).sum();
    Ok(partial[(1 << n) - 1]
        .take()
        .unwrap_or_else(|| Poly::zero(space, nvars, expected, field)))
}

/// `det(df_i/dx_j)`, homogeneous of degree `sum(d_j - 1)`.
pub fn jacobian_det(forms: &[Poly]) -> Result<Poly> {
    let n = forms.len();
    for f in forms {
        f.require_space(VarSpace::Primal)?;
        if f.nvars() != n {
            return Err(Error::InvalidSystem(format!(
                "{n} forms in {} variables",
                f.nvars()
            )));
        }
        if f.degree() == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
    }
    let matrix: Vec<Vec<Poly>> = forms
        .iter()
        .map(|f| (0..n).map(|j| f.partial(j)).collect())
        .collect();
    let det = determinant(&matrix)?;
    let expected: u32 = forms.iter().map(|f| f.degree() - 1).sum();
    if det.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected: expected as i64,
            found: det.degree() as i64,
        });
    }
    Ok(det)
}

/// `g o F`: the primal form `g` acting on the dual form `F` by
/// differentiation, `x_i` acting as `d/dy_i`.
pub fn apolar_apply(g: &Poly, f: &Poly) -> Result<Poly> {
    g.require_space(VarSpace::Primal)?;
    f.require_space(VarSpace::Dual)?;
    if g.nvars() != f.nvars() {
        return Err(Error::InvalidSystem(
            "apolar action across different rings".into(),
        ));
    }
    if g.degree() > f.degree() {
        return Err(Error::DegreeMismatch {
            expected: f.degree() as i64,
            found: g.degree() as i64,
        });
    }
    let field = f.field();
    let mut out = Poly::zero(VarSpace::Dual, f.nvars(), f.degree() - g.degree(), field);
    for (alpha, cg) in g.terms() {
        for (beta, cf) in f.terms() {
            let Some(rest) = beta.checked_div(alpha) else {
                continue;
            };
            // prod beta_i! / (beta_i - alpha_i)!
            let mut falling = field.one();
            for (&b, &a) in beta.exponents().iter().zip(alpha.exponents()) {
                for t in (b - a + 1)..=b {
                    falling *= &field.from_i64(t as i64);
                }
            }
            out.add_term(rest, &(&(cg * cf) * &falling));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    const Q: FieldConfig = FieldConfig::Rational;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &["x", "y", "z"], Q).unwrap()
    }

    fn dual(s: &str) -> Poly {
        parse_poly(s, &["u", "v", "w"], Q)
            .unwrap()
            .with_space(VarSpace::Dual)
    }

    #[test]
    fn gradient_of_fermat_cubic() {
        let g = gradient(&xyz("x^3 + y^3 + z^3")).unwrap();
        assert_eq!(g, vec![xyz("3*x^2"), xyz("3*y^2"), xyz("3*z^2")]);
        let g = gradient(&xyz("x^3 + y^3 + z^3 - 6*x*y*z")).unwrap();
        assert_eq!(
            g,
            vec![
                xyz("3*x^2 - 6*y*z"),
                xyz("3*y^2 - 6*x*z"),
                xyz("3*z^2 - 6*x*y")
            ]
        );
    }

    #[test]
    fn euler_identity() {
        let f = xyz("x^2*y");
        let g = gradient(&f).unwrap();
        let mut acc = Poly::zero(VarSpace::Primal, 3, 3, Q);
        for (i, gi) in g.iter().enumerate() {
            acc = acc
                .add(&Poly::var(VarSpace::Primal, 3, i, Q).mul(gi).unwrap())
                .unwrap();
        }
        assert_eq!(acc, f.scale(&Q.from_i64(3)));
    }

    #[test]
    fn gradient_rejects_dual_forms() {
        assert!(matches!(
            gradient(&dual("u^3")),
            Err(Error::WrongVarSpace { .. })
        ));
    }

    #[test]
    fn jacobian_of_squares() {
        let j = jacobian_det(&[xyz("x^2"), xyz("y^2"), xyz("z^2")]).unwrap();
        assert_eq!(j, xyz("8*x*y*z"));
    }

    #[test]
    fn jacobian_alternates_under_row_swap() {
        let a = xyz("x^2 - 2*y*z");
        let b = xyz("y^2 + x*z");
        let c = xyz("z^3 + x*y*z");
        let j1 = jacobian_det(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let j2 = jacobian_det(&[b, a, c]).unwrap();
        assert_eq!(j1, j2.neg());
        assert_eq!(j1.degree(), 4);
    }

    #[test]
    fn jacobian_of_pure_powers() {
        // det diag(d x_i^(d-1)) = d^n prod x_i^(d-1)
        let j = jacobian_det(&[xyz("x^3"), xyz("y^3"), xyz("z^3")]).unwrap();
        assert_eq!(j, xyz("27*x^2*y^2*z^2"));
    }

    #[test]
    fn apolar_examples() {
        let x1 = xyz("x");
        assert_eq!(apolar_apply(&x1, &dual("u^3")).unwrap(), dual("3*u^2"));
        assert_eq!(
            apolar_apply(&xyz("x*y"), &dual("u^2*v")).unwrap(),
            dual("2*u")
        );
        let r = apolar_apply(&xyz("x^2 - 2*y*z"), &dual("u^3 + v^3 + w^3 + 3*u*v*w")).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 1);
    }

    #[test]
    fn apolar_degree_error() {
        assert!(matches!(
            apolar_apply(&xyz("x^3"), &dual("u^2")),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn display_uses_canonical_signs() {
        assert_eq!(
            xyz("x^2 - 2*y*z").fmt_with(&["x".into(), "y".into(), "z".into()]),
            "x^2 - 2*y*z"
        );
        assert_eq!(xyz("-1/2*x + y").to_string(), "-1/2*x1 + x2");
    }
}
