//! The associated form `A(y) = omega((y_1 x_1 + ... + y_n x_n)^T)` and its
//! apolarity check.
//!
//! Expanding the `T`-th power by the multinomial theorem gives the closed
//! coefficient formula `coeff(y^alpha) = multinomial(T; alpha) * omega(x^alpha)`,
//! which needs one normal form per monomial of degree `T`.

use crate::error::{Error, Result};
use crate::gradedalg::{ambient_dim, GradedQuotient, SocleData, SystemInput};
use crate::linalg::Matrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{apolar_apply, gradient, Poly, VarSpace};
use crate::scalar::{multinomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedForm {
    form: Poly,
    socle: SocleData,
    /// `(alpha, multinomial(T; alpha) * omega(x^alpha))` for every `|alpha| = T`, largest first.
    coefficients: Vec<(Monomial, Scalar)>,
}

impl AssociatedForm {
    /// The form with its exact normalization `omega(Jac) = 1`.
    pub fn form(&self) -> &Poly {
        &self.form
    }

    /// Scaled so that the leading coefficient is 1.
    pub fn projective(&self) -> Poly {
        self.form.monic()
    }

    pub fn socle(&self) -> &SocleData {
        &self.socle
    }

    pub fn coefficients(&self) -> &[(Monomial, Scalar)] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.form.degree() as usize
    }
}

pub fn associated_form(q: &GradedQuotient, socle: &SocleData) -> Result<AssociatedForm> {
    q.require_ci()?;
    let n = q.nvars();
    let t = q.socle_degree() as u32;
    let field = q.field();
    let coefficients = monomials_of_degree(n, t)
        .into_iter()
        .map(|alpha| {
            let x_alpha = Poly::from_monomial(VarSpace::Primal, alpha.clone(), field.one());
            let w = socle.omega(q, &x_alpha)?;
            let c = &field.from_bigint(&multinomial(alpha.exponents())) * &w;
            Ok((alpha, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let form = Poly::from_terms(VarSpace::Dual, n, t, field, coefficients.iter().cloned())?;
    if form.is_zero() {
        return Err(Error::Invariant("associated form vanishes".into()));
    }
    Ok(AssociatedForm {
        form,
        socle: socle.clone(),
        coefficients,
    })
}

/// Matrix of `S_d -> R_(T-d)`, `g -> g o F`, on monomial bases (largest first);
/// row `i` is the image of the `i`-th monomial of degree `d`.
pub fn catalecticant(form: &Poly, d: u32) -> Result<Matrix> {
    form.require_space(VarSpace::Dual)?;
    if d > form.degree() {
        return Err(Error::DegreeOutOfRange {
            degree: d as i64,
            max: form.degree() as i64,
        });
    }
    let n = form.nvars();
    let field = form.field();
    let targets = monomials_of_degree(n, form.degree() - d);
    let rows = monomials_of_degree(n, d)
        .into_iter()
        .map(|m| {
            let g = Poly::from_monomial(VarSpace::Primal, m, field.one());
            Ok(apolar_apply(&g, form)?.coefficients_on(&targets))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(field, targets.len(), rows))
}

/// Per-degree comparison of `Ann(A)_d` with `J_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarReport {
    pub annihilator_dims: Vec<usize>,
    pub ideal_dims: Vec<usize>,
    /// `f_j o A = 0` for every generator.
    pub generators_annihilate: bool,
    pub equal: bool,
}

pub fn apolar_annihilator_dims(a: &AssociatedForm, q: &GradedQuotient) -> Result<ApolarReport> {
    let n = q.nvars();
    let t = a.degree();
    let mut annihilator_dims = Vec::with_capacity(t + 1);
    let mut ideal_dims = Vec::with_capacity(t + 1);
    for d in 0..=t {
        let cat = catalecticant(a.form(), d as u32)?;
        annihilator_dims.push(ambient_dim(n, d as u32) - cat.rank());
        ideal_dims.push(q.piece(d)?.ideal_dim());
    }
    let mut generators_annihilate = true;
    for g in q.system().generators() {
        if !apolar_apply(g, a.form())?.is_zero() {
            generators_annihilate = false;
        }
    }
    let equal = generators_annihilate && annihilator_dims == ideal_dims;
    Ok(ApolarReport {
        annihilator_dims,
        ideal_dims,
        generators_annihilate,
        equal,
    })
}

/// The gradient system of `f`, whose quotient is the Milnor algebra.
pub fn milnor_system(f: &Poly) -> Result<SystemInput> {
    if f.degree() < 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: f.degree() as i64,
        });
    }
    SystemInput::from_generators(gradient(f)?, f.field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::{certify_complete_intersection, socle_functional};
    use crate::parse::parse_poly;
    use crate::scalar::FieldConfig;

    const Q: FieldConfig = FieldConfig::Rational;
    const XYZ: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> Poly {
        parse_poly(s, &XYZ, Q).unwrap()
    }

    fn dual(s: &str) -> Poly {
        parse_poly(s, &["u", "v", "w"], Q)
            .unwrap()
            .with_space(VarSpace::Dual)
    }

    fn form_of(gens: &[&str]) -> (GradedQuotient, AssociatedForm) {
        let sys = SystemInput::new(
            XYZ.iter().map(|s| s.to_string()).collect(),
            gens.iter().map(|g| p(g)).collect(),
            Q,
        )
        .unwrap();
        let q = GradedQuotient::new(sys);
        let s = socle_functional(&q).unwrap();
        let a = associated_form(&q, &s).unwrap();
        (q, a)
    }

    #[test]
    fn squares_give_a_multiple_of_uvw() {
        let (_, a) = form_of(&["x^2", "y^2", "z^2"]);
        assert_eq!(a.form(), &dual("3/4*u*v*w"));
        assert_eq!(a.projective(), dual("u*v*w"));
    }

    #[test]
    fn fermat_gradients() {
        let (_, a) = form_of(&["3*x^2", "3*y^2", "3*z^2"]);
        assert_eq!(a.form(), &dual("1/36*u*v*w"));
    }

    #[test]
    fn hesse_pencil_member() {
        let (q, a) = form_of(&["3*x^2 - 6*y*z", "3*y^2 - 6*x*z", "3*z^2 - 6*x*y"]);
        assert_eq!(a.form(), &dual("-1/756*(u^3 + v^3 + w^3 + 3*u*v*w)"));
        assert!(apolar_apply(&p("x^2 - 2*y*z"), a.form()).unwrap().is_zero());
        let r = apolar_annihilator_dims(&a, &q).unwrap();
        assert!(r.equal);
        assert_eq!(r.annihilator_dims[0], 0);
    }

    #[test]
    fn annihilator_of_uvw() {
        let (q, a) = form_of(&["x^2", "y^2", "z^2"]);
        let r = apolar_annihilator_dims(&a, &q).unwrap();
        assert_eq!(r.annihilator_dims, vec![0, 0, 3, 9]);
        assert_eq!(r.ideal_dims, vec![0, 0, 3, 9]);
        assert!(r.generators_annihilate && r.equal);
        // kernel of the degree-2 catalecticant is spanned by the squares
        let cat = catalecticant(a.form(), 2).unwrap();
        assert_eq!(cat.nrows(), 6);
        assert_eq!(cat.left_kernel().len(), 3);
    }

    #[test]
    fn milnor_systems() {
        let sys = milnor_system(&p("x^3 + y^3 + z^3")).unwrap();
        assert_eq!(sys.generators(), &[p("3*x^2"), p("3*y^2"), p("3*z^2")]);
        assert_eq!(sys.socle_degree(), 3);
        let smooth = milnor_system(&p("x^3 + y^3 + z^3 - 6*x*y*z")).unwrap();
        assert!(certify_complete_intersection(&smooth).is_ci);
        let cone = milnor_system(&p("x^3")).unwrap();
        assert!(!certify_complete_intersection(&cone).is_ci);
        assert!(milnor_system(&p("x^2 + y^2")).is_err());
    }

    #[test]
    fn rescaling_a_generator_rescales_the_form() {
        let (_, a) = form_of(&["x^2 - 2*y*z", "y^2 - 2*x*z", "z^2 - 2*x*y"]);
        let (_, b) = form_of(&["5*x^2 - 10*y*z", "y^2 - 2*x*z", "z^2 - 2*x*y"]);
        assert_eq!(
            b.form(),
            &a.form().scale(&Q.from_ratio(&1.into(), &5.into()).unwrap())
        );
        assert_eq!(a.projective(), b.projective());
    }
}
