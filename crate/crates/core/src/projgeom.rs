//! The two projective conditions on a complete intersection and their
//! cross-check:
//!
//! 1. the hypersurface `A = 0` of the associated form is smooth;
//! 2. no `(T-1)`-th power `l^(T-1)` of a nonzero linear form lies in `J_(T-1)`.
//!
//! Both reduce to deciding whether `n` forms of equal degree `e` in `n`
//! variables have a common projective zero. If they do not, they form a
//! regular sequence whose quotient has socle degree `n(e-1)`, so the quotient
//! vanishes in degree `n(e-1)+1`; a common zero `p` keeps the quotient
//! nonzero in every degree (evaluation at `p` survives). One rank
//! computation in that degree therefore decides the question.

use crate::assocform::AssociatedForm;
use crate::error::{Error, Result};
use crate::gradedalg::{ideal_piece, GradedQuotient};
use crate::lefschetz::check_linear;
use crate::monomial::monomials_of_degree;
use crate::poly::{Poly, VarSpace};
use crate::scalar::{multinomial, FieldConfig, Scalar};

/// `l^m`, the degree-`m` Veronese image of `l`.
pub fn veronese_power(l: &Poly, m: u32) -> Result<Poly> {
    l.require_space(VarSpace::Primal)?;
    if l.degree() != 1 {
        return Err(Error::NotLinear(l.degree()));
    }
    Ok(l.pow(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianCertificate {
    pub forms: Vec<Poly>,
    pub form_degree: u32,
    /// `n(e-1)+1`.
    pub decision_degree: u32,
    /// `dim (R/I)_D`.
    pub quotient_dim: usize,
    /// No common projective zero.
    pub artinian: bool,
}

pub fn is_artinian_system(forms: &[Poly]) -> Result<ArtinianCertificate> {
    let n = forms.len();
    let Some(first) = forms.first() else {
        return Err(Error::InvalidSystem("empty system".into()));
    };
    let e = first.degree();
    if e == 0 {
        return Err(Error::InvalidSystem(
            "forms must have positive degree".into(),
        ));
    }
    for f in forms {
        if f.degree() != e {
            return Err(Error::DegreeMismatch {
                expected: e as i64,
                found: f.degree() as i64,
            });
        }
        if f.nvars() != n || f.space() != first.space() {
            return Err(Error::InvalidSystem(
                "need n forms in the same n variables".into(),
            ));
        }
    }
    let decision_degree = n as u32 * (e - 1) + 1;
    let piece = ideal_piece(forms, n, decision_degree, first.field());
    let quotient_dim = piece.quotient_dim();
    Ok(ArtinianCertificate {
        forms: forms.to_vec(),
        form_degree: e,
        decision_degree,
        quotient_dim,
        artinian: quotient_dim == 0,
    })
}

/// Smoothness of `A = 0` via its partial derivatives.
pub fn condition_smooth_assocform(a: &AssociatedForm) -> Result<ArtinianCertificate> {
    smoothness_certificate(a.form())
}

/// Smoothness of `F = 0`: the partials of `F` have no common projective zero.
pub fn smoothness_certificate(form: &Poly) -> Result<ArtinianCertificate> {
    if form.is_zero() {
        return Err(Error::ZeroForm);
    }
    if form.degree() < 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: form.degree() as i64,
        });
    }
    let partials: Vec<Poly> = (0..form.nvars()).map(|i| form.partial(i)).collect();
    is_artinian_system(&partials)
}

/// `h_i(a)` = coefficient of the `i`-th standard monomial of `M_(T-1)` in
/// `NF((a_1 x_1 + ... + a_n x_n)^(T-1))`.
pub fn veronese_coordinate_forms(q: &GradedQuotient) -> Result<Vec<Poly>> {
    q.require_ci()?;
    let n = q.nvars();
    let field = q.field();
    let m = (q.socle_degree() - 1) as u32;
    let dim = q.hilbert_function()[m as usize];
    let mut forms = vec![Poly::zero(VarSpace::Coeff, n, m, field); dim];
    for alpha in monomials_of_degree(n, m) {
        let coeff = field.from_bigint(&multinomial(alpha.exponents()));
        let x_alpha = Poly::from_monomial(VarSpace::Primal, alpha.clone(), field.one());
        for (h, c) in forms.iter_mut().zip(q.coords(&x_alpha)?) {
            if c.is_zero() {
                continue;
            }
            *h = h.add(&Poly::from_monomial(
                VarSpace::Coeff,
                alpha.clone(),
                &coeff * &c,
            ))?;
        }
    }
    Ok(forms)
}

/// Where to look for an explicit `l` with `l^(T-1) in J_(T-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// Integer coefficient vectors in `[-r, r]^n` are enumerated.
    pub box_radius: i64,
    /// Skip enumeration when `(2r+1)^n` exceeds this.
    pub max_candidates: usize,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch {
            box_radius: 2,
            max_candidates: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseCertificate {
    pub coordinate_forms: Vec<Poly>,
    pub certificate: ArtinianCertificate,
    /// `P(J_(T-1))` misses the Veronese variety.
    pub empty: bool,
    /// Verified `l` with `NF(l^(T-1)) = 0`, when one was found.
    pub witness: Option<Poly>,
}

pub fn condition_veronese_empty(q: &GradedQuotient) -> Result<VeroneseCertificate> {
    condition_veronese_empty_with(q, &WitnessSearch::default())
}

pub fn condition_veronese_empty_with(
    q: &GradedQuotient,
    search: &WitnessSearch,
) -> Result<VeroneseCertificate> {
    let coordinate_forms = veronese_coordinate_forms(q)?;
    let certificate = is_artinian_system(&coordinate_forms)?;
    let empty = certificate.artinian;
    let witness = if empty {
        None
    } else {
        find_power_in_ideal(q, &coordinate_forms, search)?
    };
    Ok(VeroneseCertificate {
        coordinate_forms,
        certificate,
        empty,
        witness,
    })
}

/// `NF(l^(T-1)) = 0`.
pub fn power_in_ideal(q: &GradedQuotient, l: &Poly) -> Result<bool> {
    check_linear(l)?;
    let power = veronese_power(l, (q.socle_degree() - 1) as u32)?;
    Ok(q.normal_form(&power)?.is_zero())
}

/// Enumerates small integer points, projectively normalized (first nonzero
/// coordinate positive), and returns the first common zero of the
/// coordinate forms after re-verifying it against the normal form.
fn find_power_in_ideal(
    q: &GradedQuotient,
    forms: &[Poly],
    search: &WitnessSearch,
) -> Result<Option<Poly>> {
    let n = q.nvars();
    let field = q.field();
    let r = search.box_radius;
    let side = (2 * r + 1) as usize;
    if side
        .checked_pow(n as u32)
        .is_none_or(|c| c > search.max_candidates)
    {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    let mut point = vec![-r; n];
    'odometer: loop {
        if point.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
            candidates.push(point.clone());
        }
        for i in (0..n).rev() {
            if point[i] < r {
                point[i] += 1;
                continue 'odometer;
            }
            point[i] = -r;
        }
        break;
    }
    // smallest height first, then sparsest, then x before y before z
    candidates.sort_by_key(|c| {
        let height = c.iter().map(|v| v.abs()).max().unwrap_or(0);
        let support = c.iter().filter(|&&v| v != 0).count();
        (height, support, std::cmp::Reverse(c.clone()))
    });
    for c in candidates {
        let a: Vec<Scalar> = c.iter().map(|&v| field.from_i64(v)).collect();
        if forms.iter().all(|h| h.evaluate(&a).is_zero()) {
            let l = Poly::linear(VarSpace::Primal, &a, field);
            if power_in_ideal(q, &l)? {
                return Ok(Some(l));
            }
        }
    }
    Ok(None)
}

/// Both conditions, evaluated independently, and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThmA3Check {
    pub smooth: ArtinianCertificate,
    pub veronese: VeroneseCertificate,
    pub consistent: bool,
}

pub fn thm_a3_check(q: &GradedQuotient, a: &AssociatedForm) -> Result<ThmA3Check> {
    let smooth = condition_smooth_assocform(a)?;
    let veronese = condition_veronese_empty(q)?;
    let consistent = smooth.artinian == veronese.empty;
    Ok(ThmA3Check {
        smooth,
        veronese,
        consistent,
    })
}

/// True iff condition (1) and condition (2) agree.
pub fn thm_a3_consistency(q: &GradedQuotient, a: &AssociatedForm) -> Result<bool> {
    Ok(thm_a3_check(q, a)?.consistent)
}

/// `F_p`-screened Artinian verdict for forms with rational coefficients:
/// reduction mod `p` can only lose rank, so an Artinian verdict mod `p` is
/// final, while a non-Artinian one is recomputed over Q.
pub fn screened_is_artinian(forms: &[Poly], p: u64) -> Result<(ArtinianCertificate, bool)> {
    let field = FieldConfig::prime(p)?;
    let reduced = forms
        .iter()
        .map(|f| reduce_mod(f, field))
        .collect::<Result<Vec<_>>>()?;
    let screen = is_artinian_system(&reduced)?;
    if screen.artinian {
        return Ok((screen, false));
    }
    Ok((is_artinian_system(forms)?, true))
}

/// Image of a rational polynomial in a prime field; fails if a denominator
/// vanishes mod `p`.
pub fn reduce_mod(f: &Poly, field: FieldConfig) -> Result<Poly> {
    let terms = f
        .terms()
        .map(|(m, c)| {
            let q = c
                .as_rational()
                .ok_or_else(|| Error::InvalidField("expected rational coefficients".into()))?;
            Ok((m.clone(), field.from_ratio(q.numer(), q.denom())?))
        })
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(f.space(), f.nvars(), f.degree(), field, terms)
}
