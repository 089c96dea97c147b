//! Exact scalars: arbitrary-precision rationals or residues modulo an odd prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default screening prime.
pub const DEFAULT_PRIME: u64 = 65537;

/// Selects the coefficient field every value of a computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Rational,
    Prime(u64),
}

impl FieldConfig {
    /// Builds a prime field, rejecting anything that is not an odd prime below 2^32.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if !(3..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not an odd prime below 2^32"
            )));
        }
        Ok(FieldConfig::Prime(p))
    }

    pub fn is_rational(self) -> bool {
        matches!(self, FieldConfig::Rational)
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldConfig::Rational => Scalar::Q(BigRational::zero()),
            FieldConfig::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> Scalar {
        match self {
            FieldConfig::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(x))),
            FieldConfig::Prime(p) => Scalar::Fp {
                v: x.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, x: &BigInt) -> Scalar {
        match self {
            FieldConfig::Rational => Scalar::Q(BigRational::from_integer(x.clone())),
            FieldConfig::Prime(p) => {
                let r = x.mod_floor(&BigInt::from(p));
                Scalar::Fp {
                    v: r.to_u64().expect("residue fits in u64"),
                    p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        match self {
            FieldConfig::Rational => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Q(BigRational::new(num.clone(), den.clone())))
            }
            FieldConfig::Prime(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.from_bigint(num) * d.inv())
            }
        }
    }

    /// Number of elements when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldConfig::Rational => None,
            FieldConfig::Prime(p) => Some(p),
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rational => write!(f, "q"),
            FieldConfig::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = Error;

    /// Accepts `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldConfig::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad prime '{rest}'")))?;
            return FieldConfig::prime(p);
        }
        if s.eq_ignore_ascii_case("fp") {
            return FieldConfig::prime(DEFAULT_PRIME);
        }
        Err(Error::InvalidField(format!(
            "expected 'q' or 'fp:<p>', got '{s}'"
        )))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are kept reduced with positive denominator and
/// residues in `[0, p)`. Mixing the two variants (or two moduli) is an
/// invariant breach and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldConfig {
        match self {
            Scalar::Q(_) => FieldConfig::Rational,
            Scalar::Fp { p, .. } => FieldConfig::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// True for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    /// Symmetric integer representative of a residue, or the rational itself.
    pub fn lift_to_rational(&self) -> BigRational {
        match self {
            Scalar::Q(q) => q.clone(),
            Scalar::Fp { v, p } => {
                let v = *v as i64;
                let p = *p as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
        }
    }

    fn same_field(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "mixed-field arithmetic: {} and {}",
                self.field(),
                other.field()
            );
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Fp {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                }
            }
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: if a >= b { a - b } else { a + p - b },
                p: *p,
            },
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// n! as a field element.
pub fn factorial(field: FieldConfig, n: u32) -> Scalar {
    (1..=n as i64).fold(field.one(), |acc, i| acc * field.from_i64(i))
}

/// Multinomial coefficient `(sum alpha)! / prod(alpha_i!)` as an exact integer.
pub fn multinomial(alpha: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: u64 = 0;
    for &a in alpha {
        for j in 1..=a as u64 {
            total += 1;
            // running binomial product stays integral: acc * total / j
            acc = acc * BigInt::from(total) / BigInt::from(j);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_field_configs() {
        assert_eq!("q".parse::<FieldConfig>().unwrap(), FieldConfig::Rational);
        assert_eq!(
            "fp:65537".parse::<FieldConfig>().unwrap(),
            FieldConfig::Prime(65537)
        );
        assert!("fp:65536".parse::<FieldConfig>().is_err());
        assert!("fp:2".parse::<FieldConfig>().is_err());
        assert!("r".parse::<FieldConfig>().is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let q = FieldConfig::Rational;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert!(q.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldConfig::Prime(7);
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Fp { v: 6, p: 7 });
        assert_eq!(&a * &a, f.one());
        for x in 1..7 {
            let s = f.from_i64(x);
            assert_eq!(&s * &s.inv(), f.one());
        }
        assert_eq!(f.from_i64(3).pow(6), f.one());
        assert_eq!(f.from_i64(5).lift_to_rational().to_string(), "-2");
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(&[2, 1, 0]), BigInt::from(3));
        assert_eq!(multinomial(&[3, 0, 0]), BigInt::from(1));
        assert_eq!(multinomial(&[2, 2, 2]), BigInt::from(90));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixing_fields_panics() {
        let _ = FieldConfig::Rational.one() + FieldConfig::Prime(5).one();
    }
}
