use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Arithmetic mode of a [`Scalar`], ordered by promotion: `Exact < Float < Complex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Complex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
            Mode::Complex => "complex",
        })
    }
}

/// A number in one of three arithmetic modes.
///
/// Exact values are arbitrary-precision rationals kept in lowest terms with a
/// positive denominator (guaranteed by [`BigRational`]). Mixing modes promotes
/// to the larger one, so `exact + float` is a float and `exact * complex` is
/// complex.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
    Complex(Complex64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact `num/den`. Panics if `den == 0`; meant for literal constants.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "Scalar::ratio with zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
            Scalar::Complex(_) => Mode::Complex,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
            Scalar::Complex(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_one(),
            Scalar::Float(x) => *x == 1.0,
            Scalar::Complex(z) => z.re == 1.0 && z.im == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// The value as an `i64` when it is an exact integer (or a float holding one).
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Exact(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Float(x) if x.fract() == 0.0 && x.abs() < 9.0e15 => Some(*x as i64),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(x) => Some(*x),
            Scalar::Complex(z) if z.im == 0.0 => Some(z.re),
            Scalar::Complex(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Float(x) => Complex64::new(*x, 0.0),
            Scalar::Complex(z) => *z,
        }
    }

    /// Converts to `mode`. Narrowing conversions: float to exact is refused,
    /// complex to anything narrower is refused.
    pub fn to_mode(&self, mode: Mode) -> Result<Scalar> {
        match (self, mode) {
            (s, m) if s.mode() == m => Ok(s.clone()),
            (Scalar::Exact(r), Mode::Float) => Ok(Scalar::Float(r.to_f64().unwrap_or(f64::NAN))),
            (s, Mode::Complex) => Ok(Scalar::Complex(s.to_complex())),
            (Scalar::Complex(_), _) => Err(Error::ComplexInExactMode),
            (Scalar::Float(x), Mode::Exact) => Err(Error::NotReal(format!("{x} is not exact"))),
            _ => unreachable!(),
        }
    }

    /// The exact binary rational a finite float stands for; exact values pass
    /// through. Complex and non-finite values are refused.
    pub fn lift_exact(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(_) => Ok(self.clone()),
            Scalar::Float(x) => BigRational::from_float(*x)
                .map(Scalar::Exact)
                .ok_or_else(|| Error::NotReal(format!("{x} is not finite"))),
            Scalar::Complex(_) => Err(Error::ComplexInExactMode),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.abs().to_f64().unwrap_or(f64::INFINITY),
            Scalar::Float(x) => x.abs(),
            Scalar::Complex(z) => z.norm(),
        }
    }

    /// Absolute value, staying exact for exact input.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            other => Scalar::Float(other.abs_f64()),
        }
    }

    /// Ordering of real values; `None` for complex input or NaN.
    pub fn partial_cmp_real(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Complex(_), _) | (_, Scalar::Complex(_)) => None,
            (a, b) => a.to_f64()?.partial_cmp(&b.to_f64()?),
        }
    }

    pub fn lt(&self, other: &Scalar) -> bool {
        self.partial_cmp_real(other) == Some(Ordering::Less)
    }

    pub fn gt(&self, other: &Scalar) -> bool {
        self.partial_cmp_real(other) == Some(Ordering::Greater)
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Float(x) => Scalar::Float(1.0 / x),
            Scalar::Complex(z) => Scalar::Complex(z.inv()),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power by repeated squaring. Negative powers of zero are an error.
    pub fn powi(&self, exp: i64) -> Result<Scalar> {
        if exp < 0 {
            return self.recip()?.powi(-exp);
        }
        if let Scalar::Float(x) = self {
            if let Ok(e) = i32::try_from(exp) {
                return Ok(Scalar::Float(x.powi(e)));
            }
        }
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Exact(_) => Scalar::one(),
            Scalar::Float(_) => Scalar::Float(1.0),
            Scalar::Complex(_) => Scalar::complex(1.0, 0.0),
        };
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// General power. Integer exponents use [`Scalar::powi`]; otherwise the
    /// result is a float (positive real base) or complex. An exact base with a
    /// non-integer exponent is refused, since the result would not be rational.
    pub fn pow(&self, exp: &Scalar) -> Result<Scalar> {
        if let Some(e) = exp.as_integer() {
            if exp.is_exact() || !self.is_exact() {
                return self.powi(e);
            }
        }
        match (self, exp) {
            (Scalar::Exact(_), Scalar::Exact(_)) => {
                Err(Error::IrrationalPower { base: self.to_string(), exponent: exp.to_string() })
            }
            (Scalar::Complex(_), _) | (_, Scalar::Complex(_)) => {
                Ok(Scalar::Complex(self.to_complex().powc(exp.to_complex())))
            }
            _ => {
                let b = self.to_f64().unwrap_or(f64::NAN);
                let e = exp.to_f64().unwrap_or(f64::NAN);
                if b > 0.0 {
                    Ok(Scalar::Float(b.powf(e)))
                } else {
                    Ok(Scalar::Complex(Complex64::new(b, 0.0).powf(e)))
                }
            }
        }
    }

    /// Square root: exact when the rational is a perfect square, float for other
    /// nonnegative reals, complex otherwise.
    pub fn sqrt(&self) -> Scalar {
        match self {
            Scalar::Exact(r) if !r.is_negative() => {
                let (n, d) = (r.numer(), r.denom());
                let (sn, sd) = (n.sqrt(), d.sqrt());
                if &(&sn * &sn) == n && &(&sd * &sd) == d {
                    Scalar::Exact(BigRational::new(sn, sd))
                } else {
                    Scalar::Float(r.to_f64().unwrap_or(f64::NAN).sqrt())
                }
            }
            Scalar::Float(x) if *x >= 0.0 => Scalar::Float(x.sqrt()),
            other => Scalar::Complex(other.to_complex().sqrt()),
        }
    }

    /// `|self - other| <= tol * max(1, |self|, |other|)`.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, other) {
            return a == b;
        }
        let scale = 1.0_f64.max(self.abs_f64()).max(other.abs_f64());
        (self - other).abs_f64() <= tol * scale
    }

    /// Parses `p/q`, an integer, or (in float mode only) a decimal literal.
    pub fn parse(s: &str, mode: Mode) -> Result<Scalar> {
        let t = s.trim();
        if let Some(r) = parse_rational(t) {
            return Scalar::Exact(r).to_mode(mode);
        }
        if mode != Mode::Exact {
            if let Ok(x) = t.parse::<f64>() {
                return Scalar::Float(x).to_mode(mode);
            }
        }
        Err(Error::Parse(s.to_string()))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Exact parse; use [`Scalar::parse`] to admit decimals.
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s, Mode::Exact)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Complex(z)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => write!(f, "{x:?}"),
            Scalar::Complex(z) if z.im.is_sign_negative() => write!(f, "{:?}-{:?}i", z.re, -z.im),
            Scalar::Complex(z) => write!(f, "{:?}+{:?}i", z.re, z.im),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Complex(_), _) | (_, Scalar::Complex(_)) => {
                        Scalar::Complex(self.to_complex() $op rhs.to_complex())
                    }
                    (a, b) => Scalar::Float(
                        a.to_f64().unwrap_or(f64::NAN) $op b.to_f64().unwrap_or(f64::NAN),
                    ),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
            Scalar::Complex(z) => Scalar::Complex(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

/// Exact values serialize as strings (`"-3/7"`), floats as JSON numbers and
/// complex values as `{"re": .., "im": ..}`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Float(x) => serializer.serialize_f64(*x),
            Scalar::Complex(z) => {
                let mut st = serializer.serialize_struct("Complex", 2)?;
                st.serialize_field("re", &z.re)?;
                st.serialize_field("im", &z.im)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
            Complex { re: f64, im: f64 },
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => {
                parse_rational(&s).map(Scalar::Exact).ok_or_else(|| de::Error::custom(format!("bad rational {s:?}")))
            }
            Repr::Number(x) => Ok(Scalar::Float(x)),
            Repr::Complex { re, im } => Ok(Scalar::complex(re, im)),
        }
    }
}
