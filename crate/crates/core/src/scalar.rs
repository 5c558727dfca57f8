//! Scalar fields used by every matrix computation.
//!
//! Two backends implement [`Scalar`]:
//!
//! * [`GaussRational`], exact complex rationals `p + q·i` with arbitrary
//!   precision numerator and denominator. Equality is decidable and no
//!   rounding ever happens.
//! * [`Complex64`], ordinary double precision complex numbers. Zero tests take
//!   an explicit threshold supplied by the caller.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
pub use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex field element.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for backends with exact arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_gaussian(re: i64, im: i64) -> Self;
    /// Converts a float complex. Exact backends keep the binary value exactly.
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(&self) -> Complex64;
    fn conj(&self) -> Self;
    /// Exact comparison with zero.
    fn is_zero(&self) -> bool;
    /// Zero test used by rank decisions. Exact backends ignore `threshold`.
    fn is_negligible(&self, threshold: f64) -> bool;
    /// Parses a real number (`3`, `-1/2`, `0.25`, `1e-3`).
    fn parse_real(text: &str) -> Option<Self>;
    /// Exact value (floats convert their binary value exactly).
    fn to_exact(&self) -> GaussRational;
    /// Nearest representable value.
    fn from_exact(v: &GaussRational) -> Self;
    /// `|z|` as a real scalar, when the backend can represent it exactly.
    fn modulus(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_gaussian(v, 0)
    }

    fn from_f64(v: f64) -> Self {
        Self::from_c64(Complex64::new(v, 0.0))
    }

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.clone() + a.clone() * b.clone();
    }

    /// `|self|²` kept in the field.
    fn norm_sqr(&self) -> Self {
        self.clone() * self.conj()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_gaussian(re: i64, im: i64) -> Self {
        Complex64::new(re as f64, im as f64)
    }

    fn from_c64(z: Complex64) -> Self {
        z
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn is_negligible(&self, threshold: f64) -> bool {
        self.norm() <= threshold
    }

    fn parse_real(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: f64 = num.trim().parse().ok()?;
            let d: f64 = den.trim().parse().ok()?;
            if d == 0.0 {
                return None;
            }
            return Some(Complex64::new(n / d, 0.0));
        }
        let v: f64 = text.parse().ok()?;
        v.is_finite().then(|| Complex64::new(v, 0.0))
    }

    fn to_exact(&self) -> GaussRational {
        GaussRational::from_c64(*self)
    }

    fn from_exact(v: &GaussRational) -> Self {
        v.to_c64()
    }

    fn modulus(&self) -> Option<Self> {
        Some(Complex64::new(self.norm(), 0.0))
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Exact complex rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }

    /// Parses a rational from `p`, `p/q` or a decimal literal.
    pub fn parse_rational(text: &str) -> Option<BigRational> {
        let text = text.trim();
        if text.is_empty() {
            return None;
        }
        if let Some((num, den)) = text.split_once('/') {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(BigRational::new(n, d));
        }
        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
            None => (text, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let joined = format!("{int_part}{frac_part}");
        let mut value = BigRational::from_integer(joined.parse::<BigInt>().ok()?);
        let scale = exponent - frac_part.len() as i32;
        let ten = BigRational::from_integer(BigInt::from(10));
        for _ in 0..scale.unsigned_abs() {
            if scale > 0 {
                value *= &ten;
            } else {
                value /= &ten;
            }
        }
        Some(if negative { -value } else { value })
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator and denominator may both overflow f64 on their own
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn ratio_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        mul_ref(&self, &rhs)
    }
}

fn mul_ref(a: &GaussRational, b: &GaussRational) -> GaussRational {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussRational::new(&a.re * &b.re, BigRational::zero());
    }
    GaussRational::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
}

impl Div for GaussRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.im.is_zero() {
            return Self::new(self.re / &rhs.re, self.im / &rhs.re);
        }
        let den = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        Self::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &den,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &den,
        )
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    fn from_gaussian(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    fn from_c64(z: Complex64) -> Self {
        Self::new(ratio_from_f64(z.re), ratio_from_f64(z.im))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_negligible(&self, _threshold: f64) -> bool {
        self.is_zero()
    }

    fn parse_real(text: &str) -> Option<Self> {
        Self::parse_rational(text).map(|re| Self::new(re, BigRational::zero()))
    }

    fn to_exact(&self) -> GaussRational {
        self.clone()
    }

    fn from_exact(v: &GaussRational) -> Self {
        v.clone()
    }

    fn modulus(&self) -> Option<Self> {
        if self.im.is_zero() {
            return Some(Self::new(self.re.abs(), BigRational::zero()));
        }
        if self.re.is_zero() {
            return Some(Self::new(self.im.abs(), BigRational::zero()));
        }
        let sq = &self.re * &self.re + &self.im * &self.im;
        let root = |v: &BigInt| {
            let r = v.sqrt();
            (&r * &r == *v).then_some(r)
        };
        let (num, den) = (root(sq.numer())?, root(sq.denom())?);
        Some(Self::new(BigRational::new(num, den), BigRational::zero()))
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = mul_ref(a, b);
        self.re += p.re;
        self.im += p.im;
    }

    fn norm_sqr(&self) -> Self {
        Self::new(
            &self.re * &self.re + &self.im * &self.im,
            BigRational::zero(),
        )
    }
}
