//! Numeric kernels.
//!
//! Every construction in the crate is generic over [`Scalar`], which is
//! implemented for exact rationals ([`BigRational`]) and IEEE-754 doubles.
//! Exponents and norms are always reported as `f64`; only the linear algebra
//! runs in the selected kernel.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssign, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Kernel selector carried by every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Rational,
    Float,
}

impl NumericMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Rational => "rational",
            NumericMode::Float => "float",
        }
    }
}

impl Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "exact" => Ok(NumericMode::Rational),
            "float" | "f64" => Ok(NumericMode::Float),
            other => Err(Error::Validation(format!("unknown numeric mode `{other}`"))),
        }
    }
}

/// Field operations shared by the exact and the floating point kernel.
pub trait Scalar: Clone + Debug + PartialOrd + NumAssign + Signed + Send + Sync + 'static {
    const MODE: NumericMode;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Rendering used in JSON reports: `p/q` strings for rationals, plain
    /// numbers for floats.
    fn to_json(&self) -> serde_json::Value;

    fn is_exact() -> bool {
        Self::MODE == NumericMode::Rational
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    /// `(-1)^k`
    fn sign_pow(k: usize) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    fn powi(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self.clone();
        }
        acc
    }

    /// `true` when the value can no longer be trusted in this kernel.
    fn is_non_finite(&self) -> bool {
        false
    }

    /// Sum of a sequence of terms; the float kernel compensates rounding.
    fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, v| acc + v)
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Rational;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles huge numerators/denominators without overflow.
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn powi(&self, e: u32) -> Self {
        num_traits::pow(self.clone(), e as usize)
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|| serde_json::Value::String(self.to_string()))
    }

    fn powi(&self, e: u32) -> Self {
        f64::powi(*self, e as i32)
    }

    fn is_non_finite(&self) -> bool {
        !self.is_finite()
    }

    /// Neumaier's compensated summation.
    fn sum_terms<I: IntoIterator<Item = Self>>(terms: I) -> Self {
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for v in terms {
            let t = sum + v;
            comp += if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
            sum = t;
        }
        sum + comp
    }
}

/// `|v|^e` evaluated in double precision, with integer exponents routed
/// through repeated multiplication.
pub fn abs_pow(v: f64, e: f64) -> f64 {
    let a = v.abs();
    if a == 0.0 {
        return 0.0;
    }
    if e.fract() == 0.0 && e.abs() <= 64.0 {
        a.powi(e as i32)
    } else {
        a.powf(e)
    }
}

/// Binomial coefficients `C(m + d - 1, d)` for `d = 0..=len`, i.e. the
/// power-series coefficients of `(1 - z)^(-m)`, by the multiplicative rule.
pub fn inverse_difference_binomials<S: Scalar>(m: usize, len: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(len + 1);
    let mut c = S::one();
    out.push(c.clone());
    for d in 1..=len {
        // C(m+d-1, d) = C(m+d-2, d-1) * (m+d-1) / d
        c = c * S::from_usize(m + d - 1) / S::from_usize(d);
        out.push(c.clone());
    }
    out
}

/// `C(n, k)` in the active kernel by the multiplicative formula.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut c = S::one();
    for i in 0..k {
        c = c * S::from_usize(n - i) / S::from_usize(i + 1);
    }
    c
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a/b`, integers and decimal literals (with optional exponent)
/// exactly. Decimal fractions get a power-of-ten denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse { what: "empty number".into(), line: None, offset: None });
    }
    let bad = || Error::Parse { what: format!("invalid number `{s}`"), line: None, offset: None };
    if let Some((n, d)) = s.split_once('/') {
        let num = parse_rational(n)?;
        let den = parse_rational(d)?;
        if den.is_zero() {
            return Err(Error::Parse { what: format!("zero denominator in `{s}`"), line: None, offset: None });
        }
        return Ok(num / den);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let q = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(v: f64) -> Result<Rational> {
    Rational::from_f64(v).ok_or_else(|| Error::Validation(format!("non-finite value {v}")))
}

pub fn rational_from_ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
