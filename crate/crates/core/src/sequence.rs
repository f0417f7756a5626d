//! Generating sequences `r`, `s`, `t`, the exponent sequence `p` and the
//! parameter tuple of the space.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_from_ratio, Rational};

/// An infinite sequence produced term by term.
///
/// The composite variants (`Sum`, `Reciprocal`, `BackwardDifference`) exist
/// to express the closed forms of the preset catalog.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceFamily {
    /// Listed values; indices past the prefix fall through to `tail`
    /// (evaluated at the absolute index) or are a range error.
    Explicit { prefix: Vec<Rational>, tail: Option<Box<SequenceFamily>> },
    Constant(Rational),
    /// `start + step * n`
    Arithmetic { start: Rational, step: Rational },
    /// `start * ratio^n`
    Geometric { start: Rational, ratio: Rational },
    Sum(Box<SequenceFamily>, Box<SequenceFamily>),
    Reciprocal(Box<SequenceFamily>),
    /// `u_n - u_{n-1}` with `u_{-1} = 0`.
    BackwardDifference(Box<SequenceFamily>),
}

impl SequenceFamily {
    pub fn ones() -> Self {
        SequenceFamily::Constant(Rational::one())
    }

    pub fn explicit(prefix: Vec<Rational>) -> Self {
        SequenceFamily::Explicit { prefix, tail: None }
    }

    pub fn explicit_ints(values: &[i64]) -> Self {
        Self::explicit(values.iter().map(|&v| rational_from_ratio(v, 1)).collect())
    }

    /// Finite prefix followed by zeros.
    pub fn finite(values: Vec<Rational>) -> Self {
        SequenceFamily::Explicit { prefix: values, tail: Some(Box::new(SequenceFamily::Constant(Rational::zero()))) }
    }

    pub fn term(&self, n: usize) -> Result<Rational> {
        Ok(match self {
            SequenceFamily::Explicit { prefix, tail } => match prefix.get(n) {
                Some(v) => v.clone(),
                None => match tail {
                    Some(rule) => rule.term(n)?,
                    None => return Err(Error::Range { index: n, len: prefix.len() }),
                },
            },
            SequenceFamily::Constant(c) => c.clone(),
            SequenceFamily::Arithmetic { start, step } => start + step * Rational::from_integer((n as i64).into()),
            SequenceFamily::Geometric { start, ratio } => start * num_traits::pow(ratio.clone(), n),
            SequenceFamily::Sum(a, b) => a.term(n)? + b.term(n)?,
            SequenceFamily::Reciprocal(a) => {
                let v = a.term(n)?;
                if v.is_zero() {
                    return Err(Error::Validation(format!("reciprocal of a zero term at index {n}")));
                }
                v.recip()
            }
            SequenceFamily::BackwardDifference(a) => {
                let cur = a.term(n)?;
                if n == 0 {
                    cur
                } else {
                    cur - a.term(n - 1)?
                }
            }
        })
    }

    /// Terms `0..len`.
    pub fn terms(&self, len: usize) -> Result<Vec<Rational>> {
        (0..len).map(|n| self.term(n)).collect()
    }
}

/// Named parameter families.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    /// `r_n = 1/u_n`, `t_n = v_n`, `s = e`.
    WeightedMean { u: SequenceFamily, v: SequenceFamily },
    /// `r_n = n + 1`, `t_n = 1 + alpha^n`, `s = e`.
    CesaroAlpha { alpha: Rational },
    /// `r_n = lambda_n`, `t_n = lambda_n - lambda_{n-1}`, `s = e`.
    Lambda { lambda: SequenceFamily },
}

impl Preset {
    pub const NAMES: [&'static str; 3] = ["weighted-mean", "cesaro-alpha", "lambda"];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::WeightedMean { .. } => "weighted-mean",
            Preset::CesaroAlpha { .. } => "cesaro-alpha",
            Preset::Lambda { .. } => "lambda",
        }
    }

    pub fn default_alpha() -> Rational {
        rational_from_ratio(1, 2)
    }

    /// `(r, s, t)`
    pub fn sequences(&self) -> (SequenceFamily, SequenceFamily, SequenceFamily) {
        match self {
            Preset::WeightedMean { u, v } => {
                (SequenceFamily::Reciprocal(Box::new(u.clone())), SequenceFamily::ones(), v.clone())
            }
            Preset::CesaroAlpha { alpha } => (
                SequenceFamily::Arithmetic { start: Rational::one(), step: Rational::one() },
                SequenceFamily::ones(),
                SequenceFamily::Sum(
                    Box::new(SequenceFamily::ones()),
                    Box::new(SequenceFamily::Geometric { start: Rational::one(), ratio: alpha.clone() }),
                ),
            ),
            Preset::Lambda { lambda } => (
                lambda.clone(),
                SequenceFamily::ones(),
                SequenceFamily::BackwardDifference(Box::new(lambda.clone())),
            ),
        }
    }
}

/// The exponent sequence `p = (p_k)`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExponentSequence {
    Constant(f64),
    /// Explicit values; must cover the truncation window.
    List(Vec<f64>),
}

impl ExponentSequence {
    pub fn constant(p: f64) -> Result<Self> {
        let e = ExponentSequence::Constant(p);
        e.validate_values(&[p])?;
        Ok(e)
    }

    pub fn list(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::BadExponent("empty exponent list".into()));
        }
        let e = ExponentSequence::List(values);
        if let ExponentSequence::List(v) = &e {
            e.validate_values(v)?;
        }
        Ok(e)
    }

    fn validate_values(&self, values: &[f64]) -> Result<()> {
        for (k, &p) in values.iter().enumerate() {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::BadExponent(format!("p_{k} = {p} must be a finite positive number")));
            }
        }
        Ok(())
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        match self {
            ExponentSequence::Constant(p) => Ok(*p),
            ExponentSequence::List(v) => v.get(k).copied().ok_or(Error::Range { index: k, len: v.len() }),
        }
    }

    /// `p_0..p_{len-1}`.
    pub fn values(&self, len: usize) -> Result<Vec<f64>> {
        (0..len).map(|k| self.get(k)).collect()
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            ExponentSequence::Constant(p) => Some(*p),
            ExponentSequence::List(v) => {
                let first = *v.first()?;
                v.iter().all(|&p| p == first).then_some(first)
            }
        }
    }

    /// `H = sup p_k` over the window.
    pub fn sup(&self, len: usize) -> Result<f64> {
        Ok(self.values(len)?.into_iter().fold(0.0, f64::max))
    }

    pub fn inf(&self, len: usize) -> Result<f64> {
        Ok(self.values(len)?.into_iter().fold(f64::INFINITY, f64::min))
    }

    /// `M = max{1, H}`.
    pub fn big_m(&self, len: usize) -> Result<f64> {
        Ok(self.sup(len)?.max(1.0))
    }

    /// Conjugate exponent `p_k / (p_k - 1)`, only on `K_2 = {k : p_k > 1}`.
    pub fn conjugate(&self, k: usize) -> Result<f64> {
        conjugate(self.get(k)?)
    }
}

pub fn conjugate(p: f64) -> Result<f64> {
    if p > 1.0 {
        Ok(p / (p - 1.0))
    } else {
        Err(Error::BadExponent(format!("conjugate exponent requested for p = {p} <= 1")))
    }
}

/// The tuple `(r, s, t, m, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceParams {
    pub r: SequenceFamily,
    pub s: SequenceFamily,
    pub t: SequenceFamily,
    pub m: usize,
    pub p: ExponentSequence,
}

impl SpaceParams {
    pub fn new(r: SequenceFamily, s: SequenceFamily, t: SequenceFamily, m: usize, p: ExponentSequence) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("difference order m must be at least 1".into()));
        }
        Ok(SpaceParams { r, s, t, m, p })
    }

    pub fn from_preset(preset: &Preset, m: usize, p: ExponentSequence) -> Result<Self> {
        let (r, s, t) = preset.sequences();
        Self::new(r, s, t, m, p)
    }

    /// `r = s = t = e`; with `m = 1` the composite transform is the identity.
    pub fn unit(m: usize, p: ExponentSequence) -> Result<Self> {
        Self::new(SequenceFamily::ones(), SequenceFamily::ones(), SequenceFamily::ones(), m, p)
    }

    /// Checks `r_n != 0`, `t_n != 0` for `n <= n_max` and `s_0 != 0`.
    pub fn validate(&self, n_max: usize) -> Result<()> {
        if self.s.term(0)?.is_zero() {
            return Err(Error::ZeroS0);
        }
        for n in 0..=n_max {
            if self.r.term(n)?.is_zero() {
                return Err(Error::ZeroR(n));
            }
            if self.t.term(n)?.is_zero() {
                return Err(Error::ZeroT(n));
            }
        }
        Ok(())
    }
}
