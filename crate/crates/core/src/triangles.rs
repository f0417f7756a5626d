//! Generalized-mean triangles, the difference triangle of order `m`, their
//! composite and the inverses, all at a finite truncation `N`.
//!
//! The inverse of the Toeplitz triangle generated by `s` is described by the
//! coefficients `D_n`, which are the power series coefficients of
//! `1 / s(-z)`: with `s(z) = sum s_k z^k` the identity `B * A = I` reduces to
//!
//! ```text
//! sum_{k=0}^{n} (-1)^k D_k s_{n-k} = 0   (n >= 1),   D_0 = 1 / s_0
//! ```
//!
//! so `D_n = (1/s_0) * sum_{k=1}^{n} (-1)^(k+1) s_k D_{n-k}`. The literal
//! determinant formula is kept in [`determinant_oracle_d`] for cross-checks.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{binomial, inverse_difference_binomials, Scalar};
use crate::sequence::{SequenceFamily, SpaceParams};

/// Magnitude above which float-mode coefficients are treated as overflow.
pub const FLOAT_OVERFLOW_BOUND: f64 = 1e300;
/// Magnitude above which float-mode coefficients no longer carry integer
/// precision (`2^53`).
pub const FLOAT_PRECISION_BOUND: f64 = 9_007_199_254_740_992.0;

#[derive(Clone, Debug, PartialEq)]
pub struct DCoefficients<S> {
    pub values: Vec<S>,
    pub max_magnitude: f64,
    /// Set in float mode when some `|D_n|` exceeds [`FLOAT_PRECISION_BOUND`].
    pub precision_warning: bool,
}

impl<S: Scalar> DCoefficients<S> {
    pub fn from_terms(s: &[S]) -> Result<Self> {
        let Some(s0) = s.first() else {
            return Err(Error::Validation("empty s".into()));
        };
        if s0.is_zero() {
            return Err(Error::ZeroS0);
        }
        let mut values: Vec<S> = Vec::with_capacity(s.len());
        values.push(S::one() / s0.clone());
        for n in 1..s.len() {
            let acc = S::sum_terms((1..=n).map(|k| {
                let term = s[k].clone() * values[n - k].clone();
                if k % 2 == 1 {
                    term
                } else {
                    -term
                }
            }));
            values.push(acc / s0.clone());
        }
        let max_magnitude = values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        if !S::is_exact() {
            if values.iter().any(Scalar::is_non_finite) || max_magnitude > FLOAT_OVERFLOW_BOUND {
                return Err(Error::Overflow(format!("D coefficients reach magnitude {max_magnitude:e}")));
            }
        }
        let precision_warning = !S::is_exact() && max_magnitude > FLOAT_PRECISION_BOUND;
        Ok(DCoefficients { values, max_magnitude, precision_warning })
    }

    pub fn get(&self, n: usize) -> &S {
        &self.values[n]
    }

    /// `max_n |sum_{k=0}^{n} (-1)^k D_k s_{n-k}|` over `1 <= n <= N`.
    pub fn recurrence_residual(&self, s: &[S]) -> f64 {
        (1..self.values.len().min(s.len()))
            .map(|n| {
                let mut acc = S::zero();
                for k in 0..=n {
                    acc += S::sign_pow(k) * self.values[k].clone() * s[n - k].clone();
                }
                acc.to_f64().abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `D_0..D_N` for the sequence `s`.
pub fn compute_d_coefficients<S: Scalar>(s: &SequenceFamily, n: usize) -> Result<DCoefficients<S>> {
    let terms: Vec<S> = s.terms(n + 1)?.iter().map(S::from_rational).collect();
    DCoefficients::from_terms(&terms)
}

/// Largest `n` accepted by [`determinant_oracle_d`].
pub const ORACLE_MAX_N: usize = 8;

/// `D_n` from the literal `n x n` determinant (Laplace expansion) divided by
/// `s_0^(n+1)`. Test and self-check use only.
pub fn determinant_oracle_d<S: Scalar>(s: &SequenceFamily, n: usize) -> Result<S> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleScaleExceeded(n));
    }
    let terms: Vec<S> = s.terms(n + 1)?.iter().map(S::from_rational).collect();
    let s0 = terms[0].clone();
    if s0.is_zero() {
        return Err(Error::ZeroS0);
    }
    if n == 0 {
        return Ok(S::one() / s0);
    }
    // Row i, column j holds s_{i-j+1}; entries with j > i + 1 vanish.
    let matrix: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| if j <= i + 1 { terms[i + 1 - j].clone() } else { S::zero() }).collect())
        .collect();
    let det = laplace_det(&matrix);
    Ok(det / s0.powi(n as u32 + 1))
}

fn laplace_det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    match n {
        0 => S::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = S::zero();
            for (j, a) in m[0].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<S>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                acc += S::sign_pow(j) * a.clone() * laplace_det(&minor);
            }
            acc
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixTag {
    IsA,
    IsDelta,
    IsComposite,
    IsInverse,
    Generic,
}

/// Lower-triangular `(N+1) x (N+1)` matrix stored row by row; row `n` holds
/// the entries for `k = 0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleMatrix<S> {
    rows: Vec<Vec<S>>,
    pub tag: MatrixTag,
}

impl<S: Scalar> TriangleMatrix<S> {
    /// Builds the matrix from a row generator.
    pub fn from_rows<F>(n: usize, tag: MatrixTag, mut row: F) -> Self
    where
        F: FnMut(usize) -> Vec<S>,
    {
        let rows = (0..=n)
            .map(|i| {
                let r = row(i);
                assert_eq!(r.len(), i + 1, "row {i} must have {} entries", i + 1);
                r
            })
            .collect();
        TriangleMatrix { rows, tag }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, MatrixTag::Generic, |i| {
            let mut r = vec![S::zero(); i + 1];
            r[i] = S::one();
            r
        })
    }

    /// Truncation index `N`.
    pub fn n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, n: usize, k: usize) -> S {
        if k > n {
            S::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[S] {
        &self.rows[n]
    }

    pub fn column(&self, k: usize) -> Vec<S> {
        (0..self.dim()).map(|n| self.entry(n, k)).collect()
    }

    pub fn diagonal_nonzero(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| !r[i].is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::from_rows(self.n(), MatrixTag::Generic, |i| {
            (0..=i)
                .map(|k| S::sum_terms((k..=i).map(|j| self.rows[i][j].clone() * other.rows[j][k].clone())))
                .collect()
        })
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| S::sum_terms(r.iter().zip(x).map(|(a, b)| a.clone() * b.clone())))
            .collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.n());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest absolute entrywise difference, as `f64`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x.clone() - y.clone()).to_f64().abs()))
            .fold(0.0, f64::max)
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(k, v)| if k == i { v.is_one() } else { v.is_zero() }))
    }

    /// JSON dump: header plus rows of `[k, value]` pairs (zeros omitted).
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, r)| {
                let entries: Vec<Value> = r
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| json!([k, v.to_json()]))
                    .collect();
                json!({ "n": n, "entries": entries })
            })
            .collect();
        json!({ "N": self.n(), "mode": S::MODE, "meta": self.tag, "rows": rows })
    }
}

/// Parameter sequences realized on `[0, N]` in one kernel, together with
/// `D_n` and the binomial tables shared by all constructions.
#[derive(Clone, Debug)]
pub struct SpaceWindow<S> {
    pub n: usize,
    pub m: usize,
    pub r: Vec<S>,
    pub s: Vec<S>,
    pub t: Vec<S>,
    pub d: DCoefficients<S>,
    /// `C(m + d - 1, d)` for `d = 0..=N`.
    pub inv_binom: Vec<S>,
    /// `C(m, i)` for `i = 0..=m`.
    pub diff_binom: Vec<S>,
}

impl<S: Scalar> SpaceWindow<S> {
    pub fn new(params: &SpaceParams, n: usize) -> Result<Self> {
        if params.m == 0 {
            return Err(Error::Validation("difference order m must be at least 1".into()));
        }
        params.validate(n)?;
        let conv = |f: &SequenceFamily| -> Result<Vec<S>> { Ok(f.terms(n + 1)?.iter().map(S::from_rational).collect()) };
        let r = conv(&params.r)?;
        let s = conv(&params.s)?;
        let t = conv(&params.t)?;
        let d = DCoefficients::from_terms(&s)?;
        Ok(SpaceWindow {
            n,
            m: params.m,
            r,
            s,
            t,
            d,
            inv_binom: inverse_difference_binomials(params.m, n),
            diff_binom: (0..=params.m).map(|i| binomial(params.m, i)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `A(r,s,t)_{nk} = s_{n-k} t_k / r_n`.
    pub fn a_entry(&self, n: usize, k: usize) -> S {
        self.s[n - k].clone() * self.t[k].clone() / self.r[n].clone()
    }

    /// `(-1)^(n-k) C(m, n-k)` on the band `n - m <= k <= n`.
    pub fn delta_entry(&self, n: usize, k: usize) -> S {
        let d = n - k;
        if d > self.m {
            S::zero()
        } else {
            S::sign_pow(d) * self.diff_binom[d].clone()
        }
    }

    /// `(1/r_n) sum_{i=j}^{n} (-1)^(i-j) C(m, i-j) s_{n-i} t_i`.
    pub fn composite_entry(&self, n: usize, j: usize) -> S {
        let hi = n.min(j + self.m);
        S::sum_terms((j..=hi).map(|i| self.delta_entry(i, j) * self.s[n - i].clone() * self.t[i].clone()))
            / self.r[n].clone()
    }

    /// `(-1)^(n-k) D_{n-k} r_k / t_n`.
    pub fn inverse_a_entry(&self, n: usize, k: usize) -> S {
        S::sign_pow(n - k) * self.d.get(n - k).clone() * self.r[k].clone() / self.t[n].clone()
    }

    /// `sum_{k=j}^{n} (-1)^(k-j) C(m+n-k-1, n-k) D_{k-j} r_j / t_k`.
    pub fn inverse_composite_entry(&self, n: usize, j: usize) -> S {
        S::sum_terms((j..=n).map(|k| {
            S::sign_pow(k - j) * self.inv_binom[n - k].clone() * self.d.get(k - j).clone() / self.t[k].clone()
        })) * self.r[j].clone()
    }

    pub fn a_matrix(&self) -> TriangleMatrix<S> {
        TriangleMatrix::from_rows(self.n, MatrixTag::IsA, |n| (0..=n).map(|k| self.a_entry(n, k)).collect())
    }

    pub fn inverse_a_matrix(&self) -> TriangleMatrix<S> {
        TriangleMatrix::from_rows(self.n, MatrixTag::IsInverse, |n| (0..=n).map(|k| self.inverse_a_entry(n, k)).collect())
    }

    pub fn delta_matrix(&self) -> TriangleMatrix<S> {
        TriangleMatrix::from_rows(self.n, MatrixTag::IsDelta, |n| (0..=n).map(|k| self.delta_entry(n, k)).collect())
    }

    pub fn composite_matrix(&self) -> TriangleMatrix<S> {
        TriangleMatrix::from_rows(self.n, MatrixTag::IsComposite, |n| {
            (0..=n).map(|j| self.composite_entry(n, j)).collect()
        })
    }

    /// The exact kernel builds the columns of `A^-1` and sums them `m`
    /// times (the inverse of `Delta^(m)` is `m`-fold summation), which is
    /// `O(m N^2)`. The float kernel uses the compensated closed form.
    pub fn inverse_composite_matrix(&self) -> TriangleMatrix<S> {
        if !S::is_exact() {
            return TriangleMatrix::from_rows(self.n, MatrixTag::IsInverse, |n| {
                (0..=n).map(|j| self.inverse_composite_entry(n, j)).collect()
            });
        }
        let dim = self.dim();
        let cols: Vec<Vec<S>> = (0..dim)
            .map(|j| {
                let mut v: Vec<S> = (j..dim).map(|k| self.inverse_a_entry(k, j)).collect();
                for _ in 0..self.m {
                    for i in 1..v.len() {
                        let prev = v[i - 1].clone();
                        v[i] += prev;
                    }
                }
                v
            })
            .collect();
        TriangleMatrix::from_rows(self.n, MatrixTag::IsInverse, |n| (0..=n).map(|j| cols[j][n - j].clone()).collect())
    }
}

/// `A(r,s,t)` truncated to `N`.
pub fn build_a<S: Scalar>(r: &SequenceFamily, s: &SequenceFamily, t: &SequenceFamily, n: usize) -> Result<TriangleMatrix<S>> {
    let conv = |f: &SequenceFamily| -> Result<Vec<S>> { Ok(f.terms(n + 1)?.iter().map(S::from_rational).collect()) };
    let (r, s, t) = (conv(r)?, conv(s)?, conv(t)?);
    if let Some(i) = r.iter().position(|v| v.is_zero()) {
        return Err(Error::ZeroR(i));
    }
    Ok(TriangleMatrix::from_rows(n, MatrixTag::IsA, |i| {
        (0..=i).map(|k| s[i - k].clone() * t[k].clone() / r[i].clone()).collect()
    }))
}

/// `Delta^(m)` truncated to `N`.
pub fn build_delta<S: Scalar>(m: usize, n: usize) -> Result<TriangleMatrix<S>> {
    if m == 0 {
        return Err(Error::Validation("difference order m must be at least 1".into()));
    }
    let c: Vec<S> = (0..=m).map(|i| binomial(m, i)).collect();
    Ok(TriangleMatrix::from_rows(n, MatrixTag::IsDelta, |i| {
        (0..=i)
            .map(|k| {
                let d = i - k;
                if d > m {
                    S::zero()
                } else {
                    S::sign_pow(d) * c[d].clone()
                }
            })
            .collect()
    }))
}

/// `A(r,s,t) * Delta^(m)` evaluated entrywise from the closed form.
pub fn build_composite<S: Scalar>(params: &SpaceParams, n: usize) -> Result<TriangleMatrix<S>> {
    Ok(SpaceWindow::<S>::new(params, n)?.composite_matrix())
}

/// Inverse of the composite triangle from the closed form.
pub fn build_inverse_composite<S: Scalar>(params: &SpaceParams, n: usize) -> Result<TriangleMatrix<S>> {
    Ok(SpaceWindow::<S>::new(params, n)?.inverse_composite_matrix())
}

/// Inverse `B` of `A(r,s,t)`.
pub fn build_inverse_a<S: Scalar>(params: &SpaceParams, n: usize) -> Result<TriangleMatrix<S>> {
    Ok(SpaceWindow::<S>::new(params, n)?.inverse_a_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_ratio, Rational};
    use crate::sequence::ExponentSequence;

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ratio(n, d)
    }

    fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn p2() -> ExponentSequence {
        ExponentSequence::constant(2.0).unwrap()
    }

    #[test]
    fn d_for_unit_s_is_one_one_then_zero() {
        let d = compute_d_coefficients::<Rational>(&SequenceFamily::ones(), 4).unwrap();
        assert_eq!(d.values, qs(&[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn d_for_short_sequences() {
        let s = SequenceFamily::finite(qs(&[(1, 1), (2, 1)]));
        let d = compute_d_coefficients::<Rational>(&s, 3).unwrap();
        assert_eq!(d.values, qs(&[(1, 1), (2, 1), (4, 1), (8, 1)]));
        let s = SequenceFamily::finite(qs(&[(2, 1), (1, 1)]));
        let d = compute_d_coefficients::<Rational>(&s, 3).unwrap();
        assert_eq!(d.values, qs(&[(1, 2), (1, 4), (1, 8), (1, 16)]));
    }

    #[test]
    fn d_rejects_zero_s0() {
        let s = SequenceFamily::finite(qs(&[(0, 1), (1, 1)]));
        assert!(matches!(compute_d_coefficients::<f64>(&s, 3), Err(Error::ZeroS0)));
    }

    #[test]
    fn d_float_overflow_is_reported() {
        // 1/(1 - 1000 z) grows like 1000^n.
        let s = SequenceFamily::finite(qs(&[(1, 1), (-1000, 1)]));
        let err = compute_d_coefficients::<f64>(&s, 200).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
        let warn = compute_d_coefficients::<f64>(&s, 8).unwrap();
        assert!(warn.precision_warning);
    }

    #[test]
    fn determinant_oracle_examples() {
        let ones = SequenceFamily::ones();
        assert_eq!(determinant_oracle_d::<Rational>(&ones, 2).unwrap(), q(0, 1));
        let e0 = SequenceFamily::finite(qs(&[(1, 1)]));
        assert_eq!(determinant_oracle_d::<Rational>(&e0, 1).unwrap(), q(0, 1));
        let s = SequenceFamily::finite(qs(&[(1, 1), (2, 1)]));
        assert_eq!(determinant_oracle_d::<Rational>(&s, 2).unwrap(), q(4, 1));
        assert!(matches!(determinant_oracle_d::<Rational>(&s, 9), Err(Error::OracleScaleExceeded(9))));
    }

    #[test]
    fn recurrence_residual_vanishes() {
        let s: Vec<Rational> = qs(&[(3, 1), (-1, 2), (2, 7), (5, 1), (0, 1), (1, 3)]);
        let d = DCoefficients::from_terms(&s).unwrap();
        assert_eq!(d.recurrence_residual(&s), 0.0);
    }

    #[test]
    fn build_a_examples() {
        let ones = SequenceFamily::ones();
        let a = build_a::<Rational>(&ones, &ones, &ones, 4).unwrap();
        assert!((0..5).all(|n| (0..=n).all(|k| a.entry(n, k) == q(1, 1))));
        assert_eq!(a.entry(1, 3), q(0, 1));

        let r = SequenceFamily::Arithmetic { start: q(1, 1), step: q(1, 1) };
        let cesaro = build_a::<Rational>(&r, &ones, &ones, 4).unwrap();
        assert_eq!(cesaro.row(3), &qs(&[(1, 4), (1, 4), (1, 4), (1, 4)])[..]);

        let s = SequenceFamily::finite(qs(&[(1, 1), (2, 1)]));
        let a = build_a::<Rational>(&ones, &s, &ones, 3).unwrap();
        assert_eq!(a.row(2), &qs(&[(0, 1), (2, 1), (1, 1)])[..]);

        let zero_r = SequenceFamily::finite(qs(&[(1, 1)]));
        assert!(matches!(build_a::<f64>(&zero_r, &ones, &ones, 3), Err(Error::ZeroR(1))));
    }

    #[test]
    fn build_delta_examples() {
        let d1 = build_delta::<Rational>(1, 4).unwrap();
        assert_eq!(d1.row(3), &qs(&[(0, 1), (0, 1), (-1, 1), (1, 1)])[..]);
        let d2 = build_delta::<Rational>(2, 4).unwrap();
        assert_eq!(d2.row(2), &qs(&[(1, 1), (-2, 1), (1, 1)])[..]);
        let d3 = build_delta::<Rational>(3, 6).unwrap();
        assert_eq!(d3.row(5), &qs(&[(0, 1), (0, 1), (-1, 1), (3, 1), (-3, 1), (1, 1)])[..]);
        assert!(build_delta::<f64>(0, 3).is_err());
    }

    #[test]
    fn composite_examples() {
        let unit1 = SpaceParams::unit(1, p2()).unwrap();
        assert!(build_composite::<Rational>(&unit1, 12).unwrap().is_identity());
        assert!(build_inverse_composite::<Rational>(&unit1, 12).unwrap().is_identity());

        let unit2 = SpaceParams::unit(2, p2()).unwrap();
        let c = build_composite::<Rational>(&unit2, 16).unwrap();
        assert_eq!(c.max_abs_diff(&build_delta(1, 16).unwrap()), 0.0);

        // Cesaro means of first differences, frozen from the product A * Delta:
        // y_1 = (x_0 + (x_1 - x_0)) / 2.
        let cesaro = SpaceParams::new(
            SequenceFamily::Arithmetic { start: q(1, 1), step: q(1, 1) },
            SequenceFamily::ones(),
            SequenceFamily::ones(),
            1,
            p2(),
        )
        .unwrap();
        let c = build_composite::<Rational>(&cesaro, 8).unwrap();
        assert_eq!(c.row(1), &qs(&[(0, 1), (1, 2)])[..]);
        assert_eq!(c.row(2), &qs(&[(0, 1), (0, 1), (1, 3)])[..]);
        let ones = SequenceFamily::ones();
        let product = build_a::<Rational>(&cesaro.r, &ones, &ones, 8).unwrap().mul(&build_delta(1, 8).unwrap());
        assert_eq!(c.max_abs_diff(&product), 0.0);
    }

    #[test]
    fn inverse_of_second_difference_is_double_summation() {
        let unit2 = SpaceParams::unit(2, p2()).unwrap();
        let inv = build_inverse_composite::<Rational>(&unit2, 10).unwrap();
        // S * Delta^2 = Delta, so the inverse is the summation matrix.
        let ones = SequenceFamily::ones();
        let s = build_a::<Rational>(&ones, &ones, &ones, 10).unwrap();
        assert_eq!(inv.max_abs_diff(&s), 0.0);
        assert!((0..=10).all(|n| (0..=n).all(|j| inv.entry(n, j) == q(1, 1))));
    }

    #[test]
    fn inverse_summation_path_matches_closed_form() {
        let s = SequenceFamily::finite(vec![q(3, 1), q(-1, 2), q(1, 3)]);
        let r = SequenceFamily::Arithmetic { start: q(1, 1), step: q(1, 2) };
        let t = SequenceFamily::Geometric { start: q(2, 1), ratio: q(3, 4) };
        for m in 1..=3 {
            let params = SpaceParams::new(r.clone(), s.clone(), t.clone(), m, p2()).unwrap();
            let w = SpaceWindow::<Rational>::new(&params, 12).unwrap();
            let inv = w.inverse_composite_matrix();
            assert!((0..=12).all(|n| (0..=n).all(|j| inv.entry(n, j) == w.inverse_composite_entry(n, j))));
        }
    }

    #[test]
    fn json_dump_shape() {
        let d = build_delta::<Rational>(1, 2).unwrap();
        let v = d.to_json();
        assert_eq!(v["N"], 2);
        assert_eq!(v["mode"], "rational");
        assert_eq!(v["meta"], "is-delta");
        assert_eq!(v["rows"][1]["entries"], json!([[0, "-1"], [1, "1"]]));
    }
}
