//! Associated matrices, operator norms and Hausdorff measure of
//! noncompactness estimates for matrix operators on `l_p(r,s,t;Delta^(m))`.
//!
//! An operator `A` acting on the space acts on the transformed sequence `y`
//! through its associated matrix `Ã`, so that `A x = Ã y`. Row `n` of `Ã` is
//! the limit `l -> inf` of row `l` of `E(A_n)`, which needs the row of `A` to
//! be summable against the inverse triangle. Only rows with finite support or
//! a geometric decay certificate are accepted.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::duals::bracket_row;
use crate::error::{Error, Result};
use crate::scalar::{abs_pow, Rational, Scalar};
use crate::sequence::{conjugate, SequenceFamily, SpaceParams};
use crate::triangles::SpaceWindow;

/// Relative size of the last partial-sum increment accepted when the
/// `j`-series of a decaying row is cut off.
pub const DEFAULT_SERIES_TOL: f64 = 1e-12;
/// Default relative threshold for calling a Hausdorff measure zero.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-2;
/// Plateau quality above which the tail estimate is flagged.
pub const PLATEAU_LIMIT: f64 = 0.1;

/// Row descriptors of an infinite matrix `A = (a_nk)`.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorSpec {
    /// Listed rows of `(k, a_nk)` pairs; rows past the list are zero.
    Sparse(Vec<Vec<(usize, Rational)>>),
    /// `a_{n, n+offset} = value` for each listed diagonal.
    Banded(Vec<(i64, Rational)>),
    /// `a_nk = scale * row_ratio^n * col_ratio^k` with `|col_ratio| < 1`.
    Geometric { scale: Rational, row_ratio: Rational, col_ratio: Rational },
    /// A single nonzero column: `a_nk = values_n` for `k = column`.
    Column { column: usize, values: SequenceFamily },
}

/// Where row `n` stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Entries vanish for `k >= end`.
    Finite(usize),
    /// Infinite support with a geometric decay certificate.
    Decaying,
}

impl OperatorSpec {
    pub fn zero() -> Self {
        OperatorSpec::Sparse(Vec::new())
    }

    pub fn identity() -> Self {
        OperatorSpec::Banded(vec![(0, Rational::one())])
    }

    /// Rows of a dense finite matrix.
    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Self {
        OperatorSpec::Sparse(
            rows.into_iter()
                .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if let OperatorSpec::Geometric { col_ratio, .. } = self {
            if col_ratio.abs() >= Rational::one() {
                return Err(Error::Validation("geometric rows need |col_ratio| < 1 as decay certificate".into()));
            }
        }
        Ok(())
    }

    /// `true` when only finitely many rows are nonzero.
    pub fn is_finite_rank(&self) -> bool {
        match self {
            OperatorSpec::Sparse(_) => true,
            OperatorSpec::Banded(diags) => diags.iter().all(|(_, v)| v.is_zero()),
            OperatorSpec::Geometric { scale, row_ratio, .. } => scale.is_zero() || row_ratio.is_zero(),
            OperatorSpec::Column { .. } => false,
        }
    }

    pub fn support(&self, n: usize) -> Support {
        match self {
            OperatorSpec::Sparse(rows) => {
                Support::Finite(rows.get(n).and_then(|r| r.iter().map(|(k, _)| k + 1).max()).unwrap_or(0))
            }
            OperatorSpec::Banded(diags) => Support::Finite(
                diags.iter().filter_map(|&(o, _)| usize::try_from(n as i64 + o).ok().map(|k| k + 1)).max().unwrap_or(0),
            ),
            OperatorSpec::Geometric { .. } => Support::Decaying,
            OperatorSpec::Column { column, .. } => Support::Finite(column + 1),
        }
    }

    pub fn entry(&self, n: usize, k: usize) -> Result<Rational> {
        Ok(match self {
            OperatorSpec::Sparse(rows) => rows
                .get(n)
                .and_then(|r| r.iter().filter(|(kk, _)| *kk == k).map(|(_, v)| v.clone()).reduce(|a, b| a + b))
                .unwrap_or_else(Rational::zero),
            OperatorSpec::Banded(diags) => diags
                .iter()
                .filter(|&&(o, _)| n as i64 + o == k as i64)
                .fold(Rational::zero(), |acc, (_, v)| acc + v),
            OperatorSpec::Geometric { scale, row_ratio, col_ratio } => {
                scale * num_traits::pow(row_ratio.clone(), n) * num_traits::pow(col_ratio.clone(), k)
            }
            OperatorSpec::Column { column, values } => {
                if k == *column {
                    values.term(n)?
                } else {
                    Rational::zero()
                }
            }
        })
    }

    /// `a_n0 .. a_n,len-1`.
    pub fn row_prefix(&self, n: usize, len: usize) -> Result<Vec<Rational>> {
        match self {
            OperatorSpec::Geometric { scale, row_ratio, col_ratio } => {
                let mut v = scale * num_traits::pow(row_ratio.clone(), n);
                let mut out = Vec::with_capacity(len);
                for _ in 0..len {
                    out.push(v.clone());
                    v *= col_ratio;
                }
                Ok(out)
            }
            OperatorSpec::Sparse(rows) => {
                let mut out = vec![Rational::zero(); len];
                if let Some(r) = rows.get(n) {
                    for (k, v) in r {
                        if *k < len {
                            out[*k] += v;
                        }
                    }
                }
                Ok(out)
            }
            _ => (0..len).map(|k| self.entry(n, k)).collect(),
        }
    }

    /// Row `n` restricted to the window `k = 0..=N`.
    pub fn row_window(&self, n: usize, big_n: usize) -> Result<Vec<Rational>> {
        self.row_prefix(n, big_n + 1)
    }
}

/// Codomain of the operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "space", content = "q")]
pub enum Target {
    C0,
    C,
    Linf,
    Lq(f64),
    L1,
    Bv,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::C0 => f.write_str("c0"),
            Target::C => f.write_str("c"),
            Target::Linf => f.write_str("linf"),
            Target::Lq(q) => write!(f, "lq:{q}"),
            Target::L1 => f.write_str("l1"),
            Target::Bv => f.write_str("bv"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "c0" | "c_0" => Target::C0,
            "c" => Target::C,
            "linf" | "l_inf" | "l-inf" => Target::Linf,
            "l1" | "l_1" => Target::L1,
            "bv" => Target::Bv,
            other => {
                let q = other
                    .strip_prefix("lq:")
                    .or_else(|| other.strip_prefix("lq="))
                    .ok_or_else(|| Error::Validation(format!("unknown target `{other}` (c0, c, linf, lq:<q>, l1, bv)")))?;
                let q: f64 = q.parse().map_err(|_| Error::Validation(format!("bad exponent in target `{other}`")))?;
                if !(q >= 1.0 && q.is_finite()) {
                    return Err(Error::BadExponent(format!("target exponent q = {q} must lie in [1, inf)")));
                }
                if q == 1.0 {
                    Target::L1
                } else {
                    Target::Lq(q)
                }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum RowConvergence {
    /// Finite row: every series is a finite sum.
    Finite { terms: usize },
    /// Decaying row cut after `terms` entries; `increment` is the largest
    /// change seen when extending the cut, used as the error estimate.
    Truncated { terms: usize, increment: f64 },
}

/// `Ã` on the window `[0, N]^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedMatrix<S> {
    pub n: usize,
    pub rows: Vec<Vec<S>>,
    pub convergence: Vec<RowConvergence>,
    /// Largest truncation increment over all decaying rows.
    pub error_budget: f64,
}

/// Builds `Ã` row by row. Finite rows are exact; decaying rows are cut at
/// two lengths and must agree to `tol` (relative), or the series is reported
/// as divergent.
pub fn associated_matrix<S: Scalar>(
    op: &OperatorSpec,
    params: &SpaceParams,
    n: usize,
    tol: f64,
) -> Result<AssociatedMatrix<S>> {
    op.validate()?;
    let short_cut = 2 * n + 32;
    let long_cut = short_cut + short_cut / 2;
    let mut reach = n;
    for i in 0..=n {
        reach = reach.max(match op.support(i) {
            Support::Finite(end) => end.saturating_sub(1),
            Support::Decaying => long_cut,
        });
    }
    let w = SpaceWindow::<S>::new(params, reach)?;
    let cols = n + 1;
    let mut rows = Vec::with_capacity(cols);
    let mut convergence = Vec::with_capacity(cols);
    let mut budget = 0.0f64;
    for i in 0..=n {
        match op.support(i) {
            Support::Finite(end) => {
                let len = end.max(cols);
                let a: Vec<S> = op.row_prefix(i, len)?.iter().map(S::from_rational).collect();
                rows.push(bracket_row(&w, &a, cols));
                convergence.push(RowConvergence::Finite { terms: len });
            }
            Support::Decaying => {
                let a: Vec<S> = op.row_prefix(i, long_cut + 1)?.iter().map(S::from_rational).collect();
                let long = bracket_row(&w, &a, cols);
                let scale = long.iter().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
                // Two adjacent short cuts catch series whose partial sums
                // oscillate with period two.
                let mut increment = 0.0f64;
                for cut in [short_cut, short_cut + 1] {
                    let short = bracket_row(&w, &a[..=cut], cols);
                    for (x, y) in short.iter().zip(&long) {
                        increment = increment.max((x.clone() - y.clone()).to_f64().abs());
                    }
                }
                if !(increment <= tol * scale) {
                    return Err(Error::SeriesDivergence(format!(
                        "row {i}: extending the cut from {short_cut} to {long_cut} terms moved an entry by {increment:e}"
                    )));
                }
                budget = budget.max(increment);
                rows.push(long);
                convergence.push(RowConvergence::Truncated { terms: long_cut + 1, increment });
            }
        }
        if rows[i].iter().any(Scalar::is_non_finite) {
            return Err(Error::Overflow(format!("associated row {i} is not finite")));
        }
    }
    Ok(AssociatedMatrix { n, rows, convergence, error_budget: budget })
}

impl<S: Scalar> AssociatedMatrix<S> {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect()
    }

    /// `(sum_k |ã_nk|^q)^{1/q}` for every row.
    pub fn row_norms(&self, q: f64) -> Vec<f64> {
        self.to_f64().iter().map(|r| lq_norm(r, q)).collect()
    }

    /// `sup_n ‖ã_n‖_{p'}` for `1 < p < inf`.
    pub fn operator_norm(&self, p: f64) -> Result<f64> {
        if p <= 1.0 {
            return Err(Error::BadExponent(format!("operator norm formula needs p > 1 (got {p}); use the l1 norm")));
        }
        let q = conjugate(p)?;
        Ok(self.row_norms(q).into_iter().fold(0.0, f64::max))
    }

    /// `sup_k sum_n |ã_nk|`, summed exactly in the kernel.
    pub fn l1_norm(&self) -> f64 {
        (0..self.dim())
            .map(|k| self.rows.iter().fold(S::zero(), |acc, r| acc + r[k].abs()).to_f64())
            .fold(0.0, f64::max)
    }

    /// `sup_k sum_n |ã_{n-1,k} - ã_nk|` with `ã_{-1,k} = 0`.
    pub fn bv_norm(&self) -> f64 {
        (0..self.dim())
            .map(|k| {
                let mut prev = S::zero();
                let mut acc = S::zero();
                for r in &self.rows {
                    acc += (prev - r[k].clone()).abs();
                    prev = r[k].clone();
                }
                acc.to_f64()
            })
            .fold(0.0, f64::max)
    }
}

/// `‖v‖_q`, with `q = inf` meaning the sup norm.
pub fn lq_norm(v: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        return v.iter().fold(0.0, |acc, x| acc.max(x.abs()));
    }
    let s: f64 = v.iter().map(|x| abs_pow(*x, q)).sum();
    if q == 1.0 {
        s
    } else {
        s.powf(1.0 / q)
    }
}

/// Bounds on `‖L_A‖_chi` read off the tail of the row norms.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChiEstimate {
    pub target: Target,
    pub lower: f64,
    pub upper: f64,
    /// `T_n = sup_{m in [n, N]} rowNorm(m)`.
    pub tail_sequence: Vec<f64>,
    pub plateau_quality: f64,
    pub operator_norm: f64,
    pub window: usize,
    /// Column limits estimated as the mean of the last `window` rows
    /// (target `c` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_tilde: Option<Vec<f64>>,
    /// Largest distance of those rows from the estimated limits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub note: String,
}

/// Pitt's theorem covers every bounded operator from `l_p` into `l_q`,
/// `q < p`; the bv case reduces to `l_1` through the difference operator.
fn zero_by_pitt(p: f64, target: Target) -> Option<&'static str> {
    match target {
        Target::Lq(q) if q < p => Some("every bounded operator into l_q with q < p is compact"),
        Target::L1 if p > 1.0 => Some("every bounded operator into l_1 from l_p, p > 1, is compact"),
        Target::Bv if p > 1.0 => Some("the difference of the operator maps into l_1 with p > 1, hence compact"),
        _ => None,
    }
}

/// Tail-sup estimate of the Hausdorff measure of noncompactness. `tol`
/// scales the floor used when judging whether the tail has settled.
pub fn chi_estimate<S: Scalar>(
    assoc: &AssociatedMatrix<S>,
    p: f64,
    target: Target,
    window: usize,
    tol: f64,
) -> Result<ChiEstimate> {
    let big_n = assoc.n;
    if p <= 1.0 {
        return Err(Error::BadExponent(format!("measure of noncompactness estimates need 1 < p < inf (got {p})")));
    }
    if window == 0 || window > big_n {
        return Err(Error::Validation(format!("window {window} must lie in [1, N] with N = {big_n}")));
    }
    let operator_norm = assoc.operator_norm(p)?;
    if let Some(note) = zero_by_pitt(p, target) {
        return Ok(ChiEstimate {
            target,
            lower: 0.0,
            upper: 0.0,
            tail_sequence: Vec::new(),
            plateau_quality: 0.0,
            operator_norm,
            window,
            alpha_tilde: None,
            alpha_spread: None,
            warning: None,
            note: note.into(),
        });
    }
    let q = conjugate(p)?;
    let mut rows = assoc.to_f64();
    let (alpha_tilde, alpha_spread) = match target {
        Target::C0 | Target::Linf => (None, None),
        Target::C => {
            let first = big_n + 1 - window;
            let alpha: Vec<f64> = (0..=big_n)
                .map(|k| rows[first..].iter().map(|r| r[k]).sum::<f64>() / window as f64)
                .collect();
            let spread = rows[first..]
                .iter()
                .flat_map(|r| r.iter().zip(&alpha).map(|(v, a)| (v - a).abs()))
                .fold(0.0, f64::max);
            for r in rows.iter_mut() {
                for (v, a) in r.iter_mut().zip(&alpha) {
                    *v -= a;
                }
            }
            (Some(alpha), Some(spread))
        }
        other => {
            return Err(Error::Validation(format!("no measure of noncompactness formula for target {other} with p = {p}")))
        }
    };
    let norms: Vec<f64> = rows.iter().map(|r| lq_norm(r, q)).collect();
    let mut tail = norms.clone();
    for i in (0..big_n).rev() {
        tail[i] = tail[i].max(tail[i + 1]);
    }
    let at = tail[big_n - window];
    let eps = tol * operator_norm.max(1.0);
    let plateau_quality = (at - tail[big_n]).abs() / tail[big_n].max(eps);
    let upper = at.min(operator_norm);
    let (lower, note) = match target {
        Target::C0 => (upper, "chi equals the limsup of the row norms"),
        Target::C => (upper / 2.0, "half the limsup of the deviation norms bounds chi from below"),
        _ => (0.0, "only an upper bound is available"),
    };
    let warning = (plateau_quality > PLATEAU_LIMIT)
        .then(|| format!("plateau not reached: tail moved by {plateau_quality:.3} (relative) over the last {window} rows"));
    Ok(ChiEstimate {
        target,
        lower: lower.min(upper),
        upper,
        tail_sequence: tail,
        plateau_quality,
        operator_norm,
        window,
        alpha_tilde,
        alpha_spread,
        warning,
        note: note.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Compactness {
    Compact,
    Noncompact,
    Undetermined,
}

impl fmt::Display for Compactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Compactness::Compact => "compact",
            Compactness::Noncompact => "noncompact",
            Compactness::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub verdict: Compactness,
    pub reason: String,
    /// Level below which the measure counts as zero:
    /// `tol * max(‖L_A‖, 1)`.
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiEstimate>,
}

/// Three-valued compactness verdict.
pub fn classify_compact<S: Scalar>(
    assoc: &AssociatedMatrix<S>,
    p: f64,
    target: Target,
    window: usize,
    tol: f64,
) -> Result<Classification> {
    if let Some(reason) = zero_by_pitt(p, target) {
        return Ok(Classification { verdict: Compactness::Compact, reason: reason.into(), threshold: 0.0, chi: None });
    }
    if p <= 1.0 || !matches!(target, Target::C0 | Target::C | Target::Linf) {
        return Ok(Classification {
            verdict: Compactness::Undetermined,
            reason: format!("no compactness criterion for target {target} with p = {p}"),
            threshold: 0.0,
            chi: None,
        });
    }
    let chi = chi_estimate(assoc, p, target, window, tol)?;
    let threshold = tol * chi.operator_norm.max(1.0);
    let settled = chi.plateau_quality < PLATEAU_LIMIT;
    let (verdict, reason) = if settled && chi.upper < threshold {
        (Compactness::Compact, format!("tail row norms settle below {threshold:e}"))
    } else if settled && chi.lower > threshold && target != Target::Linf {
        (Compactness::Noncompact, format!("tail row norms settle at {:e} > {threshold:e}", chi.lower))
    } else if !settled {
        (Compactness::Undetermined, "tail of the row norms has not settled on the window".to_string())
    } else if target == Target::Linf {
        (Compactness::Undetermined, "for l_inf only the sufficient condition is available".to_string())
    } else {
        (Compactness::Undetermined, "bounds straddle the threshold".to_string())
    };
    Ok(Classification { verdict, reason, threshold, chi: Some(chi) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_from_ratio;
    use crate::sequence::ExponentSequence;

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ratio(n, d)
    }

    fn unit() -> SpaceParams {
        SpaceParams::unit(1, ExponentSequence::constant(2.0).unwrap()).unwrap()
    }

    fn geometric_half() -> OperatorSpec {
        OperatorSpec::Geometric { scale: q(1, 1), row_ratio: q(1, 2), col_ratio: q(1, 2) }
    }

    #[test]
    fn first_unit_row_maps_to_itself() {
        let op = OperatorSpec::Sparse(vec![vec![(0, q(1, 1))]]);
        let a = associated_matrix::<Rational>(&op, &unit(), 6, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(a.rows[0][0], q(1, 1));
        assert!(a.rows.iter().flatten().skip(1).all(Zero::is_zero));
    }

    #[test]
    fn geometric_operator_norm() {
        let a = associated_matrix::<f64>(&geometric_half(), &unit(), 40, DEFAULT_SERIES_TOL).unwrap();
        let norm = a.operator_norm(2.0).unwrap();
        assert!((norm - (4.0f64 / 3.0).sqrt()).abs() < 1e-12, "{norm}");
        assert!(matches!(a.convergence[0], RowConvergence::Truncated { .. }));
    }

    #[test]
    fn small_window_norms() {
        let op = OperatorSpec::from_dense(vec![vec![q(1, 1), q(2, 1)], vec![q(3, 1), q(4, 1)]]);
        let a = associated_matrix::<Rational>(&op, &unit(), 1, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(a.l1_norm(), 6.0);
        let id = associated_matrix::<Rational>(&OperatorSpec::identity(), &unit(), 8, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(id.l1_norm(), 1.0);
        let zero = associated_matrix::<Rational>(&OperatorSpec::zero(), &unit(), 8, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(zero.l1_norm(), 0.0);
        assert_eq!(zero.bv_norm(), 0.0);
        assert_eq!(zero.operator_norm(2.0).unwrap(), 0.0);
    }

    #[test]
    fn bv_edges() {
        let ones = OperatorSpec::Column { column: 0, values: SequenceFamily::ones() };
        let a = associated_matrix::<Rational>(&ones, &unit(), 3, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(a.bv_norm(), 1.0);
        let single = OperatorSpec::Sparse(vec![vec![], vec![], vec![(5, q(-3, 2))]]);
        let a = associated_matrix::<Rational>(&single, &unit(), 7, DEFAULT_SERIES_TOL).unwrap();
        assert_eq!(a.bv_norm(), 3.0);
    }

    #[test]
    fn chi_examples() {
        let p = unit();
        let geo = associated_matrix::<f64>(&geometric_half(), &p, 64, DEFAULT_SERIES_TOL).unwrap();
        let chi = chi_estimate(&geo, 2.0, Target::C0, 8, DEFAULT_CLASSIFY_TOL).unwrap();
        assert!(chi.upper < 1e-15 && chi.lower <= chi.upper);
        let cls = classify_compact(&geo, 2.0, Target::C0, 8, DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(cls.verdict, Compactness::Compact);

        let e0 = OperatorSpec::Column { column: 0, values: SequenceFamily::ones() };
        let a = associated_matrix::<f64>(&e0, &p, 64, DEFAULT_SERIES_TOL).unwrap();
        let cls = classify_compact(&a, 2.0, Target::C0, 8, DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(cls.verdict, Compactness::Noncompact);
        assert_eq!(cls.chi.unwrap().lower, 1.0);
        let cls = classify_compact(&a, 2.0, Target::Linf, 8, DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(cls.verdict, Compactness::Undetermined);

        let shifted = OperatorSpec::Column {
            column: 0,
            values: SequenceFamily::Sum(
                Box::new(SequenceFamily::ones()),
                Box::new(SequenceFamily::Reciprocal(Box::new(SequenceFamily::Arithmetic {
                    start: q(1, 1),
                    step: q(1, 1),
                }))),
            ),
        };
        let a = associated_matrix::<f64>(&shifted, &p, 128, DEFAULT_SERIES_TOL).unwrap();
        let cls = classify_compact(&a, 2.0, Target::C, 16, DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(cls.verdict, Compactness::Compact, "{cls:#?}");
        let alpha = cls.chi.unwrap().alpha_tilde.unwrap();
        assert!((alpha[0] - 1.0).abs() < 1e-2 && alpha[1] == 0.0);
    }

    #[test]
    fn pitt_regime_is_compact() {
        let a = associated_matrix::<f64>(&OperatorSpec::identity(), &unit(), 16, DEFAULT_SERIES_TOL).unwrap();
        for target in [Target::L1, Target::Lq(1.5), Target::Bv] {
            let cls = classify_compact(&a, 2.0, target, 4, DEFAULT_CLASSIFY_TOL).unwrap();
            assert_eq!(cls.verdict, Compactness::Compact, "{target}");
        }
        let cls = classify_compact(&a, 2.0, Target::Lq(3.0), 4, DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(cls.verdict, Compactness::Undetermined);
    }

    #[test]
    fn divergent_row_series_is_rejected() {
        // D_n = 2^n for s = (1, 2, 0, ...): the inverse triangle outgrows 1/2^k decay.
        let s = SequenceFamily::finite(vec![q(1, 1), q(2, 1)]);
        let params =
            SpaceParams::new(SequenceFamily::ones(), s, SequenceFamily::ones(), 1, ExponentSequence::constant(2.0).unwrap())
                .unwrap();
        let op = OperatorSpec::Geometric { scale: q(1, 1), row_ratio: q(1, 1), col_ratio: q(1, 2) };
        let err = associated_matrix::<f64>(&op, &params, 8, DEFAULT_SERIES_TOL).unwrap_err();
        assert!(matches!(err, Error::SeriesDivergence(_)), "{err}");
    }

    #[test]
    fn targets_parse() {
        assert_eq!("c0".parse::<Target>().unwrap(), Target::C0);
        assert_eq!("lq:1.5".parse::<Target>().unwrap(), Target::Lq(1.5));
        assert_eq!("lq:1".parse::<Target>().unwrap(), Target::L1);
        assert!("lq:0.5".parse::<Target>().is_err());
        assert!("l7".parse::<Target>().is_err());
    }
}
