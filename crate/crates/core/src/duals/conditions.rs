//! Window evaluation of the twelve matrix conditions (4.4)-(4.15) that
//! characterize the classes `(l(p), l_1)`, `(l(p), c_0)`, `(l(p), c)` and
//! `(l(p), l_inf)`.
//!
//! A supremum over an infinite index set is never observable on a window.
//! Each bounded-sup condition is therefore evaluated on three nested
//! sub-windows (half, three quarters, all of the rows and columns) and the
//! growth between them decides the verdict. Limits are judged from the tail
//! rows of the window. Both are reported with [`Method::WindowProbe`] unless
//! a subset supremum was involved.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::subset::{self, Aggregate, Objective, SearchPolicy, ENUMERATION_HARD_CAP};
use crate::error::{Error, Result};
use crate::scalar::{abs_pow, Scalar};
use crate::sequence::conjugate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionId {
    C4_4,
    C4_5,
    C4_6,
    C4_7,
    C4_8,
    C4_9,
    C4_10,
    C4_11,
    C4_12,
    C4_13,
    C4_14,
    C4_15,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    None,
    ExistsL,
    ForAllL,
}

/// Which exponent set the condition ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Columns {
    K1,
    K2,
    All,
}

/// How the multiplier `L` enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scaling {
    One,
    Times,
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    SubsetSup,
    RowSup { deviation: bool },
    Limit { deviation: bool },
}

struct Spec {
    label: &'static str,
    description: &'static str,
    quantifier: Quantifier,
    columns: Columns,
    scaling: Scaling,
    shape: Shape,
}

impl ConditionId {
    pub const ALL: [ConditionId; 12] = [
        ConditionId::C4_4,
        ConditionId::C4_5,
        ConditionId::C4_6,
        ConditionId::C4_7,
        ConditionId::C4_8,
        ConditionId::C4_9,
        ConditionId::C4_10,
        ConditionId::C4_11,
        ConditionId::C4_12,
        ConditionId::C4_13,
        ConditionId::C4_14,
        ConditionId::C4_15,
    ];

    fn spec(self) -> Spec {
        use Columns::*;
        use Quantifier::*;
        use Scaling::*;
        use Shape::*;
        let (label, description, quantifier, columns, scaling, shape) = match self {
            ConditionId::C4_4 => ("C4.4", "sup_F sup_{k in K1} |sum_{n in F} a_nk|^p_k < inf", None, K1, One, SubsetSup),
            ConditionId::C4_5 => {
                ("C4.5", "exists L: sup_F sum_{k in K2} |sum_{n in F} a_nk / L|^p'_k < inf", ExistsL, K2, Over, SubsetSup)
            }
            ConditionId::C4_6 => ("C4.6", "lim_n a_nk = 0 for all k", None, All, One, Limit { deviation: false }),
            ConditionId::C4_7 => {
                ("C4.7", "for all L: sup_n sup_{k in K1} |a_nk L|^p_k < inf", ForAllL, K1, Times, RowSup { deviation: false })
            }
            ConditionId::C4_8 => {
                ("C4.8", "for all L: sup_n sum_{k in K2} |a_nk L|^p'_k < inf", ForAllL, K2, Times, RowSup { deviation: false })
            }
            ConditionId::C4_9 => ("C4.9", "sup_n sup_{k in K1} |a_nk|^p_k < inf", None, K1, One, RowSup { deviation: false }),
            ConditionId::C4_10 => {
                ("C4.10", "exists L: sup_n sum_{k in K2} |a_nk / L|^p'_k < inf", ExistsL, K2, Over, RowSup { deviation: false })
            }
            ConditionId::C4_11 => {
                ("C4.11", "exists (alpha_k): lim_n |a_nk - alpha_k| = 0 for all k", None, All, One, Limit { deviation: true })
            }
            ConditionId::C4_12 => (
                "C4.12",
                "exists (alpha_k) for all L: sup_n sup_{k in K1} (|a_nk - alpha_k| L)^p_k < inf",
                ForAllL,
                K1,
                Times,
                RowSup { deviation: true },
            ),
            ConditionId::C4_13 => (
                "C4.13",
                "exists (alpha_k) for all L: sup_n sum_{k in K2} (|a_nk - alpha_k| L)^p'_k < inf",
                ForAllL,
                K2,
                Times,
                RowSup { deviation: true },
            ),
            ConditionId::C4_14 => {
                ("C4.14", "exists L: sup_n sup_{k in K1} |a_nk / L|^p_k < inf", ExistsL, K1, Over, RowSup { deviation: false })
            }
            ConditionId::C4_15 => {
                ("C4.15", "exists L: sup_n sum_{k in K2} |a_nk / L|^p'_k < inf", ExistsL, K2, Over, RowSup { deviation: false })
            }
        };
        Spec { label, description, quantifier, columns, scaling, shape }
    }

    pub fn label(self) -> &'static str {
        self.spec().label
    }

    pub fn description(self) -> &'static str {
        self.spec().description
    }

    pub fn quantifier(self) -> Quantifier {
        self.spec().quantifier
    }

    pub fn uses_k2(self) -> bool {
        self.spec().columns == Columns::K2
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().trim_start_matches(['C', 'c']).replace('_', ".");
        ConditionId::ALL
            .into_iter()
            .find(|c| c.label()[1..] == key)
            .ok_or_else(|| Error::Validation(format!("unknown condition `{s}`")))
    }
}

/// Three-valued outcome of a window test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Inconclusive,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    /// Conjunction: any false wins, then any inconclusive.
    pub fn all(parts: impl IntoIterator<Item = Truth>) -> Truth {
        let mut out = Truth::True;
        for t in parts {
            match t {
                Truth::False => return Truth::False,
                Truth::Inconclusive => out = Truth::Inconclusive,
                Truth::True => {}
            }
        }
        out
    }
}

impl Serialize for Truth {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self {
            Truth::True => ser.serialize_bool(true),
            Truth::False => ser.serialize_bool(false),
            Truth::Inconclusive => ser.serialize_str("inconclusive"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Every subset supremum was enumerated exhaustively (or is exact by a
    /// sign split).
    ExactSubset,
    /// A subset supremum came from the search heuristic: a lower bound.
    IntervalHeuristic,
    /// No subset supremum involved; nested-window growth or tail probe.
    WindowProbe,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionVerdict {
    pub label: String,
    pub holds: Truth,
    pub witness_l: Option<u64>,
    /// Supremum at `L = 1` on the full window; for limit conditions the
    /// largest tail deviation.
    pub sup_value: f64,
    pub method: Method,
    pub note: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<ConditionVerdict>,
}

impl ConditionVerdict {
    pub fn trivially_true(label: impl Into<String>, note: impl Into<String>) -> Self {
        ConditionVerdict {
            label: label.into(),
            holds: Truth::True,
            witness_l: Some(1),
            sup_value: 0.0,
            method: Method::WindowProbe,
            note: note.into(),
            parts: Vec::new(),
        }
    }

    /// Conjunction of several verdicts. `main` selects the part whose
    /// supremum and witness are reported at the top level.
    pub fn conjunction(label: impl Into<String>, parts: Vec<ConditionVerdict>, main: usize) -> Self {
        let holds = Truth::all(parts.iter().map(|p| p.holds));
        let method = if parts.iter().any(|p| p.method == Method::IntervalHeuristic) {
            Method::IntervalHeuristic
        } else if parts.iter().all(|p| p.method == Method::ExactSubset) && !parts.is_empty() {
            Method::ExactSubset
        } else {
            Method::WindowProbe
        };
        let (sup_value, witness_l) = parts.get(main).map_or((0.0, None), |p| (p.sup_value, p.witness_l));
        ConditionVerdict { label: label.into(), holds, witness_l, sup_value, method, note: String::new(), parts }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionPolicy {
    /// Row count up to which subset suprema are enumerated exhaustively.
    pub oracle_budget: usize,
    /// Relative growth tolerated between nested windows, and the tail size
    /// accepted as a vanished limit.
    pub tol: f64,
    /// `L` ranges over `2^0 .. 2^l_grid_max_exponent`.
    pub l_grid_max_exponent: u32,
    pub search: SearchPolicy,
}

impl Default for ConditionPolicy {
    fn default() -> Self {
        ConditionPolicy { oracle_budget: 12, tol: 1e-9, l_grid_max_exponent: 16, search: SearchPolicy::default() }
    }
}

impl ConditionPolicy {
    pub fn l_grid(&self) -> Vec<u64> {
        (0..=self.l_grid_max_exponent).map(|e| 1u64 << e).collect()
    }
}

/// Ratio above which the last growth step counts as "not slowing down".
const STALL_RATIO: f64 = 0.95;

/// Classifies the window profile `a = S(half)`, `b = S(3/4)`, `c = S(all)`.
pub fn classify_profile(a: f64, b: f64, c: f64, tol: f64) -> Truth {
    if !c.is_finite() {
        return Truth::False;
    }
    if c == 0.0 || c - a <= tol * c {
        Truth::True
    } else if c - b >= STALL_RATIO * (b - a) {
        Truth::False
    } else {
        Truth::Inconclusive
    }
}

/// Classifies sequences that should settle: each entry of `seqs` is one
/// sequence over its index range, and only the upper half is inspected.
/// With `cauchy` the oscillation (max - min) is measured, otherwise the
/// magnitude. Returns the verdict and the worst tail measure.
pub fn classify_tails(seqs: &[Vec<f64>], cauchy: bool, tol: f64) -> (Truth, f64) {
    let mut worst = 0.0f64;
    let mut early_worst = 0.0f64;
    let mut late_worst = 0.0f64;
    let mut scale = 0.0f64;
    for seq in seqs {
        let len = seq.len();
        if len < 2 {
            continue;
        }
        scale = seq.iter().fold(scale, |acc, v| acc.max(v.abs()));
        let half = len / 2;
        let quarter = (3 * len) / 4;
        let measure = |range: &[f64]| -> f64 {
            if range.is_empty() {
                return 0.0;
            }
            if cauchy {
                let hi = range.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = range.iter().copied().fold(f64::INFINITY, f64::min);
                hi - lo
            } else {
                range.iter().fold(0.0, |acc, v| acc.max(v.abs()))
            }
        };
        let tail = &seq[half..];
        worst = worst.max(measure(tail));
        // For Cauchy tails the late segment includes its left neighbour so
        // that a jump at the seam is not lost.
        early_worst = early_worst.max(measure(&seq[half..quarter.max(half + 1).min(len)]));
        late_worst = late_worst.max(measure(&seq[quarter.saturating_sub(1).max(half)..]));
    }
    if !worst.is_finite() {
        return (Truth::False, worst);
    }
    let threshold = tol * scale.max(1.0);
    let verdict = if worst <= threshold {
        Truth::True
    } else if late_worst >= STALL_RATIO * early_worst && late_worst > threshold {
        Truth::False
    } else {
        Truth::Inconclusive
    };
    (verdict, worst)
}

/// Nested window sizes `(rows, cols)` at fractions 1/2, 3/4, 1.
fn checkpoints(rows: usize, cols: usize) -> [(usize, usize); 3] {
    let frac = |n: usize, num: usize, den: usize| ((n * num).div_ceil(den)).max(1).min(n.max(1));
    [(frac(rows, 1, 2), frac(cols, 1, 2)), (frac(rows, 3, 4), frac(cols, 3, 4)), (rows, cols)]
}

/// Combines per-`L` truths according to the quantifier. Returns the verdict
/// and the witness.
fn quantify(q: Quantifier, per_l: &[(u64, Truth)]) -> (Truth, Option<u64>) {
    match q {
        Quantifier::None => (per_l[0].1, (per_l[0].1 == Truth::True).then_some(1)),
        Quantifier::ExistsL => {
            if let Some(&(l, _)) = per_l.iter().find(|(_, t)| *t == Truth::True) {
                (Truth::True, Some(l))
            } else if per_l.iter().all(|(_, t)| *t == Truth::False) {
                (Truth::False, None)
            } else {
                (Truth::Inconclusive, None)
            }
        }
        Quantifier::ForAllL => (Truth::all(per_l.iter().map(|(_, t)| *t)), None),
    }
}

/// Runs the nested-window growth probe for a family of window suprema.
/// `sups(window_index)` returns the supremum for every grid value of `L`.
pub(crate) fn growth_probe(
    quantifier: Quantifier,
    grid: &[u64],
    tol: f64,
    mut sups: impl FnMut(usize) -> Vec<f64>,
) -> (Truth, Option<u64>, f64) {
    let profile: Vec<Vec<f64>> = (0..3).map(&mut sups).collect();
    let per_l: Vec<(u64, Truth)> = grid
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, classify_profile(profile[0][i], profile[1][i], profile[2][i], tol)))
        .collect();
    let (holds, witness) = quantify(quantifier, &per_l);
    (holds, witness, profile[2][0])
}

/// Evaluates one condition on the matrix window `m` (rows may be ragged;
/// missing entries are zero). `p[k]` is the exponent attached to column `k`.
pub fn check_condition<S: Scalar>(
    cond: ConditionId,
    m: &[Vec<S>],
    p: &[f64],
    policy: &ConditionPolicy,
) -> Result<ConditionVerdict> {
    let spec = cond.spec();
    let rows = m.len();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    if p.len() < cols {
        return Err(Error::DimensionMismatch { expected: cols, got: p.len() });
    }
    let weights: Vec<(usize, f64)> = match spec.columns {
        Columns::K1 => (0..cols).filter(|&k| p[k] <= 1.0).map(|k| (k, p[k])).collect(),
        Columns::K2 => {
            (0..cols).filter(|&k| p[k] > 1.0).map(|k| conjugate(p[k]).map(|c| (k, c))).collect::<Result<_>>()?
        }
        Columns::All => (0..cols).map(|k| (k, 1.0)).collect(),
    };
    if spec.columns == Columns::K2 && weights.is_empty() {
        return Err(Error::BadExponent(format!("{} ranges over K2 = {{k : p_k > 1}}, which is empty on the window", spec.label)));
    }
    let grid: Vec<u64> = match spec.quantifier {
        Quantifier::None => vec![1],
        _ => policy.l_grid(),
    };
    let scales: Vec<f64> = grid
        .iter()
        .map(|&l| match spec.scaling {
            Scaling::One => 1.0,
            Scaling::Times => l as f64,
            Scaling::Over => 1.0 / l as f64,
        })
        .collect();
    let aggregate = match spec.columns {
        Columns::K2 => Aggregate::Sum,
        _ => Aggregate::Max,
    };
    let objective = Objective { aggregate, columns: weights };

    if rows == 0 || cols == 0 {
        return Ok(ConditionVerdict::trivially_true(spec.label, "empty window"));
    }
    let mf: Vec<Vec<f64>> =
        m.iter().map(|row| (0..cols).map(|k| row.get(k).map_or(0.0, Scalar::to_f64)).collect()).collect();
    let windows = checkpoints(rows, cols);

    let verdict = match spec.shape {
        Shape::SubsetSup => {
            let exact_everywhere = rows <= policy.oracle_budget.min(ENUMERATION_HARD_CAP);
            let sign_split = cond == ConditionId::C4_4;
            let (holds, witness, sup) = growth_probe(spec.quantifier, &grid, policy.tol, |w| {
                let (re, ce) = windows[w];
                let obj = objective.truncated(ce);
                if sign_split && !exact_everywhere {
                    let col = subset::sign_split_column_sups(m, re, ce);
                    scales.iter().map(|&sc| obj.eval(&col, sc)).collect()
                } else if exact_everywhere {
                    subset::exact_sups(m, re, ce, &obj, &scales)
                } else {
                    subset::heuristic_sups(m, re, ce, &obj, &scales, &policy.search)
                }
            });
            let method = if exact_everywhere || sign_split { Method::ExactSubset } else { Method::IntervalHeuristic };
            let note = match method {
                Method::ExactSubset if !exact_everywhere => "sign split per column is exact; growth over nested windows",
                Method::ExactSubset => "all subsets enumerated; growth over nested windows",
                _ => "subset supremum is a search lower bound; growth over nested windows",
            };
            ConditionVerdict {
                label: spec.label.into(),
                holds,
                witness_l: witness,
                sup_value: sup,
                method,
                note: note.into(),
                parts: Vec::new(),
            }
        }
        Shape::RowSup { deviation } => {
            let alpha: Vec<f64> = if deviation { mf[rows - 1].clone() } else { vec![0.0; cols] };
            let (holds, witness, sup) = growth_probe(spec.quantifier, &grid, policy.tol, |w| {
                let (re, ce) = windows[w];
                let obj = objective.truncated(ce);
                scales
                    .iter()
                    .map(|&sc| {
                        (0..re)
                            .map(|n| {
                                let dev: Vec<f64> = mf[n].iter().zip(&alpha).map(|(v, a)| v - a).collect();
                                obj.eval(&dev, sc)
                            })
                            .fold(0.0, f64::max)
                    })
                    .collect()
            });
            let mut note = String::from("growth over nested windows");
            if spec.quantifier == Quantifier::ForAllL {
                note.push_str("; L grid-checked");
            }
            if deviation {
                note.push_str("; alpha_k taken from the last row");
            }
            ConditionVerdict {
                label: spec.label.into(),
                holds,
                witness_l: witness,
                sup_value: sup,
                method: Method::WindowProbe,
                note,
                parts: Vec::new(),
            }
        }
        Shape::Limit { deviation } => {
            // Columns whose tail is visible: k below half the row count.
            let visible = cols.min(rows / 2);
            let seqs: Vec<Vec<f64>> = (0..visible).map(|k| mf.iter().map(|row| row[k]).collect()).collect();
            let (holds, worst) = classify_tails(&seqs, deviation, policy.tol);
            ConditionVerdict {
                label: spec.label.into(),
                holds,
                witness_l: None,
                sup_value: worst,
                method: Method::WindowProbe,
                note: format!("limit judged from rows {}..{} of columns 0..{}; truncation-limited", rows / 2, rows - 1, visible),
                parts: Vec::new(),
            }
        }
    };
    Ok(verdict)
}

/// `sup_n |v_n|^{p_n}` probed over nested windows.
pub fn bounded_in_lp_infinity(label: &str, v: &[f64], p: &[f64], policy: &ConditionPolicy) -> ConditionVerdict {
    if v.is_empty() {
        return ConditionVerdict::trivially_true(label, "empty window");
    }
    let windows = checkpoints(v.len(), 1);
    let (holds, witness, sup) = growth_probe(Quantifier::None, &[1], policy.tol, |w| {
        let re = windows[w].0;
        vec![(0..re).map(|n| abs_pow(v[n], p[n])).fold(0.0, f64::max)]
    });
    ConditionVerdict {
        label: label.into(),
        holds,
        witness_l: witness,
        sup_value: sup,
        method: Method::WindowProbe,
        note: "growth over nested windows".into(),
        parts: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_ratio, Rational};

    fn identity(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|k| if i == k { 1.0 } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn labels_roundtrip() {
        for c in ConditionId::ALL {
            assert_eq!(c.label().parse::<ConditionId>().unwrap(), c);
        }
        assert_eq!("4.15".parse::<ConditionId>().unwrap(), ConditionId::C4_15);
        assert!("C4.3".parse::<ConditionId>().is_err());
    }

    #[test]
    fn zero_matrix_plain_sups_hold_with_zero() {
        let z = vec![vec![0.0; 6]; 6];
        let p1 = vec![0.5; 6];
        let p2 = vec![2.0; 6];
        for c in ConditionId::ALL {
            let p = if c.uses_k2() { &p2 } else { &p1 };
            let v = check_condition(c, &z, p, &ConditionPolicy::default()).unwrap();
            assert_eq!(v.holds, Truth::True, "{c}");
            assert_eq!(v.sup_value, 0.0, "{c}");
        }
    }

    #[test]
    fn identity_column_limits_vanish() {
        let v = check_condition(ConditionId::C4_6, &identity(16), &[1.0; 16], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::True);
        assert!(v.note.contains("truncation-limited"));
    }

    #[test]
    fn constant_column_does_not_vanish() {
        let m: Vec<Vec<f64>> = (0..16).map(|_| vec![1.0, 0.0]).collect();
        let v = check_condition(ConditionId::C4_6, &m, &[1.0; 2], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::False);
        let v = check_condition(ConditionId::C4_11, &m, &[1.0; 2], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::True);
    }

    #[test]
    fn oscillating_column_has_no_limit() {
        let m: Vec<Vec<f64>> = (0..16).map(|n| vec![if n % 2 == 0 { 1.0 } else { -1.0 }]).collect();
        let v = check_condition(ConditionId::C4_11, &m, &[1.0], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::False);
    }

    #[test]
    fn alternating_window_exact_and_heuristic_agree() {
        let m: Vec<Vec<Rational>> =
            (0..4).map(|n| vec![rational_from_ratio(if n % 2 == 0 { 1 } else { -1 }, 1); 4]).collect();
        let p = [0.5; 4];
        let exact = check_condition(ConditionId::C4_4, &m, &p, &ConditionPolicy::default()).unwrap();
        let heur =
            check_condition(ConditionId::C4_4, &m, &p, &ConditionPolicy { oracle_budget: 0, ..Default::default() })
                .unwrap();
        assert_eq!(exact.method, Method::ExactSubset);
        assert_eq!(exact.sup_value, heur.sup_value);
        assert_eq!(exact.holds, heur.holds);
    }

    #[test]
    fn k2_condition_without_k2_is_an_error() {
        let m = identity(3);
        let err = check_condition(ConditionId::C4_15, &m, &[1.0; 3], &ConditionPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::BadExponent(_)));
    }

    #[test]
    fn growing_rows_fail_bounded_sup() {
        let m: Vec<Vec<f64>> = (0..32).map(|n| vec![n as f64]).collect();
        let v = check_condition(ConditionId::C4_9, &m, &[1.0], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::False);
        let v = check_condition(ConditionId::C4_15, &m, &[2.0], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::False);
        assert_eq!(v.witness_l, None);
    }

    #[test]
    fn exists_l_reports_first_witness() {
        let m = identity(8);
        let v = check_condition(ConditionId::C4_15, &m, &[2.0; 8], &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::True);
        assert_eq!(v.witness_l, Some(1));
        assert_eq!(v.sup_value, 1.0);
    }

    #[test]
    fn profile_classifier() {
        assert_eq!(classify_profile(1.0, 1.0, 1.0, 1e-9), Truth::True);
        assert_eq!(classify_profile(1.0, 2.0, 3.0, 1e-9), Truth::False);
        assert_eq!(classify_profile(1.0, 1.9, 2.0, 1e-9), Truth::Inconclusive);
        assert_eq!(classify_profile(1.0, 2.0, f64::INFINITY, 1e-9), Truth::False);
    }
}
