//! Suprema over finite row subsets `F` of
//! `agg_k |scale * sum_{n in F} a_nk|^{e_k}`.
//!
//! Small windows are enumerated exhaustively. Larger ones use a pool of
//! sign-split subsets plus seeded random restarts, each polished by single
//! row flips; the result is a lower bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{abs_pow, Scalar};

/// Largest row count ever enumerated exhaustively, whatever the budget says.
pub const ENUMERATION_HARD_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Aggregate {
    Max,
    Sum,
}

/// Column weights of a subset functional: `(k, e_k)` pairs over the
/// admissible columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    pub aggregate: Aggregate,
    pub columns: Vec<(usize, f64)>,
}

impl Objective {
    pub fn eval(&self, colsums: &[f64], scale: f64) -> f64 {
        let terms = self.columns.iter().map(|&(k, e)| abs_pow(colsums[k] * scale, e));
        match self.aggregate {
            Aggregate::Max => terms.fold(0.0, f64::max),
            Aggregate::Sum => terms.sum(),
        }
    }

    /// Restriction to the columns `k < cols`.
    pub fn truncated(&self, cols: usize) -> Objective {
        Objective { aggregate: self.aggregate, columns: self.columns.iter().copied().filter(|&(k, _)| k < cols).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchPolicy {
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy { restarts: 8, seed: 0x5eed }
    }
}

fn entry<S: Scalar>(m: &[Vec<S>], n: usize, k: usize) -> Option<&S> {
    m[n].get(k)
}

/// Column sums over the rows flagged in `mask`, accumulated in ascending row
/// order so that equal subsets always give bit-identical floats.
fn column_sums<S: Scalar>(m: &[Vec<S>], mask: &[bool], cols: usize) -> Vec<f64> {
    (0..cols)
        .map(|k| {
            let mut acc = S::zero();
            for (n, &on) in mask.iter().enumerate() {
                if on {
                    if let Some(v) = entry(m, n, k) {
                        acc += v.clone();
                    }
                }
            }
            acc.to_f64()
        })
        .collect()
}

/// Exhaustive supremum over all `2^rows` subsets of the first `rows` rows,
/// for every scale at once.
pub fn exact_sups<S: Scalar>(m: &[Vec<S>], rows: usize, cols: usize, objective: &Objective, scales: &[f64]) -> Vec<f64> {
    assert!(rows <= ENUMERATION_HARD_CAP, "exhaustive enumeration over {rows} rows");
    let mut best = vec![0.0f64; scales.len()];
    let mut consider = |sums: &[f64]| {
        for (b, &sc) in best.iter_mut().zip(scales) {
            let v = objective.eval(sums, sc);
            if v > *b {
                *b = v;
            }
        }
    };
    if S::is_exact() {
        // Gray code walk: one row toggles per step, sums stay exact.
        let mut acc: Vec<S> = vec![S::zero(); cols];
        consider(&vec![0.0; cols]);
        let mut gray = 0usize;
        for step in 1usize..(1usize << rows) {
            let row = step.trailing_zeros() as usize;
            let adding = gray & (1 << row) == 0;
            gray ^= 1 << row;
            for (k, slot) in acc.iter_mut().enumerate() {
                if let Some(v) = entry(m, row, k) {
                    if adding {
                        *slot += v.clone();
                    } else {
                        *slot -= v.clone();
                    }
                }
            }
            let sums: Vec<f64> = acc.iter().map(Scalar::to_f64).collect();
            consider(&sums);
        }
    } else {
        let mut mask = vec![false; rows];
        for bits in 0usize..(1usize << rows) {
            for (n, slot) in mask.iter_mut().enumerate() {
                *slot = bits & (1 << n) != 0;
            }
            consider(&column_sums(m, &mask, cols));
        }
    }
    best
}

/// Lower bound on the supremum for every scale. The search itself runs in
/// `f64` at the first scale; the reported values are recomputed from the
/// kernel's own column sums of the subsets found.
pub fn heuristic_sups<S: Scalar>(
    m: &[Vec<S>],
    rows: usize,
    cols: usize,
    objective: &Objective,
    scales: &[f64],
    policy: &SearchPolicy,
) -> Vec<f64> {
    let mf: Vec<Vec<f64>> =
        (0..rows).map(|n| (0..cols).map(|k| entry(m, n, k).map_or(0.0, Scalar::to_f64)).collect()).collect();
    let score = |sums: &[f64]| objective.eval(sums, scales.first().copied().unwrap_or(1.0));
    let float_sums = |mask: &[bool]| -> Vec<f64> {
        let mut s = vec![0.0; cols];
        for (n, &on) in mask.iter().enumerate() {
            if on {
                for (slot, v) in s.iter_mut().zip(&mf[n]) {
                    *slot += v;
                }
            }
        }
        s
    };

    let mut pool: Vec<Vec<bool>> = vec![vec![true; rows]];
    for k in 0..cols {
        let plus: Vec<bool> = (0..rows).map(|n| mf[n][k] > 0.0).collect();
        let minus: Vec<bool> = (0..rows).map(|n| mf[n][k] < 0.0).collect();
        for mask in [plus, minus] {
            if mask.iter().any(|&b| b) && !pool.contains(&mask) {
                pool.push(mask);
            }
        }
    }
    let mut ranked: Vec<(f64, usize)> = pool.iter().enumerate().map(|(i, mk)| (score(&float_sums(mk)), i)).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut seeds: Vec<Vec<bool>> = ranked.iter().take(4).map(|&(_, i)| pool[i].clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    for _ in 0..policy.restarts {
        seeds.push((0..rows).map(|_| rng.gen_bool(0.5)).collect());
    }

    let mut candidates = pool;
    for mut mask in seeds {
        let mut sums = float_sums(&mask);
        let mut current = score(&sums);
        for _pass in 0..(2 * rows + 2) {
            let mut improved = false;
            for n in 0..rows {
                let sign = if mask[n] { -1.0 } else { 1.0 };
                let trial: Vec<f64> = sums.iter().zip(&mf[n]).map(|(s, v)| s + sign * v).collect();
                let value = score(&trial);
                if value > current * (1.0 + 1e-14) + f64::MIN_POSITIVE {
                    mask[n] = !mask[n];
                    sums = trial;
                    current = value;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        if !candidates.contains(&mask) {
            candidates.push(mask);
        }
    }

    let mut best = vec![0.0f64; scales.len()];
    for mask in &candidates {
        let sums = column_sums(m, mask, cols);
        for (b, &sc) in best.iter_mut().zip(scales) {
            *b = b.max(objective.eval(&sums, sc));
        }
    }
    best
}

/// Per column `max(sum of positive entries, |sum of negative entries|)`:
/// the exact value of `sup_F |sum_{n in F} a_nk|` for each `k`.
pub fn sign_split_column_sups<S: Scalar>(m: &[Vec<S>], rows: usize, cols: usize) -> Vec<f64> {
    (0..cols)
        .map(|k| {
            let (mut pos, mut neg) = (S::zero(), S::zero());
            for n in 0..rows {
                if let Some(v) = entry(m, n, k) {
                    if v.is_positive() {
                        pos += v.clone();
                    } else {
                        neg += v.clone();
                    }
                }
            }
            pos.to_f64().max(neg.to_f64().abs())
        })
        .collect()
}
