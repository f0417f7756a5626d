//! Dual spaces and matrix mappings.
//!
//! For a candidate `a` the summation-by-parts identity
//! `sum_{n<=l} a_n x_n = (E y)_l`, with `y` the composite transform of `x`,
//! turns every question about `a` into one about the lower triangle `E(a)`.
//! Writing `g_d = C(m+d-1, d)` and `G_l(k) = sum_{j=k}^{l} g_{j-k} a_j`,
//!
//! ```text
//! e_ln = r_n * sum_{k=n}^{l} (-1)^(k-n) D_{k-n} / t_k * G_l(k)      (n <= l)
//! ```
//!
//! which regroups into the familiar three-term bracket (the `k = n` term
//! split off as `a_n / (s_0 t_n)`). Letting `l -> inf` gives the associated
//! sequence used by the compactness module.

pub mod conditions;
pub mod subset;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::compact::{associated_matrix, OperatorSpec, Support};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::sequence::SpaceParams;
use crate::triangles::{MatrixTag, SpaceWindow, TriangleMatrix};

pub use conditions::{check_condition, ConditionId, ConditionPolicy, ConditionVerdict, Method, Quantifier, Truth};

/// The bracket evaluated with every inner sum cut at `a.len() - 1`:
/// entries `n = 0..cols` of `r_n sum_{k>=n} (-1)^(k-n) D_{k-n}/t_k G(k)`.
/// The window must reach at least `a.len() - 1`.
pub(crate) fn bracket_row<S: Scalar>(w: &SpaceWindow<S>, a: &[S], cols: usize) -> Vec<S> {
    let Some(last) = a.len().checked_sub(1) else {
        return vec![S::zero(); cols];
    };
    debug_assert!(last <= w.n);
    let g = &w.inv_binom;
    // h_k = G(k) / t_k
    let h: Vec<S> = (0..=last)
        .map(|k| {
            let mut acc = S::zero();
            for j in k..=last {
                if !a[j].is_zero() {
                    acc += g[j - k].clone() * a[j].clone();
                }
            }
            acc / w.t[k].clone()
        })
        .collect();
    bracket_from_h(w, &h, cols)
}

fn bracket_from_h<S: Scalar>(w: &SpaceWindow<S>, h: &[S], cols: usize) -> Vec<S> {
    let last = h.len() - 1;
    (0..cols)
        .map(|n| {
            if n > last {
                return S::zero();
            }
            let mut acc = S::zero();
            for d in 0..=(last - n) {
                let dk = w.d.get(d);
                if dk.is_zero() || h[n + d].is_zero() {
                    continue;
                }
                acc += S::sign_pow(d) * dk.clone() * h[n + d].clone();
            }
            acc * w.r[n].clone()
        })
        .collect()
}

/// `E(a)` on the window `[0, N]` of `w`.
pub fn e_matrix<S: Scalar>(w: &SpaceWindow<S>, a: &[S]) -> Result<TriangleMatrix<S>> {
    if a.len() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: a.len() });
    }
    let g = &w.inv_binom;
    // G_l(k) grows row by row: G_l(k) = G_{l-1}(k) + g_{l-k} a_l.
    let mut big_g: Vec<S> = Vec::with_capacity(w.dim());
    let mut rows = Vec::with_capacity(w.dim());
    for l in 0..w.dim() {
        big_g.push(S::zero());
        if !a[l].is_zero() {
            for (k, slot) in big_g.iter_mut().enumerate() {
                *slot += g[l - k].clone() * a[l].clone();
            }
        }
        let h: Vec<S> = big_g.iter().zip(&w.t).map(|(gk, tk)| gk.clone() / tk.clone()).collect();
        rows.push(bracket_from_h(w, &h, l + 1));
    }
    let mut rows = rows.into_iter();
    Ok(TriangleMatrix::from_rows(w.n, MatrixTag::Generic, |_| rows.next().unwrap_or_default()))
}

/// `E(a)` for the space `params` truncated at `N`.
pub fn build_e<S: Scalar>(a: &[S], params: &SpaceParams, n: usize) -> Result<TriangleMatrix<S>> {
    e_matrix(&SpaceWindow::new(params, n)?, a)
}

/// `c_nj = a_n * sum_{k=j}^{n} (-1)^(k-j) C(m+n-k-1, n-k) D_{k-j} r_j / t_k`,
/// the matrix with `a_n x_n = (C y)_n`.
pub fn alpha_matrix<S: Scalar>(w: &SpaceWindow<S>, a: &[S]) -> Result<TriangleMatrix<S>> {
    if a.len() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: a.len() });
    }
    Ok(TriangleMatrix::from_rows(w.n, MatrixTag::Generic, |n| {
        if a[n].is_zero() {
            return vec![S::zero(); n + 1];
        }
        (0..=n).map(|j| a[n].clone() * w.inverse_composite_entry(n, j)).collect()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualKind {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for DualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualKind::Alpha => "alpha",
            DualKind::Beta => "beta",
            DualKind::Gamma => "gamma",
        })
    }
}

impl FromStr for DualKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(DualKind::Alpha),
            "beta" => Ok(DualKind::Beta),
            "gamma" => Ok(DualKind::Gamma),
            other => Err(Error::Validation(format!("unknown dual `{other}` (alpha, beta, gamma)"))),
        }
    }
}

/// `p_k > 1` everywhere (`true`) or `p_k <= 1` everywhere (`false`) on the
/// window.
pub fn exponent_regime(p: &[f64]) -> Result<bool> {
    if p.iter().all(|&v| v > 1.0) {
        Ok(true)
    } else if p.iter().all(|&v| v <= 1.0) {
        Ok(false)
    } else {
        Err(Error::MixedExponentRegime)
    }
}

fn rows_of<S: Scalar>(m: &TriangleMatrix<S>) -> Vec<Vec<S>> {
    (0..m.dim()).map(|n| m.row(n).to_vec()).collect()
}

fn relabel(mut v: ConditionVerdict, label: &str) -> ConditionVerdict {
    v.label = format!("{label} ({})", v.label);
    v
}

/// Cauchy probe for `sum_{j>=k} g_{j-k} a_j`, columns `k <= N/2`.
fn series_probe_b1<S: Scalar>(w: &SpaceWindow<S>, a: &[S], policy: &ConditionPolicy) -> ConditionVerdict {
    let n = w.n;
    let af: Vec<f64> = a.iter().map(Scalar::to_f64).collect();
    let g: Vec<f64> = w.inv_binom.iter().map(Scalar::to_f64).collect();
    let seqs: Vec<Vec<f64>> = (0..=n / 2)
        .map(|k| {
            let mut acc = 0.0;
            (0..=n)
                .map(|j| {
                    if j >= k {
                        acc += g[j - k] * af[j];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let (holds, worst) = conditions::classify_tails(&seqs, true, policy.tol);
    ConditionVerdict {
        label: "B1".into(),
        holds,
        witness_l: None,
        sup_value: worst,
        method: Method::WindowProbe,
        note: "partial sums over j in [N/2, N] must be Cauchy; series probe".into(),
        parts: Vec::new(),
    }
}

/// Cauchy probe for `sum_{k>=n+2} (-1)^(k-n) D_{k-n}/t_k sum_{j>=k} g_{j-k} a_j`,
/// with both sums cut at `J` and `J` running over the window.
fn series_probe_b2<S: Scalar>(w: &SpaceWindow<S>, a: &[S], policy: &ConditionPolicy) -> ConditionVerdict {
    let n = w.n;
    let af: Vec<f64> = a.iter().map(Scalar::to_f64).collect();
    let g: Vec<f64> = w.inv_binom.iter().map(Scalar::to_f64).collect();
    let d: Vec<f64> = w.d.values.iter().map(Scalar::to_f64).collect();
    let t: Vec<f64> = w.t.iter().map(Scalar::to_f64).collect();
    let cols = n / 2 + 1;
    let mut seqs = vec![Vec::with_capacity(n + 1); cols];
    let mut big_g = vec![0.0f64; n + 1];
    for jmax in 0..=n {
        for (k, slot) in big_g.iter_mut().enumerate().take(jmax + 1) {
            *slot += g[jmax - k] * af[jmax];
        }
        for (col, seq) in seqs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in (col + 2)..=jmax {
                let sign = if (k - col) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * d[k - col] / t[k] * big_g[k];
            }
            seq.push(acc);
        }
    }
    let (holds, worst) = conditions::classify_tails(&seqs, true, policy.tol);
    ConditionVerdict {
        label: "B2".into(),
        holds,
        witness_l: None,
        sup_value: worst,
        method: Method::WindowProbe,
        note: "partial sums over J in [N/2, N] must be Cauchy; series probe".into(),
        parts: Vec::new(),
    }
}

/// The beta-dual battery for `a` on the window `w`.
fn beta_battery<S: Scalar>(
    w: &SpaceWindow<S>,
    a: &[S],
    p: &[f64],
    high: bool,
    policy: &ConditionPolicy,
) -> Result<ConditionVerdict> {
    let e = rows_of(&e_matrix(w, a)?);
    let b3_values: Vec<f64> =
        (0..w.dim()).map(|n| (w.r[n].clone() * a[n].clone() / w.t[n].clone()).to_f64()).collect();
    let mut parts = vec![
        series_probe_b1(w, a, policy),
        series_probe_b2(w, a, policy),
        conditions::bounded_in_lp_infinity("B3", &b3_values, p, policy),
    ];
    let main = parts.len();
    if high {
        parts.push(relabel(check_condition(ConditionId::C4_15, &e, p, policy)?, "B4"));
        parts.push(relabel(check_condition(ConditionId::C4_11, &e, p, policy)?, "B6"));
        parts.push(relabel(check_condition(ConditionId::C4_13, &e, p, policy)?, "B8"));
    } else {
        parts.push(relabel(check_condition(ConditionId::C4_9, &e, p, policy)?, "B5"));
        parts.push(relabel(check_condition(ConditionId::C4_11, &e, p, policy)?, "B6"));
        parts.push(relabel(check_condition(ConditionId::C4_12, &e, p, policy)?, "B7"));
    }
    Ok(ConditionVerdict::conjunction("beta", parts, main))
}

/// Window test of `a` against the alpha-, beta- or gamma-dual of the space.
pub fn dual_membership<S: Scalar>(
    a: &[S],
    dual: DualKind,
    params: &SpaceParams,
    n: usize,
    policy: &ConditionPolicy,
) -> Result<ConditionVerdict> {
    let w = SpaceWindow::<S>::new(params, n)?;
    if a.len() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: a.len() });
    }
    let p = params.p.values(w.dim())?;
    let high = exponent_regime(&p)?;
    dual_membership_in(&w, a, dual, &p, high, policy)
}

fn dual_membership_in<S: Scalar>(
    w: &SpaceWindow<S>,
    a: &[S],
    dual: DualKind,
    p: &[f64],
    high: bool,
    policy: &ConditionPolicy,
) -> Result<ConditionVerdict> {
    Ok(match dual {
        DualKind::Alpha => {
            let c = rows_of(&alpha_matrix(w, a)?);
            let (cond, set) = if high { (ConditionId::C4_5, "H2") } else { (ConditionId::C4_4, "H1") };
            let v = relabel(check_condition(cond, &c, p, policy)?, set);
            ConditionVerdict::conjunction("alpha", vec![v], 0)
        }
        DualKind::Gamma => {
            let e = rows_of(&e_matrix(w, a)?);
            let (cond, set) = if high { (ConditionId::C4_15, "Gamma2") } else { (ConditionId::C4_14, "Gamma1") };
            let v = relabel(check_condition(cond, &e, p, policy)?, set);
            ConditionVerdict::conjunction("gamma", vec![v], 0)
        }
        DualKind::Beta => beta_battery(w, a, p, high, policy)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MappingTarget {
    LInf,
    L1,
}

impl FromStr for MappingTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linf" | "l_inf" | "l-inf" => Ok(MappingTarget::LInf),
            "l1" | "l_1" => Ok(MappingTarget::L1),
            other => Err(Error::Validation(format!("unknown mapping target `{other}` (linf, l1)"))),
        }
    }
}

/// Window test of `A` in `(l(r,s,t,p;Delta^(m)), target)`: the supremum
/// condition on the associated matrix plus beta-dual membership of every row.
pub fn mapping_class_test<S: Scalar>(
    op: &OperatorSpec,
    target: MappingTarget,
    params: &SpaceParams,
    n: usize,
    policy: &ConditionPolicy,
) -> Result<ConditionVerdict> {
    let w = SpaceWindow::<S>::new(params, n)?;
    let p = params.p.values(w.dim())?;
    let high = exponent_regime(&p)?;
    let assoc = associated_matrix::<S>(op, params, n, policy.tol)?;
    let cond = match (target, high) {
        (MappingTarget::LInf, true) => ConditionId::C4_15,
        (MappingTarget::LInf, false) => ConditionId::C4_14,
        (MappingTarget::L1, true) => ConditionId::C4_5,
        (MappingTarget::L1, false) => ConditionId::C4_4,
    };
    let sup = relabel(check_condition(cond, &assoc.rows, &p, policy)?, "associated matrix");
    let mut row_parts = Vec::with_capacity(w.dim());
    let mut windows: HashMap<usize, (SpaceWindow<S>, Vec<f64>)> = HashMap::new();
    for l in 0..w.dim() {
        // A finite row is probed on a window twice its support, so that the
        // tail probes look past the last nonzero entry.
        let size = match op.support(l) {
            Support::Finite(end) => n.max(2 * end + 2),
            Support::Decaying => n,
        };
        if let std::collections::hash_map::Entry::Vacant(slot) = windows.entry(size) {
            let wl = SpaceWindow::<S>::new(params, size)?;
            let pl = params.p.values(wl.dim())?;
            slot.insert((wl, pl));
        }
        let (wl, pl) = &windows[&size];
        let row: Vec<S> = op.row_window(l, size)?.iter().map(S::from_rational).collect();
        let v = dual_membership_in(wl, &row, DualKind::Beta, pl, high, policy)?;
        row_parts.push(ConditionVerdict { label: format!("row {l} in beta-dual"), ..v });
    }
    let rows_verdict = ConditionVerdict::conjunction("rows in beta-dual", row_parts, 0);
    let label = match target {
        MappingTarget::LInf => "mapping into l_inf",
        MappingTarget::L1 => "mapping into l_1",
    };
    Ok(ConditionVerdict::conjunction(label, vec![sup, rows_verdict], 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_ratio, Rational};
    use crate::sequence::{ExponentSequence, SequenceFamily};
    use crate::spaces::Space;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ratio(n, d)
    }

    fn sample_params(rng: &mut ChaCha8Rng, m: usize, p: f64) -> SpaceParams {
        let mut pick = |lo: i64, hi: i64| q(rng.gen_range(lo..=hi), rng.gen_range(1..=4));
        let r = SequenceFamily::explicit((0..40).map(|_| pick(1, 8)).collect());
        let s = SequenceFamily::finite(vec![pick(3, 6), pick(-2, 2), pick(-1, 1)]);
        let t = SequenceFamily::explicit((0..40).map(|_| pick(1, 8)).collect());
        SpaceParams::new(r, s, t, m, ExponentSequence::constant(p).unwrap()).unwrap()
    }

    /// The three-term bracket exactly as displayed, evaluated term by term.
    fn e_three_term(w: &SpaceWindow<Rational>, a: &[Rational], l: usize, n: usize) -> Rational {
        let g = |d: usize| w.inv_binom[d].clone();
        let mut acc = a[n].clone() / (w.s[0].clone() * w.t[n].clone());
        for k in n..=(n + 1) {
            if k > l {
                break;
            }
            let mut inner = Rational::zero();
            for j in (n + 1)..=l {
                if j >= k {
                    inner += g(j - k) * a[j].clone();
                }
            }
            let sign = if (k - n) % 2 == 0 { Rational::one() } else { -Rational::one() };
            acc += sign * w.d.get(k - n).clone() / w.t[k].clone() * inner;
        }
        for k in (n + 2)..=l {
            let mut inner = Rational::zero();
            for j in k..=l {
                inner += g(j - k) * a[j].clone();
            }
            let sign = if (k - n) % 2 == 0 { Rational::one() } else { -Rational::one() };
            acc += sign * w.d.get(k - n).clone() / w.t[k].clone() * inner;
        }
        acc * w.r[n].clone()
    }

    #[test]
    fn e_matches_three_term_display() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=3 {
            let params = sample_params(&mut rng, m, 2.0);
            let w = SpaceWindow::<Rational>::new(&params, 9).unwrap();
            let a: Vec<Rational> = (0..10).map(|_| q(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
            let e = e_matrix(&w, &a).unwrap();
            for l in 0..10 {
                for n in 0..=l {
                    assert_eq!(e.entry(l, n), e_three_term(&w, &a, l, n), "m={m} l={l} n={n}");
                }
            }
        }
    }

    #[test]
    fn e_of_first_unit_vector() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let params = sample_params(&mut rng, 2, 2.0);
        let w = SpaceWindow::<Rational>::new(&params, 6).unwrap();
        let mut a = vec![Rational::zero(); 7];
        a[0] = Rational::one();
        let e = e_matrix(&w, &a).unwrap();
        let e00 = w.r[0].clone() / (w.s[0].clone() * w.t[0].clone());
        for l in 0..7 {
            assert_eq!(e.entry(l, 0), e00);
            for n in 1..=l {
                assert!(e.entry(l, n).is_zero());
            }
        }
    }

    #[test]
    fn master_identity_partial_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..6 {
            let params = sample_params(&mut rng, 1 + trial % 3, 2.0);
            let space = Space::<Rational>::new(&params, 12).unwrap();
            let a: Vec<Rational> = (0..13).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
            let x: Vec<Rational> = (0..13).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
            let y = space.forward_transform(&x).unwrap();
            let ey = build_e(&a, &params, 12).unwrap().mul_vec(&y).unwrap();
            let mut partial = Rational::zero();
            for l in 0..13 {
                partial += a[l].clone() * x[l].clone();
                assert_eq!(ey[l], partial);
            }
        }
    }

    #[test]
    fn alpha_matrix_reproduces_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = sample_params(&mut rng, 2, 2.0);
        let space = Space::<Rational>::new(&params, 8).unwrap();
        let w = SpaceWindow::<Rational>::new(&params, 8).unwrap();
        let a: Vec<Rational> = (0..9).map(|i| q(i as i64 - 4, 3)).collect();
        let x: Vec<Rational> = (0..9).map(|i| q(2 * i as i64 + 1, 5)).collect();
        let cy = alpha_matrix(&w, &a).unwrap().mul_vec(&space.forward_transform(&x).unwrap()).unwrap();
        for n in 0..9 {
            assert_eq!(cy[n], a[n].clone() * x[n].clone());
        }
    }

    #[test]
    fn zero_is_in_every_dual() {
        let params = SpaceParams::unit(1, ExponentSequence::constant(2.0).unwrap()).unwrap();
        let zero = vec![Rational::zero(); 17];
        for dual in [DualKind::Alpha, DualKind::Beta, DualKind::Gamma] {
            let v = dual_membership(&zero, dual, &params, 16, &ConditionPolicy::default()).unwrap();
            assert_eq!(v.holds, Truth::True, "{dual}");
            assert_eq!(v.sup_value, 0.0);
        }
    }

    #[test]
    fn first_unit_vector_in_beta_dual() {
        let params = SpaceParams::unit(1, ExponentSequence::constant(2.0).unwrap()).unwrap();
        let mut a = vec![0.0f64; 17];
        a[0] = 1.0;
        let v = dual_membership(&a, DualKind::Beta, &params, 16, &ConditionPolicy::default()).unwrap();
        assert_eq!(v.holds, Truth::True, "{v:#?}");
        let b6 = v.parts.iter().find(|p| p.label.starts_with("B6")).unwrap();
        assert_eq!(b6.holds, Truth::True);
        let e = build_e(&a, &params, 16).unwrap();
        assert_eq!(e.entry(16, 0), 1.0);
    }

    #[test]
    fn factorial_sequence_fails_b3() {
        let params = SpaceParams::unit(1, ExponentSequence::constant(2.0).unwrap()).unwrap();
        let mut f = Rational::one();
        let a: Vec<Rational> = (0..25)
            .map(|n| {
                if n > 0 {
                    f *= q(n as i64, 1);
                }
                f.clone()
            })
            .collect();
        let v = dual_membership(&a, DualKind::Beta, &params, 24, &ConditionPolicy::default()).unwrap();
        let b3 = v.parts.iter().find(|p| p.label == "B3").unwrap();
        assert_eq!(b3.holds, Truth::False);
        assert_eq!(v.holds, Truth::False);
    }

    #[test]
    fn mixed_exponents_rejected() {
        let p = ExponentSequence::list((0..9).map(|k| if k % 2 == 0 { 2.0 } else { 0.5 }).collect()).unwrap();
        let params = SpaceParams::unit(1, p).unwrap();
        let a = vec![0.0f64; 9];
        let err = dual_membership(&a, DualKind::Gamma, &params, 8, &ConditionPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::MixedExponentRegime));
    }

    #[test]
    fn identity_operator_maps_into_l_inf() {
        let params = SpaceParams::unit(1, ExponentSequence::constant(2.0).unwrap()).unwrap();
        let v = mapping_class_test::<f64>(&OperatorSpec::identity(), MappingTarget::LInf, &params, 16, &Default::default())
            .unwrap();
        assert_eq!(v.holds, Truth::True, "{v:#?}");
        assert_eq!(v.sup_value, 1.0);
        let zero = OperatorSpec::zero();
        for target in [MappingTarget::LInf, MappingTarget::L1] {
            let v = mapping_class_test::<Rational>(&zero, target, &params, 8, &Default::default()).unwrap();
            assert_eq!(v.holds, Truth::True);
        }
    }
}
