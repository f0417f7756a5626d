//! The space realized on a window `[0, N]`: forward and inverse transforms,
//! the paranorm, the BK norm for constant exponents and the Schauder basis.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::{abs_pow, Scalar};
use crate::sequence::SpaceParams;
use crate::triangles::SpaceWindow;

/// Paranorm value together with the magnitude of the last summand, so that
/// callers can judge whether the truncation is adequate.
#[derive(Clone, Debug, PartialEq)]
pub struct Paranorm<S> {
    pub value: f64,
    pub last_term: f64,
    /// `sum |y_n|^{p_n}` in the active kernel when every `p_n` is a positive
    /// integer; `None` otherwise.
    pub exact_power_sum: Option<S>,
    /// `M = max{1, sup p_k}`.
    pub big_m: f64,
}

impl<S> Paranorm<S> {
    /// `last_term < rel * value`.
    pub fn tail_negligible(&self, rel: f64) -> bool {
        self.last_term < rel * self.value
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector<S> {
    pub j: usize,
    pub b: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction<S> {
    pub partial: Vec<S>,
    pub remainder: f64,
}

/// The space `l(r,s,t,p; Delta^(m))` truncated to `[0, N]`.
#[derive(Clone, Debug)]
pub struct Space<S> {
    pub window: SpaceWindow<S>,
    pub p: Vec<f64>,
    pub big_m: f64,
    integer_exponents: Option<Vec<u32>>,
}

impl<S: Scalar> Space<S> {
    pub fn new(params: &SpaceParams, n: usize) -> Result<Self> {
        let window = SpaceWindow::new(params, n)?;
        let p = params.p.values(n + 1)?;
        let big_m = params.p.big_m(n + 1)?;
        let integer_exponents = p
            .iter()
            .map(|&e| (e.fract() == 0.0 && e >= 1.0 && e <= u32::MAX as f64).then_some(e as u32))
            .collect();
        Ok(Space { window, p, big_m, integer_exponents })
    }

    pub fn n(&self) -> usize {
        self.window.n
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// `y = A(r,s,t) Delta^(m) x`, applied as the difference followed by the
    /// generalized mean.
    pub fn forward_transform(&self, x: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        let w = &self.window;
        let diff: Vec<S> = (0..x.len())
            .map(|i| {
                let mut acc = S::zero();
                for d in 0..=i.min(w.m) {
                    acc += S::sign_pow(d) * w.diff_binom[d].clone() * x[i - d].clone();
                }
                acc
            })
            .collect();
        let weighted: Vec<S> = diff.iter().zip(&w.t).map(|(z, t)| z.clone() * t.clone()).collect();
        Ok((0..x.len())
            .map(|n| {
                let mut acc = S::zero();
                for (i, v) in weighted[..=n].iter().enumerate() {
                    acc += w.s[n - i].clone() * v.clone();
                }
                acc / w.r[n].clone()
            })
            .collect())
    }

    /// `x = Delta^(-m) B y`: the generalized-mean inverse followed by `m`
    /// summations.
    pub fn inverse_transform(&self, y: &[S]) -> Result<Vec<S>> {
        self.check_len(y)?;
        let w = &self.window;
        let scaled: Vec<S> = y.iter().zip(&w.r).map(|(v, r)| v.clone() * r.clone()).collect();
        let mean_inv: Vec<S> = (0..y.len())
            .map(|k| {
                let mut acc = S::zero();
                for (j, v) in scaled[..=k].iter().enumerate() {
                    acc += S::sign_pow(k - j) * w.d.get(k - j).clone() * v.clone();
                }
                acc / w.t[k].clone()
            })
            .collect();
        Ok((0..y.len())
            .map(|n| {
                let mut acc = S::zero();
                for (k, v) in mean_inv[..=n].iter().enumerate() {
                    acc += w.inv_binom[n - k].clone() * v.clone();
                }
                acc
            })
            .collect())
    }

    /// Paranorm of an already transformed vector `y`.
    pub fn paranorm_of_image(&self, y: &[S]) -> Result<Paranorm<S>> {
        self.check_len(y)?;
        let sum: f64 = y.iter().zip(&self.p).map(|(v, &e)| abs_pow(v.to_f64(), e)).sum();
        let exact_power_sum = self
            .integer_exponents
            .as_ref()
            .map(|exps| y.iter().zip(exps).fold(S::zero(), |acc, (v, &e)| acc + v.abs().powi(e)));
        let sum = exact_power_sum.as_ref().map_or(sum, Scalar::to_f64);
        let last = y.len() - 1;
        Ok(Paranorm {
            value: sum.powf(1.0 / self.big_m),
            last_term: abs_pow(y[last].to_f64(), self.p[last]),
            exact_power_sum,
            big_m: self.big_m,
        })
    }

    /// `(sum_n |y_n|^{p_n})^{1/M}` with `y` the transform of `x`.
    pub fn paranorm(&self, x: &[S]) -> Result<Paranorm<S>> {
        let y = self.forward_transform(x)?;
        self.paranorm_of_image(&y)
    }

    /// `||y||_p` for a constant exponent `p >= 1`.
    pub fn bk_norm(&self, x: &[S], p: f64) -> Result<f64> {
        let y = self.forward_transform(x)?;
        lp_norm(&y, p)
    }

    /// Column `j` of the inverse composite triangle.
    pub fn basis_vector(&self, j: usize) -> Result<BasisVector<S>> {
        if j > self.n() {
            return Err(Error::IndexOutOfRange { index: j, n: self.n() });
        }
        let w = &self.window;
        let b = (0..self.dim()).map(|n| if n < j { S::zero() } else { w.inverse_composite_entry(n, j) }).collect();
        Ok(BasisVector { j, b })
    }

    /// Partial basis expansion `sum_{j <= J} mu_j b^(j)` with
    /// `mu = forward_transform(x)` and the paranorm of what is left over.
    pub fn reconstruct(&self, element: &SpaceElement<S>, j_max: usize) -> Result<Reconstruction<S>> {
        if j_max > self.n() {
            return Err(Error::IndexOutOfRange { index: j_max, n: self.n() });
        }
        let mu = element.image(self)?;
        let mut coeffs = mu.to_vec();
        for c in coeffs.iter_mut().skip(j_max + 1) {
            *c = S::zero();
        }
        let partial = self.inverse_transform(&coeffs)?;
        let residual: Vec<S> = element.x.iter().zip(&partial).map(|(a, b)| a.clone() - b.clone()).collect();
        let remainder = self.paranorm(&residual)?.value;
        Ok(Reconstruction { partial, remainder })
    }

    pub fn element(&self, x: Vec<S>) -> Result<SpaceElement<S>> {
        self.check_len(&x)?;
        Ok(SpaceElement { x, y: OnceLock::new() })
    }
}

/// A coefficient vector with a write-once cache of its transform.
#[derive(Debug)]
pub struct SpaceElement<S> {
    pub x: Vec<S>,
    y: OnceLock<Vec<S>>,
}

impl<S: Scalar> SpaceElement<S> {
    pub fn image(&self, space: &Space<S>) -> Result<&[S]> {
        if let Some(y) = self.y.get() {
            return Ok(y);
        }
        let y = space.forward_transform(&self.x)?;
        Ok(self.y.get_or_init(|| y))
    }
}

/// `l_p` norm of a vector, `p >= 1`.
pub fn lp_norm<S: Scalar>(y: &[S], p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::BadExponent(format!("BK norm needs 1 <= p < inf, got {p}")));
    }
    let sum: f64 = y.iter().map(|v| abs_pow(v.to_f64(), p)).sum();
    Ok(if p == 1.0 { sum } else { sum.powf(1.0 / p) })
}

pub fn forward_transform<S: Scalar>(x: &[S], params: &SpaceParams) -> Result<Vec<S>> {
    let n = x.len().checked_sub(1).ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
    Space::new(params, n)?.forward_transform(x)
}

pub fn inverse_transform<S: Scalar>(y: &[S], params: &SpaceParams) -> Result<Vec<S>> {
    let n = y.len().checked_sub(1).ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
    Space::new(params, n)?.inverse_transform(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational_from_ratio, Rational};
    use crate::sequence::{ExponentSequence, Preset, SequenceFamily};
    use crate::triangles::build_inverse_composite;

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| q(a, 1)).collect()
    }

    fn unit(m: usize, p: f64) -> SpaceParams {
        SpaceParams::unit(m, ExponentSequence::constant(p).unwrap()).unwrap()
    }

    #[test]
    fn identity_composite_transforms() {
        let space = Space::<Rational>::new(&unit(1, 2.0), 2).unwrap();
        assert_eq!(space.forward_transform(&ints(&[1, 2, 3])).unwrap(), ints(&[1, 2, 3]));
        assert_eq!(space.inverse_transform(&ints(&[5, -1, 0])).unwrap(), ints(&[5, -1, 0]));
        assert!(matches!(space.forward_transform(&ints(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn cesaro_mean_of_constants() {
        // Pure A(r,s,t) via m = 1: A Delta x = e with x = Delta^{-1} e = (1, 2, 3, ...).
        let params = SpaceParams::new(
            SequenceFamily::Arithmetic { start: q(1, 1), step: q(1, 1) },
            SequenceFamily::ones(),
            SequenceFamily::ones(),
            1,
            ExponentSequence::constant(1.0).unwrap(),
        )
        .unwrap();
        let space = Space::<Rational>::new(&params, 5).unwrap();
        let x: Vec<Rational> = (1..=6).map(|v| q(v, 1)).collect();
        assert_eq!(space.forward_transform(&x).unwrap(), vec![q(1, 1); 6]);
    }

    #[test]
    fn paranorm_examples() {
        let space = Space::<Rational>::new(&unit(1, 1.0), 40).unwrap();
        assert_eq!(space.paranorm(&vec![q(0, 1); 41]).unwrap().value, 0.0);
        let x: Vec<Rational> = (0..=40).map(|k| Rational::new(1.into(), num_traits::pow(2.into(), k))).collect();
        let h = space.paranorm(&x).unwrap();
        let want = Rational::from_integer(2.into()) - Rational::new(1.into(), num_traits::pow(2.into(), 40));
        assert_eq!(h.exact_power_sum.unwrap(), want);
        assert_eq!(h.value, 2.0 - 2f64.powi(-40));
        assert_eq!(h.last_term, 2f64.powi(-40));

        let space2 = Space::<f64>::new(&unit(1, 2.0), 3).unwrap();
        let x = [3.0, 4.0, 0.0, 12.0];
        let h = space2.paranorm(&x).unwrap();
        assert_eq!(h.big_m, 2.0);
        assert!((h.value - 13.0).abs() < 1e-12);
        assert_eq!(space2.bk_norm(&x, 2.0).unwrap(), lp_norm(&x, 2.0).unwrap());
    }

    #[test]
    fn bk_norm_examples() {
        let space = Space::<f64>::new(&unit(1, 2.0), 1).unwrap();
        assert_eq!(space.bk_norm(&[0.0, 0.0], 2.0).unwrap(), 0.0);
        assert_eq!(space.bk_norm(&[3.0, 4.0], 2.0).unwrap(), 5.0);
        assert!(matches!(space.bk_norm(&[3.0, 4.0], 0.5), Err(Error::BadExponent(_))));
    }

    #[test]
    fn basis_vectors() {
        let space = Space::<Rational>::new(&unit(1, 2.0), 5).unwrap();
        let b = space.basis_vector(2).unwrap();
        assert_eq!(b.b, ints(&[0, 0, 1, 0, 0, 0]));
        assert!(matches!(space.basis_vector(6), Err(Error::IndexOutOfRange { .. })));

        let params = SpaceParams::new(
            SequenceFamily::explicit_ints(&[2, 3, 1, 5, 2, 4, 7]),
            SequenceFamily::explicit_ints(&[1, -2, 3, 1, 0, 2, 1]),
            SequenceFamily::explicit_ints(&[3, 1, 2, 2, 5, 1, 1]),
            2,
            ExponentSequence::constant(2.0).unwrap(),
        )
        .unwrap();
        let space = Space::<Rational>::new(&params, 6).unwrap();
        let inv = build_inverse_composite::<Rational>(&params, 6).unwrap();
        for j in 0..=6 {
            let b = space.basis_vector(j).unwrap();
            assert_eq!(b.b, inv.column(j));
            let mut e = vec![q(0, 1); 7];
            e[j] = q(1, 1);
            assert_eq!(space.inverse_transform(&e).unwrap(), b.b);
        }
    }

    #[test]
    fn weighted_mean_basis_reduces_to_two_term_sum() {
        // s = e: b^(j)_n = sum_{k=j}^{j+1} (-1)^(k-j) C(m+n-k-1, n-k) / (u_j v_k).
        let u = SequenceFamily::explicit_ints(&[2, 3, 5, 7, 11, 13, 17, 19]);
        let v = SequenceFamily::explicit_ints(&[1, 4, 9, 16, 25, 36, 49, 64]);
        let m = 3;
        let params = SpaceParams::from_preset(
            &Preset::WeightedMean { u: u.clone(), v: v.clone() },
            m,
            ExponentSequence::constant(2.0).unwrap(),
        )
        .unwrap();
        let space = Space::<Rational>::new(&params, 7).unwrap();
        for j in 0..=7 {
            let b = space.basis_vector(j).unwrap();
            for n in j..=7 {
                let mut want = q(0, 1);
                for k in j..=(j + 1).min(n) {
                    let c: Rational = crate::scalar::binomial(m + n - k - 1, n - k);
                    let term = c / (u.term(j).unwrap() * v.term(k).unwrap());
                    want += if k == j { term } else { -term };
                }
                assert_eq!(b.b[n], want, "j={j} n={n}");
            }
        }
    }

    #[test]
    fn reconstruction_of_geometric_sequence() {
        let space = Space::<Rational>::new(&unit(1, 1.0), 20).unwrap();
        let x: Vec<Rational> = (0..=20).map(|k| Rational::new(1.into(), num_traits::pow(2.into(), k))).collect();
        let el = space.element(x).unwrap();
        let full = space.reconstruct(&el, 20).unwrap();
        assert_eq!(full.remainder, 0.0);
        assert_eq!(full.partial, el.x);
        let r10 = space.reconstruct(&el, 10).unwrap();
        // sum_{n=11}^{20} 2^-n = 2^-10 - 2^-20
        assert_eq!(r10.remainder, 2f64.powi(-10) - 2f64.powi(-20));
        assert!(space.reconstruct(&el, 21).is_err());
    }

    #[test]
    fn element_cache_is_reused() {
        let space = Space::<f64>::new(&unit(2, 2.0), 3).unwrap();
        let el = space.element(vec![1.0, 2.0, 4.0, 8.0]).unwrap();
        let a = el.image(&space).unwrap().as_ptr();
        let b = el.image(&space).unwrap().as_ptr();
        assert_eq!(a, b);
    }
}
