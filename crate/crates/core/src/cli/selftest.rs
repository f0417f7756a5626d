//! Invariant battery run by `seqspace selftest`, in the exact kernel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duals::build_e;
use crate::error::Result;
use crate::scalar::{rational_from_ratio, Rational, Scalar};
use crate::sequence::SpaceParams;
use crate::spaces::{lp_norm, Space};
use crate::triangles::{compute_d_coefficients, determinant_oracle_d, ORACLE_MAX_N};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
}

fn check(name: &'static str, outcomes: impl IntoIterator<Item = bool>) -> Check {
    let (mut trials, mut failures) = (0, 0);
    for ok in outcomes {
        trials += 1;
        failures += usize::from(!ok);
    }
    Check { name, passed: failures == 0, trials, failures }
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rational_from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=8))).collect()
}

fn within(lhs: f64, rhs: f64, rel: f64) -> bool {
    lhs <= rhs + rel * rhs.abs().max(f64::MIN_POSITIVE)
}

/// Runs every check on the window `[0, N]`.
pub fn run_selftest(params: &SpaceParams, n: usize, trials: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = Space::<Rational>::new(params, n)?;
    let w = &space.window;
    let dim = space.dim();
    let mut out = Vec::new();

    out.push(check("inverse identity", [w.composite_matrix().mul(&w.inverse_composite_matrix()).is_identity()]));

    let d_len = n.min(ORACLE_MAX_N);
    let d = compute_d_coefficients::<Rational>(&params.s, d_len)?;
    let oracle = (0..=d_len).map(|k| determinant_oracle_d::<Rational>(&params.s, k)).collect::<Result<Vec<_>>>()?;
    out.push(check("D coefficients match determinants", d.values.iter().zip(&oracle).map(|(a, b)| a == b)));

    let inverse = w.inverse_composite_matrix();
    out.push(check(
        "basis vectors are inverse columns",
        (0..dim).map(|j| space.basis_vector(j).map(|b| b.b == inverse.column(j)).unwrap_or(false)),
    ));

    let p_const = params.p.as_constant().filter(|&p| p >= 1.0);
    let mut roundtrip = Vec::new();
    let mut isometry = Vec::new();
    for _ in 0..trials {
        let x = random_vector(&mut rng, dim);
        let y = space.forward_transform(&x)?;
        roundtrip.push(space.inverse_transform(&y)? == x);
        if let Some(p) = p_const {
            isometry.push(space.bk_norm(&x, p)? == lp_norm(&y, p)?);
        }
    }
    out.push(check("roundtrip", roundtrip));
    if p_const.is_some() {
        out.push(check("isometry", isometry));
    }

    let rel = 1e-12;
    let mut sym = Vec::new();
    let mut sub = Vec::new();
    let mut scal = Vec::new();
    for _ in 0..trials {
        let x = random_vector(&mut rng, dim);
        let y = random_vector(&mut rng, dim);
        let alpha = rational_from_ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4));
        let hx = space.paranorm(&x)?.value;
        let neg: Vec<Rational> = x.iter().map(|v| -v.clone()).collect();
        sym.push(space.paranorm(&neg)?.value == hx);
        let sum: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        sub.push(within(space.paranorm(&sum)?.value, hx + space.paranorm(&y)?.value, rel));
        let scaled: Vec<Rational> = x.iter().map(|v| v * &alpha).collect();
        scal.push(within(space.paranorm(&scaled)?.value, alpha.to_f64().abs().max(1.0) * hx, rel));
    }
    let zero = vec![Rational::from_i64(0); dim];
    out.push(check("paranorm vanishes at zero", [space.paranorm(&zero)?.value == 0.0]));
    out.push(check("paranorm symmetry", sym));
    out.push(check("paranorm subadditivity", sub));
    out.push(check("paranorm scalar bound", scal));

    let mut master = Vec::new();
    for _ in 0..trials {
        let a = random_vector(&mut rng, dim);
        let x = random_vector(&mut rng, dim);
        let e = build_e(&a, params, n)?;
        let ey = e.mul_vec(&space.forward_transform(&x)?)?;
        let mut partial = Rational::from_i64(0);
        let mut ok = true;
        for l in 0..dim {
            partial += &a[l] * &x[l];
            ok &= partial == ey[l];
        }
        master.push(ok);
    }
    out.push(check("partial sums through E", master));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::ingest::preset_from_name;
    use crate::sequence::ExponentSequence;

    #[test]
    fn presets_pass() {
        for name in crate::sequence::Preset::NAMES {
            let preset = preset_from_name(name, None).unwrap();
            let params = SpaceParams::from_preset(&preset, 2, ExponentSequence::constant(2.0).unwrap()).unwrap();
            let checks = run_selftest(&params, 8, 5, 1).unwrap();
            assert!(checks.iter().all(|c| c.passed), "{name}: {checks:#?}");
        }
    }
}
