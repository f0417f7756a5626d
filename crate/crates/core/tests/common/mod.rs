#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqspace::scalar::rational_from_ratio;
use seqspace::{ExponentSequence, Rational, SequenceFamily, SpaceParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    rational_from_ratio(n, d)
}

/// Uniform on the grid `{lo/den, .., hi/den}`.
pub fn grid(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    q(rng.gen_range(lo..=hi), den)
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| q(rng.gen_range(-30..=30), rng.gen_range(1..=6))).collect()
}

/// Random `s` with a dominant `s_0`, so that `D_n` decays geometrically.
pub fn random_s(rng: &mut ChaCha8Rng) -> SequenceFamily {
    SequenceFamily::finite(vec![grid(rng, 8, 16, 4), grid(rng, -2, 2, 4), grid(rng, -2, 2, 4)])
}

/// Random positive prefix of length `len` continued by ones.
pub fn random_positive(rng: &mut ChaCha8Rng, len: usize) -> SequenceFamily {
    SequenceFamily::Explicit {
        prefix: (0..len).map(|_| grid(rng, 2, 16, 4)).collect(),
        tail: Some(Box::new(SequenceFamily::ones())),
    }
}

pub fn random_params(rng: &mut ChaCha8Rng, len: usize, m_max: usize, p: ExponentSequence) -> SpaceParams {
    let r = random_positive(rng, len);
    let s = random_s(rng);
    let t = random_positive(rng, len);
    let m = rng.gen_range(1..=m_max);
    SpaceParams::new(r, s, t, m, p).unwrap()
}

pub fn identity_params(p: f64) -> SpaceParams {
    SpaceParams::unit(1, ExponentSequence::constant(p).unwrap()).unwrap()
}
