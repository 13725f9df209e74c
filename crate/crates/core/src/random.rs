//! Seeded generation of small exact test data.
//!
//! Numerators are drawn from `-7..=7` and denominators from `1..=7`, which
//! keeps the big-rational arithmetic fast while still being generic enough
//! for identity checking.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cumulants::{MatrixSequence, ScalarSequence};
use crate::exactalg::{CMatrix, CScalar};
use crate::model::CFreeSpec;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const MAX_ABS: i64 = 7;

pub fn small_rational<R: Rng>(rng: &mut R) -> CScalar {
    CScalar::ratio(rng.gen_range(-MAX_ABS..=MAX_ABS), rng.gen_range(1..=MAX_ABS))
}

/// A small complex rational; the imaginary part is zero about half the time.
pub fn small_scalar<R: Rng>(rng: &mut R) -> CScalar {
    let re = small_rational(rng);
    if rng.gen_bool(0.5) {
        re
    } else {
        CScalar::new(re.re, small_rational(rng).re)
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> CScalar {
    loop {
        let c = small_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn small_matrix<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    let rows = (0..dim).map(|_| (0..dim).map(|_| small_scalar(rng)).collect()).collect();
    CMatrix::from_rows(rows).expect("square")
}

/// Like [`small_matrix`], but rejects singular draws.
pub fn invertible_matrix<R: Rng>(rng: &mut R, dim: usize) -> CMatrix {
    loop {
        let m = small_matrix(rng, dim);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// A small complex rational of modulus at most one.
pub fn unit_disk_scalar<R: Rng>(rng: &mut R) -> CScalar {
    loop {
        let c = small_scalar(rng);
        if c.norm_sqr() <= num_rational::BigRational::from_integer(1.into()) {
            return c;
        }
    }
}

/// Random cumulant data with `κ_1 ≠ 0`, so that the variable has invertible mean.
pub fn cfree_spec<R: Rng>(rng: &mut R, label: char, order: usize, dim: usize) -> CFreeSpec {
    let kappa = (0..order).map(|i| if i == 0 { nonzero_scalar(rng) } else { small_scalar(rng) }).collect();
    let ckappa = (0..order).map(|_| small_matrix(rng, dim)).collect();
    CFreeSpec::new(label, ScalarSequence(kappa), MatrixSequence(ckappa)).expect("consistent order")
}
