//! Seeded identity suites over random exact data, as driven by the CLI.
//!
//! Trial `i` of a run with seed `s` draws its data from `rng(s + i)`, so a
//! failing trial can be replayed on its own.

use serde::Serialize;

use crate::cumulants::{
    all_words, cfree_cumulants_multi, ct_coefficients_multi, ct_weight, cumulants_from_moments, product_cfree_cumulants,
    product_free_cumulants, t_weight, MatrixSequence, MultiIndexedValues, ScalarSequence,
};
use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar};
use crate::model::{nonvanishing_mixed, JointModel};
use crate::partitions::{class_members, NcPartition};
use crate::random::{cfree_spec, nonzero_scalar, rng, small_matrix, small_scalar, TestRng};
use crate::transforms::{cfree_multiply, check_functional_equations, tree_route, DistributionSeriesBundle};

/// Longest word on which the multilinear suites run; the number of words
/// and of linked partitions per word grow exponentially past it.
pub const MULTILINEAR_MAX_LEN: usize = 6;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma22,
    Prop23,
    Prop24,
    Prop25,
    Theorem31,
    Trees,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Lemma22, Suite::Prop23, Suite::Prop24, Suite::Prop25, Suite::Theorem31, Suite::Trees];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma22 => "lemma22",
            Suite::Prop23 => "prop23",
            Suite::Prop24 => "prop24",
            Suite::Prop25 => "prop25",
            Suite::Theorem31 => "theorem31",
            Suite::Trees => "trees",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Order of the random data.
    pub order: usize,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest tree size for [`Suite::Trees`].
    pub n: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { order: 8, dim: 2, trials: 10, seed: 0, n: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub seed: u64,
    pub check: String,
    /// Degree, word or tree size at which the identity failed.
    pub at: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub order: usize,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// Highest degree, word length or tree size actually compared.
    pub checked_up_to: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Trial {
    index: usize,
    seed: u64,
    failures: Vec<Failure>,
}

impl Trial {
    fn fail(&mut self, check: &str, at: impl ToString) {
        self.failures.push(Failure { trial: self.index, seed: self.seed, check: check.into(), at: at.to_string() });
    }

    fn fail_degrees(&mut self, check: &str, degrees: &[usize]) {
        for d in degrees {
            self.fail(check, d);
        }
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let checked_up_to = match suite {
        Suite::Lemma22 => config.order / 2,
        Suite::Prop23 | Suite::Prop25 => config.order.min(MULTILINEAR_MAX_LEN),
        Suite::Prop24 => config.order.saturating_sub(1),
        Suite::Theorem31 => (config.order / 2).saturating_sub(1),
        Suite::Trees => config.n,
    };
    let minimum = match suite {
        Suite::Trees => 2 * config.n.max(1),
        Suite::Theorem31 => 2,
        _ => 1,
    };
    if config.order < minimum {
        return Err(Error::OrderMismatch { left: config.order, right: minimum });
    }
    let mut failures = Vec::new();
    for index in 0..config.trials {
        let seed = config.seed.wrapping_add(index as u64);
        let mut trial = Trial { index, seed, failures: Vec::new() };
        let mut r = rng(seed);
        match suite {
            Suite::Lemma22 => lemma22(&mut trial, &mut r, config)?,
            Suite::Prop23 => prop23(&mut trial, &mut r, config, checked_up_to)?,
            Suite::Prop24 => prop24(&mut trial, &mut r, config)?,
            Suite::Prop25 => prop25(&mut trial, &mut r, config, checked_up_to)?,
            Suite::Theorem31 => theorem31(&mut trial, &mut r, config)?,
            Suite::Trees => trees(&mut trial, &mut r, config)?,
        }
        failures.append(&mut trial.failures);
    }
    Ok(SuiteReport {
        suite,
        order: config.order,
        dim: config.dim,
        trials: config.trials,
        seed: config.seed,
        checked_up_to,
        failures,
    })
}

fn random_pair(r: &mut TestRng, order: usize, dim: usize) -> Result<JointModel> {
    JointModel::new([cfree_spec(r, 'X', order, dim), cfree_spec(r, 'Y', order, dim)])
}

/// Cumulants of `XY` read off the joint model against the Kreweras formulas.
fn lemma22(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig) -> Result<()> {
    let m = random_pair(r, c.order, c.dim)?;
    let (phi, big_phi) = m.product_moments('X', 'Y')?;
    let (k, ck) = cumulants_from_moments(&phi, &big_phi)?;
    let half = phi.order();
    let (x, y) = (m.spec('X')?, m.spec('Y')?);
    let (kx, ky) = (x.kappa.truncate(half)?, y.kappa.truncate(half)?);
    let (ckx, cky) = (x.ckappa.truncate(half)?, y.ckappa.truncate(half)?);
    let expected_k = product_free_cumulants(&kx, &ky)?;
    let expected_ck = product_cfree_cumulants(&kx, &ckx, &ky, &cky)?;
    for n in 0..half {
        if k.values()[n] != expected_k.values()[n] {
            trial.fail("free cumulants of XY", n + 1);
        }
        if ck.values()[n] != expected_ck.values()[n] {
            trial.fail("c-free cumulants of XY", n + 1);
        }
    }
    Ok(())
}

/// Generic two-letter word data: cumulants summed from t-coefficients over
/// the class of `1_n` against cumulants computed from moments.
fn prop23(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig, max_len: usize) -> Result<()> {
    let words = all_words(&['X', 'Y'], max_len);
    let phi: MultiIndexedValues<CScalar> =
        words.iter().map(|w| (w.clone(), if w.len() == 1 { nonzero_scalar(r) } else { small_scalar(r) })).collect();
    let big_phi: MultiIndexedValues<CMatrix> = words.iter().map(|w| (w.clone(), small_matrix(r, c.dim))).collect();
    let (k, ck) = cfree_cumulants_multi(&phi, &big_phi)?;
    let (t, ct) = ct_coefficients_multi(&phi, &big_phi)?;
    let mut classes = Vec::new();
    for n in 1..=max_len {
        classes.push(class_members(&NcPartition::one(n))?);
    }
    for w in &words {
        let class = &classes[w.len() - 1];
        let mut s = CScalar::zero();
        let mut m = CMatrix::zero(c.dim);
        for pi in class {
            s += &t_weight(pi, w, &t)?;
            m = m.add(&ct_weight(pi, w, &t, &ct)?);
        }
        if &s != k.get(w)? {
            trial.fail("free cumulant as a sum of t-coefficients", w);
        }
        if &m != ck.get(w)? {
            trial.fail("c-free cumulant as a sum of ct-coefficients", w);
        }
    }
    Ok(())
}

/// Functional equations of the T- and ^cT-transforms on random moments.
fn prop24(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig) -> Result<()> {
    let phi = ScalarSequence((0..c.order).map(|i| if i == 0 { nonzero_scalar(r) } else { small_scalar(r) }).collect());
    let big_phi = MatrixSequence((0..c.order).map(|_| small_matrix(r, c.dim)).collect());
    let report = check_functional_equations(&DistributionSeriesBundle::from_moments(&phi, &big_phi)?)?;
    trial.fail_degrees("T-transform equation", &report.t_failures);
    trial.fail_degrees("cT-transform equation", &report.ct_failures);
    Ok(())
}

/// Mixed t- and ct-coefficients of a c-free pair from the joint model.
fn prop25(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig, max_len: usize) -> Result<()> {
    let m = random_pair(r, c.order, c.dim)?;
    let (phi, big_phi) = m.word_moments(max_len)?;
    let (t, ct) = ct_coefficients_multi(&phi, &big_phi)?;
    for w in nonvanishing_mixed(&t, CScalar::is_zero) {
        trial.fail("mixed t-coefficient", w);
    }
    for w in nonvanishing_mixed(&ct, CMatrix::is_zero) {
        trial.fail("mixed ct-coefficient", w);
    }
    Ok(())
}

fn theorem31(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig) -> Result<()> {
    let x = cfree_spec(r, 'X', c.order, c.dim);
    let y = cfree_spec(r, 'Y', c.order, c.dim);
    let report = cfree_multiply(&x, &y)?;
    trial.fail_degrees("T_XY = T_X T_Y", &report.t_failures);
    trial.fail_degrees("cT_XY = cT_X cT_Y", &report.ct_failures);
    Ok(())
}

fn trees(trial: &mut Trial, r: &mut TestRng, c: &SuiteConfig) -> Result<()> {
    let x = cfree_spec(r, 'X', c.order, c.dim);
    let y = cfree_spec(r, 'Y', c.order, c.dim);
    for check in tree_route(&x, &y, c.n)? {
        if !check.passed {
            trial.fail(check.name, check.n);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(order: usize) -> SuiteConfig {
        SuiteConfig { order, dim: 2, trials: 2, seed: 11, n: 3 }
    }

    #[test]
    fn all_suites_pass_on_small_runs() {
        for suite in Suite::ALL {
            let report = run(suite, &small(6)).unwrap();
            assert!(report.passed(), "{suite:?}: {:?}", report.failures);
            assert_eq!(report.trials, 2);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run(Suite::Theorem31, &small(6)).unwrap()).unwrap();
        let b = serde_json::to_string(&run(Suite::Theorem31, &small(6)).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"suite":"theorem31","order":6"#));
    }

    #[test]
    fn suite_names_parse() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("prop26".parse::<Suite>().is_err());
    }

    #[test]
    fn too_small_orders_are_rejected() {
        assert!(matches!(run(Suite::Trees, &small(4)), Err(Error::OrderMismatch { .. })));
        assert!(matches!(run(Suite::Theorem31, &small(1)), Err(Error::OrderMismatch { .. })));
    }
}
