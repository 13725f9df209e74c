//! Unitaries: the pair of moment sequences `A_n = Φ(u^n)`, `a_n = φ(u^n)`,
//! their B- and b-transforms, positivity of the trigonometric moments,
//! the Haar property, n-th roots in the commutative case, the
//! Lévy–Hinčin representation and the square-root counterexample.
//!
//! Everything exact stays in [`CScalar`]/[`CMatrix`]; analytic questions
//! (eigenvalues, norms, roots) are answered in `f64`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cumulants::{ct_from_moments, MatrixSequence, ScalarSequence};
use crate::error::{Error, Result};
use crate::exactalg::{operator_norm_f64, CMatrix, CScalar, MatrixSeries, ScalarSeries, Series};
use crate::model::{CFreeSpec, JointModel};
use crate::random::{small_matrix, small_scalar};

/// Default cut-off below which an eigenvalue counts as negative.
pub const PSD_TOLERANCE: f64 = -1e-10;
/// Default tolerance for norm comparisons.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Truncated distribution of a unitary: `A_n = Φ(u^n)` and `a_n = φ(u^n)`
/// for `n = 1..=N`, with `A_0 = I`, `A_{-n} = A_n^*` implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UnitaryJson", into = "UnitaryJson")]
pub struct UnitaryDistribution {
    big_a: Vec<CMatrix>,
    a: Vec<CScalar>,
}

#[derive(Serialize, Deserialize)]
struct UnitaryJson {
    #[serde(rename = "A")]
    big_a: Vec<CMatrix>,
    a: Vec<CScalar>,
}

impl TryFrom<UnitaryJson> for UnitaryDistribution {
    type Error = Error;
    fn try_from(j: UnitaryJson) -> Result<Self> {
        UnitaryDistribution::new(j.big_a, j.a)
    }
}

impl From<UnitaryDistribution> for UnitaryJson {
    fn from(d: UnitaryDistribution) -> Self {
        UnitaryJson { big_a: d.big_a, a: d.a }
    }
}

impl UnitaryDistribution {
    /// Requires equal lengths, a common dimension and `|a_n| ≤ 1`.
    pub fn new(big_a: Vec<CMatrix>, a: Vec<CScalar>) -> Result<Self> {
        if big_a.len() != a.len() {
            return Err(Error::OrderMismatch { left: big_a.len(), right: a.len() });
        }
        let dim = big_a.first().ok_or_else(|| Error::MissingValue("moments of u".into()))?.dim();
        if let Some(m) = big_a.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: m.dim() });
        }
        let one = num_rational::BigRational::from_integer(1.into());
        if let Some((n, _)) = a.iter().enumerate().find(|(_, c)| c.norm_sqr() > one) {
            return Err(Error::Domain(format!("|a_{}| exceeds 1", n + 1)));
        }
        Ok(UnitaryDistribution { big_a, a })
    }

    /// Haar measure: all nonzero moments vanish.
    pub fn haar(order: usize, dim: usize) -> Self {
        UnitaryDistribution { big_a: vec![CMatrix::zero(dim); order], a: vec![CScalar::zero(); order] }
    }

    /// Point mass at `1`: all moments are one.
    pub fn point_mass(order: usize, dim: usize) -> Self {
        UnitaryDistribution { big_a: vec![CMatrix::identity(dim); order], a: vec![CScalar::one(); order] }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn dim(&self) -> usize {
        self.big_a[0].dim()
    }

    pub fn operator_moments(&self) -> &[CMatrix] {
        &self.big_a
    }

    pub fn scalar_moments(&self) -> &[CScalar] {
        &self.a
    }

    /// `A_n` for any integer `n` with `|n| ≤ N`.
    pub fn moment(&self, n: i64) -> CMatrix {
        match n {
            0 => CMatrix::identity(self.dim()),
            n if n > 0 => self.big_a[n as usize - 1].clone(),
            n => self.big_a[(-n) as usize - 1].adjoint(),
        }
    }

    fn moment_series(&self) -> Result<(ScalarSeries, MatrixSeries)> {
        let m = Series::new(std::iter::once(CScalar::zero()).chain(self.a.iter().cloned()).collect())?;
        let big_m = Series::new(std::iter::once(CMatrix::zero(self.dim())).chain(self.big_a.iter().cloned()).collect())?;
        Ok((m, big_m))
    }
}

/// `B(z) = (1/z) M(z) (I + M(z))^{-1}` and `b(z) = m(z) / (z + z m(z))`, both
/// of order `N - 1`.
pub fn b_transforms(d: &UnitaryDistribution) -> Result<(MatrixSeries, ScalarSeries)> {
    let (m, big_m) = d.moment_series()?;
    let n = d.order();
    let big_b = big_m.mul(&MatrixSeries::one(n, &CMatrix::zero(d.dim())).add(&big_m)?.inverse()?)?.div_by_z()?;
    let b = m.mul(&ScalarSeries::one(n, &CScalar::zero()).add(&m)?.inverse()?)?.div_by_z()?;
    Ok((big_b, b))
}

/// Degrees `< N` at which `^cT_u(m_u(z)) ≠ B_u(z)`; needs `φ(u) ≠ 0`.
pub fn ct_matches_b(d: &UnitaryDistribution) -> Result<Vec<usize>> {
    let phi = ScalarSequence(d.a.clone());
    let big_phi = MatrixSequence(d.big_a.clone());
    let ct = Series::new(ct_from_moments(&big_phi, &phi)?.0)?;
    let (m, _) = d.moment_series()?;
    let (big_b, _) = b_transforms(d)?;
    ct.compose(&m.truncate(d.order() - 1)?)?.differing_degrees(&big_b)
}

/// Positivity of the block Toeplitz matrix `[A_{i-j}]_{i,j=0..J}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsdReport {
    pub depth: usize,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    pub psd: bool,
}

/// The block Toeplitz matrix of depth `J` in floating point.
pub fn block_toeplitz(d: &UnitaryDistribution, depth: usize) -> Result<DMatrix<Complex64>> {
    if depth > d.order() {
        return Err(Error::OrderMismatch { left: d.order(), right: depth });
    }
    let k = d.dim();
    let size = (depth + 1) * k;
    let mut out = DMatrix::zeros(size, size);
    for i in 0..=depth {
        for j in 0..=depth {
            let block = d.moment(i as i64 - j as i64).to_dmatrix();
            out.view_mut((i * k, j * k), (k, k)).copy_from(&block);
        }
    }
    Ok(out)
}

pub fn toeplitz_psd(d: &UnitaryDistribution, depth: usize, tolerance: f64) -> Result<PsdReport> {
    let t = block_toeplitz(d, depth)?;
    let min_eigenvalue = SymmetricEigen::new(t).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PsdReport { depth, min_eigenvalue, tolerance, psd: min_eigenvalue >= tolerance })
}

/// Two specs with `κ_1 = 0` and `^cκ_1 = 0` (so `φ(u_i) = 0 = Φ(u_i)`) and
/// random higher cumulants. With `perturb`, `^cκ_1` is a nonzero matrix.
pub fn haar_specs<R: Rng>(rng: &mut R, dim: usize, order: usize, perturb: bool) -> (CFreeSpec, CFreeSpec) {
    let mut make = |label| {
        let kappa = (0..order).map(|i| if i == 0 { CScalar::zero() } else { small_scalar(rng) }).collect();
        let ckappa = (0..order)
            .map(|i| {
                if i > 0 {
                    small_matrix(rng, dim)
                } else if perturb {
                    CMatrix::identity(dim)
                } else {
                    CMatrix::zero(dim)
                }
            })
            .collect();
        CFreeSpec::new(label, ScalarSequence(kappa), MatrixSequence(ckappa)).expect("consistent order")
    };
    (make('X'), make('Y'))
}

/// Whether `Φ((u_1 u_2)^n) = 0`, for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HaarReport {
    pub dim: usize,
    pub n_max: usize,
    /// Values of `n` with `Φ((u_1 u_2)^n) ≠ 0`.
    pub nonzero: Vec<usize>,
}

impl HaarReport {
    pub fn passed(&self) -> bool {
        self.nonzero.is_empty()
    }
}

pub fn haar_property(u1: &CFreeSpec, u2: &CFreeSpec, n_max: usize) -> Result<HaarReport> {
    let model = JointModel::new([u1.clone(), u2.clone()])?;
    if model.order() < 2 * n_max {
        return Err(Error::OrderMismatch { left: model.order(), right: 2 * n_max });
    }
    let mut nonzero = Vec::new();
    for n in 1..=n_max {
        let word: String = std::iter::repeat_n([u1.label, u2.label], n).flatten().collect();
        if !model.big_phi_word(&word)?.is_zero() {
            nonzero.push(n);
        }
    }
    Ok(HaarReport { dim: model.dim(), n_max, nonzero })
}

/// A power series with complex float matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatSeries(pub Vec<DMatrix<Complex64>>);

impl FloatSeries {
    pub fn from_exact(s: &MatrixSeries) -> Self {
        FloatSeries(s.coeffs().iter().map(CMatrix::to_dmatrix).collect())
    }

    pub fn eval(&self, z: Complex64) -> DMatrix<Complex64> {
        let mut acc = self.0.last().expect("nonempty series").clone();
        for c in self.0.iter().rev().skip(1) {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficients of `self^n`, truncated to the same order.
    pub fn pow(&self, n: u32) -> FloatSeries {
        let k = self.0[0].nrows();
        let mut acc = FloatSeries(
            (0..self.0.len()).map(|i| if i == 0 { DMatrix::identity(k, k) } else { DMatrix::zeros(k, k) }).collect(),
        );
        for _ in 0..n {
            let mut next = vec![DMatrix::zeros(k, k); self.0.len()];
            for (i, a) in acc.0.iter().enumerate() {
                for (j, b) in self.0.iter().enumerate().take(self.0.len() - i) {
                    next[i + j] += a * b;
                }
            }
            acc = FloatSeries(next);
        }
        acc
    }

    pub fn max_distance(&self, other: &FloatSeries) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Outcome of [`nth_root_scalarwise`].
#[derive(Clone, Debug)]
pub struct RootReport {
    pub n: u32,
    pub root: Option<FloatSeries>,
    /// Largest `‖B_n(z)‖` over the sampling grid.
    pub max_norm: f64,
    pub contractive: bool,
    /// Why no root was produced.
    pub failure: Option<String>,
}

/// Sampling grid: radii `0, 0.3, 0.6, 0.9` and 24 angles.
fn disk_grid() -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for r in [0.3, 0.6, 0.9] {
        for k in 0..24 {
            out.push(Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 24.0));
        }
    }
    out
}

/// Principal `n`-th root of a scalar series with `f(0) ≠ 0`, from
/// `g = f^{1/n}`: `g_k = 1/(k f_0) Σ_{j=1}^{k} ((1/n + 1) j - k) f_j g_{k-j}`.
fn scalar_root(f: &[Complex64], n: u32) -> Vec<Complex64> {
    let alpha = 1.0 / n as f64;
    let mut g = vec![f[0].powf(alpha)];
    for k in 1..f.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            acc += f[j] * g[k - j] * ((alpha + 1.0) * j as f64 - k as f64);
        }
        g.push(acc / (f[0] * k as f64));
    }
    g
}

/// A truncated `n`-th root of `B` when its coefficients are diagonal (in
/// particular when `k = 1`): each diagonal entry is rooted separately with
/// the principal branch, then `‖B_n(z)‖ < 1` is sampled on `|z| ≤ 0.9`. A
/// failure means this construction found no contractive root, not that none
/// exists. Non-diagonal coefficients are rejected.
pub fn nth_root_scalarwise(b: &MatrixSeries, n: u32) -> Result<RootReport> {
    if n == 0 {
        return Err(Error::Domain("root of order 0".into()));
    }
    let coeffs = b.coeffs();
    if !coeffs.iter().all(CMatrix::is_diagonal) {
        let commuting = coeffs.iter().all(|x| coeffs.iter().all(|y| x.commutes_with(y)));
        let what = if commuting { "commuting but not diagonal" } else { "non-commuting" };
        return Err(Error::Unsupported(format!("{what} coefficient family")));
    }
    let k = b.dim();
    let mut entries = Vec::with_capacity(k);
    for i in 0..k {
        let f: Vec<Complex64> = coeffs.iter().map(|c| c.get(i, i).to_complex64()).collect();
        if f[0].norm() == 0.0 {
            return Ok(RootReport {
                n,
                root: None,
                max_norm: f64::NAN,
                contractive: false,
                failure: Some(format!("B(0) is singular at entry {i}: no analytic root of this form")),
            });
        }
        entries.push(scalar_root(&f, n));
    }
    let root = FloatSeries(
        (0..coeffs.len())
            .map(|j| DMatrix::from_fn(k, k, |r, c| if r == c { entries[r][j] } else { Complex64::new(0.0, 0.0) }))
            .collect(),
    );
    let max_norm = disk_grid().into_iter().map(|z| operator_norm_f64(&root.eval(z))).fold(0.0, f64::max);
    let contractive = max_norm < 1.0;
    let failure = (!contractive).then(|| format!("sampled norm {max_norm} is not below 1"));
    Ok(RootReport { n, root: Some(root), max_norm, contractive, failure })
}

/// The constant map `B = [[λ², 2λ], [0, λ²]]` and the candidate square roots
/// `[[±λ, 1], [0, ±λ]]`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub lambda: [f64; 2],
    pub b_norm: f64,
    /// `‖B‖ < 1`.
    pub applicable: bool,
    /// `λ = 0`: the roots are nilpotent with norm exactly one.
    pub boundary: bool,
    /// Norms of `[[λ, 1], [0, λ]]` and `[[-λ, 1], [0, -λ]]`.
    pub root_norms: [f64; 2],
    /// Whether each candidate squares to `B`.
    pub squares_to_b: [bool; 2],
    /// Norm of `-[[λ, 1], [0, λ]]`, the second square root of `B`.
    pub negated_root_norm: f64,
    /// `√(1 + |λ|²)`.
    pub stated_norm: f64,
    /// `(1 + √(1 + 4|λ|²)) / 2`, the norm of `λI + N` for the nilpotent `N`.
    pub exact_norm: f64,
    /// `‖B‖ < 1` while every square root has norm above one.
    pub no_contractive_root: bool,
}

pub fn sqrt_counterexample(lambda: Complex64) -> CounterexampleReport {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let l2 = lambda * lambda;
    let b = DMatrix::from_row_slice(2, 2, &[l2, lambda * 2.0, zero, l2]);
    let plus = DMatrix::from_row_slice(2, 2, &[lambda, one, zero, lambda]);
    let minus = DMatrix::from_row_slice(2, 2, &[-lambda, one, zero, -lambda]);
    let squares = |r: &DMatrix<Complex64>| (r * r - &b).norm() <= NORM_TOLERANCE;
    let b_norm = operator_norm_f64(&b);
    let root_norms = [operator_norm_f64(&plus), operator_norm_f64(&minus)];
    let negated_root_norm = operator_norm_f64(&(-&plus));
    let modulus = lambda.norm_sqr();
    CounterexampleReport {
        lambda: [lambda.re, lambda.im],
        b_norm,
        applicable: b_norm < 1.0,
        boundary: lambda.norm() == 0.0,
        root_norms,
        squares_to_b: [squares(&plus), squares(&minus)],
        negated_root_norm,
        stated_norm: (1.0 + modulus).sqrt(),
        exact_norm: (1.0 + (1.0 + 4.0 * modulus).sqrt()) / 2.0,
        no_contractive_root: b_norm < 1.0 && root_norms[0] > 1.0 && negated_root_norm > 1.0,
    }
}

/// A finite positive measure on the circle: atoms `(θ, w)` at `e^{iθ}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct DiscreteCircleMeasure {
    atoms: Vec<(f64, f64)>,
}

impl TryFrom<Vec<(f64, f64)>> for DiscreteCircleMeasure {
    type Error = Error;
    fn try_from(atoms: Vec<(f64, f64)>) -> Result<Self> {
        DiscreteCircleMeasure::new(atoms)
    }
}

impl From<DiscreteCircleMeasure> for Vec<(f64, f64)> {
    fn from(m: DiscreteCircleMeasure) -> Self {
        m.atoms
    }
}

impl DiscreteCircleMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if let Some(&(theta, w)) = atoms.iter().find(|(_, w)| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain(format!("atom at {theta} has weight {w}")));
        }
        Ok(DiscreteCircleMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w).sum()
    }

    /// The sum of two measures.
    pub fn plus(&self, other: &Self) -> Self {
        DiscreteCircleMeasure { atoms: self.atoms.iter().chain(&other.atoms).copied().collect() }
    }
}

/// Output of [`levy_hincin_eval`] at one point `x` and one `z`.
#[derive(Clone, Debug, Serialize)]
pub struct LevyValue {
    pub value: [f64; 2],
    pub modulus: f64,
    /// `exp(-∫ (1-|z|²)/|z-ξ|² dσ(1/ξ))`, computed separately.
    pub poisson_modulus: f64,
    /// `exp(-σ(𝕋))`, the modulus at `z = 0`.
    pub modulus_at_zero: f64,
}

/// `γ exp(∫ (ξz + 1)/(ξz - 1) dσ(ξ))` for `|γ| = 1` and `|z| < 1`.
pub fn levy_hincin_eval(gamma: Complex64, sigma: &DiscreteCircleMeasure, z: Complex64) -> Result<LevyValue> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("|z| = {} is not below 1", z.norm())));
    }
    if (gamma.norm() - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Domain(format!("|gamma| = {} is not 1", gamma.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let exponent: Complex64 = sigma
        .atoms
        .iter()
        .map(|&(theta, w)| {
            let xi = Complex64::from_polar(1.0, theta);
            (xi * z + one) / (xi * z - one) * w
        })
        .sum();
    let value = gamma * exponent.exp();
    let poisson: f64 = sigma
        .atoms
        .iter()
        .map(|&(theta, w)| {
            let inverse = Complex64::from_polar(1.0, -theta);
            w * (1.0 - z.norm_sqr()) / (z - inverse).norm_sqr()
        })
        .sum();
    Ok(LevyValue {
        value: [value.re, value.im],
        modulus: value.norm(),
        poisson_modulus: (-poisson).exp(),
        modulus_at_zero: (-sigma.total_mass()).exp(),
    })
}
