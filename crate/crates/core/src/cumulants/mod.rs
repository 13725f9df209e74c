//! Conversions between moments, free and c-free cumulants, and t- and
//! ^ct-coefficients, for a single variable (sequences) and for words in
//! several variables (multilinear values).
//!
//! Sequence indexing: moment and cumulant sequences hold the values for
//! `n = 1..=N` at positions `0..N`; t-coefficient sequences hold
//! `t_0..t_{N-1}`. In both conventions a block of size `s` reads position
//! `s - 1`.

mod multilinear;
mod signatures;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar};
use crate::partitions::{enumerate_nc, DEFAULT_MAX_N};

pub use multilinear::{
    all_words, cfree_cumulants_multi, ct_coefficients_multi, ct_weight, free_cumulants_multi, k_weight,
    kappa_weight, t_coefficients_multi, t_weight, MultiIndexedValues,
};

/// Scalar values indexed as described in the module documentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScalarSequence(pub Vec<CScalar>);

/// Matrix values of a common dimension, indexed like [`ScalarSequence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixSequence(pub Vec<CMatrix>);

impl ScalarSequence {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[CScalar] {
        &self.0
    }

    /// The value used for a block of size `s`.
    fn block(&self, s: usize) -> &CScalar {
        &self.0[s - 1]
    }

    pub fn truncate(&self, order: usize) -> Result<ScalarSequence> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(ScalarSequence(self.0[..order].to_vec()))
    }

    /// Each value times the identity matrix.
    pub fn promote(&self, dim: usize) -> MatrixSequence {
        MatrixSequence(self.0.iter().map(|c| CMatrix::scalar(dim, c)).collect())
    }
}

impl MatrixSequence {
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.0
    }

    /// Common dimension; errors on an empty or ragged sequence.
    pub fn dim(&self) -> Result<usize> {
        let d = self.0.first().ok_or_else(|| Error::MissingValue("empty matrix sequence".into()))?.dim();
        if let Some(m) = self.0.iter().find(|m| m.dim() != d) {
            return Err(Error::DimensionMismatch { left: d, right: m.dim() });
        }
        Ok(d)
    }

    fn block(&self, s: usize) -> &CMatrix {
        &self.0[s - 1]
    }

    pub fn truncate(&self, order: usize) -> Result<MatrixSequence> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(MatrixSequence(self.0[..order].to_vec()))
    }
}

fn same_order(a: usize, b: usize) -> Result<usize> {
    if a != b {
        return Err(Error::OrderMismatch { left: a, right: b });
    }
    if a > DEFAULT_MAX_N {
        return Err(Error::SizeLimit { n: a, max: DEFAULT_MAX_N });
    }
    Ok(a)
}

fn count(c: u64) -> CScalar {
    CScalar::from_int(i64::try_from(c).expect("partition count fits in i64"))
}

fn scalar_product(sizes: &[usize], values: &ScalarSequence) -> CScalar {
    sizes.iter().map(|&s| values.block(s).clone()).product()
}

/// `Σ_π (Π_{interior} c_{|B|}) single^{|s(π)|} Π^{→}_{exterior} M_{|B|}` over
/// the given signature groups, leaving out the one-block partition of
/// `{1..n}` when `skip` is `Some(n)`.
fn matrix_sum(
    groups: &[signatures::ExteriorGroup],
    exterior: &MatrixSequence,
    interior: &ScalarSequence,
    single: &CScalar,
    dim: usize,
    skip: Option<usize>,
) -> CMatrix {
    let coefficients: Vec<(&[usize], CScalar)> = groups
        .iter()
        .filter(|g| skip.is_none_or(|n| g.exterior != [n]))
        .map(|g| {
            let c = g
                .terms
                .iter()
                .map(|s| count(s.count) * scalar_product(&s.interior, interior) * single.pow(s.singles as u32))
                .sum();
            (g.exterior.as_slice(), c)
        })
        .filter(|(_, c): &(_, CScalar)| !c.is_zero())
        .collect();
    horner(&coefficients, 0, exterior, dim)
}

/// `Σ c_e M_{e_d} ⋯ M_{e_k}` over lexicographically sorted sequences `e`
/// sharing their first `d` entries, one matrix product per distinct prefix.
fn horner(entries: &[(&[usize], CScalar)], depth: usize, values: &MatrixSequence, dim: usize) -> CMatrix {
    let mut acc = CMatrix::zero(dim);
    let mut rest = entries;
    if let Some(((seq, c), tail)) = rest.split_first() {
        if seq.len() == depth {
            acc = CMatrix::scalar(dim, c);
            rest = tail;
        }
    }
    while let Some((seq, _)) = rest.first() {
        let head = seq[depth];
        let split = rest.iter().position(|(s, _)| s[depth] != head).unwrap_or(rest.len());
        let (group, tail) = rest.split_at(split);
        acc = acc.add(&values.block(head).mul(&horner(group, depth + 1, values, dim)));
        rest = tail;
    }
    acc
}

/// `φ(X^n) = Σ_{γ ∈ NC(n)} κ_γ` and `Φ(X^n) = Σ_γ 𝒦_γ`, for `n = 1..=N`.
pub fn moments_from_cumulants(
    kappa: &ScalarSequence,
    ckappa: &MatrixSequence,
) -> Result<(ScalarSequence, MatrixSequence)> {
    let order = same_order(kappa.order(), ckappa.order())?;
    let dim = ckappa.dim()?;
    let mut phi = Vec::with_capacity(order);
    let mut big_phi = Vec::with_capacity(order);
    for n in 1..=order {
        let kappa_n = ScalarSequence(kappa.0[..n].to_vec());
        phi.push(signatures::nc_scalar(n)?.iter().map(|s| count(s.count) * scalar_product(&s.sizes, &kappa_n)).sum());
        big_phi.push(matrix_sum(signatures::nc_matrix(n)?, ckappa, kappa, &CScalar::one(), dim, None));
    }
    Ok((ScalarSequence(phi), MatrixSequence(big_phi)))
}

/// Inverts [`moments_from_cumulants`] degree by degree; the `1_n` term is the
/// only one involving `κ_n` and `^cκ_n`.
pub fn cumulants_from_moments(
    phi: &ScalarSequence,
    big_phi: &MatrixSequence,
) -> Result<(ScalarSequence, MatrixSequence)> {
    let order = same_order(phi.order(), big_phi.order())?;
    let dim = big_phi.dim()?;
    let mut kappa = ScalarSequence(Vec::with_capacity(order));
    let mut ckappa = MatrixSequence(Vec::with_capacity(order));
    for n in 1..=order {
        // The pivot entries are placeholders; the pivot signature is skipped.
        kappa.0.push(CScalar::zero());
        ckappa.0.push(CMatrix::zero(dim));
        let mut rest = CScalar::zero();
        for s in signatures::nc_scalar(n)?.iter().filter(|s| s.sizes != [n]) {
            rest += &(count(s.count) * scalar_product(&s.sizes, &kappa));
        }
        let rest_m = matrix_sum(signatures::nc_matrix(n)?, &ckappa, &kappa, &CScalar::one(), dim, Some(n));
        kappa.0[n - 1] = &phi.0[n - 1] - &rest;
        ckappa.0[n - 1] = big_phi.0[n - 1].sub(&rest_m);
    }
    Ok((kappa, ckappa))
}

/// `φ(X^n) = Σ_{π ∈ NCL(n)} t_π`, for `n = 1..=N` from `t_0..t_{N-1}`.
pub fn moments_from_t(t: &ScalarSequence) -> Result<ScalarSequence> {
    let order = same_order(t.order(), t.order())?;
    let mut phi = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = CScalar::zero();
        for s in signatures::ncl_scalar(n)? {
            acc += &(count(s.count) * scalar_product(&s.sizes, t) * t.0[0].pow(s.singles as u32));
        }
        phi.push(acc);
    }
    Ok(ScalarSequence(phi))
}

fn pivot_inverse(t0: &CScalar, n: usize) -> Result<CScalar> {
    if t0.is_zero() {
        return Err(Error::NotInvertible);
    }
    t0.pow((n - 1) as u32).inv()
}

/// `t_0..t_{N-1}` from `φ(X^1..X^N)`. The `1_n` term is `t_{n-1} t_0^{n-1}`.
pub fn t_from_moments(phi: &ScalarSequence) -> Result<ScalarSequence> {
    let order = same_order(phi.order(), phi.order())?;
    let mut t = ScalarSequence(Vec::with_capacity(order));
    for n in 1..=order {
        let t0 = if n == 1 { phi.0[0].clone() } else { t.0[0].clone() };
        let inv = pivot_inverse(&t0, n)?;
        t.0.push(CScalar::zero());
        let mut rest = CScalar::zero();
        for s in signatures::ncl_scalar(n)?.iter().filter(|s| s.sizes != [n]) {
            rest += &(count(s.count) * scalar_product(&s.sizes, &t) * t0.pow(s.singles as u32));
        }
        t.0[n - 1] = (&phi.0[n - 1] - &rest) * inv;
    }
    Ok(t)
}

/// `Φ(X^n)` from `^ct_0..^ct_{N-1}` and `t_0..t_{N-1}`.
pub fn moments_from_ct(ct: &MatrixSequence, t: &ScalarSequence) -> Result<MatrixSequence> {
    let order = same_order(ct.order(), t.order())?;
    let dim = ct.dim()?;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        out.push(matrix_sum(signatures::ncl_matrix(n)?, ct, t, &t.0[0], dim, None));
    }
    Ok(MatrixSequence(out))
}

/// `^ct_0..^ct_{N-1}` from `Φ(X^1..X^N)` and `φ(X^1..X^N)`.
pub fn ct_from_moments(big_phi: &MatrixSequence, phi: &ScalarSequence) -> Result<MatrixSequence> {
    let order = same_order(big_phi.order(), phi.order())?;
    let dim = big_phi.dim()?;
    let t = t_from_moments(phi)?;
    let t0 = &t.0[0];
    let mut ct = MatrixSequence(Vec::with_capacity(order));
    for n in 1..=order {
        let inv = pivot_inverse(t0, n)?;
        ct.0.push(CMatrix::zero(dim));
        let rest = matrix_sum(signatures::ncl_matrix(n)?, &ct, &t, t0, dim, Some(n));
        ct.0[n - 1] = big_phi.0[n - 1].sub(&rest).scale(&inv);
    }
    Ok(ct)
}

/// `κ_n(XY) = Σ_{γ ∈ NC(n)} Π_{B ∈ γ} κ_{|B|}(X) Π_{D ∈ Kr(γ)} κ_{|D|}(Y)`.
pub fn product_free_cumulants(kx: &ScalarSequence, ky: &ScalarSequence) -> Result<ScalarSequence> {
    let order = same_order(kx.order(), ky.order())?;
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = CScalar::zero();
        for g in enumerate_nc(n)? {
            let kr = g.kreweras();
            let x: CScalar = g.blocks().iter().map(|b| kx.block(b.len()).clone()).product();
            let y: CScalar = kr.blocks().iter().map(|d| ky.block(d.len()).clone()).product();
            acc += &(x * y);
        }
        out.push(acc);
    }
    Ok(ScalarSequence(out))
}

/// `^cκ_n(XY) = Σ_γ ^cκ_{|γ[1]|}(X) ^cκ_{|Kr(γ)[n]|}(Y)` times the free
/// cumulants of the remaining blocks of `γ` (in `X`) and `Kr(γ)` (in `Y`).
pub fn product_cfree_cumulants(
    kx: &ScalarSequence,
    ckx: &MatrixSequence,
    ky: &ScalarSequence,
    cky: &MatrixSequence,
) -> Result<MatrixSequence> {
    let order = same_order(kx.order(), ky.order())?;
    same_order(order, ckx.order())?;
    same_order(order, cky.order())?;
    let dim = ckx.dim()?;
    if cky.dim()? != dim {
        return Err(Error::DimensionMismatch { left: dim, right: cky.dim()? });
    }
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = CMatrix::zero(dim);
        for g in enumerate_nc(n)? {
            let kr = g.kreweras();
            let first = g.block_index_of(1)?;
            let last = kr.block_index_of(n)?;
            let mut scalar = CScalar::one();
            for (_, b) in g.blocks().iter().enumerate().filter(|&(i, _)| i != first) {
                scalar *= kx.block(b.len());
            }
            for (_, d) in kr.blocks().iter().enumerate().filter(|&(i, _)| i != last) {
                scalar *= ky.block(d.len());
            }
            let term = ckx.block(g.blocks()[first].len()).mul(cky.block(kr.blocks()[last].len())).scale(&scalar);
            acc = acc.add(&term);
        }
        out.push(acc);
    }
    Ok(MatrixSequence(out))
}

/// A variable's distribution in any of the three coordinate systems, as
/// exchanged in JSON. Exactly one pair of fields is expected to be set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub order: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<ScalarSequence>,
    #[serde(default, rename = "Phi", skip_serializing_if = "Option::is_none")]
    pub big_phi: Option<MatrixSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<ScalarSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ckappa: Option<MatrixSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<ScalarSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ct: Option<MatrixSequence>,
}

/// Which pair of sequences a [`Distribution`] carries.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Coordinates {
    Moments,
    Cumulants,
    TCoefficients,
}

impl Distribution {
    pub fn from_moments(phi: ScalarSequence, big_phi: MatrixSequence) -> Result<Self> {
        let (order, dim) = (phi.order(), big_phi.dim()?);
        Ok(Distribution { order, dim, phi: Some(phi), big_phi: Some(big_phi), ..Self::empty(order, dim) })
    }

    pub fn from_cumulants(kappa: ScalarSequence, ckappa: MatrixSequence) -> Result<Self> {
        let (order, dim) = (kappa.order(), ckappa.dim()?);
        Ok(Distribution { kappa: Some(kappa), ckappa: Some(ckappa), ..Self::empty(order, dim) })
    }

    pub fn from_t(t: ScalarSequence, ct: MatrixSequence) -> Result<Self> {
        let (order, dim) = (t.order(), ct.dim()?);
        Ok(Distribution { t: Some(t), ct: Some(ct), ..Self::empty(order, dim) })
    }

    fn empty(order: usize, dim: usize) -> Self {
        Distribution { order, dim, phi: None, big_phi: None, kappa: None, ckappa: None, t: None, ct: None }
    }

    /// The coordinate system present, checking orders and dimensions.
    pub fn coordinates(&self) -> Result<Coordinates> {
        let check = |s: &ScalarSequence, m: &MatrixSequence| -> Result<()> {
            same_order(self.order, s.order())?;
            same_order(self.order, m.order())?;
            let d = m.dim()?;
            if d != self.dim {
                return Err(Error::DimensionMismatch { left: self.dim, right: d });
            }
            Ok(())
        };
        match (&self.phi, &self.big_phi, &self.kappa, &self.ckappa, &self.t, &self.ct) {
            (Some(s), Some(m), None, None, None, None) => check(s, m).map(|_| Coordinates::Moments),
            (None, None, Some(s), Some(m), None, None) => check(s, m).map(|_| Coordinates::Cumulants),
            (None, None, None, None, Some(s), Some(m)) => check(s, m).map(|_| Coordinates::TCoefficients),
            _ => Err(Error::Parse("expected exactly one of phi/Phi, kappa/ckappa, t/ct".into())),
        }
    }

    /// Moments of the distribution, whatever its coordinates.
    pub fn moments(&self) -> Result<(ScalarSequence, MatrixSequence)> {
        match self.coordinates()? {
            Coordinates::Moments => Ok((self.phi.clone().unwrap(), self.big_phi.clone().unwrap())),
            Coordinates::Cumulants => moments_from_cumulants(self.kappa.as_ref().unwrap(), self.ckappa.as_ref().unwrap()),
            Coordinates::TCoefficients => {
                let t = self.t.as_ref().unwrap();
                Ok((moments_from_t(t)?, moments_from_ct(self.ct.as_ref().unwrap(), t)?))
            }
        }
    }

    /// Re-expresses the distribution in the requested coordinates.
    pub fn convert(&self, to: Coordinates) -> Result<Distribution> {
        if self.coordinates()? == to {
            return Ok(self.clone());
        }
        let (phi, big_phi) = self.moments()?;
        match to {
            Coordinates::Moments => Distribution::from_moments(phi, big_phi),
            Coordinates::Cumulants => {
                let (k, ck) = cumulants_from_moments(&phi, &big_phi)?;
                Distribution::from_cumulants(k, ck)
            }
            Coordinates::TCoefficients => {
                let t = t_from_moments(&phi)?;
                let ct = ct_from_moments(&big_phi, &phi)?;
                Distribution::from_t(t, ct)
            }
        }
    }
}
