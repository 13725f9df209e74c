use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use super::matrix::CMatrix;
use super::scalar::CScalar;
use crate::error::{Error, Result};

/// Ring operations a series coefficient must support. Multiplication need
/// not commute.
pub trait Coefficient: Clone + PartialEq + Debug {
    /// Zero of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &CScalar) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inverse(&self) -> Result<Self>;
    fn dim(&self) -> usize;
    fn kind() -> SeriesKind;
}

impl Coefficient for CScalar {
    fn zero_like(&self) -> Self {
        CScalar::zero()
    }
    fn one_like(&self) -> Self {
        CScalar::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CScalar) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        CScalar::is_zero(self)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inv()
    }
    fn dim(&self) -> usize {
        1
    }
    fn kind() -> SeriesKind {
        SeriesKind::Scalar
    }
}

impl Coefficient for CMatrix {
    fn zero_like(&self) -> Self {
        CMatrix::zero(self.dim())
    }
    fn one_like(&self) -> Self {
        CMatrix::identity(self.dim())
    }
    fn add(&self, other: &Self) -> Self {
        CMatrix::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CMatrix::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CMatrix::mul(self, other)
    }
    fn scale(&self, c: &CScalar) -> Self {
        CMatrix::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        CMatrix::is_zero(self)
    }
    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }
    fn dim(&self) -> usize {
        CMatrix::dim(self)
    }
    fn kind() -> SeriesKind {
        SeriesKind::Matrix
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Scalar,
    Matrix,
}

/// A power series truncated after degree `order`: coefficients of
/// `z^0 ..= z^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type ScalarSeries = Series<CScalar>;
pub type MatrixSeries = Series<CMatrix>;

impl<C: Coefficient> Series<C> {
    /// `coeffs[i]` is the coefficient of `z^i`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::Parse("series needs at least one coefficient".into()))?;
        let d = first.dim();
        if let Some(bad) = coeffs.iter().find(|c| c.dim() != d) {
            return Err(Error::DimensionMismatch { left: d, right: bad.dim() });
        }
        Ok(Series { coeffs })
    }

    pub fn zero(order: usize, like: &C) -> Self {
        Series { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn one(order: usize, like: &C) -> Self {
        let mut s = Self::zero(order, like);
        s.coeffs[0] = like.one_like();
        s
    }

    /// The series `z`.
    pub fn variable(order: usize, like: &C) -> Self {
        let mut s = Self::zero(order, like);
        if order >= 1 {
            s.coeffs[1] = like.one_like();
        }
        s
    }

    pub fn constant(order: usize, c: C) -> Self {
        let mut s = Self::zero(order, &c);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    /// Drops coefficients above `order`. Errors if asked to extend.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(Series { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Truncated Cauchy product, `self` on the left.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplies each coefficient by a scalar series (scalars are central,
    /// so side does not matter).
    pub fn mul_scalar_series(&self, g: &ScalarSeries) -> Result<Self> {
        if self.order() != g.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: g.order() });
        }
        let n = self.order();
        let mut out = vec![self.coeffs[0].zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.scale(b));
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Two-sided inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .map_err(|_| Error::Singular("constant term of series is not invertible".into()))?;
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(inv0.clone());
        for k in 1..=n {
            let mut acc = inv0.zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&g[k - j]));
            }
            g.push(inv0.mul(&acc).scale(&CScalar::from_int(-1)));
        }
        Ok(Series { coeffs: g })
    }

    /// `self(g(z))` for a scalar series `g` with `g(0) = 0`, by Horner's rule.
    pub fn compose(&self, g: &ScalarSeries) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Domain("inner series of a composition must vanish at 0".into()));
        }
        if self.order() != g.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: g.order() });
        }
        let n = self.order();
        let like = &self.coeffs[0];
        let mut acc = Series::constant(n, self.coeffs[n].clone());
        for j in (0..n).rev() {
            acc = acc.mul_scalar_series(g)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[j]);
        }
        debug_assert_eq!(acc.dim(), like.dim());
        Ok(acc)
    }

    /// `f(z) / z` for `f(0) = 0`; the result has order one less.
    pub fn div_by_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("division by z needs a vanishing constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::OrderMismatch { left: 0, right: 1 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z * f(z)`, truncated to the same order.
    pub fn mul_by_z(&self) -> Self {
        let mut coeffs = vec![self.coeffs[0].zero_like()];
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coefficient::is_zero)
    }

    /// Degrees at which `self` and `other` differ.
    pub fn differing_degrees(&self, other: &Self) -> Result<Vec<usize>> {
        self.check(other)?;
        Ok((0..=self.order()).filter(|&i| self.coeffs[i] != other.coeffs[i]).collect())
    }

    pub fn to_json(&self) -> SeriesJson<C>
    where
        C: Serialize,
    {
        SeriesJson { order: self.order(), kind: C::kind(), dim: self.dim(), coeffs: self.coeffs.clone() }
    }
}

impl ScalarSeries {
    /// Embeds a scalar series as multiples of the identity.
    pub fn promote(&self, dim: usize) -> MatrixSeries {
        Series { coeffs: self.coeffs.iter().map(|c| CMatrix::scalar(dim, c)).collect() }
    }
}

/// Wire form: `{"order":N,"kind":"scalar"|"matrix","dim":k,"coeffs":[...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesJson<C> {
    pub order: usize,
    pub kind: SeriesKind,
    pub dim: usize,
    pub coeffs: Vec<C>,
}

impl<C: Coefficient> TryFrom<SeriesJson<C>> for Series<C> {
    type Error = Error;
    fn try_from(j: SeriesJson<C>) -> Result<Self> {
        if j.kind != C::kind() {
            return Err(Error::Parse(format!("expected a {:?} series", C::kind())));
        }
        if j.coeffs.len() != j.order + 1 {
            return Err(Error::OrderMismatch { left: j.order, right: j.coeffs.len().saturating_sub(1) });
        }
        let s = Series::new(j.coeffs)?;
        if s.dim() != j.dim {
            return Err(Error::DimensionMismatch { left: j.dim, right: s.dim() });
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(v: &[i64]) -> ScalarSeries {
        Series::new(v.iter().map(|&x| CScalar::from_int(x)).collect()).unwrap()
    }

    #[test]
    fn one_plus_z_times_one_minus_z() {
        let f = sc(&[1, 1, 0, 0]);
        let g = sc(&[1, -1, 0, 0]);
        assert_eq!(f.mul(&g).unwrap(), sc(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_inverse() {
        let f = sc(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.inverse().unwrap(), sc(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn nilpotent_matrix_inverse() {
        let a = CMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let f = Series::new(vec![CMatrix::identity(2), a.clone(), CMatrix::zero(2), CMatrix::zero(2)]).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(g.coeffs(), &[CMatrix::identity(2), a.neg(), CMatrix::zero(2), CMatrix::zero(2)]);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert!(matches!(sc(&[1, 2]).mul(&sc(&[1, 2, 3])), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn noncommutative_product_detected() {
        let a = CMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = CMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        let id = CMatrix::identity(2);
        let f = Series::new(vec![id.clone(), a, CMatrix::zero(2)]).unwrap();
        let g = Series::new(vec![id, b, CMatrix::zero(2)]).unwrap();
        let fg = f.mul(&g).unwrap();
        let gf = g.mul(&f).unwrap();
        assert_eq!(fg.coeff(1), gf.coeff(1));
        assert_ne!(fg.coeff(2), gf.coeff(2));
    }

    #[test]
    fn composition_identities() {
        let f = sc(&[3, 1, 4, 1, 5]);
        let z = Series::variable(4, &CScalar::one());
        assert_eq!(f.compose(&z).unwrap(), f);
        let c = sc(&[7, 0, 0, 0, 0]);
        let g = sc(&[0, 2, -1, 3, 1]);
        assert_eq!(c.compose(&g).unwrap(), c);
        assert!(f.compose(&f).is_err());
    }

    #[test]
    fn json_shape() {
        let f = sc(&[1, 2]);
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert!(s.starts_with(r#"{"order":1,"kind":"scalar","dim":1,"coeffs":[{"re":"1/1""#));
        let back: SeriesJson<CScalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(ScalarSeries::try_from(back).unwrap(), f);
    }
}
