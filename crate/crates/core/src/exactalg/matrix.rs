use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::CScalar;
use crate::error::{Error, Result};

/// A dense square matrix over exact complex rationals; the concrete model
/// of the target algebra `M_k(C)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<CScalar>,
}

impl CMatrix {
    pub fn zero(dim: usize) -> Self {
        CMatrix { dim, entries: vec![CScalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &CScalar::one())
    }

    /// `c * I`.
    pub fn scalar(dim: usize, c: &CScalar) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CScalar>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidPartition("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(CMatrix { dim, entries })
    }

    /// Convenience constructor from small integers, row-major.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| CScalar::from_int(v)).collect()).collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn diagonal(values: &[CScalar]) -> Self {
        let mut m = Self::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.entries[i * values.len() + i] = v.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CScalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<CScalar>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CScalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn check_dim(&self, other: &CMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_dim(other)?;
        Ok(self.mul(other))
    }

    /// Panics on dimension mismatch; use [`CMatrix::try_add`] for untrusted input.
    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        CMatrix { dim: self.dim, entries }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        CMatrix { dim: self.dim, entries }
    }

    pub fn neg(&self) -> CMatrix {
        CMatrix { dim: self.dim, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let k = self.dim;
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = CScalar::zero();
                for l in 0..k {
                    let a = &self.entries[i * k + l];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other.entries[l * k + j];
                    if b.is_zero() {
                        continue;
                    }
                    acc += &(a * b);
                }
                out.push(acc);
            }
        }
        CMatrix { dim: k, entries: out }
    }

    pub fn scale(&self, c: &CScalar) -> CMatrix {
        if c.is_one() {
            return self.clone();
        }
        CMatrix { dim: self.dim, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let k = self.dim;
        let mut m = CMatrix::zero(k);
        for i in 0..k {
            for j in 0..k {
                m.entries[j * k + i] = self.entries[i * k + j].conj();
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> CMatrix {
        let mut acc = CMatrix::identity(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutes_with(&self, other: &CMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Exact inverse by Gauss-Jordan elimination over `Q(i)`.
    pub fn inverse(&self) -> Result<CMatrix> {
        let k = self.dim;
        let mut a = self.entries.clone();
        let mut inv = CMatrix::identity(k).entries;
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| !a[r * k + col].is_zero())
                .ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
            if pivot != col {
                for j in 0..k {
                    a.swap(pivot * k + j, col * k + j);
                    inv.swap(pivot * k + j, col * k + j);
                }
            }
            let p = a[col * k + col].inv()?;
            for j in 0..k {
                a[col * k + j] = &a[col * k + j] * &p;
                inv[col * k + j] = &inv[col * k + j] * &p;
            }
            for r in 0..k {
                if r == col {
                    continue;
                }
                let f = a[r * k + col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let da = &f * &a[col * k + j];
                    a[r * k + j] -= &da;
                    let di = &f * &inv[col * k + j];
                    inv[r * k + j] -= &di;
                }
            }
        }
        Ok(CMatrix { dim: k, entries: inv })
    }

    pub fn to_dmatrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_complex64())
    }

    /// Largest singular value, in floating point.
    pub fn operator_norm(&self) -> f64 {
        operator_norm_f64(&self.to_dmatrix())
    }
}

/// Largest singular value of a complex float matrix, via a Hermitian
/// eigensolve of `A* A`.
pub fn operator_norm_f64(a: &DMatrix<Complex64>) -> f64 {
    if a.nrows() == 0 {
        return 0.0;
    }
    let gram = a.adjoint() * a;
    let eig = SymmetricEigen::new(gram);
    let top = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    top.max(0.0).sqrt()
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<CScalar>>::deserialize(d)?;
        CMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
