//! Generating series of a variable and the multiplicativity of the
//! T-transforms under c-free products.
//!
//! For moments `φ(X^n)`, `Φ(X^n)` known up to `n = N`:
//! `m(z) = Σ φ(X^n) z^n` and `M(z) = Σ Φ(X^n) z^n` have order `N`, as do
//! `R(z) = Σ κ_n z^n` and `^cR(z) = Σ ^cκ_n z^n`; `T(z) = Σ t_n z^n` and
//! `^cT(z) = Σ ^ct_n z^n` have order `N - 1`.

mod trees;

use serde::Serialize;

use crate::cumulants::{
    ct_from_moments, cumulants_from_moments, moments_from_cumulants, t_from_moments, MatrixSequence, ScalarSequence,
};
use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar, Coefficient, MatrixSeries, ScalarSeries, Series};
use crate::model::{CFreeSpec, JointModel};

pub use trees::{
    bicolor_weight, bicolor_weight_c, planar_weight, planar_weight_c, tree_route, Coefficients, TreeCheck,
};

/// The six generating series of one variable. `t` and `ct` are absent when
/// `φ(X) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionSeriesBundle {
    pub m: ScalarSeries,
    pub big_m: MatrixSeries,
    pub r: ScalarSeries,
    pub cr: MatrixSeries,
    pub t: Option<ScalarSeries>,
    pub ct: Option<MatrixSeries>,
}

/// Coefficients `0, v_1, …, v_N`.
fn with_zero_constant<C: Coefficient>(values: &[C], zero: C) -> Result<Series<C>> {
    Series::new(std::iter::once(zero).chain(values.iter().cloned()).collect())
}

impl DistributionSeriesBundle {
    pub fn from_moments(phi: &ScalarSequence, big_phi: &MatrixSequence) -> Result<Self> {
        let dim = big_phi.dim()?;
        let (kappa, ckappa) = cumulants_from_moments(phi, big_phi)?;
        let (t, ct) = match t_from_moments(phi) {
            Ok(t) => {
                let ct = ct_from_moments(big_phi, phi)?;
                (Some(Series::new(t.0)?), Some(Series::new(ct.0)?))
            }
            Err(Error::NotInvertible) => (None, None),
            Err(e) => return Err(e),
        };
        Ok(DistributionSeriesBundle {
            m: with_zero_constant(phi.values(), CScalar::zero())?,
            big_m: with_zero_constant(big_phi.values(), CMatrix::zero(dim))?,
            r: with_zero_constant(kappa.values(), CScalar::zero())?,
            cr: with_zero_constant(ckappa.values(), CMatrix::zero(dim))?,
            t,
            ct,
        })
    }

    pub fn from_spec(spec: &CFreeSpec) -> Result<Self> {
        let (phi, big_phi) = spec.moments()?;
        Self::from_moments(&phi, &big_phi)
    }

    pub fn order(&self) -> usize {
        self.m.order()
    }

    pub fn dim(&self) -> usize {
        self.big_m.dim()
    }

    pub fn invertible(&self) -> bool {
        self.t.is_some()
    }

    fn transforms(&self) -> Result<(&ScalarSeries, &MatrixSeries)> {
        match (&self.t, &self.ct) {
            (Some(t), Some(ct)) => Ok((t, ct)),
            _ => Err(Error::NotInvertible),
        }
    }

    /// JSON with the series as coefficient lists.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::json!({
            "order": self.order(),
            "dim": self.dim(),
            "m": self.m.to_json(),
            "M": self.big_m.to_json(),
            "R": self.r.to_json(),
            "cR": self.cr.to_json(),
        });
        if let (Some(t), Some(ct)) = (&self.t, &self.ct) {
            out["T"] = serde_json::to_value(t.to_json()).expect("serialisable");
            out["cT"] = serde_json::to_value(ct.to_json()).expect("serialisable");
        }
        out
    }
}

/// Degrees at which the two functional equations fail; both lists are empty
/// when they hold exactly up to degree `order`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctionalReport {
    pub order: usize,
    pub t_failures: Vec<usize>,
    pub ct_failures: Vec<usize>,
}

impl FunctionalReport {
    pub fn passed(&self) -> bool {
        self.t_failures.is_empty() && self.ct_failures.is_empty()
    }
}

/// Checks `T(m(z)) (1 + m(z)) = m(z)/z` and `^cT(m(z)) (1 + M(z)) = M(z)/z`
/// coefficientwise up to degree `N - 1`.
pub fn check_functional_equations(b: &DistributionSeriesBundle) -> Result<FunctionalReport> {
    let (t, ct) = b.transforms()?;
    let order = b.order().checked_sub(1).ok_or(Error::OrderMismatch { left: 0, right: 1 })?;
    let m = b.m.truncate(order)?;
    let big_m = b.big_m.truncate(order)?;
    let one = ScalarSeries::one(order, &CScalar::zero());
    let lhs = t.compose(&m)?.mul(&one.add(&m)?)?;
    let t_failures = lhs.differing_degrees(&b.m.div_by_z()?)?;
    let identity = MatrixSeries::one(order, &CMatrix::zero(b.dim()));
    let lhs = ct.compose(&m)?.mul(&identity.add(&big_m)?)?;
    let ct_failures = lhs.differing_degrees(&b.big_m.div_by_z()?)?;
    Ok(FunctionalReport { order, t_failures, ct_failures })
}

/// Outcome of [`cfree_multiply`]: the bundle of `XY` and the degrees at
/// which `T_XY = T_X T_Y` or `^cT_XY = ^cT_X ^cT_Y` fail.
#[derive(Clone, Debug)]
pub struct MultiplyReport {
    pub product: DistributionSeriesBundle,
    /// Highest degree compared, `⌊N/2⌋ - 1`.
    pub order: usize,
    pub t_failures: Vec<usize>,
    pub ct_failures: Vec<usize>,
}

impl MultiplyReport {
    pub fn passed(&self) -> bool {
        self.t_failures.is_empty() && self.ct_failures.is_empty()
    }
}

/// Multiplies two c-free variables through the joint model and compares the
/// T-transforms of the product with the products of the T-transforms.
/// Moments of `(XY)^n` use `2n` letters, so `N`-th order specs determine
/// the product up to `n = ⌊N/2⌋` and its T-transforms up to degree
/// `⌊N/2⌋ - 1`.
pub fn cfree_multiply(x: &CFreeSpec, y: &CFreeSpec) -> Result<MultiplyReport> {
    if x.label == y.label {
        return Err(Error::Domain(format!("both variables are labelled '{}'", x.label)));
    }
    let model = JointModel::new([x.clone(), y.clone()])?;
    let (phi, big_phi) = model.product_moments(x.label, y.label)?;
    let half = phi.order();
    let product = DistributionSeriesBundle::from_moments(&phi, &big_phi)?;
    let factor = |s: &CFreeSpec| -> Result<DistributionSeriesBundle> {
        let (phi, big_phi) = moments_from_cumulants(&s.kappa.truncate(half)?, &s.ckappa.truncate(half)?)?;
        DistributionSeriesBundle::from_moments(&phi, &big_phi)
    };
    let (bx, by) = (factor(x)?, factor(y)?);
    let (tx, ctx) = bx.transforms()?;
    let (ty, cty) = by.transforms()?;
    let (txy, ctxy) = product.transforms()?;
    let t_failures = txy.differing_degrees(&tx.mul(ty)?)?;
    let ct_failures = ctxy.differing_degrees(&ctx.mul(cty)?)?;
    Ok(MultiplyReport { order: half - 1, product, t_failures, ct_failures })
}
