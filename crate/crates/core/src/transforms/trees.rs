//! Tree weights. Every vertex of a tree is the root of an elementary tree
//! (a leaf being the one-vertex elementary tree), and a weight is the product
//! of the values of these elementary trees; the c-free variants take the
//! operator-valued value at the root.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cumulants::{ct_from_moments, cumulants_from_moments, t_from_moments, t_weight, MatrixSequence, MultiIndexedValues, ScalarSequence};
use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar};
use crate::model::{CFreeSpec, JointModel};
use crate::partitions::{enumerate_ncl_parity, parity_split, NcPartition};
use crate::trees::{enumerate_bicolor, enumerate_trees, in_lambda_domain, lambda, BicolorPlanarTree, PlanarTree};

/// `t_0, t_1, …` and `^ct_0, ^ct_1, …` of one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub t: ScalarSequence,
    pub ct: MatrixSequence,
}

impl Coefficients {
    pub fn from_moments(phi: &ScalarSequence, big_phi: &MatrixSequence) -> Result<Self> {
        Ok(Coefficients { t: t_from_moments(phi)?, ct: ct_from_moments(big_phi, phi)? })
    }

    pub fn from_spec(spec: &CFreeSpec) -> Result<Self> {
        let (phi, big_phi) = spec.moments()?;
        Self::from_moments(&phi, &big_phi)
    }

    fn t(&self, k: usize) -> Result<&CScalar> {
        self.t.values().get(k).ok_or_else(|| Error::MissingValue(format!("t_{k}")))
    }

    fn ct(&self, k: usize) -> Result<&CMatrix> {
        self.ct.values().get(k).ok_or_else(|| Error::MissingValue(format!("^ct_{k}")))
    }
}

/// `ℰ(W)`: the product of `t_{d(v)}` over the vertices, `d(v)` the number of
/// offspring.
pub fn planar_weight(tree: &PlanarTree, c: &Coefficients) -> Result<CScalar> {
    let mut acc = CScalar::one();
    for d in tree.degrees() {
        acc *= c.t(d)?;
    }
    Ok(acc)
}

/// `Ẽ(W)`: `^ct` of the root's elementary tree times `ℰ` of all the others.
pub fn planar_weight_c(tree: &PlanarTree, c: &Coefficients) -> Result<CMatrix> {
    let degrees = tree.degrees();
    let mut scalar = CScalar::one();
    for &d in &degrees[1..] {
        scalar *= c.t(d)?;
    }
    Ok(c.ct(degrees[0])?.scale(&scalar))
}

/// `ω(W)`: the product over vertices with `k` colour-1 and `j` colour-0
/// offspring of `t_k(X) t_j(Y)`.
pub fn bicolor_weight(tree: &BicolorPlanarTree, x: &Coefficients, y: &Coefficients) -> Result<CScalar> {
    let mut acc = CScalar::one();
    for (k, j) in tree.shapes() {
        acc *= &(x.t(k)? * y.t(j)?);
    }
    Ok(acc)
}

/// `ω̃(W)`: `^ct_k(X) ^ct_j(Y)` at the root times `ω` of all other vertices.
pub fn bicolor_weight_c(tree: &BicolorPlanarTree, x: &Coefficients, y: &Coefficients) -> Result<CMatrix> {
    let shapes = tree.shapes();
    let mut scalar = CScalar::one();
    for &(k, j) in &shapes[1..] {
        scalar *= &(x.t(k)? * y.t(j)?);
    }
    let (k, j) = shapes[0];
    Ok(x.ct(k)?.mul(y.ct(j)?).scale(&scalar))
}

/// One identity of the tree route at size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCheck {
    pub name: &'static str,
    pub n: usize,
    pub passed: bool,
}

fn check(out: &mut Vec<TreeCheck>, name: &'static str, n: usize, passed: bool) {
    out.push(TreeCheck { name, n, passed });
}

fn on_letter(values: &ScalarSequence, letter: char) -> impl Iterator<Item = (String, CScalar)> + '_ {
    values.values().iter().enumerate().map(move |(i, v)| (letter.to_string().repeat(i + 1), v.clone()))
}

/// Runs every tree identity behind the multiplicativity of the T-transforms
/// for sizes `1..=max_n`, for two c-free variables given by their specs
/// (which need order at least `2 max_n`):
///
/// * `Σ_{𝔗(n)} ℰ_X = κ_n(X)` and `Σ_{𝔗(n)} Ẽ_X = ^cκ_n(X)`;
/// * for `σ` in the domain of `Λ`, `ω(Λ(σ)) = t_σ[X, Y, …, X, Y]`;
/// * summed over a class `c(σ) = π ∈ NC_0(2n)`, `ω` gives
///   `κ_{π_-}[X] κ_{π_+}[Y]` and `ω̃` the Kreweras-factored c-free term;
/// * `Σ_{𝔗(n)} ℰ_XY = Σ_{𝔅(n)} ω` and `Σ_{𝔗(n)} Ẽ_XY = Σ_{𝔅(n)} ω̃`;
/// * `ℰ_XY(A_n) = Σ_{𝔈𝔅(n)} ω` and `Ẽ_XY(A_n) = Σ_{𝔈𝔅(n)} ω̃`.
pub fn tree_route(x: &CFreeSpec, y: &CFreeSpec, max_n: usize) -> Result<Vec<TreeCheck>> {
    let model = JointModel::new([x.clone(), y.clone()])?;
    if model.order() < 2 * max_n {
        return Err(Error::OrderMismatch { left: model.order(), right: 2 * max_n });
    }
    let cx = Coefficients::from_spec(x)?;
    let cy = Coefficients::from_spec(y)?;
    let (phi, big_phi) = model.product_moments(x.label, y.label)?;
    let cxy = Coefficients::from_moments(&phi, &big_phi)?;
    let (kxy, ckxy) = cumulants_from_moments(&phi, &big_phi)?;
    let (kx, ckx) = (&x.kappa, &x.ckappa);
    let (ky, cky) = (&y.kappa, &y.ckappa);
    let dim = model.dim();
    let t_multi: MultiIndexedValues<CScalar> = on_letter(&cx.t, 'X').chain(on_letter(&cy.t, 'Y')).collect();

    let mut out = Vec::new();
    for n in 1..=max_n {
        let planar = enumerate_trees(n)?;
        let mut e = CScalar::zero();
        let mut ec = CMatrix::zero(dim);
        for w in &planar {
            e += &planar_weight(w, &cx)?;
            ec = ec.add(&planar_weight_c(w, &cx)?);
        }
        check(&mut out, "planar sums give the cumulants of X", n, e == kx.values()[n - 1] && ec == ckx.values()[n - 1]);

        let word: String = std::iter::repeat_n(['X', 'Y'], n).flatten().collect();
        let mut per_sigma = true;
        let mut classes: BTreeMap<Vec<Vec<usize>>, (CScalar, CMatrix)> = BTreeMap::new();
        for sigma in enumerate_ncl_parity(n)?.into_iter().filter(in_lambda_domain) {
            let tree = lambda(&sigma)?;
            let w = bicolor_weight(&tree, &cx, &cy)?;
            per_sigma &= w == t_weight(&sigma, &word, &t_multi)?;
            let entry = classes
                .entry(sigma.connect().into_blocks())
                .or_insert_with(|| (CScalar::zero(), CMatrix::zero(dim)));
            entry.0 += &w;
            entry.1 = entry.1.add(&bicolor_weight_c(&tree, &cx, &cy)?);
        }
        check(&mut out, "bicolor weight of Lambda(sigma) is t_sigma", n, per_sigma);

        let mut per_class = true;
        for (blocks, (w, wc)) in &classes {
            let pi = NcPartition::new(2 * n, blocks.clone())?;
            let split = parity_split(&pi, None)?;
            let (minus, plus) = (split.minus.blocks(), split.plus.blocks());
            let first = split.minus.block_index_of(1)?;
            let last = split.plus.block_index_of(n)?;
            let mut free = CScalar::one();
            let mut rest = CScalar::one();
            for (i, b) in minus.iter().enumerate() {
                free *= &kx.values()[b.len() - 1];
                if i != first {
                    rest *= &kx.values()[b.len() - 1];
                }
            }
            for (i, d) in plus.iter().enumerate() {
                free *= &ky.values()[d.len() - 1];
                if i != last {
                    rest *= &ky.values()[d.len() - 1];
                }
            }
            let cfree = ckx.values()[minus[first].len() - 1].mul(&cky.values()[plus[last].len() - 1]).scale(&rest);
            per_class &= *w == free && *wc == cfree;
        }
        check(&mut out, "class sums give the Kreweras-factored cumulants", n, per_class);

        let bicolor = enumerate_bicolor(n)?;
        let mut o = CScalar::zero();
        let mut oc = CMatrix::zero(dim);
        for b in &bicolor {
            o += &bicolor_weight(b, &cx, &cy)?;
            oc = oc.add(&bicolor_weight_c(b, &cx, &cy)?);
        }
        let mut exy = CScalar::zero();
        let mut ecxy = CMatrix::zero(dim);
        for w in &planar {
            exy += &planar_weight(w, &cxy)?;
            ecxy = ecxy.add(&planar_weight_c(w, &cxy)?);
        }
        check(
            &mut out,
            "planar sums for XY equal bicolor sums",
            n,
            exy == o && ecxy == oc && o == kxy.values()[n - 1] && oc == ckxy.values()[n - 1],
        );

        let mut eo = CScalar::zero();
        let mut eoc = CMatrix::zero(dim);
        for k in 0..n {
            let elementary = BicolorPlanarTree::elementary(k, n - 1 - k);
            eo += &bicolor_weight(&elementary, &cx, &cy)?;
            eoc = eoc.add(&bicolor_weight_c(&elementary, &cx, &cy)?);
        }
        let a_n = PlanarTree::elementary(n);
        check(
            &mut out,
            "elementary tree of XY balances the elementary bicolor trees",
            n,
            planar_weight(&a_n, &cxy)? == eo && planar_weight_c(&a_n, &cxy)? == eoc,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{cfree_spec, rng};

    fn coefficients(seed: u64, order: usize, dim: usize) -> Coefficients {
        let mut r = rng(seed);
        Coefficients::from_spec(&cfree_spec(&mut r, 'X', order, dim)).unwrap()
    }

    #[test]
    fn elementary_weights() {
        let c = coefficients(1, 5, 2);
        let d = coefficients(2, 5, 2);
        for n in 1..=5 {
            assert_eq!(&planar_weight(&PlanarTree::elementary(n), &c).unwrap(), &(&c.t.values()[n - 1] * &c.t.values()[0].pow(n as u32 - 1)));
            let b = BicolorPlanarTree::elementary(n - 1, 0);
            let expected = c.ct.values()[n - 1].mul(&d.ct.values()[0]).scale(&(&c.t.values()[0] * &d.t.values()[0]).pow(n as u32 - 1));
            assert_eq!(bicolor_weight_c(&b, &c, &d).unwrap(), expected);
        }
        assert_eq!(planar_weight_c(&PlanarTree::leaf(), &c).unwrap(), c.ct.values()[0]);
        assert!(matches!(planar_weight(&PlanarTree::elementary(7), &c), Err(Error::MissingValue(_))));
    }

    #[test]
    fn tree_identities_hold() {
        let mut r = rng(3);
        let x = cfree_spec(&mut r, 'X', 8, 2);
        let y = cfree_spec(&mut r, 'Y', 8, 2);
        let checks = tree_route(&x, &y, 4).unwrap();
        assert_eq!(checks.len(), 20);
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn tree_route_needs_enough_moments() {
        let mut r = rng(4);
        let x = cfree_spec(&mut r, 'X', 6, 1);
        let y = cfree_spec(&mut r, 'Y', 6, 1);
        assert!(matches!(tree_route(&x, &y, 4), Err(Error::OrderMismatch { .. })));
    }
}
