//! A c-free family given by its cumulants: every variable carries free
//! cumulants `κ_n` and c-free cumulants `^cκ_n`, and all mixed cumulants
//! vanish. Joint moments of words are sums over the non-crossing partitions
//! whose blocks are monochromatic, evaluated by splitting off the block of
//! the first letter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cumulants::{moments_from_cumulants, MatrixSequence, MultiIndexedValues, ScalarSequence};
use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar};

/// Cumulant data of one variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFreeSpec {
    pub label: char,
    pub kappa: ScalarSequence,
    pub ckappa: MatrixSequence,
}

impl CFreeSpec {
    pub fn new(label: char, kappa: ScalarSequence, ckappa: MatrixSequence) -> Result<Self> {
        if kappa.order() != ckappa.order() {
            return Err(Error::OrderMismatch { left: kappa.order(), right: ckappa.order() });
        }
        ckappa.dim()?;
        Ok(CFreeSpec { label, kappa, ckappa })
    }

    pub fn order(&self) -> usize {
        self.kappa.order()
    }

    pub fn dim(&self) -> usize {
        self.ckappa.values()[0].dim()
    }

    /// The constant variable `1`: `κ_1 = 1`, `^cκ_1 = I`, higher cumulants zero.
    pub fn identity(label: char, order: usize, dim: usize) -> Self {
        let kappa = ScalarSequence((0..order).map(|i| if i == 0 { CScalar::one() } else { CScalar::zero() }).collect());
        let ckappa = MatrixSequence(
            (0..order).map(|i| if i == 0 { CMatrix::identity(dim) } else { CMatrix::zero(dim) }).collect(),
        );
        CFreeSpec { label, kappa, ckappa }
    }

    /// `φ(X^n)` and `Φ(X^n)` for `n = 1..=N`.
    pub fn moments(&self) -> Result<(ScalarSequence, MatrixSequence)> {
        moments_from_cumulants(&self.kappa, &self.ckappa)
    }
}

/// Several variables, c-free with respect to `(φ, Φ)`.
#[derive(Clone, Debug)]
pub struct JointModel {
    specs: BTreeMap<char, CFreeSpec>,
    order: usize,
    dim: usize,
}

impl JointModel {
    /// All specs must share the dimension; the joint order is the smallest one.
    pub fn new(specs: impl IntoIterator<Item = CFreeSpec>) -> Result<Self> {
        let specs: BTreeMap<char, CFreeSpec> = specs.into_iter().map(|s| (s.label, s)).collect();
        let first = specs.values().next().ok_or_else(|| Error::MissingValue("variable specs".into()))?;
        let dim = first.dim();
        if let Some(s) = specs.values().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: s.dim() });
        }
        let order = specs.values().map(CFreeSpec::order).min().unwrap_or(0);
        Ok(JointModel { specs, order, dim })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Vec<char> {
        self.specs.keys().copied().collect()
    }

    pub fn spec(&self, label: char) -> Result<&CFreeSpec> {
        self.specs.get(&label).ok_or(Error::UnknownLabel(label))
    }

    fn letters(&self, word: &str) -> Result<Vec<char>> {
        let letters: Vec<char> = word.chars().collect();
        if letters.len() > self.order {
            return Err(Error::SizeLimit { n: letters.len(), max: self.order });
        }
        for &c in &letters {
            self.spec(c)?;
        }
        Ok(letters)
    }

    fn kappa(&self, letter: char, size: usize) -> &CScalar {
        &self.specs[&letter].kappa.values()[size - 1]
    }

    fn ckappa(&self, letter: char, size: usize) -> &CMatrix {
        &self.specs[&letter].ckappa.values()[size - 1]
    }

    /// `φ(w)`; the empty word gives `1`.
    pub fn phi_word(&self, word: &str) -> Result<CScalar> {
        let letters = self.letters(word)?;
        Ok(Intervals::new(self, &letters).phi(0, letters.len()))
    }

    /// `Φ(w)`; the empty word gives the identity.
    pub fn big_phi_word(&self, word: &str) -> Result<CMatrix> {
        let letters = self.letters(word)?;
        let mut memo = Intervals::new(self, &letters);
        let n = letters.len();
        // big[i] = Φ(w_i ⋯ w_n): the block of w_i is exterior, its gaps are
        // φ of subwords and the rest starts after its last element
        let mut big = vec![CMatrix::identity(self.dim); n + 1];
        for i in (0..n).rev() {
            let mut acc = CMatrix::zero(self.dim);
            for (block, gaps) in memo.first_blocks(i, n) {
                let head = CMatrix::scalar(self.dim, &gaps).mul(self.ckappa(letters[i], block.len()));
                acc = acc.add(&head.mul(&big[block[block.len() - 1] + 1]));
            }
            big[i] = acc;
        }
        Ok(big.swap_remove(0))
    }

    /// `φ` and `Φ` on every word of length `1..=max_len` over the labels.
    pub fn word_moments(&self, max_len: usize) -> Result<(MultiIndexedValues<CScalar>, MultiIndexedValues<CMatrix>)> {
        let mut phi = MultiIndexedValues::new();
        let mut big_phi = MultiIndexedValues::new();
        for w in crate::cumulants::all_words(&self.labels(), max_len) {
            phi.insert(w.clone(), self.phi_word(&w)?);
            big_phi.insert(w.clone(), self.big_phi_word(&w)?);
        }
        Ok((phi, big_phi))
    }

    /// Moments of the sum of all variables, `n = 1..=max_len`, as the sum of
    /// the moments of all words of length `n`.
    pub fn sum_moments(&self, max_len: usize) -> Result<(ScalarSequence, MatrixSequence)> {
        let (phi, big_phi) = self.word_moments(max_len)?;
        let mut s = vec![CScalar::zero(); max_len];
        let mut m = vec![CMatrix::zero(self.dim); max_len];
        for (w, v) in phi.iter() {
            s[w.chars().count() - 1] += v;
        }
        for (w, v) in big_phi.iter() {
            let n = w.chars().count() - 1;
            m[n] = m[n].add(v);
        }
        Ok((ScalarSequence(s), MatrixSequence(m)))
    }

    /// `φ((XY)^n)` and `Φ((XY)^n)` for `n = 1..=⌊N/2⌋`.
    pub fn product_moments(&self, x: char, y: char) -> Result<(ScalarSequence, MatrixSequence)> {
        let half = self.order / 2;
        if half == 0 {
            return Err(Error::SizeLimit { n: 2, max: self.order });
        }
        let mut phi = Vec::with_capacity(half);
        let mut big_phi = Vec::with_capacity(half);
        for n in 1..=half {
            let word: String = std::iter::repeat_n([x, y], n).flatten().collect();
            phi.push(self.phi_word(&word)?);
            big_phi.push(self.big_phi_word(&word)?);
        }
        Ok((ScalarSequence(phi), MatrixSequence(big_phi)))
    }

    /// See [`certify_cfreeness`].
    pub fn certify_cfreeness(&self, max_len: usize) -> Result<Certificate> {
        certify_cfreeness(self, max_len)
    }
}

/// `φ` on the subwords `w_i ⋯ w_{j-1}` of one word, memoised. A
/// non-crossing partition is its block through `w_i` together with
/// independent partitions of the gaps between that block's elements and of
/// the rest after its last element.
struct Intervals<'a> {
    model: &'a JointModel,
    letters: &'a [char],
    memo: Vec<Option<CScalar>>,
}

impl<'a> Intervals<'a> {
    fn new(model: &'a JointModel, letters: &'a [char]) -> Self {
        let n = letters.len() + 1;
        Intervals { model, letters, memo: vec![None; n * n] }
    }

    fn phi(&mut self, i: usize, j: usize) -> CScalar {
        if i == j {
            return CScalar::one();
        }
        let slot = i * (self.letters.len() + 1) + j;
        if let Some(v) = &self.memo[slot] {
            return v.clone();
        }
        let mut acc = CScalar::zero();
        for (block, gaps) in self.first_blocks(i, j) {
            let last = block[block.len() - 1];
            acc += &(gaps * self.model.kappa(self.letters[i], block.len()) * self.phi(last + 1, j));
        }
        self.memo[slot] = Some(acc.clone());
        acc
    }

    /// Monochromatic blocks `{i, …}` inside `[i, j)`, each with the product
    /// of `φ` over its inner gaps.
    fn first_blocks(&mut self, i: usize, j: usize) -> Vec<(Vec<usize>, CScalar)> {
        let same: Vec<usize> = (i + 1..j).filter(|&p| self.letters[p] == self.letters[i]).collect();
        let mut out = Vec::with_capacity(1 << same.len());
        for mask in 0..1u32 << same.len() {
            let block: Vec<usize> =
                std::iter::once(i).chain(same.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p)).collect();
            let mut gaps = CScalar::one();
            for w in block.windows(2) {
                gaps *= &self.phi(w[0] + 1, w[1]);
            }
            out.push((block, gaps));
        }
        out
    }
}

/// Joint `φ` and `Φ` on words, as needed by [`certify_cfreeness`].
pub trait WordMoments {
    fn labels(&self) -> Vec<char>;
    fn dim(&self) -> usize;
    fn phi_word(&self, word: &str) -> Result<CScalar>;
    fn big_phi_word(&self, word: &str) -> Result<CMatrix>;
}

impl WordMoments for JointModel {
    fn labels(&self) -> Vec<char> {
        JointModel::labels(self)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn phi_word(&self, word: &str) -> Result<CScalar> {
        JointModel::phi_word(self, word)
    }

    fn big_phi_word(&self, word: &str) -> Result<CMatrix> {
        JointModel::big_phi_word(self, word)
    }
}

/// Checks the defining property of c-freeness on products `a_1 ⋯ a_m` of
/// centred powers `a_j = X_j^{p_j} - φ(X_j^{p_j})` with neighbouring
/// variables distinct and `Σ p_j ≤ max_len`: `φ(a_1 ⋯ a_m) = 0` and
/// `Φ(a_1 ⋯ a_m) = Φ(a_1) ⋯ Φ(a_m)`.
pub fn certify_cfreeness<M: WordMoments + ?Sized>(moments: &M, max_len: usize) -> Result<Certificate> {
    let mut cert = Certificate::default();
    certify_from(moments, &moments.labels(), max_len, &mut Vec::new(), &mut cert)?;
    Ok(cert)
}

fn certify_from<M: WordMoments + ?Sized>(
    moments: &M,
    labels: &[char],
    budget: usize,
    stack: &mut Vec<(char, usize)>,
    cert: &mut Certificate,
) -> Result<()> {
    if !stack.is_empty() {
        certify_one(moments, stack, cert)?;
    }
    for &c in labels {
        if stack.last().is_some_and(|&(prev, _)| prev == c) {
            continue;
        }
        for p in 1..=budget {
            stack.push((c, p));
            certify_from(moments, labels, budget - p, stack, cert)?;
            stack.pop();
        }
    }
    Ok(())
}

fn certify_one<M: WordMoments + ?Sized>(moments: &M, factors: &[(char, usize)], cert: &mut Certificate) -> Result<()> {
    let dim = moments.dim();
    // a_j = w_j - c_j with w_j = X^p and c_j = φ(X^p); expand the product
    // over the subsets of factors that keep their word.
    let centred: Vec<(String, CScalar)> = factors
        .iter()
        .map(|&(c, p)| {
            let w = c.to_string().repeat(p);
            moments.phi_word(&w).map(|m| (w, m))
        })
        .collect::<Result<_>>()?;
    let mut phi = CScalar::zero();
    let mut big_phi = CMatrix::zero(dim);
    for mask in 0u32..(1 << centred.len()) {
        let mut word = String::new();
        let mut coeff = CScalar::one();
        for (j, (w, c)) in centred.iter().enumerate() {
            if mask & (1 << j) != 0 {
                word.push_str(w);
            } else {
                coeff *= &(-c);
            }
        }
        phi += &(&coeff * &moments.phi_word(&word)?);
        big_phi = big_phi.add(&moments.big_phi_word(&word)?.scale(&coeff));
    }
    let mut expected = CMatrix::identity(dim);
    for (w, c) in &centred {
        expected = expected.mul(&moments.big_phi_word(w)?.sub(&CMatrix::scalar(dim, c)));
    }
    let name = factors.iter().map(|(c, p)| format!("{c}^{p}")).collect::<Vec<_>>().join(" ");
    cert.checked += 1;
    if !phi.is_zero() {
        cert.failures.push(format!("phi({name}) = {phi}"));
    }
    if big_phi != expected {
        cert.failures.push(format!("Phi({name}) does not factor"));
    }
    Ok(())
}

/// Outcome of [`certify_cfreeness`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Words with at least two distinct letters whose value is nonzero.
pub fn nonvanishing_mixed<V>(values: &MultiIndexedValues<V>, is_zero: impl Fn(&V) -> bool) -> Vec<String> {
    values
        .iter()
        .filter(|(w, v)| {
            let mut cs = w.chars();
            let first = cs.next();
            cs.any(|c| Some(c) != first) && !is_zero(v)
        })
        .map(|(w, _)| w.to_string())
        .collect()
}

/// JSON form of a pair: `{"X": spec, "Y": spec, "order": N}`. The label of
/// each spec is taken from its key.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "X")]
    pub x: SpecJson,
    #[serde(rename = "Y")]
    pub y: SpecJson,
    pub order: usize,
}

/// A spec without its label.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecJson {
    pub kappa: ScalarSequence,
    pub ckappa: MatrixSequence,
}

impl PairJson {
    pub fn into_specs(self) -> Result<(CFreeSpec, CFreeSpec)> {
        let make = |label, s: SpecJson| -> Result<CFreeSpec> {
            let spec = CFreeSpec::new(label, s.kappa, s.ckappa)?;
            if spec.order() < self.order {
                return Err(Error::OrderMismatch { left: self.order, right: spec.order() });
            }
            Ok(CFreeSpec {
                label,
                kappa: spec.kappa.truncate(self.order)?,
                ckappa: spec.ckappa.truncate(self.order)?,
            })
        };
        Ok((make('X', self.x.clone())?, make('Y', self.y.clone())?))
    }

    pub fn from_specs(x: &CFreeSpec, y: &CFreeSpec) -> Self {
        let strip = |s: &CFreeSpec| SpecJson { kappa: s.kappa.clone(), ckappa: s.ckappa.clone() };
        PairJson { x: strip(x), y: strip(y), order: x.order().min(y.order()) }
    }
}
