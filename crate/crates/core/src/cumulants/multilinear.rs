//! Multilinear values on words: a word `"XYX"` stands for the entries
//! `(X, Y, X)`, and a block `B` of a partition of its positions reads the
//! subword of the letters at `B`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{CMatrix, CScalar};
use crate::partitions::{enumerate_nc_up_to, enumerate_ncl_up_to, NcPartition, NclPartition, HARD_MAX_N};

/// Values indexed by words over a finite alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndexedValues<V>(BTreeMap<String, V>);

impl<V> MultiIndexedValues<V> {
    pub fn new() -> Self {
        MultiIndexedValues(BTreeMap::new())
    }

    pub fn insert(&mut self, word: impl Into<String>, value: V) -> Option<V> {
        self.0.insert(word.into(), value)
    }

    pub fn get(&self, word: &str) -> Result<&V> {
        self.0.get(word).ok_or_else(|| Error::MissingValue(format!("word \"{word}\"")))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains_key(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &V)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Keys ordered by length, then lexicographically.
    pub fn words_by_length(&self) -> Vec<String> {
        let mut words: Vec<String> = self.0.keys().cloned().collect();
        words.sort_by(|a, b| a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b)));
        words
    }
}

impl<V> FromIterator<(String, V)> for MultiIndexedValues<V> {
    fn from_iter<I: IntoIterator<Item = (String, V)>>(iter: I) -> Self {
        MultiIndexedValues(iter.into_iter().collect())
    }
}

/// Every word of length `1..=max_len` over `alphabet`, shortest first.
pub fn all_words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn letters(word: &str) -> Vec<char> {
    word.chars().collect()
}

fn subword(letters: &[char], block: &[usize]) -> String {
    block.iter().map(|&p| letters[p - 1]).collect()
}

fn check_length(pi_n: usize, letters: &[char]) -> Result<()> {
    if pi_n != letters.len() {
        return Err(Error::OrderMismatch { left: pi_n, right: letters.len() });
    }
    Ok(())
}

/// `κ_π[w]`: the product over blocks of the cumulant of the block's subword.
pub fn kappa_weight(pi: &NcPartition, word: &str, kappa: &MultiIndexedValues<CScalar>) -> Result<CScalar> {
    let w = letters(word);
    check_length(pi.n(), &w)?;
    let mut acc = CScalar::one();
    for b in pi.blocks() {
        acc *= kappa.get(&subword(&w, b))?;
    }
    Ok(acc)
}

/// `𝒦_π[w]`: the product of the c-free cumulants of the exterior blocks, in
/// block order, scaled by the free cumulants of the interior blocks.
pub fn k_weight(
    pi: &NcPartition,
    word: &str,
    kappa: &MultiIndexedValues<CScalar>,
    ckappa: &MultiIndexedValues<CMatrix>,
) -> Result<CMatrix> {
    let w = letters(word);
    check_length(pi.n(), &w)?;
    ordered_weight(pi.blocks(), &pi.exterior_flags(), &[], &w, kappa, ckappa)
}

/// `t_π[w]`: the product over blocks `B` of `t_{|B|-1}` on the subword, times
/// `t_0` of the letter at every point of `s(π)`.
pub fn t_weight(pi: &NclPartition, word: &str, t: &MultiIndexedValues<CScalar>) -> Result<CScalar> {
    let w = letters(word);
    check_length(pi.n(), &w)?;
    let mut acc = CScalar::one();
    for b in pi.blocks() {
        acc *= t.get(&subword(&w, b))?;
    }
    for p in pi.non_minimal() {
        acc *= t.get(&subword(&w, &[p]))?;
    }
    Ok(acc)
}

/// `^ct_π[w]`: `^ct` of the exterior blocks in block order, scaled by `t` of
/// the interior blocks and `t_0` over `s(π)`.
pub fn ct_weight(
    pi: &NclPartition,
    word: &str,
    t: &MultiIndexedValues<CScalar>,
    ct: &MultiIndexedValues<CMatrix>,
) -> Result<CMatrix> {
    let w = letters(word);
    check_length(pi.n(), &w)?;
    ordered_weight(pi.blocks(), &pi.exterior_flags(), &pi.non_minimal(), &w, t, ct)
}

fn ordered_weight(
    blocks: &[Vec<usize>],
    exterior: &[bool],
    singles: &[usize],
    w: &[char],
    scalars: &MultiIndexedValues<CScalar>,
    matrices: &MultiIndexedValues<CMatrix>,
) -> Result<CMatrix> {
    let mut scalar = CScalar::one();
    let mut product: Option<CMatrix> = None;
    for (b, &ext) in blocks.iter().zip(exterior) {
        let key = subword(w, b);
        if ext {
            let m = matrices.get(&key)?;
            product = Some(match product {
                None => m.clone(),
                Some(acc) => acc.try_mul(m)?,
            });
        } else {
            scalar *= scalars.get(&key)?;
        }
    }
    for &p in singles {
        scalar *= scalars.get(&subword(w, &[p]))?;
    }
    let product = product.expect("the block of 1 is exterior");
    Ok(product.scale(&scalar))
}

fn word_length(word: &str) -> Result<usize> {
    let n = word.chars().count();
    if n == 0 {
        return Err(Error::Parse("empty word".into()));
    }
    if n > HARD_MAX_N {
        return Err(Error::SizeLimit { n, max: HARD_MAX_N });
    }
    Ok(n)
}

/// Partition lists per length, built on demand.
struct Lists<P> {
    by_n: Vec<Option<Vec<P>>>,
    make: fn(usize, usize) -> Result<Vec<P>>,
}

impl<P> Lists<P> {
    fn new(make: fn(usize, usize) -> Result<Vec<P>>) -> Self {
        Lists { by_n: Vec::new(), make }
    }

    fn get(&mut self, n: usize) -> Result<&[P]> {
        if self.by_n.len() <= n {
            self.by_n.resize_with(n + 1, || None);
        }
        if self.by_n[n].is_none() {
            self.by_n[n] = Some((self.make)(n, HARD_MAX_N)?);
        }
        Ok(self.by_n[n].as_deref().unwrap())
    }
}

/// Multilinear free cumulants `κ_n(w)` for every word carrying a moment.
/// The moments must be closed under taking subwords.
pub fn free_cumulants_multi(phi: &MultiIndexedValues<CScalar>) -> Result<MultiIndexedValues<CScalar>> {
    let mut lists = Lists::new(enumerate_nc_up_to);
    let mut kappa = MultiIndexedValues::new();
    for word in phi.words_by_length() {
        let n = word_length(&word)?;
        let mut rest = CScalar::zero();
        for g in lists.get(n)?.iter().filter(|g| g.num_blocks() > 1) {
            rest += &kappa_weight(g, &word, &kappa)?;
        }
        let value = phi.get(&word)? - &rest;
        kappa.insert(word, value);
    }
    Ok(kappa)
}

/// Multilinear free and c-free cumulants from `φ` and `Φ` on the same words.
pub fn cfree_cumulants_multi(
    phi: &MultiIndexedValues<CScalar>,
    big_phi: &MultiIndexedValues<CMatrix>,
) -> Result<(MultiIndexedValues<CScalar>, MultiIndexedValues<CMatrix>)> {
    let kappa = free_cumulants_multi(phi)?;
    let mut lists = Lists::new(enumerate_nc_up_to);
    let mut ckappa = MultiIndexedValues::new();
    for word in big_phi.words_by_length() {
        let n = word_length(&word)?;
        let target = big_phi.get(&word)?;
        let mut rest = CMatrix::zero(target.dim());
        for g in lists.get(n)?.iter().filter(|g| g.num_blocks() > 1) {
            rest = rest.try_add(&k_weight(g, &word, &kappa, &ckappa)?)?;
        }
        ckappa.insert(word, target.sub(&rest));
    }
    Ok((kappa, ckappa))
}

/// The pivot of the `1_n` term: `Π_{p ≥ 2} t_0` of the letters after the first.
fn pivot(word: &[char], t: &MultiIndexedValues<CScalar>) -> Result<CScalar> {
    let mut acc = CScalar::one();
    for c in &word[1..] {
        let t0 = t.get(&c.to_string())?;
        if t0.is_zero() {
            return Err(Error::NotInvertible);
        }
        acc *= t0;
    }
    acc.inv()
}

/// Multilinear t-coefficients `t_{n-1}(w)` for every word carrying a moment.
pub fn t_coefficients_multi(phi: &MultiIndexedValues<CScalar>) -> Result<MultiIndexedValues<CScalar>> {
    let mut lists = Lists::new(enumerate_ncl_up_to);
    let mut t = MultiIndexedValues::new();
    for word in phi.words_by_length() {
        let n = word_length(&word)?;
        let inv = pivot(&letters(&word), &t)?;
        let mut rest = CScalar::zero();
        for p in lists.get(n)?.iter().filter(|p| p.num_blocks() > 1) {
            rest += &t_weight(p, &word, &t)?;
        }
        let value = (phi.get(&word)? - &rest) * inv;
        t.insert(word, value);
    }
    Ok(t)
}

/// Multilinear t- and ^ct-coefficients from `φ` and `Φ` on the same words.
pub fn ct_coefficients_multi(
    phi: &MultiIndexedValues<CScalar>,
    big_phi: &MultiIndexedValues<CMatrix>,
) -> Result<(MultiIndexedValues<CScalar>, MultiIndexedValues<CMatrix>)> {
    let t = t_coefficients_multi(phi)?;
    let mut lists = Lists::new(enumerate_ncl_up_to);
    let mut ct = MultiIndexedValues::new();
    for word in big_phi.words_by_length() {
        let n = word_length(&word)?;
        let inv = pivot(&letters(&word), &t)?;
        let target = big_phi.get(&word)?;
        let mut rest = CMatrix::zero(target.dim());
        for p in lists.get(n)?.iter().filter(|p| p.num_blocks() > 1) {
            rest = rest.try_add(&ct_weight(p, &word, &t, &ct)?)?;
        }
        ct.insert(word, target.sub(&rest).scale(&inv));
    }
    Ok((t, ct))
}
