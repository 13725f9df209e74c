//! Non-crossing partitions `NC(n)` and non-crossing linked partitions
//! `NCL(n)` of `{1..n}`.
//!
//! Both are represented by [`Partition`], tagged with a [`Kind`] marker so
//! that operations only meaningful for one family (Kreweras complement,
//! joins, doubling) are only available there. Blocks are kept in canonical
//! form: each block strictly increasing, blocks sorted by their minimum.
//! Equality, ordering and hashing are structural on that form.

mod generate;
mod ops;

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use generate::{elements, generate, mask_of, masks_cross};

pub use ops::{class_members, nc_join, parity_split, ParitySplit};

/// Default upper bound on `n` for enumeration.
pub const DEFAULT_MAX_N: usize = 12;

/// Hard limit imposed by the bitmask representation used internally.
pub const HARD_MAX_N: usize = 30;

/// Marker distinguishing the two partition families.
pub trait Kind: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Ord + Send + Sync + 'static {
    /// Whether blocks may share a point.
    const LINKED: bool;
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossing;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Linked;

impl Kind for NonCrossing {
    const LINKED: bool = false;
}

impl Kind for Linked {
    const LINKED: bool = true;
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition<K: Kind> {
    n: usize,
    blocks: Vec<Vec<usize>>,
    kind: PhantomData<K>,
}

pub type NcPartition = Partition<NonCrossing>;
pub type NclPartition = Partition<Linked>;

/// Exterior and interior blocks, plus the points that are the minimum of no
/// block. Each list is ordered by first element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSplit {
    pub exterior: Vec<Vec<usize>>,
    pub interior: Vec<Vec<usize>>,
    pub singles: Vec<usize>,
}

pub(crate) fn check_size(n: usize, max_n: usize) -> Result<()> {
    if n == 0 || n > max_n.min(HARD_MAX_N) {
        return Err(Error::SizeLimit { n, max: max_n.min(HARD_MAX_N) });
    }
    Ok(())
}

impl<K: Kind> Partition<K> {
    /// Validates and canonicalises `blocks` as a partition of `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        check_size(n, HARD_MAX_N)?;
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPartition(format!("repeated element in block {b:?}")));
            }
            if let Some(&p) = b.iter().find(|&&p| p == 0 || p > n) {
                return Err(Error::OutOfRange { p, n });
            }
        }
        blocks.sort();
        let masks: Vec<u32> = blocks.iter().map(|b| mask_of(b)).collect();
        let union = masks.iter().fold(0, |m, b| m | b);
        if union != full_mask(n) {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        for i in 0..blocks.len() {
            for j in (i + 1)..blocks.len() {
                let shared = masks[i] & masks[j];
                if shared != 0 {
                    if !K::LINKED {
                        return Err(Error::InvalidPartition(format!(
                            "blocks {:?} and {:?} overlap",
                            blocks[i], blocks[j]
                        )));
                    }
                    let both = blocks[i].len() >= 2 && blocks[j].len() >= 2;
                    let p = shared.trailing_zeros() as usize;
                    let min_in_one = (blocks[i][0] == p) != (blocks[j][0] == p);
                    if shared.count_ones() > 1 || !both || !min_in_one {
                        return Err(Error::InvalidPartition(format!(
                            "blocks {:?} and {:?} are not validly linked",
                            blocks[i], blocks[j]
                        )));
                    }
                }
                if masks_cross(masks[i], masks[j]) {
                    return Err(Error::InvalidPartition(format!("blocks {:?} and {:?} cross", blocks[i], blocks[j])));
                }
            }
        }
        Ok(Partition { n, blocks, kind: PhantomData })
    }

    /// Builds from blocks already known to be valid and canonical.
    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(Self::new(n, blocks.clone()).map(|p| p.blocks == blocks).unwrap_or(false));
        Partition { n, blocks, kind: PhantomData }
    }

    fn from_masks(n: usize, masks: &[u32]) -> Self {
        Partition { n, blocks: masks.iter().map(|&m| elements(m)).collect(), kind: PhantomData }
    }

    /// The partition into singletons, `0_n`.
    pub fn zero(n: usize) -> Self {
        Partition { n, blocks: (1..=n).map(|i| vec![i]).collect(), kind: PhantomData }
    }

    /// The one-block partition, `1_n`.
    pub fn one(n: usize) -> Self {
        Partition { n, blocks: vec![(1..=n).collect()], kind: PhantomData }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.n {
            return Err(Error::OutOfRange { p, n: self.n });
        }
        Ok(())
    }

    /// All blocks containing `p` (one, or two for a linking point).
    pub fn blocks_containing(&self, p: usize) -> Result<Vec<&[usize]>> {
        self.check_point(p)?;
        Ok(self.blocks.iter().filter(|b| b.binary_search(&p).is_ok()).map(Vec::as_slice).collect())
    }

    /// The block containing `p`; when `p` lies in two blocks, the one whose
    /// minimum is `p`.
    pub fn block_of(&self, p: usize) -> Result<&[usize]> {
        let found = self.blocks_containing(p)?;
        Ok(found.iter().copied().find(|b| b[0] == p).unwrap_or(found[0]))
    }

    /// Index into [`Partition::blocks`] of [`Partition::block_of`].
    pub fn block_index_of(&self, p: usize) -> Result<usize> {
        self.check_point(p)?;
        let mut hit = None;
        for (i, b) in self.blocks.iter().enumerate() {
            if b.binary_search(&p).is_ok() {
                if b[0] == p {
                    return Ok(i);
                }
                hit.get_or_insert(i);
            }
        }
        Ok(hit.expect("blocks cover the ground set"))
    }

    /// For each block, whether it is exterior: no other block `D` has
    /// `min D < min B <= max D`.
    pub fn exterior_flags(&self) -> Vec<bool> {
        // Sorted by minimum, so only earlier blocks can cover a later one.
        let mut reach = 0;
        self.blocks
            .iter()
            .map(|b| {
                let exterior = b[0] > reach;
                reach = reach.max(*b.last().unwrap());
                exterior
            })
            .collect()
    }

    /// `s(π)`: points that are the minimum of no block.
    pub fn non_minimal(&self) -> Vec<usize> {
        let mut is_min = vec![false; self.n + 1];
        for b in &self.blocks {
            is_min[b[0]] = true;
        }
        (1..=self.n).filter(|&p| !is_min[p]).collect()
    }

    pub fn split_blocks(&self) -> BlockSplit {
        let mut split = BlockSplit { exterior: Vec::new(), interior: Vec::new(), singles: Vec::new() };
        for (b, ext) in self.blocks.iter().zip(self.exterior_flags()) {
            if ext {
                split.exterior.push(b.clone());
            } else {
                split.interior.push(b.clone());
            }
        }
        if K::LINKED {
            split.singles = self.non_minimal();
        }
        split
    }

    /// `c(π)`: blocks merged along shared points.
    pub fn connect(&self) -> NcPartition {
        let mut sets = ops::DisjointSets::new(self.n);
        for b in &self.blocks {
            for &p in &b[1..] {
                sets.union(b[0], p);
            }
        }
        NcPartition::from_canonical(self.n, sets.groups())
    }

    pub fn is_connected(&self) -> bool {
        self.connect().num_blocks() == 1
    }

    /// `π ⊕ σ` on `{1..n+m}`, with `σ` shifted by `n`.
    pub fn juxtapose(&self, other: &Self) -> Result<Self> {
        check_size(self.n + other.n, HARD_MAX_N)?;
        let shifted = other.blocks.iter().map(|b| b.iter().map(|&p| p + self.n).collect());
        let blocks = self.blocks.iter().cloned().chain(shifted).collect();
        Ok(Partition { n: self.n + other.n, blocks, kind: PhantomData })
    }

    /// Whether every block lies within one parity class.
    pub fn is_parity_separated(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&p| p % 2 == b[0] % 2))
    }

    /// Restriction to a set of points given in increasing order, relabelled
    /// as `1..points.len()`. Only meaningful when every block lies inside or
    /// outside `points`.
    fn restrict_to(&self, points: &[usize]) -> Self {
        let mut label = vec![0; self.n + 1];
        for (i, &p) in points.iter().enumerate() {
            label[p] = i + 1;
        }
        let blocks = self
            .blocks
            .iter()
            .filter(|b| label[b[0]] != 0)
            .map(|b| b.iter().map(|&p| label[p]).collect())
            .collect();
        Partition { n: points.len(), blocks, kind: PhantomData }
    }

    pub fn to_linked(&self) -> NclPartition {
        Partition { n: self.n, blocks: self.blocks.clone(), kind: PhantomData }
    }

    /// Some(NC partition) when no two blocks share a point.
    pub fn to_nc(&self) -> Option<NcPartition> {
        let total: usize = self.blocks.iter().map(Vec::len).sum();
        (total == self.n).then(|| Partition { n: self.n, blocks: self.blocks.clone(), kind: PhantomData })
    }
}

impl NclPartition {
    /// The order on `NCL(n)`: `self ⪰ other` when every block of `self` is a
    /// union of blocks of `other`.
    pub fn dominates(&self, other: &NclPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let theirs: Vec<u32> = other.blocks.iter().map(|b| mask_of(b)).collect();
        self.blocks.iter().all(|b| {
            let mine = mask_of(b);
            let cover = theirs.iter().filter(|&&d| d & !mine == 0).fold(0, |acc, d| acc | d);
            cover == mine
        })
    }
}

impl NcPartition {
    /// The Kreweras complement, as the cycles of `π⁻¹ ∘ γ_n` where the blocks
    /// of `π` are read as increasing cycles and `γ_n = (1 2 ... n)`.
    pub fn kreweras(&self) -> NcPartition {
        let n = self.n;
        let mut prev = vec![0; n + 1];
        for b in &self.blocks {
            for (i, &p) in b.iter().enumerate() {
                prev[p] = if i == 0 { *b.last().unwrap() } else { b[i - 1] };
            }
        }
        let step = |i: usize| prev[if i == n { 1 } else { i + 1 }];
        let mut seen = vec![false; n + 1];
        let mut blocks = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = step(i);
            }
            cycle.sort_unstable();
            blocks.push(cycle);
        }
        blocks.sort();
        Partition { n, blocks, kind: PhantomData }
    }

    /// `σ̂ ∈ NC(2n)`: each point `i` becomes the pair `2i-1, 2i`.
    pub fn double_hat(&self) -> Result<NcPartition> {
        check_size(2 * self.n, HARD_MAX_N)?;
        let blocks = self.blocks.iter().map(|b| b.iter().flat_map(|&i| [2 * i - 1, 2 * i]).collect()).collect();
        Ok(Partition { n: 2 * self.n, blocks, kind: PhantomData })
    }
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << (n + 1)) - 2) as u32
}

/// Streams `NC(n)` in lexicographic order of block lists. The callback may
/// stop the traversal early by returning `ControlFlow::Break`.
pub fn for_each_nc<F>(n: usize, max_n: usize, mut f: F) -> Result<()>
where
    F: FnMut(NcPartition) -> ControlFlow<()>,
{
    check_size(n, max_n)?;
    let _ = generate(n, false, &|_, _| true, &mut |m| f(Partition::from_masks(n, m)));
    Ok(())
}

/// Streams `NCL(n)` in lexicographic order of block lists.
pub fn for_each_ncl<F>(n: usize, max_n: usize, mut f: F) -> Result<()>
where
    F: FnMut(NclPartition) -> ControlFlow<()>,
{
    check_size(n, max_n)?;
    let _ = generate(n, true, &|_, _| true, &mut |m| f(Partition::from_masks(n, m)));
    Ok(())
}

/// Streams the partitions of the given kind whose blocks only group points
/// with equal `labels` (`labels[p - 1]` is the label of point `p`).
pub fn for_each_monochromatic<K, L, F>(labels: &[L], mut f: F) -> Result<()>
where
    K: Kind,
    L: PartialEq,
    F: FnMut(Partition<K>) -> ControlFlow<()>,
{
    let n = labels.len();
    check_size(n, HARD_MAX_N)?;
    let same = |a: usize, b: usize| labels[a - 1] == labels[b - 1];
    let _ = generate(n, K::LINKED, &same, &mut |m| f(Partition::from_masks(n, m)));
    Ok(())
}

pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    enumerate_nc_up_to(n, DEFAULT_MAX_N)
}

pub fn enumerate_nc_up_to(n: usize, max_n: usize) -> Result<Vec<NcPartition>> {
    let mut out = Vec::new();
    for_each_nc(n, max_n, |p| {
        out.push(p);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn enumerate_ncl(n: usize) -> Result<Vec<NclPartition>> {
    enumerate_ncl_up_to(n, DEFAULT_MAX_N)
}

pub fn enumerate_ncl_up_to(n: usize, max_n: usize) -> Result<Vec<NclPartition>> {
    let mut out = Vec::new();
    for_each_ncl(n, max_n, |p| {
        out.push(p);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `NCL_S(2n)`: linked partitions of `{1..2n}` whose blocks have a single parity.
pub fn enumerate_ncl_parity(n: usize) -> Result<Vec<NclPartition>> {
    check_size(2 * n, DEFAULT_MAX_N)?;
    let labels: Vec<usize> = (1..=2 * n).map(|p| p % 2).collect();
    let mut out = Vec::new();
    for_each_monochromatic(&labels, |p| {
        out.push(p);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

impl<K: Kind> fmt::Display for Partition<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, p) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<K: Kind> fmt::Debug for Partition<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", if K::LINKED { "NCL" } else { "NC" }, self)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl<K: Kind> Serialize for Partition<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson { n: self.n, blocks: self.blocks.clone() }.serialize(s)
    }
}

impl<'de, K: Kind> Deserialize<'de> for Partition<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PartitionJson::deserialize(d)?;
        Partition::new(raw.n, raw.blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn nc(n: usize, blocks: &[&[usize]]) -> NcPartition {
        NcPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    pub(crate) fn ncl(n: usize, blocks: &[&[usize]]) -> NclPartition {
        NclPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn example_nc() -> NcPartition {
        nc(10, &[&[1, 5, 6], &[2, 3], &[4], &[7, 10], &[8, 9]])
    }

    fn example_ncl() -> NclPartition {
        ncl(12, &[&[1, 4, 6, 9], &[2, 3], &[4, 5], &[6, 7, 8], &[10, 11], &[11, 12]])
    }

    /// All set partitions of `{1..n}` (restricted growth strings).
    fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
        fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if i > n {
                out.push(cur.clone());
                return;
            }
            for b in 0..cur.len() {
                cur[b].push(i);
                rec(i + 1, n, cur, out);
                cur[b].pop();
            }
            cur.push(vec![i]);
            rec(i + 1, n, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        rec(1, n, &mut Vec::new(), &mut out);
        out
    }

    fn crosses_naive(a: &[usize], b: &[usize]) -> bool {
        for &i in a {
            for &p in a {
                for &k in b {
                    for &q in b {
                        if i < k && k < p && p < q {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn nc_naive(blocks: &[Vec<usize>]) -> bool {
        (0..blocks.len()).all(|i| (0..blocks.len()).all(|j| i == j || !crosses_naive(&blocks[i], &blocks[j])))
    }

    #[test]
    fn enumerate_nc_matches_crossing_filter() {
        for n in 1..=8 {
            let mut expected: Vec<Vec<Vec<usize>>> = set_partitions(n).into_iter().filter(|p| nc_naive(p)).collect();
            for p in &mut expected {
                p.sort();
            }
            expected.sort();
            let got: Vec<_> = enumerate_nc(n).unwrap().into_iter().map(Partition::into_blocks).collect();
            assert_eq!(got, expected, "n = {n}");
        }
    }

    /// Independent NCL oracle. Removing each linking point from the block
    /// where it is minimal leaves a set partition, so every candidate is a
    /// set partition in which some blocks gain one smaller point as a new
    /// minimum; candidates are then filtered by the defining conditions.
    fn ncl_naive(n: usize) -> Vec<Vec<Vec<usize>>> {
        fn rec(j: usize, base: &[Vec<usize>], cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if j == base.len() {
                out.push(cur.clone());
                return;
            }
            for extra in std::iter::once(None).chain((1..base[j][0]).map(Some)) {
                let mut b = base[j].clone();
                if let Some(p) = extra {
                    b.insert(0, p);
                }
                cur.push(b);
                rec(j + 1, base, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        for base in set_partitions(n) {
            rec(0, &base, &mut Vec::new(), &mut out);
        }
        out.into_iter().filter_map(|bs| NclPartition::new(n, bs).ok().map(Partition::into_blocks)).collect()
    }

    #[test]
    fn enumerate_ncl_matches_definition_filter() {
        for n in 1..=7 {
            let mut expected = ncl_naive(n);
            expected.sort();
            expected.dedup();
            let got: Vec<_> = enumerate_ncl(n).unwrap().into_iter().map(Partition::into_blocks).collect();
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn enumeration_examples() {
        let two = enumerate_nc(2).unwrap();
        assert_eq!(two, vec![nc(2, &[&[1], &[2]]), nc(2, &[&[1, 2]])]);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        assert!(enumerate_nc(10).unwrap().contains(&example_nc()));
        assert_eq!(enumerate_ncl(1).unwrap(), vec![ncl(1, &[&[1]])]);
        let three = enumerate_ncl(3).unwrap();
        assert!(three.contains(&ncl(3, &[&[1, 2], &[2, 3]])));
        assert!(NclPartition::new(3, vec![vec![1, 2], vec![1, 3]]).is_err());
        assert!(matches!(enumerate_nc(13), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_ncl(0), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn ncl_twelve_contains_example() {
        let target = example_ncl();
        let mut found = false;
        let mut count = 0usize;
        for_each_ncl(12, DEFAULT_MAX_N, |p| {
            count += 1;
            if p == target {
                found = true;
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(found);
        assert_eq!(count, 5_293_446);
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(NcPartition::new(4, vec![vec![1, 3], vec![2, 4]]).is_err());
        assert!(NcPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(NcPartition::new(3, vec![vec![1, 2]]).is_err());
        assert!(matches!(NcPartition::new(2, vec![vec![1, 3]]), Err(Error::OutOfRange { p: 3, n: 2 })));
        assert!(NclPartition::new(3, vec![vec![1, 2], vec![2], vec![3]]).is_err());
        assert!(NclPartition::new(3, vec![vec![1, 3], vec![2, 3]]).is_err());
        assert!(NclPartition::new(3, vec![vec![1, 2], vec![2, 3]]).is_ok());
    }

    #[test]
    fn every_nc_partition_is_linked_valid() {
        for n in 1..=8 {
            for p in enumerate_nc(n).unwrap() {
                assert!(NclPartition::new(n, p.blocks().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn block_of_examples() {
        assert_eq!(example_nc().block_of(4).unwrap(), &[4]);
        assert_eq!(NcPartition::one(5).block_of(3).unwrap(), &[1, 2, 3, 4, 5]);
        assert_eq!(example_ncl().block_of(6).unwrap(), &[6, 7, 8]);
        assert_eq!(example_ncl().blocks_containing(6).unwrap().len(), 2);
        assert!(example_nc().block_of(11).is_err());
    }

    #[test]
    fn split_examples() {
        let s = example_ncl().split_blocks();
        assert_eq!(s.exterior, vec![vec![1, 4, 6, 9], vec![10, 11]]);
        assert_eq!(s.singles, vec![3, 5, 7, 8, 9, 12]);
        let s = example_nc().split_blocks();
        assert_eq!(s.exterior, vec![vec![1, 5, 6], vec![7, 10]]);
        assert_eq!(s.interior, vec![vec![2, 3], vec![4], vec![8, 9]]);
        assert!(s.singles.is_empty());
        let s = ncl(3, &[&[1, 2], &[2, 3]]).split_blocks();
        assert_eq!(s.exterior, vec![vec![1, 2]]);
    }

    #[test]
    fn exterior_rule_matches_nesting_test_on_nc() {
        for n in 1..=7 {
            for p in enumerate_nc(n).unwrap() {
                let flags = p.exterior_flags();
                for (b, ext) in p.blocks().iter().zip(flags) {
                    let nested = p.blocks().iter().any(|d| {
                        d != b && d.iter().any(|&l| l < b[0]) && d.iter().any(|&s| s > *b.last().unwrap())
                    });
                    assert_eq!(ext, !nested);
                }
            }
        }
    }

    #[test]
    fn connect_examples() {
        let c = example_ncl().connect();
        assert_eq!(c, nc(12, &[&[1, 4, 5, 6, 7, 8, 9], &[2, 3], &[10, 11, 12]]));
        assert_eq!(ncl(3, &[&[1, 2], &[2, 3]]).connect(), NcPartition::one(3));
        for p in enumerate_nc(6).unwrap() {
            assert_eq!(p.connect(), p);
        }
    }

    #[test]
    fn kreweras_examples() {
        for n in 1..=8 {
            assert_eq!(NcPartition::one(n).kreweras(), NcPartition::zero(n));
            assert_eq!(NcPartition::zero(n).kreweras(), NcPartition::one(n));
        }
        assert_eq!(nc(3, &[&[1, 3], &[2]]).kreweras(), nc(3, &[&[1, 2], &[3]]));
        for g in enumerate_nc(6).unwrap() {
            assert_eq!(g.num_blocks() + g.kreweras().num_blocks(), 7);
        }
    }

    /// Interleave γ on odd slots and σ on even slots of `1, 1̄, ..., n, n̄`.
    fn interleave(g: &NcPartition, s: &NcPartition) -> Vec<Vec<usize>> {
        g.blocks()
            .iter()
            .map(|b| b.iter().map(|&i| 2 * i - 1).collect())
            .chain(s.blocks().iter().map(|b| b.iter().map(|&i| 2 * i).collect()))
            .collect()
    }

    fn finer_or_equal(a: &NcPartition, b: &NcPartition) -> bool {
        a.blocks().iter().all(|x| b.blocks().iter().any(|y| x.iter().all(|p| y.contains(p))))
    }

    #[test]
    fn kreweras_is_the_maximal_interleaving_partner() {
        for n in 1..=6 {
            let all = enumerate_nc(n).unwrap();
            for g in &all {
                let partners: Vec<&NcPartition> = all.iter().filter(|s| nc_naive(&interleave(g, s))).collect();
                let maxima: Vec<&&NcPartition> =
                    partners.iter().filter(|s| partners.iter().all(|t| !finer_or_equal(s, t) || t == *s)).collect();
                assert_eq!(maxima.len(), 1, "unique maximum for {g}");
                assert_eq!(**maxima[0], g.kreweras(), "n = {n}, g = {g}");
            }
        }
    }

    #[test]
    fn juxtapose_examples() {
        let z = NcPartition::zero(2).juxtapose(&NcPartition::zero(3)).unwrap();
        assert_eq!(z, NcPartition::zero(5));
        let j = nc(2, &[&[1, 2]]).juxtapose(&nc(3, &[&[1, 3], &[2]])).unwrap();
        assert_eq!(j, nc(5, &[&[1, 2], &[3, 5], &[4]]));
        let t = nc(4, &[&[1, 2], &[3, 4]])
            .juxtapose(&NcPartition::one(3))
            .unwrap()
            .juxtapose(&NcPartition::one(1))
            .unwrap();
        assert_eq!(t, nc(8, &[&[1, 2], &[3, 4], &[5, 6, 7], &[8]]));
    }

    #[test]
    fn double_hat_examples() {
        assert_eq!(NcPartition::zero(3).double_hat().unwrap(), nc(6, &[&[1, 2], &[3, 4], &[5, 6]]));
        assert_eq!(NcPartition::one(2).double_hat().unwrap(), NcPartition::one(4));
        assert_eq!(nc(3, &[&[1, 3], &[2]]).double_hat().unwrap(), nc(6, &[&[1, 2, 5, 6], &[3, 4]]));
    }

    #[test]
    fn dominance_order() {
        let fine = ncl(3, &[&[1, 2], &[2, 3]]);
        assert!(NclPartition::one(3).dominates(&NclPartition::zero(3)));
        assert!(!NclPartition::zero(3).dominates(&NclPartition::one(3)));
        assert!(fine.dominates(&fine));
        assert!(NclPartition::one(3).dominates(&fine));
        assert!(fine.dominates(&NclPartition::zero(3)));
        assert!(!fine.dominates(&NclPartition::one(3)));
        assert!(!NclPartition::zero(3).dominates(&fine));
    }

    #[test]
    fn json_roundtrip() {
        let p = example_ncl();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":12,"blocks":[[1,4,6,9],[2,3],[4,5],[6,7,8],[10,11],[11,12]]}"#);
        let back: NclPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NcPartition>(&s).is_err());
    }
}
