use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::Serialize;

use super::generate::{mask_of, masks_cross};
use super::{check_size, for_each_ncl, Kind, NcPartition, NclPartition, Partition, DEFAULT_MAX_N, HARD_MAX_N};
use crate::error::{Error, Result};

/// Union-find over the points `1..=n`.
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets { parent: (0..=n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller point as root so groups come out keyed by minimum
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// The classes as sorted blocks, ordered by minimum.
    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len() - 1;
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for p in 1..=n {
            let r = self.find(p);
            by_root[r].push(p);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

/// Least upper bound in `NC(n)`: the union relation of both partitions,
/// coarsened until no two blocks cross.
pub fn nc_join(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    let n = a.n();
    let mut sets = DisjointSets::new(n);
    for blk in a.blocks().iter().chain(b.blocks()) {
        for &p in &blk[1..] {
            sets.union(blk[0], p);
        }
    }
    'outer: loop {
        let masks: Vec<u32> = sets.groups().iter().map(|g| mask_of(g)).collect();
        for i in 0..masks.len() {
            for j in (i + 1)..masks.len() {
                if masks_cross(masks[i], masks[j]) {
                    let (x, y) = (masks[i].trailing_zeros() as usize, masks[j].trailing_zeros() as usize);
                    sets.union(x, y);
                    continue 'outer;
                }
            }
        }
        return Ok(NcPartition::from_canonical(n, sets.groups()));
    }
}

/// Connected members of `NCL(k)`, `[1_k]`, cached per `k`.
fn connected_members(k: usize) -> Result<&'static [Vec<Vec<usize>>]> {
    static CACHE: [OnceLock<Vec<Vec<Vec<usize>>>>; HARD_MAX_N + 1] = [const { OnceLock::new() }; HARD_MAX_N + 1];
    check_size(k, DEFAULT_MAX_N)?;
    Ok(CACHE[k].get_or_init(|| {
        let mut out = Vec::new();
        for_each_ncl(k, DEFAULT_MAX_N, |p| {
            if p.is_connected() {
                out.push(p.into_blocks());
            }
            ControlFlow::Continue(())
        })
        .expect("size already checked");
        out
    }))
}

/// `[γ] = {σ ∈ NCL(n) : c(σ) = γ}`, built as the product over the blocks of
/// `γ` of the connected linked partitions of each block. Returned in
/// canonical order.
pub fn class_members(gamma: &NcPartition) -> Result<Vec<NclPartition>> {
    check_size(gamma.n(), DEFAULT_MAX_N)?;
    let mut partial: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for block in gamma.blocks() {
        let local = connected_members(block.len())?;
        let mut next = Vec::with_capacity(partial.len() * local.len());
        for prefix in &partial {
            for pattern in local {
                let mut blocks = prefix.clone();
                blocks.extend(pattern.iter().map(|b| b.iter().map(|&i| block[i - 1]).collect::<Vec<_>>()));
                next.push(blocks);
            }
        }
        partial = next;
    }
    let mut out: Vec<NclPartition> = partial
        .into_iter()
        .map(|mut blocks| {
            blocks.sort();
            Partition::from_canonical(gamma.n(), blocks)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// A parity-separated partition of `{1..2n}` split into its odd part `π_-`
/// and even part `π_+`, each relabelled onto `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParitySplit<K: Kind> {
    pub minus: Partition<K>,
    pub plus: Partition<K>,
    /// No shared points, i.e. the partition lies in `NC_S(2n)`.
    pub in_ncs: bool,
    /// In `NC_S(2n)` and `π_+ = Kr(π_-)`.
    pub in_nc0: bool,
    /// `c(π)` lies in `NC_0(2n)`; equals `in_nc0` for non-crossing input.
    pub class_in_nc0: bool,
    /// `c(π) ∨ 0̂_n = τ̂` for the requested target `τ`.
    pub join_matches: Option<bool>,
}

fn nc0(c: &NcPartition) -> bool {
    let odd: Vec<usize> = (1..=c.n()).step_by(2).collect();
    let even: Vec<usize> = (2..=c.n()).step_by(2).collect();
    c.restrict_to(&even) == c.restrict_to(&odd).kreweras()
}

/// Splits a parity-separated partition; optionally evaluates the join
/// condition `c(π) ∨ 0̂_n = τ̂` against `target = τ ∈ NC(n)`.
pub fn parity_split<K: Kind>(pi: &Partition<K>, target: Option<&NcPartition>) -> Result<ParitySplit<K>> {
    if !pi.n().is_multiple_of(2) {
        return Err(Error::Domain(format!("parity split needs an even ground set, got {}", pi.n())));
    }
    if let Some(b) = pi.blocks().iter().find(|b| b.iter().any(|&p| p % 2 != b[0] % 2)) {
        return Err(Error::NotParitySeparated(b.clone()));
    }
    let half = pi.n() / 2;
    let odd: Vec<usize> = (1..=pi.n()).step_by(2).collect();
    let even: Vec<usize> = (2..=pi.n()).step_by(2).collect();
    let minus = pi.restrict_to(&odd);
    let plus = pi.restrict_to(&even);
    let as_nc = pi.to_nc();
    let in_ncs = as_nc.is_some();
    let in_nc0 = as_nc.as_ref().is_some_and(nc0);
    let c = pi.connect();
    let class_in_nc0 = nc0(&c);
    let join_matches = match target {
        None => None,
        Some(t) => {
            if t.n() != half {
                return Err(Error::DimensionMismatch { left: half, right: t.n() });
            }
            let pairs = NcPartition::zero(half).double_hat()?;
            Some(nc_join(&c, &pairs)? == t.double_hat()?)
        }
    };
    Ok(ParitySplit { minus, plus, in_ncs, in_nc0, class_in_nc0, join_matches })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{nc, ncl};
    use super::super::{enumerate_nc, enumerate_ncl, enumerate_ncl_parity};
    use super::*;

    #[test]
    fn join_examples() {
        for p in enumerate_nc(5).unwrap() {
            assert_eq!(nc_join(&p, &NcPartition::zero(5)).unwrap(), p);
            assert_eq!(nc_join(&p, &NcPartition::one(5)).unwrap(), NcPartition::one(5));
        }
        let j = nc_join(&nc(3, &[&[1, 3], &[2]]), &nc(3, &[&[1], &[2, 3]])).unwrap();
        assert_eq!(j, NcPartition::one(3));
        // union is (1,3),(2,4) which crosses, so the join is 1_4
        let j = nc_join(&nc(4, &[&[1, 3], &[2], &[4]]), &nc(4, &[&[1], &[2, 4], &[3]])).unwrap();
        assert_eq!(j, NcPartition::one(4));
    }

    fn refines(fine: &NcPartition, coarse: &NcPartition) -> bool {
        fine.blocks().iter().all(|x| coarse.blocks().iter().any(|y| x.iter().all(|p| y.contains(p))))
    }

    #[test]
    fn join_is_least_upper_bound() {
        let all = enumerate_nc(5).unwrap();
        for a in all.iter().step_by(3) {
            for b in all.iter().step_by(5) {
                let j = nc_join(a, b).unwrap();
                let uppers: Vec<_> = all.iter().filter(|u| refines(a, u) && refines(b, u)).collect();
                assert!(uppers.contains(&&j));
                assert!(uppers.iter().all(|u| refines(&j, u)));
            }
        }
    }

    #[test]
    fn class_examples() {
        let c = class_members(&NcPartition::one(3)).unwrap();
        assert_eq!(c, vec![ncl(3, &[&[1, 2], &[2, 3]]), NclPartition::one(3)]);
        assert_eq!(class_members(&nc(5, &[&[1, 2], &[3, 4, 5]])).unwrap().len(), 2);
        for n in 1..=6 {
            assert_eq!(class_members(&NcPartition::zero(n)).unwrap(), vec![NclPartition::zero(n)]);
        }
    }

    #[test]
    fn classes_match_filtering_and_factorise() {
        for n in 1..=7 {
            let all = enumerate_ncl(n).unwrap();
            let mut total = 0;
            for g in enumerate_nc(n).unwrap() {
                let members = class_members(&g).unwrap();
                let filtered: Vec<_> = all.iter().filter(|s| s.connect() == g).cloned().collect();
                assert_eq!(members, filtered, "class of {g}");
                let product: usize =
                    g.blocks().iter().map(|b| class_members(&NcPartition::one(b.len())).unwrap().len()).product();
                assert_eq!(members.len(), product);
                total += members.len();
            }
            assert_eq!(total, all.len());
        }
    }

    #[test]
    fn parity_examples() {
        let p = nc(12, &[&[1, 7], &[2, 6], &[3, 5], &[4], &[8, 12], &[9, 11], &[10]]);
        let s = parity_split(&p, None).unwrap();
        assert!(s.in_ncs);
        assert_eq!(s.minus, nc(6, &[&[1, 4], &[2, 3], &[5, 6]]));
        assert_eq!(s.plus, nc(6, &[&[1, 3], &[2], &[4, 6], &[5]]));
        let pairs = NcPartition::zero(3).double_hat().unwrap();
        assert!(matches!(parity_split(&pairs, None), Err(Error::NotParitySeparated(_))));
        // π_- = 1_n on odd points, π_+ = 0_n on even points
        let q = nc(6, &[&[1, 3, 5], &[2], &[4], &[6]]);
        let s = parity_split(&q, None).unwrap();
        assert_eq!(s.minus, NcPartition::one(3));
        assert_eq!(s.plus, NcPartition::zero(3));
        assert!(s.in_nc0);
        assert!(matches!(parity_split(&NcPartition::zero(3), None), Err(Error::Domain(_))));
    }

    #[test]
    fn nc0_iff_join_with_pairs_is_full() {
        for n in 1..=5 {
            for s in enumerate_ncl_parity(n).unwrap() {
                let split = parity_split(&s, Some(&NcPartition::one(n))).unwrap();
                if split.in_ncs {
                    assert_eq!(split.in_nc0, split.join_matches.unwrap(), "{s}");
                }
            }
        }
    }

    /// Every `σ ∈ NC_S(2n)` meets the join condition for exactly one `τ`.
    #[test]
    fn join_classes_partition_nc_s() {
        for n in 1..=4 {
            let all_nc = enumerate_nc(n).unwrap();
            for s in enumerate_ncl_parity(n).unwrap().into_iter().filter_map(|s| s.to_nc()) {
                let hits = all_nc
                    .iter()
                    .filter(|t| parity_split(&s, Some(t)).unwrap().join_matches.unwrap())
                    .count();
                assert_eq!(hits, 1, "{s}");
            }
        }
    }

    #[test]
    fn ncl_parity_counts() {
        // NC_0(2n) has Catalan many elements; its class closure is counted by
        // the ternary numbers.
        let nc0_counts: Vec<usize> = (1..=5)
            .map(|n| {
                enumerate_ncl_parity(n)
                    .unwrap()
                    .iter()
                    .filter(|s| parity_split(*s, None).unwrap().in_nc0)
                    .count()
            })
            .collect();
        assert_eq!(nc0_counts, vec![1, 2, 5, 14, 42]);
        let ncl0_counts: Vec<usize> = (1..=5)
            .map(|n| {
                enumerate_ncl_parity(n)
                    .unwrap()
                    .iter()
                    .filter(|s| parity_split(*s, None).unwrap().class_in_nc0)
                    .count()
            })
            .collect();
        assert_eq!(ncl0_counts, vec![1, 2, 7, 30, 143]);
        assert_eq!(enumerate_ncl_parity(2).unwrap().len(), 3);
    }
}
