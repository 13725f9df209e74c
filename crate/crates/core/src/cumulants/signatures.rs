//! Partition sums for a single variable only depend on coarse block data,
//! so `NC(n)` and `NCL(n)` are aggregated once per `n` into weighted
//! signatures and reused by every conversion.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::error::Result;
use crate::partitions::{for_each_nc, for_each_ncl, Kind, Partition, DEFAULT_MAX_N, HARD_MAX_N};

/// Block sizes (sorted) and `|s(π)|`, with multiplicity.
#[derive(Debug, Clone)]
pub(crate) struct ScalarSig {
    pub sizes: Vec<usize>,
    pub singles: usize,
    pub count: u64,
}

/// All partitions with the same exterior sizes, in block order. The matrix
/// product is then formed once per group.
#[derive(Debug, Clone)]
pub(crate) struct ExteriorGroup {
    pub exterior: Vec<usize>,
    pub terms: Vec<InteriorTerm>,
}

/// Interior sizes (sorted) and `|s(π)|`, with multiplicity.
#[derive(Debug, Clone)]
pub(crate) struct InteriorTerm {
    pub interior: Vec<usize>,
    pub singles: usize,
    pub count: u64,
}

type Both = (Vec<ScalarSig>, Vec<ExteriorGroup>);

fn scalar_key<K: Kind>(p: &Partition<K>) -> (Vec<usize>, usize) {
    let mut sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let singles = if K::LINKED { p.non_minimal().len() } else { 0 };
    (sizes, singles)
}

fn matrix_key<K: Kind>(p: &Partition<K>) -> (Vec<usize>, Vec<usize>, usize) {
    let mut exterior = Vec::new();
    let mut interior = Vec::new();
    for (b, ext) in p.blocks().iter().zip(p.exterior_flags()) {
        if ext {
            exterior.push(b.len());
        } else {
            interior.push(b.len());
        }
    }
    interior.sort_unstable();
    let singles = if K::LINKED { p.non_minimal().len() } else { 0 };
    (exterior, interior, singles)
}

fn build<K: Kind>(
    n: usize,
    stream: impl FnOnce(&mut dyn FnMut(Partition<K>)) -> Result<()>,
) -> Both {
    let mut scalar: BTreeMap<(Vec<usize>, usize), u64> = BTreeMap::new();
    let mut matrix: BTreeMap<(Vec<usize>, Vec<usize>, usize), u64> = BTreeMap::new();
    stream(&mut |p| {
        *scalar.entry(scalar_key(&p)).or_default() += 1;
        *matrix.entry(matrix_key(&p)).or_default() += 1;
    })
    .unwrap_or_else(|e| panic!("signature enumeration for n = {n}: {e}"));
    let mut groups: Vec<ExteriorGroup> = Vec::new();
    // keys are sorted by exterior sizes first, so groups are contiguous
    for ((exterior, interior, singles), count) in matrix {
        let term = InteriorTerm { interior, singles, count };
        match groups.last_mut() {
            Some(g) if g.exterior == exterior => g.terms.push(term),
            _ => groups.push(ExteriorGroup { exterior, terms: vec![term] }),
        }
    }
    (scalar.into_iter().map(|((sizes, singles), count)| ScalarSig { sizes, singles, count }).collect(), groups)
}

fn nc_both(n: usize) -> Result<&'static Both> {
    static CACHE: [OnceLock<Both>; HARD_MAX_N + 1] = [const { OnceLock::new() }; HARD_MAX_N + 1];
    crate::partitions::check_size(n, DEFAULT_MAX_N)?;
    Ok(CACHE[n].get_or_init(|| {
        build(n, |f| {
            for_each_nc(n, DEFAULT_MAX_N, |p| {
                f(p);
                ControlFlow::Continue(())
            })
        })
    }))
}

fn ncl_both(n: usize) -> Result<&'static Both> {
    static CACHE: [OnceLock<Both>; HARD_MAX_N + 1] = [const { OnceLock::new() }; HARD_MAX_N + 1];
    crate::partitions::check_size(n, DEFAULT_MAX_N)?;
    Ok(CACHE[n].get_or_init(|| {
        build(n, |f| {
            for_each_ncl(n, DEFAULT_MAX_N, |p| {
                f(p);
                ControlFlow::Continue(())
            })
        })
    }))
}

pub(crate) fn nc_scalar(n: usize) -> Result<&'static [ScalarSig]> {
    Ok(&nc_both(n)?.0)
}

pub(crate) fn nc_matrix(n: usize) -> Result<&'static [ExteriorGroup]> {
    Ok(&nc_both(n)?.1)
}

pub(crate) fn ncl_scalar(n: usize) -> Result<&'static [ScalarSig]> {
    Ok(&ncl_both(n)?.0)
}

pub(crate) fn ncl_matrix(n: usize) -> Result<&'static [ExteriorGroup]> {
    Ok(&ncl_both(n)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_add_up() {
        for n in 1..=8 {
            let nc: u64 = nc_scalar(n).unwrap().iter().map(|s| s.count).sum();
            let ncm: u64 = nc_matrix(n).unwrap().iter().flat_map(|g| &g.terms).map(|s| s.count).sum();
            let ncl: u64 = ncl_scalar(n).unwrap().iter().map(|s| s.count).sum();
            let nclm: u64 = ncl_matrix(n).unwrap().iter().flat_map(|g| &g.terms).map(|s| s.count).sum();
            assert_eq!(nc, ncm);
            assert_eq!(ncl, nclm);
            assert_eq!(nc, crate::partitions::enumerate_nc(n).unwrap().len() as u64);
            assert_eq!(ncl, crate::partitions::enumerate_ncl(n).unwrap().len() as u64);
        }
    }

    #[test]
    fn only_the_full_block_has_size_n() {
        for n in 1..=8 {
            let full: Vec<_> = ncl_scalar(n).unwrap().iter().filter(|s| s.sizes.contains(&n)).collect();
            assert_eq!(full.len(), 1);
            assert_eq!((full[0].count, full[0].singles), (1, n - 1));
        }
    }
}
