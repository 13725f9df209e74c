use crate::error::{Error, Result};
use crate::partitions::{parity_split, NclPartition, HARD_MAX_N};

use super::{BicolorPlanarTree, PlanarTree};

/// Index of the block whose minimum is `p`, for every point `p`.
fn block_by_min(pi: &NclPartition) -> Vec<Option<usize>> {
    let mut out = vec![None; pi.n() + 1];
    for (i, b) in pi.blocks().iter().enumerate() {
        out[b[0]] = Some(i);
    }
    out
}

fn non_minimal_of(pi: &NclPartition, block: Option<usize>) -> &[usize] {
    block.map_or(&[], |i| &pi.blocks()[i][1..])
}

/// `Θ`: a connected linked partition becomes the planar tree in which the
/// offspring of vertex `p` are the non-minimal points of the block starting at `p`.
pub fn theta(pi: &NclPartition) -> Result<PlanarTree> {
    if !pi.is_connected() {
        return Err(Error::Domain(format!("{pi} is not connected")));
    }
    let by_min = block_by_min(pi);
    fn build(p: usize, pi: &NclPartition, by_min: &[Option<usize>]) -> PlanarTree {
        let kids = non_minimal_of(pi, by_min[p]);
        PlanarTree::new(kids.iter().map(|&q| build(q, pi, by_min)).collect())
    }
    Ok(build(1, pi, &by_min))
}

/// `Θ⁻¹`: every elementary tree, read through the left depth-first numbering,
/// is a block.
pub fn theta_inv(tree: &PlanarTree) -> Result<NclPartition> {
    let labels = tree.child_labels();
    if labels.len() > HARD_MAX_N {
        return Err(Error::SizeLimit { n: labels.len(), max: HARD_MAX_N });
    }
    let blocks = labels
        .iter()
        .enumerate()
        .filter(|(v, kids)| *v == 0 || !kids.is_empty())
        .map(|(v, kids)| std::iter::once(v + 1).chain(kids.iter().copied()).collect())
        .collect();
    NclPartition::new(labels.len(), blocks)
}

/// Whether `σ` is in the domain of [`lambda`]: parity-separated, with
/// `c(σ)_+ = Kr(c(σ)_-)`.
pub fn in_lambda_domain(sigma: &NclPartition) -> bool {
    parity_split(sigma, None).is_ok_and(|s| s.class_in_nc0)
}

/// `Λ`: a parity-separated linked partition of `{1..2n}` whose connected
/// components form a Kreweras pair becomes a bicolor tree on `n` vertices.
///
/// Each vertex owns one odd and one even point. The root owns `1` and the
/// minimum of the component of `2n`; a vertex entered through the point `q`
/// owns `q` and the minimum of the component of `q - 1`. The colour-1
/// offspring are the non-minimal points of the block starting at the odd
/// point, the colour-0 offspring those of the block starting at the even one.
pub fn lambda(sigma: &NclPartition) -> Result<BicolorPlanarTree> {
    let split = parity_split(sigma, None)?;
    if !split.class_in_nc0 {
        return Err(Error::Domain(format!("the components of {sigma} are not a Kreweras pair")));
    }
    let two_n = sigma.n();
    let mut component_min = vec![0; two_n + 1];
    for b in sigma.connect().blocks() {
        for &p in b {
            component_min[p] = b[0];
        }
    }
    let by_min = block_by_min(sigma);
    fn grow(
        slots: (usize, usize),
        sigma: &NclPartition,
        by_min: &[Option<usize>],
        component_min: &[usize],
    ) -> BicolorPlanarTree {
        let (odd, even) = slots;
        let ones = non_minimal_of(sigma, by_min[odd]);
        let zeros = non_minimal_of(sigma, by_min[even]);
        let children = ones
            .iter()
            .chain(zeros)
            .map(|&q| {
                let partner = component_min[q - 1];
                let slots = if q % 2 == 1 { (q, partner) } else { (partner, q) };
                grow(slots, sigma, by_min, component_min)
            })
            .collect();
        BicolorPlanarTree { children, ones: ones.len() }
    }
    let tree = grow((1, component_min[two_n]), sigma, &by_min, &component_min);
    debug_assert_eq!(tree.size(), two_n / 2);
    Ok(tree)
}

/// `Λ⁻¹`: lays the tree out on `{1..2n}`. Each vertex first receives the
/// point of the colour opposite to its incoming edge, followed by the
/// subtrees hanging from it, then its own point and the subtrees hanging
/// from that. The root counts as entered through a colour-0 edge.
pub fn lambda_inv(tree: &BicolorPlanarTree) -> Result<NclPartition> {
    fn layout(
        t: &BicolorPlanarTree,
        own_is_one: bool,
        is_root: bool,
        pos: &mut usize,
        blocks: &mut Vec<Vec<usize>>,
    ) -> usize {
        let (ones, zeros) = t.children.split_at(t.ones);
        let (own, opposite) = if own_is_one { (ones, zeros) } else { (zeros, ones) };
        *pos += 1;
        let mut block = vec![*pos];
        for c in opposite {
            block.push(layout(c, !own_is_one, false, pos, blocks));
        }
        blocks.push(block);
        *pos += 1;
        let me = *pos;
        let mut block = vec![me];
        for c in own {
            block.push(layout(c, own_is_one, false, pos, blocks));
        }
        if is_root || block.len() > 1 {
            blocks.push(block);
        }
        me
    }
    let n = tree.size();
    if 2 * n > HARD_MAX_N {
        return Err(Error::SizeLimit { n: 2 * n, max: HARD_MAX_N });
    }
    let mut blocks = Vec::new();
    layout(tree, false, true, &mut 0, &mut blocks);
    NclPartition::new(2 * n, blocks)
}
