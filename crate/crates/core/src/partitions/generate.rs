//! Backtracking generator for non-crossing (linked) partitions.
//!
//! Blocks are built one at a time in order of their minimal element, and
//! each block's elements are chosen in increasing order, so the emitted
//! block lists come out in lexicographic order without any sorting. Blocks
//! are `u32` bitmasks with bit `i` standing for element `i` (1-based).

use std::ops::ControlFlow;

/// True when no two elements of `b` outside `a` are separated by `a`,
/// i.e. `b \ a` sits in a single region cut out by the points of `a`.
/// Everything left of `min a` and right of `max a` counts as one region.
fn single_region(a: u32, others: u32) -> bool {
    let total = a.count_ones();
    let mut region = None;
    let mut rest = others;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        let below = (a & ((1u32 << x) - 1)).count_ones();
        let r = if below == 0 || below == total { 0 } else { below };
        match region {
            None => region = Some(r),
            Some(prev) if prev != r => return false,
            _ => {}
        }
    }
    true
}

/// Whether two blocks cross (`i < k < p < q`, `i, p` in one and `k, q` in
/// the other). A shared element alone never creates a crossing.
pub(crate) fn masks_cross(a: u32, b: u32) -> bool {
    !single_region(a, b & !a) || !single_region(b, a & !b)
}

pub(crate) fn mask_of(block: &[usize]) -> u32 {
    block.iter().fold(0, |m, &e| m | (1u32 << e))
}

pub(crate) fn elements(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

struct Gen<'a, C, E> {
    n: usize,
    linked: bool,
    compatible: &'a C,
    emit: &'a mut E,
    blocks: Vec<u32>,
    covered: u32,
    mins: u32,
    last_min: usize,
}

impl<C, E> Gen<'_, C, E>
where
    C: Fn(usize, usize) -> bool,
    E: FnMut(&[u32]) -> ControlFlow<()>,
{
    fn full(&self) -> u32 {
        ((1u64 << (self.n + 1)) - 2) as u32
    }

    fn step(&mut self) -> ControlFlow<()> {
        let open = self.full() & !self.covered;
        if open == 0 {
            return (self.emit)(&self.blocks);
        }
        let u = open.trailing_zeros() as usize;
        if self.linked {
            for c in (self.last_min + 1)..u {
                let bit = 1u32 << c;
                if self.covered & bit != 0 && self.mins & bit == 0 {
                    self.dfs(c, bit, c, true)?;
                }
            }
        }
        self.dfs(u, 1u32 << u, u, false)
    }

    fn dfs(&mut self, min: usize, block: u32, last: usize, shared: bool) -> ControlFlow<()> {
        if !shared || block.count_ones() >= 2 {
            let saved = (self.covered, self.mins, self.last_min);
            self.blocks.push(block);
            self.covered |= block;
            self.mins |= 1u32 << min;
            self.last_min = min;
            let flow = self.step();
            self.blocks.pop();
            (self.covered, self.mins, self.last_min) = saved;
            flow?;
        }
        for e in (last + 1)..=self.n {
            let bit = 1u32 << e;
            if self.covered & bit != 0 || !(self.compatible)(min, e) {
                continue;
            }
            let next = block | bit;
            if self.blocks.iter().any(|&b| masks_cross(b, next)) {
                continue;
            }
            self.dfs(min, next, e, shared)?;
        }
        ControlFlow::Continue(())
    }
}

/// Streams every non-crossing (`linked = false`) or non-crossing linked
/// (`linked = true`) partition of `{1..n}` whose blocks only join pairs
/// `(min, e)` accepted by `compatible`, in lexicographic order of block lists.
pub(crate) fn generate<C, E>(n: usize, linked: bool, compatible: &C, emit: &mut E) -> ControlFlow<()>
where
    C: Fn(usize, usize) -> bool,
    E: FnMut(&[u32]) -> ControlFlow<()>,
{
    assert!((1..=30).contains(&n), "generator supports 1 <= n <= 30");
    let mut g = Gen { n, linked, compatible, emit, blocks: Vec::new(), covered: 0, mins: 0, last_min: 0 };
    g.step()
}
