//! Planar (rooted, ordered) trees and bicolor planar trees, with the
//! bijections `Θ` onto connected linked partitions and `Λ` onto
//! parity-separated linked partitions.
//!
//! Vertices are numbered in left depth-first order (preorder), starting at 1.
//! An elementary tree is a vertex together with its direct offspring; every
//! vertex, leaves included, roots one elementary tree.

mod bijections;

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::DEFAULT_MAX_N;

pub use bijections::{in_lambda_domain, lambda, lambda_inv, theta, theta_inv};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PlanarTree {
    children: Vec<PlanarTree>,
}

/// A planar tree whose edges are coloured 0 or 1, with every vertex's
/// colour-1 children to the left of its colour-0 children.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BicolorPlanarTree {
    children: Vec<BicolorPlanarTree>,
    /// Number of leading colour-1 children.
    ones: usize,
}

fn check_size(n: usize, max_n: usize) -> Result<()> {
    if n == 0 || n > max_n {
        return Err(Error::SizeLimit { n, max: max_n });
    }
    Ok(())
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree { children: Vec::new() }
    }

    pub fn new(children: Vec<PlanarTree>) -> Self {
        PlanarTree { children }
    }

    /// The elementary tree with `n` vertices.
    pub fn elementary(n: usize) -> Self {
        PlanarTree { children: vec![PlanarTree::leaf(); n.saturating_sub(1)] }
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::size).sum::<usize>()
    }

    /// Child counts in left depth-first order; this is the canonical key.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_degrees(&mut out);
        out
    }

    fn push_degrees(&self, out: &mut Vec<usize>) {
        out.push(self.children.len());
        for c in &self.children {
            c.push_degrees(out);
        }
    }

    /// Rebuilds a tree from its preorder child counts.
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        fn build(d: &[usize], pos: &mut usize) -> Option<PlanarTree> {
            let k = *d.get(*pos)?;
            *pos += 1;
            let children = (0..k).map(|_| build(d, pos)).collect::<Option<Vec<_>>>()?;
            Some(PlanarTree { children })
        }
        let mut pos = 0;
        match build(degrees, &mut pos) {
            Some(t) if pos == degrees.len() => Ok(t),
            _ => Err(Error::Parse(format!("{degrees:?} is not a preorder degree sequence"))),
        }
    }

    /// For every vertex in left depth-first order, the labels of its children.
    pub fn child_labels(&self) -> Vec<Vec<usize>> {
        fn walk(t: &PlanarTree, out: &mut Vec<Vec<usize>>) -> usize {
            out.push(Vec::new());
            let me = out.len();
            for c in &t.children {
                let id = walk(c, out);
                out[me - 1].push(id);
            }
            me
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl BicolorPlanarTree {
    pub fn leaf() -> Self {
        BicolorPlanarTree { children: Vec::new(), ones: 0 }
    }

    /// `ones` is the number of leading children attached by colour-1 edges.
    pub fn new(children: Vec<BicolorPlanarTree>, ones: usize) -> Result<Self> {
        if ones > children.len() {
            return Err(Error::Parse(format!("{ones} colour-1 edges but only {} children", children.len())));
        }
        Ok(BicolorPlanarTree { children, ones })
    }

    /// Builds from per-child colours, which must be 1s followed by 0s.
    pub fn from_colors(children: Vec<BicolorPlanarTree>, colors: &[u8]) -> Result<Self> {
        if colors.len() != children.len() {
            return Err(Error::Parse("one colour per child is required".into()));
        }
        if colors.iter().any(|&c| c > 1) || colors.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("colours {colors:?} must be 1s followed by 0s")));
        }
        let ones = colors.iter().filter(|&&c| c == 1).count();
        Ok(BicolorPlanarTree { children, ones })
    }

    /// The bicolor elementary tree with `ones` colour-1 and `zeros` colour-0 offspring.
    pub fn elementary(ones: usize, zeros: usize) -> Self {
        BicolorPlanarTree { children: vec![BicolorPlanarTree::leaf(); ones + zeros], ones }
    }

    pub fn children(&self) -> &[BicolorPlanarTree] {
        &self.children
    }

    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn colors(&self) -> Vec<u8> {
        (0..self.children.len()).map(|i| u8::from(i < self.ones)).collect()
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(BicolorPlanarTree::size).sum::<usize>()
    }

    pub fn underlying(&self) -> PlanarTree {
        PlanarTree { children: self.children.iter().map(BicolorPlanarTree::underlying).collect() }
    }

    /// `(colour-1 count, colour-0 count)` of the elementary tree at each
    /// vertex, in left depth-first order.
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.push_shapes(&mut out);
        out
    }

    fn push_shapes(&self, out: &mut Vec<(usize, usize)>) {
        out.push((self.ones, self.children.len() - self.ones));
        for c in &self.children {
            c.push_shapes(out);
        }
    }

    /// Canonical key: the shapes in left depth-first order.
    pub fn key(&self) -> Vec<(usize, usize)> {
        self.shapes()
    }

    pub fn from_shapes(shapes: &[(usize, usize)]) -> Result<Self> {
        fn build(s: &[(usize, usize)], pos: &mut usize) -> Option<BicolorPlanarTree> {
            let (ones, zeros) = *s.get(*pos)?;
            *pos += 1;
            let children = (0..ones + zeros).map(|_| build(s, pos)).collect::<Option<Vec<_>>>()?;
            Some(BicolorPlanarTree { children, ones })
        }
        let mut pos = 0;
        match build(shapes, &mut pos) {
            Some(t) if pos == shapes.len() => Ok(t),
            _ => Err(Error::Parse(format!("{shapes:?} is not a preorder shape sequence"))),
        }
    }
}

/// Streams preorder degree sequences of trees with `n` vertices in
/// lexicographic order.
fn for_each_degree_sequence<F: FnMut(&[usize]) -> ControlFlow<()>>(n: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize]) -> ControlFlow<()>>(
        n: usize,
        open: usize,
        seq: &mut Vec<usize>,
        f: &mut F,
    ) -> ControlFlow<()> {
        // `open` counts vertices announced by a parent but not yet placed.
        let placed = seq.len();
        if placed == n {
            return if open == 0 { f(seq) } else { ControlFlow::Continue(()) };
        }
        let remaining_after = n - placed - 1;
        let still_open = open - 1;
        for d in 0..=remaining_after - still_open {
            let next_open = still_open + d;
            if next_open == 0 && remaining_after > 0 {
                continue;
            }
            seq.push(d);
            rec(n, next_open, seq, f)?;
            seq.pop();
        }
        ControlFlow::Continue(())
    }
    let _ = rec(n, 1, &mut Vec::with_capacity(n), f);
}

pub fn for_each_tree<F: FnMut(PlanarTree) -> ControlFlow<()>>(n: usize, max_n: usize, mut f: F) -> Result<()> {
    check_size(n, max_n)?;
    for_each_degree_sequence(n, &mut |d| f(PlanarTree::from_degrees(d).expect("valid sequence")));
    Ok(())
}

/// `𝔗(n)` in lexicographic order of preorder degree sequences.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlanarTree>> {
    let mut out = Vec::new();
    for_each_tree(n, DEFAULT_MAX_N, |t| {
        out.push(t);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Streams `𝔅(n)`: for each degree sequence in order, every split of each
/// vertex's children into colour-1 and colour-0 runs, more colour-1 first.
pub fn for_each_bicolor<F>(n: usize, max_n: usize, mut f: F) -> Result<()>
where
    F: FnMut(BicolorPlanarTree) -> ControlFlow<()>,
{
    check_size(n, max_n)?;
    for_each_degree_sequence(n, &mut |d| {
        let mut shapes: Vec<(usize, usize)> = d.iter().map(|&k| (k, 0)).collect();
        loop {
            f(BicolorPlanarTree::from_shapes(&shapes).expect("valid shapes"))?;
            // odometer over the colour-1 counts, last vertex fastest
            let mut i = shapes.len();
            loop {
                if i == 0 {
                    return ControlFlow::Continue(());
                }
                i -= 1;
                let (ones, zeros) = shapes[i];
                if ones > 0 {
                    shapes[i] = (ones - 1, zeros + 1);
                    break;
                }
                shapes[i] = (d[i], 0);
            }
        }
    });
    Ok(())
}

pub fn enumerate_bicolor(n: usize) -> Result<Vec<BicolorPlanarTree>> {
    let mut out = Vec::new();
    for_each_bicolor(n, DEFAULT_MAX_N, |t| {
        out.push(t);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*")?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:?}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BicolorPlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "*")?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}{c:?}", if i < self.ones { "1:" } else { "0:" })?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    children: Vec<TreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<u8>>,
}

impl TreeJson {
    fn from_planar(t: &PlanarTree) -> Self {
        TreeJson { children: t.children.iter().map(TreeJson::from_planar).collect(), colors: None }
    }

    fn from_bicolor(t: &BicolorPlanarTree) -> Self {
        TreeJson { children: t.children.iter().map(TreeJson::from_bicolor).collect(), colors: Some(t.colors()) }
    }

    fn to_planar(&self) -> PlanarTree {
        PlanarTree { children: self.children.iter().map(TreeJson::to_planar).collect() }
    }

    fn to_bicolor(&self) -> Result<BicolorPlanarTree> {
        let children = self.children.iter().map(TreeJson::to_bicolor).collect::<Result<Vec<_>>>()?;
        match &self.colors {
            Some(c) => BicolorPlanarTree::from_colors(children, c),
            None if children.is_empty() => Ok(BicolorPlanarTree::leaf()),
            None => Err(Error::Parse("bicolor tree without colours".into())),
        }
    }
}

impl Serialize for PlanarTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson::from_planar(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(TreeJson::deserialize(d)?.to_planar())
    }
}

impl Serialize for BicolorPlanarTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson::from_bicolor(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BicolorPlanarTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TreeJson::deserialize(d)?.to_bicolor().map_err(serde::de::Error::custom)
    }
}
