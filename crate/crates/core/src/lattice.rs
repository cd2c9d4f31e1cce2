//! The distributive lattice of tilings, stored as an explicit cover graph.
//!
//! Nodes are height functions sorted by their value vectors, so two lattices
//! built from the same tiling set are identical as data.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::heights::{
    compare, height_from_tiling, pointwise_max, pointwise_min, tiling_from_height, Comparison, HeightFunction,
};
use crate::tiling::{flip_height, up_flippable, FlipDir, Tiling};

#[derive(Clone, Debug)]
pub struct TilingLattice {
    domain: Arc<Domain>,
    nodes: Vec<HeightFunction>,
    tilings: Vec<Tiling>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    index: HashMap<Vec<i32>, usize>,
    bottom: usize,
    top: usize,
}

impl PartialEq for TilingLattice {
    fn eq(&self, other: &Self) -> bool {
        *self.domain == *other.domain && self.nodes == other.nodes && self.up == other.up
    }
}

impl Eq for TilingLattice {}

pub fn build_lattice(domain: &Domain, tilings: &[Tiling]) -> Result<TilingLattice> {
    let heights = tilings.iter().map(|t| height_from_tiling(domain, t)).collect::<Result<Vec<_>>>()?;
    TilingLattice::from_heights(Arc::new(domain.clone()), heights)
}

impl TilingLattice {
    /// Build the cover graph of a flip-closed set of height functions.
    pub fn from_heights(domain: Arc<Domain>, mut nodes: Vec<HeightFunction>) -> Result<Self> {
        if nodes.iter().any(|h| !h.belongs_to(&domain)) {
            return Err(Error::DomainMismatch);
        }
        nodes.sort();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(Error::NotFlipClosed);
        }
        let index: HashMap<Vec<i32>, usize> = nodes.iter().enumerate().map(|(i, h)| (h.values.clone(), i)).collect();
        let mut up = vec![Vec::new(); nodes.len()];
        let mut down = vec![Vec::new(); nodes.len()];
        for (i, h) in nodes.iter().enumerate() {
            for v in up_flippable(&domain, h) {
                let next = flip_height(&domain, h, v, FlipDir::Up).expect("local minimum");
                let j = *index.get(&next.values).ok_or(Error::NotFlipClosed)?;
                up[i].push(j);
                down[j].push(i);
            }
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }
        // a flip-closed set has exactly one node without lower covers, and
        // downward flips must stay inside as well
        let minima: Vec<usize> = (0..nodes.len()).filter(|&i| down[i].is_empty()).collect();
        let maxima: Vec<usize> = (0..nodes.len()).filter(|&i| up[i].is_empty()).collect();
        if minima.len() != 1 || maxima.len() != 1 {
            return Err(Error::NotFlipClosed);
        }
        let tilings = nodes.iter().map(|h| tiling_from_height(&domain, h)).collect::<Result<Vec<_>>>()?;
        Ok(TilingLattice { domain, nodes, tilings, up, down, index, bottom: minima[0], top: maxima[0] })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn heights(&self) -> &[HeightFunction] {
        &self.nodes
    }

    pub fn tilings(&self) -> &[Tiling] {
        &self.tilings
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Cover edges as `(lower, upper)` pairs in node order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn position(&self, h: &HeightFunction) -> Option<usize> {
        self.index.get(&h.values).copied()
    }

    pub fn position_of_tiling(&self, t: &Tiling) -> Option<usize> {
        let h = height_from_tiling(&self.domain, t).ok()?;
        self.position(&h)
    }

    /// Rank of a node: its distance to the bottom divided by 3.
    pub fn rank(&self, i: usize) -> u64 {
        let lo = &self.nodes[self.bottom].values;
        let d: i64 = self.nodes[i].values.iter().zip(lo).map(|(&a, &b)| (a - b) as i64).sum();
        (d / 3) as u64
    }

    /// The sub-lattice of nodes between `a` and `b`.
    pub fn interval(&self, a: &Tiling, b: &Tiling) -> Result<TilingLattice> {
        let ha = height_from_tiling(&self.domain, a)?;
        let hb = height_from_tiling(&self.domain, b)?;
        if !ha.le(&hb) {
            return Err(Error::NotComparable);
        }
        self.interval_heights(&ha, &hb)
    }

    pub fn interval_heights(&self, lo: &HeightFunction, hi: &HeightFunction) -> Result<TilingLattice> {
        if !lo.le(hi) {
            return Err(Error::NotComparable);
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| lo.le(&self.nodes[i]) && self.nodes[i].le(hi)).collect();
        let (Some(&bottom), Some(&top)) = (
            keep.iter().find(|&&i| self.nodes[i] == *lo),
            keep.iter().find(|&&i| self.nodes[i] == *hi),
        ) else {
            return Err(Error::DomainMismatch);
        };
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let nodes: Vec<HeightFunction> = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        let tilings = keep.iter().map(|&i| self.tilings[i].clone()).collect();
        let up: Vec<Vec<usize>> =
            keep.iter().map(|&i| self.up[i].iter().filter_map(|j| remap.get(j).copied()).collect()).collect();
        let down: Vec<Vec<usize>> =
            keep.iter().map(|&i| self.down[i].iter().filter_map(|j| remap.get(j).copied()).collect()).collect();
        let index = nodes.iter().enumerate().map(|(i, h)| (h.values.clone(), i)).collect();
        Ok(TilingLattice {
            domain: self.domain.clone(),
            nodes,
            tilings,
            up,
            down,
            index,
            bottom: remap[&bottom],
            top: remap[&top],
        })
    }

    /// Graphviz rendering; node ids follow the canonical node order.
    pub fn to_dot(&self, ranks: bool) -> String {
        let mut s = String::from("digraph tilings {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            if ranks {
                let _ = writeln!(s, "  n{i} [label=\"{i}\" rank={}];", self.rank(i));
            } else {
                let _ = writeln!(s, "  n{i};");
            }
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  n{i} -> n{j};");
        }
        s.push_str("}\n");
        s
    }

    /// Node ids of each rank, bottom first.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let r = self.rank(i) as usize;
            if out.len() <= r {
                out.resize(r + 1, Vec::new());
            }
            out[r].push(i);
        }
        out
    }
}

pub fn inf(d: &Domain, t1: &Tiling, t2: &Tiling) -> Result<Tiling> {
    let (h1, h2) = (height_from_tiling(d, t1)?, height_from_tiling(d, t2)?);
    tiling_from_height(d, &pointwise_min(d, &h1, &h2)?)
}

pub fn sup(d: &Domain, t1: &Tiling, t2: &Tiling) -> Result<Tiling> {
    let (h1, h2) = (height_from_tiling(d, t1)?, height_from_tiling(d, t2)?);
    tiling_from_height(d, &pointwise_max(d, &h1, &h2)?)
}

/// Order between two tilings of the same domain.
pub fn compare_tilings(d: &Domain, t1: &Tiling, t2: &Tiling) -> Result<Comparison> {
    compare(&height_from_tiling(d, t1)?, &height_from_tiling(d, t2)?)
}

/// The lattice of the union domain whose tilings are the unions of one
/// tiling per factor. Factors must cover disjoint triangle sets whose union
/// is a domain.
pub fn product(factors: &[&TilingLattice]) -> Result<TilingLattice> {
    let mut seen = HashSet::new();
    let mut triangles = Vec::new();
    for f in factors {
        for &t in f.domain.triangles() {
            if !seen.insert(t) {
                return Err(Error::DomainMismatch);
            }
            triangles.push(t);
        }
    }
    let domain = Domain::from_triangles(triangles).map_err(|_| Error::DomainMismatch)?;
    product_on(Arc::new(domain), factors)
}

/// Product onto a given union domain.
pub fn product_on(domain: Arc<Domain>, factors: &[&TilingLattice]) -> Result<TilingLattice> {
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let total: usize = sizes.iter().product();
    let mut heights = Vec::with_capacity(total);
    let mut digits = vec![0usize; factors.len()];
    for _ in 0..total {
        let t = Tiling::union(digits.iter().zip(factors).map(|(&k, f)| &f.tilings[k]));
        heights.push(height_from_tiling(&domain, &t).map_err(|_| Error::DomainMismatch)?);
        for (pos, digit) in digits.iter_mut().enumerate().rev() {
            *digit += 1;
            if *digit < sizes[pos] {
                break;
            }
            *digit = 0;
        }
    }
    TilingLattice::from_heights(domain, heights)
}
