//! Height functions: the integer encoding of a tiling.
//!
//! Along a positively directed domain edge the height goes up by 1 when the
//! edge is a lozenge side and down by 2 when it is a lozenge diagonal.
//! Values are stored as a vector indexed like [`Domain::vertices`], with the
//! base vertex at height 0.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::domain::{ContourWord, Domain};
use crate::error::{Error, Result};
use crate::grid::{Edge, Lozenge, Vertex};
use crate::tiling::{validate, Tiling};

pub fn evaluate(w: &ContourWord) -> i64 {
    w.steps.iter().map(|d| d.weight() as i64).sum()
}

/// Heights of the boundary vertices, obtained by walking the contour from
/// the base vertex.
///
/// The result is `InconsistentBoundary` when a vertex would get two values:
/// either the walk revisits it, or an interior edge joins two boundary
/// vertices whose walk heights no tiling can realize.
pub fn boundary_heights(d: &Domain) -> Result<HashMap<Vertex, i32>> {
    let walk = d.boundary();
    let word = d.contour();
    let mut heights = HashMap::with_capacity(walk.len());
    let mut h = 0i32;
    for (i, &v) in walk.iter().enumerate() {
        if let Some(&prev) = heights.get(&v) {
            if prev != h {
                return Err(Error::InconsistentBoundary { vertex: v });
            }
        }
        heights.insert(v, h);
        h += word.steps[i].weight();
    }
    for e in d.edges() {
        let (tail, head) = (d.vertices()[e.tail], d.vertices()[e.head]);
        if let (Some(&ht), Some(&hh)) = (heights.get(&tail), heights.get(&head)) {
            let diff = hh - ht;
            if diff != 1 && !(e.interior && diff == -2) {
                return Err(Error::InconsistentBoundary { vertex: head });
            }
        }
    }
    Ok(heights)
}

/// Height function of one tiling of a domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeightFunction {
    pub values: Vec<i32>,
    domain: u64,
}

impl HeightFunction {
    /// Wrap a raw vector without checking it.
    pub fn from_values(d: &Domain, values: Vec<i32>) -> Self {
        assert_eq!(values.len(), d.vertex_count(), "height vector length");
        HeightFunction { values, domain: d.fingerprint() }
    }

    /// Wrap and check a raw vector.
    pub fn new(d: &Domain, values: Vec<i32>) -> Result<Self> {
        if values.len() != d.vertex_count() {
            return Err(Error::DomainMismatch);
        }
        let h = HeightFunction { values, domain: d.fingerprint() };
        check(d, &h)?;
        Ok(h)
    }

    pub fn get(&self, d: &Domain, v: Vertex) -> Option<i32> {
        d.index_of(v).map(|i| self.values[i])
    }

    pub fn belongs_to(&self, d: &Domain) -> bool {
        self.domain == d.fingerprint() && self.values.len() == d.vertex_count()
    }

    fn same_domain(&self, other: &HeightFunction) -> Result<()> {
        if self.domain != other.domain || self.values.len() != other.values.len() {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Pointwise `self ≤ other`, without domain checks.
    pub fn le(&self, other: &HeightFunction) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn to_json(&self, d: &Domain) -> HeightJson {
        HeightJson {
            base: d.base(),
            heights: d.vertices().iter().zip(&self.values).map(|(v, &h)| [v.p, v.q, h]).collect(),
        }
    }
}

/// Height-vector form of a tiling: `[p, q, h]` triples in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightJson {
    pub base: Vertex,
    pub heights: Vec<[i32; 3]>,
}

impl HeightJson {
    pub fn to_height(&self, d: &Domain) -> Result<HeightFunction> {
        let mut values = vec![None; d.vertex_count()];
        for &[p, q, h] in &self.heights {
            let i = d.index_of(Vertex::new(p, q)).ok_or(Error::DomainMismatch)?;
            values[i] = Some(h);
        }
        let mut values: Vec<i32> = values.into_iter().collect::<Option<_>>().ok_or(Error::DomainMismatch)?;
        if let Some(b) = self.heights.iter().find(|t| Vertex::new(t[0], t[1]) == d.base()) {
            let shift = b[2];
            values.iter_mut().for_each(|x| *x -= shift);
        }
        HeightFunction::new(d, values)
    }
}

/// Check the edge rule everywhere and the normalization at the base.
pub fn check(d: &Domain, h: &HeightFunction) -> Result<()> {
    if !h.belongs_to(d) {
        return Err(Error::DomainMismatch);
    }
    if h.values[d.base_index()] != 0 {
        let b = d.base();
        return Err(Error::NotAHeightFunction { from: b, to: b, diff: h.values[d.base_index()] });
    }
    for e in d.edges() {
        let diff = h.values[e.head] - h.values[e.tail];
        if diff != 1 && !(diff == -2 && e.interior) {
            return Err(Error::NotAHeightFunction {
                from: d.vertices()[e.tail],
                to: d.vertices()[e.head],
                diff,
            });
        }
    }
    Ok(())
}

pub fn height_from_tiling(d: &Domain, t: &Tiling) -> Result<HeightFunction> {
    if !validate(d, t) {
        return Err(Error::NotATiling);
    }
    let diagonals: HashSet<Edge> = t.lozenges().iter().map(|l| l.diagonal_edge()).collect();
    let n = d.vertex_count();
    let mut values: Vec<Option<i32>> = vec![None; n];
    let base = d.base_index();
    values[base] = Some(0);
    let mut queue = VecDeque::from([base]);
    while let Some(i) = queue.pop_front() {
        let hi = values[i].expect("queued vertices have heights");
        for k in 0..6 {
            let Some(j) = d.neighbor(i, k) else { continue };
            let e = Edge::between(d.vertices()[i], d.vertices()[j]).expect("adjacent");
            if diagonals.contains(&e) {
                continue;
            }
            let hj = if k % 2 == 0 { hi + 1 } else { hi - 1 };
            match values[j] {
                None => {
                    values[j] = Some(hj);
                    queue.push_back(j);
                }
                Some(x) if x != hj => return Err(Error::NotATiling),
                Some(_) => {}
            }
        }
    }
    let values: Vec<i32> = values.into_iter().collect::<Option<_>>().ok_or(Error::NotATiling)?;
    Ok(HeightFunction::from_values(d, values))
}

/// The tiling whose diagonals are exactly the edges of height difference 2.
pub fn tiling_from_height(d: &Domain, h: &HeightFunction) -> Result<Tiling> {
    check(d, h)?;
    let lozenges = d
        .edges()
        .iter()
        .filter(|e| h.values[e.head] - h.values[e.tail] == -2)
        .map(|e| Lozenge::from_diagonal(e.edge))
        .collect();
    let t = Tiling::new(lozenges);
    debug_assert!(validate(d, &t));
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

pub fn compare(h1: &HeightFunction, h2: &HeightFunction) -> Result<Comparison> {
    h1.same_domain(h2)?;
    let (mut less, mut greater) = (false, false);
    for (a, b) in h1.values.iter().zip(&h2.values) {
        match a.cmp(b) {
            Ordering::Less => less = true,
            Ordering::Greater => greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (less, greater) {
        (false, false) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (true, true) => Comparison::Incomparable,
    })
}

fn combine(d: &Domain, h1: &HeightFunction, h2: &HeightFunction, f: fn(i32, i32) -> i32) -> Result<HeightFunction> {
    h1.same_domain(h2)?;
    let values = h1.values.iter().zip(&h2.values).map(|(&a, &b)| f(a, b)).collect();
    HeightFunction::new(d, values)
}

pub fn pointwise_min(d: &Domain, h1: &HeightFunction, h2: &HeightFunction) -> Result<HeightFunction> {
    combine(d, h1, h2, i32::min)
}

pub fn pointwise_max(d: &Domain, h1: &HeightFunction, h2: &HeightFunction) -> Result<HeightFunction> {
    combine(d, h1, h2, i32::max)
}

/// Sum over all vertices of the absolute height difference.
pub fn distance(h1: &HeightFunction, h2: &HeightFunction) -> Result<i64> {
    h1.same_domain(h2)?;
    Ok(h1.values.iter().zip(&h2.values).map(|(&a, &b)| (a as i64 - b as i64).abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{from_contour, hexagon, parse_contour};
    use crate::tiling::{thurston, Mode};

    #[test]
    fn evaluation_morphism() {
        assert_eq!(evaluate(&parse_contour("a").unwrap()), 1);
        assert_eq!(evaluate(&ContourWord::default()), 0);
        assert_eq!(evaluate(&parse_contour("B").unwrap()), -1);
        assert_eq!(evaluate(&parse_contour("aCbAcB").unwrap()), 0);
    }

    #[test]
    fn boundary_walks() {
        let hex = hexagon(1, 1, 1).unwrap();
        let bh = boundary_heights(&hex).unwrap();
        let walk: Vec<i32> = hex.boundary().iter().map(|v| bh[v]).collect();
        assert_eq!(walk, vec![0, 1, 0, 1, 0, 1]);
        let lozenge = from_contour("abAB", Vertex::ORIGIN).unwrap();
        let bh = boundary_heights(&lozenge).unwrap();
        let walk: Vec<i32> = lozenge.boundary().iter().map(|v| bh[v]).collect();
        assert_eq!(walk, vec![0, 1, 2, 1]);
        let butterfly = from_contour("bccaBCCA", Vertex::ORIGIN).unwrap();
        assert!(matches!(boundary_heights(&butterfly), Err(Error::InconsistentBoundary { .. })));
    }

    #[test]
    fn unit_lozenge_heights() {
        let d = from_contour("abAB", Vertex::ORIGIN).unwrap();
        let t = thurston(&d, Mode::Minimal).unwrap();
        let h = height_from_tiling(&d, &t).unwrap();
        let expected = [((0, 0), 0), ((1, 0), 1), ((1, 1), 2), ((0, 1), 1)];
        for ((p, q), x) in expected {
            assert_eq!(h.get(&d, Vertex::new(p, q)), Some(x));
        }
    }

    #[test]
    fn hexagon_extremes_differ_at_center_by_three() {
        let d = hexagon(1, 1, 1).unwrap();
        let lo = height_from_tiling(&d, &thurston(&d, Mode::Minimal).unwrap()).unwrap();
        let hi = height_from_tiling(&d, &thurston(&d, Mode::Maximal).unwrap()).unwrap();
        let center = d.index_of(Vertex::new(1, 1)).unwrap();
        for i in 0..d.vertex_count() {
            let diff = hi.values[i] - lo.values[i];
            assert_eq!(diff, if i == center { 3 } else { 0 });
        }
        assert_eq!(distance(&lo, &hi).unwrap(), 3);
        assert_eq!(compare(&lo, &hi).unwrap(), Comparison::Less);
        assert_eq!(compare(&hi, &hi).unwrap(), Comparison::Equal);
        // the center sits below all six neighbours in the minimal tiling
        let ring = crate::grid::hexagon_ring(Vertex::new(1, 1));
        let c = lo.values[center];
        for (k, v) in ring.iter().enumerate() {
            let hv = lo.get(&d, *v).unwrap();
            assert_eq!(hv - c, if k % 2 == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn corrupted_height_is_rejected() {
        let d = hexagon(2, 2, 2).unwrap();
        let t = thurston(&d, Mode::Minimal).unwrap();
        let mut h = height_from_tiling(&d, &t).unwrap();
        let inner = (0..d.vertex_count()).find(|&i| d.is_interior(i)).unwrap();
        h.values[inner] += 1;
        assert!(matches!(tiling_from_height(&d, &h), Err(Error::NotAHeightFunction { .. })));
    }

    #[test]
    fn mismatched_domains() {
        let a = hexagon(1, 1, 1).unwrap();
        let b = hexagon(2, 1, 1).unwrap();
        let ha = height_from_tiling(&a, &thurston(&a, Mode::Minimal).unwrap()).unwrap();
        let hb = height_from_tiling(&b, &thurston(&b, Mode::Minimal).unwrap()).unwrap();
        assert_eq!(compare(&ha, &hb), Err(Error::DomainMismatch));
        assert_eq!(distance(&ha, &hb), Err(Error::DomainMismatch));
        assert_eq!(pointwise_min(&a, &ha, &hb), Err(Error::DomainMismatch));
    }

    #[test]
    fn height_json_round_trip() {
        let d = hexagon(2, 1, 2).unwrap();
        let h = height_from_tiling(&d, &thurston(&d, Mode::Maximal).unwrap()).unwrap();
        let json = serde_json::to_string(&h.to_json(&d)).unwrap();
        let back: HeightJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_height(&d).unwrap(), h);
    }
}
