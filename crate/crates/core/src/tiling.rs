//! Tilings as lozenge sets: validation, Thurston's construction of the
//! extreme tilings, flips, and the exhaustive flip-closure oracle.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::grid::{hexagon_ring, Edge, Lozenge, Triangle, Vertex};
use crate::heights::{boundary_heights, tiling_from_height, HeightFunction};

/// A set of lozenges, kept sorted so that equal tilings compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tiling {
    lozenges: Vec<Lozenge>,
}

impl Tiling {
    pub fn new(mut lozenges: Vec<Lozenge>) -> Self {
        lozenges.sort();
        lozenges.dedup();
        Tiling { lozenges }
    }

    /// Keeps duplicates, so that overlapping input stays detectable.
    pub fn from_raw(mut lozenges: Vec<Lozenge>) -> Self {
        lozenges.sort();
        Tiling { lozenges }
    }

    pub fn lozenges(&self) -> &[Lozenge] {
        &self.lozenges
    }

    pub fn len(&self) -> usize {
        self.lozenges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lozenges.is_empty()
    }

    pub fn contains(&self, l: &Lozenge) -> bool {
        self.lozenges.binary_search(l).is_ok()
    }

    /// Count of lozenges per diagonal letter, in `a, b, c` order.
    pub fn orientation_counts(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for l in &self.lozenges {
            counts[l.diagonal as usize] += 1;
        }
        counts
    }

    /// Disjoint union of tilings of disjoint regions.
    pub fn union<'a, I: IntoIterator<Item = &'a Tiling>>(parts: I) -> Tiling {
        Tiling::new(parts.into_iter().flat_map(|t| t.lozenges.iter().copied()).collect())
    }
}

/// True iff every triangle of `d` is covered by exactly one lozenge.
pub fn validate(d: &Domain, t: &Tiling) -> bool {
    if 2 * t.len() != d.triangle_count() {
        return false;
    }
    let mut covered = vec![false; d.triangle_count()];
    for l in t.lozenges() {
        let (s, u) = l.cells();
        for cell in [s, u] {
            match d.triangle_index(&cell) {
                Some(i) if !covered[i] => covered[i] = true,
                _ => return false,
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Minimal,
    Maximal,
}

/// Outcome of one run of Thurston's algorithm.
#[derive(Clone, Debug)]
pub struct Thurston {
    pub tiling: Tiling,
    pub heights: HeightFunction,
    /// Number of lozenges placed; equals half the triangle count.
    pub placements: usize,
}

pub fn thurston(d: &Domain, mode: Mode) -> Result<Tiling> {
    thurston_run(d, mode).map(|r| r.tiling)
}

/// Thurston's algorithm.
///
/// In minimal mode the highest vertex of the untiled region is always on its
/// boundary and every positive edge leaving it into the region must be a
/// lozenge diagonal, so those lozenges are forced. Placing them fixes the
/// heights of their corners. Maximal mode is the mirror image, working from
/// the lowest vertex along negative edges. Ties go to the smallest vertex.
pub fn thurston_run(d: &Domain, mode: Mode) -> Result<Thurston> {
    if d.triangle_count() % 2 == 1 {
        return Err(Error::Untileable);
    }
    let bh = boundary_heights(d).map_err(|_| Error::Untileable)?;
    let n = d.vertex_count();
    let mut height: Vec<Option<i32>> = vec![None; n];
    // max-heap on (key, Reverse(vertex)); key is h or -h depending on mode
    let sign = if mode == Mode::Minimal { 1 } else { -1 };
    let mut heap = BinaryHeap::new();
    for (v, h) in bh {
        let i = d.index_of(v).expect("boundary vertex in domain");
        height[i] = Some(h);
        heap.push((sign * h, Reverse(v)));
    }
    let mut remaining = vec![true; d.triangle_count()];
    let mut left = d.triangle_count();
    let mut lozenges = Vec::with_capacity(left / 2);
    let first = if mode == Mode::Minimal { 0 } else { 1 };
    let in_region = |remaining: &[bool], t: &Triangle| d.triangle_index(t).map(|i| remaining[i]);

    while let Some((key, Reverse(v))) = heap.pop() {
        if left == 0 {
            break;
        }
        let h = sign * key;
        let around = Triangle::around(v);
        if !around.iter().any(|t| in_region(&remaining, t) == Some(true)) {
            continue;
        }
        let ring = hexagon_ring(v);
        for k in (first..6).step_by(2) {
            let (t1, t2) = (around[k], around[(k + 5) % 6]);
            let (r1, r2) = (in_region(&remaining, &t1), in_region(&remaining, &t2));
            if r1 != Some(true) && r2 != Some(true) {
                continue;
            }
            if r1 != Some(true) || r2 != Some(true) {
                return Err(Error::Untileable);
            }
            for t in [t1, t2] {
                remaining[d.triangle_index(&t).expect("checked")] = false;
            }
            left -= 2;
            lozenges.push(Lozenge::from_diagonal(Edge::between(v, ring[k]).expect("adjacent")));
            let far = h - 2 * sign;
            let side = h - sign;
            for (u, hu) in [(ring[k], far), (ring[(k + 5) % 6], side), (ring[(k + 1) % 6], side)] {
                let j = d.index_of(u).ok_or(Error::Untileable)?;
                match height[j] {
                    Some(x) if x != hu => return Err(Error::Untileable),
                    Some(_) => {}
                    None => {
                        height[j] = Some(hu);
                        heap.push((sign * hu, Reverse(u)));
                    }
                }
            }
        }
    }
    if left != 0 {
        return Err(Error::Untileable);
    }
    let values: Vec<i32> = height.into_iter().collect::<Option<_>>().ok_or(Error::Untileable)?;
    let placements = lozenges.len();
    let tiling = Tiling::new(lozenges);
    let heights = HeightFunction::from_values(d, values);
    debug_assert!(validate(d, &tiling));
    Ok(Thurston { tiling, heights, placements })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipDir {
    Up,
    Down,
}

/// The three lozenges around `v` whose diagonals point along the positive
/// (or negative) rays. A local minimum is tiled by the negative ones.
fn star(v: Vertex, positive: bool) -> [Lozenge; 3] {
    let ring = hexagon_ring(v);
    let first = if positive { 0 } else { 1 };
    std::array::from_fn(|i| Lozenge::from_diagonal(Edge::between(v, ring[first + 2 * i]).expect("adjacent")))
}

fn is_extremum(d: &Domain, t: &Tiling, v: Vertex, kind: Extremum) -> bool {
    let interior = d.index_of(v).is_some_and(|i| d.is_interior(i));
    interior && star(v, kind == Extremum::Max).iter().all(|l| t.contains(l))
}

/// Interior vertices that are local minima (up-flippable) or maxima.
pub fn local_extrema(d: &Domain, t: &Tiling, kind: Extremum) -> Vec<Vertex> {
    d.vertices()
        .iter()
        .enumerate()
        .filter(|&(i, &v)| d.is_interior(i) && star(v, kind == Extremum::Max).iter().all(|l| t.contains(l)))
        .map(|(_, &v)| v)
        .collect()
}

/// Rotate the three lozenges around `v`. An up-flip raises `h(v)` by 3.
pub fn flip(d: &Domain, t: &Tiling, v: Vertex, dir: FlipDir) -> Result<Tiling> {
    let (kind, up) = match dir {
        FlipDir::Up => (Extremum::Min, true),
        FlipDir::Down => (Extremum::Max, false),
    };
    if !is_extremum(d, t, v, kind) {
        return Err(Error::NotFlippable { vertex: v });
    }
    let old: HashSet<Lozenge> = star(v, !up).into_iter().collect();
    let mut lozenges: Vec<Lozenge> = t.lozenges().iter().copied().filter(|l| !old.contains(l)).collect();
    lozenges.extend(star(v, up));
    Ok(Tiling::new(lozenges))
}

/// Same flip on the height encoding: `h(v)` moves by 3 at a local extremum.
pub fn flip_height(d: &Domain, h: &HeightFunction, i: usize, dir: FlipDir) -> Result<HeightFunction> {
    let v = d.vertices()[i];
    let ok = d.is_interior(i) && {
        let hv = h.values[i];
        (0..6).all(|k| {
            let j = d.neighbor(i, k).expect("interior vertices have six neighbours");
            let diff = h.values[j] - hv;
            match (dir, k % 2 == 0) {
                (FlipDir::Up, true) => diff == 1,
                (FlipDir::Up, false) => diff == 2,
                (FlipDir::Down, true) => diff == -2,
                (FlipDir::Down, false) => diff == -1,
            }
        })
    };
    if !ok {
        return Err(Error::NotFlippable { vertex: v });
    }
    let mut values = h.values.clone();
    values[i] += if dir == FlipDir::Up { 3 } else { -3 };
    Ok(HeightFunction::from_values(d, values))
}

/// Indices of the interior vertices at which `h` is a local minimum.
pub fn up_flippable(d: &Domain, h: &HeightFunction) -> Vec<usize> {
    (0..d.vertex_count())
        .filter(|&i| {
            d.is_interior(i) && {
                let hv = h.values[i];
                (0..6).all(|k| {
                    let j = d.neighbor(i, k).expect("interior");
                    h.values[j] - hv == if k % 2 == 0 { 1 } else { 2 }
                })
            }
        })
        .collect()
}

/// Every height function of `d`, found by breadth-first up-flips from the
/// minimal one, sorted by height vector.
pub fn oracle_all_heights(d: &Domain) -> Result<Vec<HeightFunction>> {
    let start = thurston_run(d, Mode::Minimal)?.heights;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.values.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        for i in up_flippable(d, &h) {
            let next = flip_height(d, &h, i, FlipDir::Up).expect("local minimum");
            if seen.insert(next.values.clone()) {
                queue.push_back(next);
            }
        }
        out.push(h);
    }
    out.sort();
    Ok(out)
}

pub fn oracle_all_tilings(d: &Domain) -> Result<Vec<Tiling>> {
    oracle_all_heights(d)?.iter().map(|h| tiling_from_height(d, h)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{from_contour, hexagon};
    use crate::grid::Letter;
    use crate::heights::height_from_tiling;

    #[test]
    fn unit_hexagon_extremes() {
        let d = hexagon(1, 1, 1).unwrap();
        let lo = thurston(&d, Mode::Minimal).unwrap();
        let hi = thurston(&d, Mode::Maximal).unwrap();
        assert_ne!(lo, hi);
        let center = Vertex::new(1, 1);
        assert_eq!(local_extrema(&d, &lo, Extremum::Min), vec![center]);
        assert!(local_extrema(&d, &lo, Extremum::Max).is_empty());
        assert_eq!(flip(&d, &lo, center, FlipDir::Up).unwrap(), hi);
        assert_eq!(flip(&d, &hi, center, FlipDir::Down).unwrap(), lo);
        assert_eq!(flip(&d, &lo, Vertex::ORIGIN, FlipDir::Up), Err(Error::NotFlippable { vertex: Vertex::ORIGIN }));
        assert_eq!(flip(&d, &lo, center, FlipDir::Down), Err(Error::NotFlippable { vertex: center }));
    }

    #[test]
    fn untileable_inputs() {
        let butterfly = from_contour("bccaBCCA", Vertex::ORIGIN).unwrap();
        assert_eq!(thurston(&butterfly, Mode::Minimal), Err(Error::Untileable));
        assert_eq!(thurston(&butterfly, Mode::Maximal), Err(Error::Untileable));
        let triangle = Domain::from_triangles([Triangle::up(0, 0)]).unwrap();
        assert_eq!(thurston(&triangle, Mode::Minimal), Err(Error::Untileable));
    }

    #[test]
    fn placements_are_linear() {
        let d = hexagon(4, 3, 5).unwrap();
        for mode in [Mode::Minimal, Mode::Maximal] {
            let run = thurston_run(&d, mode).unwrap();
            assert_eq!(run.placements * 2, d.triangle_count());
            assert!(validate(&d, &run.tiling));
            assert_eq!(height_from_tiling(&d, &run.tiling).unwrap(), run.heights);
        }
    }

    #[test]
    fn validation() {
        let d = hexagon(2, 2, 2).unwrap();
        let t = thurston(&d, Mode::Minimal).unwrap();
        assert!(validate(&d, &t));
        let mut fewer = t.lozenges().to_vec();
        fewer.pop();
        assert!(!validate(&d, &Tiling::new(fewer.clone())));
        let mut overlap = fewer;
        overlap.push(overlap[0]);
        assert!(!validate(&d, &Tiling::from_raw(overlap)));
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(oracle_all_tilings(&hexagon(1, 1, 1).unwrap()).unwrap().len(), 2);
        assert_eq!(oracle_all_tilings(&hexagon(2, 2, 2).unwrap()).unwrap().len(), 20);
        let lozenge = from_contour("abAB", Vertex::ORIGIN).unwrap();
        assert_eq!(oracle_all_tilings(&lozenge).unwrap().len(), 1);
    }

    #[test]
    fn minimal_hexagon_222_balance() {
        let d = hexagon(2, 2, 2).unwrap();
        let t = thurston(&d, Mode::Minimal).unwrap();
        assert_eq!(t.orientation_counts(), [4, 4, 4]);
        assert!(local_extrema(&d, &thurston(&d, Mode::Maximal).unwrap(), Extremum::Min).is_empty());
        assert!(t.lozenges().iter().all(|l| matches!(l.diagonal, Letter::A | Letter::B | Letter::C)));
    }

    #[test]
    fn tiling_json_shape() {
        let t = Tiling::new(vec![Lozenge::new(Letter::C, Vertex::ORIGIN)]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"lozenges":[{"d":"c","anchor":[0,0]}]}"#);
    }
}
