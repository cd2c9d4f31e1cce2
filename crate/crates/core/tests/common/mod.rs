//! Independent oracles and fixtures for the integration tests.
//!
//! Nothing here calls into the tiling, heights, seeds or enumerator modules:
//! the oracles only read the triangle and vertex sets of a domain.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use lozenge_core::domain::{from_contour, Domain};
use lozenge_core::grid::{hexagon_ring, Edge, Lozenge, Triangle, Vertex};
use lozenge_core::partitions::PlanePartition;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every tiling, found by always covering the first uncovered triangle with
/// each of its (at most three) lozenges.
pub fn recursive_tilings(d: &Domain) -> Vec<BTreeSet<Lozenge>> {
    fn go(
        tris: &[Triangle],
        index: &HashMap<Triangle, usize>,
        covered: &mut Vec<bool>,
        current: &mut Vec<Lozenge>,
        out: &mut Vec<BTreeSet<Lozenge>>,
    ) {
        let Some(first) = covered.iter().position(|c| !c) else {
            out.push(current.iter().copied().collect());
            return;
        };
        let t = tris[first];
        for e in t.edges() {
            let other = e.triangles().into_iter().find(|&s| s != t).unwrap();
            let Some(&j) = index.get(&other) else { continue };
            if covered[j] {
                continue;
            }
            covered[first] = true;
            covered[j] = true;
            current.push(Lozenge::from_diagonal(e));
            go(tris, index, covered, current, out);
            current.pop();
            covered[first] = false;
            covered[j] = false;
        }
    }
    let tris = d.triangles().to_vec();
    let index: HashMap<Triangle, usize> = tris.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut out = Vec::new();
    go(&tris, &index, &mut vec![false; tris.len()], &mut Vec::new(), &mut out);
    out
}

fn positive_edges(d: &Domain) -> Vec<(usize, usize, bool)> {
    let vs = d.vertices();
    let tri: HashSet<Triangle> = d.triangles().iter().copied().collect();
    let mut out = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        let ring = hexagon_ring(v);
        let around = Triangle::around(v);
        for k in [0usize, 2, 4] {
            let left = tri.contains(&around[k]);
            let right = tri.contains(&around[(k + 5) % 6]);
            if left || right {
                let j = d.index_of(ring[k]).unwrap();
                out.push((i, j, left && right));
            }
        }
    }
    out
}

/// Heights of the boundary walk, from the contour word alone.
pub fn walk_heights(d: &Domain) -> HashMap<usize, i32> {
    let mut h = 0;
    let mut out = HashMap::new();
    for (v, s) in d.boundary().iter().zip(&d.contour().steps) {
        out.insert(d.index_of(*v).unwrap(), h);
        h += s.weight();
    }
    out
}

/// Least (or greatest) solution of the edge constraints
/// `-2 <= h(head) - h(tail) <= 1` with the boundary fixed, by relaxation.
pub fn bellman_ford(d: &Domain, least: bool) -> Vec<i32> {
    const FAR: i32 = 1 << 20;
    let fixed = walk_heights(d);
    let mut h: Vec<i32> = (0..d.vertex_count()).map(|i| *fixed.get(&i).unwrap_or(&if least { -FAR } else { FAR })).collect();
    let edges = positive_edges(d);
    loop {
        let mut changed = false;
        for &(t, s, interior) in &edges {
            let lo_diff = if interior { -2 } else { 1 };
            if least {
                // h(s) >= h(t) + lo_diff and h(t) >= h(s) - 1
                if !fixed.contains_key(&s) && h[s] < h[t] + lo_diff {
                    h[s] = h[t] + lo_diff;
                    changed = true;
                }
                if !fixed.contains_key(&t) && h[t] < h[s] - 1 {
                    h[t] = h[s] - 1;
                    changed = true;
                }
            } else {
                // h(s) <= h(t) + 1 and h(t) <= h(s) - lo_diff
                if !fixed.contains_key(&s) && h[s] > h[t] + 1 {
                    h[s] = h[t] + 1;
                    changed = true;
                }
                if !fixed.contains_key(&t) && h[t] > h[s] - lo_diff {
                    h[t] = h[s] - lo_diff;
                    changed = true;
                }
            }
        }
        if !changed {
            return h;
        }
    }
}

/// Heights of a lozenge set, integrating +1 along lozenge sides.
pub fn heights_of(d: &Domain, t: &BTreeSet<Lozenge>) -> Vec<i32> {
    let diag: HashSet<Edge> = t.iter().map(|l| l.diagonal_edge()).collect();
    let mut h = vec![None; d.vertex_count()];
    let base = d.index_of(d.boundary()[0]).unwrap();
    h[base] = Some(0);
    let edges = positive_edges(d);
    let mut changed = true;
    while changed {
        changed = false;
        for &(t_, s, _) in &edges {
            let e = Edge::between(d.vertices()[t_], d.vertices()[s]).unwrap();
            let diff = if diag.contains(&e) { -2 } else { 1 };
            match (h[t_], h[s]) {
                (Some(a), None) => {
                    h[s] = Some(a + diff);
                    changed = true;
                }
                (None, Some(b)) => {
                    h[t_] = Some(b - diff);
                    changed = true;
                }
                (Some(a), Some(b)) => assert_eq!(b - a, diff, "inconsistent lozenge set"),
                (None, None) => {}
            }
        }
    }
    h.into_iter().map(Option::unwrap).collect()
}

/// All height vectors of `d` according to the recursive tiler, sorted.
pub fn recursive_heights(d: &Domain) -> Vec<Vec<i32>> {
    let mut v: Vec<Vec<i32>> = recursive_tilings(d).iter().map(|t| heights_of(d, t)).collect();
    v.sort();
    v
}

/// Every non-increasing sequence below `limit`, by brute force over the box.
pub fn brute_partitions(limit: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &cap in limit {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| (0..=cap).map(move |x| {
                let mut p = prefix.clone();
                p.push(x);
                p
            }))
            .collect();
    }
    out.retain(|p| p.windows(2).all(|w| w[0] >= w[1]));
    out
}

/// Every plane partition below `p` (same dimensions), by brute force.
pub fn brute_plane_partitions(p: &PlanePartition) -> Vec<PlanePartition> {
    let rows = p.rows.len();
    let cols = p.width();
    let caps: Vec<u32> = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| p.get(r, c)).collect();
    let mut cells = vec![Vec::new()];
    for cap in caps {
        cells = cells
            .into_iter()
            .flat_map(|prefix: Vec<u32>| (0..=cap).map(move |x| {
                let mut q = prefix.clone();
                q.push(x);
                q
            }))
            .collect();
    }
    cells
        .into_iter()
        .map(|flat| flat.chunks(cols.max(1)).map(<[u32]>::to_vec).collect::<Vec<_>>())
        .filter(|g: &Vec<Vec<u32>>| {
            (0..rows).all(|r| (1..cols).all(|c| g[r][c - 1] >= g[r][c]))
                && (1..rows).all(|r| (0..cols).all(|c| g[r - 1][c] >= g[r][c]))
        })
        .map(|g| PlanePartition::from_rows(g).unwrap())
        .collect()
}

/// Plane partitions inside an `a x b` box with entries at most `c`, by
/// brute force.
pub fn plane_partitions_in_box(a: usize, b: usize, c: u32) -> Vec<PlanePartition> {
    let full = PlanePartition::from_rows(vec![vec![c; b]; a]).unwrap();
    brute_plane_partitions(&full)
}

/// A random plane partition inside an `a x b x c` box, grown one cube at a
/// time from the corner.
pub fn random_pile(rng: &mut StdRng, a: usize, b: usize, c: u32, cubes: usize) -> PlanePartition {
    let mut g = vec![vec![0u32; b]; a];
    for _ in 0..cubes {
        let open: Vec<(usize, usize)> = (0..a)
            .flat_map(|r| (0..b).map(move |col| (r, col)))
            .filter(|&(r, col)| {
                g[r][col] < c && (r == 0 || g[r - 1][col] > g[r][col]) && (col == 0 || g[r][col - 1] > g[r][col])
            })
            .collect();
        if open.is_empty() {
            break;
        }
        let (r, col) = open[rng.gen_range(0..open.len())];
        g[r][col] += 1;
    }
    PlanePartition::from_rows(g).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn v(p: i32, q: i32) -> Vertex {
    Vertex::new(p, q)
}

pub const BUTTERFLY: &str = "bccaBCCA";

/// A degree-3 fertile zone: its chain `D^0, ..., D^3` has four members.
pub const STAIRCASE: &str = "aaaCCCbAcAcAcB";

pub fn staircase() -> Domain {
    from_contour(STAIRCASE, v(-3, -1)).unwrap()
}

/// Two unit hexagons joined by a vertical strip of `k` unit lozenges.
pub fn dumbbell(k: i32) -> Domain {
    let mut tris: Vec<Triangle> = Triangle::around(v(1, 1)).to_vec();
    for j in 1..=k {
        tris.push(Triangle::up(0, -j));
        tris.push(Triangle::down(0, -j));
    }
    tris.extend(Triangle::around(v(0, -k - 1)));
    Domain::from_triangles(tris).unwrap()
}

/// Attach `bottom` below `top` through a strip of `k` unit lozenges hanging
/// from the lowest boundary `a`-edge of `top`. Returns `None` when the
/// translated pieces would touch.
pub fn strip_composite(top: &Domain, bottom: &Domain, k: i32) -> Option<Domain> {
    let top_set: HashSet<Triangle> = top.triangles().iter().copied().collect();
    let hang = top
        .triangles()
        .iter()
        .filter(|t| t.orientation == lozenge_core::grid::Orientation::Up)
        .map(|t| t.anchor)
        .filter(|a| !top_set.contains(&Triangle::down(a.p, a.q - 1)))
        .min_by_key(|a| (a.q, a.p))?;
    let bottom_set: HashSet<Triangle> = bottom.triangles().iter().copied().collect();
    let foot = bottom
        .triangles()
        .iter()
        .filter(|t| t.orientation == lozenge_core::grid::Orientation::Down)
        .map(|t| t.anchor)
        .filter(|a| !bottom_set.contains(&Triangle::up(a.p, a.q + 1)))
        .max_by_key(|a| (a.q, -a.p))?;
    // the top edge of `foot` is (foot.p, foot.q + 1)-(foot.p + 1, foot.q + 1)
    let target = v(hang.p, hang.q - k);
    let shift = v(target.p - foot.p, target.q - foot.q - 1);
    let moved: Vec<Triangle> =
        bottom.triangles().iter().map(|t| Triangle { anchor: t.anchor.translate(shift), ..*t }).collect();
    let mut tris = top.triangles().to_vec();
    for j in 1..=k {
        for t in [Triangle::up(hang.p, hang.q - j), Triangle::down(hang.p, hang.q - j)] {
            if top_set.contains(&t) {
                return None;
            }
            tris.push(t);
        }
    }
    let top_vertices: HashSet<Vertex> = top.vertices().iter().copied().collect();
    let touches = moved.iter().flat_map(|t| t.vertices()).any(|u| top_vertices.contains(&u));
    if touches {
        return None;
    }
    tris.extend(moved);
    Domain::from_triangles(tris).ok()
}

/// Small regular and irregular hexagons.
pub fn hexagon_fixtures() -> Vec<Domain> {
    let mut out = Vec::new();
    for x in 1..=2 {
        for y in 1..=2 {
            for z in 1..=2 {
                out.push(lozenge_core::domain::hexagon(x, y, z).unwrap());
            }
        }
    }
    out
}
