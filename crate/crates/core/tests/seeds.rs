mod common;

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use common::*;
use lozenge_core::domain::{hexagon, pseudo_hexagon, Domain};
use lozenge_core::enumerator::fundamental_intervals;
use lozenge_core::partitions::{all_limited_plane_partitions, PlanePartition};
use lozenge_core::seeds::{self, Cube, PileSpace};
use lozenge_core::tiling::{oracle_all_heights, thurston, Mode};

fn space(d: &Domain) -> PileSpace {
    PileSpace::new(Arc::new(d.clone())).unwrap()
}

fn closed_piles() -> Vec<PlanePartition> {
    plane_partitions_in_box(3, 3, 3)
        .into_iter()
        .filter(|p| p.weight() > 0)
        .filter(|p| {
            // no supported cube hides behind another along the diagonal
            (1..3).all(|r| {
                (1..3).all(|c| {
                    let z = p.get(r, c);
                    !(z >= 1 && p.get(r - 1, c - 1) > z && p.get(r - 1, c) > z && p.get(r, c - 1) > z)
                })
            })
        })
        .collect()
}

fn trimmed(p: &PlanePartition) -> Vec<Vec<u32>> {
    p.rows
        .iter()
        .map(|r| r.parts.iter().copied().filter(|&x| x > 0).collect::<Vec<u32>>())
        .filter(|r| !r.is_empty())
        .collect()
}

#[test]
fn staircase_has_a_four_member_chain() {
    let d = staircase();
    let chain = space(&d).dk_chain().unwrap();
    assert_eq!(chain.len(), 4);
    assert!(chain.last().unwrap().seeds.is_empty());
    assert!(chain[..3].iter().all(|g| !g.seeds.is_empty()));
    assert_eq!(recursive_tilings(&d).len(), 14);
}

#[test]
fn chain_is_increasing_and_bounded_by_the_cube_count() {
    for d in hexagon_fixtures().into_iter().chain([staircase(), hexagon(3, 3, 3).unwrap()]) {
        let s = space(&d);
        let chain = s.dk_chain().unwrap();
        let total = s.pile_of(s.max()).len();
        assert!(chain.len() - 1 <= total);
        for w in chain.windows(2) {
            assert!(w[0].heights.le(&w[1].heights) && w[0].heights != w[1].heights);
            let added: usize = w[0].seeds.iter().map(|r| r.max_pile.len()).sum();
            assert_eq!(s.pile_of(&w[1].heights).len(), s.pile_of(&w[0].heights).len() + added);
        }
        for (k, g) in chain.iter().enumerate() {
            assert!(g.seeds.iter().all(|r| r.order == k as u32));
        }
    }
}

#[test]
fn pseudo_hexagon_fills_to_its_pile() {
    for p in closed_piles() {
        let d = pseudo_hexagon(&p).unwrap();
        let s = space(&d);
        let chain = s.dk_chain().unwrap();
        assert_eq!(chain.len(), 2, "{p}");
        let gen0 = &chain[0].seeds;
        assert_eq!(gen0.len(), 1, "{p}");
        assert_eq!(trimmed(&gen0[0].shape), trimmed(&p));
        assert_eq!(gen0[0].max_pile.len() as u64, p.weight());
        let range: BTreeSet<_> = gen0[0].max_range.iter().copied().collect();
        assert_eq!(range, d.triangles().iter().copied().collect());
    }
}

/// On a pseudo-hexagon, piles of tilings are exactly the compact piles below
/// the shape, each met once.
#[test]
fn tilings_of_a_pseudo_hexagon_are_compact_piles() {
    for p in closed_piles().into_iter().filter(|p| p.weight() <= 12) {
        let d = pseudo_hexagon(&p).unwrap();
        let s = space(&d);
        let corner = s.dk_chain().unwrap()[0].seeds[0].corner;
        let mut shapes = HashSet::new();
        let all = oracle_all_heights(&d).unwrap();
        for h in &all {
            let pile: HashSet<[i32; 3]> = s
                .pile_of(h)
                .cubes
                .iter()
                .map(|c| {
                    let i = d.index_of(c.vertex).unwrap();
                    let lo = s.lift(i, s.min().values[i] + 3 * (c.level as i32 - 1));
                    [lo[0] - corner[0], lo[1] - corner[1], lo[2] - corner[2]]
                })
                .collect();
            for c in &pile {
                assert!(c.iter().all(|&x| x >= 0), "{p}: cube outside the octant");
                for axis in 0..3 {
                    let mut below = *c;
                    below[axis] -= 1;
                    assert!(below[axis] < 0 || pile.contains(&below), "{p}: pile is not compact");
                }
            }
            let mut grid = vec![vec![0u32; p.width()]; p.rows.len()];
            for c in &pile {
                let cell = &mut grid[c[0] as usize][c[1] as usize];
                *cell = (*cell).max(c[2] as u32 + 1);
            }
            let q = PlanePartition::from_rows(grid).unwrap();
            assert_eq!(q.weight() as usize, pile.len());
            assert!(q.le(&p));
            assert!(shapes.insert(q), "{p}: two tilings with one pile");
        }
        assert_eq!(shapes.len(), all_limited_plane_partitions(&p).count(), "{p}");
    }
}

#[test]
fn filling_does_not_depend_on_the_context_seed_order() {
    let d = hexagon(3, 3, 3).unwrap();
    let s = space(&d);
    let min = s.min().clone();
    let found = s.find_seeds(&min);
    let forward: Vec<_> = found.iter().map(|&x| s.maximal_filling(x, &min, 0).unwrap()).collect();
    let backward: Vec<_> = found.iter().rev().map(|&x| s.maximal_filling(x, &min, 0).unwrap()).collect();
    let mut b = backward;
    b.reverse();
    assert_eq!(forward, b);
}

#[test]
fn free_functions_agree_with_the_pile_space() {
    let d = hexagon(2, 2, 2).unwrap();
    let t = thurston(&d, Mode::Minimal).unwrap();
    let s = space(&d);
    let found = seeds::find_seeds(&d, &t).unwrap();
    assert_eq!(found, s.find_seeds(s.min()));
    assert_eq!(found.len(), 1);
    let record = seeds::maximal_filling(&d, found[0], &t).unwrap();
    assert_eq!(record.max_pile.len(), 8);
    assert_eq!(seeds::proper_seeds(&d, &t).unwrap(), vec![record]);
    let chain = seeds::dk_chain(&d).unwrap();
    assert_eq!(chain.len(), 2);
    assert_eq!(chain[1], *s.max());
}

#[test]
fn cube_families_give_the_infimum_of_their_tilings() {
    let d = staircase();
    let s = space(&d);
    let all = oracle_all_heights(&d).unwrap();
    let cubes: Vec<(usize, Cube)> = s.pile_of(s.max()).cubes.iter().map(|c| (d.index_of(c.vertex).unwrap(), *c)).collect();
    for (n, &(i, a)) in cubes.iter().enumerate() {
        for &(j, b) in &cubes[n..] {
            let need = |k: usize, c: Cube| s.min().values[k] + 3 * c.level as i32;
            let containing: Vec<_> = all.iter().filter(|h| h.values[i] >= need(i, a) && h.values[j] >= need(j, b)).collect();
            let want: Vec<i32> = (0..d.vertex_count()).map(|k| containing.iter().map(|h| h.values[k]).min().unwrap()).collect();
            assert_eq!(s.min_with_cubes(&[a, b]).unwrap().values, want);
        }
    }
    assert_eq!(s.min_with_cubes(&[]).unwrap(), *s.min());
}

#[test]
fn some_tilings_escape_the_fundamental_intervals() {
    let d = staircase();
    let s = space(&d);
    let intervals = fundamental_intervals(&s).unwrap();
    assert_eq!(intervals.len(), 3);
    let all = oracle_all_heights(&d).unwrap();
    let outside: Vec<_> = all.iter().filter(|h| !intervals.iter().any(|(lo, hi)| lo.le(h) && (*h).le(hi))).collect();
    assert_eq!(outside.len(), 2);
    for w in intervals.windows(2) {
        assert_eq!(w[0].1, w[1].0);
    }
}
