//! Exhaustive generation of tilings, zone by zone.
//!
//! Inside a fertile zone the tilings are produced generation by generation
//! along the chain `D^0 = Min, D^1, ..., Max`. For generation `k`, every
//! non-empty family of fillings of the proper seeds of `D^k` is turned into
//! a cube set `C`. The least tiling containing `C`, with `C` removed again,
//! is a lower bound `m`; every tiling `t` found so far with `m <= t <= D^k`
//! then yields the new tiling `t + C`. The zone results are combined by a
//! product over the zones.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::thread;

use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::fracture::{fracture_zones, Zone, ZoneKind};
use crate::heights::HeightFunction;
use crate::lattice::{product_on, TilingLattice};
use crate::partitions::{all_limited_plane_partitions, PlanePartition};
use crate::seeds::{Cube, Generation, PileSpace};
use crate::tiling::{thurston_run, Mode, Tiling};

/// Counters for one zone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZoneStats {
    pub degree: usize,
    /// Tilings emitted per generation; the first entry counts `D^0`.
    pub per_generation: Vec<usize>,
    /// Filling families examined, the empty family excluded.
    pub families: usize,
    pub emitted: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub emitted: usize,
    pub duplicates: usize,
    pub zones: Vec<ZoneStats>,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub zones: Vec<(Zone, TilingLattice)>,
    pub full: TilingLattice,
    pub stats: EnumerationStats,
}

/// Mixed-radix walk over the fillings of several shapes. The last shape
/// varies fastest, and each stream is restarted rather than stored.
struct Families<'a> {
    shapes: &'a [PlanePartition],
    streams: Vec<Box<dyn Iterator<Item = PlanePartition> + 'a>>,
    current: Vec<PlanePartition>,
    started: bool,
}

impl<'a> Families<'a> {
    fn new(shapes: &'a [PlanePartition]) -> Self {
        Families { shapes, streams: Vec::new(), current: Vec::new(), started: false }
    }

    fn stream(&self, i: usize) -> Box<dyn Iterator<Item = PlanePartition> + 'a> {
        Box::new(all_limited_plane_partitions(&self.shapes[i]))
    }
}

impl Iterator for Families<'_> {
    type Item = Vec<PlanePartition>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            for i in 0..self.shapes.len() {
                let mut s = self.stream(i);
                self.current.push(s.next().expect("the empty filling always exists"));
                self.streams.push(s);
            }
            return Some(self.current.clone());
        }
        let mut pos = self.shapes.len();
        while pos > 0 {
            pos -= 1;
            if let Some(x) = self.streams[pos].next() {
                self.current[pos] = x;
                for j in pos + 1..self.shapes.len() {
                    let mut s = self.stream(j);
                    self.current[j] = s.next().expect("the empty filling always exists");
                    self.streams[j] = s;
                }
                return Some(self.current.clone());
            }
        }
        None
    }
}

/// Cubes of a filling, placed at the seed's corner.
fn family_cubes(space: &PileSpace, corners: &[[i32; 3]], fillings: &[PlanePartition]) -> Vec<(usize, Cube)> {
    let mut out = Vec::new();
    for (corner, a) in corners.iter().zip(fillings) {
        for (r, row) in a.rows.iter().enumerate() {
            for (c, &n) in row.parts.iter().enumerate() {
                for z in 0..n as i32 {
                    let at = [corner[0] + r as i32, corner[1] + c as i32, corner[2] + z];
                    out.push(space.cube_at(at).expect("fillings stay inside the maximal pile"));
                }
            }
        }
    }
    out
}

/// All height functions of one fertile zone, in emission order.
pub fn enumerate_zone_heights(space: &PileSpace) -> Result<(Vec<HeightFunction>, ZoneStats)> {
    let chain: Vec<Generation> = space.dk_chain()?;
    let mut stats = ZoneStats { degree: chain.len() - 1, ..ZoneStats::default() };
    let first = chain[0].heights.clone();
    let mut seen: HashSet<Vec<i32>> = HashSet::from([first.values.clone()]);
    let mut found = vec![first];
    stats.per_generation.push(1);

    for generation in &chain[..chain.len() - 1] {
        let snapshot = found.len();
        let top = &generation.heights;
        let shapes: Vec<PlanePartition> = generation.seeds.iter().map(|s| s.shape.clone()).collect();
        let corners: Vec<[i32; 3]> = generation.seeds.iter().map(|s| s.corner).collect();
        for fillings in Families::new(&shapes) {
            if fillings.iter().all(|a| a.weight() == 0) {
                continue;
            }
            stats.families += 1;
            let cubes = family_cubes(space, &corners, &fillings);
            let mut count: HashMap<usize, i32> = HashMap::new();
            for &(i, _) in &cubes {
                *count.entry(i).or_insert(0) += 1;
            }
            let constraints: Vec<Cube> = cubes.iter().map(|&(_, c)| c).collect();
            let with = space.min_with_cubes(&constraints)?;
            let mut lower = with.values.clone();
            for (&i, &n) in &count {
                lower[i] -= 3 * n;
            }
            for idx in 0..snapshot {
                let t = &found[idx];
                let inside = t.values.iter().zip(&lower).all(|(a, b)| a >= b) && t.le(top);
                if !inside {
                    continue;
                }
                let mut values = t.values.clone();
                for (&i, &n) in &count {
                    values[i] += 3 * n;
                }
                if !seen.insert(values.clone()) {
                    stats.duplicates += 1;
                    return Err(Error::DuplicateDetected);
                }
                found.push(HeightFunction::new(space.domain(), values)?);
            }
        }
        stats.per_generation.push(found.len() - snapshot);
    }
    stats.emitted = found.len();
    Ok((found, stats))
}

/// The lattice of one fertile zone.
pub fn enumerate_zone(zone: &Domain) -> Result<TilingLattice> {
    let space = PileSpace::new(Arc::new(zone.clone()))?;
    let (heights, _) = enumerate_zone_heights(&space)?;
    TilingLattice::from_heights(space.shared_domain(), heights)
}

fn zone_lattice(zone: &Zone) -> Result<(TilingLattice, ZoneStats)> {
    let domain = Arc::new(zone.domain.clone());
    match zone.kind {
        ZoneKind::FrozenLozenge => {
            let h = thurston_run(&domain, Mode::Minimal)?.heights;
            let stats = ZoneStats { per_generation: vec![1], emitted: 1, ..ZoneStats::default() };
            Ok((TilingLattice::from_heights(domain, vec![h])?, stats))
        }
        ZoneKind::Fertile => {
            let space = PileSpace::new(domain)?;
            let (heights, stats) = enumerate_zone_heights(&space)?;
            Ok((TilingLattice::from_heights(space.shared_domain(), heights)?, stats))
        }
    }
}

fn zone_lattices(zones: &[Zone], jobs: usize) -> Result<Vec<(TilingLattice, ZoneStats)>> {
    if jobs <= 1 || zones.len() <= 1 {
        return zones.iter().map(zone_lattice).collect();
    }
    let chunk = zones.len().div_ceil(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = zones
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(zone_lattice).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::with_capacity(zones.len());
        for h in handles {
            out.extend(h.join().expect("zone worker panicked")?);
        }
        Ok(out)
    })
}

pub fn enumerate(d: &Domain) -> Result<EnumerationResult> {
    enumerate_with_jobs(d, 1)
}

/// Like [`enumerate`], with fertile zones spread over `jobs` threads. The
/// result does not depend on `jobs`.
pub fn enumerate_with_jobs(d: &Domain, jobs: usize) -> Result<EnumerationResult> {
    thurston_run(d, Mode::Minimal)?;
    let decomposition = fracture_zones(d)?;
    let lattices = zone_lattices(&decomposition.zones, jobs)?;
    let factors: Vec<&TilingLattice> = lattices.iter().map(|(l, _)| l).collect();
    let full = product_on(Arc::new(d.clone()), &factors)?;
    let stats = EnumerationStats {
        emitted: full.len(),
        duplicates: lattices.iter().map(|(_, s)| s.duplicates).sum(),
        zones: lattices.iter().map(|(_, s)| s.clone()).collect(),
    };
    let zones = decomposition.zones.into_iter().zip(lattices).map(|(z, (l, _))| (z, l)).collect();
    Ok(EnumerationResult { zones, full, stats })
}

/// Hand every tiling of `d` to `sink` once, walking the product of the zone
/// lattices without building the full lattice.
pub fn stream_tilings<F: FnMut(&Tiling)>(d: &Domain, jobs: usize, mut sink: F) -> Result<EnumerationStats> {
    thurston_run(d, Mode::Minimal)?;
    let decomposition = fracture_zones(d)?;
    let lattices = zone_lattices(&decomposition.zones, jobs)?;
    let sizes: Vec<usize> = lattices.iter().map(|(l, _)| l.len()).collect();
    let mut digits = vec![0usize; sizes.len()];
    let mut emitted = 0;
    'walk: loop {
        let t = Tiling::union(digits.iter().zip(&lattices).map(|(&k, (l, _))| &l.tilings()[k]));
        sink(&t);
        emitted += 1;
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                break 'walk;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < sizes[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
    Ok(EnumerationStats {
        emitted,
        duplicates: lattices.iter().map(|(_, s)| s.duplicates).sum(),
        zones: lattices.into_iter().map(|(_, s)| s).collect(),
    })
}

/// The intervals `[D^k, D^(k+1)]` of a fertile zone.
pub fn fundamental_intervals(space: &PileSpace) -> Result<Vec<(HeightFunction, HeightFunction)>> {
    let chain = space.dk_chain()?;
    Ok(chain.windows(2).map(|w| (w[0].heights.clone(), w[1].heights.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{from_contour, hexagon, pseudo_hexagon};
    use crate::grid::Vertex;
    use crate::tiling::oracle_all_heights;

    #[test]
    fn small_counts() {
        let r = enumerate(&hexagon(1, 1, 1).unwrap()).unwrap();
        assert_eq!((r.full.len(), r.full.edge_count()), (2, 1));
        assert_eq!(enumerate(&hexagon(2, 2, 2).unwrap()).unwrap().full.len(), 20);
        let single = enumerate(&from_contour("abAB", Vertex::ORIGIN).unwrap()).unwrap();
        assert_eq!(single.full.len(), 1);
        assert_eq!(single.zones[0].0.kind, ZoneKind::FrozenLozenge);
        let butterfly = from_contour("bccaBCCA", Vertex::ORIGIN).unwrap();
        assert_eq!(enumerate(&butterfly).unwrap_err(), Error::Untileable);
    }

    #[test]
    fn matches_flip_closure() {
        for (x, y, z) in [(2, 1, 1), (2, 2, 1), (3, 2, 1), (2, 2, 2), (3, 2, 2)] {
            let d = hexagon(x, y, z).unwrap();
            let r = enumerate(&d).unwrap();
            assert_eq!(r.full.heights(), oracle_all_heights(&d).unwrap().as_slice(), "hexagon({x},{y},{z})");
        }
        let p = PlanePartition::from_rows(vec![vec![2, 1], vec![1, 0]]).unwrap();
        let d = pseudo_hexagon(&p).unwrap();
        assert_eq!(enumerate(&d).unwrap().full.heights(), oracle_all_heights(&d).unwrap().as_slice());
    }

    #[test]
    fn streaming_agrees() {
        let d = hexagon(2, 2, 2).unwrap();
        let mut seen = HashSet::new();
        let stats = stream_tilings(&d, 2, |t| {
            assert!(seen.insert(t.clone()));
        })
        .unwrap();
        assert_eq!((stats.emitted, stats.duplicates, seen.len()), (20, 0, 20));
    }

    #[test]
    fn families_walk_in_mixed_radix_order() {
        let one = PlanePartition::from_rows(vec![vec![1]]).unwrap();
        let shapes = vec![one.clone(), one];
        let weights: Vec<Vec<u64>> =
            Families::new(&shapes).map(|f| f.iter().map(PlanePartition::weight).collect()).collect();
        assert_eq!(weights, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
