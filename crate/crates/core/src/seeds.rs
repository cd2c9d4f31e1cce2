//! Cubes, compact piles and seeds.
//!
//! Each tiling of a zone is a stepped surface in Z^3. A vertex `v` with
//! height `h` lifts to `(x, y, z)` with `x - z = p`, `y - z = q` and
//! `x + y + z = h + p0 + q0`, where `(p0, q0)` is the zone's base vertex. An
//! up-flip at `v` adds the unit cube whose lowest corner is that lift.
//!
//! Cubes are named by `(vertex, level)`: level `j` at `v` is present in a
//! tiling exactly when `h(v) >= h_min(v) + 3j`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::domain::{cube_vertex, Domain};
use crate::error::{Error, Result};
use crate::grid::{Triangle, Vertex};
use crate::heights::{height_from_tiling, HeightFunction};
use crate::partitions::PlanePartition;
use crate::tiling::{flip_height, thurston_run, up_flippable, FlipDir, Mode, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cube {
    pub vertex: Vertex,
    pub level: u32,
}

/// A set of cubes over one zone, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Pile {
    pub cubes: Vec<Cube>,
}

impl Pile {
    pub fn new(mut cubes: Vec<Cube>) -> Self {
        cubes.sort();
        cubes.dedup();
        Pile { cubes }
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn is_disjoint(&self, other: &Pile) -> bool {
        let mine: HashSet<&Cube> = self.cubes.iter().collect();
        !other.cubes.iter().any(|c| mine.contains(c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Seed {
    pub center: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedRecord {
    pub seed: Seed,
    pub order: u32,
    /// Lowest corner of the seed cube in Z^3.
    pub corner: [i32; 3],
    pub max_pile: Pile,
    #[serde(skip)]
    pub max_range: Vec<Triangle>,
    pub shape: PlanePartition,
}

/// A zone together with its extreme height functions.
#[derive(Clone, Debug)]
pub struct PileSpace {
    domain: Arc<Domain>,
    min: HeightFunction,
    max: HeightFunction,
    offset: i32,
}

impl PileSpace {
    pub fn new(domain: Arc<Domain>) -> Result<Self> {
        let min = thurston_run(&domain, Mode::Minimal)?.heights;
        let max = thurston_run(&domain, Mode::Maximal)?.heights;
        let b = domain.base();
        Ok(PileSpace { offset: b.p + b.q, domain, min, max })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn shared_domain(&self) -> Arc<Domain> {
        self.domain.clone()
    }

    pub fn min(&self) -> &HeightFunction {
        &self.min
    }

    pub fn max(&self) -> &HeightFunction {
        &self.max
    }

    /// Lift of vertex `i` at height `h`.
    pub fn lift(&self, i: usize, h: i32) -> [i32; 3] {
        let v = self.domain.vertices()[i];
        let s = h + self.offset;
        let z = (s - v.p - v.q).div_euclid(3);
        debug_assert_eq!((s - v.p - v.q).rem_euclid(3), 0, "height has the wrong colour");
        [v.p + z, v.q + z, z]
    }

    /// The cube with lowest corner `c`, if it stands over a vertex of the zone.
    pub fn cube_at(&self, c: [i32; 3]) -> Option<(usize, Cube)> {
        let v = cube_vertex(c[0], c[1], c[2]);
        let i = self.domain.index_of(v)?;
        let h = c[0] + c[1] + c[2] - self.offset;
        let level = (h + 3 - self.min.values[i]) / 3;
        (level >= 1).then_some((i, Cube { vertex: v, level: level as u32 }))
    }

    /// Cubes present in `h`, relative to the minimal tiling.
    pub fn pile_of(&self, h: &HeightFunction) -> Pile {
        let mut cubes = Vec::new();
        for (i, &v) in self.domain.vertices().iter().enumerate() {
            let n = (h.values[i] - self.min.values[i]) / 3;
            cubes.extend((1..=n as u32).map(|level| Cube { vertex: v, level }));
        }
        Pile::new(cubes)
    }

    /// Add a pile on top of the minimal tiling. No validity check.
    pub fn raise(&self, base: &HeightFunction, counts: &HashMap<usize, i32>) -> HeightFunction {
        let mut values = base.values.clone();
        for (&i, &n) in counts {
            values[i] += 3 * n;
        }
        HeightFunction::from_values(&self.domain, values)
    }

    /// Local minima of `h`, as seeds.
    pub fn find_seeds(&self, h: &HeightFunction) -> Vec<Seed> {
        up_flippable(&self.domain, h).into_iter().map(|i| Seed { center: self.domain.vertices()[i] }).collect()
    }

    /// Grow the largest compact pile rooted at the seed's cube.
    ///
    /// A local minimum may be flipped when its cube lies in the octant of the
    /// seed corner and all of that cube's supporting cubes which also lie in
    /// the octant are already in the pile. A cube's supports stand over the
    /// neighbours `v - a`, `v - b`, `v - c`, so only neighbours of a freshly
    /// flipped vertex need to be reconsidered.
    pub fn maximal_filling(&self, seed: Seed, context: &HeightFunction, order: u32) -> Result<SeedRecord> {
        let d = &*self.domain;
        let start = d.index_of(seed.center).ok_or(Error::NotFlippable { vertex: seed.center })?;
        let mut cur = flip_height(d, context, start, FlipDir::Up)?;
        let corner = self.lift(start, context.values[start]);
        let mut pile: HashSet<[i32; 3]> = HashSet::from([[0, 0, 0]]);
        let mut flipped = vec![start];
        let mut queue: VecDeque<usize> = (0..6).filter_map(|k| d.neighbor(start, k)).collect();
        while let Some(i) = queue.pop_front() {
            if !d.is_interior(i) {
                continue;
            }
            let Ok(next) = flip_height(d, &cur, i, FlipDir::Up) else { continue };
            let c = self.lift(i, cur.values[i]);
            let rel = [c[0] - corner[0], c[1] - corner[1], c[2] - corner[2]];
            if rel.iter().any(|&x| x < 0) {
                continue;
            }
            let supported = (0..3).all(|axis| {
                let mut s = rel;
                s[axis] -= 1;
                s[axis] < 0 || pile.contains(&s)
            });
            if !supported {
                continue;
            }
            pile.insert(rel);
            cur = next;
            flipped.push(i);
            queue.extend((0..6).filter_map(|k| d.neighbor(i, k)));
        }

        let rows = pile.iter().map(|c| c[0]).max().unwrap_or(0) as usize + 1;
        let cols = pile.iter().map(|c| c[1]).max().unwrap_or(0) as usize + 1;
        let mut grid = vec![vec![0u32; cols]; rows];
        for c in &pile {
            let cell = &mut grid[c[0] as usize][c[1] as usize];
            *cell = (*cell).max(c[2] as u32 + 1);
        }
        let shape = PlanePartition::from_rows(grid)?;
        debug_assert_eq!(shape.weight() as usize, pile.len());
        let cubes = pile
            .iter()
            .map(|r| self.cube_at([corner[0] + r[0], corner[1] + r[1], corner[2] + r[2]]).expect("pile stands on the zone").1)
            .collect();
        let range: BTreeSet<Triangle> = flipped.iter().flat_map(|&i| Triangle::around(d.vertices()[i])).collect();
        Ok(SeedRecord {
            seed,
            order,
            corner,
            max_pile: Pile::new(cubes),
            max_range: range.into_iter().collect(),
            shape,
        })
    }

    /// Seeds whose maximal range is not strictly inside another seed's range.
    pub fn proper_seeds(&self, h: &HeightFunction, order: u32) -> Result<Vec<SeedRecord>> {
        let records =
            self.find_seeds(h).into_iter().map(|s| self.maximal_filling(s, h, order)).collect::<Result<Vec<_>>>()?;
        let ranges: Vec<HashSet<Triangle>> = records.iter().map(|r| r.max_range.iter().copied().collect()).collect();
        let strictly_inside = |i: usize, j: usize| ranges[i].len() < ranges[j].len() && ranges[i].is_subset(&ranges[j]);
        Ok(records
            .iter()
            .enumerate()
            .filter(|&(i, _)| !(0..records.len()).any(|j| j != i && strictly_inside(i, j)))
            .map(|(_, r)| r.clone())
            .collect())
    }

    /// Number of cubes of `pile` standing over each vertex.
    pub fn counts(&self, pile: &Pile) -> HashMap<usize, i32> {
        let mut out = HashMap::new();
        for c in &pile.cubes {
            *out.entry(self.domain.index_of(c.vertex).expect("cube over zone")).or_insert(0) += 1;
        }
        out
    }

    /// The chain `D^0 = Min, D^1, ..., Max`, with the proper seeds of each
    /// member. The last generation has no seeds.
    pub fn dk_chain(&self) -> Result<Vec<Generation>> {
        let mut out = Vec::new();
        let mut cur = self.min.clone();
        let mut order = 0;
        loop {
            if cur == self.max {
                out.push(Generation { heights: cur, seeds: Vec::new() });
                return Ok(out);
            }
            let seeds = self.proper_seeds(&cur, order)?;
            if seeds.is_empty() {
                return Err(Error::NotFertile);
            }
            let mut next = cur.values.clone();
            for s in &seeds {
                for (i, n) in self.counts(&s.max_pile) {
                    next[i] += 3 * n;
                }
            }
            let next = HeightFunction::new(&self.domain, next)?;
            out.push(Generation { heights: cur, seeds });
            cur = next;
            order += 1;
        }
    }

    /// The least height function that contains every cube of `constraints`.
    ///
    /// Starting from the minimal tiling with the constrained vertices raised,
    /// heights are pushed up until every edge obeys `h(u + d) >= h(u) - 2`
    /// and `h(u) >= h(u + d) - 1` for positive steps `d`. Both rules are
    /// monotone, so this reaches the least fixpoint. Constraints that hold
    /// one by one can always be met together.
    pub fn min_with_cubes(&self, constraints: &[Cube]) -> Result<HeightFunction> {
        let d = &*self.domain;
        let mut values = self.min.values.clone();
        let mut queue = VecDeque::new();
        for c in constraints {
            let i = d.index_of(c.vertex).ok_or(Error::UnsatisfiableCube { vertex: c.vertex, level: c.level })?;
            let need = self.min.values[i] + 3 * c.level as i32;
            if c.level == 0 || need > self.max.values[i] {
                return Err(Error::UnsatisfiableCube { vertex: c.vertex, level: c.level });
            }
            if values[i] < need {
                values[i] = need;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for k in 0..6 {
                let Some(j) = d.neighbor(i, k) else { continue };
                let bound = values[i] - if k % 2 == 0 { 2 } else { 1 };
                if values[j] < bound {
                    // both bounds already carry the colour of j, and the
                    // maximal tiling satisfies every constraint, so this
                    // never overshoots
                    debug_assert!(bound <= self.max.values[j]);
                    values[j] = bound;
                    queue.push_back(j);
                }
            }
        }
        HeightFunction::new(d, values)
    }
}

/// One step of the chain: a tiling and the proper seeds found in it.
#[derive(Clone, Debug)]
pub struct Generation {
    pub heights: HeightFunction,
    pub seeds: Vec<SeedRecord>,
}

/// Local minima of a tiling, as seeds.
pub fn find_seeds(d: &Domain, t: &Tiling) -> Result<Vec<Seed>> {
    let h = height_from_tiling(d, t)?;
    Ok(up_flippable(d, &h).into_iter().map(|i| Seed { center: d.vertices()[i] }).collect())
}

pub fn maximal_filling(d: &Domain, s: Seed, context: &Tiling) -> Result<SeedRecord> {
    let space = PileSpace::new(Arc::new(d.clone()))?;
    space.maximal_filling(s, &height_from_tiling(d, context)?, 0)
}

pub fn proper_seeds(d: &Domain, t: &Tiling) -> Result<Vec<SeedRecord>> {
    let space = PileSpace::new(Arc::new(d.clone()))?;
    space.proper_seeds(&height_from_tiling(d, t)?, 0)
}

pub fn dk_chain(d: &Domain) -> Result<Vec<HeightFunction>> {
    let space = PileSpace::new(Arc::new(d.clone()))?;
    Ok(space.dk_chain()?.into_iter().map(|g| g.heights).collect())
}

pub fn min_with_cubes(d: &Domain, constraints: &[Cube]) -> Result<HeightFunction> {
    PileSpace::new(Arc::new(d.clone()))?.min_with_cubes(constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::hexagon;
    use crate::tiling::thurston;

    fn space(d: Domain) -> PileSpace {
        PileSpace::new(Arc::new(d)).unwrap()
    }

    #[test]
    fn unit_hexagon_seed() {
        let d = hexagon(1, 1, 1).unwrap();
        let lo = thurston(&d, Mode::Minimal).unwrap();
        let seeds = find_seeds(&d, &lo).unwrap();
        assert_eq!(seeds, vec![Seed { center: Vertex::new(1, 1) }]);
        let r = maximal_filling(&d, seeds[0], &lo).unwrap();
        assert_eq!(r.max_pile.len(), 1);
        assert_eq!(r.max_range.len(), 6);
        assert_eq!(r.shape, PlanePartition::from_rows(vec![vec![1]]).unwrap());
        assert!(find_seeds(&d, &thurston(&d, Mode::Maximal).unwrap()).unwrap().is_empty());
        assert_eq!(dk_chain(&d).unwrap().len(), 2);
    }

    #[test]
    fn regular_hexagon_fills_its_box() {
        for n in 1..=3 {
            let s = space(hexagon(n, n, n).unwrap());
            let seeds = s.find_seeds(s.min());
            assert_eq!(seeds.len(), 1);
            let r = s.maximal_filling(seeds[0], s.min(), 0).unwrap();
            let box_n = PlanePartition::from_rows(vec![vec![n as u32; n as usize]; n as usize]).unwrap();
            assert_eq!(r.shape, box_n);
            assert_eq!(r.max_pile.len(), (n * n * n) as usize);
            let chain = s.dk_chain().unwrap();
            assert_eq!(chain.len(), 2);
            assert_eq!(&chain[1].heights, s.max());
        }
    }

    #[test]
    fn cube_constraints() {
        let s = space(hexagon(2, 2, 2).unwrap());
        assert_eq!(&s.min_with_cubes(&[]).unwrap(), s.min());
        let seed = s.find_seeds(s.min())[0];
        let top = Cube { vertex: seed.center, level: 2 };
        // the top cube above the seed needs the whole box
        assert_eq!(&s.min_with_cubes(&[top]).unwrap(), s.max());
        let too_high = Cube { vertex: seed.center, level: 3 };
        assert!(matches!(s.min_with_cubes(&[too_high]), Err(Error::UnsatisfiableCube { .. })));
        let corner = s.domain().base();
        assert!(matches!(s.min_with_cubes(&[Cube { vertex: corner, level: 1 }]), Err(Error::UnsatisfiableCube { .. })));
    }

    #[test]
    fn pile_of_max_is_the_box() {
        let s = space(hexagon(2, 3, 1).unwrap());
        assert_eq!(s.pile_of(s.max()).len(), 6);
        assert!(s.pile_of(s.min()).is_empty());
    }
}
