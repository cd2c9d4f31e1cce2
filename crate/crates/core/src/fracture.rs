//! Solid vertices and the decomposition of a domain into independent zones.
//!
//! A vertex is solid when its height is the same in the minimal and the
//! maximal tiling, hence in every tiling. Lozenges of the minimal tiling with
//! four solid corners occur in every tiling and form zones of their own. The
//! other triangles split into fertile zones along edges joining two solid
//! vertices.

use std::collections::HashMap;

use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::grid::{Lozenge, Triangle, Vertex};
use crate::heights::HeightFunction;
use crate::tiling::{thurston_run, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZoneKind {
    Fertile,
    FrozenLozenge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zone {
    pub kind: ZoneKind,
    pub domain: Domain,
    /// The lozenge itself, for frozen zones.
    pub lozenge: Option<Lozenge>,
}

impl Zone {
    pub fn triangles(&self) -> &[Triangle] {
        self.domain.triangles()
    }

    pub fn boundary(&self) -> &[Vertex] {
        self.domain.boundary()
    }

    pub fn boundary_word(&self) -> String {
        self.domain.contour().to_string()
    }
}

#[derive(Clone, Debug)]
pub struct ZoneDecomposition {
    pub zones: Vec<Zone>,
    /// Solid vertices in vertex order.
    pub solid: Vec<Vertex>,
    pub min: HeightFunction,
    pub max: HeightFunction,
    /// Components that had to be merged with their neighbours because they
    /// would have enclosed another zone.
    pub merged: usize,
}

impl ZoneDecomposition {
    pub fn fertile(&self) -> impl Iterator<Item = &Zone> {
        self.zones.iter().filter(|z| z.kind == ZoneKind::Fertile)
    }

    pub fn frozen(&self) -> impl Iterator<Item = &Zone> {
        self.zones.iter().filter(|z| z.kind == ZoneKind::FrozenLozenge)
    }
}

fn solid_mask(d: &Domain, min: &HeightFunction, max: &HeightFunction) -> Vec<bool> {
    (0..d.vertex_count()).map(|i| min.values[i] == max.values[i]).collect()
}

pub fn solid_vertices(d: &Domain) -> Result<Vec<Vertex>> {
    let min = thurston_run(d, Mode::Minimal)?.heights;
    let max = thurston_run(d, Mode::Maximal)?.heights;
    let mask = solid_mask(d, &min, &max);
    Ok(d.vertices().iter().zip(mask).filter(|(_, s)| *s).map(|(&v, _)| v).collect())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn fracture_zones(d: &Domain) -> Result<ZoneDecomposition> {
    let low = thurston_run(d, Mode::Minimal)?;
    let max = thurston_run(d, Mode::Maximal)?.heights;
    let min = low.heights;
    let solid = solid_mask(d, &min, &max);
    let is_solid = |v: Vertex| d.index_of(v).is_some_and(|i| solid[i]);

    let n = d.triangle_count();
    let mut frozen_of: Vec<Option<Lozenge>> = vec![None; n];
    for &l in low.tiling.lozenges() {
        if l.vertices().iter().all(|&v| is_solid(v)) {
            let (s, t) = l.cells();
            for cell in [s, t] {
                frozen_of[d.triangle_index(&cell).expect("tiling cell")] = Some(l);
            }
        }
    }

    // glue triangles across edges unless the edge is a fracture edge
    let mut uf = UnionFind((0..n).collect());
    for e in d.edges().iter().filter(|e| e.interior) {
        let [s, t] = e.edge.triangles();
        let (i, j) = (d.triangle_index(&s).expect("interior"), d.triangle_index(&t).expect("interior"));
        let glue = match (frozen_of[i], frozen_of[j]) {
            (Some(a), Some(b)) => a == b,
            (None, None) => !(solid[e.tail] && solid[e.head]),
            _ => false,
        };
        if glue {
            uf.union(i, j);
        }
    }

    let mut merged = 0;
    loop {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        let mut roots: Vec<usize> = groups.keys().copied().collect();
        roots.sort_unstable();
        let mut zones = Vec::with_capacity(roots.len());
        let mut failed = None;
        for r in roots {
            let members = &groups[&r];
            let triangles: Vec<Triangle> = members.iter().map(|&i| d.triangles()[i]).collect();
            match Domain::from_triangles(triangles) {
                Ok(zone) => {
                    let lozenge = frozen_of[members[0]].filter(|_| members.len() == 2);
                    let kind = if lozenge.is_some() { ZoneKind::FrozenLozenge } else { ZoneKind::Fertile };
                    if kind == ZoneKind::FrozenLozenge {
                        assert!(
                            (0..zone.vertex_count()).all(|i| !zone.is_interior(i)),
                            "a frozen zone has no interior vertex"
                        );
                    }
                    zones.push(Zone { kind, domain: zone, lozenge });
                }
                Err(_) => {
                    failed = Some(r);
                    break;
                }
            }
        }
        match failed {
            None => {
                zones.sort_by(|a, b| a.triangles()[0].cmp(&b.triangles()[0]));
                let solid_list = d.vertices().iter().zip(&solid).filter(|(_, s)| **s).map(|(&v, _)| v).collect();
                return Ok(ZoneDecomposition { zones, solid: solid_list, min, max, merged });
            }
            Some(r) => {
                // absorb every neighbouring component into the failing one
                merged += 1;
                let members = groups[&r].clone();
                for i in members {
                    for e in d.triangles()[i].edges() {
                        for t in e.triangles() {
                            if let Some(j) = d.triangle_index(&t) {
                                uf.union(i, j);
                            }
                        }
                    }
                }
                if groups.len() == 1 {
                    return Err(Error::HasHoles);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{from_contour, hexagon};

    #[test]
    fn unit_hexagon_has_one_fertile_zone() {
        let d = hexagon(1, 1, 1).unwrap();
        let solid = solid_vertices(&d).unwrap();
        assert_eq!(solid.len(), 6);
        assert!(!solid.contains(&Vertex::new(1, 1)));
        let z = fracture_zones(&d).unwrap();
        assert_eq!(z.zones.len(), 1);
        assert_eq!(z.zones[0].kind, ZoneKind::Fertile);
        assert_eq!(z.zones[0].domain, d);
    }

    #[test]
    fn unit_lozenge_is_frozen() {
        let d = from_contour("abAB", Vertex::ORIGIN).unwrap();
        assert_eq!(solid_vertices(&d).unwrap().len(), 4);
        let z = fracture_zones(&d).unwrap();
        assert_eq!(z.zones.len(), 1);
        assert_eq!(z.zones[0].kind, ZoneKind::FrozenLozenge);
        assert_eq!(z.zones[0].boundary_word(), "abAB");
    }

    #[test]
    fn regular_hexagon_is_one_zone() {
        let d = hexagon(2, 2, 2).unwrap();
        let z = fracture_zones(&d).unwrap();
        assert_eq!(z.zones.len(), 1);
        assert_eq!(z.zones[0].triangles().len(), 24);
        assert_eq!(z.solid.len(), 12);
    }

    #[test]
    fn untileable_passes_through() {
        let d = from_contour("bccaBCCA", Vertex::ORIGIN).unwrap();
        assert_eq!(fracture_zones(&d).unwrap_err(), Error::Untileable);
    }
}
