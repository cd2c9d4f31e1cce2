//! Contour words, closed grid paths and the domains they enclose.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{hexagon_ring, step, Direction, Edge, Letter, Triangle, Vertex};
use crate::partitions::PlanePartition;

/// A word over `a b c A B C`, uppercase letters standing for inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ContourWord {
    pub steps: Vec<Direction>,
}

impl ContourWord {
    pub fn new(steps: Vec<Direction>) -> Self {
        ContourWord { steps }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (pos, ch) in text.chars().enumerate() {
            if ch.is_whitespace() {
                continue;
            }
            steps.push(Direction::from_char(ch).ok_or(Error::BadLetter { ch, pos })?);
        }
        if steps.is_empty() {
            return Err(Error::Empty);
        }
        Ok(ContourWord { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Free reduction: cancel adjacent `x x⁻¹` pairs until none remain.
    pub fn reduced(&self) -> ContourWord {
        let mut out: Vec<Direction> = Vec::with_capacity(self.steps.len());
        for &d in &self.steps {
            if out.last() == Some(&d.inverse()) {
                out.pop();
            } else {
                out.push(d);
            }
        }
        ContourWord { steps: out }
    }

    /// Image in the abelianized lozenge group: signed letter counts.
    pub fn l_label(&self) -> [i64; 3] {
        let mut label = [0i64; 3];
        for d in &self.steps {
            let slot = match d.letter {
                Letter::A => 0,
                Letter::B => 1,
                Letter::C => 2,
            };
            label[slot] += d.weight() as i64;
        }
        label
    }
}

impl fmt::Display for ContourWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.steps {
            write!(f, "{}", d.as_char())?;
        }
        Ok(())
    }
}

pub fn parse_contour(text: &str) -> Result<ContourWord> {
    ContourWord::parse(text)
}

/// Necessary condition for tileability: the word has trivial image in `Z^3`.
pub fn l_label_is_trivial(w: &ContourWord) -> bool {
    w.l_label() == [0, 0, 0]
}

/// A closed, non-self-intersecting vertex cycle. The start vertex is not
/// repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPath {
    pub vertices: Vec<Vertex>,
}

impl ClosedPath {
    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    /// Twice the signed area, in `(p, q)` units. Positive for counterclockwise.
    pub fn signed_area2(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let u = self.vertices[i];
                let w = self.vertices[(i + 1) % n];
                u.p as i64 * w.q as i64 - w.p as i64 * u.q as i64
            })
            .sum()
    }

    /// Winding number of the point `(x/3, y/3)` around the path.
    fn winding3(&self, x: i64, y: i64) -> i32 {
        let n = self.vertices.len();
        let mut wn = 0;
        for i in 0..n {
            let (u, w) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let (x0, y0) = (3 * u.p as i64, 3 * u.q as i64);
            let (x1, y1) = (3 * w.p as i64, 3 * w.q as i64);
            let side = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0);
            if y0 <= y {
                if y1 > y && side > 0 {
                    wn += 1;
                }
            } else if y1 <= y && side < 0 {
                wn -= 1;
            }
        }
        wn
    }
}

pub fn trace(w: &ContourWord, start: Vertex) -> Result<ClosedPath> {
    let mut seen = HashSet::new();
    let mut vertices = vec![start];
    seen.insert(start);
    let mut at = start;
    for (i, &d) in w.steps.iter().enumerate() {
        at = step(at, d);
        if i + 1 == w.steps.len() {
            break;
        }
        if !seen.insert(at) {
            return Err(Error::SelfIntersecting { vertex: at });
        }
        vertices.push(at);
    }
    if at != start {
        return Err(Error::NotClosed { end: at });
    }
    Ok(ClosedPath { vertices })
}

pub fn enclose(path: &ClosedPath) -> Result<Domain> {
    let pmin = path.vertices.iter().map(|v| v.p).min().unwrap_or(0);
    let pmax = path.vertices.iter().map(|v| v.p).max().unwrap_or(0);
    let qmin = path.vertices.iter().map(|v| v.q).min().unwrap_or(0);
    let qmax = path.vertices.iter().map(|v| v.q).max().unwrap_or(0);
    let mut triangles = Vec::new();
    for p in pmin - 1..=pmax {
        for q in qmin - 1..=qmax {
            for t in [Triangle::up(p, q), Triangle::down(p, q)] {
                let (x, y) = t.centroid3();
                if path.winding3(x, y) != 0 {
                    triangles.push(t);
                }
            }
        }
    }
    if triangles.is_empty() {
        return Err(Error::EmptyInterior);
    }
    Domain::with_start(triangles, Some(path.start()))
}

/// Parse, trace and enclose in one go.
pub fn from_contour(text: &str, start: Vertex) -> Result<Domain> {
    enclose(&trace(&parse_contour(text)?, start)?)
}

/// A domain edge with its endpoints oriented along the positive letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainEdge {
    pub edge: Edge,
    pub tail: usize,
    pub head: usize,
    /// Both adjacent triangles lie in the domain.
    pub interior: bool,
}

/// A finite, edge-connected set of triangles with a single boundary walk.
#[derive(Clone, Debug)]
pub struct Domain {
    triangles: Vec<Triangle>,
    triangle_index: HashMap<Triangle, usize>,
    vertices: Vec<Vertex>,
    vertex_index: HashMap<Vertex, usize>,
    interior: Vec<bool>,
    boundary: Vec<Vertex>,
    neighbors: Vec<[Option<u32>; 6]>,
    edges: Vec<DomainEdge>,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.triangles == other.triangles && self.boundary == other.boundary
    }
}

impl Eq for Domain {}

impl Domain {
    /// Build a domain from triangles. The boundary walk starts at the
    /// lexicographically smallest boundary vertex.
    pub fn from_triangles<I: IntoIterator<Item = Triangle>>(triangles: I) -> Result<Self> {
        Domain::with_start(triangles, None)
    }

    pub fn with_start<I: IntoIterator<Item = Triangle>>(triangles: I, start: Option<Vertex>) -> Result<Self> {
        let mut triangles: Vec<Triangle> = triangles.into_iter().collect();
        triangles.sort();
        triangles.dedup();
        if triangles.is_empty() {
            return Err(Error::EmptyInterior);
        }
        let triangle_index: HashMap<Triangle, usize> =
            triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();

        // edge connectivity
        let mut seen = vec![false; triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for e in triangles[i].edges() {
                for t in e.triangles() {
                    if let Some(&j) = triangle_index.get(&t) {
                        if !seen[j] {
                            seen[j] = true;
                            reached += 1;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        if reached != triangles.len() {
            return Err(Error::Disconnected);
        }

        let mut vertices: Vec<Vertex> = triangles.iter().flat_map(|t| t.vertices()).collect();
        vertices.sort();
        vertices.dedup();
        let vertex_index: HashMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let interior: Vec<bool> = vertices
            .iter()
            .map(|&v| Triangle::around(v).iter().all(|t| triangle_index.contains_key(t)))
            .collect();

        // directed boundary edges, domain on the left
        let mut outgoing: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        let mut boundary_edges = 0usize;
        for &t in &triangles {
            let vs = t.vertices();
            for k in 0..3 {
                let (u, w) = (vs[k], vs[(k + 1) % 3]);
                let e = Edge::between(u, w).expect("triangle sides are unit edges");
                let other = e.triangles().into_iter().find(|&s| s != t).expect("edge has two sides");
                if !triangle_index.contains_key(&other) {
                    outgoing.entry(u).or_default().push(w);
                    boundary_edges += 1;
                }
            }
        }
        let start = match start {
            Some(s) if outgoing.contains_key(&s) => s,
            Some(s) => return Err(Error::SelfIntersecting { vertex: s }),
            None => *outgoing.keys().min().expect("finite domains have a boundary"),
        };
        let boundary = walk_boundary(&outgoing, start);
        if boundary.len() != boundary_edges {
            return Err(Error::HasHoles);
        }

        let mut neighbors = vec![[None; 6]; vertices.len()];
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            let around = Triangle::around(v);
            let ring = hexagon_ring(v);
            for k in 0..6 {
                let left = triangle_index.contains_key(&around[k]);
                let right = triangle_index.contains_key(&around[(k + 5) % 6]);
                if left || right {
                    let j = vertex_index[&ring[k]];
                    neighbors[i][k] = Some(j as u32);
                    if Direction::RING[k].is_positive() {
                        let edge = Edge::between(v, ring[k]).expect("adjacent");
                        edges.push(DomainEdge { edge, tail: i, head: j, interior: left && right });
                    }
                }
            }
        }

        Ok(Domain { triangles, triangle_index, vertices, vertex_index, interior, boundary, neighbors, edges })
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn contains_triangle(&self, t: &Triangle) -> bool {
        self.triangle_index.contains_key(t)
    }

    pub fn triangle_index(&self, t: &Triangle) -> Option<usize> {
        self.triangle_index.get(t).copied()
    }

    /// All vertices, sorted. Height vectors are indexed in this order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertex_index.get(&v).copied()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertex_index.contains_key(&v)
    }

    /// A vertex is interior when all six triangles around it are in the domain.
    pub fn is_interior(&self, i: usize) -> bool {
        self.interior[i]
    }

    /// Counterclockwise boundary walk, starting at the base vertex.
    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    /// Reference vertex of height 0.
    pub fn base(&self) -> Vertex {
        self.boundary[0]
    }

    pub fn base_index(&self) -> usize {
        self.vertex_index[&self.boundary[0]]
    }

    pub fn contour(&self) -> ContourWord {
        let n = self.boundary.len();
        ContourWord::new(
            (0..n)
                .map(|i| Direction::between(self.boundary[i], self.boundary[(i + 1) % n]).expect("unit steps"))
                .collect(),
        )
    }

    /// Neighbour of vertex `i` along ring direction `k`, if the joining edge
    /// is a domain edge.
    pub fn neighbor(&self, i: usize, k: usize) -> Option<usize> {
        self.neighbors[i][k].map(|j| j as usize)
    }

    pub fn edges(&self) -> &[DomainEdge] {
        &self.edges
    }

    pub fn edge(&self, e: Edge) -> Option<DomainEdge> {
        let (tail, head) = e.positive_ends();
        let (t, h) = (self.index_of(tail)?, self.index_of(head)?);
        let left = self.contains_triangle(&e.triangles()[0]);
        let right = self.contains_triangle(&e.triangles()[1]);
        (left || right).then_some(DomainEdge { edge: e, tail: t, head: h, interior: left && right })
    }

    /// Stable fingerprint of the vertex set, used to catch mixing objects
    /// from different domains.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.triangles.hash(&mut h);
        h.finish()
    }

    pub fn to_json(&self) -> DomainJson {
        DomainJson {
            contour: self.contour().to_string(),
            start: self.base(),
            triangles: Some(self.triangles.clone()),
        }
    }
}

/// Follow directed boundary edges, always taking the first outgoing edge
/// clockwise from the way back, so that pinched boundaries are walked as a
/// single closed walk.
fn walk_boundary(outgoing: &HashMap<Vertex, Vec<Vertex>>, start: Vertex) -> Vec<Vertex> {
    let ring_index = |from: Vertex, to: Vertex| {
        let d = Direction::between(from, to).expect("unit step");
        Direction::RING.iter().position(|&r| r == d).expect("ring holds all steps")
    };
    let first = {
        let mut outs = outgoing[&start].clone();
        outs.sort();
        outs[0]
    };
    let mut walk = vec![start];
    let (mut prev, mut at) = (start, first);
    let limit: usize = outgoing.values().map(Vec::len).sum();
    while walk.len() <= limit {
        let outs = &outgoing[&at];
        let next = if outs.len() == 1 {
            outs[0]
        } else {
            let back = ring_index(at, prev);
            (1..=6)
                .map(|k| step(at, Direction::RING[(back + 6 - k) % 6]))
                .find(|w| outs.contains(w))
                .expect("some outgoing edge")
        };
        if at == start && next == first {
            break;
        }
        walk.push(at);
        prev = at;
        at = next;
    }
    walk
}

/// JSON form of a domain. The triangle list is informative only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub contour: String,
    pub start: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<Triangle>>,
}

impl DomainJson {
    pub fn to_domain(&self) -> Result<Domain> {
        from_contour(&self.contour, self.start)
    }
}

/// The hexagon with consecutive sides `x, y, z, x, y, z`, starting at the
/// origin and going counterclockwise.
pub fn hexagon_word(x: i32, y: i32, z: i32) -> String {
    let mut s = String::new();
    for (ch, n) in [('a', x), ('C', y), ('b', z), ('A', x), ('c', y), ('B', z)] {
        s.extend(std::iter::repeat_n(ch, n.max(0) as usize));
    }
    s
}

pub fn hexagon(x: i32, y: i32, z: i32) -> Result<Domain> {
    if x < 1 || y < 1 || z < 1 {
        return Err(Error::BadSize((x, y, z)));
    }
    from_contour(&hexagon_word(x, y, z), Vertex::ORIGIN)
}

/// The six triangles around `v`.
pub fn unit_hexagon_at(v: Vertex) -> [Triangle; 6] {
    Triangle::around(v)
}

/// Projection of the cube with lowest corner `(x, y, z)` onto the grid: the
/// flip vertex below it.
pub fn cube_vertex(x: i32, y: i32, z: i32) -> Vertex {
    Vertex::new(x - z, y - z)
}

/// The domain covered by the compact pile described by `pp`: a cube stands
/// at `(row, col, level)` for every `level < pp[row][col]`.
pub fn pseudo_hexagon(pp: &PlanePartition) -> Result<Domain> {
    pp.check()?;
    if pp.weight() == 0 {
        return Err(Error::NotAPlanePartition("empty pile".into()));
    }
    let mut triangles = Vec::new();
    for (r, row) in pp.rows.iter().enumerate() {
        for (c, &h) in row.parts.iter().enumerate() {
            for k in 0..h as i32 {
                triangles.extend(unit_hexagon_at(cube_vertex(r as i32, c as i32, k)));
            }
        }
    }
    Domain::from_triangles(triangles)
}
