//! Integer model of the triangular grid.
//!
//! Vertices live in the lattice spanned by the `a` and `b` steps, so
//! `a = (1,0)`, `b = (0,1)` and `c = (-1,-1)`. Every object here is a plain
//! value type.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three edge labels of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn vector(self) -> (i32, i32) {
        match self {
            Letter::A => (1, 0),
            Letter::B => (0, 1),
            Letter::C => (-1, -1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A directed unit step: a letter together with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction {
    pub letter: Letter,
    pub sign: Sign,
}

impl Direction {
    pub const fn new(letter: Letter, sign: Sign) -> Self {
        Direction { letter, sign }
    }

    pub const fn pos(letter: Letter) -> Self {
        Direction::new(letter, Sign::Pos)
    }

    pub const fn neg(letter: Letter) -> Self {
        Direction::new(letter, Sign::Neg)
    }

    /// All six steps.
    pub const ALL: [Direction; 6] = [
        Direction::pos(Letter::A),
        Direction::pos(Letter::B),
        Direction::pos(Letter::C),
        Direction::neg(Letter::A),
        Direction::neg(Letter::B),
        Direction::neg(Letter::C),
    ];

    /// The six steps in counterclockwise angular order, starting at `a`.
    ///
    /// Even positions hold the positive steps `a, b, c`; odd positions the
    /// negative steps `c⁻, a⁻, b⁻`.
    pub const RING: [Direction; 6] = [
        Direction::pos(Letter::A),
        Direction::neg(Letter::C),
        Direction::pos(Letter::B),
        Direction::neg(Letter::A),
        Direction::pos(Letter::C),
        Direction::neg(Letter::B),
    ];

    pub fn inverse(self) -> Self {
        let sign = match self.sign {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        };
        Direction::new(self.letter, sign)
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    /// `+1` for positive steps, `-1` otherwise.
    pub fn weight(self) -> i32 {
        match self.sign {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn vector(self) -> (i32, i32) {
        let (dp, dq) = self.letter.vector();
        let s = self.weight();
        (s * dp, s * dq)
    }

    /// The letter written in a contour word: lowercase for positive steps,
    /// uppercase for inverses.
    pub fn as_char(self) -> char {
        let c = self.letter.as_char();
        match self.sign {
            Sign::Pos => c,
            Sign::Neg => c.to_ascii_uppercase(),
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        let letter = match ch.to_ascii_lowercase() {
            'a' => Letter::A,
            'b' => Letter::B,
            'c' => Letter::C,
            _ => return None,
        };
        Some(if ch.is_ascii_lowercase() {
            Direction::pos(letter)
        } else {
            Direction::neg(letter)
        })
    }

    /// The step joining two adjacent vertices, if they are adjacent.
    pub fn between(from: Vertex, to: Vertex) -> Option<Self> {
        let delta = (to.p - from.p, to.q - from.q);
        Direction::ALL.into_iter().find(|d| d.vector() == delta)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A grid vertex in the `(a, b)` basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Vertex {
    pub p: i32,
    pub q: i32,
}

impl From<[i32; 2]> for Vertex {
    fn from([p, q]: [i32; 2]) -> Self {
        Vertex { p, q }
    }
}

impl From<Vertex> for [i32; 2] {
    fn from(v: Vertex) -> Self {
        [v.p, v.q]
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl Vertex {
    pub const ORIGIN: Vertex = Vertex { p: 0, q: 0 };

    pub const fn new(p: i32, q: i32) -> Self {
        Vertex { p, q }
    }

    /// Residue of `p + q` modulo 3; every positive step adds one.
    pub fn color(self) -> i32 {
        (self.p + self.q).rem_euclid(3)
    }

    pub fn offset(self, dp: i32, dq: i32) -> Self {
        Vertex::new(self.p + dp, self.q + dq)
    }

    pub fn translate(self, by: Vertex) -> Self {
        self.offset(by.p, by.q)
    }
}

pub fn step(v: Vertex, d: Direction) -> Vertex {
    let (dp, dq) = d.vector();
    v.offset(dp, dq)
}

/// The six neighbours of `v` in counterclockwise order, starting with `v + a`.
pub fn hexagon_ring(v: Vertex) -> [Vertex; 6] {
    Direction::RING.map(|d| step(v, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Up,
    Down,
}

/// A unit triangle.
///
/// `Up` at `(p,q)` has corners `(p,q), (p+1,q), (p+1,q+1)`; `Down` at `(p,q)`
/// has corners `(p,q), (p,q+1), (p+1,q+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub anchor: Vertex,
    pub orientation: Orientation,
}

impl Triangle {
    pub const fn up(p: i32, q: i32) -> Self {
        Triangle { anchor: Vertex::new(p, q), orientation: Orientation::Up }
    }

    pub const fn down(p: i32, q: i32) -> Self {
        Triangle { anchor: Vertex::new(p, q), orientation: Orientation::Down }
    }

    /// Corners in counterclockwise order, starting at the anchor.
    pub fn vertices(self) -> [Vertex; 3] {
        let v = self.anchor;
        match self.orientation {
            Orientation::Up => [v, v.offset(1, 0), v.offset(1, 1)],
            Orientation::Down => [v, v.offset(1, 1), v.offset(0, 1)],
        }
    }

    /// The three sides, one per letter, in `a, b, c` order.
    pub fn edges(self) -> [Edge; 3] {
        let v = self.anchor;
        match self.orientation {
            Orientation::Up => [
                Edge::new(Letter::A, v),
                Edge::new(Letter::B, v.offset(1, 0)),
                Edge::new(Letter::C, v),
            ],
            Orientation::Down => [
                Edge::new(Letter::A, v.offset(0, 1)),
                Edge::new(Letter::B, v),
                Edge::new(Letter::C, v),
            ],
        }
    }

    /// Centroid scaled by 3, so that it has integer coordinates.
    pub fn centroid3(self) -> (i64, i64) {
        let v = self.vertices();
        let p: i64 = v.iter().map(|x| x.p as i64).sum();
        let q: i64 = v.iter().map(|x| x.q as i64).sum();
        (p, q)
    }

    /// The six triangles incident to `v`, in angular order. Entry `k` lies
    /// between the rays `RING[k]` and `RING[k + 1]`.
    pub fn around(v: Vertex) -> [Triangle; 6] {
        let (p, q) = (v.p, v.q);
        [
            Triangle::up(p, q),
            Triangle::down(p, q),
            Triangle::up(p - 1, q),
            Triangle::down(p - 1, q - 1),
            Triangle::up(p - 1, q - 1),
            Triangle::down(p, q - 1),
        ]
    }
}

/// An undirected unit edge, identified by its letter and its
/// lexicographically smaller endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub letter: Letter,
    pub anchor: Vertex,
}

impl Edge {
    pub const fn new(letter: Letter, anchor: Vertex) -> Self {
        Edge { letter, anchor }
    }

    /// The edge joining two adjacent vertices.
    pub fn between(u: Vertex, w: Vertex) -> Option<Self> {
        let d = Direction::between(u, w)?;
        let anchor = if u < w { u } else { w };
        Some(Edge::new(d.letter, anchor))
    }

    /// Endpoints `(tail, head)` such that `head = step(tail, +letter)`.
    pub fn positive_ends(self) -> (Vertex, Vertex) {
        let v = self.anchor;
        match self.letter {
            Letter::A => (v, v.offset(1, 0)),
            Letter::B => (v, v.offset(0, 1)),
            Letter::C => (v.offset(1, 1), v),
        }
    }

    /// The two triangles sharing this edge.
    pub fn triangles(self) -> [Triangle; 2] {
        let Vertex { p, q } = self.anchor;
        match self.letter {
            Letter::A => [Triangle::up(p, q), Triangle::down(p, q - 1)],
            Letter::B => [Triangle::down(p, q), Triangle::up(p - 1, q)],
            Letter::C => [Triangle::up(p, q), Triangle::down(p, q)],
        }
    }
}

/// Two unit triangles glued along a common edge, which is its diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lozenge {
    #[serde(rename = "d")]
    pub diagonal: Letter,
    pub anchor: Vertex,
}

impl Lozenge {
    pub const fn new(diagonal: Letter, anchor: Vertex) -> Self {
        Lozenge { diagonal, anchor }
    }

    pub fn from_diagonal(e: Edge) -> Self {
        Lozenge::new(e.letter, e.anchor)
    }

    pub fn diagonal_edge(self) -> Edge {
        Edge::new(self.diagonal, self.anchor)
    }

    pub fn cells(self) -> (Triangle, Triangle) {
        let [s, t] = self.diagonal_edge().triangles();
        (s, t)
    }

    /// Corners in counterclockwise order.
    pub fn vertices(self) -> [Vertex; 4] {
        let v = self.anchor;
        match self.diagonal {
            Letter::A => [v, v.offset(0, -1), v.offset(1, 0), v.offset(1, 1)],
            Letter::B => [v, v.offset(1, 1), v.offset(0, 1), v.offset(-1, 0)],
            Letter::C => [v, v.offset(1, 0), v.offset(1, 1), v.offset(0, 1)],
        }
    }

    /// Boundary word of the lozenge read counterclockwise from `vertices()[0]`.
    pub fn contour(self) -> [Direction; 4] {
        let vs = self.vertices();
        std::array::from_fn(|i| {
            Direction::between(vs[i], vs[(i + 1) % 4]).expect("lozenge corners are adjacent")
        })
    }
}

pub fn lozenge_cells(l: Lozenge) -> (Triangle, Triangle) {
    l.cells()
}
