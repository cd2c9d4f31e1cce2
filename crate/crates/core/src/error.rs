use thiserror::Error;

use crate::grid::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad letter {ch:?} at position {pos} (expected one of a b c A B C)")]
    BadLetter { ch: char, pos: usize },
    #[error("empty contour word")]
    Empty,
    #[error("path does not close: it ends at {end}")]
    NotClosed { end: Vertex },
    #[error("path revisits vertex {vertex}")]
    SelfIntersecting { vertex: Vertex },
    #[error("contour encloses no triangle")]
    EmptyInterior,
    #[error("triangle set is not edge-connected")]
    Disconnected,
    #[error("domain boundary has more than one component")]
    HasHoles,
    #[error("hexagon sides must be at least 1, got {0:?}")]
    BadSize((i32, i32, i32)),
    #[error("not a plane partition: {0}")]
    NotAPlanePartition(String),
    #[error("boundary heights are inconsistent at {vertex}")]
    InconsistentBoundary { vertex: Vertex },
    #[error("lozenge set is not a tiling of the domain")]
    NotATiling,
    #[error("not a height function: edge {from} -> {to} has difference {diff}")]
    NotAHeightFunction { from: Vertex, to: Vertex, diff: i32 },
    #[error("objects belong to different domains")]
    DomainMismatch,
    #[error("domain is not tileable")]
    Untileable,
    #[error("vertex {vertex} cannot be flipped in that direction")]
    NotFlippable { vertex: Vertex },
    #[error("tiling set is not closed under up-flips")]
    NotFlipClosed,
    #[error("interval endpoints are not comparable")]
    NotComparable,
    #[error("weight {weight} is outside 0..={max}")]
    OutOfRange { weight: i64, max: i64 },
    #[error("zone has no seed but its minimal and maximal tilings differ")]
    NotFertile,
    #[error("cube at {vertex} level {level} lies above every tiling")]
    UnsatisfiableCube { vertex: Vertex, level: u32 },
    #[error("tiling generated twice (internal error)")]
    DuplicateDetected,
}

pub type Result<T> = std::result::Result<T, Error>;
