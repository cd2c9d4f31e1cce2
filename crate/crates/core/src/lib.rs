//! Lozenge tilings of triangular-grid domains: tileability, height
//! functions, the distributive lattice of tilings, and exhaustive generation
//! through fracture zones and seeds.

pub mod domain;
pub mod enumerator;
pub mod error;
pub mod fracture;
pub mod grid;
pub mod heights;
pub mod lattice;
pub mod partitions;
pub mod seeds;
pub mod tiling;

pub use domain::{from_contour, hexagon, parse_contour, pseudo_hexagon, ContourWord, Domain};
pub use error::{Error, Result};
pub use grid::{Direction, Edge, Letter, Lozenge, Triangle, Vertex};
pub use heights::HeightFunction;
pub use partitions::{Partition, PlanePartition};
pub use tiling::{thurston, Mode, Tiling};
