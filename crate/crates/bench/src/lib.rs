//! Workloads shared by the benchmarks.

use lozenge_core::{hexagon, Domain};

/// Regular hexagon of side `n`.
pub fn regular_hexagon(n: i32) -> Domain {
    hexagon(n, n, n).expect("positive side")
}
