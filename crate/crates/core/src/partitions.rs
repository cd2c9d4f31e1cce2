//! Partitions, plane partitions and streaming generators for the ones
//! dominated by a given limit.
//!
//! [`limited_partitions`] walks the depth-first tree of part choices, trying
//! the largest admissible part first and cutting every branch whose
//! remaining capacity cannot absorb the remaining weight.
//! [`limited_plane_partitions`] does the same one slice at a time, the
//! candidate slices themselves being limited partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing list of parts. Trailing zeros are allowed so that
/// partitions bounded by the same limit share a length.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    pub parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Self {
        Partition { parts }
    }

    pub fn zeros(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Part-wise domination, missing parts counting as zero.
    pub fn le(&self, other: &Partition) -> bool {
        (0..self.len().max(other.len())).all(|i| self.part(i) <= other.part(i))
    }

    /// Part-wise minimum, with the length of `self`.
    pub fn min(&self, other: &Partition) -> Partition {
        Partition::new((0..self.len()).map(|i| self.part(i).min(other.part(i))).collect())
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.parts.iter().copied().max().unwrap_or(0);
        Partition::new((0..largest).map(|j| self.parts.iter().filter(|&&x| x > j).count() as u32).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn conjugate(p: &Partition) -> Partition {
    p.conjugate()
}

/// A non-increasing sequence of partitions (the slices), each row also
/// non-increasing. All rows share one length.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlanePartition {
    pub rows: Vec<Partition>,
}

impl PlanePartition {
    /// Build from rows, padding them with zeros to a common length.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.resize(width, 0);
                Partition::new(r)
            })
            .collect();
        let pp = PlanePartition { rows };
        pp.check()?;
        Ok(pp)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PlanePartition { rows: vec![Partition::zeros(cols); rows] }
    }

    pub fn check(&self) -> Result<()> {
        for (j, row) in self.rows.iter().enumerate() {
            if !row.is_non_increasing() {
                return Err(Error::NotAPlanePartition(format!("row {j} increases")));
            }
            if j > 0 && !row.le(&self.rows[j - 1]) {
                return Err(Error::NotAPlanePartition(format!("column increases below row {}", j - 1)));
            }
        }
        Ok(())
    }

    pub fn weight(&self) -> u64 {
        self.rows.iter().map(Partition::weight).sum()
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Partition::len)
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.rows.get(row).map_or(0, |r| r.part(col))
    }

    pub fn le(&self, other: &PlanePartition) -> bool {
        (0..self.rows.len().max(other.rows.len())).all(|j| {
            let (a, b) = (self.rows.get(j), other.rows.get(j));
            match (a, b) {
                (Some(a), Some(b)) => a.le(b),
                (Some(a), None) => a.weight() == 0,
                _ => true,
            }
        })
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", rows.join(";"))
    }
}

fn check_range(s: i64, max: u64) -> Result<()> {
    if s < 0 || s as u64 > max {
        return Err(Error::OutOfRange { weight: s, max: max as i64 });
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct PartFrame {
    depth: usize,
    t: u32,
    next: u32,
    low: u32,
}

/// Streaming generator of the `(s, p)`-limited partitions.
#[derive(Clone, Debug)]
pub struct LimitedPartitions {
    limit: Vec<u32>,
    prefix: Vec<u32>,
    stack: Vec<PartFrame>,
    start: Option<u32>,
    prune: bool,
}

impl LimitedPartitions {
    fn new(s: u32, limit: &Partition, prune: bool) -> Self {
        LimitedPartitions {
            limit: limit.parts.clone(),
            prefix: Vec::with_capacity(limit.len()),
            stack: Vec::new(),
            start: Some(s),
            prune,
        }
    }

    fn cap(&self, q: usize) -> u32 {
        let bound = self.limit[q];
        match self.prefix.last() {
            Some(&last) => bound.min(last),
            None => bound,
        }
    }

    fn emit(&self, last: Option<u32>) -> Partition {
        let mut parts = self.prefix.clone();
        parts.extend(last);
        parts.resize(self.limit.len(), 0);
        Partition::new(parts)
    }

    /// Smallest first part `j` of the remaining suffix that still leaves
    /// room for `t`, scanning upward from 1.
    fn lower_bound(&self, q: usize, hi: u32, t: u32) -> Option<u32> {
        (1..=hi).find(|&j| {
            let room: u64 = j as u64 + self.limit[q + 1..].iter().map(|&p| p.min(j) as u64).sum::<u64>();
            room >= t as u64
        })
    }

    /// Process a call with `t` squares left at depth `prefix.len()`.
    fn enter(&mut self, t: u32) -> Option<Partition> {
        let q = self.prefix.len();
        let n = self.limit.len();
        if t == 0 {
            return Some(self.emit(None));
        }
        if q == n {
            return None;
        }
        let hi = self.cap(q).min(t);
        if q + 1 == n {
            return (self.prune || t <= hi).then(|| self.emit(Some(t)));
        }
        let low = if self.prune { self.lower_bound(q, hi, t) } else { Some(1) };
        if let Some(low) = low {
            if hi >= low {
                self.stack.push(PartFrame { depth: q, t, next: hi, low });
            }
        }
        None
    }
}

impl Iterator for LimitedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if let Some(s) = self.start.take() {
            if let Some(out) = self.enter(s) {
                return Some(out);
            }
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next < top.low {
                self.stack.pop();
                continue;
            }
            let (k, depth, t) = (top.next, top.depth, top.t);
            top.next -= 1;
            self.prefix.truncate(depth);
            self.prefix.push(k);
            if let Some(out) = self.enter(t - k) {
                return Some(out);
            }
        }
    }
}

/// All partitions `a ≤ p` of weight `s`, each exactly once, in depth-first
/// order with larger parts first.
pub fn limited_partitions(s: i64, p: &Partition) -> Result<LimitedPartitions> {
    check_range(s, p.weight())?;
    Ok(LimitedPartitions::new(s as u32, p, true))
}

/// The same enumeration without the lower-bound cut: every part value from
/// the cap down to 1 is tried and dead branches are discarded at the leaves.
pub fn limited_partitions_unpruned(s: i64, p: &Partition) -> Result<LimitedPartitions> {
    check_range(s, p.weight())?;
    Ok(LimitedPartitions::new(s as u32, p, false))
}

enum SliceSource {
    /// Intermediate slice: weights tried from `weight` down to `low_weight`.
    Middle { weight: u32, low_weight: u32, inner: LimitedPartitions },
    /// Final slice: every limited partition of the remaining weight.
    Last(LimitedPartitions),
}

struct SliceFrame {
    depth: usize,
    t: u32,
    bound: Partition,
    source: SliceSource,
}

/// Streaming generator of the `(s, P)`-limited plane partitions.
pub struct LimitedPlanePartitions {
    limit: Vec<Partition>,
    prefix: Vec<Partition>,
    stack: Vec<SliceFrame>,
    start: Option<u32>,
    prune: bool,
}

impl LimitedPlanePartitions {
    fn new(s: u32, limit: &PlanePartition, prune: bool) -> Self {
        LimitedPlanePartitions {
            limit: limit.rows.clone(),
            prefix: Vec::new(),
            stack: Vec::new(),
            start: Some(s),
            prune,
        }
    }

    fn bound(&self, q: usize) -> Partition {
        match self.prefix.last() {
            Some(last) => last.min(&self.limit[q]),
            None => self.limit[q].clone(),
        }
    }

    fn emit(&self, last: Option<Partition>) -> PlanePartition {
        let width = self.limit.first().map_or(0, Partition::len);
        let mut rows = self.prefix.clone();
        rows.extend(last);
        rows.resize(self.limit.len(), Partition::zeros(width));
        PlanePartition { rows }
    }

    /// Weight the slices after `q` can still hold when slice `q` is `k`.
    fn room_after(&self, q: usize, k: &Partition) -> u64 {
        k.weight() + self.limit[q + 1..].iter().map(|p| k.min(p).weight()).sum::<u64>()
    }

    fn enter(&mut self, t: u32) -> Option<PlanePartition> {
        let q = self.prefix.len();
        let n = self.limit.len();
        if t == 0 {
            return Some(self.emit(None));
        }
        if q == n {
            return None;
        }
        let bound = self.bound(q);
        if q + 1 == n {
            if (t as u64) <= bound.weight() {
                let inner = LimitedPartitions::new(t, &bound, self.prune);
                self.stack.push(SliceFrame { depth: q, t, bound, source: SliceSource::Last(inner) });
            }
            return None;
        }
        let top = (t as u64).min(bound.weight()) as u32;
        let low_weight = if self.prune { 1 } else { 0 };
        if top >= low_weight {
            let inner = LimitedPartitions::new(top, &bound, self.prune);
            self.stack.push(SliceFrame {
                depth: q,
                t,
                bound,
                source: SliceSource::Middle { weight: top, low_weight, inner },
            });
        }
        None
    }
}

impl Iterator for LimitedPlanePartitions {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if let Some(s) = self.start.take() {
            if let Some(out) = self.enter(s) {
                return Some(out);
            }
        }
        loop {
            let prune = self.prune;
            let frame = self.stack.last_mut()?;
            let depth = frame.depth;
            let t = frame.t;
            let candidate = match &mut frame.source {
                SliceSource::Last(inner) => match inner.next() {
                    Some(k) => {
                        self.prefix.truncate(depth);
                        return Some(self.emit(Some(k)));
                    }
                    None => {
                        self.stack.pop();
                        continue;
                    }
                },
                SliceSource::Middle { weight, low_weight, inner } => match inner.next() {
                    Some(k) => k,
                    None => {
                        if *weight <= *low_weight {
                            self.stack.pop();
                        } else {
                            *weight -= 1;
                            *inner = LimitedPartitions::new(*weight, &frame.bound, prune);
                        }
                        continue;
                    }
                },
            };
            self.prefix.truncate(depth);
            if self.prune && self.room_after(depth, &candidate) < t as u64 {
                continue;
            }
            let w = candidate.weight() as u32;
            self.prefix.push(candidate);
            if let Some(out) = self.enter(t - w) {
                return Some(out);
            }
        }
    }
}

/// All plane partitions `A ≤ P` of weight `s`, each exactly once.
pub fn limited_plane_partitions(s: i64, p: &PlanePartition) -> Result<LimitedPlanePartitions> {
    p.check()?;
    check_range(s, p.weight())?;
    Ok(LimitedPlanePartitions::new(s as u32, p, true))
}

/// Plane-partition generation without the capacity cut on slices.
pub fn limited_plane_partitions_unpruned(s: i64, p: &PlanePartition) -> Result<LimitedPlanePartitions> {
    p.check()?;
    check_range(s, p.weight())?;
    Ok(LimitedPlanePartitions::new(s as u32, p, false))
}

/// Every plane partition dominated by `p`, by increasing weight.
pub fn all_limited_plane_partitions(p: &PlanePartition) -> impl Iterator<Item = PlanePartition> + '_ {
    (0..=p.weight()).flat_map(move |s| LimitedPlanePartitions::new(s as u32, p, true))
}
