use std::collections::{BTreeMap, BTreeSet};

use super::instance::AdfInstance;
use super::profile::winding_profile_wi;
use super::{AdfError, AdfNum};

pub type Cell = (usize, usize);

/// Cells of `{0..k1+1} x {0..k2+1}` split by the winding number of list 3 at
/// `-(y_(1,p) + y_(2,q))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V12Partition {
    pub v0: BTreeSet<Cell>,
    pub v1: BTreeSet<Cell>,
}

pub fn partition_v12<T: AdfNum>(inst: &AdfInstance<T>) -> Result<V12Partition, AdfError> {
    let w3 = winding_profile_wi(inst, 2);
    let mut part = V12Partition { v0: BTreeSet::new(), v1: BTreeSet::new() };
    for p in 0..=inst.k(0) + 1 {
        for q in 0..=inst.k(1) + 1 {
            let s = inst.y(0, p).checked_add(&inst.y(1, q)).expect("both lists pad with -inf");
            match w3.value2(&-s) {
                0 => part.v0.insert((p, q)),
                2 => part.v1.insert((p, q)),
                value2 => return Err(AdfError::WindingOutOfRange { p, q, value2 }),
            };
        }
    }
    Ok(part)
}

/// The directed graph on `V^{+1}` with one edge per vertex pair inside each
/// same-parity cell square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellGraph {
    pub partition: V12Partition,
    /// Successor of every vertex.
    pub next: BTreeMap<Cell, Cell>,
    /// Vertex-disjoint directed cycles, each listed from its smallest cell.
    pub cycles: Vec<Vec<Cell>>,
}

impl CellGraph {
    /// Whether every cycle meets each row and column with balanced parity.
    pub fn lines_balanced(&self) -> bool {
        self.cycles.iter().all(|cyc| {
            let mut rows: BTreeMap<usize, i64> = BTreeMap::new();
            let mut cols: BTreeMap<usize, i64> = BTreeMap::new();
            for &(a, b) in cyc {
                *cols.entry(a).or_insert(0) += if b % 2 == 0 { 1 } else { -1 };
                *rows.entry(b).or_insert(0) += if a % 2 == 0 { 1 } else { -1 };
            }
            rows.values().chain(cols.values()).all(|&v| v == 0)
        })
    }
}

/// Whether the gap of pair `p` of list 1 is at most that of pair `q` of list
/// 2. Infinite gaps tie with each other; finite ties are rejected.
pub(crate) fn first_gap_not_larger<T: AdfNum>(inst: &AdfInstance<T>, p: usize, q: usize) -> Result<bool, AdfError> {
    gap_le(inst.gap(0, p), inst.gap(1, q))
}

pub(crate) fn gap_le<T: AdfNum>(g1: Option<T>, g2: Option<T>) -> Result<bool, AdfError> {
    Ok(match (g1, g2) {
        (None, None) => true,
        (None, Some(_)) => false,
        (Some(_), None) => true,
        (Some(a), Some(b)) if a == b => return Err(AdfError::TiedGaps),
        (Some(a), Some(b)) => a < b,
    })
}

pub fn build_g12<T: AdfNum>(inst: &AdfInstance<T>) -> Result<CellGraph, AdfError> {
    let partition = partition_v12(inst)?;
    let in_v1 = |c: &Cell| partition.v1.contains(c);
    let mut next: BTreeMap<Cell, Cell> = BTreeMap::new();
    let mut prev: BTreeMap<Cell, Cell> = BTreeMap::new();
    let mut add = |from: Cell, to: Cell| -> Result<(), AdfError> {
        if !partition.v1.contains(&to) {
            return Err(AdfError::EdgeLeavesCells { from, to });
        }
        if next.insert(from, to).is_some() || prev.insert(to, from).is_some() {
            return Err(AdfError::DegreeViolation { cell: from });
        }
        Ok(())
    };
    for p in 0..=inst.k(0) {
        for q in (0..=inst.k(1)).filter(|q| (q + p) % 2 == 0) {
            if first_gap_not_larger(inst, p, q)? {
                for b in [q, q + 1] {
                    if in_v1(&(p, b)) {
                        if b % 2 == 1 {
                            add((p, b), (p + 1, b))?;
                        } else {
                            add((p + 1, b), (p, b))?;
                        }
                    }
                }
            } else {
                for a in [p, p + 1] {
                    if in_v1(&(a, q)) {
                        if a % 2 == 1 {
                            add((a, q), (a, q + 1))?;
                        } else {
                            add((a, q + 1), (a, q))?;
                        }
                    }
                }
            }
        }
    }
    for c in &partition.v1 {
        if !next.contains_key(c) || !prev.contains_key(c) {
            return Err(AdfError::DegreeViolation { cell: *c });
        }
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in &partition.v1 {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = vec![start];
        seen.insert(start);
        let mut cur = next[&start];
        while cur != start {
            seen.insert(cur);
            cyc.push(cur);
            cur = next[&cur];
        }
        cycles.push(cyc);
    }
    Ok(CellGraph { partition, next, cycles })
}
