use rayon::prelude::*;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};

use super::{edge_partition, DistanceTable, EdgePartition, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub z: usize,
    /// The cell holding `z`.
    pub cell: (usize, usize),
    /// The cell whose neighbors were counted.
    pub target: (usize, usize),
    pub expected: u32,
    pub actual: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountEntry {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub count: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneityCertificate {
    pub edge: (usize, usize),
    /// Pairs `ij` with `p¹_{ij} ≠ 0`.
    pub l: Vec<(usize, usize)>,
    /// `3d − 1` when `a_d = 0`, else `3d`.
    pub l_expected: usize,
    /// `|Γ(z) ∩ D_r^s|` for `z ∈ D_i^j`, wherever it is constant.
    pub count_matrix: Vec<CountEntry>,
    pub violations: Vec<Violation>,
    /// The reduced conditions on `D_i^i` and `D_{i−1}^i ∪ D_i^{i−1}` hold.
    pub reduced_conditions_hold: bool,
}

impl HomogeneityCertificate {
    pub fn is_homogeneous(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `|Γ(z) ∩ D_r^s|` is constant over `z ∈ D_i^j` for every pair of
/// cells.
pub fn check_one_homogeneous(part: &EdgePartition, array: &IntersectionArray) -> Result<HomogeneityCertificate> {
    let d = array.d();
    let l: Vec<(usize, usize)> = part.cells().keys().copied().collect();
    let l_expected = if array.a(d) == 0 { 3 * d - 1 } else { 3 * d };
    if array.a(1) != 0 && l.len() != l_expected {
        return Err(Error::Inconsistent(format!("|L| = {} but expected {l_expected}", l.len())));
    }
    let mut count_matrix = Vec::new();
    let mut violations = Vec::new();
    for &from in &l {
        let zs = part.cell(from.0, from.1);
        for &to in &l {
            let first = part.count(zs[0], to.0, to.1);
            let mut constant = true;
            for &z in &zs[1..] {
                let c = part.count(z, to.0, to.1);
                if c != first {
                    constant = false;
                    violations.push(Violation { z, cell: from, target: to, expected: first, actual: c });
                }
            }
            if constant {
                count_matrix.push(CountEntry { from, to, count: first });
            }
        }
    }
    let reduced_conditions_hold = reduced_conditions(part, d);
    if reduced_conditions_hold && !violations.is_empty() {
        return Err(Error::Inconsistent("reduced conditions hold but the count matrix is not constant".into()));
    }
    Ok(HomogeneityCertificate {
        edge: (part.x, part.y),
        l,
        l_expected,
        count_matrix,
        violations,
        reduced_conditions_hold,
    })
}

fn constant_over(part: &EdgePartition, zs: impl Iterator<Item = usize>, to: (usize, usize)) -> bool {
    let mut vals = zs.map(|z| part.count(z, to.0, to.1));
    match vals.next() {
        None => true,
        Some(v) => vals.all(|w| w == v),
    }
}

fn reduced_conditions(part: &EdgePartition, d: usize) -> bool {
    let diag = (1..=d).all(|i| {
        let zs = part.cell(i, i);
        constant_over(part, zs.iter().copied(), (i - 1, i - 1))
            && constant_over(part, zs.iter().copied(), (i + 1, i + 1))
    });
    let off = (2..=d).all(|i| {
        let zs = part.cell(i - 1, i).iter().chain(part.cell(i, i - 1)).copied();
        constant_over(part, zs, (i - 1, i - 1))
    });
    diag && off
}

/// Certificates for every edge, or for `sample` evenly spaced edges.
pub fn check_all_edges(
    g: &Graph,
    array: &IntersectionArray,
    table: &DistanceTable,
    sample: Option<usize>,
) -> Result<Vec<HomogeneityCertificate>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let chosen: Vec<(usize, usize)> = match sample {
        Some(s) if s < edges.len() => (0..s).map(|t| edges[t * edges.len() / s]).collect(),
        _ => edges,
    };
    chosen
        .par_iter()
        .map(|&(x, y)| check_one_homogeneous(&edge_partition(g, array, table, x, y)?, array))
        .collect()
}
