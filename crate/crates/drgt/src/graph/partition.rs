use std::collections::BTreeMap;

use num::ToPrimitive;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{DistanceTable, Graph};

/// The cells `D_i^j = Γ_i(x) ∩ Γ_j(y)` of an edge `xy`, with the number of
/// neighbors every vertex has in every cell.
#[derive(Clone, Debug)]
pub struct EdgePartition {
    pub x: usize,
    pub y: usize,
    pub d: usize,
    cell_of: Vec<(usize, usize)>,
    cells: BTreeMap<(usize, usize), Vec<usize>>,
    /// `counts[z * (d+1)² + i(d+1) + j] = |Γ(z) ∩ D_i^j|`.
    counts: Vec<u32>,
}

impl EdgePartition {
    /// `D_i^j`; empty when the cell is.
    pub fn cell(&self, i: usize, j: usize) -> &[usize] {
        self.cells.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), Vec<usize>> {
        &self.cells
    }

    pub fn cell_of(&self, z: usize) -> (usize, usize) {
        self.cell_of[z]
    }

    /// `|Γ(z) ∩ D_i^j|`.
    pub fn count(&self, z: usize, i: usize, j: usize) -> u32 {
        if i > self.d || j > self.d {
            return 0;
        }
        let w = self.d + 1;
        self.counts[z * w * w + i * w + j]
    }
}

/// Splits the vertex set relative to the edge `xy` and checks the cell sizes
/// against `p¹_{ij}` and the neighbor counts against the bookkeeping rules
/// forced by distance-regularity.
pub fn edge_partition(
    g: &Graph,
    array: &IntersectionArray,
    table: &DistanceTable,
    x: usize,
    y: usize,
) -> Result<EdgePartition> {
    if x >= g.n() || y >= g.n() || !g.is_adjacent(x, y) {
        return Err(Error::NotAdjacent(x, y));
    }
    let d = array.d();
    if table.diameter() != d {
        return Err(Error::Bookkeeping(format!("graph diameter {} but array diameter {d}", table.diameter())));
    }
    let (rx, ry) = (table.row(x), table.row(y));
    let cell_of: Vec<(usize, usize)> = (0..g.n()).map(|z| (rx[z] as usize, ry[z] as usize)).collect();
    let mut cells: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (z, &c) in cell_of.iter().enumerate() {
        cells.entry(c).or_default().push(z);
    }
    let w = d + 1;
    let mut counts = vec![0u32; g.n() * w * w];
    for z in 0..g.n() {
        for &v in g.neighbors(z) {
            let (i, j) = cell_of[v];
            counts[z * w * w + i * w + j] += 1;
        }
    }
    let part = EdgePartition { x, y, d, cell_of, cells, counts };

    let p1 = &array.intersection_numbers()[1];
    for i in 0..=d {
        for j in 0..=d {
            let size = part.cell(i, j).len() as u64;
            if p1[i][j].to_integer().to_u64() != Some(size) {
                return Err(Error::Bookkeeping(format!("|D_{i}^{j}| = {size} but p¹_{i}{j} = {}", p1[i][j])));
            }
        }
    }
    check_bookkeeping(&part, array)?;
    Ok(part)
}

fn check_bookkeeping(p: &EdgePartition, array: &IntersectionArray) -> Result<()> {
    let d = p.d;
    let k = array.k() as i64;
    let a = |i: usize| array.a(i) as i64;
    let b = |i: usize| array.b(i) as i64;
    let c = |i: usize| array.c(i) as i64;
    let cnt = |z: usize, i: isize, j: isize| -> i64 {
        if i < 0 || j < 0 {
            0
        } else {
            p.count(z, i as usize, j as usize) as i64
        }
    };
    let fail = |z: usize, what: &str, got: i64, want: i64| {
        Err(Error::Bookkeeping(format!("vertex {z}: {what} has {got} neighbors, expected {want}")))
    };
    for z in 0..p.cell_of.len() {
        let total: i64 = (0..=d).flat_map(|i| (0..=d).map(move |j| (i, j))).map(|(i, j)| cnt(z, i as isize, j as isize)).sum();
        if total != k {
            return fail(z, "all cells", total, k);
        }
        let (zi, zj) = p.cell_of(z);
        if zi + 1 == zj || zj + 1 == zi {
            // z ∈ D_{i−1}^i, or the mirror image D_i^{i−1}
            let i = zi.max(zj);
            let flip = zi > zj;
            let at = |u: isize, v: isize| if flip { cnt(z, v, u) } else { cnt(z, u, v) };
            let ii = i as isize;
            let gamma = at(ii - 1, ii - 1);
            let rows = [
                ("D_{i−2}^{i−1}", at(ii - 2, ii - 1), if i >= 2 { c(i - 1) } else { 0 }),
                ("D_i^{i−1}", at(ii, ii - 1), c(i) - if i >= 2 { c(i - 1) } else { 0 } - gamma),
                ("D_{i−1}^i", at(ii - 1, ii), if i >= 2 { a(i - 1) } else { 0 } - gamma),
                ("D_i^{i+1}", at(ii, ii + 1), b(i)),
                ("D_i^i", at(ii, ii), a(i) - if i >= 2 { a(i - 1) } else { 0 } + gamma),
            ];
            for (what, got, want) in rows {
                if got != want {
                    return fail(z, what, got, want);
                }
            }
        } else if zi == zj && zi >= 1 {
            let i = zi as isize;
            let lo = cnt(z, i - 1, i - 1);
            let hi = cnt(z, i + 1, i + 1);
            let ui = zi;
            let rows = [
                ("D_{i−1}^i", cnt(z, i - 1, i), c(ui) - lo),
                ("D_i^{i−1}", cnt(z, i, i - 1), c(ui) - lo),
                ("D_i^{i+1}", cnt(z, i, i + 1), b(ui) - hi),
                ("D_{i+1}^i", cnt(z, i + 1, i), b(ui) - hi),
                ("D_i^i", cnt(z, i, i), a(ui) - b(ui) - c(ui) + lo + hi),
            ];
            for (what, got, want) in rows {
                if got != want {
                    return fail(z, what, got, want);
                }
            }
        }
    }
    Ok(())
}

/// `f(x, y)` and the three edge counts it determines.
#[derive(Clone, Debug, Serialize)]
pub struct FCount {
    pub f: Scalar,
    /// Ordered pairs of `D_1^1` at distance two.
    pub far_pairs: u64,
    /// Edges between `D_1^1` and `D_1^2`: `a_1 f`.
    pub cross_edges: u64,
    /// Edges inside `D_1^1`: `a_1(a_1 − 1 − f)/2`.
    pub inner_edges: u64,
    /// Edges inside `D_1^2`: `a_1(b_1 − f)/2`.
    pub outer_edges: u64,
}

pub fn compute_f(g: &Graph, part: &EdgePartition, array: &IntersectionArray) -> Result<FCount> {
    let a1 = array.a(1);
    if a1 == 0 {
        return Err(Error::A1Zero);
    }
    let b1 = array.b(1);
    let d11 = part.cell(1, 1);
    let mut far_pairs = 0u64;
    for (idx, &u) in d11.iter().enumerate() {
        for &v in &d11[idx + 1..] {
            if !g.is_adjacent(u, v) {
                far_pairs += 2;
            }
        }
    }
    let f = Scalar::ratio(far_pairs as i64, a1 as i64);
    let cross_edges: u64 = d11.iter().map(|&z| part.count(z, 1, 2) as u64).sum();
    let inner_edges: u64 = d11.iter().map(|&z| part.count(z, 1, 1) as u64).sum::<u64>() / 2;
    let d12 = part.cell(1, 2);
    let outer_edges: u64 = d12.iter().map(|&z| part.count(z, 1, 2) as u64).sum::<u64>() / 2;

    let fa = Scalar::from(a1);
    let fb = Scalar::from(b1);
    let checks = [
        ("D_1^1 to D_1^2", cross_edges, &fa * &f),
        ("inside D_1^1", inner_edges, &fa * (&fa - Scalar::one() - &f) / Scalar::int(2)),
        ("inside D_1^2", outer_edges, &fa * (&fb - &f) / Scalar::int(2)),
    ];
    for (what, got, want) in checks {
        if Scalar::from(got) != want {
            return Err(Error::Bookkeeping(format!("edges {what}: {got}, expected {want}")));
        }
    }
    if f > Scalar::from(a1 - 1) || f > fb {
        return Err(Error::Bookkeeping(format!("f = {f} exceeds min(a_1 − 1, b_1)")));
    }
    Ok(FCount { f, far_pairs, cross_edges, inner_edges, outer_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct, verify_distance_regular, VerifyOptions};

    fn setup(f: &str) -> (Graph, IntersectionArray, DistanceTable) {
        let g = construct(f.parse().unwrap()).unwrap();
        let a = verify_distance_regular(&g, VerifyOptions::default()).unwrap();
        let t = DistanceTable::new(&g).unwrap();
        (g, a, t)
    }

    #[test]
    fn johnson_cells() {
        let (g, a, t) = setup("johnson:8,4");
        let (x, y) = g.edges().next().unwrap();
        let p = edge_partition(&g, &a, &t, x, y).unwrap();
        assert_eq!(p.cell(1, 1).len(), 6);
        assert_eq!(p.cell(4, 4).len(), 0);
        assert_eq!(p.cell(0, 1), &[x]);
        assert_eq!(compute_f(&g, &p, &a).unwrap().f.to_string(), "3");
    }

    #[test]
    fn icosahedron_and_hamming_f() {
        let (g, a, t) = setup("icosahedron");
        for (x, y) in g.edges() {
            let p = edge_partition(&g, &a, &t, x, y).unwrap();
            assert_eq!((p.cell(1, 1).len(), p.cell(3, 3).len()), (2, 0));
            assert_eq!(compute_f(&g, &p, &a).unwrap().f.to_string(), "1");
        }
        let (g, a, t) = setup("hamming:3,3");
        let p = edge_partition(&g, &a, &t, 0, 1).unwrap();
        assert_eq!(compute_f(&g, &p, &a).unwrap().f.to_string(), "0");
    }

    #[test]
    fn non_edge_rejected() {
        let (g, a, t) = setup("icosahedron");
        assert_eq!(edge_partition(&g, &a, &t, 0, 11).unwrap_err(), Error::NotAdjacent(0, 11));
    }

    #[test]
    fn bipartite_has_no_f() {
        let (g, a, t) = setup("hypercube:4");
        let p = edge_partition(&g, &a, &t, 0, 1).unwrap();
        assert_eq!(compute_f(&g, &p, &a).unwrap_err(), Error::A1Zero);
    }
}
