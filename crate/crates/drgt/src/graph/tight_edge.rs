use nalgebra::DMatrix;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::{cosine_sequence, CosineSequence};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

use super::partition::compute_f;
use super::{DistanceTable, EdgePartition, Graph};

/// Relative singular-value cutoff for the numeric rank.
const RANK_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct TightEdge {
    /// Determinant of the Gram matrix of `Ex̂, Eŷ, Σ_{z ∈ D_1^1} Eẑ`, scaled
    /// by `(|X|/m)³`.
    pub gram_det: Scalar,
    /// `(σ − σ_2)(1 + σ)f − (1 − σ)(a_1σ + 1 + σ)`.
    pub expression: Scalar,
    pub is_tight: bool,
}

/// Scaled Gram matrix of `Ex̂, Eŷ, Σ_{z ∈ D_1^1} Eẑ`, built from actual
/// distances: `⟨Eu, Ev⟩ ∝ σ_{∂(u,v)}`.
pub fn gram_matrix(table: &DistanceTable, part: &EdgePartition, cs: &CosineSequence) -> [[Scalar; 3]; 3] {
    let d11 = part.cell(1, 1);
    let s = |u: usize, v: usize| cs.at(table.get(u, v)).clone();
    let sum_to = |u: usize| d11.iter().fold(Scalar::zero(), |acc, &z| acc + s(u, z));
    let ww = d11
        .iter()
        .flat_map(|&u| d11.iter().map(move |&v| (u, v)))
        .fold(Scalar::zero(), |acc, (u, v)| acc + s(u, v));
    let (x, y) = (part.x, part.y);
    [
        [s(x, x), s(x, y), sum_to(x)],
        [s(y, x), s(y, y), sum_to(y)],
        [sum_to(x), sum_to(y), ww],
    ]
}

fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Decides whether the edge of `part` is tight with respect to `theta`.
pub fn tight_edge_test(
    g: &Graph,
    array: &IntersectionArray,
    table: &DistanceTable,
    part: &EdgePartition,
    theta: &Scalar,
) -> Result<TightEdge> {
    if *theta == Scalar::from(array.k()) {
        return Err(Error::TrivialEigenvalue);
    }
    let f = compute_f(g, part, array)?.f;
    let cs = cosine_sequence(array, theta);
    let one = Scalar::one();
    let a1 = Scalar::from(array.a(1));
    let (s, s2) = (cs.at(1), cs.at(2));
    let expression = (s - s2) * (&one + s) * &f - (&one - s) * (&a1 * s + &one + s);
    let gram_det = det3(&gram_matrix(table, part, &cs));
    let closed = &a1 * (s - &one) * &expression;
    if gram_det != closed {
        return Err(Error::Inconsistent(format!("Gram determinant {gram_det} but closed form {closed}")));
    }
    Ok(TightEdge { is_tight: expression.is_zero(), gram_det, expression })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankResult {
    pub t: usize,
    pub dim_mh: usize,
    pub tight_theta1: bool,
    pub tight_theta_d: bool,
}

/// The columns `A_i x̂`, `A_i ŷ`, `A_i w` for `0 ≤ i ≤ d`, where
/// `w = Σ_{z ∈ D_1^1} ẑ`, as integer vectors.
pub fn mh_spanning_set(table: &DistanceTable, part: &EdgePartition) -> Vec<Vec<i64>> {
    let n = table.n();
    let d = part.d;
    let mut cols = vec![vec![0i64; n]; 3 * (d + 1)];
    let d11 = part.cell(1, 1);
    for v in 0..n {
        cols[table.get(part.x, v)][v] += 1;
        cols[d + 1 + table.get(part.y, v)][v] += 1;
        for &z in d11 {
            cols[2 * (d + 1) + table.get(z, v)][v] += 1;
        }
    }
    cols
}

fn numeric_rank(cols: &[Vec<i64>]) -> usize {
    let n = cols[0].len();
    let m = DMatrix::from_fn(n, cols.len(), |r, c| {
        let norm = cols[c].iter().map(|&v| (v * v) as f64).sum::<f64>().sqrt();
        if norm == 0.0 {
            0.0
        } else {
            cols[c][r] as f64 / norm
        }
    });
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > RANK_THRESHOLD * top).count()
}

/// `t = 3d + 1 − dim(MH)` with `H = span{x̂, ŷ, Σ_{z ∈ D_1^1} ẑ}`, cross-checked
/// against the tight-edge test for `θ_1` and `θ_d`.
pub fn tightness_rank(
    g: &Graph,
    array: &IntersectionArray,
    spectrum: &Spectrum,
    table: &DistanceTable,
    part: &EdgePartition,
) -> Result<RankResult> {
    if array.a(1) == 0 {
        return Err(Error::A1Zero);
    }
    let d = array.d();
    let dim_mh = numeric_rank(&mh_spanning_set(table, part));
    let t = (3 * d + 1)
        .checked_sub(dim_mh)
        .ok_or_else(|| Error::RankMismatch(format!("dim MH = {dim_mh} exceeds 3d + 1")))?;
    let tight_theta1 = tight_edge_test(g, array, table, part, spectrum.theta1())?.is_tight;
    let tight_theta_d = tight_edge_test(g, array, table, part, spectrum.theta_d())?.is_tight;
    let expected = tight_theta1 as usize + tight_theta_d as usize;
    if t != expected {
        return Err(Error::RankMismatch(format!("rank gives t = {t}, tight-edge tests give {expected}")));
    }
    Ok(RankResult { t, dim_mh, tight_theta1, tight_theta_d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct, edge_partition, verify_distance_regular, VerifyOptions};
    use crate::spectrum::spectrum;
    use num::{BigInt, Zero};

    struct Fixture {
        g: Graph,
        a: IntersectionArray,
        sp: Spectrum,
        t: DistanceTable,
    }

    fn setup(f: &str) -> Fixture {
        let g = construct(f.parse().unwrap()).unwrap();
        let a = verify_distance_regular(&g, VerifyOptions::default()).unwrap();
        let sp = spectrum(&a).unwrap();
        let t = DistanceTable::new(&g).unwrap();
        Fixture { g, a, sp, t }
    }

    /// Fraction-free elimination over the integers.
    fn exact_rank(cols: &[Vec<i64>]) -> usize {
        let mut rows: Vec<Vec<BigInt>> =
            (0..cols[0].len()).map(|r| cols.iter().map(|c| BigInt::from(c[r])).collect()).collect();
        let ncols = cols.len();
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        for col in 0..ncols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(rank, p);
            for r in rank + 1..rows.len() {
                for c in col + 1..ncols {
                    let v = &rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                    rows[r][c] = v / &prev;
                }
                rows[r][col] = BigInt::zero();
            }
            prev = rows[rank][col].clone();
            rank += 1;
        }
        rank
    }

    #[test]
    fn johnson_edges() {
        let fx = setup("johnson:8,4");
        let (x, y) = fx.g.edges().next().unwrap();
        let p = edge_partition(&fx.g, &fx.a, &fx.t, x, y).unwrap();
        assert!(tight_edge_test(&fx.g, &fx.a, &fx.t, &p, &Scalar::int(8)).unwrap().is_tight);
        assert!(tight_edge_test(&fx.g, &fx.a, &fx.t, &p, &Scalar::int(-4)).unwrap().is_tight);
        for mid in [2, -2] {
            assert!(!tight_edge_test(&fx.g, &fx.a, &fx.t, &p, &Scalar::int(mid)).unwrap().is_tight);
        }
        assert_eq!(
            tight_edge_test(&fx.g, &fx.a, &fx.t, &p, &Scalar::int(16)).unwrap_err(),
            Error::TrivialEigenvalue
        );
        let r = tightness_rank(&fx.g, &fx.a, &fx.sp, &fx.t, &p).unwrap();
        assert_eq!((r.t, r.dim_mh), (2, 11));
        assert_eq!(exact_rank(&mh_spanning_set(&fx.t, &p)), 11);
    }

    #[test]
    fn icosahedron_rank() {
        let fx = setup("icosahedron");
        for (x, y) in fx.g.edges() {
            let p = edge_partition(&fx.g, &fx.a, &fx.t, x, y).unwrap();
            let r = tightness_rank(&fx.g, &fx.a, &fx.sp, &fx.t, &p).unwrap();
            assert_eq!((r.t, r.dim_mh), (2, 8));
            assert_eq!(exact_rank(&mh_spanning_set(&fx.t, &p)), 8);
        }
    }

    #[test]
    fn hamming_is_tight_for_theta_d_only() {
        // f = 0 meets the lower bound, so every edge is tight with respect to θ_d = −3
        let fx = setup("hamming:3,3");
        let p = edge_partition(&fx.g, &fx.a, &fx.t, 0, 1).unwrap();
        assert!(!tight_edge_test(&fx.g, &fx.a, &fx.t, &p, &Scalar::int(3)).unwrap().is_tight);
        let r = tightness_rank(&fx.g, &fx.a, &fx.sp, &fx.t, &p).unwrap();
        assert_eq!((r.t, r.dim_mh, r.tight_theta1, r.tight_theta_d), (1, 9, false, true));
        assert_eq!(exact_rank(&mh_spanning_set(&fx.t, &p)), 9);
    }
}
