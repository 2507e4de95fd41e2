use std::collections::VecDeque;

use num::ToPrimitive;
use rayon::prelude::*;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};

use super::Graph;

/// Graphs above this size are refused unless verification is forced.
pub const MAX_VERTICES: usize = 5000;

/// Distances from `src`; unreachable vertices get `u32::MAX`.
pub fn bfs(g: &Graph, src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::from([src]);
    dist[src] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distances of a connected graph.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u8>,
    diameter: usize,
}

impl DistanceTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|x| bfs(g, x)).collect();
        let mut dist = Vec::with_capacity(n * n);
        let mut diameter = 0;
        for row in rows {
            for d in row {
                if d == u32::MAX {
                    return Err(Error::Disconnected);
                }
                let d = u8::try_from(d).map_err(|_| Error::ParamOutOfRange("diameter above 255".into()))?;
                diameter = diameter.max(d as usize);
                dist.push(d);
            }
        }
        Ok(DistanceTable { n, dist, diameter })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    pub fn row(&self, u: usize) -> &[u8] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Reads `b_i`, `c_i` off the graph, checking that `(c, a, b)` counts are
    /// the same for every ordered pair at each distance.
    pub fn intersection_array(&self, g: &Graph, opts: VerifyOptions) -> Result<IntersectionArray> {
        let d = self.diameter;
        let per_vertex: Vec<Result<Vec<[u64; 3]>>> = (0..self.n)
            .into_par_iter()
            .map(|x| {
                let row = self.row(x);
                let mut seen: Vec<Option<([u64; 3], usize)>> = vec![None; d + 1];
                for z in 0..self.n {
                    let i = row[z];
                    let mut t = [0u64; 3];
                    for &w in g.neighbors(z) {
                        t[(row[w] as i32 - i as i32 + 1) as usize] += 1;
                    }
                    match seen[i as usize] {
                        None => seen[i as usize] = Some((t, z)),
                        Some((s, z0)) if s != t => {
                            return Err(Error::NotDistanceRegular(format!(
                                "from {x}: (c,a,b) = {s:?} at {z0} but {t:?} at {z}, both at distance {i}"
                            )));
                        }
                        _ => {}
                    }
                }
                seen.into_iter()
                    .enumerate()
                    .map(|(i, s)| {
                        s.map(|(t, _)| t).ok_or_else(|| {
                            Error::NotDistanceRegular(format!("vertex {x} has eccentricity below {i}"))
                        })
                    })
                    .collect()
            })
            .collect();
        let mut reference: Option<Vec<[u64; 3]>> = None;
        for (x, r) in per_vertex.into_iter().enumerate() {
            let r = r?;
            match &reference {
                None => reference = Some(r),
                Some(want) if *want != r => {
                    let i = (0..=d).find(|&i| want[i] != r[i]).unwrap();
                    return Err(Error::NotDistanceRegular(format!(
                        "(c,a,b) at distance {i} is {:?} from vertex 0 but {:?} from vertex {x}",
                        want[i], r[i]
                    )));
                }
                _ => {}
            }
        }
        let t = reference.unwrap_or_default();
        let b = (0..d).map(|i| t[i][2]).collect();
        let c = (1..=d).map(|i| t[i][0]).collect();
        let array = IntersectionArray::new(b, c)?;
        if opts.strict {
            self.spot_check(&array)?;
        }
        Ok(array)
    }

    /// Compares `|Γ_i(x) ∩ Γ_j(y)|` with `p^h_{ij}` for a few base vertices
    /// `x` and every `y`.
    fn spot_check(&self, array: &IntersectionArray) -> Result<()> {
        let d = array.d();
        let p = array.intersection_numbers();
        let bases: Vec<usize> = (0..4).map(|t| t * self.n / 4).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        for &x in &bases {
            let rx = self.row(x);
            for y in 0..self.n {
                let h = rx[y] as usize;
                let ry = self.row(y);
                let mut counts = vec![vec![0u64; d + 1]; d + 1];
                for z in 0..self.n {
                    counts[rx[z] as usize][ry[z] as usize] += 1;
                }
                for i in 0..=d {
                    for j in 0..=d {
                        let want = p[h][i][j].to_integer().to_u64();
                        if want != Some(counts[i][j]) {
                            return Err(Error::NotDistanceRegular(format!(
                                "|Γ_{i}({x}) ∩ Γ_{j}({y})| = {} but p^{h}_{i}{j} = {}",
                                counts[i][j], p[h][i][j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also spot-check every `p^h_{ij}`.
    pub strict: bool,
    /// Verify graphs above [`MAX_VERTICES`].
    pub force: bool,
}

pub fn verify_distance_regular(g: &Graph, opts: VerifyOptions) -> Result<IntersectionArray> {
    if g.n() > MAX_VERTICES && !opts.force {
        return Err(Error::TooLarge(g.n()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    DistanceTable::new(g)?.intersection_array(g, opts)
}
