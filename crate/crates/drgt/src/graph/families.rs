use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::Graph;

/// Largest ground set accepted by the bitmask families.
const MAX_GROUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `d`-subsets of an `n`-set, adjacent when they share `d−1` elements.
    Johnson { n: usize, d: usize },
    Hypercube(usize),
    /// Even-weight binary words of length `n` at Hamming distance two.
    HalvedCube(usize),
    /// Words of length `d` over `q` symbols differing in one coordinate.
    Hamming { d: usize, q: usize },
    Icosahedron,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Johnson { n, d } => write!(f, "johnson:{n},{d}"),
            Family::Hypercube(n) => write!(f, "hypercube:{n}"),
            Family::HalvedCube(n) => write!(f, "halved-cube:{n}"),
            Family::Hamming { d, q } => write!(f, "hamming:{d},{q}"),
            Family::Icosahedron => f.write_str("icosahedron"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `johnson:8,4`, `hypercube:4`, `halved-cube:8`, `hamming:3,3`,
    /// `icosahedron`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "graph family", detail: s.to_string() };
        let (name, args) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|t| t.trim().parse().map_err(|_| err())).collect::<Result<_>>()?
        };
        match (name.to_ascii_lowercase().replace('_', "-").as_str(), nums.as_slice()) {
            ("johnson", &[n, d]) => Ok(Family::Johnson { n, d }),
            ("hypercube", &[n]) => Ok(Family::Hypercube(n)),
            ("halved-cube", &[n]) => Ok(Family::HalvedCube(n)),
            ("hamming", &[d, q]) => Ok(Family::Hamming { d, q }),
            ("icosahedron", &[]) => Ok(Family::Icosahedron),
            _ => Err(err()),
        }
    }
}

fn out_of_range(f: Family, why: &str) -> Error {
    Error::ParamOutOfRange(format!("{f}: {why}"))
}

pub fn construct(family: Family) -> Result<Graph> {
    match family {
        Family::Johnson { n, d } => {
            if n > MAX_GROUND || d == 0 || d >= n {
                return Err(out_of_range(family, "need 0 < d < n ≤ 16"));
            }
            let verts: Vec<u32> = (0u32..1 << n).filter(|v| v.count_ones() as usize == d).collect();
            Ok(mask_graph(&verts, |v| {
                let mut out = Vec::new();
                for i in (0..n).filter(|i| v >> i & 1 == 1) {
                    for j in (0..n).filter(|j| v >> j & 1 == 0) {
                        out.push(v ^ (1 << i) ^ (1 << j));
                    }
                }
                out
            }))
        }
        Family::Hypercube(n) => {
            if n == 0 || n > MAX_GROUND {
                return Err(out_of_range(family, "need 0 < n ≤ 16"));
            }
            let verts: Vec<u32> = (0u32..1 << n).collect();
            Ok(mask_graph(&verts, |v| (0..n).map(|i| v ^ (1 << i)).collect()))
        }
        Family::HalvedCube(n) => {
            if !(2..=MAX_GROUND).contains(&n) {
                return Err(out_of_range(family, "need 2 ≤ n ≤ 16"));
            }
            let verts: Vec<u32> = (0u32..1 << n).filter(|v| v.count_ones() % 2 == 0).collect();
            Ok(mask_graph(&verts, |v| {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(v ^ (1 << i) ^ (1 << j));
                    }
                }
                out
            }))
        }
        Family::Hamming { d, q } => {
            let size = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
            if d == 0 || q < 2 || size > super::MAX_VERTICES as u128 {
                return Err(out_of_range(family, "need d ≥ 1, q ≥ 2, q^d ≤ 5000"));
            }
            let n = size as usize;
            let mut edges = Vec::new();
            for v in 0..n {
                let mut place = 1;
                for _ in 0..d {
                    let digit = v / place % q;
                    for other in digit + 1..q {
                        edges.push((v, v + (other - digit) * place));
                    }
                    place *= q;
                }
            }
            Graph::from_edges(n, edges)
        }
        Family::Icosahedron => Graph::from_edges(12, icosahedron_edges()),
    }
}

/// Vertex 0 on top, upper pentagon `1..=5`, lower pentagon `6..=10`,
/// vertex 11 at the bottom.
fn icosahedron_edges() -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(30);
    for i in 0..5 {
        let (u, u_next) = (1 + i, 1 + (i + 1) % 5);
        let (l, l_next) = (6 + i, 6 + (i + 1) % 5);
        e.extend([(0, u), (u, u_next), (11, l), (l, l_next), (u, l), (u, l_next)]);
    }
    e
}

fn mask_graph(verts: &[u32], nbrs: impl Fn(u32) -> Vec<u32>) -> Graph {
    let index: HashMap<u32, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = verts.iter().enumerate().flat_map(|(i, &v)| {
        nbrs(v).into_iter().map(|w| index[&w]).filter(move |&j| i < j).map(move |j| (i, j)).collect::<Vec<_>>()
    });
    Graph::from_edges(verts.len(), edges).expect("family edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        construct(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        let j = g("johnson:8,4");
        assert_eq!((j.n(), j.m(), j.valency()), (70, 560, Some(16)));
        let h = g("hypercube:4");
        assert_eq!((h.n(), h.m()), (16, 32));
        let hc = g("halved-cube:8");
        assert_eq!((hc.n(), hc.valency()), (128, Some(28)));
        let ham = g("hamming:3,3");
        assert_eq!((ham.n(), ham.valency()), (27, Some(6)));
        let ico = g("icosahedron");
        assert_eq!((ico.n(), ico.m(), ico.valency()), (12, 30, Some(5)));
        assert_eq!(g("johnson:6,3").n(), 20);
    }

    #[test]
    fn parsing_and_guards() {
        assert_eq!("halved_cube:8".parse::<Family>().unwrap(), Family::HalvedCube(8));
        assert_eq!(Family::Johnson { n: 8, d: 4 }.to_string(), "johnson:8,4");
        assert!("johnson:8".parse::<Family>().is_err());
        assert!("petersen".parse::<Family>().is_err());
        for f in ["johnson:20,3", "hypercube:17", "hamming:9,3", "johnson:4,4"] {
            assert!(matches!(construct(f.parse().unwrap()), Err(Error::ParamOutOfRange(_))), "{f}");
        }
    }
}
