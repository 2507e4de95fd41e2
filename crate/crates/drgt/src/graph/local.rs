use crate::error::{Error, Result};

use super::Graph;

/// Subgraph induced on the neighbors of `x`, in increasing vertex order.
pub fn local_graph(g: &Graph, x: usize) -> Graph {
    g.induced(g.neighbors(x))
}

/// `(ν, κ, λ, μ)` by brute force over all vertex pairs.
pub fn srg_parameters(g: &Graph) -> Result<(u64, u64, u64, u64)> {
    let kappa = g.valency().ok_or_else(|| Error::NotStronglyRegular("not regular".into()))?;
    let n = g.n();
    let mut lambda: Option<(usize, (usize, usize))> = None;
    let mut mu: Option<(usize, (usize, usize))> = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = count_common(g.neighbors(u), g.neighbors(v));
            let slot = if g.is_adjacent(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some((common, (u, v))),
                Some((c, w)) if c != common => {
                    return Err(Error::NotStronglyRegular(format!(
                        "pairs {w:?} and {:?} have {c} and {common} common neighbors",
                        (u, v)
                    )));
                }
                _ => {}
            }
        }
    }
    let get = |s: Option<(usize, (usize, usize))>| s.map_or(0, |(c, _)| c as u64);
    Ok((n as u64, kappa as u64, get(lambda), get(mu)))
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}
