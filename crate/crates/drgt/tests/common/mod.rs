//! Shared fixtures: intersection arrays of known distance-regular graphs and
//! floating-point oracles that do not touch the library's spectral code.
#![allow(dead_code)]

use drgt::IntersectionArray;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arr(b: Vec<u64>, c: Vec<u64>) -> IntersectionArray {
    IntersectionArray::new(b.clone(), c.clone()).unwrap_or_else(|e| panic!("{b:?};{c:?}: {e}"))
}

const PRIME_POWERS: [u64; 19] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37];

/// Arrays of known graphs with diameter 3, 4 or 5 and valency at most 40.
pub fn family_pool() -> Vec<IntersectionArray> {
    let mut out = Vec::new();
    // Johnson J(n, e)
    for e in 3..=5u64 {
        for n in 2 * e.. {
            if e * (n - e) > 40 {
                break;
            }
            out.push(arr((0..e).map(|i| (e - i) * (n - e - i)).collect(), (1..=e).map(|i| i * i).collect()));
        }
    }
    // Hamming H(d, q)
    for d in 3..=5u64 {
        for q in 2.. {
            if d * (q - 1) > 40 {
                break;
            }
            out.push(arr((0..d).map(|i| (d - i) * (q - 1)).collect(), (1..=d).collect()));
        }
    }
    // halved n-cubes
    for n in 6..=9u64 {
        let d = n / 2;
        out.push(arr(
            (0..d).map(|i| (n - 2 * i) * (n - 2 * i - 1) / 2).collect(),
            (1..=d).map(|i| i * (2 * i - 1)).collect(),
        ));
    }
    // folded n-cubes
    for n in 6..=11u64 {
        let m = n / 2;
        let mut c: Vec<u64> = (1..=m).collect();
        if n % 2 == 0 {
            c[(m - 1) as usize] = 2 * m;
        }
        out.push(arr((0..m).map(|i| n - i).collect(), c));
    }
    // polygons
    for n in 6..=11u64 {
        let d = n / 2;
        let mut b = vec![1; d as usize];
        b[0] = 2;
        let mut c = vec![1; d as usize];
        if n % 2 == 0 {
            c[(d - 1) as usize] = 2;
        }
        out.push(arr(b, c));
    }
    // odd graphs O_m, diameter m − 1
    for m in 4..=6u64 {
        let d = m - 1;
        let c: Vec<u64> = (1..=d).map(|i| i.div_ceil(2)).collect();
        let b: Vec<u64> = (0..d).map(|i| if i == 0 { m } else { m - c[i as usize - 1] }).collect();
        out.push(arr(b, c));
    }
    for &q in &PRIME_POWERS {
        if q + 1 > 40 {
            continue;
        }
        // incidence graphs of projective planes and generalized quadrangles
        out.push(arr(vec![q + 1, q, q], vec![1, 1, q + 1]));
        out.push(arr(vec![q + 1, q, q, q], vec![1, 1, 1, q + 1]));
        // generalized hexagons of order (q, q)
        if q * (q + 1) <= 40 {
            out.push(arr(vec![q * (q + 1), q * q, q * q], vec![1, 1, q + 1]));
        }
    }
    // K_{n,n} minus a perfect matching
    for n in 4..=41u64 {
        out.push(arr(vec![n - 1, n - 2, 1], vec![1, n - 2, n - 1]));
    }
    // Hadamard graphs of order 4m
    for m in 1..=10u64 {
        out.push(arr(vec![4 * m, 4 * m - 1, 2 * m, 1], vec![1, 2 * m, 4 * m - 1, 4 * m]));
    }
    // small sporadic and tight examples
    for s in [
        "3,2,2,1;1,1,1,2",
        "3,2,1,1,1;1,1,1,2,3",
        "3,2,2,1,1;1,1,2,2,3",
        "3,2,2,1;1,1,2,3",
        "5,4,1,1;1,1,4,5",
        "5,2,1;1,2,5",
        "15,8,1;1,8,15",
        "10,6,4,1;1,2,6,10",
        "28,15,6,1;1,6,15,28",
    ] {
        out.push(s.parse().unwrap());
    }
    out
}

/// `count` arrays drawn with replacement from [`family_pool`].
pub fn random_arrays(seed: u64, count: usize) -> Vec<IntersectionArray> {
    let pool = family_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| pool.choose(&mut rng).unwrap().clone()).collect()
}

/// Eigenvalues of the symmetrized tridiagonal intersection matrix, largest
/// first.
pub fn float_eigenvalues(a: &IntersectionArray) -> Vec<f64> {
    let d = a.d();
    let m = DMatrix::from_fn(d + 1, d + 1, |r, s| match (r, s) {
        _ if r == s => a.a(r) as f64,
        _ if s == r + 1 => ((a.b(r) * a.c(s)) as f64).sqrt(),
        _ if r == s + 1 => ((a.b(s) * a.c(r)) as f64).sqrt(),
        _ => 0.0,
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Cosine sequence by the forward recurrence in `f64`.
pub fn float_cosines(a: &IntersectionArray, theta: f64) -> Vec<f64> {
    let k = a.k() as f64;
    let mut s = vec![1.0, theta / k];
    for i in 1..a.d() {
        let next = ((theta - a.a(i) as f64) * s[i] - a.c(i) as f64 * s[i - 1]) / a.b(i) as f64;
        s.push(next);
    }
    s
}

/// `b_1(k + θ(a_1 + 1)) / ((k + θ)(1 + θ))`.
pub fn f_bound_at(a: &IntersectionArray, theta: f64) -> f64 {
    let (k, a1, b1) = (a.k() as f64, a.a(1) as f64, a.b(1) as f64);
    b1 * (k + theta * (a1 + 1.0)) / ((k + theta) * (1.0 + theta))
}

/// Tight arrays without a catalog entry that the search turns up for small
/// valencies.
pub const EXTRA_TIGHT: [&str; 8] = [
    "10,5,4,2;1,2,2,10",
    "10,6,3,1;1,3,6,10",
    "10,6,5,1;1,1,6,10",
    "16,9,6,1;1,2,9,16",
    "16,9,7,1;1,1,9,16",
    "25,18,4;1,9,25",
    "25,21,9;1,7,25",
    "28,18,4;1,6,28",
];

/// Catalog arrays followed by [`EXTRA_TIGHT`].
pub fn tight_pool() -> Vec<IntersectionArray> {
    drgt::catalog::entries()
        .into_iter()
        .map(|e| e.array)
        .chain(EXTRA_TIGHT.iter().map(|s| s.parse().unwrap()))
        .collect()
}
