//! Intersection arrays `{b_0,…,b_{d−1}; c_1,…,c_d}` and the counts they
//! determine.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Rational;

/// A validated intersection array.
///
/// Construction checks `c_1 = 1`, positivity, `a_i ≥ 0`, integrality of every
/// `k_i`, and rejects arrays with `a_1 ≠ 0` but some `a_i = 0` for
/// `1 ≤ i ≤ d−1`, which no distance-regular graph has.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
    a: Vec<u64>,
    kv: Vec<u64>,
}

/// Derived counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCounts {
    pub a: Vec<u64>,
    pub k: Vec<u64>,
    pub n: u64,
    /// `p1_ii[i] = p¹_{ii}` for `0 ≤ i ≤ d` (entry 0 is zero).
    pub p1_ii: Vec<Rational>,
    /// `p1_prev[i] = p¹_{i−1,i}` for `0 ≤ i ≤ d` (entry 0 is zero).
    pub p1_prev: Vec<Rational>,
}

impl IntersectionArray {
    /// Builds the array from `b_0..b_{d−1}` and `c_1..c_d`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let d = b.len();
        if d < 2 || c.len() != d {
            return Err(Error::InvalidArray(format!(
                "expected equally long b and c lists, got {} and {}",
                b.len(),
                c.len()
            )));
        }
        if b.iter().chain(&c).any(|&v| v == 0) {
            return Err(Error::InvalidArray("entries must be positive".into()));
        }
        if c[0] != 1 {
            return Err(Error::InvalidArray(format!("c_1 = {} but must be 1", c[0])));
        }
        let k = b[0];
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let bi = if i < d { b[i] } else { 0 };
            let ci = if i == 0 { 0 } else { c[i - 1] };
            let ai = k
                .checked_sub(bi)
                .and_then(|r| r.checked_sub(ci))
                .ok_or_else(|| Error::InvalidArray(format!("a_{i} = {k} - {bi} - {ci} < 0")))?;
            a.push(ai);
        }
        let mut kv = vec![1u64];
        let mut num = BigInt::one();
        for i in 0..d {
            num *= b[i];
            let prod = num.clone();
            let den: BigInt = c[..=i].iter().map(|&x| BigInt::from(x)).product();
            if !(&prod % &den).is_zero() {
                return Err(Error::NonIntegral {
                    index: i + 1,
                    value: crate::scalar::fmt_rational(&Rational::new(prod, den)),
                });
            }
            let ki: u64 = (&prod / &den)
                .try_into()
                .map_err(|_| Error::InvalidArray(format!("k_{} overflows", i + 1)))?;
            kv.push(ki);
        }
        kv.iter()
            .try_fold(0u64, |s, &x| s.checked_add(x))
            .ok_or_else(|| Error::InvalidArray("vertex count overflows".into()))?;
        if a[1] != 0 {
            if let Some(i) = (1..d).find(|&i| a[i] == 0) {
                return Err(Error::NotRealizable(format!("a_1 = {} but a_{i} = 0", a[1])));
            }
        }
        Ok(IntersectionArray { b, c, a, kv })
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn k(&self) -> u64 {
        self.b[0]
    }

    /// `b_i` for `0 ≤ i ≤ d`, with `b_d = 0`.
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` for `0 ≤ i ≤ d`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    pub fn a(&self, i: usize) -> u64 {
        self.a[i]
    }

    pub fn b_list(&self) -> &[u64] {
        &self.b
    }

    pub fn c_list(&self) -> &[u64] {
        &self.c
    }

    pub fn a_list(&self) -> &[u64] {
        &self.a
    }

    /// Valency of the distance-`i` graph.
    pub fn k_i(&self, i: usize) -> u64 {
        self.kv[i]
    }

    pub fn valencies(&self) -> &[u64] {
        &self.kv
    }

    pub fn n(&self) -> u64 {
        self.kv.iter().sum()
    }

    pub fn is_bipartite(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// `b_i = c_{d−i}` for every `i ≠ ⌊d/2⌋`.
    pub fn is_antipodal(&self) -> bool {
        let d = self.d();
        (0..d).filter(|&i| i != d / 2).all(|i| self.b(i) == self.c(d - i))
    }

    pub fn derive_counts(&self) -> DerivedCounts {
        let d = self.d();
        let r = |x: u64| Rational::from_integer(BigInt::from(x));
        let mut p1_ii = vec![Rational::zero()];
        let mut p1_prev = vec![Rational::zero()];
        for i in 1..=d {
            let bs: Rational = (1..i).map(|j| r(self.b(j))).product();
            let cs_prev: Rational = (1..i).map(|j| r(self.c(j))).product();
            let cs = &cs_prev * r(self.c(i));
            p1_ii.push(&bs / &cs * r(self.a(i)));
            p1_prev.push(&bs / &cs_prev);
        }
        DerivedCounts {
            a: self.a.clone(),
            k: self.kv.clone(),
            n: self.n(),
            p1_ii,
            p1_prev,
        }
    }

    /// All intersection numbers: `p[h][i][j] = p^h_{ij}`.
    pub fn intersection_numbers(&self) -> Vec<Vec<Vec<Rational>>> {
        let d = self.d();
        let r = |x: u64| Rational::from_integer(BigInt::from(x));
        // p[i][j][h]: coefficient of A_h in A_i A_j
        let mut p = vec![vec![vec![Rational::zero(); d + 1]; d + 1]; d + 1];
        for j in 0..=d {
            p[0][j][j] = Rational::one();
        }
        for h in 0..=d {
            if h > 0 {
                p[1][h - 1][h] = r(self.c(h));
            }
            p[1][h][h] = r(self.a(h));
            if h < d {
                p[1][h + 1][h] = r(self.b(h));
            }
        }
        for i in 1..d {
            for j in 0..=d {
                for h in 0..=d {
                    // A_1 (A_i A_j) expanded through p^l_{ij} and p^h_{1l}
                    let mut v = Rational::zero();
                    for l in 0..=d {
                        if !p[i][j][l].is_zero() && !p[1][l][h].is_zero() {
                            v += &p[i][j][l] * &p[1][l][h];
                        }
                    }
                    v -= r(self.b(i - 1)) * &p[i - 1][j][h];
                    v -= r(self.a(i)) * &p[i][j][h];
                    p[i + 1][j][h] = v / r(self.c(i + 1));
                }
            }
        }
        (0..=d)
            .map(|h| (0..=d).map(|i| (0..=d).map(|j| p[i][j][h].clone()).collect()).collect())
            .collect()
    }

    /// Characteristic polynomial `det(xI − L)` of the tridiagonal
    /// intersection matrix, via the continuant recurrence.
    pub fn characteristic_polynomial(&self) -> Poly {
        let d = self.d();
        let r = |x: u64| Rational::from_integer(BigInt::from(x));
        let x = Poly::new(vec![Rational::zero(), Rational::one()]);
        let mut prev = Poly::constant(Rational::one());
        let mut cur = x.add(&Poly::constant(-r(self.a(0))));
        for j in 1..=d {
            let lin = x.add(&Poly::constant(-r(self.a(j))));
            let next = lin.mul(&cur).add(&prev.scale(&-(r(self.b(j - 1)) * r(self.c(j)))));
            prev = cur;
            cur = next;
        }
        cur
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    /// Parses `"b0,b1,…;c1,…"`; whitespace and surrounding braces are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let err = |detail: String| Error::Parse { what: "intersection array", detail };
        let t = s.trim().trim_start_matches('{').trim_end_matches('}');
        let (bs, cs) = t.split_once(';').ok_or_else(|| err(format!("missing ';' in {s:?}")))?;
        let list = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| err(format!("bad entry {x:?}"))))
                .collect()
        };
        IntersectionArray::new(list(bs)?, list(cs)?)
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
