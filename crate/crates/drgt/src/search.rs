//! Enumeration of integral intersection arrays attaining equality in the
//! fundamental bound.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::array::IntersectionArray;
use crate::cosine::cosine_sequence;
use crate::error::{Error, Result};
use crate::spectrum::{spectrum, spectrum_numeric};
use crate::tightness::{analyze_with, feasibility, TightnessReport};

pub const DEFAULT_CAP: u64 = 100_000_000;
pub const PROGRESS_EVERY: u64 = 1_000_000;
/// Relative tolerance of the floating-point bound check that gates the exact one.
const PREFILTER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ToleranceMode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub d: usize,
    pub max_k: u64,
    pub require_antipodal: bool,
    pub require_feasible: bool,
    pub mode: ToleranceMode,
    /// Monotone `b` and `c`, `c_d = k` and prefix integrality as generator
    /// constraints. Without it every `1 ≤ b_i, c_i ≤ k` is visited.
    pub prune: bool,
    /// Maximum number of complete candidate arrays.
    pub cap: u64,
}

impl SearchConfig {
    pub fn new(d: usize, max_k: u64) -> Self {
        SearchConfig {
            d,
            max_k,
            require_antipodal: false,
            require_feasible: false,
            mode: ToleranceMode::Exact,
            prune: true,
            cap: DEFAULT_CAP,
        }
    }

    fn check(&self) -> Result<()> {
        if self.d < 3 {
            return Err(Error::ParamOutOfRange(format!("d = {} but search needs d ≥ 3", self.d)));
        }
        if self.max_k < 3 {
            return Err(Error::ParamOutOfRange(format!("max_k = {} but search needs max_k ≥ 3", self.max_k)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub array: IntersectionArray,
    pub report: TightnessReport,
}

impl SearchHit {
    /// One NDJSON line: `{array, slack, epsilon, theta1, thetad, exact}`.
    pub fn to_ndjson(&self) -> String {
        let r = &self.report;
        json!({
            "array": self.array.to_string(),
            "slack": r.fb.slack,
            "epsilon": r.epsilon,
            "theta1": r.spectrum.theta1(),
            "thetad": r.spectrum.theta_d(),
            "exact": r.fb.exact && !r.numerically_tight,
        })
        .to_string()
    }
}

struct Shared<'a> {
    cfg: &'a SearchConfig,
    seen: AtomicU64,
    over: AtomicBool,
    progress: &'a (dyn Fn(u64) + Sync),
}

impl Shared<'_> {
    /// Counts one candidate; false once the cap is passed.
    fn tick(&self) -> bool {
        let n = self.seen.fetch_add(1, Ordering::Relaxed) + 1;
        if n % PROGRESS_EVERY == 0 {
            (self.progress)(n);
        }
        if n > self.cfg.cap {
            self.over.store(true, Ordering::Relaxed);
        }
        !self.over.load(Ordering::Relaxed)
    }
}

pub fn search_tight_arrays(cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    search_with_progress(cfg, &|_| {})
}

/// As [`search_tight_arrays`], calling `progress` with the running candidate
/// count every [`PROGRESS_EVERY`] candidates.
pub fn search_with_progress(cfg: &SearchConfig, progress: &(dyn Fn(u64) + Sync)) -> Result<Vec<SearchHit>> {
    cfg.check()?;
    // a_1 ≥ 1 and b_1 ≥ 1 force k ≥ 3
    let prefixes: Vec<(u64, u64, u64)> = (3..=cfg.max_k)
        .flat_map(|k| (1..=k).flat_map(move |b1| (1..=k).map(move |c2| (k, b1, c2))))
        .filter(|&(k, b1, c2)| !cfg.prune || prefix_ok(k, b1, c2))
        .collect();
    let shared = Shared { cfg, seen: AtomicU64::new(0), over: AtomicBool::new(false), progress };
    let mut hits: Vec<SearchHit> = prefixes
        .par_iter()
        .flat_map_iter(|&(k, b1, c2)| {
            let mut out = Vec::new();
            let mut b = vec![k, b1];
            let mut c = vec![1, c2];
            walk(&shared, 2, &mut b, &mut c, &mut out);
            out
        })
        .collect();
    let seen = shared.seen.load(Ordering::Relaxed);
    if shared.over.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(seen));
    }
    hits.sort_by(|x, y| {
        (x.array.b_list(), x.array.c_list()).cmp(&(y.array.b_list(), y.array.c_list()))
    });
    Ok(hits)
}

fn prefix_ok(k: u64, b1: u64, c2: u64) -> bool {
    // a_1 ≥ 1, c_2 ≤ b_1, k_2 integral
    b1 + 2 <= k && c2 <= b1 && (k * b1) % c2 == 0
}

/// Extends `b = [k, b_1, …, b_{i−1}]`, `c = [c_1, …, c_{i}]` (with `c_2` fixed by
/// the prefix) until both have length `d`.
fn walk(sh: &Shared, i: usize, b: &mut Vec<u64>, c: &mut Vec<u64>, out: &mut Vec<SearchHit>) {
    if sh.over.load(Ordering::Relaxed) {
        return;
    }
    let cfg = sh.cfg;
    let d = cfg.d;
    let k = b[0];
    if i == d {
        let last: Vec<u64> = if cfg.prune { vec![k] } else { (1..=k).collect() };
        for cd in last {
            if !sh.tick() {
                return;
            }
            c.push(cd);
            if let Some(hit) = evaluate(cfg, b, c) {
                out.push(hit);
            }
            c.pop();
        }
        return;
    }
    let c_range: Vec<u64> = if c.len() > i - 1 {
        vec![c[i - 1]]
    } else if cfg.prune {
        (c[i - 2]..=k).collect()
    } else {
        (1..=k).collect()
    };
    for ci in c_range {
        let pushed = c.len() < i;
        if pushed {
            c.push(ci);
        }
        if cfg.prune && !prefix_integral(b, c) {
            if pushed {
                c.pop();
            }
            continue;
        }
        let b_hi = if cfg.prune { b[i - 1] } else { k };
        for bi in 1..=b_hi {
            if cfg.prune && bi + ci + 1 > k {
                continue;
            }
            b.push(bi);
            walk(sh, i + 1, b, c, out);
            b.pop();
        }
        if pushed {
            c.pop();
        }
    }
}

/// `k_j = k_{j−1} b_{j−1} / c_j` integral for every `c_j` placed so far.
fn prefix_integral(b: &[u64], c: &[u64]) -> bool {
    let mut ki: u128 = 1;
    for j in 0..c.len() {
        let num = ki * b[j] as u128;
        if num % c[j] as u128 != 0 {
            return false;
        }
        ki = num / c[j] as u128;
    }
    true
}

/// Folklore bound `c_i ≤ b_j` for `i + j ≤ d`.
fn folklore_ok(b: &[u64], c: &[u64]) -> bool {
    let d = b.len();
    (1..=d).all(|i| (0..d).filter(|&j| i + j <= d).all(|j| c[i - 1] <= b[j]))
}

fn evaluate(cfg: &SearchConfig, b: &[u64], c: &[u64]) -> Option<SearchHit> {
    if cfg.prune && !folklore_ok(b, c) {
        return None;
    }
    let array = IntersectionArray::new(b.to_vec(), c.to_vec()).ok()?;
    let d = array.d();
    if array.a(d) != 0 || (1..d).any(|i| array.a(i) == 0) {
        return None;
    }
    if cfg.require_antipodal && !array.is_antipodal() {
        return None;
    }
    if !float_prefilter(&array) {
        return None;
    }
    let sp = match cfg.mode {
        ToleranceMode::Exact => spectrum(&array),
        ToleranceMode::Numeric => spectrum_numeric(&array),
    }
    .ok()?;
    if cfg.require_feasible && !feasibility(&cosine_sequence(&array, sp.theta1()), &sp) {
        return None;
    }
    let report = analyze_with(&array, sp).ok()?;
    report.is_tight().then_some(SearchHit { array, report })
}

/// Symmetrized tridiagonal eigenvalues in `f64`, then the bound with a
/// generous tolerance. Only rejects; acceptance is decided exactly.
fn float_prefilter(array: &IntersectionArray) -> bool {
    let d = array.d();
    let m = DMatrix::from_fn(d + 1, d + 1, |r, s| {
        if r == s {
            array.a(r) as f64
        } else if s == r + 1 {
            ((array.b(r) * array.c(r + 1)) as f64).sqrt()
        } else if r == s + 1 {
            ((array.b(s) * array.c(s + 1)) as f64).sqrt()
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    let (k, a1, b1) = (array.k() as f64, array.a(1) as f64, array.b(1) as f64);
    let (t1, td) = (ev[1], ev[d]);
    let shift = k / (a1 + 1.0);
    let slack = (t1 + shift) * (td + shift) + k * a1 * b1 / ((a1 + 1.0) * (a1 + 1.0));
    td < -1.0 + PREFILTER_TOL && td >= a1 - k - PREFILTER_TOL && slack.abs() <= PREFILTER_TOL * k * k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrays(cfg: &SearchConfig) -> Vec<String> {
        search_tight_arrays(cfg).unwrap().into_iter().map(|h| h.array.to_string()).collect()
    }

    #[test]
    fn icosahedron_found() {
        let got = arrays(&SearchConfig::new(3, 5));
        assert!(got.contains(&"5,2,1;1,2,5".to_string()), "{got:?}");
    }

    #[test]
    fn tiny_box_is_empty() {
        assert!(arrays(&SearchConfig::new(4, 4)).is_empty());
    }

    #[test]
    fn pruner_matches_exhaustive() {
        for (d, k) in [(3, 9), (4, 6)] {
            let pruned = arrays(&SearchConfig::new(d, k));
            let full = arrays(&SearchConfig { prune: false, ..SearchConfig::new(d, k) });
            assert_eq!(pruned, full, "d = {d}, max_k = {k}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SearchConfig { cap: 10, ..SearchConfig::new(3, 12) };
        assert!(matches!(search_tight_arrays(&cfg), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn bad_config() {
        assert!(search_tight_arrays(&SearchConfig::new(2, 10)).is_err());
        assert!(search_tight_arrays(&SearchConfig::new(3, 2)).is_err());
    }

    #[test]
    fn ndjson_line() {
        let hits = search_tight_arrays(&SearchConfig::new(3, 5)).unwrap();
        let h = hits.iter().find(|h| h.array.to_string() == "5,2,1;1,2,5").unwrap();
        let v: serde_json::Value = serde_json::from_str(&h.to_ndjson()).unwrap();
        assert_eq!(v["array"], "5,2,1;1,2,5");
        assert_eq!(v["slack"], "0");
    }
}
