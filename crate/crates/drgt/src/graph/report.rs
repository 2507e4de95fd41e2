use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};
use crate::scalar::{all_exact, Scalar};
use crate::spectrum::spectrum;
use crate::tightness::{classify, f_bounds, local_srg, Classification, LocalSrg};

use super::{
    check_all_edges, compute_f, edge_partition, local_graph, srg_parameters, tightness_rank, verify_count_formulas,
    verify_distance_regular, CountReport, DistanceTable, Graph, VerifyOptions,
};

#[derive(Clone, Debug, Default)]
pub struct GraphCheckOptions {
    pub verify: VerifyOptions,
    pub homogeneous: bool,
    pub formulas: bool,
    /// Number of evenly spaced edges for the per-edge checks; all when `None`.
    pub sample: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankSummary {
    pub t: usize,
    pub dim_mh: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCheck {
    /// Distinct `(ν, κ, λ, μ)` over all vertices.
    pub brute: Vec<[u64; 4]>,
    pub formula: Option<LocalSrg>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneitySummary {
    pub edges: usize,
    pub homogeneous_edges: usize,
    pub violations: usize,
    pub l_sizes: Vec<usize>,
    pub l_expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaCheck {
    pub theta: Scalar,
    pub report: Option<CountReport>,
    /// Why the check did not run or failed.
    pub note: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub m: usize,
    pub array: IntersectionArray,
    pub classification: Classification,
    pub edges_checked: usize,
    /// Distinct `f(x, y)` over the checked edges.
    pub f_values: Vec<Scalar>,
    pub f_bounds: Option<[Scalar; 2]>,
    pub rank: Vec<RankSummary>,
    pub local: Option<LocalCheck>,
    pub homogeneity: Option<HomogeneitySummary>,
    pub formulas: Vec<FormulaCheck>,
    /// `f_values` and `f_bounds` are exact.
    pub exact: bool,
    /// Everything the array predicts for the graph was confirmed.
    pub passed: bool,
}

fn sample_edges(g: &Graph, sample: Option<usize>) -> Vec<(usize, usize)> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    match sample {
        Some(s) if s < edges.len() => (0..s).map(|t| edges[t * edges.len() / s]).collect(),
        _ => edges,
    }
}

/// Runs the combinatorial pipeline on a concrete graph: distance-regularity,
/// the edge partitions, `f`, the tightness rank, the local graphs and
/// optionally 1-homogeneity and the count formulas.
pub fn verify_graph(g: &Graph, opts: &GraphCheckOptions) -> Result<GraphReport> {
    let array = verify_distance_regular(g, opts.verify)?;
    let sp = spectrum(&array)?;
    let classification = classify(&array, &sp)?.classification;
    let tight = classification == Classification::Tight;
    let table = DistanceTable::new(g)?;
    let edges = sample_edges(g, opts.sample);
    let has_a1 = array.a(1) != 0;

    let per_edge: Vec<(Option<Scalar>, Option<(usize, usize)>)> = edges
        .par_iter()
        .map(|&(x, y)| {
            let part = edge_partition(g, &array, &table, x, y)?;
            if !has_a1 {
                return Ok((None, None));
            }
            let f = compute_f(g, &part, &array)?.f;
            let r = tightness_rank(g, &array, &sp, &table, &part)?;
            Ok((Some(f), Some((r.t, r.dim_mh))))
        })
        .collect::<Result<_>>()?;
    let mut f_values: Vec<Scalar> = Vec::new();
    for f in per_edge.iter().filter_map(|p| p.0.clone()) {
        if !f_values.contains(&f) {
            f_values.push(f);
        }
    }
    f_values.sort_by(|a, b| a.cmp_tol(b));
    let mut rank: Vec<RankSummary> = Vec::new();
    for (t, dim_mh) in per_edge.iter().filter_map(|p| p.1) {
        match rank.iter_mut().find(|r| r.t == t && r.dim_mh == dim_mh) {
            Some(r) => r.edges += 1,
            None => rank.push(RankSummary { t, dim_mh, edges: 1 }),
        }
    }
    let fb = f_bounds(&array, &sp).ok();

    let local = if has_a1 {
        let brute: BTreeSet<[u64; 4]> = (0..g.n())
            .into_par_iter()
            .map(|x| srg_parameters(&local_graph(g, x)).map(|(a, b, c, d)| [a, b, c, d]))
            .collect::<Result<_>>()
            // a local graph that is not strongly regular leaves this empty
            .unwrap_or_default();
        let brute: Vec<[u64; 4]> = brute.into_iter().collect();
        let formula = if tight { Some(local_srg(&array, &sp)?) } else { None };
        let matches = match (&formula, brute.as_slice()) {
            (Some(l), [one]) => [&l.nu, &l.kappa, &l.lambda, &l.mu]
                .iter()
                .zip(one)
                .all(|(x, &y)| **x == Scalar::from(y)),
            (None, _) => true,
            _ => false,
        };
        Some(LocalCheck { brute, formula, matches })
    } else {
        None
    };

    let homogeneity = if opts.homogeneous {
        let certs = check_all_edges(g, &array, &table, opts.sample)?;
        let mut l_sizes: Vec<usize> = certs.iter().map(|c| c.l.len()).collect();
        l_sizes.sort_unstable();
        l_sizes.dedup();
        Some(HomogeneitySummary {
            edges: certs.len(),
            homogeneous_edges: certs.iter().filter(|c| c.is_homogeneous()).count(),
            violations: certs.iter().map(|c| c.violations.len()).sum(),
            l_sizes,
            l_expected: certs.first().map_or(0, |c| c.l_expected),
        })
    } else {
        None
    };

    let mut formulas = Vec::new();
    if opts.formulas && has_a1 {
        let (x, y) = edges[0];
        let part = edge_partition(g, &array, &table, x, y)?;
        for theta in [sp.theta1(), sp.theta_d()] {
            let check = match verify_count_formulas(g, &array, &sp, &table, &part, theta) {
                Ok(r) => FormulaCheck { theta: theta.clone(), pass: r.max_deviation.is_zero(), report: Some(r), note: None },
                Err(Error::PreconditionViolated(why)) => {
                    FormulaCheck { theta: theta.clone(), report: None, note: Some(why), pass: !tight }
                }
                Err(e) => FormulaCheck { theta: theta.clone(), report: None, note: Some(e.to_string()), pass: false },
            };
            formulas.push(check);
        }
    }

    let mut passed = formulas.iter().all(|f| f.pass) && local.as_ref().is_none_or(|l| l.matches);
    if tight {
        let single = fb.as_ref().is_some_and(|(lo, hi)| lo == hi && f_values.iter().all(|f| f == lo));
        let t2 = rank.iter().all(|r| r.t == 2);
        let homog = homogeneity.as_ref().is_none_or(|h| h.violations == 0);
        passed &= single && t2 && homog;
    }
    let exact = all_exact(f_values.iter()) && fb.as_ref().is_none_or(|(lo, hi)| lo.is_exact() && hi.is_exact());
    Ok(GraphReport {
        n: g.n(),
        m: g.m(),
        array,
        classification,
        edges_checked: edges.len(),
        f_values,
        f_bounds: fb.map(|(lo, hi)| [lo, hi]),
        rank,
        local,
        homogeneity,
        formulas,
        exact,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    fn run(f: &str, sample: Option<usize>) -> GraphReport {
        let g = construct(f.parse().unwrap()).unwrap();
        let opts = GraphCheckOptions { homogeneous: true, formulas: true, sample, ..Default::default() };
        verify_graph(&g, &opts).unwrap()
    }

    #[test]
    fn icosahedron_passes() {
        let r = run("icosahedron", None);
        assert!(r.passed);
        assert_eq!(r.edges_checked, 30);
        assert_eq!(r.f_values, [Scalar::int(1)]);
        assert_eq!(r.local.unwrap().brute, [[5, 2, 0, 1]]);
    }

    #[test]
    fn hamming_is_consistent_but_not_tight() {
        let r = run("hamming:3,3", Some(10));
        assert!(r.passed);
        assert_eq!(r.classification, Classification::NonTightSlack);
        assert_eq!(r.f_values, [Scalar::zero()]);
        assert_eq!((r.rank[0].t, r.rank[0].dim_mh), (1, 9));
        assert!(r.formulas[0].report.is_none());
        assert!(r.formulas[1].report.is_some());
    }

    #[test]
    fn hypercube_skips_edge_checks() {
        let r = run("hypercube:4", None);
        assert!(r.f_values.is_empty() && r.local.is_none() && r.formulas.is_empty());
    }
}
