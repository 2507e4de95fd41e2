use std::collections::BTreeMap;

use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::cosine_sequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;
use crate::tightness::{classify, Classification};

use super::tight_edge::tight_edge_test;
use super::{DistanceTable, EdgePartition, Graph};

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    /// Number of `(z, formula)` comparisons per family. For an edge tight
    /// with respect to `θ`: `edge_cross` on `D_{i−1}^i ∪ D_i^{i−1}`,
    /// `edge_diagonal` on `D_i^i` and `edge_last_diagonal` on `D_d^d` when
    /// `a_d ≠ 0`. For a tight graph: `tight_shells` (distances to `D_1^1`
    /// from `D_i^i`) and `tight_diagonal_neighbors` (neighbors in the
    /// diagonal cells).
    pub checked: BTreeMap<&'static str, usize>,
    pub max_deviation: Scalar,
}

struct Checker<'a> {
    checked: BTreeMap<&'static str, usize>,
    max_deviation: Scalar,
    part: &'a EdgePartition,
}

impl Checker<'_> {
    fn compare(&mut self, formula: &'static str, i: usize, z: usize, actual: u32, expected: Option<Scalar>) -> Result<()> {
        let expected = expected.ok_or_else(|| {
            Error::Inconsistent(format!("{formula}: denominator vanishes at i = {i}"))
        })?;
        let dev = (Scalar::from(actual as u64) - &expected).abs();
        *self.checked.entry(formula).or_default() += 1;
        if !dev.is_zero() {
            return Err(Error::FormulaMismatch {
                formula,
                i,
                z,
                actual: actual.to_string(),
                expected: expected.to_string(),
            });
        }
        if dev > self.max_deviation {
            self.max_deviation = dev;
        }
        Ok(())
    }

    fn cell(&self, i: usize, j: usize) -> Vec<usize> {
        self.part.cell(i, j).to_vec()
    }
}

/// Compares brute-force neighbor counts against the closed forms that hold
/// for an edge tight with respect to `theta`. The formulas that need the
/// whole graph to be tight run only when the array classifies tight.
pub fn verify_count_formulas(
    g: &Graph,
    array: &IntersectionArray,
    spectrum: &Spectrum,
    table: &DistanceTable,
    part: &EdgePartition,
    theta: &Scalar,
) -> Result<CountReport> {
    if !tight_edge_test(g, array, table, part, theta)?.is_tight {
        return Err(Error::PreconditionViolated(format!("edge is not tight with respect to θ = {theta}")));
    }
    let graph_tight = classify(array, spectrum)?.classification == Classification::Tight;
    let d = array.d();
    let cs = cosine_sequence(array, theta);
    let sg = |i: usize| cs.at(i).clone();
    let one = Scalar::one();
    let s = sg(1);
    let s2 = sg(2);
    let a1 = Scalar::from(array.a(1));
    let d11 = part.cell(1, 1).to_vec();
    // |Γ_j(z) ∩ D_1^1|
    let near = |z: usize, j: usize| d11.iter().filter(|&&w| table.get(z, w) == j).count() as u32;
    let q = (&one - &s) / (&one + &s);
    let mut ck = Checker { checked: BTreeMap::new(), max_deviation: Scalar::zero(), part };

    for i in 1..=d {
        let den = sg(i - 1) - sg(i);
        let lo = (&a1 / (&one + &s)) * (&s * sg(i - 1) - sg(i));
        let hi = (&a1 / (&one + &s)) * (sg(i - 1) - &s * sg(i));
        for z in ck.cell(i - 1, i).into_iter().chain(ck.cell(i, i - 1)) {
            ck.compare("edge_cross", i, z, near(z, i - 1), lo.checked_div(&den))?;
            ck.compare("edge_cross", i, z, near(z, i), hi.checked_div(&den))?;
        }
    }

    for i in 1..d {
        let gap = sg(i) - sg(i + 1);
        for z in ck.cell(i, i) {
            let prev = Scalar::from(near(z, i - 1) as u64);
            let up = (&prev * (sg(i - 1) - sg(i))).checked_div(&gap).zip((&a1 * &q * sg(i)).checked_div(&gap));
            ck.compare("edge_diagonal", i, z, near(z, i + 1), up.map(|(x, y)| x + y))?;
            let same = (&prev * (sg(i - 1) - sg(i + 1))).checked_div(&gap).zip((&a1 * &q * sg(i + 1)).checked_div(&gap));
            let two = &a1 * Scalar::int(2) * &s / (&one + &s);
            ck.compare("edge_diagonal", i, z, near(z, i), same.map(|(x, y)| -x + &two - y))?;
        }
    }
    if array.a(d) != 0 {
        let den = sg(d - 1) - sg(d);
        let t = (&a1 * &q * sg(d)).checked_div(&den);
        for z in ck.cell(d, d) {
            ck.compare("edge_last_diagonal", d, z, near(z, d - 1), t.clone().map(|t| -t))?;
            ck.compare("edge_last_diagonal", d, z, near(z, d), t.clone().map(|t| &a1 + t))?;
        }
    }

    if graph_tight {
        let sq = s.square() - &s2;
        let lin = &s - &s2;
        for i in 1..d {
            let ci = Scalar::from(array.c(i));
            let bi = Scalar::from(array.b(i));
            let lo = (&ci * &sq * (sg(i) - sg(i + 1))).checked_div(&(&lin * (&s * sg(i) - sg(i + 1))));
            let hi = (&bi * &sq * (sg(i - 1) - sg(i))).checked_div(&(&lin * (sg(i - 1) - &s * sg(i))));
            let down = (&ci * (sg(i) - sg(i + 1)) * (&s * sg(i - 1) - sg(i)))
                .checked_div(&((sg(i - 1) - sg(i)) * (&s * sg(i) - sg(i + 1))));
            let up = (&bi * (sg(i - 1) - sg(i)) * (sg(i) - &s * sg(i + 1)))
                .checked_div(&((sg(i) - sg(i + 1)) * (sg(i - 1) - &s * sg(i))));
            for z in ck.cell(i, i) {
                ck.compare("tight_shells", i, z, near(z, i - 1), lo.clone())?;
                ck.compare("tight_shells", i, z, near(z, i + 1), hi.clone())?;
                ck.compare("tight_diagonal_neighbors", i, z, part.count(z, i - 1, i - 1), down.clone())?;
                ck.compare("tight_diagonal_neighbors", i, z, part.count(z, i + 1, i + 1), up.clone())?;
            }
        }
        for i in 2..=d {
            let v = (Scalar::from(array.a(i - 1)) * (&one - &s) * (sg(i - 1).square() - sg(i - 2) * sg(i)))
                .checked_div(&((sg(i - 1) - sg(i)) * (sg(i - 2) - &s * sg(i - 1))));
            for z in ck.cell(i - 1, i).into_iter().chain(ck.cell(i, i - 1)) {
                ck.compare("tight_diagonal_neighbors", i, z, part.count(z, i - 1, i - 1), v.clone())?;
            }
        }
    }
    Ok(CountReport { checked: ck.checked, max_deviation: ck.max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct, edge_partition, verify_distance_regular, VerifyOptions};
    use crate::spectrum::spectrum;

    fn run(f: &str, theta: Scalar) -> Result<CountReport> {
        let g = construct(f.parse().unwrap()).unwrap();
        let a = verify_distance_regular(&g, VerifyOptions::default()).unwrap();
        let sp = spectrum(&a).unwrap();
        let t = DistanceTable::new(&g).unwrap();
        let (x, y) = g.edges().next().unwrap();
        let p = edge_partition(&g, &a, &t, x, y).unwrap();
        verify_count_formulas(&g, &a, &sp, &t, &p, &theta)
    }

    #[test]
    fn johnson_both_extremes() {
        for th in [8, -4] {
            let r = run("johnson:8,4", Scalar::int(th)).unwrap();
            assert!(r.max_deviation.is_zero());
            for key in ["edge_cross", "edge_diagonal", "tight_shells", "tight_diagonal_neighbors"] {
                assert!(r.checked[key] > 0, "{key} unchecked for θ = {th}");
            }
        }
    }

    #[test]
    fn middle_eigenvalue_rejected() {
        assert!(matches!(run("johnson:8,4", Scalar::int(2)), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn hamming_exercises_last_cell() {
        // a_3 = 3 ≠ 0 and the edge is tight with respect to θ_d = −3
        let r = run("hamming:3,3", Scalar::int(-3)).unwrap();
        assert!(r.checked["edge_last_diagonal"] > 0);
        assert!(!r.checked.contains_key("tight_shells"));
    }
}
