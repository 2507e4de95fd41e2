//! Cosine sequences and the bipartite test.

use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

/// `σ_0, …, σ_d` attached to an eigenvalue `θ` of a graph of valency `k`.
#[derive(Clone, Debug, Serialize)]
pub struct CosineSequence {
    pub theta: Scalar,
    pub k: u64,
    pub sigma: Vec<Scalar>,
}

impl CosineSequence {
    /// Wraps given values, taking `θ = k·σ_1`.
    pub fn from_values(k: u64, sigma: Vec<Scalar>) -> Self {
        let theta = Scalar::from(k) * &sigma[1];
        CosineSequence { theta, k, sigma }
    }

    pub fn d(&self) -> usize {
        self.sigma.len() - 1
    }

    /// `σ_i`.
    pub fn at(&self, i: usize) -> &Scalar {
        &self.sigma[i]
    }

    /// `σ = σ_1`.
    pub fn s(&self) -> &Scalar {
        &self.sigma[1]
    }

    pub fn is_exact(&self) -> bool {
        self.theta.is_exact() && self.sigma.iter().all(Scalar::is_exact)
    }

    /// `c_d σ_{d−1} + a_d σ_d − θ σ_d`; zero exactly when `θ` is an eigenvalue.
    pub fn terminal_residual(&self, array: &IntersectionArray) -> Scalar {
        let d = self.d();
        Scalar::from(array.c(d)) * &self.sigma[d - 1] + Scalar::from(array.a(d)) * &self.sigma[d]
            - &self.theta * &self.sigma[d]
    }

    /// Residual of the row-`i` recurrence `c_i σ_{i−1} + a_i σ_i + b_i σ_{i+1} − θσ_i`.
    pub fn row_residual(&self, array: &IntersectionArray, i: usize) -> Scalar {
        let mut r = Scalar::from(array.a(i)) * &self.sigma[i] - &self.theta * &self.sigma[i];
        if i > 0 {
            r = r + Scalar::from(array.c(i)) * &self.sigma[i - 1];
        }
        if i < self.d() {
            r = r + Scalar::from(array.b(i)) * &self.sigma[i + 1];
        }
        r
    }
}

/// Forward recurrence `σ_0 = 1`, `σ_1 = θ/k`,
/// `σ_{i+1} = ((θ − a_i)σ_i − c_iσ_{i−1}) / b_i`.
pub fn cosine_sequence(array: &IntersectionArray, theta: &Scalar) -> CosineSequence {
    let d = array.d();
    let k = array.k();
    let mut sigma = Vec::with_capacity(d + 1);
    sigma.push(Scalar::one());
    sigma.push(theta / Scalar::from(k));
    for i in 1..d {
        let next = ((theta - Scalar::from(array.a(i))) * &sigma[i]
            - Scalar::from(array.c(i)) * &sigma[i - 1])
            / Scalar::from(array.b(i));
        sigma.push(next);
    }
    CosineSequence { theta: theta.clone(), k, sigma }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteWitness {
    pub is_bipartite: bool,
    pub theta_d_is_minus_k: bool,
    pub sigma1_is_minus_one: bool,
    pub sigma2_is_one: bool,
}

/// Decides bipartiteness from `a_i` and cross-checks the equivalent spectral
/// conditions on the least eigenvalue.
pub fn bipartite_test(array: &IntersectionArray, spectrum: &Spectrum) -> Result<BipartiteWitness> {
    let theta_d = spectrum.theta_d();
    let cs = cosine_sequence(array, theta_d);
    let w = BipartiteWitness {
        is_bipartite: array.is_bipartite(),
        theta_d_is_minus_k: *theta_d == -Scalar::from(array.k()),
        sigma1_is_minus_one: *cs.at(1) == Scalar::int(-1),
        sigma2_is_one: *cs.at(2) == Scalar::one(),
    };
    let all = [w.theta_d_is_minus_k, w.sigma1_is_minus_one, w.sigma2_is_one];
    if all.iter().any(|&x| x != w.is_bipartite) {
        return Err(Error::InconsistentSpectrum(format!("bipartite equivalences disagree: {w:?}")));
    }
    if w.is_bipartite {
        for (i, s) in cs.sigma.iter().enumerate() {
            let want = Scalar::int(if i % 2 == 0 { 1 } else { -1 });
            if *s != want {
                return Err(Error::InconsistentSpectrum(format!("σ_{i}(θ_d) = {s}, expected {want}")));
            }
        }
    }
    Ok(w)
}
