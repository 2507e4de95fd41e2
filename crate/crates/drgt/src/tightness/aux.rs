use serde::Serialize;

use crate::cosine::CosineSequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Extremal {
    Theta1,
    ThetaD,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxiliaryParameter {
    pub epsilon: Scalar,
    pub attached_theta: Extremal,
}

/// `(k² − θθ′) / (k(θ − θ′))` without any bound checks.
pub fn epsilon_formula(k: u64, theta: &Scalar, theta_prime: &Scalar) -> Option<Scalar> {
    let k = Scalar::from(k);
    (k.square() - theta * theta_prime).checked_div(&(&k * (theta - theta_prime)))
}

/// `ε` attached to `θ`, where `{θ, θ′} = {θ_1, θ_d}`. Checks
/// `1 < |ε| < min(k/θ_1, −k/θ_d)` and that the sign of `ε` matches the
/// attached eigenvalue.
pub fn auxiliary_parameter(k: u64, theta: &Scalar, theta_prime: &Scalar) -> Result<AuxiliaryParameter> {
    let epsilon = epsilon_formula(k, theta, theta_prime)
        .ok_or_else(|| Error::AuxBoundViolation("θ = θ′".into()))?;
    let (t1, td, attached_theta) = if theta > theta_prime {
        (theta, theta_prime, Extremal::Theta1)
    } else {
        (theta_prime, theta, Extremal::ThetaD)
    };
    if !t1.is_positive() || !td.is_negative() {
        return Err(Error::AuxBoundViolation(format!("θ_1 = {t1}, θ_d = {td} straddle no zero")));
    }
    let kk = Scalar::from(k);
    let a = epsilon.abs();
    let cap_1 = &kk / t1;
    let cap_d = -(&kk / td);
    if a <= Scalar::one() || a >= cap_1 || a >= cap_d {
        return Err(Error::AuxBoundViolation(format!(
            "|ε| = {a} outside (1, min({cap_1}, {cap_d}))"
        )));
    }
    if epsilon.is_positive() != (attached_theta == Extremal::Theta1) {
        return Err(Error::AuxBoundViolation(format!("ε = {epsilon} has the wrong sign")));
    }
    Ok(AuxiliaryParameter { epsilon, attached_theta })
}

/// `σ_iρ_i − σ_{i−1}ρ_{i−1} − ε(σ_{i−1}ρ_i − ρ_{i−1}σ_i)` for `1 ≤ i ≤ d`.
pub fn epsilon_identity_residuals(sigma: &[Scalar], rho: &[Scalar], epsilon: &Scalar) -> Vec<Scalar> {
    (1..sigma.len())
        .map(|i| {
            &sigma[i] * &rho[i] - &sigma[i - 1] * &rho[i - 1]
                - epsilon * (&sigma[i - 1] * &rho[i] - &rho[i - 1] * &sigma[i])
        })
        .collect()
}

/// The cosine sequence of the other extremal eigenvalue,
/// `ρ_i = Π_{j ≤ i} (σ_{j−1} − εσ_j)/(σ_j − εσ_{j−1})`.
pub fn rho_from_sigma(sigma: &CosineSequence, epsilon: &Scalar) -> Result<CosineSequence> {
    let d = sigma.d();
    let mut rho = Vec::with_capacity(d + 1);
    rho.push(Scalar::one());
    for j in 1..=d {
        let num = sigma.at(j - 1) - epsilon * sigma.at(j);
        let den = sigma.at(j) - epsilon * sigma.at(j - 1);
        let f = num.checked_div(&den).ok_or(Error::DegenerateDenominator(j))?;
        rho.push(&rho[j - 1] * f);
    }
    let res = epsilon_identity_residuals(&sigma.sigma, &rho, epsilon);
    if let Some(i) = res.iter().position(|r| !r.is_zero()) {
        return Err(Error::EpsilonIdentity(i + 1));
    }
    Ok(CosineSequence::from_values(sigma.k, rho))
}

/// `θ ∈ {θ_1, θ_d}` and `σ_{i−1} ≠ σ_{i+1}` for `1 ≤ i ≤ d−1`.
pub fn feasibility(sigma: &CosineSequence, spectrum: &Spectrum) -> bool {
    let extremal = sigma.theta == *spectrum.theta1() || sigma.theta == *spectrum.theta_d();
    extremal && (1..sigma.d()).all(|i| sigma.at(i - 1) != sigma.at(i + 1))
}
