//! Eigenvalues and multiplicities of an intersection array.
//!
//! Roots of the characteristic polynomial are isolated with Sturm chains.
//! Integer roots are detected exactly (the polynomial is monic with integer
//! coefficients, so every rational root is an integer). Remaining roots are
//! paired into integer quadratic factors where possible, giving exact
//! quadratic irrationals; anything left is a float enclosure of width at most
//! `2^-42`.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::cosine_sequence;
use crate::error::{Error, Result};
use crate::poly::{isolate_roots, Enclosure, Poly};
use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Residual below which a float multiplicity is accepted as an integer.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;

/// Root enclosures are refined to this width.
const ROOT_WIDTH_LOG2: i32 = 42;

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<Scalar>,
    multiplicities: Vec<u64>,
    /// For an eigenvalue that is a root of an integer quadratic factor
    /// `x² − s x + p` of the characteristic polynomial: `(s, p)`.
    #[serde(skip)]
    quadratic: Vec<Option<(BigInt, BigInt)>>,
    #[serde(skip)]
    char_poly: Poly,
}

impl Spectrum {
    /// `θ_0 > θ_1 > … > θ_d`.
    pub fn eigenvalues(&self) -> &[Scalar] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn theta(&self, i: usize) -> &Scalar {
        &self.eigenvalues[i]
    }

    pub fn theta1(&self) -> &Scalar {
        &self.eigenvalues[1]
    }

    pub fn theta_d(&self) -> &Scalar {
        self.eigenvalues.last().unwrap()
    }

    pub fn d(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn characteristic_polynomial(&self) -> &Poly {
        &self.char_poly
    }

    pub fn is_exact(&self) -> bool {
        self.eigenvalues.iter().all(Scalar::is_exact)
    }

    /// The integer quadratic factor `(s, p)` shared by `θ_i` and `θ_j`, if the
    /// two are its conjugate roots.
    pub fn conjugate_pair(&self, i: usize, j: usize) -> Option<(BigInt, BigInt)> {
        match (&self.quadratic[i], &self.quadratic[j]) {
            (Some(a), Some(b)) if a == b => {
                let (s, p) = a;
                // a repeated quadratic factor is impossible, so equal factors
                // mean conjugate roots
                Some((s.clone(), p.clone()))
            }
            _ => None,
        }
    }

    /// `(Σ m_i, Σ m_i θ_i, Σ m_i θ_i²)`, which equal `(n, 0, n·k)`.
    pub fn trace_sums(&self) -> (Scalar, Scalar, Scalar) {
        let mut s0 = Scalar::zero();
        let mut s1 = Scalar::zero();
        let mut s2 = Scalar::zero();
        for (t, &m) in self.eigenvalues.iter().zip(&self.multiplicities) {
            let m = Scalar::from(m);
            s0 = s0 + &m;
            s1 = s1 + &m * t;
            s2 = s2 + &m * t.square();
        }
        (s0, s1, s2)
    }
}

/// `n / Σ k_i σ_i(θ)²`.
pub fn raw_multiplicity(array: &IntersectionArray, theta: &Scalar) -> Scalar {
    let cs = cosine_sequence(array, theta);
    let denom = cs
        .sigma
        .iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (i, s)| acc + Scalar::from(array.k_i(i)) * s.square());
    Scalar::from(array.n()) / denom
}

fn refine_exact(p: &Poly, sturm: &crate::poly::Sturm, e: &mut Enclosure) -> Option<Rational> {
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    e.refine_to(sturm, &quarter);
    let m = Rational::from_integer(e.hi.floor().to_integer());
    if m > e.lo && p.eval(&m).is_zero() {
        return Some(m);
    }
    None
}

fn enclosure_scalar(e: &Enclosure) -> Scalar {
    let lo = rational_to_f64(&e.lo);
    let hi = rational_to_f64(&e.hi);
    let mid = 0.5 * (lo + hi);
    Scalar::approx(mid, 0.5 * (hi - lo) + 4.0 * f64::EPSILON * mid.abs())
}

/// Eigenvalues with exactness wherever the characteristic polynomial allows.
fn eigenvalues(array: &IntersectionArray, exact: bool) -> Result<(Vec<Scalar>, Vec<Option<(BigInt, BigInt)>>, Poly)> {
    let p = array.characteristic_polynomial();
    let (sturm, mut encl) = isolate_roots(&p);
    let d = array.d();
    if encl.len() != d + 1 {
        return Err(Error::InconsistentSpectrum(format!(
            "expected {} distinct real eigenvalues, found {}",
            d + 1,
            encl.len()
        )));
    }
    let width = Rational::new(BigInt::one(), BigInt::one() << ROOT_WIDTH_LOG2 as usize);
    let mut vals: Vec<Option<Scalar>> = vec![None; encl.len()];
    let mut cofactor = p.clone();
    if exact {
        for (slot, e) in vals.iter_mut().zip(encl.iter_mut()) {
            if let Some(m) = refine_exact(&p, &sturm, e) {
                cofactor = cofactor.div_rem(&Poly::linear_root(&m)).0;
                *slot = Some(Scalar::Rational(m));
            }
        }
    }
    for (slot, e) in vals.iter_mut().zip(encl.iter_mut()) {
        if slot.is_none() {
            e.refine_to(&sturm, &width);
        }
    }
    let mut quadratic = vec![None; encl.len()];
    if exact {
        let open: Vec<usize> = (0..encl.len()).filter(|&i| vals[i].is_none()).collect();
        for (x, &i) in open.iter().enumerate() {
            for &j in &open[x + 1..] {
                if vals[i].is_some() || vals[j].is_some() {
                    continue;
                }
                let (ti, tj) = (enclosure_scalar(&encl[i]).to_f64(), enclosure_scalar(&encl[j]).to_f64());
                let (s, pr) = ((ti + tj).round(), (ti * tj).round());
                if (ti + tj - s).abs() > 1e-6 || (ti * tj - pr).abs() > 1e-6 * pr.abs().max(1.0) {
                    continue;
                }
                let (s, pr) = (BigInt::from(s as i128), BigInt::from(pr as i128));
                let q = Poly::new(vec![
                    Rational::from_integer(pr.clone()),
                    Rational::from_integer(-s.clone()),
                    Rational::one(),
                ]);
                if !cofactor.div_rem(&q).1.is_zero() {
                    continue;
                }
                let disc = &s * &s - BigInt::from(4) * &pr;
                if !disc.is_positive() {
                    continue;
                }
                let half_s = Rational::new(s.clone(), BigInt::from(2));
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                let lo = Scalar::quadratic(half_s.clone(), -half.clone(), &disc);
                let hi = Scalar::quadratic(half_s, half, &disc);
                if lo.is_exact() && hi.is_exact() && lo.kind() == crate::scalar::Kind::Quadratic {
                    vals[i] = Some(lo);
                    vals[j] = Some(hi);
                    quadratic[i] = Some((s.clone(), pr.clone()));
                    quadratic[j] = Some((s, pr));
                }
            }
        }
    }
    let mut out: Vec<Scalar> = vals
        .into_iter()
        .zip(&encl)
        .map(|(v, e)| v.unwrap_or_else(|| enclosure_scalar(e)))
        .collect();
    out.reverse();
    quadratic.reverse();
    Ok((out, quadratic, p))
}

fn build(array: &IntersectionArray, exact: bool) -> Result<Spectrum> {
    let (eigenvalues, quadratic, char_poly) = eigenvalues(array, exact)?;
    let k = Scalar::from(array.k());
    if eigenvalues[0] != k {
        return Err(Error::InconsistentSpectrum(format!("largest eigenvalue {} is not k", eigenvalues[0])));
    }
    let mut multiplicities = Vec::with_capacity(eigenvalues.len());
    for t in &eigenvalues {
        let raw = raw_multiplicity(array, t);
        let (m, residual) = raw.nearest_integer();
        let ok = if raw.is_exact() { raw.to_integer().is_some() } else { residual < MULTIPLICITY_TOLERANCE };
        let m = m.to_u64().filter(|&m| ok && m > 0).ok_or_else(|| Error::MultiplicityNotIntegral {
            theta: t.to_string(),
            raw: raw.to_string(),
        })?;
        multiplicities.push(m);
    }
    if multiplicities[0] != 1 {
        return Err(Error::InconsistentSpectrum("m_0 is not 1".into()));
    }
    let spec = Spectrum { eigenvalues, multiplicities, quadratic, char_poly };
    if array.d() >= 3 {
        let t1 = spec.theta1();
        let td = spec.theta_d();
        let lower = Scalar::from(array.a(1)) - &k;
        if !(t1.is_positive() && t1.cmp_tol(&k).is_lt()) {
            return Err(Error::InconsistentSpectrum(format!("θ_1 = {t1} outside (0, k)")));
        }
        if td.cmp_tol(&lower).is_lt() || !td.cmp_tol(&Scalar::int(-1)).is_lt() {
            return Err(Error::InconsistentSpectrum(format!("θ_d = {td} outside [a_1 − k, −1)")));
        }
    }
    Ok(spec)
}

/// Spectrum with exact eigenvalues wherever the characteristic polynomial
/// has integer roots or integer quadratic factors.
pub fn spectrum(array: &IntersectionArray) -> Result<Spectrum> {
    build(array, true)
}

/// The same spectrum computed purely from float enclosures, as an
/// independent route to compare against.
pub fn spectrum_numeric(array: &IntersectionArray) -> Result<Spectrum> {
    build(array, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Kind;

    fn arr(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    #[test]
    fn johnson_spectrum() {
        let a = arr("16,9,4,1;1,4,9,16");
        let s = spectrum(&a).unwrap();
        let th: Vec<String> = s.eigenvalues().iter().map(|t| t.to_string()).collect();
        assert_eq!(th, ["16", "8", "2", "-2", "-4"]);
        assert_eq!(s.multiplicities(), &[1, 7, 20, 28, 14]);
        let (n, tr, tr2) = s.trace_sums();
        assert_eq!(n, Scalar::int(70));
        assert_eq!(tr, Scalar::zero());
        assert_eq!(tr2, Scalar::int(70 * 16));
    }

    #[test]
    fn hypercube_spectrum() {
        let s = spectrum(&arr("4,3,2,1;1,2,3,4")).unwrap();
        let th: Vec<String> = s.eigenvalues().iter().map(|t| t.to_string()).collect();
        assert_eq!(th, ["4", "2", "0", "-2", "-4"]);
        assert_eq!(s.multiplicities(), &[1, 4, 6, 4, 1]);
    }

    #[test]
    fn icosahedron_spectrum_is_exact_in_q_sqrt5() {
        let s = spectrum(&arr("5,2,1;1,2,5")).unwrap();
        let th: Vec<String> = s.eigenvalues().iter().map(|t| t.to_string()).collect();
        assert_eq!(th, ["5", "sqrt(5)", "-1", "-sqrt(5)"]);
        assert_eq!(s.theta1().kind(), Kind::Quadratic);
        assert_eq!(s.multiplicities(), &[1, 3, 5, 3]);
        assert_eq!(s.conjugate_pair(1, 3), Some((BigInt::zero(), BigInt::from(-5))));
        assert!((s.theta1().to_f64() - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn numeric_route_agrees_with_exact_route() {
        for t in ["16,9,4,1;1,4,9,16", "10,6,4,1;1,2,6,10", "5,2,1;1,2,5", "6,4,2;1,2,3"] {
            let a = arr(t);
            let e = spectrum(&a).unwrap();
            let f = spectrum_numeric(&a).unwrap();
            assert_eq!(e.multiplicities(), f.multiplicities());
            for (x, y) in e.eigenvalues().iter().zip(f.eigenvalues()) {
                assert_eq!(y.kind(), Kind::Approx);
                assert!((x.to_f64() - y.to_f64()).abs() <= y.error_bound().max(1e-12));
            }
        }
    }

    #[test]
    fn non_integral_multiplicities_are_rejected() {
        // passes the valency checks but admits no graph
        let a = arr("4,3,1;1,1,2");
        assert!(matches!(spectrum(&a), Err(Error::MultiplicityNotIntegral { .. })));
    }
}
