use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::{bipartite_test, CosineSequence};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::spectrum::Spectrum;

use super::require_diameter;

/// Both sides of the Fundamental Bound and their difference.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalBound {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub slack: Scalar,
    pub exact: bool,
    /// Set when `θ_1, θ_d` are conjugate roots of one quadratic factor and the
    /// left side was evaluated through their sum and product.
    pub via_conjugates: bool,
}

/// `(θ_1 + k/(a_1+1))(θ_d + k/(a_1+1))` against `−k a_1 b_1/(a_1+1)²`.
pub fn fundamental_bound(array: &IntersectionArray, spectrum: &Spectrum) -> Result<FundamentalBound> {
    require_diameter(array)?;
    let k = Scalar::from(array.k());
    let a1 = Scalar::from(array.a(1));
    let b1 = Scalar::from(array.b(1));
    let q = &k / (&a1 + Scalar::one());
    let d = array.d();
    let rhs = -(&k * &a1 * &b1) / (&a1 + Scalar::one()).square();
    let (lhs, via_conjugates) = match spectrum.conjugate_pair(1, d) {
        Some((s, p)) => {
            let s = Scalar::Rational(Rational::from_integer(s));
            let p = Scalar::Rational(Rational::from_integer(p));
            (p + &q * s + q.square(), true)
        }
        None => ((spectrum.theta1() + &q) * (spectrum.theta_d() + &q), false),
    };
    let slack = &lhs - &rhs;
    let exact = slack.is_exact();
    Ok(FundamentalBound { lhs, rhs, slack, exact, via_conjugates })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Tight,
    Bipartite,
    NonTightSlack,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub classification: Classification,
    pub bound: FundamentalBound,
    /// Tight only up to the float tolerance.
    pub numerically_tight: bool,
}

pub fn classify(array: &IntersectionArray, spectrum: &Spectrum) -> Result<Verdict> {
    let bound = fundamental_bound(array, spectrum)?;
    let bip = bipartite_test(array, spectrum)?;
    let zero = bound.slack.is_zero();
    let classification = if bip.is_bipartite {
        Classification::Bipartite
    } else if zero {
        Classification::Tight
    } else {
        Classification::NonTightSlack
    };
    let numerically_tight = classification == Classification::Tight && !bound.exact;
    Ok(Verdict { classification, bound, numerically_tight })
}

/// Lower and upper bounds on `f(x, y)` over edges `xy`.
pub fn f_bounds(array: &IntersectionArray, spectrum: &Spectrum) -> Result<(Scalar, Scalar)> {
    require_diameter(array)?;
    if array.a(1) == 0 {
        return Err(Error::A1Zero);
    }
    let k = Scalar::from(array.k());
    let a1 = Scalar::from(array.a(1));
    let b1 = Scalar::from(array.b(1));
    let one = Scalar::one();
    let bound = |t: &Scalar| {
        (&b1 * (&k + t * (&a1 + &one))) / ((&k + t) * (&one + t))
    };
    Ok((bound(spectrum.theta_d()), bound(spectrum.theta1())))
}

/// `b⁺ = −1 − b_1/(1+θ_d)` and `b⁻ = −1 − b_1/(1+θ_1)`.
pub fn b_plus_minus(array: &IntersectionArray, spectrum: &Spectrum) -> (Scalar, Scalar) {
    let b1 = Scalar::from(array.b(1));
    let one = Scalar::one();
    let plus = -&one - &b1 / (&one + spectrum.theta_d());
    let minus = -&one - &b1 / (&one + spectrum.theta1());
    (plus, minus)
}

/// Every eigenvalue pair `(i, j)`, `1 ≤ i ≤ j ≤ d`, with
/// `(θ_i + q)(θ_j + q) = −k a_1 b_1/(a_1+1)²` where `q = k/(a_1+1)`.
pub fn fb_equality_pairs(array: &IntersectionArray, spectrum: &Spectrum) -> Vec<(usize, usize)> {
    let k = Scalar::from(array.k());
    let a1 = Scalar::from(array.a(1));
    let b1 = Scalar::from(array.b(1));
    let q = &k / (&a1 + Scalar::one());
    let rhs = -(&k * &a1 * &b1) / (&a1 + Scalar::one()).square();
    let d = array.d();
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            let lhs = (spectrum.theta(i) + &q) * (spectrum.theta(j) + &q);
            if lhs == rhs {
                out.push((i, j));
            }
        }
    }
    out
}

/// `(σ_2ρ_2 − σρ)(ρ − σ) − (σρ_2 − σ_2ρ)(σρ − 1)`, zero exactly for a tight
/// extremal pair.
pub fn two_cosine_residual(sigma: &CosineSequence, rho: &CosineSequence) -> Scalar {
    let (s, s2) = (sigma.at(1), sigma.at(2));
    let (r, r2) = (rho.at(1), rho.at(2));
    (s2 * r2 - s * r) * (r - s) - (s * r2 - s2 * r) * (s * r - Scalar::one())
}

/// `(σσ_{i−1} − σ_i) / ((1+σ)(σ_{i−1} − σ_i))` for `1 ≤ i ≤ d`; `None` where the
/// denominator vanishes.
pub fn ratio_sequence(sigma: &CosineSequence) -> Vec<Option<Scalar>> {
    let s = sigma.s();
    (1..=sigma.d())
        .map(|i| {
            let num = s * sigma.at(i - 1) - sigma.at(i);
            let den = (Scalar::one() + s) * (sigma.at(i - 1) - sigma.at(i));
            num.checked_div(&den)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosine::cosine_sequence;
    use crate::spectrum::spectrum;

    fn setup(s: &str) -> (IntersectionArray, Spectrum) {
        let a: IntersectionArray = s.parse().unwrap();
        let sp = spectrum(&a).unwrap();
        (a, sp)
    }

    #[test]
    fn johnson_bound_is_equal() {
        let (a, sp) = setup("16,9,4,1;1,4,9,16");
        let fb = fundamental_bound(&a, &sp).unwrap();
        assert_eq!(fb.lhs.to_string(), "-864/49");
        assert_eq!(fb.rhs.to_string(), "-864/49");
        assert!(fb.slack.is_zero() && fb.exact && !fb.via_conjugates);
    }

    #[test]
    fn icosahedron_uses_conjugates() {
        let (a, sp) = setup("5,2,1;1,2,5");
        let fb = fundamental_bound(&a, &sp).unwrap();
        assert!(fb.via_conjugates);
        assert_eq!(fb.lhs.to_string(), "-20/9");
        assert_eq!(fb.slack.as_rational().map(|r| r.to_string()), Some("0".into()));
        let direct = (sp.theta1() + Scalar::ratio(5, 3)) * (sp.theta_d() + Scalar::ratio(5, 3));
        assert_eq!(direct.to_string(), "-20/9");
    }

    #[test]
    fn classifications() {
        let (a, sp) = setup("10,6,4,1;1,2,6,10");
        assert_eq!(classify(&a, &sp).unwrap().classification, Classification::Tight);
        let (a, sp) = setup("4,3,2,1;1,2,3,4");
        let v = classify(&a, &sp).unwrap();
        assert_eq!(v.classification, Classification::Bipartite);
        assert!(v.bound.slack.is_zero());
        let (a, sp) = setup("6,4,2;1,2,3");
        let v = classify(&a, &sp).unwrap();
        assert_eq!(v.classification, Classification::NonTightSlack);
        assert_eq!(v.bound.slack.to_string(), "6");
    }

    #[test]
    fn diameter_two_rejected() {
        let (a, sp) = setup("3,2;1,1");
        assert_eq!(fundamental_bound(&a, &sp).unwrap_err(), Error::DiameterTooSmall(2));
    }

    #[test]
    fn f_bound_examples() {
        let cases = [
            ("16,9,4,1;1,4,9,16", "3", "3"),
            ("10,6,4,1;1,2,6,10", "2", "2"),
            ("6,4,2;1,2,3", "0", "4/3"),
        ];
        for (s, lo, hi) in cases {
            let (a, sp) = setup(s);
            let (l, h) = f_bounds(&a, &sp).unwrap();
            assert_eq!((l.to_string().as_str(), h.to_string().as_str()), (lo, hi), "{s}");
        }
        let (a, sp) = setup("4,3,2,1;1,2,3,4");
        assert_eq!(f_bounds(&a, &sp).unwrap_err(), Error::A1Zero);
    }

    #[test]
    fn extremal_pair_is_unique_for_tight() {
        for s in ["16,9,4,1;1,4,9,16", "10,6,4,1;1,2,6,10", "5,2,1;1,2,5"] {
            let (a, sp) = setup(s);
            assert_eq!(fb_equality_pairs(&a, &sp), vec![(1, a.d())], "{s}");
        }
        let (a, sp) = setup("6,4,2;1,2,3");
        assert!(fb_equality_pairs(&a, &sp).is_empty());
    }

    #[test]
    fn two_cosine_identity() {
        let (a, sp) = setup("16,9,4,1;1,4,9,16");
        let s = cosine_sequence(&a, sp.theta1());
        let r = cosine_sequence(&a, sp.theta_d());
        assert!(two_cosine_residual(&s, &r).is_zero());
        let rs = ratio_sequence(&s);
        let rr = ratio_sequence(&r);
        for (x, y) in rs.iter().zip(&rr) {
            if let (Some(x), Some(y)) = (x, y) {
                assert_eq!(x, y);
            }
        }
        let (a, sp) = setup("6,4,2;1,2,3");
        let s = cosine_sequence(&a, sp.theta1());
        let r = cosine_sequence(&a, sp.theta_d());
        assert!(!two_cosine_residual(&s, &r).is_zero());
    }

    #[test]
    fn b_plus_minus_johnson() {
        let (a, sp) = setup("16,9,4,1;1,4,9,16");
        let (p, m) = b_plus_minus(&a, &sp);
        assert_eq!((p.to_string(), m.to_string()), ("2".into(), "-2".into()));
    }
}
