use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::{Error, Result};
use crate::scalar::{all_exact, Scalar};

/// Intersection numbers carried as scalars, before any integrality check.
#[derive(Clone, Debug, Serialize)]
pub struct ArrayValues {
    /// `b_0..b_{d−1}`.
    pub b: Vec<Scalar>,
    /// `c_1..c_d`.
    pub c: Vec<Scalar>,
}

impl ArrayValues {
    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn k(&self) -> &Scalar {
        &self.b[0]
    }

    /// `a_i = k − b_i − c_i`.
    pub fn a(&self, i: usize) -> Scalar {
        let b = self.b.get(i).cloned().unwrap_or_else(Scalar::zero);
        let c = if i == 0 { Scalar::zero() } else { self.c[i - 1].clone() };
        self.k() - b - c
    }

    /// The array, when every entry is a positive integer and the result is
    /// a valid array.
    pub fn to_array(&self) -> Option<IntersectionArray> {
        let ints = |xs: &[Scalar]| -> Option<Vec<u64>> {
            xs.iter().map(|x| x.to_integer().and_then(|n| u64::try_from(n).ok())).collect()
        };
        IntersectionArray::new(ints(&self.b)?, ints(&self.c)?).ok()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Parametrization {
    pub values: ArrayValues,
    pub h: Scalar,
    pub g: Scalar,
    pub theta1: Scalar,
    pub theta_d: Scalar,
    /// Every `b_i`, `c_i` is a positive integer.
    pub integral: bool,
    /// Every reported value is exact.
    pub exact: bool,
    pub array: Option<IntersectionArray>,
}

fn nonzero(x: Scalar, what: &str) -> Result<Scalar> {
    if x.is_zero() {
        Err(Error::PreconditionViolated(format!("denominator {what} vanishes")))
    } else {
        Ok(x)
    }
}

/// Builds the intersection numbers of a tight graph from a feasible cosine
/// sequence `σ_0..σ_d` and its auxiliary parameter `ε`.
pub fn parametrize(sigma: &[Scalar], epsilon: &Scalar) -> Result<Parametrization> {
    if let Some(x) = sigma.iter().chain([epsilon]).find(|x| !x.is_exact()) {
        return Err(Error::InexactInput(x.to_string()));
    }
    let d = sigma.len().saturating_sub(1);
    if d < 3 {
        return Err(Error::DiameterTooSmall(d));
    }
    let one = Scalar::one();
    let s = &sigma[1];
    let s2 = &sigma[2];
    if sigma[0] != one {
        return Err(Error::PreconditionViolated("σ_0 = 1".into()));
    }
    if sigma[d - 1] != s * &sigma[d] {
        return Err(Error::PreconditionViolated("σ_{d−1} = σσ_d".into()));
    }
    if *epsilon == -&one {
        return Err(Error::PreconditionViolated("ε ≠ −1".into()));
    }
    let sq_gap = s.square() - s2;
    let h_den = nonzero(&sq_gap * (&one - epsilon * s), "of h")?;
    let h = (&one - s) * (&one - s2) / h_den;
    let k = &h * (s - epsilon) / nonzero(s - &one, "σ − 1")?;

    let mut b = vec![k.clone()];
    let mut c = Vec::with_capacity(d);
    for i in 1..d {
        let (p, x, n) = (&sigma[i - 1], &sigma[i], &sigma[i + 1]);
        let bd = nonzero((p - n) * (n - x), &format!("of b_{i}"))?;
        let cd = nonzero((n - p) * (p - x), &format!("of c_{i}"))?;
        b.push(&h * (p - s * x) * (n - epsilon * x) / bd);
        c.push(&h * (n - s * x) * (p - epsilon * x) / cd);
    }
    c.push(k.clone());
    let values = ArrayValues { b, c };
    if values.c[0] != one {
        return Err(Error::Inconsistent(format!("c_1 = {}", values.c[0])));
    }

    let g = (epsilon - &one) * (&one - s2) / nonzero(&sq_gap * (&one - epsilon * s), "of g")?;
    for i in 1..d {
        let (p, x, n) = (&sigma[i - 1], &sigma[i], &sigma[i + 1]);
        let den = (n - x) * (p - x);
        let ai = &g * (n - s * x) * (p - s * x) / nonzero(den, &format!("of a_{i}"))?;
        if ai != values.a(i) {
            return Err(Error::Inconsistent(format!("a_{i}: {ai} vs {}", values.a(i))));
        }
    }
    if !values.a(d).is_zero() {
        return Err(Error::Inconsistent(format!("a_d = {}", values.a(d))));
    }

    let near = s * (s - epsilon) * (&one - s2) / nonzero((&one - epsilon * s) * -&sq_gap, "of θ")?;
    let far = (&one - s2) / -&sq_gap;
    let (theta1, theta_d) = if epsilon.is_positive() { (near, far) } else { (far, near) };

    let integral = values
        .b
        .iter()
        .chain(&values.c)
        .all(|x| x.is_positive() && x.to_integer().is_some());
    let array = if integral { values.to_array() } else { None };
    let exact = all_exact(values.b.iter().chain(&values.c).chain([&h, &g, &theta1, &theta_d]));
    Ok(Parametrization { values, h, g, theta1, theta_d, integral, exact, array })
}

/// Intersection numbers from the cosine sequences of `θ_1` and `θ_d` (in
/// either order). `c_d` is evaluated from both sequences and must agree.
pub fn two_eigenvalue_parametrize(sigma: &[Scalar], rho: &[Scalar]) -> Result<ArrayValues> {
    let d = sigma.len() - 1;
    if rho.len() != d + 1 {
        return Err(Error::PreconditionViolated("sequences differ in length".into()));
    }
    if d < 3 {
        return Err(Error::DiameterTooSmall(d));
    }
    let one = Scalar::one();
    let (s, s2, r, r2) = (&sigma[1], &sigma[2], &rho[1], &rho[2]);
    let num = (s - s2) * (&one - r) - (r - r2) * (&one - s);
    let den = (r - r2) * (&one - s) * s - (s - s2) * (&one - r) * r;
    let k = num.checked_div(&den).ok_or(Error::ZeroDenominator(0))?;

    let mut b = vec![k.clone()];
    let mut c = Vec::with_capacity(d);
    for i in 1..d {
        let ds = (&sigma[i - 1] - &sigma[i], &sigma[i] - &sigma[i + 1]);
        let dr = (&rho[i - 1] - &rho[i], &rho[i] - &rho[i + 1]);
        let det = &dr.1 * &ds.0 - &ds.1 * &dr.0;
        if det.is_zero() {
            return Err(Error::ZeroDenominator(i));
        }
        let bn = &ds.0 * (&one - r) * &rho[i] - &dr.0 * (&one - s) * &sigma[i];
        let cn = &ds.1 * (&one - r) * &rho[i] - &dr.1 * (&one - s) * &sigma[i];
        b.push(&k * bn / &det);
        c.push(&k * cn / &det);
    }
    let via = |x: &[Scalar]| {
        (&k * &x[d] * (&x[1] - &one)).checked_div(&(&x[d - 1] - &x[d]))
    };
    let cd_s = via(sigma).ok_or(Error::ZeroDenominator(d))?;
    let cd_r = via(rho).ok_or(Error::ZeroDenominator(d))?;
    if cd_s != cd_r {
        return Err(Error::Inconsistent(format!("c_d = {cd_s} from σ, {cd_r} from ρ")));
    }
    c.push(cd_s);
    Ok(ArrayValues { b, c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(i64, i64)]) -> Vec<Scalar> {
        xs.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect()
    }

    const J84: [(i64, i64); 5] = [(1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1)];
    const J84_RHO: [(i64, i64); 5] = [(1, 1), (-1, 4), (1, 6), (-1, 4), (1, 1)];
    const SYM7: [(i64, i64); 5] = [(1, 1), (1, 2), (0, 1), (-1, 4), (-1, 2)];
    const SYM7_RHO: [(i64, i64); 5] = [(1, 1), (-2, 5), (3, 10), (-2, 5), (1, 1)];

    #[test]
    fn johnson_parametrization() {
        let p = parametrize(&v(&J84), &Scalar::ratio(3, 2)).unwrap();
        assert_eq!(p.h.to_string(), "8");
        assert_eq!(p.g.to_string(), "8");
        assert_eq!(p.theta1.to_string(), "8");
        assert_eq!(p.theta_d.to_string(), "-4");
        assert_eq!(p.values.a(1).to_string(), "6");
        assert!(p.integral);
        assert_eq!(p.array.unwrap().to_string(), "16,9,4,1;1,4,9,16");
    }

    #[test]
    fn sym7_parametrization() {
        let p = parametrize(&v(&SYM7), &Scalar::ratio(4, 3)).unwrap();
        assert_eq!((p.h.to_string(), p.g.to_string()), ("6".into(), "4".into()));
        assert_eq!(p.array.unwrap().to_string(), "10,6,4,1;1,2,6,10");
    }

    #[test]
    fn theta_d_sequence_with_negative_epsilon() {
        let p = parametrize(&v(&SYM7_RHO), &Scalar::ratio(-4, 3));
        // σ_{d−1} = σσ_d fails for the θ_d sequence of 3.Sym(7)
        assert!(matches!(p, Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn preconditions() {
        let mut s = v(&J84);
        s[0] = Scalar::int(2);
        assert!(matches!(parametrize(&s, &Scalar::ratio(3, 2)), Err(Error::PreconditionViolated(_))));
        assert!(matches!(parametrize(&v(&J84), &Scalar::int(-1)), Err(Error::PreconditionViolated(_))));
        let mut s = v(&J84);
        s[1] = Scalar::approx(0.5, 1e-12);
        assert!(matches!(parametrize(&s, &Scalar::ratio(3, 2)), Err(Error::InexactInput(_))));
        assert_eq!(parametrize(&v(&J84[..3]), &Scalar::ratio(3, 2)).unwrap_err(), Error::DiameterTooSmall(2));
    }

    #[test]
    fn non_integral_candidates_are_reported() {
        let s = v(&[(1, 1), (1, 3), (-1, 5), (-3, 5)]);
        let p = parametrize(&s, &Scalar::ratio(3, 2)).unwrap();
        assert_eq!(p.values.b[2].to_string(), "81/49");
        assert_eq!(p.values.c[1].to_string(), "171/49");
        assert!(!p.integral && p.array.is_none());
    }

    #[test]
    fn two_eigenvalue_examples() {
        let a = two_eigenvalue_parametrize(&v(&J84), &v(&J84_RHO)).unwrap();
        assert_eq!(a.to_array().unwrap().to_string(), "16,9,4,1;1,4,9,16");
        let a = two_eigenvalue_parametrize(&v(&SYM7_RHO), &v(&SYM7)).unwrap();
        assert_eq!(a.to_array().unwrap().to_string(), "10,6,4,1;1,2,6,10");
    }

    #[test]
    fn two_eigenvalue_zero_denominator() {
        let s = v(&J84);
        assert_eq!(two_eigenvalue_parametrize(&s, &s).unwrap_err(), Error::ZeroDenominator(0));
    }
}
