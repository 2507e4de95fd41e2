//! Dense univariate polynomials over the rationals, Sturm chains and real
//! root isolation.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::scalar::{fmt_rational, Rational};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::scalar::rational_to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.leading();
        a.scale(&l.recip())
    }

    /// The polynomial with every repeated factor reduced to a simple one.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Scales by a positive constant so the leading coefficient has absolute
    /// value one; signs at every point are preserved.
    fn normalized(&self) -> Poly {
        let l = self.leading().abs();
        if l.is_zero() {
            return self.clone();
        }
        self.scale(&l.recip())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && i > 0 { String::new() } else { fmt_rational(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain `p, p', -rem(p, p'), …` of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.normalized(), p.derivative().normalized()];
        loop {
            let n = chain.len();
            if chain[n - 1].degree().unwrap_or(0) == 0 {
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(r.scale(&-Rational::one()).normalized());
        }
        Sturm { chain }
    }

    pub fn poly(&self) -> &Poly {
        &self.chain[0]
    }

    pub fn sign_changes(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.sign_changes(lo) - self.sign_changes(hi)
    }
}

/// A half-open rational interval `(lo, hi]` holding exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Halves the interval, keeping the half that holds the root.
    pub fn bisect(&mut self, sturm: &Sturm) {
        let m = self.mid();
        if sturm.count(&self.lo, &m) == 1 {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    pub fn refine_to(&mut self, sturm: &Sturm, width: &Rational) {
        while &self.width() > width {
            self.bisect(sturm);
        }
    }
}

/// Power of two at least the Cauchy bound `1 + max |a_i / a_n|`.
fn root_bound(p: &Poly) -> Rational {
    let lead = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    let mut b = Rational::one();
    let bound = m + Rational::one();
    while b < bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

/// Disjoint enclosures of every distinct real root of `p`, ascending.
pub fn isolate_roots(p: &Poly) -> (Sturm, Vec<Enclosure>) {
    let sq = p.squarefree();
    let sturm = Sturm::new(&sq);
    if sq.degree().unwrap_or(0) == 0 {
        return (sturm, Vec::new());
    }
    let b = root_bound(&sq);
    let mut stack = vec![Enclosure { lo: -b.clone(), hi: b }];
    let mut out = Vec::new();
    while let Some(e) = stack.pop() {
        match sturm.count(&e.lo, &e.hi) {
            0 => {}
            1 => out.push(e),
            _ => {
                let m = e.mid();
                stack.push(Enclosure { lo: e.lo, hi: m.clone() });
                stack.push(Enclosure { lo: m, hi: e.hi });
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    (sturm, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2)(x+3)
        let p = Poly::from_ints(&[6, -7, 0, 1]);
        let (q, r) = p.div_rem(&Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_ints(&[-6, 1, 1]));
        let g = p.gcd(&Poly::from_ints(&[-2, 1]).mul(&Poly::from_ints(&[5, 1])));
        assert_eq!(g, Poly::from_ints(&[-2, 1]));
    }

    #[test]
    fn squarefree_drops_repeats() {
        let p = Poly::from_ints(&[-1, 1]).mul(&Poly::from_ints(&[-1, 1])).mul(&Poly::from_ints(&[2, 1]));
        assert_eq!(p.squarefree().degree(), Some(2));
    }

    #[test]
    fn sturm_counts_roots() {
        // x^2 - 5
        let p = Poly::from_ints(&[-5, 0, 1]);
        let s = Sturm::new(&p);
        assert_eq!(s.count(&int(-10), &int(10)), 2);
        assert_eq!(s.count(&int(0), &int(10)), 1);
        assert_eq!(s.count(&int(2), &rat(11, 5)), 0);
        assert_eq!(s.count(&int(2), &rat(5, 2)), 1);
    }

    #[test]
    fn isolation_and_refinement() {
        // (x^2 - 5)(x + 1)(x - 5): the icosahedron's characteristic polynomial
        let p = Poly::from_ints(&[-5, 0, 1]).mul(&Poly::from_ints(&[1, 1])).mul(&Poly::from_ints(&[-5, 1]));
        let (sturm, mut roots) = isolate_roots(&p);
        assert_eq!(roots.len(), 4);
        let tiny = rat(1, 1 << 40);
        for e in &mut roots {
            e.refine_to(&sturm, &tiny);
        }
        let approx: Vec<f64> = roots.iter().map(|e| crate::scalar::rational_to_f64(&e.hi)).collect();
        let want = [-5f64.sqrt(), -1.0, 5f64.sqrt(), 5.0];
        for (a, w) in approx.iter().zip(want) {
            assert!((a - w).abs() < 1e-11, "{a} vs {w}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[-5, 0, 1]).to_string(), "x^2 - 5");
        assert_eq!(Poly::from_ints(&[1, -3, 2]).to_string(), "2x^2 - 3x + 1");
    }
}
