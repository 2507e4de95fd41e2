//! Real numbers as exact rationals, exact quadratic irrationals, or certified
//! float enclosures.
//!
//! Exact kinds compare exactly. A comparison that touches an enclosure is
//! decided by the tolerance policy: two values are indistinguishable when
//! their difference lies within `max(EQ_TOLERANCE, error bound)` of zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Absolute tolerance below which float quantities are treated as equal.
pub const EQ_TOLERANCE: f64 = 1e-9;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Closest f64 to a rational together with a bound on the conversion error.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn pad(x: f64) -> f64 {
    x.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE
}

/// Midpoint-radius interval.
#[derive(Clone, Copy, Debug)]
pub struct Ball {
    pub mid: f64,
    pub rad: f64,
}

impl Ball {
    pub fn new(mid: f64, rad: f64) -> Self {
        Ball { mid, rad: rad.abs() }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    fn add(self, o: Ball) -> Ball {
        let mid = self.mid + o.mid;
        Ball::new(mid, self.rad + o.rad + pad(mid))
    }

    fn sub(self, o: Ball) -> Ball {
        let mid = self.mid - o.mid;
        Ball::new(mid, self.rad + o.rad + pad(mid))
    }

    fn mul(self, o: Ball) -> Ball {
        let mid = self.mid * o.mid;
        let rad = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad;
        Ball::new(mid, rad + pad(mid))
    }

    fn div(self, o: Ball) -> Ball {
        let mid = self.mid / o.mid;
        if o.contains_zero() {
            return Ball::new(mid, f64::INFINITY);
        }
        let b = o.mid.abs();
        let rad = (self.mid.abs() * o.rad + b * self.rad) / (b * (b - o.rad));
        Ball::new(mid, rad + pad(mid))
    }
}

/// `a + b·√radicand` with `b ≠ 0` and a squarefree radicand greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    radicand: BigInt,
}

/// Splits `n > 0` as `m²·s` with `s` squarefree where trial division allows.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(2_000_000u32);
    while &p * &p <= rest && p <= limit {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            root *= &p;
        }
        p += 1u32;
    }
    (root, rest)
}

impl Quadratic {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    fn conj_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.radicand.clone())
    }

    fn sign(&self) -> Ordering {
        let sa = self.a.numer().sign();
        let sb = self.b.numer().sign();
        if sa == sb || sa == Sign::NoSign {
            return sign_to_ord(sb);
        }
        // opposite signs: compare a² with b²·D
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(self.radicand.clone());
        if lhs > rhs {
            sign_to_ord(sa)
        } else {
            sign_to_ord(sb)
        }
    }

    fn ball(&self) -> Ball {
        let a = rational_to_f64(&self.a);
        let b = rational_to_f64(&self.b);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        let mid = a + b * r;
        Ball::new(mid, 8.0 * f64::EPSILON * (a.abs() + (b * r).abs()) + f64::MIN_POSITIVE)
    }
}

fn sign_to_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Rational,
    Quadratic,
    Approx,
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Quadratic(Quadratic),
    Approx(Ball),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Rational(rat(p, q))
    }

    pub fn approx(mid: f64, rad: f64) -> Self {
        Scalar::Approx(Ball::new(mid, rad))
    }

    /// `a + b·√n` for a positive integer `n`, simplified to a rational when
    /// the surd vanishes.
    pub fn quadratic(a: Rational, b: Rational, n: &BigInt) -> Self {
        assert!(n.is_positive(), "radicand must be positive");
        let (root, rest) = square_split(n);
        let b = b * Rational::from_integer(root);
        if b.is_zero() {
            Scalar::Rational(a)
        } else if rest.is_one() {
            Scalar::Rational(a + b)
        } else {
            Scalar::Quadratic(Quadratic { a, b, radicand: rest })
        }
    }

    /// Parses `p/q` or an integer exactly; decimals become float enclosures.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::Parse { what: "number", detail: t.to_string() };
        if t.contains(['.', 'e', 'E']) {
            let v: f64 = t.parse().map_err(|_| err())?;
            return Ok(Scalar::approx(v, pad(v)));
        }
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| err())?;
        let q: BigInt = q.parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        Ok(Scalar::Rational(Rational::new(p, q)))
    }

    pub fn kind(&self) -> Kind {
        match self {
            Scalar::Rational(_) => Kind::Rational,
            Scalar::Quadratic(_) => Kind::Quadratic,
            Scalar::Approx(_) => Kind::Approx,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Approx(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Exact integer value, if the scalar is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn ball(&self) -> Ball {
        match self {
            Scalar::Rational(r) => {
                let v = rational_to_f64(r);
                Ball::new(v, pad(v))
            }
            Scalar::Quadratic(q) => q.ball(),
            Scalar::Approx(b) => *b,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ball().mid
    }

    /// Absolute error bound; zero for exact kinds.
    pub fn error_bound(&self) -> f64 {
        match self {
            Scalar::Approx(b) => b.rad,
            _ => 0.0,
        }
    }

    /// The same value with exactness dropped.
    pub fn to_approx(&self) -> Scalar {
        Scalar::Approx(self.ball())
    }

    /// Sign under the tolerance policy.
    pub fn sign(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => sign_to_ord(r.numer().sign()),
            Scalar::Quadratic(q) => q.sign(),
            Scalar::Approx(b) => {
                if b.mid.abs() <= EQ_TOLERANCE.max(b.rad) {
                    Ordering::Equal
                } else if b.mid > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn cmp_tol(&self, other: &Scalar) -> Ordering {
        (self - other).sign()
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quadratic(q) => {
                let n = q.conj_norm();
                Scalar::Quadratic(Quadratic {
                    a: &q.a / &n,
                    b: -&q.b / &n,
                    radicand: q.radicand.clone(),
                })
            }
            Scalar::Approx(b) => Scalar::Approx(Ball::new(1.0, 0.0).div(*b)),
        })
    }

    /// `self / other`, or `None` when the divisor is zero under the policy.
    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.recip().map(|r| self * &r)
    }

    /// Nearest integer when within `tol`, together with the residual.
    pub fn nearest_integer(&self) -> (BigInt, f64) {
        match self {
            Scalar::Rational(r) => {
                let n = r.round().to_integer();
                let res = rational_to_f64(&(r - Rational::from_integer(n.clone())).abs());
                (n, res)
            }
            _ => {
                let v = self.to_f64();
                let n = v.round();
                (BigInt::from(n as i128), (v - n).abs())
            }
        }
    }
}

fn binary(
    x: &Scalar,
    y: &Scalar,
    rr: impl Fn(&Rational, &Rational) -> Rational,
    qq: impl Fn(&Rational, &Rational, &Rational, &Rational, &Rational) -> (Rational, Rational),
    bb: impl Fn(Ball, Ball) -> Ball,
) -> Scalar {
    let exact_pair = |a1: &Rational, b1: &Rational, a2: &Rational, b2: &Rational, d: &BigInt| {
        let (a, b) = qq(a1, b1, a2, b2, &Rational::from_integer(d.clone()));
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic(Quadratic { a, b, radicand: d.clone() })
        }
    };
    let zero = Rational::zero();
    match (x, y) {
        (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rr(a, b)),
        (Scalar::Rational(r), Scalar::Quadratic(q)) => exact_pair(r, &zero, &q.a, &q.b, &q.radicand),
        (Scalar::Quadratic(q), Scalar::Rational(r)) => exact_pair(&q.a, &q.b, r, &zero, &q.radicand),
        (Scalar::Quadratic(p), Scalar::Quadratic(q)) if p.radicand == q.radicand => {
            exact_pair(&p.a, &p.b, &q.a, &q.b, &p.radicand)
        }
        _ => Scalar::Approx(bb(x.ball(), y.ball())),
    }
}

fn add_s(x: &Scalar, y: &Scalar) -> Scalar {
    binary(x, y, |a, b| a + b, |a1, b1, a2, b2, _| (a1 + a2, b1 + b2), Ball::add)
}

fn sub_s(x: &Scalar, y: &Scalar) -> Scalar {
    binary(x, y, |a, b| a - b, |a1, b1, a2, b2, _| (a1 - a2, b1 - b2), Ball::sub)
}

fn mul_s(x: &Scalar, y: &Scalar) -> Scalar {
    binary(
        x,
        y,
        |a, b| a * b,
        |a1, b1, a2, b2, d| (a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1),
        Ball::mul,
    )
}

fn div_s(x: &Scalar, y: &Scalar) -> Scalar {
    match y {
        Scalar::Approx(b) => Scalar::Approx(x.ball().div(*b)),
        _ => {
            let r = y.recip().expect("division by exact zero");
            mul_s(x, &r)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $f(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $f(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $f(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, add_s);
forward_binop!(Sub, sub, sub_s);
forward_binop!(Mul, mul, mul_s);
forward_binop!(Div, div, div_s);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic(q) => Scalar::Quadratic(Quadratic {
                a: -&q.a,
                b: -&q.b,
                radicand: q.radicand.clone(),
            }),
            Scalar::Approx(b) => Scalar::Approx(Ball::new(-b.mid, b.rad)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<u64> for Scalar {
    fn from(n: u64) -> Self {
        Scalar::Rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::Rational(Rational::from_integer(n))
    }
}

/// Equality under the tolerance policy; exact for exact kinds. Not transitive
/// once enclosures are involved.
impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.cmp_tol(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp_tol(other))
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => f.write_str(&fmt_rational(r)),
            Scalar::Quadratic(q) => {
                let surd = if q.b.is_one() {
                    format!("sqrt({})", q.radicand)
                } else if (-&q.b).is_one() {
                    format!("-sqrt({})", q.radicand)
                } else {
                    format!("{}*sqrt({})", fmt_rational(&q.b), q.radicand)
                };
                if q.a.is_zero() {
                    f.write_str(&surd)
                } else if surd.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&q.a), surd)
                } else {
                    write!(f, "{}+{}", fmt_rational(&q.a), surd)
                }
            }
            Scalar::Approx(b) => write!(f, "{}±{:e}", b.mid, b.rad),
        }
    }
}

/// Rationals become `"p/q"` strings; other kinds become objects carrying the
/// decimal value and its error bound.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) => s.serialize_str(&fmt_rational(r)),
            Scalar::Quadratic(_) => {
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("value", &self.to_f64())?;
                m.serialize_entry("error", &0.0)?;
                m.serialize_entry("surd", &self.to_string())?;
                m.end()
            }
            Scalar::Approx(b) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("value", &b.mid)?;
                m.serialize_entry("error", &b.rad)?;
                m.end()
            }
        }
    }
}

/// Sum of `terms`, starting from exact zero.
pub fn sum<'a>(terms: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    terms.into_iter().fold(Scalar::zero(), |acc, t| acc + t)
}

/// True if every scalar in `xs` is exact.
pub fn all_exact<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> bool {
    xs.into_iter().all(Scalar::is_exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt5() -> Scalar {
        Scalar::quadratic(int(0), int(1), &BigInt::from(5))
    }

    #[test]
    fn rationals_normalize() {
        let x = Scalar::ratio(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Scalar::parse("10/4").unwrap().to_string(), "5/2");
        assert_eq!(Scalar::parse(" -7 ").unwrap().to_string(), "-7");
    }

    #[test]
    fn decimals_parse_as_enclosures() {
        let x = Scalar::parse("0.5").unwrap();
        assert_eq!(x.kind(), Kind::Approx);
        assert_eq!(x, Scalar::ratio(1, 2));
    }

    #[test]
    fn quadratic_field_arithmetic_is_exact() {
        let r = sqrt5();
        assert_eq!((&r * &r).to_string(), "5");
        let golden = (Scalar::one() + &r) / Scalar::int(2);
        // φ² = φ + 1
        let lhs = golden.square();
        let rhs = &golden + Scalar::one();
        assert!(matches!(&lhs - &rhs, Scalar::Rational(z) if z.is_zero()));
        let inv = golden.recip().unwrap();
        assert_eq!((&golden - &inv).to_string(), "1");
    }

    #[test]
    fn square_parts_are_extracted() {
        let x = Scalar::quadratic(int(1), int(1), &BigInt::from(20));
        assert_eq!(x.to_string(), "1+2*sqrt(5)");
        let y = Scalar::quadratic(int(1), int(3), &BigInt::from(49));
        assert_eq!(y.to_string(), "22");
    }

    #[test]
    fn quadratic_sign() {
        let r = sqrt5();
        assert!((Scalar::int(3) - &r).is_positive());
        assert!((Scalar::int(2) - &r).is_negative());
        assert!((-&r + Scalar::ratio(9, 4)).is_positive());
    }

    #[test]
    fn mixed_fields_fall_back_to_enclosures() {
        let s2 = Scalar::quadratic(int(0), int(1), &BigInt::from(2));
        let x = &sqrt5() + &s2;
        assert_eq!(x.kind(), Kind::Approx);
        assert!((x.to_f64() - (5f64.sqrt() + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn tolerance_policy() {
        let a = Scalar::approx(1.0, 1e-12);
        assert_eq!(a, Scalar::approx(1.0 + 5e-10, 0.0));
        assert_ne!(a, Scalar::approx(1.0 + 5e-9, 0.0));
        let wide = Scalar::approx(0.0, 1e-3);
        assert!(wide.is_zero());
    }

    #[test]
    fn serialization() {
        let v = serde_json::to_value(Scalar::ratio(3, 2)).unwrap();
        assert_eq!(v, serde_json::json!("3/2"));
        let v = serde_json::to_value(sqrt5()).unwrap();
        assert_eq!(v["surd"], "sqrt(5)");
    }
}
