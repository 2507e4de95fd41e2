//! The known tight graphs of diameter at least three, stored as their
//! expected spectral data, with a validator that recomputes everything from
//! the intersection array.

use num::BigInt;
use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::cosine_sequence;
use crate::graph::Family;
use crate::scalar::{rat, Rational, Scalar};
use crate::spectrum::spectrum;
use crate::tightness::{
    analyze_with, parametrize, rho_from_sigma, two_eigenvalue_parametrize, Classification,
};

/// `(ν, κ, λ, μ, r, s)` of the local graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalParams {
    pub nu: Scalar,
    pub kappa: Scalar,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub r: Scalar,
    pub s: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub array: IntersectionArray,
    pub expected_theta1: Scalar,
    pub expected_theta_d: Scalar,
    pub expected_sigma: Vec<Scalar>,
    pub expected_rho: Vec<Scalar>,
    pub expected_epsilon: Scalar,
    pub local_srg_expected: LocalParams,
    pub constructible: bool,
    /// Generator for the constructible entries.
    #[serde(skip)]
    pub family: Option<Family>,
    pub at4_expected: Option<[u64; 3]>,
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

fn seq(xs: &[(i64, i64)]) -> Vec<Scalar> {
    xs.iter().map(|&(p, d)| q(p, d)).collect()
}

fn local(nu: i64, kappa: i64, lambda: i64, mu: i64, r: i64, s: i64) -> LocalParams {
    let i = Scalar::int;
    LocalParams { nu: i(nu), kappa: i(kappa), lambda: i(lambda), mu: i(mu), r: i(r), s: i(s) }
}

fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
    IntersectionArray::new(b.to_vec(), c.to_vec()).expect("catalog arrays are valid")
}

fn johnson(d: u64) -> CatalogEntry {
    let di = d as i64;
    let b: Vec<u64> = (0..d).map(|i| (d - i) * (d - i)).collect();
    let c: Vec<u64> = (1..=d).map(|i| i * i).collect();
    let sigma = (0..=di).map(|i| q(di - 2 * i, di)).collect();
    // (−1)^i · i! / (d(d−1)⋯(d−i+1))
    let mut rho = vec![Scalar::one()];
    for i in 1..=di {
        let prev = rho.last().unwrap().clone();
        rho.push(prev * q(-i, di - i + 1));
    }
    CatalogEntry {
        name: format!("J({},{d})", 2 * d),
        array: arr(&b, &c),
        expected_theta1: Scalar::int(di * (di - 2)),
        expected_theta_d: Scalar::int(-di),
        expected_sigma: sigma,
        expected_rho: rho,
        expected_epsilon: q(di + 2, di),
        local_srg_expected: local(di * di, 2 * (di - 1), di - 2, 2, di - 2, -2),
        constructible: true,
        family: Some(Family::Johnson { n: 2 * d as usize, d: d as usize }),
        at4_expected: (d == 4).then_some([2, 2, 2]),
    }
}

fn halved_cube(d: u64) -> CatalogEntry {
    let di = d as i64;
    let b: Vec<u64> = (0..d).map(|i| (d - i) * (2 * d - 2 * i - 1)).collect();
    let c: Vec<u64> = (1..=d).map(|i| i * (2 * i - 1)).collect();
    let sigma = (0..=di).map(|i| q(di - 2 * i, di)).collect();
    // (−1)^i · 1·3⋯(2i−1) / ((2d−1)(2d−3)⋯(2d−2i+1))
    let mut rho = vec![Scalar::one()];
    for i in 1..=di {
        let prev = rho.last().unwrap().clone();
        rho.push(prev * q(-(2 * i - 1), 2 * di - 2 * i + 1));
    }
    CatalogEntry {
        name: format!("½H({},2)", 2 * d),
        array: arr(&b, &c),
        expected_theta1: Scalar::int((2 * di - 1) * (di - 2)),
        expected_theta_d: Scalar::int(-di),
        expected_sigma: sigma,
        expected_rho: rho,
        expected_epsilon: q(di + 1, di - 1),
        local_srg_expected: local(di * (2 * di - 1), 4 * (di - 1), 2 * (di - 1), 4, 2 * di - 4, -2),
        constructible: true,
        family: Some(Family::HalvedCube(2 * d as usize)),
        at4_expected: (d == 4).then_some([4, 2, 2]),
    }
}

/// Taylor graph `{k, c_2, 1; 1, c_2, k}` with `α, β` the roots of
/// `x² − (k − 2c_2 − 1)x − k`.
fn taylor(name: &str, k: i64, c2: i64, family: Option<Family>) -> CatalogEntry {
    let p = k - 2 * c2 - 1;
    let disc = BigInt::from(p * p + 4 * k);
    let half: Rational = rat(p, 2);
    let alpha = Scalar::quadratic(half.clone(), rat(1, 2), &disc);
    let beta = Scalar::quadratic(half, rat(-1, 2), &disc);
    let kk = Scalar::int(k);
    let cos = |t: &Scalar| vec![Scalar::one(), t / &kk, -(t / &kk), Scalar::int(-1)];
    let a1 = k - c2 - 1;
    let two = Scalar::int(2);
    CatalogEntry {
        name: name.to_string(),
        array: arr(&[k as u64, c2 as u64, 1], &[1, c2 as u64, k as u64]),
        expected_sigma: cos(&alpha),
        expected_rho: cos(&beta),
        expected_epsilon: Scalar::int(k + 1) / (&alpha - &beta),
        local_srg_expected: LocalParams {
            nu: kk.clone(),
            kappa: Scalar::int(a1),
            lambda: q(3 * a1 - k - 1, 2),
            mu: q(a1, 2),
            r: (&alpha - Scalar::one()) / &two,
            s: (&beta - Scalar::one()) / &two,
        },
        expected_theta1: alpha,
        expected_theta_d: beta,
        constructible: family.is_some(),
        family,
        at4_expected: None,
    }
}

#[allow(clippy::too_many_arguments)]
fn sporadic(
    name: &str,
    b: &[u64],
    c: &[u64],
    theta: (i64, i64),
    sigma: &[(i64, i64)],
    rho: &[(i64, i64)],
    eps: (i64, i64),
    lp: LocalParams,
    at4: Option<[u64; 3]>,
) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        array: arr(b, c),
        expected_theta1: Scalar::int(theta.0),
        expected_theta_d: Scalar::int(theta.1),
        expected_sigma: seq(sigma),
        expected_rho: seq(rho),
        expected_epsilon: q(eps.0, eps.1),
        local_srg_expected: lp,
        constructible: false,
        family: None,
        at4_expected: at4,
    }
}

/// All entries: the two infinite families at `d = 3, 4, 5`, the icosahedron
/// for the Taylor family, and the nine sporadic graphs.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (3..=5).map(johnson).collect();
    out.extend((3..=5).map(halved_cube));
    out.push(taylor("Icosahedron", 5, 2, Some(Family::Icosahedron)));
    out.push(sporadic(
        "3.Sym(7)",
        &[10, 6, 4, 1],
        &[1, 2, 6, 10],
        (5, -4),
        &[(1, 1), (1, 2), (0, 1), (-1, 4), (-1, 2)],
        &[(1, 1), (-2, 5), (3, 10), (-2, 5), (1, 1)],
        (4, 3),
        local(10, 3, 0, 1, 1, -2),
        Some([1, 2, 3]),
    ));
    out.push(sporadic(
        "3.O6-(3)",
        &[45, 32, 12, 1],
        &[1, 6, 32, 45],
        (15, -9),
        &[(1, 1), (1, 3), (0, 1), (-1, 6), (-1, 2)],
        &[(1, 1), (-1, 5), (1, 10), (-1, 5), (1, 1)],
        (2, 1),
        local(45, 12, 3, 3, 3, -3),
        Some([3, 3, 3]),
    ));
    out.push(sporadic(
        "3.O7(3)",
        &[117, 80, 24, 1],
        &[1, 12, 80, 117],
        (39, -9),
        &[(1, 1), (1, 3), (0, 1), (-1, 6), (-1, 2)],
        &[(1, 1), (-1, 13), (2, 65), (-1, 13), (1, 1)],
        (5, 2),
        local(117, 36, 15, 9, 9, -3),
        Some([9, 3, 3]),
    ));
    out.push(sporadic(
        "3.Fi24",
        &[31671, 28160, 2160, 1],
        &[1, 1080, 28160, 31671],
        (3519, -81),
        &[(1, 1), (1, 9), (0, 1), (-1, 18), (-1, 2)],
        &[(1, 1), (-1, 391), (5, 17204), (-1, 391), (1, 1)],
        (44, 5),
        local(31671, 3510, 693, 351, 351, -9),
        Some([351, 9, 3]),
    ));
    out.push(sporadic(
        "Soicher1",
        &[56, 45, 16, 1],
        &[1, 8, 45, 56],
        (14, -16),
        &[(1, 1), (1, 4), (0, 1), (-1, 8), (-1, 2)],
        &[(1, 1), (-2, 7), (1, 7), (-2, 7), (1, 1)],
        (2, 1),
        local(56, 10, 0, 2, 2, -4),
        Some([2, 4, 3]),
    ));
    out.push(sporadic(
        "Soicher2",
        &[416, 315, 64, 1],
        &[1, 32, 315, 416],
        (104, -16),
        &[(1, 1), (1, 4), (0, 1), (-1, 8), (-1, 2)],
        &[(1, 1), (-1, 26), (1, 91), (-1, 26), (1, 1)],
        (7, 2),
        local(416, 100, 36, 20, 20, -4),
        Some([20, 4, 3]),
    ));
    out.push(sporadic(
        "Meixner1",
        &[176, 135, 24, 1],
        &[1, 24, 135, 176],
        (44, -16),
        &[(1, 1), (1, 4), (0, 1), (-1, 4), (-1, 1)],
        &[(1, 1), (-1, 11), (1, 33), (-1, 11), (1, 1)],
        (3, 1),
        local(176, 40, 12, 8, 8, -4),
        Some([8, 4, 2]),
    ));
    out.push(sporadic(
        "Meixner2",
        &[176, 135, 36, 1],
        &[1, 12, 135, 176],
        (44, -16),
        &[(1, 1), (1, 4), (0, 1), (-1, 12), (-1, 3)],
        &[(1, 1), (-1, 11), (1, 33), (-1, 11), (1, 1)],
        (3, 1),
        local(176, 40, 12, 8, 8, -4),
        Some([8, 4, 4]),
    ));
    out.push(sporadic(
        "Patterson",
        &[280, 243, 144, 10],
        &[1, 8, 90, 280],
        (80, -28),
        &[(1, 1), (2, 7), (1, 21), (-2, 63), (-1, 9)],
        &[(1, 1), (-1, 10), (1, 45), (-1, 54), (5, 27)],
        (8, 3),
        local(280, 36, 8, 4, 8, -4),
        None,
    ));
    out
}

pub fn list(constructible_only: bool) -> Vec<CatalogEntry> {
    entries().into_iter().filter(|e| !constructible_only || e.constructible).collect()
}

/// Case-insensitive lookup by name.
pub fn find(name: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldCheck {
    pub field: &'static str,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub name: String,
    pub array: String,
    pub exact: bool,
    pub fields: Vec<FieldCheck>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.fields.iter().all(|f| f.pass)
    }

    pub fn field(&self, name: &str) -> Option<&FieldCheck> {
        self.fields.iter().find(|f| f.field == name)
    }
}

fn list_str(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

fn same(a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

struct Fields(Vec<FieldCheck>);

impl Fields {
    fn push(&mut self, field: &'static str, pass: bool, expected: impl ToString, actual: impl ToString) {
        self.0.push(FieldCheck { field, pass, expected: expected.to_string(), actual: actual.to_string() });
    }

    fn fail(&mut self, field: &'static str, expected: impl ToString, err: impl ToString) {
        self.push(field, false, expected, format!("error: {}", err.to_string()));
    }
}

/// Recomputes every stored column from the array alone. Failures are
/// recorded per field rather than raised.
pub fn validate(entry: &CatalogEntry) -> Validation {
    let mut f = Fields(Vec::new());
    let a = &entry.array;
    let exp_local = &entry.local_srg_expected;
    let sp = match spectrum(a) {
        Ok(sp) => sp,
        Err(e) => {
            f.fail("spectrum", "ok", e);
            return Validation { name: entry.name.clone(), array: a.to_string(), exact: false, fields: f.0 };
        }
    };
    let exact = sp.is_exact();
    f.push("theta1", *sp.theta1() == entry.expected_theta1, &entry.expected_theta1, sp.theta1());
    f.push("theta_d", *sp.theta_d() == entry.expected_theta_d, &entry.expected_theta_d, sp.theta_d());
    let sigma = cosine_sequence(a, sp.theta1());
    let rho = cosine_sequence(a, sp.theta_d());
    f.push(
        "sigma",
        same(&sigma.sigma, &entry.expected_sigma),
        list_str(&entry.expected_sigma),
        list_str(&sigma.sigma),
    );
    f.push("rho", same(&rho.sigma, &entry.expected_rho), list_str(&entry.expected_rho), list_str(&rho.sigma));

    let shape = (1..a.d()).all(|i| a.a(i) != 0) && a.a(a.d()) == 0;
    f.push("a_i pattern", shape, "a_d = 0, a_i ≠ 0 for 0 < i < d", a.a_list().iter().map(u64::to_string).collect::<Vec<_>>().join(","));

    match analyze_with(a, sp.clone()) {
        Ok(rep) => {
            let tight = rep.classification == Classification::Tight && rep.fb.slack.is_zero();
            f.push("classification", tight, "Tight, slack 0", format!("{:?}, slack {}", rep.classification, rep.fb.slack));
            match &rep.epsilon {
                Some(e) => f.push("epsilon", *e == entry.expected_epsilon, &entry.expected_epsilon, e),
                None => f.push("epsilon", false, &entry.expected_epsilon, "none"),
            }
            match &rep.local_srg {
                Some(l) => {
                    let got = LocalParams {
                        nu: l.nu.clone(),
                        kappa: l.kappa.clone(),
                        lambda: l.lambda.clone(),
                        mu: l.mu.clone(),
                        r: l.r.clone(),
                        s: l.s.clone(),
                    };
                    let shown = |p: &LocalParams| list_str(&[p.nu.clone(), p.kappa.clone(), p.lambda.clone(), p.mu.clone(), p.r.clone(), p.s.clone()]);
                    f.push("local_srg", got == *exp_local, shown(exp_local), shown(&got));
                }
                None => f.push("local_srg", false, "parameters", "none"),
            }
            let show = |x: &Option<[u64; 3]>| x.map_or("none".to_string(), |[r, s, t]| format!("AT4({r},{s},{t})"));
            f.push("at4", rep.at4 == entry.at4_expected, show(&entry.at4_expected), show(&rep.at4));
        }
        Err(e) => f.fail("classification", "Tight", e),
    }

    match rho_from_sigma(&sigma, &entry.expected_epsilon) {
        Ok(r) => f.push("rho_from_sigma", same(&r.sigma, &entry.expected_rho), list_str(&entry.expected_rho), list_str(&r.sigma)),
        Err(e) => f.fail("rho_from_sigma", list_str(&entry.expected_rho), e),
    }
    match parametrize(&sigma.sigma, &entry.expected_epsilon) {
        Ok(p) => {
            let back = p.array.as_ref().map_or("non-integral".to_string(), IntersectionArray::to_string);
            f.push("parametrize", p.array.as_ref() == Some(a), a, back);
        }
        Err(e) => f.fail("parametrize", a, e),
    }
    match two_eigenvalue_parametrize(&sigma.sigma, &rho.sigma) {
        Ok(v) => {
            let back = v.to_array().map_or("non-integral".to_string(), |x| x.to_string());
            f.push("two_eigenvalue", v.to_array().as_ref() == Some(a), a, back);
        }
        Err(e) => f.fail("two_eigenvalue", a, e),
    }
    Validation { name: entry.name.clone(), array: a.to_string(), exact, fields: f.0 }
}

pub fn validate_all() -> Vec<Validation> {
    entries().iter().map(validate).collect()
}

/// `catalog.json`: every entry with rationals written as `p/q`.
pub fn to_json() -> String {
    serde_json::to_string_pretty(&entries()).expect("catalog serializes")
}
