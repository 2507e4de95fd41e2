use serde::Serialize;

use crate::array::IntersectionArray;
use crate::cosine::cosine_sequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

use super::aux::auxiliary_parameter;
use super::bound::{b_plus_minus, classify, Classification};

/// Parameters `(ν, κ, λ, μ)`, nontrivial eigenvalues and their
/// multiplicities of the local graph of a tight graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalSrg {
    pub nu: Scalar,
    pub kappa: Scalar,
    pub lambda: Scalar,
    pub mu: Scalar,
    pub r: Scalar,
    pub s: Scalar,
    pub mult_r: Scalar,
    pub mult_s: Scalar,
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistent(what()))
    }
}

pub fn local_srg(array: &IntersectionArray, spectrum: &Spectrum) -> Result<LocalSrg> {
    if classify(array, spectrum)?.classification != Classification::Tight {
        return Err(Error::NotTight);
    }
    let k = array.k();
    let cs = cosine_sequence(array, spectrum.theta1());
    let eps = auxiliary_parameter(k, spectrum.theta1(), spectrum.theta_d())?.epsilon;
    let one = Scalar::one();
    let (s, s2) = (cs.at(1), cs.at(2));
    let a1 = Scalar::from(array.a(1));

    let formula_a1 = -((&one - s2) * (&one + s) * (&one - &eps)) / ((s - s2) * (&one - &eps * s));
    check(formula_a1 == a1, || format!("a_1 formula gives {formula_a1}"))?;

    let lambda = &a1 * Scalar::int(2) * s / (&one + s)
        - &a1 * (&one - s) / (&one + s) * s2 / (s - s2)
        - (&one - s2) / (s - s2);
    let mu = &a1 / (&one + s) * (s.square() - s2) / (s - s2);
    let r = &a1 * s / (&one + s);
    let sv = -((&one - s2) / (s - s2));
    let sq_gap = s2 - s.square();
    let mult_r = (&one + s) * (s - &eps) / &sq_gap;
    let mult_s = -((&one - &eps) * (&one + s) * (s2 - &eps * s)) / (&sq_gap * (&one - &eps * s));
    let nu = Scalar::from(k);

    let (bp, bm) = b_plus_minus(array, spectrum);
    check(r == bp, || format!("r = {r} but b⁺ = {bp}"))?;
    check(sv == bm, || format!("s = {sv} but b⁻ = {bm}"))?;
    check(lambda == &a1 + &r + &sv + &r * &sv, || "λ ≠ κ + r + s + rs".into())?;
    check(mu == &a1 + &r * &sv, || "μ ≠ κ + rs".into())?;
    check(!mu.is_zero(), || "μ = 0".into())?;
    check(&mult_r + &mult_s + &one == nu, || "mult_r + mult_s + 1 ≠ ν".into())?;
    check((&mult_r * &r + &mult_s * &sv + &a1).is_zero(), || "trace of local graph ≠ 0".into())?;
    check(
        nu == (&a1 - &r) * (&a1 - &sv) / (&a1 + &r * &sv),
        || "ν ≠ (κ−r)(κ−s)/(κ+rs)".into(),
    )?;
    Ok(LocalSrg { nu, kappa: a1, lambda, mu, r, s: sv, mult_r, mult_s })
}

/// `(r, s, t)` for a tight antipodal graph of diameter four: local eigenvalues
/// `r` and `−s`, antipodal class size `t = k_4 + 1`.
pub fn at4_label(array: &IntersectionArray, spectrum: &Spectrum, local: &LocalSrg) -> Option<(u64, u64, u64)> {
    if array.d() != 4 || !array.is_antipodal() {
        return None;
    }
    if !matches!(classify(array, spectrum), Ok(v) if v.classification == Classification::Tight) {
        return None;
    }
    let t = array.k_i(4) + 1;
    if array.n() % t != 0 {
        return None;
    }
    let r = u64::try_from(local.r.to_integer()?).ok()?;
    let s = u64::try_from((-&local.s).to_integer()?).ok()?;
    Some((r, s, t))
}
