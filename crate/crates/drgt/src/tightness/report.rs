use serde::Serialize;

use crate::array::IntersectionArray;
use crate::error::Result;
use crate::scalar::{all_exact, Scalar};
use crate::spectrum::{spectrum, Spectrum};

use super::aux::auxiliary_parameter;
use super::bound::{b_plus_minus, classify, f_bounds, Classification, FundamentalBound};
use super::local::{at4_label, local_srg, LocalSrg};
use super::require_diameter;

/// Exactness of each group of reported values.
#[derive(Clone, Debug, Serialize)]
pub struct Exactness {
    pub spectrum: bool,
    pub fb: bool,
    pub epsilon: bool,
    pub f_bounds: bool,
    pub local_srg: bool,
    pub b_pm: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport {
    pub array: IntersectionArray,
    pub spectrum: Spectrum,
    pub fb: FundamentalBound,
    pub classification: Classification,
    pub numerically_tight: bool,
    /// `ε` attached to `θ_1`, reported for tight arrays.
    pub epsilon: Option<Scalar>,
    pub f_bounds: Option<[Scalar; 2]>,
    pub local_srg: Option<LocalSrg>,
    pub b_plus: Scalar,
    pub b_minus: Scalar,
    pub at4: Option<[u64; 3]>,
    pub exact: Exactness,
}

impl TightnessReport {
    pub fn is_tight(&self) -> bool {
        self.classification == Classification::Tight
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Full report for one array. Non-tight arrays get every quantity that is
/// defined for them.
pub fn analyze(array: &IntersectionArray) -> Result<TightnessReport> {
    require_diameter(array)?;
    let sp = spectrum(array)?;
    analyze_with(array, sp)
}

pub fn analyze_with(array: &IntersectionArray, sp: Spectrum) -> Result<TightnessReport> {
    let verdict = classify(array, &sp)?;
    let tight = verdict.classification == Classification::Tight;
    let epsilon = if tight {
        Some(auxiliary_parameter(array.k(), sp.theta1(), sp.theta_d())?.epsilon)
    } else {
        None
    };
    let f_bounds = f_bounds(array, &sp).ok().map(|(l, u)| [l, u]);
    let local = if tight { Some(local_srg(array, &sp)?) } else { None };
    let at4 = local.as_ref().and_then(|l| at4_label(array, &sp, l)).map(|(r, s, t)| [r, s, t]);
    let (b_plus, b_minus) = b_plus_minus(array, &sp);
    let exact = Exactness {
        spectrum: sp.is_exact(),
        fb: verdict.bound.exact,
        epsilon: epsilon.as_ref().is_none_or(Scalar::is_exact),
        f_bounds: f_bounds.as_ref().is_none_or(|f| all_exact(f.iter())),
        local_srg: local.as_ref().is_none_or(|l| {
            all_exact([&l.nu, &l.kappa, &l.lambda, &l.mu, &l.r, &l.s, &l.mult_r, &l.mult_s])
        }),
        b_pm: b_plus.is_exact() && b_minus.is_exact(),
    };
    Ok(TightnessReport {
        array: array.clone(),
        spectrum: sp,
        fb: verdict.bound,
        classification: verdict.classification,
        numerically_tight: verdict.numerically_tight,
        epsilon,
        f_bounds,
        local_srg: local,
        b_plus,
        b_minus,
        at4,
        exact,
    })
}
