//! Array-level tightness: the Fundamental Bound, the auxiliary parameter,
//! both parametrizations of tight arrays, edge bounds on `f`, and the local
//! strongly-regular graph.

mod aux;
mod bound;
mod local;
mod param;
mod report;

pub use aux::{
    auxiliary_parameter, epsilon_formula, epsilon_identity_residuals, feasibility, rho_from_sigma,
    AuxiliaryParameter, Extremal,
};
pub use bound::{
    b_plus_minus, classify, f_bounds, fb_equality_pairs, fundamental_bound, ratio_sequence,
    two_cosine_residual, Classification, FundamentalBound, Verdict,
};
pub use local::{at4_label, local_srg, LocalSrg};
pub use param::{parametrize, two_eigenvalue_parametrize, ArrayValues, Parametrization};
pub use report::{analyze, analyze_with, Exactness, TightnessReport};

use crate::array::IntersectionArray;
use crate::error::{Error, Result};

fn require_diameter(array: &IntersectionArray) -> Result<()> {
    if array.d() < 3 {
        Err(Error::DiameterTooSmall(array.d()))
    } else {
        Ok(())
    }
}
