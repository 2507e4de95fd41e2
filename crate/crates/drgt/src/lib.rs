pub mod array;
pub mod catalog;
pub mod cosine;
pub mod error;
pub mod graph;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod spectrum;
pub mod tightness;

pub use array::IntersectionArray;
pub use cosine::{bipartite_test, cosine_sequence, CosineSequence};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use spectrum::{spectrum, Spectrum};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/arrays.md")]
    pub struct Arrays;
    #[doc = include_str!("../../../book/src/spectra.md")]
    pub struct Spectra;
    #[doc = include_str!("../../../book/src/tightness.md")]
    pub struct Tightness;
    #[doc = include_str!("../../../book/src/parametrization.md")]
    pub struct Parametrization;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/catalog.md")]
    pub struct Catalog;
    #[doc = include_str!("../../../book/src/search.md")]
    pub struct Search;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
