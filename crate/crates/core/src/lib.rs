//! Colorings of integer intervals and their monochromatic configurations:
//! Schur triples, product triples, sum-product configurations
//! `a_1 + ... + a_n = x_1 * ... * x_m` and the double Schur product
//! `X ∪ Y ∪ XY`.
//!
//! The crate enumerates and verifies configurations, computes small Ramsey
//! numbers, runs the constructive extraction of sum-product configurations,
//! builds avoiding colorings, searches for extremal colorings, exports CNF,
//! and handles tower-sized bounds symbolically.

pub mod configurations;
pub mod error;
pub mod extraction;
pub mod lower_bounds;
pub mod model;
pub mod ramsey;
pub mod search;
pub mod tower;

pub use error::{Error, FailureStage, Result};
pub use model::{
    Certificate, CertificateBody, Color, Coloring, Format, Interval, PredicateId, PredicateTag,
    Witness,
};
