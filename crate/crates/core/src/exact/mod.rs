//! Exact arithmetic substrate: scalars, polynomials, binary forms, dense
//! matrices and truncated power series.

mod binary_form;
mod matrix;
mod poly;
mod scalar;
mod series;

pub use binary_form::BinaryForm;
pub use matrix::ExactMatrix;
pub use poly::Poly;
pub use scalar::{Field, Scalar, DEFAULT_PRIME, MAX_PRIME};
pub use series::{SeriesCoeff, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("modulus {0} is not a prime in (3, 2^32)")]
    BadModulus(u64),
    #[error("{0}")]
    Parse(String),
    #[error("{0} has no image in {1}")]
    NotRepresentable(String, Field),
    #[error("gcd of two zero forms is undefined")]
    ZeroGcd,
    #[error("series {0} needs constant term {1}")]
    ConstantTerm(&'static str, i64),
}
