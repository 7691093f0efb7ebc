//! Short-Weierstrass elliptic curves over `Q` and `F_p`: group law,
//! divisors, functions, Riemann-Roch bases, multiplication pairings and the
//! classification of rank-2 leaf completions.

mod curve;
mod divisor;
mod function;
mod miller;
mod pairing;
mod riemann_roch;

pub use curve::{Curve, CurvePoint};
pub use divisor::{lin_equiv, random_effective, random_in_class, sigma, Divisor};
pub use function::FunctionFieldElement;
pub use miller::{miller_function, MillerFunction};
pub use pairing::{
    express_in_basis, is_surjective, leaf_classify, pairing_tensor, whensurj_predict, LeafClassification,
};
pub use riemann_roch::{canonical_representative, rr_basis, RRBasis};

use crate::exact::ExactError;
use crate::pencil::PencilError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EllipticError {
    #[error("curve is singular")]
    Singular,
    #[error("characteristic {0} is not supported")]
    BadCharacteristic(u64),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("divisor {0} is not principal")]
    NotPrincipal(String),
    #[error("degree {got} is below the required {need}")]
    DegreeTooSmall { need: i64, got: i64 },
    #[error("operation undefined for the zero function")]
    ZeroFunction,
    #[error("no rational points found by sampling")]
    NoPoints,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}
