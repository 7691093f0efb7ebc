//! Chow rings of projective bundles over `P^(d-1)`, Chern data of the
//! quotient bundle, multiplicative sequences and Hirzebruch surfaces.

mod hirz;
mod multseq;
mod ring;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

pub use hirz::{hirz_adjunction_genus, hirz_canonical, hirz_intersect, HirzClass};
pub use multseq::{mult_seq_apply, mult_seq_from_char_series, MPoly, MultSeq};
pub use ring::{intersection_number, ChowClass};

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("invalid bundle shape: {0}")]
    InvalidShape(String),
    #[error("power s = {s} out of range 0..{d}")]
    PowerOutOfRange { s: usize, d: usize },
    #[error("canonical class formula needs r = d, got r = {r}, d = {d}")]
    NotCritical { r: usize, d: usize },
    #[error("Hirzebruch classes with different invariants e = {0} and e = {1}")]
    MismatchedSurface(u32, u32),
    #[error("odd intersection value {0} in adjunction formula")]
    OddPairing(i64),
    #[error(transparent)]
    Series(#[from] ExactError),
}

/// Dimensions `d = dim V`, `dprime = dim V'`, `k = dim W` of a 1-generic
/// pairing; the quotient bundle has rank `r = dprime - k` over `P^(d-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleShape {
    pub d: usize,
    pub k: usize,
    pub dprime: usize,
}

impl BundleShape {
    pub fn new(d: usize, k: usize, dprime: usize) -> Result<BundleShape, ChowError> {
        if d < 2 {
            return Err(ChowError::InvalidShape(format!("d = {d} must be at least 2")));
        }
        if k < 1 {
            return Err(ChowError::InvalidShape("k must be at least 1".into()));
        }
        if dprime + 1 < d + k {
            return Err(ChowError::InvalidShape(format!(
                "dprime = {dprime} below d + k - 1 = {}",
                d + k - 1
            )));
        }
        Ok(BundleShape { d, k, dprime })
    }

    /// The shape with `r = d`, where the total space has the dimension of
    /// `V + V'` minus one.
    pub fn critical(d: usize, k: usize) -> Result<BundleShape, ChowError> {
        BundleShape::new(d, k, d + k)
    }

    pub fn r(&self) -> usize {
        self.dprime - self.k
    }
}

/// `gamma_i = binom(k+i-1, i)` for `i = 1..d-1`: the Chern classes of the
/// quotient bundle in units of `h^i`.
pub fn total_chern_quotient(shape: &BundleShape) -> Vec<i64> {
    let k = shape.k as i64;
    (1..shape.d as i64).map(|i| binomial(k + i - 1, i)).collect()
}

/// Chern integers of the dual bundle: `gamma_i -> (-1)^i gamma_i`.
pub fn dual_chern(gamma: &[i64]) -> Vec<i64> {
    gamma
        .iter()
        .enumerate()
        .map(|(i, g)| if i % 2 == 0 { -g } else { *g })
        .collect()
}

/// `(-d, -dprime)`, the coefficients of `zeta` and `h` in the canonical
/// class. Only defined for `r = d`.
pub fn canonical_class(shape: &BundleShape) -> Result<(i64, i64), ChowError> {
    if shape.r() != shape.d {
        return Err(ChowError::NotCritical { r: shape.r(), d: shape.d });
    }
    Ok((-(shape.d as i64), -(shape.dprime as i64)))
}

/// The anticanonical class `Y = d zeta + dprime h` together with the
/// ring computation of `Y zeta^(d-2) h^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticanonicalCheck {
    pub zeta: i64,
    pub h: i64,
    pub check_value: i64,
    pub holds: bool,
}

pub fn anticanonical_y(shape: &BundleShape) -> Result<AnticanonicalCheck, ChowError> {
    let (a, b) = canonical_class(shape)?;
    let (zeta, h) = (-a, -b);
    let ring = ChowClass::ring_of(shape, &total_chern_quotient(shape));
    let d = shape.d;
    let check_value = ring
        .divisor(zeta, h)
        .mul(&ring.monomial(d - 1, d - 2))
        .degree();
    Ok(AnticanonicalCheck {
        zeta,
        h,
        check_value,
        holds: check_value == zeta,
    })
}
