//! Exact computations around 1-generic pairings and the projective bundles
//! they define.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`]: rationals and prime fields, polynomials, binary forms,
//!   matrices and truncated power series.
//! * [`chow`]: Chow rings of projective bundles over projective spaces,
//!   Chern data of quotient bundles, multiplicative sequences and the
//!   intersection lattice of Hirzebruch surfaces.
//! * [`pencil`]: pairings as tensors, exact 1-genericity of pencils and
//!   splitting types over the projective line.
//! * [`elliptic`]: short-Weierstrass curves, divisors, Miller functions,
//!   Riemann-Roch bases, multiplication pairings and the classification of
//!   rank-2 leaf completions.
//! * [`secant`]: the determinantal description of secant slices and the
//!   Jacobian smoothness probe.
//! * [`verify`]: self-checking suites used by the command-line front end.

pub mod chow;
pub mod elliptic;
pub mod exact;
pub mod pencil;
pub mod secant;
pub mod verify;

pub use exact::{ExactMatrix, Field, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/exact.md")]
    pub struct Exact;
    #[doc = include_str!("../../../book/src/chow.md")]
    pub struct Chow;
    #[doc = include_str!("../../../book/src/pencils.md")]
    pub struct Pencils;
    #[doc = include_str!("../../../book/src/elliptic.md")]
    pub struct Elliptic;
    #[doc = include_str!("../../../book/src/secant.md")]
    pub struct Secant;
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
