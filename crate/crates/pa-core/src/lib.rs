//! Exact computations in partition algebras.
//!
//! `pa-core` implements the partition algebras P_k(ξ) and P_{k+1/2}(ξ) over
//! exact rational arithmetic:
//!
//! * canonical set partitions of `[1, 2k]` with the refinement lattice,
//!   Möbius function, and enumeration ([`setpart`]);
//! * algebra elements in the diagram and orbit bases, multiplication in both
//!   bases (numeric or polynomial in ξ), basis conversion, generators, and a
//!   presentation checker ([`algebra`]);
//! * the representation Φ_{k,n} on the k-fold tensor power of the
//!   n-dimensional permutation module of the symmetric group, its
//!   half-integer analogue, kernels, and commutant checks ([`schurweyl`]);
//! * the essential idempotents e_{k,n} generating ker Φ_{k,n}, and the
//!   central idempotents Ξ_{k,n} and Ξ_{k+1/2,n} attached to two-row
//!   partitions, with verification routines for their defining identities
//!   ([`idempotent`]);
//! * two-sided ideal closures by exact linear algebra, used to verify the
//!   principal-generation theorems ([`ideal`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals or
//! polynomials in ξ over them ([`scalar`]). There is no floating point.

pub mod algebra;
pub mod ideal;
pub mod idempotent;
pub mod report;
pub mod scalar;
pub mod schurweyl;
pub mod setpart;

use thiserror::Error;

/// Errors produced by `pa-core` operations.
#[derive(Debug, Error)]
pub enum PaError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("cannot parse level `{0}` (expected e.g. \"3\" or \"5/2\")")]
    BadLevel(String),
    #[error("malformed partition `{input}`: {reason}")]
    BadPartition { input: String, reason: String },
    #[error("mismatched levels: {0} vs {1}")]
    LevelMismatch(String, String),
    #[error("operands are in different bases")]
    BasisMismatch,
    #[error("operands carry different parameter values: {0} vs {1}")]
    XiMismatch(String, String),
    #[error("{0}")]
    Domain(String),
    #[error(
        "coefficient pole: falling factorial (n)_{{2k-t}} vanishes at t={pn}, k={k}, n={n}"
    )]
    CoefficientPole { pn: usize, k: usize, n: i64 },
    #[error(
        "problem size {actual} exceeds the guard limit {limit}; pass the size-guard override to proceed"
    )]
    SizeGuard { actual: u128, limit: u128 },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl PaError {
    /// Convenience constructor for domain errors.
    pub fn domain(msg: impl Into<String>) -> Self {
        PaError::Domain(msg.into())
    }
}
