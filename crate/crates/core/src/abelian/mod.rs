//! Finitely generated abelian groups presented by integer matrices.
//!
//! Arithmetic is checked `i64`: any overflow becomes [`AbelianError::Overflow`].

mod group;
mod hnf;
mod hom;
mod matrix;
mod snf;

pub use group::{canonical_group, halve_group, FGAbelianGroup, PresentedAbelianGroup};
pub use hnf::{column_basis, hnf, in_column_span, integer_kernel, solve_in_column_span, Hnf};
pub use hom::{homology_at, is_exact, ExactnessReport, Homomorphism};
pub use matrix::IntMatrix;
pub use snf::{snf, Snf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid invariant factors: {0}")]
    InvalidTorsion(String),
    #[error("homomorphism not well defined: {0}")]
    NotWellDefined(String),
    #[error("composite of consecutive maps is nonzero")]
    NotAComplex,
    #[error("group is not of the form H + H: {0}")]
    NotHalvable(String),
    #[error("{0}")]
    Parse(String),
}
