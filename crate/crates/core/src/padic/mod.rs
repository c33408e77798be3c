//! Capped-precision arithmetic in unramified extensions `Q_{ℓ^d}` and their residue fields.

mod config;
pub(crate) mod fp_poly;
mod hensel;
pub(crate) mod intpoly;
mod number;
mod record;

use thiserror::Error;

pub use config::{canonical_compare, FieldConfig, Residue, DEFAULT_PRECISION};
pub use hensel::{hensel_root, poly_eval, pth_roots_of_unity, sqrt_of_integer};
pub use number::{compare_by_residue, LocalNumber, Valuation, ValuationBound};
pub use record::{FieldRecord, LocalNumberRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("cancellation destroyed all known digits (value is 0 mod ell^{at_least})")]
    PrecisionLoss { at_least: i64 },
    #[error("value is not integral")]
    NotIntegral,
    #[error("no simple residue root to lift")]
    NoSimpleRoot,
    #[error("{p} does not divide {ell}^{d} - 1 (or p is not an admissible prime)")]
    UnsupportedDegree { p: u64, ell: u64, d: usize },
    #[error("values belong to different field configurations")]
    ConfigMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
