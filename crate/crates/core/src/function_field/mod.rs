//! The rational function field `k = F_q(t)`: places, completions, adeles, the residue
//! character `ψ`, Riemann–Roch spaces and weak approximation.

mod approx;
mod ground;
mod local;
mod place;
mod poly;
mod psi;
mod rational;
mod record;
mod rr;

use thiserror::Error;

use crate::padic::PadicError;

pub use approx::{weak_approx, ApproxConstraint};
pub use ground::{GroundField, MAX_FIELD_SIZE};
pub use local::{expand_at, expand_to_abs, Adele, LocalElement, DEFAULT_LOCAL_PRECISION};
pub use place::{finite_places_up_to, Divisor, Place};
pub use poly::{factor, gcd, is_irreducible, monic_irreducibles, monic_polys, Poly};
pub use psi::{psi_exponent_global, psi_exponent_local, AdditiveCharacter};
pub use rational::RationalFunction;
pub use record::{
    AdeleRecord, DivisorRecord, GroundFieldRecord, LocalElementRecord, PlaceRecord, RationalFunctionRecord,
};
pub use rr::{
    coset_reps, in_rr_space, psi_kernel_divisor, psi_kernel_set, quotient_index, rr_dimension, rr_elements,
    rr_space, DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionFieldError {
    #[error("invalid ground field: {0}")]
    InvalidField(String),
    #[error("{0} is not a monic irreducible polynomial")]
    NotIrreducible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("insufficient precision at {place}: need digits below {needed}, have {available}")]
    InsufficientPrecision { place: String, needed: i64, available: i64 },
    #[error("local elements live at different places")]
    PlaceMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
