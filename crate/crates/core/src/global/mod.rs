//! Pure-tensor Whittaker functions for `GL_2` over `F_q(t)` and their mirabolic expansion.
//!
//! A [`GlobalWhittakerSpec`] assigns to each place either spherical data (evaluated by the
//! Shintani–Casselman–Shalika formula) or a Kirillov table on the mirabolic subgroup. The
//! synthetic form `φ(g) = Σ_{γ ∈ k^×} W(diag(γ, 1) g)` is evaluated on points of
//! `Z(𝔸)P(𝔸)` by enumerating a Riemann–Roch space that contains every contributing `γ`.
//! Values are accumulated exactly in [`CycloValue`] and collapsed with a chosen `√q`.
//!
//! At infinity the character `ψ_∞` has conductor `𝔭_∞²`, so no vector is fixed by
//! `GL_2(O_∞)` with `W(1) = 1`. The spherical datum at infinity is the torus translate whose
//! values on `diag(y, 1)` are the spherical values at `ord y`.

mod central;
mod cyclo;
mod datum;
mod expand;
mod pipeline;
mod point;
mod record;

use thiserror::Error;

use crate::function_field::FunctionFieldError;
use crate::padic::PadicError;
use crate::satake::SatakeError;
use crate::whittaker::WhittakerError;

pub use central::{central_char_propagate, CentralCharacter, CentralReport, CharacterData, ProductCheck, RatioCheck};
pub use cyclo::CycloValue;
pub use datum::{GlobalWhittakerSpec, KirillovEntry, KirillovTable, LocalWhittakerDatum};
pub use expand::{
    fourier_coefficient, fourier_coefficient_exact, gamma_support, invariance_divisor, local_value, local_value_at,
    mirabolic_expand, mirabolic_expand_exact, support_divisor, whittaker_term, GlobalContext, LocalTerm, PointFunction,
};
pub use pipeline::{check_pipeline_preconditions, congruence_pipeline, DifferenceValuation, PipelineReport, PointReport, ValueSummary};
pub use point::{default_samples, LocalPoint, MirabolicPoint};
pub use record::{
    CharacterRecord, DatumRecord, DegreeRuleRecord, GlobalSpecRecord, KirillovEntryRecord, LocalPointRecord, LocalValueRecord,
    MirabolicPointRecord, PlaceDatumRecord, PlaceValueRecord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlobalError {
    #[error("specs are not comparable: {0}")]
    SpecMismatch(String),
    #[error("unsupported point: {0}")]
    UnsupportedPoint(String),
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("not integral at {0}")]
    NotIntegral(String),
    #[error("sqrt_q does not square to q")]
    BadSquareRoot,
    #[error(transparent)]
    FunctionField(#[from] FunctionFieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
}
