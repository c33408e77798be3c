//! Exact `ℓ`-adic tools for congruences of unramified Whittaker functions.
//!
//! * [`padic`]: capped-precision arithmetic in `Q_{ℓ^d}` and its residue field.
//! * [`satake`]: Satake parameters, characteristic polynomials, integrality and reduction.
//! * [`whittaker`]: the Shintani–Casselman–Shalika evaluator and its congruence checker.
//! * [`function_field`]: places, adeles, the residue character and Riemann–Roch on `F_q(t)`.
//! * [`global`]: pure-tensor Whittaker functions for `GL_2` over `F_q(t)` and the
//!   end-to-end congruence pipeline.

pub mod padic;
pub mod satake;
pub mod whittaker;
pub mod function_field;
pub mod global;
