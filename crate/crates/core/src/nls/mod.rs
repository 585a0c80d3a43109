//! Split-step spectral integration of the envelope equation
//!
//! ```text
//! i ∂_t B₁ + (v_g′/2) ∂_ζ² B₁ + Q (|B₁|²/B₀²) B₁ = 0
//! ```
//!
//! on a periodic grid in the comoving coordinate ζ = z − v_g t.

mod diagnostics;
mod envelope;
mod instability;
mod soliton;

pub use diagnostics::ConservedDiagnostics;
pub use envelope::{Envelope, Grid, Residual, SolverOptions, MAX_NONLINEAR_PHASE};
pub use instability::modulational_instability_rate;
pub use soliton::{initialize_soliton, uniform_background, SolitonSpec};
