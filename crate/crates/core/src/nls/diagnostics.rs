use serde::Serialize;

use super::envelope::Envelope;

/// The three invariants of the envelope equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservedDiagnostics {
    /// ∫ |B₁|² dζ, T² m.
    pub norm: f64,
    /// Im ∫ B₁* ∂_ζ B₁ dζ, T².
    pub momentum: f64,
    /// (v_g′/2) ∫ |∂_ζ B₁|² dζ − (Q / 2B₀²) ∫ |B₁|⁴ dζ.
    pub hamiltonian: f64,
    /// ∫ |∂_ζ B₁|² dζ. Together with the norm this bounds the momentum,
    /// |momentum| ≤ sqrt(norm × gradient_norm).
    pub gradient_norm: f64,
}

impl ConservedDiagnostics {
    /// Natural scale of the momentum for drift measurements.
    pub fn momentum_scale(&self) -> f64 {
        (self.norm * self.gradient_norm).sqrt()
    }

    /// Relative drifts (norm, momentum, hamiltonian) of `self` with respect
    /// to `initial`. The momentum drift is taken relative to
    /// max(|P₀|, [`Self::momentum_scale`]) of the initial state, so it stays
    /// meaningful for fields whose momentum is zero.
    pub fn drift_from(&self, initial: &ConservedDiagnostics) -> (f64, f64, f64) {
        fn rel(a: f64, b: f64, scale: f64) -> f64 {
            if scale == 0.0 {
                (a - b).abs()
            } else {
                (a - b).abs() / scale
            }
        }
        (
            rel(self.norm, initial.norm, initial.norm),
            rel(self.momentum, initial.momentum, initial.momentum.abs().max(initial.momentum_scale())),
            rel(self.hamiltonian, initial.hamiltonian, initial.hamiltonian.abs()),
        )
    }
}

impl Envelope {
    /// Quadratures on the periodic grid (rectangle rule, which is the
    /// trapezoid rule for periodic data) with spectral derivatives.
    pub fn diagnostics(&self) -> ConservedDiagnostics {
        let dz = self.grid().spacing();
        let b = self.amplitude();
        let bz = self.derivative(1);
        let mut norm = 0.0;
        let mut momentum = 0.0;
        let mut gradient_norm = 0.0;
        let mut quartic = 0.0;
        for (bj, bzj) in b.iter().zip(&bz) {
            let i2 = bj.norm_sqr();
            norm += i2;
            quartic += i2 * i2;
            momentum += (bj.conj() * bzj).im;
            gradient_norm += bzj.norm_sqr();
        }
        let c = self.coefficients();
        let b0 = c.background_field;
        ConservedDiagnostics {
            norm: norm * dz,
            momentum: momentum * dz,
            hamiltonian: (c.dispersion_coeff * gradient_norm
                - c.nonlinear_coeff / (2.0 * b0 * b0) * quartic)
                * dz,
            gradient_norm: gradient_norm * dz,
        }
    }
}
