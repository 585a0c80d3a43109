use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::envelope::{Envelope, Grid, SolverOptions};
use crate::dispersion::NlsCoefficients;
use crate::error::{Error, Result};

/// Bright soliton B₁ = A sech((ζ − ζ₀)/W) exp(i φ₀), W = (B₀/A) sqrt(v_g′/Q).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitonSpec {
    /// A, T.
    pub peak_amplitude: f64,
    /// ζ₀, m.
    pub center: f64,
    /// φ₀, rad.
    pub phase: f64,
}

impl SolitonSpec {
    /// Soliton width W, m. Fails unless Q v_g′ > 0.
    pub fn width(&self, coeffs: &NlsCoefficients) -> Result<f64> {
        if !(self.peak_amplitude.is_finite() && self.peak_amplitude > 0.0) {
            return Err(Error::Soliton(format!(
                "peak amplitude must be > 0, got {}",
                self.peak_amplitude
            )));
        }
        let vgp = coeffs.group_dispersion();
        let q = coeffs.nonlinear_coeff;
        if !(q * vgp > 0.0) {
            return Err(Error::Soliton(format!(
                "bright solitons need Q v_g' > 0, got Q = {q:e} rad/s and v_g' = {vgp:e} m^2/s \
                 (spin correction factor 1 - (2 mu_B B0 / m_i c_A^2)^2 = {:.6})",
                coeffs.spin_correction_factor
            )));
        }
        Ok(coeffs.background_field / self.peak_amplitude * (vgp / q).sqrt())
    }

    /// Q A² / (2 B₀²): rotation rate of the soliton phase, rad/s.
    pub fn frequency(&self, coeffs: &NlsCoefficients) -> f64 {
        coeffs.nonlinear_coeff * (self.peak_amplitude / coeffs.background_field).powi(2) / 2.0
    }

    /// The exact solution on the periodic grid at time `t`.
    ///
    /// The profile is summed over periodic images so that it is smooth and
    /// periodic. Overlap between neighbouring images is of order
    /// exp(−L/W), which is negligible once L ≥ 10 W.
    pub fn profile(&self, coeffs: &NlsCoefficients, grid: &Grid, t: f64) -> Result<Vec<Complex64>> {
        let w = self.width(coeffs)?;
        let l = grid.length();
        // sech(40) < 1e-17
        let images = (40.0 * w / l).ceil() as i64 + 1;
        let phase = Complex64::from_polar(self.peak_amplitude, self.phase + self.frequency(coeffs) * t);
        Ok((0..grid.points())
            .map(|j| {
                let d = (grid.zeta(j) - self.center).rem_euclid(l);
                let d = if d >= 0.5 * l { d - l } else { d };
                let s: f64 = (-images..=images)
                    .map(|m| 1.0 / ((d + m as f64 * l) / w).cosh())
                    .sum();
                phase * s
            })
            .collect())
    }
}

/// Builds an envelope holding the soliton described by `spec`.
///
/// Requires Q v_g′ > 0, 10 W < L (the pulse fits the box) and W > 4 Δζ (the
/// pulse is resolved).
pub fn initialize_soliton(
    spec: &SolitonSpec,
    coeffs: &NlsCoefficients,
    grid: Grid,
    options: SolverOptions,
) -> Result<Envelope> {
    let w = spec.width(coeffs)?;
    if 10.0 * w >= grid.length() {
        return Err(Error::Soliton(format!(
            "width {w:e} m does not fit the box: need 10 W < L = {:e} m",
            grid.length()
        )));
    }
    if w <= 4.0 * grid.spacing() {
        return Err(Error::Soliton(format!(
            "width {w:e} m is under-resolved: need W > 4 dzeta = {:e} m",
            4.0 * grid.spacing()
        )));
    }
    let amp = spec.profile(coeffs, &grid, 0.0)?;
    Envelope::from_amplitude(grid, *coeffs, &amp, options)
}

/// Uniform background A₀ with a relative cosine seed on mode number `mode`:
/// B₁ = A₀ (1 + ε cos(2π m ζ / L)).
pub fn uniform_background(
    background: f64,
    perturbation: f64,
    mode: i64,
    coeffs: &NlsCoefficients,
    grid: Grid,
    options: SolverOptions,
) -> Result<Envelope> {
    if !(background.is_finite() && background > 0.0) {
        return Err(Error::validation("background_amplitude", format!("must be > 0, got {background}")));
    }
    if !perturbation.is_finite() {
        return Err(Error::validation("perturbation", "must be finite"));
    }
    if mode.unsigned_abs() as usize >= grid.points() / 2 {
        return Err(Error::validation(
            "mode",
            format!("|{mode}| is not below the Nyquist mode {}", grid.points() / 2),
        ));
    }
    let kappa = 2.0 * PI * mode as f64 / grid.length();
    let amp: Vec<Complex64> = (0..grid.points())
        .map(|j| Complex64::new(background * (1.0 + perturbation * (kappa * grid.zeta(j)).cos()), 0.0))
        .collect();
    Envelope::from_amplitude(grid, *coeffs, &amp, options)
}
