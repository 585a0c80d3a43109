use crate::dispersion::NlsCoefficients;

/// Growth rate of a sideband perturbation with wavenumber `kappa` (rad/m)
/// on a uniform background of amplitude `background` (T):
///
/// Γ(κ) = |κ| sqrt(max(0, Q v_g′ A₀²/B₀² − (v_g′ κ / 2)²)),
///
/// zero whenever Q v_g′ ≤ 0.
pub fn modulational_instability_rate(coeffs: &NlsCoefficients, background: f64, kappa: f64) -> f64 {
    let vgp = coeffs.group_dispersion();
    let drive = coeffs.nonlinear_coeff * vgp;
    if !(drive > 0.0) {
        return 0.0;
    }
    let a2 = (background / coeffs.background_field).powi(2);
    let disc = drive * a2 - (0.5 * vgp * kappa).powi(2);
    kappa.abs() * disc.max(0.0).sqrt()
}
