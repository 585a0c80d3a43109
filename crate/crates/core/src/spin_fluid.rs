//! Equilibrium spin populations and the low-frequency ponderomotive
//! responses of a two-fluid (spin-up / spin-down) electron model.
//!
//! Sign convention: the `+` population carries S = −(ħ/2) B̂. Its magnetic
//! moment is therefore parallel to B (μ = −μ_B per unit spin), it is the
//! lower-energy state, and it holds the majority at equilibrium. With this
//! convention the low-frequency density difference n₊ − n₋ driven by a wave
//! packet is non-negative.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plasma::{Checked, Plasma};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinPopulations {
    /// m⁻³
    pub n_plus0: f64,
    /// m⁻³
    pub n_minus0: f64,
    /// n_plus0 − n_minus0, m⁻³
    pub population_difference: f64,
    /// Net magnetization μ_B (n₊ − n₋), A/m.
    pub magnetization: f64,
    /// tanh(μ_B B0 / k_B T_e)
    pub brillouin_factor: f64,
}

/// Low-frequency response to a local wave intensity |B|².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowFrequencyResponse {
    /// Quasineutral density perturbation n^lf, m⁻³.
    pub total_density: f64,
    /// n₊^lf + n₋^lf, m⁻³.
    pub electron_sum: f64,
    /// n₊^lf − n₋^lf, m⁻³.
    pub electron_difference: f64,
    /// Φ^lf, V.
    pub potential: f64,
    /// F₊ + F₋ for the supplied intensity gradient, N/m³.
    pub pond_force_sum: f64,
}

impl LowFrequencyResponse {
    /// (n₊^lf, n₋^lf)
    pub fn populations(&self) -> (f64, f64) {
        (
            0.5 * (self.electron_sum + self.electron_difference),
            0.5 * (self.electron_sum - self.electron_difference),
        )
    }
}

pub fn equilibrium_populations(plasma: &Plasma) -> SpinPopulations {
    let n0 = plasma.n0();
    let x = plasma.parameters.single_fluid_acoustic;
    let t = x.tanh();
    let n_plus0 = 0.5 * n0 * (1.0 + t);
    // n_minus0 is taken as the complement so the pair sums to n0 exactly.
    let n_minus0 = n0 - n_plus0;
    SpinPopulations {
        n_plus0,
        n_minus0,
        population_difference: n0 * t,
        magnetization: plasma.constants.bohr_magneton * n0 * t,
        brillouin_factor: t,
    }
}

fn check_intensity(b_amp_sq: f64) -> Result<()> {
    if b_amp_sq.is_finite() && b_amp_sq >= 0.0 {
        Ok(())
    } else {
        Err(Error::validation("b_amp_sq", format!("must be finite and >= 0, got {b_amp_sq}")))
    }
}

/// Quasineutral density depletion −|B|² / ((k_B T_i + k_B T_e) μ0).
///
/// Carries a [`RegimeWarning::StrongField`](crate::plasma::RegimeWarning)
/// when ion inertia is not negligible.
pub fn density_depletion(plasma: &Plasma, b_amp_sq: f64) -> Result<Checked<f64>> {
    check_intensity(b_amp_sq)?;
    let value = -b_amp_sq / (plasma.total_thermal_energy() * plasma.constants.vacuum_permeability);
    Ok(Checked { value, warnings: plasma.warnings() })
}

/// (n0/2)(μ_B B0 / k_B T_e)(e ħ / m_e) / B0: the factor multiplying ∂_z|B|²
/// in the summed spin ponderomotive force.
pub fn ponderomotive_coefficient(plasma: &Plasma) -> f64 {
    let k = &plasma.constants;
    0.5 * plasma.n0()
        * plasma.parameters.single_fluid_acoustic
        * (k.elementary_charge * k.planck_hbar / k.electron_mass)
        / plasma.b0()
}

/// Summed spin ponderomotive force density along a sampled |B|²(z) profile
/// with uniform spacing `dz`.
///
/// Centered second-order differences on the interior, first-order one-sided
/// differences at both ends.
pub fn ponderomotive_sum(plasma: &Plasma, b_amp_sq: &[f64], dz: f64) -> Result<Vec<f64>> {
    let n = b_amp_sq.len();
    if n < 3 {
        return Err(Error::validation("profile", format!("needs at least 3 points, got {n}")));
    }
    if !(dz.is_finite() && dz > 0.0) {
        return Err(Error::validation("dz", format!("must be finite and > 0, got {dz}")));
    }
    let c = ponderomotive_coefficient(plasma);
    let mut force = Vec::with_capacity(n);
    force.push(c * (b_amp_sq[1] - b_amp_sq[0]) / dz);
    force.extend(b_amp_sq.windows(3).map(|w| c * (w[2] - w[0]) / (2.0 * dz)));
    force.push(c * (b_amp_sq[n - 1] - b_amp_sq[n - 2]) / dz);
    Ok(force)
}

/// Factor multiplying |B|²/μ0 in the summed electron response:
/// 1 − (μ_B B0 / k_B T_e)(μ_B B0 / m_i c_A²).
pub fn sum_spin_factor(plasma: &Plasma) -> f64 {
    1.0 - spin_pressure_correction(plasma)
}

/// Relative spin reduction of the summed electron pressure response,
/// (μ_B B0 / k_B T_e)(μ_B B0 / m_i c_A²).
pub fn spin_pressure_correction(plasma: &Plasma) -> f64 {
    plasma.parameters.single_fluid_acoustic * plasma.parameters.two_fluid_nonlinear
}

/// Closes the summed electron balance with quasineutrality,
/// n₊^lf + n₋^lf = n^lf, and solves it for the potential.
///
/// Returns `(n₊^lf + n₋^lf, Φ^lf)`.
pub fn electron_sum_response(plasma: &Plasma, b_amp_sq: f64, n_lf: f64) -> Result<(f64, f64)> {
    check_intensity(b_amp_sq)?;
    if !n_lf.is_finite() {
        return Err(Error::validation("n_lf", "must be finite"));
    }
    let kt = plasma.electron_thermal_energy();
    let mu0 = plasma.constants.vacuum_permeability;
    let pressure = sum_spin_factor(plasma) * b_amp_sq / (mu0 * kt);
    let phi = kt / (plasma.constants.elementary_charge * plasma.n0()) * (n_lf + pressure);
    Ok((n_lf, phi))
}

/// n₊^lf − n₋^lf = (2 / k_B T_e)(μ_B B0 / m_i c_A²)(|B|² / μ0).
pub fn electron_difference_response(plasma: &Plasma, b_amp_sq: f64) -> Result<f64> {
    check_intensity(b_amp_sq)?;
    Ok(2.0 / plasma.electron_thermal_energy()
        * plasma.parameters.two_fluid_nonlinear
        * b_amp_sq
        / plasma.constants.vacuum_permeability)
}

/// All low-frequency responses at one point of a wave packet with local
/// intensity `b_amp_sq` and intensity gradient `b_amp_sq_gradient` (T²/m).
pub fn low_frequency_response(
    plasma: &Plasma,
    b_amp_sq: f64,
    b_amp_sq_gradient: f64,
) -> Result<Checked<LowFrequencyResponse>> {
    let depletion = density_depletion(plasma, b_amp_sq)?;
    let (electron_sum, potential) = electron_sum_response(plasma, b_amp_sq, depletion.value)?;
    let electron_difference = electron_difference_response(plasma, b_amp_sq)?;
    Ok(Checked {
        value: LowFrequencyResponse {
            total_density: depletion.value,
            electron_sum,
            electron_difference,
            potential,
            pond_force_sum: ponderomotive_coefficient(plasma) * b_amp_sq_gradient,
        },
        warnings: depletion.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{PhysicalConstants, CODATA_2018};
    use crate::params::PlasmaComposition;
    use proptest::prelude::*;

    fn plasma_with(k: PhysicalConstants, n0: f64, te: f64, ti: f64, b0: f64) -> Plasma {
        Plasma::new(PlasmaComposition::hydrogen(&k, n0, te, ti, b0), k).unwrap()
    }

    fn reference() -> Plasma {
        plasma_with(CODATA_2018, 1e26, 1e5, 1e5, 1e-3)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn populations_reference() {
        let s = equilibrium_populations(&reference());
        assert!(rel(s.population_difference / 1e26, 6.717_138_156_258_397e-9) < 1e-9);
        assert_eq!(s.n_plus0 + s.n_minus0, 1e26);
        assert!(s.brillouin_factor >= 0.0 && s.brillouin_factor < 1.0);
    }

    #[test]
    fn populations_limits() {
        let unpolarized = plasma_with(CODATA_2018.without_spin(), 1e26, 1e5, 1e5, 1e-3);
        let s = equilibrium_populations(&unpolarized);
        assert_eq!(s.n_plus0, 0.5e26);
        assert_eq!(s.n_minus0, 0.5e26);
        assert_eq!(s.magnetization, 0.0);

        let cold = plasma_with(CODATA_2018, 1e26, 1e-6, 1e-6, 10.0);
        let s = equilibrium_populations(&cold);
        assert_eq!(s.n_plus0, 1e26);
        assert_eq!(s.n_minus0, 0.0);
    }

    #[test]
    fn depletion_reference() {
        let p = reference();
        assert_eq!(density_depletion(&p, 0.0).unwrap().value, 0.0);
        let d = density_depletion(&p, 1e-10).unwrap();
        assert!(rel(d.value, -2.881_886_399_172_694e13) < 1e-12);
        assert!(d.warnings.is_empty());
        let d2 = density_depletion(&p, 2e-10).unwrap();
        assert!(rel(d2.value, 2.0 * d.value) < 1e-15);
        assert!(density_depletion(&p, -1.0).is_err());
    }

    #[test]
    fn depletion_warns_in_strong_field() {
        let p = plasma_with(CODATA_2018, 1e18, 1e5, 1e5, 10.0);
        let d = density_depletion(&p, 1e-10).unwrap();
        assert!(!d.warnings.is_empty());
        assert!(d.value < 0.0);
    }

    #[test]
    fn difference_reference() {
        let p = reference();
        assert_eq!(electron_difference_response(&p, 0.0).unwrap(), 0.0);
        let d = electron_difference_response(&p, 1e-10).unwrap();
        assert!(rel(d, 1.343_427_631_251_679e14) < 1e-12);
    }

    #[test]
    fn potential_reference() {
        let p = reference();
        assert_eq!(electron_sum_response(&p, 0.0, 0.0).unwrap().1, 0.0);

        let n_lf = density_depletion(&p, 1e-10).unwrap().value;
        let (sum, phi) = electron_sum_response(&p, 1e-10, n_lf).unwrap();
        assert_eq!(sum, n_lf);
        assert!(rel(phi, 2.483_417_513_650_105e-12) < 1e-9);

        let classical = plasma_with(CODATA_2018.without_spin(), 1e26, 1e5, 1e5, 1e-3);
        let (_, phi_c) = electron_sum_response(&classical, 1e-10, n_lf).unwrap();
        let kt = classical.electron_thermal_energy();
        let expected =
            kt / (CODATA_2018.elementary_charge * 1e26) * (n_lf + 1e-10 / (CODATA_2018.vacuum_permeability * kt));
        assert!(rel(phi_c, expected) < 1e-14);
        assert!(rel(phi_c, 2.483_417_552_531_465e-12) < 1e-9);

        // With T_i = T_e the depletion cancels half of the pressure term, so
        // relative to Φ the spin shift is twice x·P.
        let shift = (phi_c - phi) / phi_c;
        let xp = p.parameters.single_fluid_acoustic * p.parameters.two_fluid_nonlinear;
        assert!(rel(shift, 2.0 * xp) < 1e-6, "{shift} vs {xp}");
    }

    #[test]
    fn ponderomotive_profiles() {
        let p = reference();
        let c = ponderomotive_coefficient(&p);
        assert!(ponderomotive_sum(&p, &[1.0, 1.0], 0.1).is_err());

        let flat = ponderomotive_sum(&p, &[3e-9; 16], 0.1).unwrap();
        assert!(flat.iter().all(|&f| f == 0.0));

        let slope = 2.5e-8;
        let ramp: Vec<f64> = (0..20).map(|i| 1e-9 + slope * i as f64 * 0.05).collect();
        for f in ponderomotive_sum(&p, &ramp, 0.05).unwrap() {
            assert!(rel(f, c * slope) < 1e-8);
        }
        let expected = 0.5 * 1e26 * p.parameters.single_fluid_acoustic
            * (2.0 * CODATA_2018.bohr_magneton) * slope / 1e-3;
        assert!(rel(c * slope, expected) < 1e-6);
    }

    #[test]
    fn gaussian_force_matches_symbolic_derivative() {
        let p = reference();
        let c = ponderomotive_coefficient(&p);
        let (amp, sigma) = (1e-8, 1.0);
        // power-of-two step so every grid point is exact
        let h = 2f64.powi(-18);
        let n = 12 * (1 << 18) + 1;
        let z = |i: usize| -6.0 + i as f64 * h;
        let profile: Vec<f64> = (0..n).map(|i| amp * (-(z(i) / sigma).powi(2)).exp()).collect();
        let force = ponderomotive_sum(&p, &profile, h).unwrap();
        let exact = |x: f64| c * amp * (-2.0 * x / (sigma * sigma)) * (-(x / sigma).powi(2)).exp();
        let peak = (1..n - 1).map(|i| exact(z(i)).abs()).fold(0.0, f64::max);
        let err = (1..n - 1).map(|i| (force[i] - exact(z(i))).abs()).fold(0.0, f64::max);
        assert!(err / peak < 1e-10, "{}", err / peak);
        let mid = n / 2;
        for j in 1..mid - 1 {
            assert!((force[mid + j] + force[mid - j]).abs() <= 1e-9 * peak);
        }
    }

    proptest! {
        #[test]
        fn sum_and_difference_recombine(ln in 18.0..30.0f64, lt in 3.0..8.0f64, lb in -5.0..1.0f64, lbsq in -14.0..-6.0f64) {
            let p = plasma_with(CODATA_2018, 10f64.powf(ln), 10f64.powf(lt), 10f64.powf(lt), 10f64.powf(lb));
            let bsq = 10f64.powf(lbsq);
            let r = low_frequency_response(&p, bsq, 0.0).unwrap().value;
            let (np, nm) = r.populations();
            let scale = r.electron_sum.abs().max(r.electron_difference);
            prop_assert!(((np + nm) - r.electron_sum).abs() < 1e-12 * scale);
            prop_assert!(rel(np - nm, r.electron_difference) < 1e-10 * (r.electron_sum.abs() / r.electron_difference).max(1.0));
            prop_assert!(r.total_density <= 0.0);
            prop_assert!(r.electron_difference >= 0.0);
        }

        #[test]
        fn spin_correction_ratio(ln in 18.0..30.0f64, lt in 3.0..8.0f64, lb in -5.0..1.0f64) {
            let p = plasma_with(CODATA_2018, 10f64.powf(ln), 10f64.powf(lt), 10f64.powf(lt), 10f64.powf(lb));
            let k = CODATA_2018;
            let correction = spin_pressure_correction(&p);
            let expected = k.bohr_magneton.powi(2) * k.vacuum_permeability * p.n0()
                / (k.boltzmann * p.composition.electron_temperature);
            prop_assert!(rel(correction, expected) < 1e-12);
            prop_assert_eq!(sum_spin_factor(&p), 1.0 - correction);
        }

        #[test]
        fn difference_scales_with_intensity_and_density(ln in 18.0..30.0f64, lam in 1e-3..1e3f64) {
            let base = plasma_with(CODATA_2018, 10f64.powf(ln), 1e5, 1e5, 1e-3);
            let dense = plasma_with(CODATA_2018, 10f64.powf(ln) * lam, 1e5, 1e5, 1e-3);
            let a = electron_difference_response(&base, 1e-10).unwrap();
            prop_assert!(rel(electron_difference_response(&base, lam * 1e-10).unwrap(), lam * a) < 1e-13);
            prop_assert!(rel(electron_difference_response(&dense, 1e-10).unwrap(), lam * a) < 1e-12);
        }

        #[test]
        fn force_integrates_to_endpoint_difference(values in proptest::collection::vec(0.0..1e-8f64, 3..200), dz in 1e-3..10.0f64) {
            let p = reference();
            let f = ponderomotive_sum(&p, &values, dz).unwrap();
            let n = f.len();
            let trap = dz * (0.5 * f[0] + f[1..n - 1].iter().sum::<f64>() + 0.5 * f[n - 1]);
            let expected = ponderomotive_coefficient(&p) * (values[n - 1] - values[0]);
            let scale = ponderomotive_coefficient(&p) * values.iter().cloned().fold(0.0, f64::max);
            prop_assert!((trap - expected).abs() <= 1e-10 * scale.max(expected.abs()));
        }
    }
}
