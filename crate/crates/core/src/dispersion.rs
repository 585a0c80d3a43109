//! Parallel Alfvén waves with Hall dispersion,
//! ω² = k² c_A² (1 ± k c_A / ω_ci), and the coefficients of the envelope
//! equation i ∂_t B₁ + (v_g′/2) ∂_ζ² B₁ + Q (|B₁|²/B₀²) B₁ = 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plasma::Plasma;
use crate::spin_fluid;

/// Default lower bound on |c_A² − c_s²| / c_s² for [`nls_coefficients`].
pub const RESONANCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarization {
    /// Upper sign: ω² = k² c_A² (1 + k c_A/ω_ci).
    RightHand,
    /// Lower sign; ends at the ion-cyclotron resonance k c_A = ω_ci.
    LeftHand,
}

impl Polarization {
    pub fn sign(self) -> f64 {
        match self {
            Polarization::RightHand => 1.0,
            Polarization::LeftHand => -1.0,
        }
    }
}

impl std::str::FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "righthand" | "right_hand" | "rh" | "r" => Ok(Polarization::RightHand),
            "left" | "lefthand" | "left_hand" | "lh" | "l" => Ok(Polarization::LeftHand),
            other => Err(Error::validation("polarization", format!("unknown polarization {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarrierWave {
    /// rad/m
    pub wavenumber: f64,
    pub polarization: Polarization,
    /// rad/s
    pub omega: f64,
    /// dω/dk, m/s
    pub group_velocity: f64,
    /// d²ω/dk², m²/s
    pub group_dispersion: f64,
    /// k c_A / ω_ci. The envelope reduction assumes this is small.
    pub hall_parameter: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NlsCoefficients {
    /// v_g′ / 2, m²/s
    pub dispersion_coeff: f64,
    /// Q, rad/s
    pub nonlinear_coeff: f64,
    /// Q_c = k c_A³ / (4 (c_A² − c_s²)), rad/s
    pub classical_q: f64,
    /// 1 − (2 μ_B B0 / m_i c_A²)²
    pub spin_correction_factor: f64,
    /// B0, T. Normalizes the intensity in the nonlinear term.
    pub background_field: f64,
}

impl NlsCoefficients {
    /// v_g′
    pub fn group_dispersion(&self) -> f64 {
        2.0 * self.dispersion_coeff
    }

    /// Bright solitons and modulational instability need Q v_g′ > 0.
    pub fn is_focusing(&self) -> bool {
        self.nonlinear_coeff * self.dispersion_coeff > 0.0
    }
}

pub fn dispersion(k: f64, polarization: Polarization, plasma: &Plasma) -> Result<CarrierWave> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::validation("wavenumber", format!("must be finite and > 0, got {k}")));
    }
    let ca = plasma.derived.alfven_speed;
    let wci = plasma.derived.omega_ci;
    let s = polarization.sign();
    let x = k * ca / wci;
    let d = 1.0 + s * x;
    if d <= 0.0 {
        return Err(Error::Domain(format!(
            "beyond ion-cyclotron resonance: k c_A / omega_ci = {x} >= 1 for left-hand polarization"
        )));
    }
    let root = d.sqrt();
    Ok(CarrierWave {
        wavenumber: k,
        polarization,
        omega: k * ca * root,
        group_velocity: ca * (1.0 + 1.5 * s * x) / root,
        group_dispersion: s * ca * ca / wci * (1.0 + 0.75 * s * x) / (d * root),
        hall_parameter: x,
    })
}

/// ω(k) alone.
pub fn frequency(k: f64, polarization: Polarization, plasma: &Plasma) -> Result<f64> {
    dispersion(k, polarization, plasma).map(|c| c.omega)
}

/// 1 − (2 μ_B B0 / m_i c_A²)²
pub fn spin_correction_factor(plasma: &Plasma) -> f64 {
    1.0 - (2.0 * plasma.parameters.two_fluid_nonlinear).powi(2)
}

pub fn nls_coefficients(carrier: &CarrierWave, plasma: &Plasma) -> Result<NlsCoefficients> {
    nls_coefficients_with_tolerance(carrier, plasma, RESONANCE_TOLERANCE)
}

pub fn nls_coefficients_with_tolerance(
    carrier: &CarrierWave,
    plasma: &Plasma,
    tolerance: f64,
) -> Result<NlsCoefficients> {
    let ca2 = plasma.derived.alfven_speed.powi(2);
    let cs2 = plasma.derived.sound_speed.powi(2);
    let ratio = (ca2 - cs2).abs() / cs2;
    if ratio.is_nan() || ratio <= tolerance {
        return Err(Error::Resonance { ratio, tolerance });
    }
    let classical_q =
        carrier.wavenumber * plasma.derived.alfven_speed.powi(3) / (4.0 * (ca2 - cs2));
    let spin_correction_factor = spin_correction_factor(plasma);
    Ok(NlsCoefficients {
        dispersion_coeff: 0.5 * carrier.group_dispersion,
        nonlinear_coeff: classical_q * spin_correction_factor,
        classical_q,
        spin_correction_factor,
        background_field: plasma.b0(),
    })
}

/// Weak-field approximation of Q_c, −k c_A³ / (4 c_s²). Its relative error
/// against the exact value is (c_A/c_s)² / (1 − (c_A/c_s)²).
pub fn classical_q_weak_field(k: f64, plasma: &Plasma) -> f64 {
    -k * plasma.derived.alfven_speed.powi(3) / (4.0 * plasma.derived.sound_speed.powi(2))
}

/// Single-fluid spin reduction factor of the linear Alfvén speed,
/// 1 + (ħ ω_pe² / (2 m_i c² ω_ce⁽⁰⁾)) tanh(μ_B B0 / k_B T_e), where ω_ce⁽⁰⁾
/// is the cyclotron frequency of the externally sourced field
/// μ0 H0 = B0 − μ0 M0.
///
/// Diagnostic only: the envelope coefficients use the uncorrected c_A.
pub fn spin_alfven_speed_factor(plasma: &Plasma) -> f64 {
    1.0 + spin_alfven_speed_correction(plasma)
}

/// `factor − 1`, kept separate since it is usually far below f64 resolution of the factor.
pub fn spin_alfven_speed_correction(plasma: &Plasma) -> f64 {
    let k = &plasma.constants;
    let pops = spin_fluid::equilibrium_populations(plasma);
    let external_field = plasma.b0() - k.vacuum_permeability * pops.magnetization;
    let omega_ce0 = k.elementary_charge * external_field / k.electron_mass;
    k.planck_hbar * plasma.derived.omega_pe.powi(2)
        / (2.0 * plasma.composition.ion_mass * k.speed_of_light.powi(2) * omega_ce0)
        * pops.brillouin_factor
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{PhysicalConstants, CODATA_2018};
    use crate::params::PlasmaComposition;
    use proptest::prelude::*;

    fn plasma_with(k: PhysicalConstants, n0: f64, te: f64, b0: f64) -> Plasma {
        Plasma::new(PlasmaComposition::hydrogen(&k, n0, te, te, b0), k).unwrap()
    }

    fn reference() -> Plasma {
        plasma_with(CODATA_2018, 1e26, 1e5, 1e-3)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn long_wave_limit() {
        let p = reference();
        let ca = p.derived.alfven_speed;
        let k = 1e-9 * p.derived.omega_ci / ca;
        for pol in [Polarization::RightHand, Polarization::LeftHand] {
            let c = dispersion(k, pol, &p).unwrap();
            assert!(rel(c.omega / k, ca) < 1e-8);
            assert!(rel(c.group_velocity, ca) < 1e-8);
            assert!(rel(c.group_dispersion, pol.sign() * ca * ca / p.derived.omega_ci) < 1e-8);
        }
    }

    #[test]
    fn right_hand_at_cyclotron_wavenumber() {
        let p = reference();
        let k = p.derived.omega_ci / p.derived.alfven_speed;
        let c = dispersion(k, Polarization::RightHand, &p).unwrap();
        assert!(rel(c.omega, 2f64.sqrt() * k * p.derived.alfven_speed) < 1e-14);
    }

    #[test]
    fn left_hand_resonance_is_a_domain_error() {
        let p = reference();
        let k = p.derived.omega_ci / p.derived.alfven_speed;
        let err = dispersion(k, Polarization::LeftHand, &p).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(err.to_string().contains("beyond ion-cyclotron resonance"));
        assert!(dispersion(0.0, Polarization::RightHand, &p).is_err());
        assert!(dispersion(-1.0, Polarization::RightHand, &p).is_err());
    }

    #[test]
    fn q_vanishes_at_half() {
        // two_fluid_nonlinear = 1/2 at n0 = B0 / (2 μ_B μ0).
        let b0 = 1e-3;
        let n0 = b0 / (2.0 * CODATA_2018.bohr_magneton * CODATA_2018.vacuum_permeability);
        let p = plasma_with(CODATA_2018, n0, 1e5, b0);
        assert!((p.parameters.two_fluid_nonlinear - 0.5).abs() < 1e-15);
        let c = dispersion(1e3, Polarization::RightHand, &p).unwrap();
        let q = nls_coefficients(&c, &p).unwrap();
        assert!(q.nonlinear_coeff.abs() <= 1e-14 * q.classical_q.abs());
    }

    #[test]
    fn q_equals_classical_without_spin() {
        let p = plasma_with(CODATA_2018.without_spin(), 1e26, 1e5, 1e-3);
        let c = dispersion(1e3, Polarization::RightHand, &p).unwrap();
        let q = nls_coefficients(&c, &p).unwrap();
        assert_eq!(q.spin_correction_factor, 1.0);
        assert_eq!(q.nonlinear_coeff, q.classical_q);
    }

    #[test]
    fn weak_field_approximation() {
        let p = reference();
        let r = p.derived.alfven_speed / p.derived.sound_speed;
        let c = dispersion(1e3, Polarization::RightHand, &p).unwrap();
        let q = nls_coefficients(&c, &p).unwrap();
        let approx = classical_q_weak_field(1e3, &p);
        assert!(q.classical_q < 0.0 && approx < 0.0);
        assert!(rel(approx, q.classical_q) < r * r);
    }

    #[test]
    fn resonance_guard() {
        let k = CODATA_2018;
        let probe = plasma_with(k, 1e20, 1e4, 1e-3);
        let mut comp = probe.composition;
        comp.magnetic_field = probe.weak_field_limit();
        let p = Plasma::new(comp, k).unwrap();
        let c = dispersion(1.0, Polarization::RightHand, &p).unwrap();
        let err = nls_coefficients(&c, &p).unwrap_err();
        assert!(err.to_string().contains("sound–Alfvén resonance"));

        comp.magnetic_field *= 1.001;
        let p = Plasma::new(comp, k).unwrap();
        let c = dispersion(1.0, Polarization::RightHand, &p).unwrap();
        assert!(nls_coefficients(&c, &p).is_ok());
        assert!(nls_coefficients_with_tolerance(&c, &p, 0.01).is_err());
    }

    #[test]
    fn alfven_speed_factor_reference() {
        let d = spin_alfven_speed_correction(&reference());
        assert!(rel(d, 4.263_368_994_275_352e-12) < 1e-12);
        assert_eq!(spin_alfven_speed_factor(&reference()), 1.0 + d);
        let unpolarized = plasma_with(CODATA_2018.without_spin(), 1e26, 1e5, 1e-3);
        assert_eq!(spin_alfven_speed_factor(&unpolarized), 1.0);
    }

    #[test]
    fn alfven_speed_factor_saturates() {
        let k = CODATA_2018;
        let p = plasma_with(k, 1e20, 1e-3, 1.0);
        assert_eq!(spin_fluid::equilibrium_populations(&p).brillouin_factor, 1.0);
        let mu0h0 = 1.0 - k.vacuum_permeability * k.bohr_magneton * 1e20;
        let wce0 = k.elementary_charge * mu0h0 / k.electron_mass;
        let expected = 1.0
            + k.planck_hbar * p.derived.omega_pe.powi(2)
                / (2.0 * k.proton_mass * k.speed_of_light.powi(2) * wce0);
        assert!(rel(spin_alfven_speed_factor(&p), expected) < 1e-15);
    }

    fn random_plasma() -> impl Strategy<Value = Plasma> {
        (18.0..30.0f64, 3.0..8.0f64, -5.0..1.0f64)
            .prop_map(|(ln, lt, lb)| plasma_with(CODATA_2018, 10f64.powf(ln), 10f64.powf(lt), 10f64.powf(lb)))
    }

    proptest! {
        #[test]
        fn dispersion_relation_holds(p in random_plasma(), lx in -4.0..0.9f64, right in any::<bool>()) {
            let pol = if right { Polarization::RightHand } else { Polarization::LeftHand };
            let x = 10f64.powf(lx).min(0.99);
            let k = x * p.derived.omega_ci / p.derived.alfven_speed;
            let c = dispersion(k, pol, &p).unwrap();
            let ca = p.derived.alfven_speed;
            let rhs = k * k * ca * ca * (1.0 + pol.sign() * k * ca / p.derived.omega_ci);
            prop_assert!(rel(c.omega * c.omega, rhs) < 1e-12);
            prop_assert!(c.omega > 0.0);
        }

        #[test]
        fn group_dispersion_sign(p in random_plasma(), lx in -5.0..-1.0f64) {
            let k = 10f64.powf(lx) * p.derived.omega_ci / p.derived.alfven_speed;
            prop_assert!(dispersion(k, Polarization::RightHand, &p).unwrap().group_dispersion > 0.0);
            prop_assert!(dispersion(k, Polarization::LeftHand, &p).unwrap().group_dispersion < 0.0);
        }

        #[test]
        fn right_hand_monotone(p in random_plasma(), lx in -4.0..2.0f64) {
            let k0 = 10f64.powf(lx) * p.derived.omega_ci / p.derived.alfven_speed;
            let mut last = 0.0;
            for i in 1..50 {
                let w = frequency(k0 * i as f64, Polarization::RightHand, &p).unwrap();
                prop_assert!(w > last);
                last = w;
            }
        }

        #[test]
        fn spin_factor_sign(p in random_plasma()) {
            let f = spin_correction_factor(&p);
            prop_assert!(f <= 1.0);
            prop_assert_eq!(f < 0.0, p.parameters.two_fluid_nonlinear > 0.5);
        }
    }
}
