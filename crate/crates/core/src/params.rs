//! Plasma composition, derived frequencies and speeds, and the dimensionless
//! quantum parameters that decide which quantum effects matter.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Primitive description of a quasineutral electron-ion plasma.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlasmaComposition {
    /// Electron density n0, m⁻³.
    pub electron_density: f64,
    /// T_e, K.
    pub electron_temperature: f64,
    /// T_i, K.
    pub ion_temperature: f64,
    /// Background field B0, T.
    pub magnetic_field: f64,
    /// m_i, kg.
    pub ion_mass: f64,
    /// Z.
    pub ion_charge_number: f64,
}

impl PlasmaComposition {
    /// Hydrogen plasma (Z = 1, proton ions).
    pub fn hydrogen(
        k: &PhysicalConstants,
        electron_density: f64,
        electron_temperature: f64,
        ion_temperature: f64,
        magnetic_field: f64,
    ) -> Self {
        PlasmaComposition {
            electron_density,
            electron_temperature,
            ion_temperature,
            magnetic_field,
            ion_mass: k.proton_mass,
            ion_charge_number: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(field: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::validation(field, format!("must be finite and > 0, got {v}")))
            }
        }
        positive("electron_density", self.electron_density)?;
        positive("electron_temperature", self.electron_temperature)?;
        positive("magnetic_field", self.magnetic_field)?;
        positive("ion_mass", self.ion_mass)?;
        if !(self.ion_temperature.is_finite() && self.ion_temperature >= 0.0) {
            return Err(Error::validation(
                "ion_temperature",
                format!("must be finite and >= 0, got {}", self.ion_temperature),
            ));
        }
        if !(self.ion_charge_number.is_finite() && self.ion_charge_number >= 1.0) {
            return Err(Error::validation(
                "ion_charge_number",
                format!("must be >= 1, got {}", self.ion_charge_number),
            ));
        }
        Ok(())
    }
}

/// Frequencies, speeds and reference scales computed from a composition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    /// Electron plasma frequency, rad/s.
    pub omega_pe: f64,
    /// Electron cyclotron frequency e B0 / m_e, rad/s.
    pub omega_ce: f64,
    /// Ion cyclotron frequency Z e B0 / m_i, rad/s.
    pub omega_ci: f64,
    /// c_A = B0 / sqrt(μ0 ρ0), m/s.
    pub alfven_speed: f64,
    /// Isothermal sound speed sqrt(k_B (T_e + T_i) / m_i), m/s.
    pub sound_speed: f64,
    /// ρ0 = n0 m_i / Z, kg/m³.
    pub mass_density: f64,
    /// Fermi temperature, K.
    pub fermi_temperature: f64,
}

/// The five dimensionless parameters of the quantum regime map. Each one
/// marks its effect as significant once it reaches unity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumParameters {
    /// T_F / T_e
    pub fermi_ratio: f64,
    /// ħ ω_pe / (k_B T_e)
    pub bohm_debroglie: f64,
    /// ħ² ω_pe² / (m_e c² k_B T_e)
    pub single_fluid_alfven: f64,
    /// μ_B B0 / (k_B T_e)
    pub single_fluid_acoustic: f64,
    /// μ_B B0 / (m_i c_A²)
    pub two_fluid_nonlinear: f64,
}

pub fn plasma_frequency(n0: f64, k: &PhysicalConstants) -> f64 {
    (n0 * k.elementary_charge.powi(2) / (k.vacuum_permittivity * k.electron_mass)).sqrt()
}

pub fn fermi_temperature(n0: f64, k: &PhysicalConstants) -> f64 {
    k.planck_hbar.powi(2) / (2.0 * k.electron_mass * k.boltzmann)
        * (3.0 * PI * PI * n0).powf(2.0 / 3.0)
}

pub fn derive(comp: &PlasmaComposition, k: &PhysicalConstants) -> Result<DerivedQuantities> {
    comp.validate()?;
    let n0 = comp.electron_density;
    let b0 = comp.magnetic_field;
    let mass_density = n0 * comp.ion_mass / comp.ion_charge_number;
    Ok(DerivedQuantities {
        omega_pe: plasma_frequency(n0, k),
        omega_ce: k.elementary_charge * b0 / k.electron_mass,
        omega_ci: comp.ion_charge_number * k.elementary_charge * b0 / comp.ion_mass,
        alfven_speed: b0 / (k.vacuum_permeability * mass_density).sqrt(),
        sound_speed: (k.boltzmann * (comp.electron_temperature + comp.ion_temperature)
            / comp.ion_mass)
            .sqrt(),
        mass_density,
        fermi_temperature: fermi_temperature(n0, k),
    })
}

pub fn quantum_parameters(
    dq: &DerivedQuantities,
    comp: &PlasmaComposition,
    k: &PhysicalConstants,
) -> QuantumParameters {
    let kt = k.boltzmann * comp.electron_temperature;
    let mc2 = k.electron_mass * k.speed_of_light.powi(2);
    QuantumParameters {
        fermi_ratio: dq.fermi_temperature / comp.electron_temperature,
        bohm_debroglie: k.planck_hbar * dq.omega_pe / kt,
        single_fluid_alfven: (k.planck_hbar * dq.omega_pe).powi(2) / (mc2 * kt),
        single_fluid_acoustic: k.bohr_magneton * comp.magnetic_field / kt,
        two_fluid_nonlinear: k.bohr_magneton * comp.magnetic_field
            / (comp.ion_mass * dq.alfven_speed.powi(2)),
    }
}

/// Validates `comp`, then returns both its derived quantities and its quantum parameters.
pub fn evaluate(
    comp: &PlasmaComposition,
    k: &PhysicalConstants,
) -> Result<(DerivedQuantities, QuantumParameters)> {
    let dq = derive(comp, k)?;
    let qp = quantum_parameters(&dq, comp, k);
    Ok((dq, qp))
}
