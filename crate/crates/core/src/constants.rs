//! Physical constants (CODATA 2018).

use serde::{Deserialize, Serialize};

/// SI physical constants.
///
/// The fields are public so callers can build modified constant sets, e.g.
/// `PhysicalConstants { bohr_magneton: 0.0, ..CODATA_2018 }` to switch the
/// spin contributions off while keeping everything else identical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// kg
    pub electron_mass: f64,
    /// C
    pub elementary_charge: f64,
    /// J s
    pub planck_hbar: f64,
    /// J/K
    pub boltzmann: f64,
    /// H/m
    pub vacuum_permeability: f64,
    /// F/m
    pub vacuum_permittivity: f64,
    /// m/s
    pub speed_of_light: f64,
    /// J/T
    pub bohr_magneton: f64,
    /// kg
    pub proton_mass: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    electron_mass: 9.109_383_701_5e-31,
    elementary_charge: 1.602_176_634e-19,
    planck_hbar: 1.054_571_817e-34,
    boltzmann: 1.380_649e-23,
    vacuum_permeability: 1.256_637_062_12e-6,
    vacuum_permittivity: 8.854_187_812_8e-12,
    speed_of_light: 299_792_458.0,
    bohr_magneton: 9.274_010_078_3e-24,
    proton_mass: 1.672_621_923_69e-27,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl PhysicalConstants {
    /// The same constants with the electron magnetic moment removed.
    pub fn without_spin(self) -> Self {
        PhysicalConstants { bohr_magneton: 0.0, ..self }
    }

    /// One electronvolt expressed in kelvin.
    pub fn kelvin_per_ev(&self) -> f64 {
        self.elementary_charge / self.boltzmann
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bohr_magneton_consistent() {
        let k = CODATA_2018;
        let mu_b = k.elementary_charge * k.planck_hbar / (2.0 * k.electron_mass);
        assert!((mu_b / k.bohr_magneton - 1.0).abs() < 1e-6);
    }

    #[test]
    fn vacuum_constants_consistent() {
        let k = CODATA_2018;
        let one = k.speed_of_light.powi(2) * k.vacuum_permeability * k.vacuum_permittivity;
        assert!((one - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ev_to_kelvin() {
        assert!((CODATA_2018.kelvin_per_ev() - 11_604.518_12).abs() < 1e-4);
    }
}
