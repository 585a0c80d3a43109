use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::params::{self, DerivedQuantities, PlasmaComposition, QuantumParameters};

/// Above this value of μ_B B0 / k_B T_e the first-order spin expansion is
/// reported as questionable.
pub const SMALL_SPIN_PARAMETER: f64 = 0.1;

/// A validity assumption of the low-frequency model that does not hold for
/// the given inputs. These never abort a computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegimeWarning {
    /// B0 is not below sqrt(μ0 ρ0 k_B (T_i + T_e) / m_i), so ion inertia in
    /// the ponderomotive balance is not negligible.
    StrongField { b0: f64, limit: f64 },
    /// μ_B B0 / k_B T_e is not small compared to one.
    SpinPolarizationNotSmall { value: f64 },
}

impl std::fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegimeWarning::StrongField { b0, limit } => write!(
                f,
                "weak-field assumption violated: B0 = {b0:e} T >= {limit:e} T"
            ),
            RegimeWarning::SpinPolarizationNotSmall { value } => write!(
                f,
                "spin expansion parameter mu_B B0 / k_B T_e = {value:e} is not small"
            ),
        }
    }
}

/// A value together with the regime warnings raised while computing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checked<T> {
    pub value: T,
    pub warnings: Vec<RegimeWarning>,
}

/// A validated composition with its derived quantities and quantum
/// parameters, evaluated once against one set of constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plasma {
    pub composition: PlasmaComposition,
    pub derived: DerivedQuantities,
    pub parameters: QuantumParameters,
    pub constants: PhysicalConstants,
}

impl Plasma {
    pub fn new(composition: PlasmaComposition, constants: PhysicalConstants) -> Result<Self> {
        let (derived, parameters) = params::evaluate(&composition, &constants)?;
        Ok(Plasma { composition, derived, parameters, constants })
    }

    pub fn n0(&self) -> f64 {
        self.composition.electron_density
    }

    pub fn b0(&self) -> f64 {
        self.composition.magnetic_field
    }

    /// k_B T_e in joules.
    pub fn electron_thermal_energy(&self) -> f64 {
        self.constants.boltzmann * self.composition.electron_temperature
    }

    /// k_B (T_i + T_e) in joules.
    pub fn total_thermal_energy(&self) -> f64 {
        self.constants.boltzmann
            * (self.composition.electron_temperature + self.composition.ion_temperature)
    }

    /// sqrt(μ0 ρ0 k_B (T_i + T_e) / m_i), the field below which the
    /// ponderomotive density response is quasi-static.
    pub fn weak_field_limit(&self) -> f64 {
        (self.constants.vacuum_permeability * self.derived.mass_density * self.total_thermal_energy()
            / self.composition.ion_mass)
            .sqrt()
    }

    pub fn warnings(&self) -> Vec<RegimeWarning> {
        let mut out = Vec::new();
        let limit = self.weak_field_limit();
        if self.b0() >= limit {
            out.push(RegimeWarning::StrongField { b0: self.b0(), limit });
        }
        let x = self.parameters.single_fluid_acoustic;
        if x > SMALL_SPIN_PARAMETER {
            out.push(RegimeWarning::SpinPolarizationNotSmall { value: x });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA_2018;

    #[test]
    fn weak_field_limit_matches_sound_alfven_crossing() {
        // B0 = limit is the same statement as c_A = c_s.
        let comp = PlasmaComposition::hydrogen(&CODATA_2018, 1e20, 1e4, 1e4, 1e-3);
        let p = Plasma::new(comp, CODATA_2018).unwrap();
        let mut at = comp;
        at.magnetic_field = p.weak_field_limit();
        let q = Plasma::new(at, CODATA_2018).unwrap();
        assert!((q.derived.alfven_speed / q.derived.sound_speed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn warnings_flag_strong_field_and_cold_plasma() {
        let k = CODATA_2018;
        let quiet = Plasma::new(PlasmaComposition::hydrogen(&k, 1e26, 1e5, 1e5, 1e-3), k).unwrap();
        assert!(quiet.warnings().is_empty());

        let strong = Plasma::new(PlasmaComposition::hydrogen(&k, 1e18, 1e5, 1e5, 10.0), k).unwrap();
        assert!(matches!(strong.warnings()[0], RegimeWarning::StrongField { .. }));

        let cold = Plasma::new(PlasmaComposition::hydrogen(&k, 1e30, 1e-2, 1e-2, 10.0), k).unwrap();
        assert!(cold
            .warnings()
            .iter()
            .any(|w| matches!(w, RegimeWarning::SpinPolarizationNotSmall { .. })));
    }
}
