//! Run configuration files (TOML). Every dimensional value is a string
//! carrying its unit, e.g. `n0 = "1e26 m^-3"`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::constants::PhysicalConstants;
use crate::dispersion::Polarization;
use crate::error::{Error, Result};
use crate::params::PlasmaComposition;
use crate::units::{self, Dimension};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionBlock {
    pub n0: Option<String>,
    pub te: Option<String>,
    pub ti: Option<String>,
    pub b0: Option<String>,
    /// `"hydrogen"` (default) or `"custom"` with `ion_mass` and `ion_charge`.
    pub ion: Option<String>,
    pub ion_mass: Option<String>,
    pub ion_charge: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierBlock {
    pub k: Option<String>,
    pub polarization: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverBlock {
    pub points: Option<usize>,
    pub length: Option<String>,
    /// Domain length in soliton widths; alternative to `length`.
    pub length_widths: Option<f64>,
    /// Time step; defaults to the splitting guard limit.
    pub dt: Option<String>,
    pub steps: Option<usize>,
    pub snapshot_every: Option<usize>,
    pub dealias: Option<bool>,
    pub cfl_safety: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonBlock {
    pub peak_amplitude: String,
    /// Defaults to the middle of the box.
    pub center: Option<String>,
    #[serde(default)]
    pub phase: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformBlock {
    pub amplitude: String,
    #[serde(default)]
    pub perturbation: f64,
    #[serde(default = "default_mode")]
    pub mode: i64,
}

fn default_mode() -> i64 {
    1
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialBlock {
    pub soliton: Option<SolitonBlock>,
    pub uniform: Option<UniformBlock>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub timeseries: Option<PathBuf>,
    pub snapshots: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub composition: CompositionBlock,
    #[serde(default)]
    pub carrier: CarrierBlock,
    #[serde(default)]
    pub solver: SolverBlock,
    #[serde(default)]
    pub initial: InitialBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

fn required<'a>(field: &'static str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::validation(field, "missing"))
}

impl CompositionBlock {
    /// Later values win: `self` is overridden by `other` field by field.
    pub fn merged(&self, other: &CompositionBlock) -> CompositionBlock {
        CompositionBlock {
            n0: other.n0.clone().or_else(|| self.n0.clone()),
            te: other.te.clone().or_else(|| self.te.clone()),
            ti: other.ti.clone().or_else(|| self.ti.clone()),
            b0: other.b0.clone().or_else(|| self.b0.clone()),
            ion: other.ion.clone().or_else(|| self.ion.clone()),
            ion_mass: other.ion_mass.clone().or_else(|| self.ion_mass.clone()),
            ion_charge: other.ion_charge.or(self.ion_charge),
        }
    }

    /// T_i defaults to T_e.
    pub fn resolve(&self, k: &PhysicalConstants) -> Result<PlasmaComposition> {
        let n0 = units::parse("n0", Dimension::Density, required("n0", &self.n0)?, k)?;
        let te = units::parse("te", Dimension::Temperature, required("te", &self.te)?, k)?;
        let ti = match &self.ti {
            Some(s) => units::parse("ti", Dimension::Temperature, s, k)?,
            None => te,
        };
        let b0 = units::parse("b0", Dimension::MagneticField, required("b0", &self.b0)?, k)?;
        let (ion_mass, ion_charge_number) = match self.ion.as_deref().unwrap_or("hydrogen") {
            "hydrogen" | "proton" | "H" => {
                if self.ion_mass.is_some() || self.ion_charge.is_some() {
                    return Err(Error::validation("ion", "set ion = \"custom\" to give ion_mass or ion_charge"));
                }
                (k.proton_mass, 1.0)
            }
            "custom" => (
                units::parse("ion_mass", Dimension::Mass, required("ion_mass", &self.ion_mass)?, k)?,
                self.ion_charge.ok_or_else(|| Error::validation("ion_charge", "missing"))?,
            ),
            other => return Err(Error::validation("ion", format!("unknown ion species {other:?}"))),
        };
        let comp = PlasmaComposition {
            electron_density: n0,
            electron_temperature: te,
            ion_temperature: ti,
            magnetic_field: b0,
            ion_mass,
            ion_charge_number,
        };
        comp.validate()?;
        Ok(comp)
    }
}

impl CarrierBlock {
    pub fn merged(&self, other: &CarrierBlock) -> CarrierBlock {
        CarrierBlock {
            k: other.k.clone().or_else(|| self.k.clone()),
            polarization: other.polarization.clone().or_else(|| self.polarization.clone()),
        }
    }

    pub fn resolve(&self, k: &PhysicalConstants) -> Result<(f64, Polarization)> {
        let wavenumber = units::parse("k", Dimension::Wavenumber, required("k", &self.k)?, k)?;
        let pol = required("polarization", &self.polarization)?.parse()?;
        Ok((wavenumber, pol))
    }
}
