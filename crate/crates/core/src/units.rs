//! Parsing of dimensional values written with an explicit unit, such as
//! `"1e26 m^-3"`, `"10 eV"` or `"1e-3 T"`. Bare numbers are rejected.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Density,
    Temperature,
    MagneticField,
    Wavenumber,
    Length,
    Time,
    Mass,
}

impl Dimension {
    fn accepted(self) -> &'static str {
        match self {
            Dimension::Density => "m^-3, cm^-3",
            Dimension::Temperature => "K, eV, keV",
            Dimension::MagneticField => "T, mT, uT, G",
            Dimension::Wavenumber => "rad/m, 1/m, m^-1",
            Dimension::Length => "m, cm, mm, km",
            Dimension::Time => "s, ms, us, ns",
            Dimension::Mass => "kg, u, m_p",
        }
    }
}

fn scale(dim: Dimension, unit: &str, k: &PhysicalConstants) -> Option<f64> {
    let s = match (dim, unit) {
        (Dimension::Density, "m^-3" | "m-3" | "/m^3" | "/m3") => 1.0,
        (Dimension::Density, "cm^-3" | "cm-3" | "/cm^3" | "/cm3") => 1e6,
        (Dimension::Temperature, "K") => 1.0,
        (Dimension::Temperature, "eV") => k.kelvin_per_ev(),
        (Dimension::Temperature, "keV") => 1e3 * k.kelvin_per_ev(),
        (Dimension::MagneticField, "T") => 1.0,
        (Dimension::MagneticField, "mT") => 1e-3,
        (Dimension::MagneticField, "uT") => 1e-6,
        (Dimension::MagneticField, "G") => 1e-4,
        (Dimension::Wavenumber, "rad/m" | "1/m" | "m^-1" | "/m") => 1.0,
        (Dimension::Length, "m") => 1.0,
        (Dimension::Length, "cm") => 1e-2,
        (Dimension::Length, "mm") => 1e-3,
        (Dimension::Length, "km") => 1e3,
        (Dimension::Time, "s") => 1.0,
        (Dimension::Time, "ms") => 1e-3,
        (Dimension::Time, "us") => 1e-6,
        (Dimension::Time, "ns") => 1e-9,
        (Dimension::Mass, "kg") => 1.0,
        (Dimension::Mass, "u" | "amu") => ATOMIC_MASS_UNIT,
        (Dimension::Mass, "m_p" | "mp") => k.proton_mass,
        _ => return None,
    };
    Some(s)
}

/// Parses `text` as a value of dimension `dim` and returns it in SI units
/// (kelvin for temperatures).
pub fn parse(field: &'static str, dim: Dimension, text: &str, k: &PhysicalConstants) -> Result<f64> {
    let text = text.trim();
    // Longest prefix that reads as a number; the rest is the unit.
    let split = (1..=text.len())
        .rev()
        .filter(|&i| text.is_char_boundary(i))
        .find(|&i| text[..i].trim().parse::<f64>().is_ok())
        .ok_or_else(|| Error::validation(field, format!("cannot read a number from {text:?}")))?;
    let value: f64 = text[..split].trim().parse().unwrap();
    let unit = text[split..].trim();
    if unit.is_empty() {
        return Err(Error::validation(
            field,
            format!("{text:?} has no unit; accepted units: {}", dim.accepted()),
        ));
    }
    let s = scale(dim, unit, k).ok_or_else(|| {
        Error::validation(
            field,
            format!("unit {unit:?} is not a {dim:?} unit; accepted units: {}", dim.accepted()),
        )
    })?;
    Ok(value * s)
}
