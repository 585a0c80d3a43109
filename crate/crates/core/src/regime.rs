//! Loci in the (n0, T_e) plane where one dimensionless quantum parameter
//! equals unity, and classification of a plasma against them.
//!
//! Every parameter is a power law in n0 and T_e:
//!
//! | effect               | parameter                  | locus T_e(n0)      |
//! |----------------------|----------------------------|--------------------|
//! | Fermi pressure       | T_F / T_e                  | ∝ n0^(2/3)         |
//! | Bohm–de Broglie      | ħ ω_pe / k_B T_e           | ∝ n0^(1/2)         |
//! | single-fluid Alfvén  | ħ² ω_pe² / m_e c² k_B T_e  | ∝ n0               |
//! | single-fluid acoustic| μ_B B0 / k_B T_e           | constant (per B0)  |
//! | two-fluid nonlinear  | μ_B μ0 n0 / (Z B0)         | n0 constant (per B0) |
//!
//! The Fermi temperature uses the electron mass.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::params::{self, PlasmaComposition, QuantumParameters};
use crate::plasma::{Plasma, RegimeWarning};

/// Width of the band around unity reported as [`Side::Boundary`].
pub const BOUNDARY_BAND: f64 = 1e-9;

pub const DEFAULT_DENSITY_RANGE: (f64, f64) = (1e20, 1e36);
pub const DEFAULT_TEMPERATURE_RANGE: (f64, f64) = (1e2, 1e9);
pub const DEFAULT_FIELDS: [f64; 3] = [1e-3, 1.0, 1e3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effect {
    FermiPressure,
    BohmDeBroglie,
    SingleFluidAlfven,
    SingleFluidAcoustic,
    TwoFluidNonlinear,
}

impl Effect {
    pub const ALL: [Effect; 5] = [
        Effect::FermiPressure,
        Effect::BohmDeBroglie,
        Effect::SingleFluidAlfven,
        Effect::SingleFluidAcoustic,
        Effect::TwoFluidNonlinear,
    ];

    pub fn needs_field(self) -> bool {
        matches!(self, Effect::SingleFluidAcoustic | Effect::TwoFluidNonlinear)
    }

    pub fn name(self) -> &'static str {
        match self {
            Effect::FermiPressure => "fermi_pressure",
            Effect::BohmDeBroglie => "bohm_debroglie",
            Effect::SingleFluidAlfven => "single_fluid_alfven",
            Effect::SingleFluidAcoustic => "single_fluid_acoustic",
            Effect::TwoFluidNonlinear => "two_fluid_nonlinear",
        }
    }

    pub fn parameter(self, qp: &QuantumParameters) -> f64 {
        match self {
            Effect::FermiPressure => qp.fermi_ratio,
            Effect::BohmDeBroglie => qp.bohm_debroglie,
            Effect::SingleFluidAlfven => qp.single_fluid_alfven,
            Effect::SingleFluidAcoustic => qp.single_fluid_acoustic,
            Effect::TwoFluidNonlinear => qp.two_fluid_nonlinear,
        }
    }
}

impl std::fmt::Display for Effect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One sample of a locus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocusPoint {
    /// m⁻³
    pub n0: f64,
    /// K
    pub te: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeCurve {
    pub effect: Effect,
    /// Field strength for the two field-dependent effects, T.
    pub fixed_b0: Option<f64>,
    /// Ordered by increasing n0, or by increasing T_e for vertical curves.
    pub points: Vec<LocusPoint>,
}

/// What to sample. The locus is clipped to the rectangle spanned by the two
/// ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRequest {
    pub effect: Effect,
    pub b0: Option<f64>,
    pub density_range: (f64, f64),
    pub temperature_range: (f64, f64),
    pub samples: usize,
    /// Z used by the two-fluid parameter.
    pub ion_charge_number: f64,
}

impl CurveRequest {
    pub fn new(effect: Effect, b0: Option<f64>) -> Self {
        CurveRequest {
            effect,
            b0,
            density_range: DEFAULT_DENSITY_RANGE,
            temperature_range: DEFAULT_TEMPERATURE_RANGE,
            samples: 100,
            ion_charge_number: 1.0,
        }
    }
}

/// Locus shape: T_e = coeff × n0^exponent, or a vertical line at n0 = coeff.
enum Locus {
    Power { coeff: f64, exponent: f64 },
    Vertical { n0: f64 },
}

fn locus(effect: Effect, b0: f64, z: f64, k: &PhysicalConstants) -> Locus {
    let kb = k.boltzmann;
    match effect {
        // T_F(n0) = ħ² (3π² n0)^(2/3) / (2 m_e k_B)
        Effect::FermiPressure => Locus::Power {
            coeff: params::fermi_temperature(1.0, k),
            exponent: 2.0 / 3.0,
        },
        // ħ ω_pe(n0) / k_B
        Effect::BohmDeBroglie => Locus::Power {
            coeff: k.planck_hbar * params::plasma_frequency(1.0, k) / kb,
            exponent: 0.5,
        },
        // ħ² ω_pe² / (m_e c² k_B)
        Effect::SingleFluidAlfven => Locus::Power {
            coeff: (k.planck_hbar * params::plasma_frequency(1.0, k)).powi(2)
                / (k.electron_mass * k.speed_of_light.powi(2) * kb),
            exponent: 1.0,
        },
        Effect::SingleFluidAcoustic => Locus::Power {
            coeff: k.bohr_magneton * b0 / kb,
            exponent: 0.0,
        },
        Effect::TwoFluidNonlinear => Locus::Vertical {
            n0: z * b0 / (k.bohr_magneton * k.vacuum_permeability),
        },
    }
}

fn check_range(field: &'static str, (lo, hi): (f64, f64)) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo {
        Ok(())
    } else {
        Err(Error::validation(field, format!("need 0 < low < high, got [{lo}, {hi}]")))
    }
}

fn log_space(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..samples)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == samples {
                hi
            } else {
                (a + (b - a) * i as f64 / (samples - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn curve_for(req: &CurveRequest, k: &PhysicalConstants) -> Result<RegimeCurve> {
    check_range("density_range", req.density_range)?;
    check_range("temperature_range", req.temperature_range)?;
    if req.samples < 2 {
        return Err(Error::validation("samples", format!("need at least 2, got {}", req.samples)));
    }
    let b0 = match (req.effect.needs_field(), req.b0) {
        (true, Some(b)) if b.is_finite() && b > 0.0 => b,
        (true, Some(b)) => return Err(Error::validation("b0", format!("must be > 0, got {b}"))),
        (true, None) => {
            return Err(Error::Curve(format!("{} curves need a magnetic field", req.effect)))
        }
        (false, Some(_)) => {
            return Err(Error::Curve(format!("{} curves do not depend on the magnetic field", req.effect)))
        }
        (false, None) => f64::NAN,
    };

    let (n_lo, n_hi) = req.density_range;
    let (t_lo, t_hi) = req.temperature_range;
    let unsatisfiable = || {
        Error::Curve(format!(
            "{} locus{} does not cross n0 in [{n_lo:e}, {n_hi:e}] m^-3, T_e in [{t_lo:e}, {t_hi:e}] K",
            req.effect,
            req.b0.map(|b| format!(" at B0 = {b:e} T")).unwrap_or_default()
        ))
    };

    let points = match locus(req.effect, b0, req.ion_charge_number, k) {
        Locus::Vertical { n0 } => {
            if n0 < n_lo || n0 > n_hi {
                return Err(unsatisfiable());
            }
            log_space(t_lo, t_hi, req.samples)
                .into_iter()
                .map(|te| LocusPoint { n0, te })
                .collect()
        }
        Locus::Power { coeff, exponent: 0.0 } => {
            if coeff < t_lo || coeff > t_hi {
                return Err(unsatisfiable());
            }
            log_space(n_lo, n_hi, req.samples)
                .into_iter()
                .map(|n0| LocusPoint { n0, te: coeff })
                .collect()
        }
        Locus::Power { coeff, exponent } => {
            // Clip [n_lo, n_hi] to where T_e(n0) stays inside [t_lo, t_hi].
            let lo = n_lo.max((t_lo / coeff).powf(1.0 / exponent));
            let hi = n_hi.min((t_hi / coeff).powf(1.0 / exponent));
            if !(lo < hi) {
                return Err(unsatisfiable());
            }
            log_space(lo, hi, req.samples)
                .into_iter()
                .map(|n0| LocusPoint { n0, te: coeff * n0.powf(exponent) })
                .collect()
        }
    };
    Ok(RegimeCurve { effect: req.effect, fixed_b0: req.b0, points })
}

/// All curves of the map: one per field-independent effect and one per
/// field for the two field-dependent effects. Curves that miss the window
/// are skipped.
pub fn regime_map(
    fields: &[f64],
    density_range: (f64, f64),
    temperature_range: (f64, f64),
    samples: usize,
    k: &PhysicalConstants,
) -> Result<Vec<RegimeCurve>> {
    let mut out = Vec::new();
    for effect in Effect::ALL {
        let field_list: Vec<Option<f64>> = if effect.needs_field() {
            fields.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for b0 in field_list {
            let req = CurveRequest { density_range, temperature_range, samples, ..CurveRequest::new(effect, b0) };
            match curve_for(&req, k) {
                Ok(c) => out.push(c),
                Err(Error::Curve(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Curve("no locus crosses the requested window".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Classical,
    /// Parameter within [`BOUNDARY_BAND`] of unity.
    Boundary,
    Quantum,
}

impl Side {
    pub fn of(parameter: f64) -> Side {
        if (parameter - 1.0).abs() <= BOUNDARY_BAND {
            Side::Boundary
        } else if parameter > 1.0 {
            Side::Quantum
        } else {
            Side::Classical
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub n0: f64,
    pub te: f64,
    pub b0: f64,
    pub parameters: QuantumParameters,
    /// One entry per effect, in [`Effect::ALL`] order.
    pub sides: Vec<(Effect, Side)>,
    pub warnings: Vec<RegimeWarning>,
}

impl RegimeReport {
    pub fn side(&self, effect: Effect) -> Side {
        self.sides.iter().find(|(e, _)| *e == effect).map(|(_, s)| *s).unwrap()
    }
}

/// Every parameter grows towards its quantum side (higher density or lower
/// temperature), so the quantum side is always parameter ≥ 1.
pub fn classify(comp: &PlasmaComposition, k: &PhysicalConstants) -> Result<RegimeReport> {
    let plasma = Plasma::new(*comp, *k)?;
    let qp = plasma.parameters;
    Ok(RegimeReport {
        n0: comp.electron_density,
        te: comp.electron_temperature,
        b0: comp.magnetic_field,
        parameters: qp,
        sides: Effect::ALL.iter().map(|&e| (e, Side::of(e.parameter(&qp)))).collect(),
        warnings: plasma.warnings(),
    })
}

pub const CSV_HEADER: &str = "effect,B0_tesla,n0_per_m3,Te_kelvin";

pub fn write_csv<W: Write>(curves: &[RegimeCurve], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for c in curves {
        let b0 = c.fixed_b0.map(|b| format!("{b:e}")).unwrap_or_default();
        for p in &c.points {
            writeln!(out, "{},{},{:e},{:e}", c.effect, b0, p.n0, p.te)?;
        }
    }
    Ok(())
}

fn color(effect: Effect) -> (&'static str, &'static str) {
    match effect {
        Effect::FermiPressure => ("#000000", "8,4"),
        Effect::BohmDeBroglie => ("#000000", "none"),
        Effect::SingleFluidAlfven => ("#000000", "2,3"),
        Effect::SingleFluidAcoustic => ("#1f4fd1", "none"),
        Effect::TwoFluidNonlinear => ("#d11f1f", "none"),
    }
}

/// Self-contained log-log SVG of the curves over the given window.
pub fn render_svg(
    curves: &[RegimeCurve],
    density_range: (f64, f64),
    temperature_range: (f64, f64),
) -> String {
    let (w, h, margin) = (720.0, 540.0, 70.0);
    let (x0, x1) = (density_range.0.log10(), density_range.1.log10());
    let (y0, y1) = (temperature_range.0.log10(), temperature_range.1.log10());
    let px = |n: f64| margin + (n.log10() - x0) / (x1 - x0) * (w - 2.0 * margin);
    let py = |t: f64| h - margin - (t.log10() - y0) / (y1 - y0) * (h - 2.0 * margin);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{margin}" y="{margin}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * margin,
        h - 2.0 * margin
    );
    for d in (x0.ceil() as i32..=x1.floor() as i32).step_by(2) {
        let x = px(10f64.powi(d));
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">1e{d}</text>"#,
            h - margin,
            h - margin + 5.0,
            h - margin + 20.0
        );
    }
    for d in y0.ceil() as i32..=y1.floor() as i32 {
        let y = py(10f64.powi(d));
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{margin}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">1e{d}</text>"#,
            margin - 5.0,
            margin - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n0 (m^-3)</text>"#,
        w / 2.0,
        h - 20.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.1}" text-anchor="middle" transform="rotate(-90 20 {:.1})">T_e (K)</text>"#,
        h / 2.0,
        h / 2.0
    );
    for c in curves {
        let (stroke, dash) = color(c.effect);
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", px(p.n0), py(p.te)))
            .collect();
        let label = match c.fixed_b0 {
            Some(b) => format!("{} (B0 = {b:e} T)", c.effect),
            None => c.effect.to_string(),
        };
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{stroke}" stroke-width="1.5" stroke-dasharray="{dash}" points="{}"><title>{label}</title></polyline>"#,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}
