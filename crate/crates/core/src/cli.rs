//! Command-line front end. Every number printed here comes from a library
//! operation; this module only parses, orchestrates and formats.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{CarrierBlock, CompositionBlock, RunConfig};
use crate::constants::{PhysicalConstants, CODATA_2018};
use crate::dispersion::{self, CarrierWave, NlsCoefficients};
use crate::error::{Error, Result};
use crate::nls::{self, ConservedDiagnostics, Envelope, Grid, SolitonSpec, SolverOptions};
use crate::plasma::{Plasma, RegimeWarning};
use crate::regime::{self, Effect};
use crate::spin_fluid::{self, SpinPopulations};
use crate::units::{self, Dimension};
use crate::{DerivedQuantities, QuantumParameters};

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_RUNTIME
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinalfven", version, about = "Two-fluid electron spin effects on Alfvén waves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived quantities, quantum parameters and spin populations.
    Params(ParamsArgs),
    /// Unity loci of the quantum parameters in the (n0, T_e) plane.
    RegimeMap(RegimeMapArgs),
    /// Scan ω(k), v_g and v_g' along the Hall-dispersive Alfvén branch.
    Dispersion(DispersionArgs),
    /// Envelope equation coefficients for one carrier wave.
    Coefficients(CoefficientsArgs),
    /// Integrate the envelope equation.
    Evolve(EvolveArgs),
    /// Run several evolve configurations concurrently.
    Sweep(SweepArgs),
}

/// Plasma composition. Every value needs a unit, e.g. `--n0 "1e26 m^-3"`,
/// `--te "10 eV"`, `--b0 "1e-3 T"`.
#[derive(Debug, Clone, Default, Args)]
pub struct CompositionArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub n0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub te: Option<String>,
    /// Defaults to T_e.
    #[arg(long, allow_hyphen_values = true)]
    pub ti: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b0: Option<String>,
    /// `hydrogen` or `custom`.
    #[arg(long)]
    pub ion: Option<String>,
    #[arg(long)]
    pub ion_mass: Option<String>,
    #[arg(long)]
    pub ion_charge: Option<f64>,
}

impl CompositionArgs {
    fn file(&self) -> Result<RunConfig> {
        match &self.config {
            Some(p) => RunConfig::load(p),
            None => Ok(RunConfig::default()),
        }
    }

    fn block(&self) -> CompositionBlock {
        CompositionBlock {
            n0: self.n0.clone(),
            te: self.te.clone(),
            ti: self.ti.clone(),
            b0: self.b0.clone(),
            ion: self.ion.clone(),
            ion_mass: self.ion_mass.clone(),
            ion_charge: self.ion_charge,
        }
    }

    fn plasma(&self, cfg: &RunConfig, k: &PhysicalConstants) -> Result<Plasma> {
        let comp = cfg.composition.merged(&self.block()).resolve(k)?;
        Plasma::new(comp, *k)
    }
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    /// Also write a `quantity,value,unit` CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegimeMapArgs {
    /// Field strengths for the field-dependent families, with unit.
    #[arg(long = "b0", value_delimiter = ',', default_values_t = vec!["1e-3 T".to_string(), "1 T".to_string(), "1e3 T".to_string()])]
    pub fields: Vec<String>,
    #[arg(long, default_value = "1e20 m^-3")]
    pub n_min: String,
    #[arg(long, default_value = "1e36 m^-3")]
    pub n_max: String,
    #[arg(long, default_value = "1e2 K")]
    pub t_min: String,
    #[arg(long, default_value = "1e9 K")]
    pub t_max: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CarrierArgs {
    #[arg(long)]
    pub k: Option<String>,
    /// `right` or `left`.
    #[arg(long)]
    pub polarization: Option<String>,
}

impl CarrierArgs {
    fn block(&self) -> CarrierBlock {
        CarrierBlock { k: self.k.clone(), polarization: self.polarization.clone() }
    }
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[arg(long, default_value = "right")]
    pub polarization: String,
    /// Lower end of the scan as k c_A / ω_ci.
    #[arg(long, default_value_t = 1e-3)]
    pub x_min: f64,
    /// Upper end of the scan as k c_A / ω_ci.
    #[arg(long, default_value_t = 0.9)]
    pub x_max: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoefficientsArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[command(flatten)]
    pub carrier: CarrierArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub composition: CompositionArgs,
    #[command(flatten)]
    pub carrier: CarrierArgs,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub snapshot_every: Option<usize>,
    #[arg(long)]
    pub timeseries: Option<PathBuf>,
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Run configurations; each must name its own output paths.
    #[arg(required = true)]
    pub configs: Vec<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let k = CODATA_2018;
    match cli.command {
        Command::Params(a) => cmd_params(&a, &k, out),
        Command::RegimeMap(a) => cmd_regime_map(&a, &k, out),
        Command::Dispersion(a) => cmd_dispersion(&a, &k, out),
        Command::Coefficients(a) => cmd_coefficients(&a, &k, out),
        Command::Evolve(a) => {
            let mut cfg = a.composition.file()?;
            apply_evolve_overrides(&mut cfg, &a);
            let summary = cmd_evolve(&cfg, &k)?;
            write_summary(out, &summary)
        }
        Command::Sweep(a) => cmd_sweep(&a, &k, out),
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsReport {
    pub derived: DerivedQuantities,
    pub parameters: QuantumParameters,
    pub populations: SpinPopulations,
    pub warnings: Vec<RegimeWarning>,
}

fn params_rows(r: &ParamsReport) -> Vec<(&'static str, f64, &'static str)> {
    let d = &r.derived;
    let q = &r.parameters;
    let s = &r.populations;
    vec![
        ("omega_pe", d.omega_pe, "rad/s"),
        ("omega_ce", d.omega_ce, "rad/s"),
        ("omega_ci", d.omega_ci, "rad/s"),
        ("alfven_speed", d.alfven_speed, "m/s"),
        ("sound_speed", d.sound_speed, "m/s"),
        ("mass_density", d.mass_density, "kg/m^3"),
        ("fermi_temperature", d.fermi_temperature, "K"),
        ("fermi_ratio", q.fermi_ratio, "1"),
        ("bohm_debroglie", q.bohm_debroglie, "1"),
        ("single_fluid_alfven", q.single_fluid_alfven, "1"),
        ("single_fluid_acoustic", q.single_fluid_acoustic, "1"),
        ("two_fluid_nonlinear", q.two_fluid_nonlinear, "1"),
        ("n_plus0", s.n_plus0, "m^-3"),
        ("n_minus0", s.n_minus0, "m^-3"),
        ("population_difference", s.population_difference, "m^-3"),
        ("magnetization", s.magnetization, "A/m"),
        ("brillouin_factor", s.brillouin_factor, "1"),
    ]
}

pub fn cmd_params(a: &ParamsArgs, k: &PhysicalConstants, out: &mut dyn Write) -> Result<()> {
    let cfg = a.composition.file()?;
    let plasma = a.composition.plasma(&cfg, k)?;
    let report = ParamsReport {
        derived: plasma.derived,
        parameters: plasma.parameters,
        populations: spin_fluid::equilibrium_populations(&plasma),
        warnings: plasma.warnings(),
    };
    let rows = params_rows(&report);
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
        writeln!(out)?;
    } else {
        for (name, v, unit) in &rows {
            writeln!(out, "{name:<24} {v:e} {unit}")?;
        }
        for w in &report.warnings {
            writeln!(out, "warning: {w}")?;
        }
    }
    if let Some(path) = &a.csv {
        let mut f = BufWriter::new(File::create(path)?);
        writeln!(f, "quantity,value,unit")?;
        for (name, v, unit) in &rows {
            writeln!(f, "{name},{v:e},{unit}")?;
        }
        f.flush()?;
    }
    Ok(())
}

fn range(
    field: &'static str,
    dim: Dimension,
    lo: &str,
    hi: &str,
    k: &PhysicalConstants,
) -> Result<(f64, f64)> {
    let lo = units::parse(field, dim, lo, k)?;
    let hi = units::parse(field, dim, hi, k)?;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::validation(field, format!("empty range [{lo:e}, {hi:e}]")));
    }
    Ok((lo, hi))
}

#[derive(Serialize)]
struct RegimeMapMeta<'a> {
    fermi_temperature_mass: &'static str,
    ion_charge_number: f64,
    fields_tesla: &'a [f64],
    density_range_per_m3: (f64, f64),
    temperature_range_kelvin: (f64, f64),
    samples: usize,
    constants: &'a PhysicalConstants,
}

pub fn cmd_regime_map(a: &RegimeMapArgs, k: &PhysicalConstants, out: &mut dyn Write) -> Result<()> {
    let n_range = range("density_range", Dimension::Density, &a.n_min, &a.n_max, k)?;
    let t_range = range("temperature_range", Dimension::Temperature, &a.t_min, &a.t_max, k)?;
    let fields = a
        .fields
        .iter()
        .map(|s| units::parse("b0", Dimension::MagneticField, s, k))
        .collect::<Result<Vec<_>>>()?;
    let curves = regime::regime_map(&fields, n_range, t_range, a.samples, k)?;
    match &a.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            regime::write_csv(&curves, &mut f)?;
            f.flush()?;
            let meta = RegimeMapMeta {
                fermi_temperature_mass: "electron",
                ion_charge_number: 1.0,
                fields_tesla: &fields,
                density_range_per_m3: n_range,
                temperature_range_kelvin: t_range,
                samples: a.samples,
                constants: k,
            };
            let meta_path = sidecar(path, "meta.json");
            fs::write(&meta_path, serde_json::to_string_pretty(&meta).map_err(std::io::Error::from)?)?;
            let missing: Vec<String> = Effect::ALL
                .iter()
                .flat_map(|&e| {
                    let fs: Vec<Option<f64>> =
                        if e.needs_field() { fields.iter().copied().map(Some).collect() } else { vec![None] };
                    fs.into_iter().map(move |b| (e, b))
                })
                .filter(|(e, b)| !curves.iter().any(|c| c.effect == *e && c.fixed_b0 == *b))
                .map(|(e, b)| match b {
                    Some(b) => format!("{e} at B0 = {b:e} T"),
                    None => e.to_string(),
                })
                .collect();
            writeln!(out, "wrote {} curves to {}", curves.len(), path.display())?;
            for m in missing {
                writeln!(out, "note: {m} does not cross the window")?;
            }
        }
        None => regime::write_csv(&curves, &mut *out)?,
    }
    if let Some(svg) = &a.svg {
        fs::write(svg, regime::render_svg(&curves, n_range, t_range))?;
    }
    Ok(())
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn cmd_dispersion(a: &DispersionArgs, k: &PhysicalConstants, out: &mut dyn Write) -> Result<()> {
    let cfg = a.composition.file()?;
    let plasma = a.composition.plasma(&cfg, k)?;
    let pol: dispersion::Polarization = a.polarization.parse()?;
    if !(a.x_min > 0.0 && a.x_max > a.x_min) {
        return Err(Error::validation("x_range", format!("empty range [{}, {}]", a.x_min, a.x_max)));
    }
    if a.samples < 2 {
        return Err(Error::validation("samples", "need at least 2"));
    }
    let scale = plasma.derived.omega_ci / plasma.derived.alfven_speed;
    let mut rows = Vec::with_capacity(a.samples);
    for i in 0..a.samples {
        let x = a.x_min * (a.x_max / a.x_min).powf(i as f64 / (a.samples - 1) as f64);
        rows.push(dispersion::dispersion(x * scale, pol, &plasma)?);
    }
    let write = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "k_rad_per_m,omega_rad_per_s,v_g_m_per_s,v_g_prime_m2_per_s,hall_parameter")?;
        for c in &rows {
            writeln!(
                w,
                "{:e},{:e},{:e},{:e},{:e}",
                c.wavenumber, c.omega, c.group_velocity, c.group_dispersion, c.hall_parameter
            )?;
        }
        Ok(())
    };
    match &a.out {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            write(&mut f)?;
            f.flush()?;
        }
        None => write(out)?,
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CoefficientsReport {
    pub carrier: CarrierWave,
    pub coefficients: NlsCoefficients,
    /// −k c_A³ / (4 c_s²)
    pub classical_q_weak_field: f64,
    pub focusing: bool,
    pub alfven_speed_factor: f64,
    pub warnings: Vec<RegimeWarning>,
}

fn carrier_and_coefficients(
    plasma: &Plasma,
    carrier: &CarrierBlock,
    k: &PhysicalConstants,
) -> Result<(CarrierWave, NlsCoefficients)> {
    let (wavenumber, pol) = carrier.resolve(k)?;
    let wave = dispersion::dispersion(wavenumber, pol, plasma)?;
    let coeffs = dispersion::nls_coefficients(&wave, plasma)?;
    Ok((wave, coeffs))
}

pub fn cmd_coefficients(a: &CoefficientsArgs, k: &PhysicalConstants, out: &mut dyn Write) -> Result<()> {
    let cfg = a.composition.file()?;
    let plasma = a.composition.plasma(&cfg, k)?;
    let carrier = cfg.carrier.merged(&a.carrier.block());
    let (wave, coeffs) = carrier_and_coefficients(&plasma, &carrier, k)?;
    let report = CoefficientsReport {
        carrier: wave,
        coefficients: coeffs,
        classical_q_weak_field: dispersion::classical_q_weak_field(wave.wavenumber, &plasma),
        focusing: coeffs.is_focusing(),
        alfven_speed_factor: dispersion::spin_alfven_speed_factor(&plasma),
        warnings: plasma.warnings(),
    };
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from)?;
        writeln!(out)?;
        return Ok(());
    }
    let rows = [
        ("k", wave.wavenumber, "rad/m"),
        ("omega", wave.omega, "rad/s"),
        ("group_velocity", wave.group_velocity, "m/s"),
        ("group_dispersion", wave.group_dispersion, "m^2/s"),
        ("hall_parameter", wave.hall_parameter, "1"),
        ("dispersion_coeff", coeffs.dispersion_coeff, "m^2/s"),
        ("nonlinear_coeff", coeffs.nonlinear_coeff, "rad/s"),
        ("classical_q", coeffs.classical_q, "rad/s"),
        ("classical_q_weak_field", report.classical_q_weak_field, "rad/s"),
        ("spin_correction_factor", coeffs.spin_correction_factor, "1"),
        ("alfven_speed_factor", report.alfven_speed_factor, "1"),
    ];
    for (name, v, unit) in rows {
        writeln!(out, "{name:<24} {v:e} {unit}")?;
    }
    writeln!(out, "{:<24} {}", "focusing", report.focusing)?;
    for w in &report.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

fn apply_evolve_overrides(cfg: &mut RunConfig, a: &EvolveArgs) {
    cfg.composition = cfg.composition.merged(&a.composition.block());
    cfg.carrier = cfg.carrier.merged(&a.carrier.block());
    if let Some(v) = a.steps {
        cfg.solver.steps = Some(v);
    }
    if let Some(v) = &a.dt {
        cfg.solver.dt = Some(v.clone());
    }
    if let Some(v) = a.points {
        cfg.solver.points = Some(v);
    }
    if let Some(v) = a.snapshot_every {
        cfg.solver.snapshot_every = Some(v);
    }
    if let Some(v) = &a.timeseries {
        cfg.output.timeseries = Some(v.clone());
    }
    if let Some(v) = &a.snapshots {
        cfg.output.snapshots = Some(v.clone());
    }
}

/// A fully validated evolve run.
pub struct EvolvePlan {
    pub envelope: Envelope,
    pub dt: f64,
    pub steps: usize,
    pub snapshot_every: Option<usize>,
    pub timeseries: PathBuf,
    pub snapshots: Option<PathBuf>,
}

pub fn plan_evolve(cfg: &RunConfig, k: &PhysicalConstants) -> Result<EvolvePlan> {
    let comp = cfg.composition.resolve(k)?;
    let plasma = Plasma::new(comp, *k)?;
    let (_, coeffs) = carrier_and_coefficients(&plasma, &cfg.carrier, k)?;

    let s = &cfg.solver;
    let points = s.points.unwrap_or(1024);
    let steps = s.steps.ok_or_else(|| Error::validation("steps", "missing"))?;
    let options = SolverOptions {
        cfl_safety: s.cfl_safety.unwrap_or(2.0),
        dealias: s.dealias.unwrap_or(false),
        reference_length: None,
    };

    let envelope = match (&cfg.initial.soliton, &cfg.initial.uniform) {
        (Some(sol), None) => {
            let peak = units::parse("peak_amplitude", Dimension::MagneticField, &sol.peak_amplitude, k)?;
            let probe = SolitonSpec { peak_amplitude: peak, center: 0.0, phase: sol.phase };
            let width = probe.width(&coeffs)?;
            let length = domain_length(s, Some(width), k)?;
            let grid = Grid::new(points, length)?;
            let center = match &sol.center {
                Some(c) => units::parse("center", Dimension::Length, c, k)?,
                None => 0.5 * length,
            };
            nls::initialize_soliton(&SolitonSpec { center, ..probe }, &coeffs, grid, options)?
        }
        (None, Some(u)) => {
            let amp = units::parse("amplitude", Dimension::MagneticField, &u.amplitude, k)?;
            let grid = Grid::new(points, domain_length(s, None, k)?)?;
            nls::uniform_background(amp, u.perturbation, u.mode, &coeffs, grid, options)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::validation("initial", "give either a soliton or a uniform block, not both"))
        }
        (None, None) => return Err(Error::validation("initial", "missing initial condition")),
    };

    let dt = match &s.dt {
        Some(t) => units::parse("dt", Dimension::Time, t, k)?,
        None => envelope.suggested_time_step(),
    };
    if !(dt.is_finite() && dt != 0.0) {
        return Err(Error::validation("dt", format!("must be finite and nonzero, got {dt:e}")));
    }
    if dt.abs() > envelope.max_time_step() {
        return Err(Error::validation(
            "dt",
            format!("{dt:e} s exceeds the splitting guard {:e} s", envelope.max_time_step()),
        ));
    }
    let snapshot_every = match s.snapshot_every {
        Some(0) => return Err(Error::validation("snapshot_every", "must be >= 1")),
        other => other,
    };
    let timeseries = cfg
        .output
        .timeseries
        .clone()
        .ok_or_else(|| Error::validation("timeseries", "missing output path"))?;
    if snapshot_every.is_some() && cfg.output.snapshots.is_none() {
        return Err(Error::validation("snapshots", "snapshot_every is set but no snapshot directory"));
    }
    Ok(EvolvePlan { envelope, dt, steps, snapshot_every, timeseries, snapshots: cfg.output.snapshots.clone() })
}

fn domain_length(s: &crate::config::SolverBlock, width: Option<f64>, k: &PhysicalConstants) -> Result<f64> {
    match (&s.length, s.length_widths, width) {
        (Some(l), None, _) => units::parse("length", Dimension::Length, l, k),
        (None, Some(n), Some(w)) => Ok(n * w),
        (None, Some(_), None) => Err(Error::validation("length_widths", "only valid with a soliton initial condition")),
        (Some(_), Some(_), _) => Err(Error::validation("length", "give length or length_widths, not both")),
        (None, None, _) => Err(Error::validation("length", "missing")),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolveSummary {
    pub steps: usize,
    pub time: f64,
    pub norm_drift: f64,
    pub momentum_drift: f64,
    pub hamiltonian_drift: f64,
    pub timeseries: PathBuf,
}

fn write_snapshot(dir: &Path, env: &Envelope) -> Result<()> {
    let path = dir.join(format!("snapshot_{:08}.csv", env.steps_taken()));
    let mut f = BufWriter::new(File::create(path)?);
    writeln!(f, "zeta,re_amp,im_amp,abs_amp")?;
    let amp: Vec<Complex64> = env.amplitude();
    for (z, b) in env.grid().zeta_values().iter().zip(&amp) {
        writeln!(f, "{:e},{:e},{:e},{:e}", z, b.re, b.im, b.norm())?;
    }
    f.flush()?;
    Ok(())
}

fn write_row(w: &mut dyn Write, env: &Envelope, d: &ConservedDiagnostics) -> std::io::Result<()> {
    writeln!(
        w,
        "{},{:e},{:e},{:e},{:e},{:e}",
        env.steps_taken(),
        env.time(),
        d.norm,
        d.momentum,
        d.hamiltonian,
        env.max_amplitude()
    )
}

pub fn cmd_evolve(cfg: &RunConfig, k: &PhysicalConstants) -> Result<EvolveSummary> {
    let EvolvePlan { mut envelope, dt, steps, snapshot_every, timeseries, snapshots } = plan_evolve(cfg, k)?;
    if let Some(parent) = timeseries.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    if let Some(dir) = &snapshots {
        fs::create_dir_all(dir)?;
    }
    let mut ts = BufWriter::new(File::create(&timeseries)?);
    writeln!(ts, "step,t,norm,momentum,hamiltonian,max_amp")?;
    let initial = envelope.diagnostics();
    write_row(&mut ts, &envelope, &initial)?;
    let snap = |env: &Envelope| -> Result<()> {
        match (&snapshots, snapshot_every) {
            (Some(dir), Some(every)) if (env.steps_taken() as usize).is_multiple_of(every) || env.steps_taken() as usize == steps => {
                write_snapshot(dir, env)
            }
            _ => Ok(()),
        }
    };
    snap(&envelope)?;
    let mut last = initial;
    for _ in 0..steps {
        if let Err(e) = envelope.step(dt) {
            writeln!(ts, "# FAILED: {e}")?;
            ts.flush()?;
            return Err(e);
        }
        last = envelope.diagnostics();
        write_row(&mut ts, &envelope, &last)?;
        snap(&envelope)?;
    }
    ts.flush()?;
    let (norm_drift, momentum_drift, hamiltonian_drift) = last.drift_from(&initial);
    Ok(EvolveSummary {
        steps,
        time: envelope.time(),
        norm_drift,
        momentum_drift,
        hamiltonian_drift,
        timeseries,
    })
}

fn write_summary(out: &mut dyn Write, s: &EvolveSummary) -> Result<()> {
    writeln!(out, "{}: {} steps, t = {:e} s", s.timeseries.display(), s.steps, s.time)?;
    writeln!(out, "  norm drift         {:e}", s.norm_drift)?;
    writeln!(out, "  momentum drift     {:e}", s.momentum_drift)?;
    writeln!(out, "  hamiltonian drift  {:e}", s.hamiltonian_drift)?;
    Ok(())
}

pub fn cmd_sweep(a: &SweepArgs, k: &PhysicalConstants, out: &mut dyn Write) -> Result<()> {
    let configs = a.configs.iter().map(|p| RunConfig::load(p)).collect::<Result<Vec<_>>>()?;
    // Validate everything, and output-path disjointness, before any run starts.
    let mut seen = std::collections::HashSet::new();
    for (cfg, path) in configs.iter().zip(&a.configs) {
        let plan = plan_evolve(cfg, k).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        for p in std::iter::once(plan.timeseries).chain(plan.snapshots) {
            if !seen.insert(p.clone()) {
                return Err(Error::validation("output", format!("{} is used by more than one run", p.display())));
            }
        }
    }
    let results: Vec<Result<EvolveSummary>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs.iter().map(|cfg| scope.spawn(move || cmd_evolve(cfg, k))).collect();
        handles.into_iter().map(|h| h.join().expect("evolve thread panicked")).collect()
    });
    let mut first_err = None;
    for (r, path) in results.into_iter().zip(&a.configs) {
        match r {
            Ok(s) => write_summary(out, &s)?,
            Err(e) => {
                writeln!(out, "{}: FAILED: {e}", path.display())?;
                first_err.get_or_insert(e);
            }
        }
    }
    first_err.map_or(Ok(()), Err)
}
