//! C ABI over the `spinalfven` library.
//!
//! Conventions:
//! * every fallible function returns an [`SaStatus`] and writes results
//!   through out-pointers, which are left untouched on failure;
//! * the message for the most recent failure on the calling thread is
//!   available from [`sa_last_error_message`];
//! * all physics uses CODATA 2018 constants;
//! * envelopes are opaque handles created by `sa_envelope_new_*` and released
//!   with [`sa_envelope_free`]. A handle must not be used from two threads at
//!   once, but distinct handles are independent.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use spinalfven::dispersion::{self, CarrierWave, NlsCoefficients, Polarization};
use spinalfven::nls::{self, ConservedDiagnostics, Envelope, Grid, SolitonSpec, SolverOptions};
use spinalfven::regime::{self, Effect, Side};
use spinalfven::spin_fluid::{self, SpinPopulations};
use spinalfven::{DerivedQuantities, Error, Plasma, PlasmaComposition, QuantumParameters, CODATA_2018};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    Domain = 3,
    Resonance = 4,
    Soliton = 5,
    BlowUp = 6,
    Curve = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaPolarization {
    RightHand = 0,
    LeftHand = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaSide {
    Classical = 0,
    Boundary = 1,
    Quantum = 2,
}

/// SI units throughout: m⁻³, K, T, kg.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaComposition {
    pub electron_density: f64,
    pub electron_temperature: f64,
    pub ion_temperature: f64,
    pub magnetic_field: f64,
    pub ion_mass: f64,
    pub ion_charge_number: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaDerived {
    pub omega_pe: f64,
    pub omega_ce: f64,
    pub omega_ci: f64,
    pub alfven_speed: f64,
    pub sound_speed: f64,
    pub mass_density: f64,
    pub fermi_temperature: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaQuantumParameters {
    pub fermi_ratio: f64,
    pub bohm_debroglie: f64,
    pub single_fluid_alfven: f64,
    pub single_fluid_acoustic: f64,
    pub two_fluid_nonlinear: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaSpinPopulations {
    pub n_plus0: f64,
    pub n_minus0: f64,
    pub population_difference: f64,
    pub magnetization: f64,
    pub brillouin_factor: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaCarrierWave {
    pub wavenumber: f64,
    pub polarization: SaPolarization,
    pub omega: f64,
    pub group_velocity: f64,
    pub group_dispersion: f64,
    pub hall_parameter: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaNlsCoefficients {
    pub dispersion_coeff: f64,
    pub nonlinear_coeff: f64,
    pub classical_q: f64,
    pub spin_correction_factor: f64,
    pub background_field: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaDiagnostics {
    pub norm: f64,
    pub momentum: f64,
    pub hamiltonian: f64,
    pub gradient_norm: f64,
}

/// Quantum-side flags in the order Fermi pressure, Bohm–de Broglie,
/// single-fluid Alfvén, single-fluid acoustic, two-fluid nonlinear.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaRegime {
    pub parameters: SaQuantumParameters,
    pub sides: [SaSide; 5],
}

/// Opaque envelope handle.
pub struct SaEnvelope {
    inner: Envelope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SaStatus {
    match err {
        Error::Validation { .. } | Error::Config(_) => SaStatus::Validation,
        Error::Domain(_) => SaStatus::Domain,
        Error::Resonance { .. } => SaStatus::Resonance,
        Error::Soliton(_) => SaStatus::Soliton,
        Error::BlowUp { .. } => SaStatus::BlowUp,
        Error::Curve(_) => SaStatus::Curve,
        Error::Io(_) => SaStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SaStatus>) -> SaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_last_error("internal panic".into());
            SaStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, SaStatus>;
}

impl<T> OrStatus<T> for spinalfven::Result<T> {
    fn or_status(self) -> Result<T, SaStatus> {
        self.map_err(|e| {
            set_last_error(e.to_string());
            status_of(&e)
        })
    }
}

unsafe fn read<'a, T>(p: *const T, name: &str) -> Result<&'a T, SaStatus> {
    p.as_ref().ok_or_else(|| {
        set_last_error(format!("{name} is null"));
        SaStatus::NullPointer
    })
}

unsafe fn write<T>(p: *mut T, name: &str, value: T) -> Result<(), SaStatus> {
    if p.is_null() {
        set_last_error(format!("{name} is null"));
        return Err(SaStatus::NullPointer);
    }
    p.write(value);
    Ok(())
}

fn check_out<T>(p: *mut T, name: &str) -> Result<(), SaStatus> {
    if p.is_null() {
        set_last_error(format!("{name} is null"));
        Err(SaStatus::NullPointer)
    } else {
        Ok(())
    }
}

impl From<SaComposition> for PlasmaComposition {
    fn from(c: SaComposition) -> Self {
        PlasmaComposition {
            electron_density: c.electron_density,
            electron_temperature: c.electron_temperature,
            ion_temperature: c.ion_temperature,
            magnetic_field: c.magnetic_field,
            ion_mass: c.ion_mass,
            ion_charge_number: c.ion_charge_number,
        }
    }
}

impl From<DerivedQuantities> for SaDerived {
    fn from(d: DerivedQuantities) -> Self {
        SaDerived {
            omega_pe: d.omega_pe,
            omega_ce: d.omega_ce,
            omega_ci: d.omega_ci,
            alfven_speed: d.alfven_speed,
            sound_speed: d.sound_speed,
            mass_density: d.mass_density,
            fermi_temperature: d.fermi_temperature,
        }
    }
}

impl From<QuantumParameters> for SaQuantumParameters {
    fn from(q: QuantumParameters) -> Self {
        SaQuantumParameters {
            fermi_ratio: q.fermi_ratio,
            bohm_debroglie: q.bohm_debroglie,
            single_fluid_alfven: q.single_fluid_alfven,
            single_fluid_acoustic: q.single_fluid_acoustic,
            two_fluid_nonlinear: q.two_fluid_nonlinear,
        }
    }
}

impl From<SpinPopulations> for SaSpinPopulations {
    fn from(s: SpinPopulations) -> Self {
        SaSpinPopulations {
            n_plus0: s.n_plus0,
            n_minus0: s.n_minus0,
            population_difference: s.population_difference,
            magnetization: s.magnetization,
            brillouin_factor: s.brillouin_factor,
        }
    }
}

impl From<SaPolarization> for Polarization {
    fn from(p: SaPolarization) -> Self {
        match p {
            SaPolarization::RightHand => Polarization::RightHand,
            SaPolarization::LeftHand => Polarization::LeftHand,
        }
    }
}

impl From<CarrierWave> for SaCarrierWave {
    fn from(c: CarrierWave) -> Self {
        SaCarrierWave {
            wavenumber: c.wavenumber,
            polarization: match c.polarization {
                Polarization::RightHand => SaPolarization::RightHand,
                Polarization::LeftHand => SaPolarization::LeftHand,
            },
            omega: c.omega,
            group_velocity: c.group_velocity,
            group_dispersion: c.group_dispersion,
            hall_parameter: c.hall_parameter,
        }
    }
}

impl From<NlsCoefficients> for SaNlsCoefficients {
    fn from(c: NlsCoefficients) -> Self {
        SaNlsCoefficients {
            dispersion_coeff: c.dispersion_coeff,
            nonlinear_coeff: c.nonlinear_coeff,
            classical_q: c.classical_q,
            spin_correction_factor: c.spin_correction_factor,
            background_field: c.background_field,
        }
    }
}

impl From<SaNlsCoefficients> for NlsCoefficients {
    fn from(c: SaNlsCoefficients) -> Self {
        NlsCoefficients {
            dispersion_coeff: c.dispersion_coeff,
            nonlinear_coeff: c.nonlinear_coeff,
            classical_q: c.classical_q,
            spin_correction_factor: c.spin_correction_factor,
            background_field: c.background_field,
        }
    }
}

impl From<ConservedDiagnostics> for SaDiagnostics {
    fn from(d: ConservedDiagnostics) -> Self {
        SaDiagnostics { norm: d.norm, momentum: d.momentum, hamiltonian: d.hamiltonian, gradient_norm: d.gradient_norm }
    }
}

unsafe fn plasma(comp: *const SaComposition) -> Result<Plasma, SaStatus> {
    let comp = *read(comp, "composition")?;
    Plasma::new(comp.into(), CODATA_2018).or_status()
}

unsafe fn carrier(comp: *const SaComposition, k: f64, pol: SaPolarization) -> Result<(Plasma, CarrierWave), SaStatus> {
    let p = plasma(comp)?;
    let c = dispersion::dispersion(k, pol.into(), &p).or_status()?;
    Ok((p, c))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sa_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Hydrogen plasma (Z = 1, m_i = m_p).
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sa_hydrogen(n0: f64, te: f64, ti: f64, b0: f64, out: *mut SaComposition) -> SaStatus {
    guard(|| {
        let c = PlasmaComposition::hydrogen(&CODATA_2018, n0, te, ti, b0);
        c.validate().or_status()?;
        write(
            out,
            "out",
            SaComposition {
                electron_density: c.electron_density,
                electron_temperature: c.electron_temperature,
                ion_temperature: c.ion_temperature,
                magnetic_field: c.magnetic_field,
                ion_mass: c.ion_mass,
                ion_charge_number: c.ion_charge_number,
            },
        )
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_derive(comp: *const SaComposition, out: *mut SaDerived) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = plasma(comp)?;
        write(out, "out", p.derived.into())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_quantum_parameters(comp: *const SaComposition, out: *mut SaQuantumParameters) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = plasma(comp)?;
        write(out, "out", p.parameters.into())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_equilibrium_populations(comp: *const SaComposition, out: *mut SaSpinPopulations) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let p = plasma(comp)?;
        write(out, "out", spin_fluid::equilibrium_populations(&p).into())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_dispersion(
    comp: *const SaComposition,
    k: f64,
    polarization: SaPolarization,
    out: *mut SaCarrierWave,
) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let (_, c) = carrier(comp, k, polarization)?;
        write(out, "out", c.into())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_nls_coefficients(
    comp: *const SaComposition,
    k: f64,
    polarization: SaPolarization,
    out: *mut SaNlsCoefficients,
) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let (p, c) = carrier(comp, k, polarization)?;
        let coeffs = dispersion::nls_coefficients(&c, &p).or_status()?;
        write(out, "out", coeffs.into())
    })
}

/// Modulational instability growth rate of a uniform background `a0` (T) at
/// perturbation wavenumber `kappa` (rad/m).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_mi_rate(coeffs: *const SaNlsCoefficients, a0: f64, kappa: f64, out: *mut f64) -> SaStatus {
    guard(|| {
        let c: NlsCoefficients = (*read(coeffs, "coeffs")?).into();
        write(out, "out", nls::modulational_instability_rate(&c, a0, kappa))
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_classify(comp: *const SaComposition, out: *mut SaRegime) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let comp = *read(comp, "composition")?;
        let report = regime::classify(&comp.into(), &CODATA_2018).or_status()?;
        let mut sides = [SaSide::Classical; 5];
        for (slot, effect) in sides.iter_mut().zip(Effect::ALL) {
            *slot = match report.side(effect) {
                Side::Classical => SaSide::Classical,
                Side::Boundary => SaSide::Boundary,
                Side::Quantum => SaSide::Quantum,
            };
        }
        write(out, "out", SaRegime { parameters: report.parameters.into(), sides })
    })
}

/// Soliton of peak `amplitude` (T) centred at `center` (m) on a periodic box
/// of `points` samples and `length` metres.
///
/// # Safety
/// Pointers must be null or valid. The handle written to `out` must be
/// released with [`sa_envelope_free`].
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_new_soliton(
    coeffs: *const SaNlsCoefficients,
    amplitude: f64,
    center: f64,
    phase: f64,
    points: usize,
    length: f64,
    out: *mut *mut SaEnvelope,
) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let c: NlsCoefficients = (*read(coeffs, "coeffs")?).into();
        let grid = Grid::new(points, length).or_status()?;
        let spec = SolitonSpec { peak_amplitude: amplitude, center, phase };
        let inner = nls::initialize_soliton(&spec, &c, grid, SolverOptions::default()).or_status()?;
        write(out, "out", Box::into_raw(Box::new(SaEnvelope { inner })))
    })
}

/// Uniform background `a0` (T) with relative cosine seed `epsilon` on mode `mode`.
///
/// # Safety
/// As for [`sa_envelope_new_soliton`].
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_new_uniform(
    coeffs: *const SaNlsCoefficients,
    a0: f64,
    epsilon: f64,
    mode: i64,
    points: usize,
    length: f64,
    out: *mut *mut SaEnvelope,
) -> SaStatus {
    guard(|| {
        check_out(out, "out")?;
        let c: NlsCoefficients = (*read(coeffs, "coeffs")?).into();
        let grid = Grid::new(points, length).or_status()?;
        let inner = nls::uniform_background(a0, epsilon, mode, &c, grid, SolverOptions::default()).or_status()?;
        write(out, "out", Box::into_raw(Box::new(SaEnvelope { inner })))
    })
}

/// # Safety
/// `env` must be null or a handle from `sa_envelope_new_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_free(env: *mut SaEnvelope) {
    if !env.is_null() {
        drop(Box::from_raw(env));
    }
}

unsafe fn envelope<'a>(env: *mut SaEnvelope) -> Result<&'a mut Envelope, SaStatus> {
    env.as_mut().map(|e| &mut e.inner).ok_or_else(|| {
        set_last_error("envelope is null".into());
        SaStatus::NullPointer
    })
}

/// Advances `steps` Strang steps of `dt` seconds.
///
/// # Safety
/// `env` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_advance(env: *mut SaEnvelope, dt: f64, steps: usize) -> SaStatus {
    guard(|| envelope(env)?.advance(dt, steps).or_status())
}

/// Largest stable step, s.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_max_time_step(env: *mut SaEnvelope, out: *mut f64) -> SaStatus {
    guard(|| {
        let e = envelope(env)?;
        write(out, "out", e.max_time_step())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_time(env: *mut SaEnvelope, out: *mut f64) -> SaStatus {
    guard(|| {
        let e = envelope(env)?;
        write(out, "out", e.time())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_points(env: *mut SaEnvelope, out: *mut usize) -> SaStatus {
    guard(|| {
        let e = envelope(env)?;
        write(out, "out", e.grid().points())
    })
}

/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_diagnostics(env: *mut SaEnvelope, out: *mut SaDiagnostics) -> SaStatus {
    guard(|| {
        let e = envelope(env)?;
        write(out, "out", e.diagnostics().into())
    })
}

/// Copies B₁ (T) into `re` and `im`, each of `len` elements; `len` must
/// equal the grid size.
///
/// # Safety
/// `re` and `im` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn sa_envelope_amplitude(env: *mut SaEnvelope, re: *mut f64, im: *mut f64, len: usize) -> SaStatus {
    guard(|| {
        let e = envelope(env)?;
        check_out(re, "re")?;
        check_out(im, "im")?;
        if len != e.grid().points() {
            set_last_error(format!("buffer length {len} does not match {} grid points", e.grid().points()));
            return Err(SaStatus::Validation);
        }
        let amp: Vec<Complex64> = e.amplitude();
        for (j, b) in amp.iter().enumerate() {
            *re.add(j) = b.re;
            *im.add(j) = b.im;
        }
        Ok(())
    })
}
