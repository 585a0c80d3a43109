use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::dispersion::NlsCoefficients;
use crate::error::{Error, Result};

/// Nonlinear phase per step, rad, targeted by [`Envelope::suggested_time_step`].
pub const MAX_NONLINEAR_PHASE: f64 = 0.01;

/// Uniform periodic grid ζ_j = j L / N, j = 0..N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    points: usize,
    length: f64,
}

impl Grid {
    pub fn new(points: usize, length: f64) -> Result<Self> {
        if points < 16 || !points.is_power_of_two() {
            return Err(Error::validation(
                "grid_points",
                format!("must be a power of two and >= 16, got {points}"),
            ));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::validation("domain_length", format!("must be > 0, got {length}")));
        }
        Ok(Grid { points, length })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    pub fn zeta(&self, j: usize) -> f64 {
        j as f64 * self.spacing()
    }

    pub fn zeta_values(&self) -> Vec<f64> {
        (0..self.points).map(|j| self.zeta(j)).collect()
    }

    /// Signed mode number of FFT bin `j`, in [−N/2, N/2).
    pub fn mode_number(&self, j: usize) -> i64 {
        let n = self.points as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    /// FFT bin holding signed mode number `m`.
    pub fn bin(&self, m: i64) -> usize {
        m.rem_euclid(self.points as i64) as usize
    }

    /// κ_j = 2π m_j / L, rad/m.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.points)
            .map(|j| 2.0 * PI * self.mode_number(j) as f64 / self.length)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Upper bound on |dt| |v_g′| / Δζ². The linear substep is exact, so
    /// this only limits the splitting error.
    pub cfl_safety: f64,
    /// Zero modes with |m| > N/3 after each linear substep.
    pub dealias: bool,
    /// Length unit of the scaled solver variables. Defaults to L / 2π, which
    /// makes the scaled wavenumbers integers.
    pub reference_length: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { cfl_safety: 2.0, dealias: false, reference_length: None }
    }
}

/// Residual of the envelope equation for a trial field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// max_j |i ∂_t B + (v_g′/2) ∂_ζ² B + Q |B|² B / B₀²|
    pub max_residual: f64,
    /// Largest pointwise magnitude among the three terms.
    pub max_term: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        self.max_residual / self.max_term
    }
}

/// Solver state for one envelope.
///
/// Internally the field is stored as u = B₁/B₀ on the scaled coordinate
/// ξ = ζ/ℓ and advanced in scaled time τ = t/T₀ with T₀ = ℓ²/|v_g′|, where
/// the equation reads i u_τ ± ½ u_ξξ + (Q T₀) |u|² u = 0. Everything exposed
/// through the public API is in SI units.
pub struct Envelope {
    grid: Grid,
    coeffs: NlsCoefficients,
    options: SolverOptions,
    u: Vec<Complex64>,
    time: f64,
    steps: u64,
    time_unit: f64,
    /// (v_g′/2) T₀ / ℓ²
    scaled_dispersion: f64,
    /// Q T₀
    scaled_nonlinearity: f64,
    /// Scaled κ², one per FFT bin.
    kappa_sq: Vec<f64>,
    keep: Vec<bool>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
    linear_cache: Option<(u64, Vec<Complex64>)>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope")
            .field("grid", &self.grid)
            .field("coeffs", &self.coeffs)
            .field("time", &self.time)
            .field("steps", &self.steps)
            .finish_non_exhaustive()
    }
}

impl Clone for Envelope {
    fn clone(&self) -> Self {
        Envelope {
            grid: self.grid,
            coeffs: self.coeffs,
            options: self.options,
            u: self.u.clone(),
            time: self.time,
            steps: self.steps,
            time_unit: self.time_unit,
            scaled_dispersion: self.scaled_dispersion,
            scaled_nonlinearity: self.scaled_nonlinearity,
            kappa_sq: self.kappa_sq.clone(),
            keep: self.keep.clone(),
            forward: Arc::clone(&self.forward),
            inverse: Arc::clone(&self.inverse),
            scratch: self.scratch.clone(),
            linear_cache: self.linear_cache.clone(),
        }
    }
}

impl Envelope {
    /// Wraps an SI amplitude B₁(ζ_j) in tesla.
    pub fn from_amplitude(
        grid: Grid,
        coeffs: NlsCoefficients,
        amplitude: &[Complex64],
        options: SolverOptions,
    ) -> Result<Self> {
        if amplitude.len() != grid.points() {
            return Err(Error::validation(
                "amplitude",
                format!("length {} does not match {} grid points", amplitude.len(), grid.points()),
            ));
        }
        if amplitude.iter().any(|z| !z.is_finite()) {
            return Err(Error::validation("amplitude", "contains non-finite values"));
        }
        let b0 = coeffs.background_field;
        if !(b0.is_finite() && b0 > 0.0) {
            return Err(Error::validation("background_field", format!("must be > 0, got {b0}")));
        }
        if !(coeffs.dispersion_coeff.is_finite() && coeffs.nonlinear_coeff.is_finite()) {
            return Err(Error::validation("coefficients", "must be finite"));
        }
        if !(options.cfl_safety.is_finite() && options.cfl_safety > 0.0) {
            return Err(Error::validation("cfl_safety", "must be > 0"));
        }
        let ell = options.reference_length.unwrap_or(grid.length() / (2.0 * PI));
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::validation("reference_length", format!("must be > 0, got {ell}")));
        }

        let vgp = coeffs.group_dispersion().abs();
        let q = coeffs.nonlinear_coeff.abs();
        let time_unit = if vgp > 0.0 {
            ell * ell / vgp
        } else if q > 0.0 {
            1.0 / q
        } else {
            1.0
        };

        let n = grid.points();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());

        let kappa_sq = grid.wavenumbers().iter().map(|k| (k * ell).powi(2)).collect();
        let cutoff = n as i64 / 3;
        let keep = (0..n)
            .map(|j| !options.dealias || grid.mode_number(j).abs() <= cutoff)
            .collect();

        Ok(Envelope {
            grid,
            coeffs,
            options,
            u: amplitude.iter().map(|z| z / b0).collect(),
            time: 0.0,
            steps: 0,
            time_unit,
            scaled_dispersion: coeffs.dispersion_coeff * time_unit / (ell * ell),
            scaled_nonlinearity: coeffs.nonlinear_coeff * time_unit,
            kappa_sq,
            keep,
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
            linear_cache: None,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coefficients(&self) -> &NlsCoefficients {
        &self.coeffs
    }

    pub fn options(&self) -> &SolverOptions {
        &self.options
    }

    /// Elapsed time, s.
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    pub fn background_field(&self) -> f64 {
        self.coeffs.background_field
    }

    /// B₁(ζ_j), T.
    pub fn amplitude(&self) -> Vec<Complex64> {
        let b0 = self.background_field();
        self.u.iter().map(|z| z * b0).collect()
    }

    /// B₁/B₀ on the grid.
    pub fn normalized_amplitude(&self) -> &[Complex64] {
        &self.u
    }

    pub fn max_amplitude(&self) -> f64 {
        self.u.iter().map(|z| z.norm()).fold(0.0, f64::max) * self.background_field()
    }

    /// Discrete Fourier coefficients of B₁ normalized so that
    /// B₁(ζ_j) = Σ_m c_m exp(i κ_m ζ_j); bin order as in [`Grid::bin`].
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf = self.u.clone();
        self.forward.process(&mut buf);
        let s = self.background_field() / self.grid.points() as f64;
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    /// Largest |dt| accepted by [`Envelope::step`].
    pub fn max_time_step(&self) -> f64 {
        let vgp = self.coeffs.group_dispersion().abs();
        if vgp == 0.0 {
            f64::INFINITY
        } else {
            self.options.cfl_safety * self.grid.spacing().powi(2) / vgp
        }
    }

    /// Step used when none is given: the guard, reduced if needed so that the
    /// nonlinear phase Q |B₁|² dt / B₀² at the current peak stays below
    /// [`MAX_NONLINEAR_PHASE`]. The guard alone only bounds the linear step.
    pub fn suggested_time_step(&self) -> f64 {
        let u_max = self.max_amplitude() / self.background_field();
        let rate = self.coeffs.nonlinear_coeff.abs() * u_max * u_max;
        let nonlinear = MAX_NONLINEAR_PHASE / rate;
        if nonlinear.is_finite() && nonlinear > 0.0 {
            self.max_time_step().min(nonlinear)
        } else {
            self.max_time_step()
        }
    }

    fn nonlinear_rotation(&mut self, dtau: f64) {
        let g = self.scaled_nonlinearity * dtau;
        for z in self.u.iter_mut() {
            *z *= Complex64::from_polar(1.0, g * z.norm_sqr());
        }
    }

    fn linear_multiplier(&mut self, dtau: f64) -> Vec<Complex64> {
        match &self.linear_cache {
            Some((bits, m)) if *bits == dtau.to_bits() => m.clone(),
            _ => {
                let n = self.grid.points() as f64;
                let m: Vec<Complex64> = self
                    .kappa_sq
                    .iter()
                    .zip(&self.keep)
                    .map(|(k2, &keep)| {
                        if keep {
                            Complex64::from_polar(1.0 / n, -self.scaled_dispersion * k2 * dtau)
                        } else {
                            Complex64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                self.linear_cache = Some((dtau.to_bits(), m.clone()));
                m
            }
        }
    }

    fn linear_flow(&mut self, dtau: f64) {
        let multiplier = self.linear_multiplier(dtau);
        self.forward.process_with_scratch(&mut self.u, &mut self.scratch);
        for (z, m) in self.u.iter_mut().zip(&multiplier) {
            *z *= m;
        }
        self.inverse.process_with_scratch(&mut self.u, &mut self.scratch);
    }

    /// One Strang step: half nonlinear rotation, exact linear propagation in
    /// Fourier space, half nonlinear rotation.
    ///
    /// Negative `dt` integrates backwards; the scheme is symmetric, so a
    /// step of −dt undoes a step of dt up to rounding.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        if !dt.is_finite() || dt == 0.0 {
            return Err(Error::validation("dt", format!("must be finite and nonzero, got {dt}")));
        }
        let limit = self.max_time_step();
        if dt.abs() > limit {
            return Err(Error::validation(
                "dt",
                format!(
                    "|dt| = {:e} s exceeds the splitting guard {:e} s ({} x dzeta^2 / |v_g'|)",
                    dt.abs(),
                    limit,
                    self.options.cfl_safety
                ),
            ));
        }
        let dtau = dt / self.time_unit;
        self.nonlinear_rotation(0.5 * dtau);
        self.linear_flow(dtau);
        self.nonlinear_rotation(0.5 * dtau);
        self.steps += 1;
        self.time += dt;
        if self.u.iter().any(|z| !z.is_finite()) {
            return Err(Error::BlowUp { step: self.steps });
        }
        Ok(())
    }

    pub fn advance(&mut self, dt: f64, steps: usize) -> Result<()> {
        for _ in 0..steps {
            self.step(dt)?;
        }
        Ok(())
    }

    /// Spectral derivative ∂_ζ^order of B₁, T/m^order.
    pub fn derivative(&self, order: u32) -> Vec<Complex64> {
        let mut buf = self.u.clone();
        self.forward.process(&mut buf);
        let n = self.grid.points() as f64;
        let b0 = self.background_field();
        for (z, k) in buf.iter_mut().zip(self.grid.wavenumbers()) {
            *z *= Complex64::new(0.0, k).powu(order) * (b0 / n);
        }
        self.inverse.process(&mut buf);
        buf
    }

    /// Pointwise residual of the envelope equation given ∂_t B₁ on the grid.
    pub fn residual(&self, dbdt: &[Complex64]) -> Residual {
        let b = self.amplitude();
        let bzz = self.derivative(2);
        let a = self.coeffs.dispersion_coeff;
        let q = self.coeffs.nonlinear_coeff / self.background_field().powi(2);
        let mut max_residual: f64 = 0.0;
        let mut max_term: f64 = 0.0;
        for ((bj, bzzj), dtj) in b.iter().zip(&bzz).zip(dbdt) {
            let t1 = Complex64::i() * dtj;
            let t2 = a * bzzj;
            let t3 = q * bj.norm_sqr() * bj;
            max_residual = max_residual.max((t1 + t2 + t3).norm());
            max_term = max_term.max(t1.norm()).max(t2.norm()).max(t3.norm());
        }
        Residual { max_residual, max_term }
    }
}
