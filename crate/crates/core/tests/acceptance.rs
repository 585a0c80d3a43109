//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each and exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spinalfven::dispersion::{self, NlsCoefficients, Polarization};
use spinalfven::nls::{self, Envelope, Grid, SolitonSpec, SolverOptions};
use spinalfven::regime::{self, Effect, DEFAULT_DENSITY_RANGE, DEFAULT_FIELDS, DEFAULT_TEMPERATURE_RANGE};
use spinalfven::spin_fluid;
use spinalfven::{PhysicalConstants, Plasma, PlasmaComposition, CODATA_2018};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn hydrogen(k: &PhysicalConstants, n0: f64, te: f64, b0: f64) -> Plasma {
    Plasma::new(PlasmaComposition::hydrogen(k, n0, te, te, b0), *k).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Bisection on log n0 for the sign change of Q; every other input fixed.
fn q_sign_flip() -> Outcome {
    let k = CODATA_2018;
    let mut worst: f64 = 0.0;
    for (b0, te) in [(1e-3, 1e5), (1.0, 1e5), (1e2, 1e7)] {
        let exact = b0 / (2.0 * k.bohr_magneton * k.vacuum_permeability);
        let probe = hydrogen(&k, exact, te, b0);
        let wavenumber = 0.01 * probe.derived.omega_ci / probe.derived.alfven_speed;
        let q = |n0: f64| {
            let p = hydrogen(&k, n0, te, b0);
            let c = dispersion::dispersion(wavenumber, Polarization::RightHand, &p).unwrap();
            dispersion::nls_coefficients(&c, &p).unwrap().nonlinear_coeff
        };
        let (mut lo, mut hi) = ((exact / 10.0).ln(), (exact * 10.0).ln());
        let q_lo = q(lo.exp());
        assert!(q_lo * q(hi.exp()) < 0.0, "bracket does not straddle Q = 0");
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if q(mid.exp()) * q_lo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        let root = (0.5 * (lo + hi)).exp();
        let p = hydrogen(&k, root, te, b0).parameters.two_fluid_nonlinear;
        worst = worst.max(rel(root, exact)).max(rel(p, 0.5));
    }
    outcome(worst < 1e-9, format!("worst relative offset of the root from P = 1/2: {worst:.2e} (< 1e-9)"))
}

fn weak_field_approximation() -> Outcome {
    let k = CODATA_2018;
    let (n0, b0) = (1e20, 10.0);
    let c_a = hydrogen(&k, n0, 1e4, b0).derived.alfven_speed;
    let mut lines = Vec::new();
    let mut pass = true;
    for r in [0.1, 0.03, 0.01] {
        // c_s² = 2 k_B T / m_p with T_i = T_e
        let te = (c_a / r).powi(2) * k.proton_mass / (2.0 * k.boltzmann);
        let p = hydrogen(&k, n0, te, b0);
        let ratio = p.derived.alfven_speed / p.derived.sound_speed;
        let wavenumber = 0.01 * p.derived.omega_ci / p.derived.alfven_speed;
        let c = dispersion::dispersion(wavenumber, Polarization::RightHand, &p).unwrap();
        let exact = dispersion::nls_coefficients(&c, &p).unwrap().classical_q;
        let approx = dispersion::classical_q_weak_field(wavenumber, &p);
        let err = rel(approx, exact);
        let ok = exact < 0.0 && approx < 0.0 && err < 1.1 * ratio * ratio;
        pass &= ok;
        lines.push(format!("r={ratio:.3}: {err:.3e} < {:.3e}", 1.1 * ratio * ratio));
    }
    outcome(pass, lines.join(", "))
}

/// Least-squares slope of y on x and the RMS residual.
fn fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let rms = (x.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mx)).powi(2)).sum::<f64>() / n).sqrt();
    (slope, rms)
}

fn regime_slopes() -> Outcome {
    let curves = regime::regime_map(&DEFAULT_FIELDS, DEFAULT_DENSITY_RANGE, DEFAULT_TEMPERATURE_RANGE, 100, &CODATA_2018)
        .unwrap();
    let mut pass = true;
    let mut seen = Vec::new();
    let mut worst: f64 = 0.0;
    for c in &curves {
        pass &= c.points.len() == 100;
        let ln: Vec<f64> = c.points.iter().map(|p| p.n0.log10()).collect();
        let lt: Vec<f64> = c.points.iter().map(|p| p.te.log10()).collect();
        // vertical loci are fitted as log n against log T
        let (slope, rms, expected) = match c.effect {
            Effect::FermiPressure => with(fit(&ln, &lt), 2.0 / 3.0),
            Effect::BohmDeBroglie => with(fit(&ln, &lt), 0.5),
            Effect::SingleFluidAlfven => with(fit(&ln, &lt), 1.0),
            Effect::SingleFluidAcoustic => with(fit(&ln, &lt), 0.0),
            Effect::TwoFluidNonlinear => with(fit(&lt, &ln), 0.0),
        };
        let err = (slope - expected).abs().max(rms);
        worst = worst.max(err);
        pass &= err < 1e-6;
        if !seen.contains(&c.effect) {
            seen.push(c.effect);
        }
    }
    pass &= seen.len() == 5;
    outcome(
        pass,
        format!("{} curves, {} families, worst slope/residual error {worst:.2e} (< 1e-6)", curves.len(), seen.len()),
    )
}

fn with((slope, rms): (f64, f64), expected: f64) -> (f64, f64, f64) {
    (slope, rms, expected)
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn spin_difference_scaling() -> Outcome {
    let k = CODATA_2018;
    let mut rng = StdRng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let z: f64 = rng.gen_range(1..=8) as f64;
        let comp = PlasmaComposition {
            electron_density: log_uniform(&mut rng, 1e18, 1e32),
            electron_temperature: log_uniform(&mut rng, 1e2, 1e9),
            ion_temperature: log_uniform(&mut rng, 1e2, 1e9),
            magnetic_field: log_uniform(&mut rng, 1e-5, 1e4),
            ion_mass: k.proton_mass * 2.0 * z * rng.gen_range(1.0..1.3),
            ion_charge_number: z,
        };
        let p = Plasma::new(comp, k).unwrap();
        let bsq = log_uniform(&mut rng, 1e-16, 1e-2) * comp.magnetic_field.powi(2);
        let got = spin_fluid::electron_difference_response(&p, bsq).unwrap();
        let oracle = 2.0 * k.bohr_magneton * comp.electron_density * bsq
            / (comp.ion_charge_number * comp.magnetic_field * k.boltzmann * comp.electron_temperature);
        let lambda = rng.gen_range(0.1..10.0);
        let scaled = spin_fluid::electron_difference_response(&p, lambda * bsq).unwrap();
        worst = worst.max(rel(got, oracle)).max(rel(scaled, lambda * got));
    }
    outcome(worst < 1e-12, format!("1000 compositions, worst relative error {worst:.2e} (< 1e-12)"))
}

/// Left-hand carrier in the weak-field regime: Q < 0 and v_g' < 0, so bright
/// solitons exist.
fn soliton_coefficients() -> NlsCoefficients {
    let p = hydrogen(&CODATA_2018, 1e20, 1e5, 1e-3);
    let wavenumber = 0.05 * p.derived.omega_ci / p.derived.alfven_speed;
    let c = dispersion::dispersion(wavenumber, Polarization::LeftHand, &p).unwrap();
    dispersion::nls_coefficients(&c, &p).unwrap()
}

/// Soliton of width L / `ratio` at the centre of a 1024-point box.
fn soliton_setup(ratio: f64) -> (NlsCoefficients, Grid, SolitonSpec) {
    let c = soliton_coefficients();
    let length = 1e7;
    let grid = Grid::new(1024, length).unwrap();
    let w = length / ratio;
    let a = c.background_field / w * (c.group_dispersion() / c.nonlinear_coeff).sqrt();
    (c, grid, SolitonSpec { peak_amplitude: a, center: 0.5 * length, phase: 0.3 })
}

fn conservation() -> Outcome {
    let (c, grid, spec) = soliton_setup(24.0);
    // boost by four box modes so the momentum is not zero
    let kick = 2.0 * PI * 4.0 / grid.length();
    let amp: Vec<Complex64> = spec
        .profile(&c, &grid, 0.0)
        .unwrap()
        .iter()
        .enumerate()
        .map(|(j, b)| b * Complex64::from_polar(1.0, kick * grid.zeta(j)))
        .collect();
    let mut env = Envelope::from_amplitude(grid, c, &amp, SolverOptions::default()).unwrap();
    let d0 = env.diagnostics();
    env.advance(env.max_time_step(), 1000).unwrap();
    let d1 = env.diagnostics();
    let norm = rel(d1.norm, d0.norm);
    let momentum = rel(d1.momentum, d0.momentum);
    let hamiltonian = rel(d1.hamiltonian, d0.hamiltonian);
    outcome(
        norm < 1e-10 && momentum < 1e-10 && hamiltonian < 1e-6,
        format!("norm {norm:.2e}, momentum {momentum:.2e} (< 1e-10), hamiltonian {hamiltonian:.2e} (< 1e-6)"),
    )
}

fn soliton_error(c: &NlsCoefficients, grid: Grid, spec: &SolitonSpec, dt: f64, steps: usize) -> f64 {
    let mut env = nls::initialize_soliton(spec, c, grid, SolverOptions::default()).unwrap();
    env.advance(dt, steps).unwrap();
    let exact = spec.profile(c, &grid, env.time()).unwrap();
    env.amplitude().iter().zip(&exact).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

fn soliton_fidelity() -> Outcome {
    let (c, grid, spec) = soliton_setup(24.0);
    let env = nls::initialize_soliton(&spec, &c, grid, SolverOptions::default()).unwrap();
    let omega = spec.frequency(&c);
    let dbdt: Vec<Complex64> = env.amplitude().iter().map(|b| Complex64::i() * omega * b).collect();
    let residual = env.residual(&dbdt).relative();
    let dt = env.max_time_step();
    let a = spec.peak_amplitude;
    let coarse = soliton_error(&c, grid, &spec, dt, 1000) / a;
    let fine = soliton_error(&c, grid, &spec, 0.5 * dt, 2000) / a;
    let ratio = coarse / fine;
    outcome(
        residual < 1e-8 && coarse < 1e-6 && (3.5..=4.5).contains(&ratio),
        format!("residual {residual:.2e}, L-inf error {coarse:.2e} A (< 1e-6), halving dt ratio {ratio:.3} (in [3.5, 4.5])"),
    )
}

/// Coefficients for a uniform-background run; only the spin parameter differs
/// between the two cases.
fn instability_coefficients(spin: bool) -> NlsCoefficients {
    let k = if spin { CODATA_2018 } else { CODATA_2018.without_spin() };
    let b0 = 1e-3;
    let n0 = 0.6 * b0 / (CODATA_2018.bohr_magneton * CODATA_2018.vacuum_permeability);
    let p = hydrogen(&k, n0, 1e4, b0);
    let wavenumber = 0.1 * p.derived.omega_ci / p.derived.alfven_speed;
    let c = dispersion::dispersion(wavenumber, Polarization::LeftHand, &p).unwrap();
    dispersion::nls_coefficients(&c, &p).unwrap()
}

/// Runs a seeded uniform background and returns (time, ln |seeded mode|) samples.
fn seeded_run(c: &NlsCoefficients, a0: f64, length: f64, dt: f64, steps: usize, every: usize) -> Vec<(f64, f64)> {
    let grid = Grid::new(64, length).unwrap();
    let mut env = nls::uniform_background(a0, 1e-4, 1, c, grid, SolverOptions::default()).unwrap();
    assert!(dt <= env.max_time_step());
    let mut out = Vec::with_capacity(steps / every + 1);
    let mode = |env: &Envelope| {
        let s = env.spectrum();
        (s[grid.bin(1)].norm_sqr() + s[grid.bin(-1)].norm_sqr()).sqrt().ln()
    };
    out.push((0.0, mode(&env)));
    for _ in 0..steps / every {
        env.advance(dt, every).unwrap();
        out.push((env.time(), mode(&env)));
    }
    out
}

fn modulational_instability() -> Outcome {
    let focusing = instability_coefficients(false);
    let defocusing = instability_coefficients(true);
    let b0 = focusing.background_field;
    let a0 = 1e-2 * b0;
    let vgp = focusing.group_dispersion();
    let (q_f, q_d) = (focusing.nonlinear_coeff, defocusing.nonlinear_coeff);
    assert!(q_f * vgp > 0.0 && q_d * vgp < 0.0);

    // place the seeded mode at the fastest-growing wavenumber
    let kappa = (2.0 * q_f / vgp).sqrt() * a0 / b0;
    let length = 2.0 * PI / kappa;
    let gamma = nls::modulational_instability_rate(&focusing, a0, kappa);
    let gamma_d = nls::modulational_instability_rate(&defocusing, a0, kappa);

    let dt = 0.005 / gamma;
    let samples = seeded_run(&focusing, a0, length, dt, 1400, 10);
    let window: Vec<_> = samples.iter().filter(|(t, _)| (2.0..=6.0).contains(&(gamma * t))).collect();
    let (t, y): (Vec<f64>, Vec<f64>) = window.iter().map(|&&(t, y)| (t, y)).unzip();
    let measured = fit(&t, &y).0;
    let focus_err = rel(measured, gamma);

    let grid_guard = 2.0 * (length / 64.0).powi(2) / vgp.abs();
    let dt_d = grid_guard.min(0.05 / gamma);
    let horizon = 2000.0 / gamma;
    let steps = (horizon / dt_d).ceil() as usize;
    let samples = seeded_run(&defocusing, a0, length, dt_d, steps, 50);
    let (t, y): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
    let drift = fit(&t, &y).0;

    outcome(
        focus_err < 0.05 && gamma_d == 0.0 && drift < 1e-3 * gamma,
        format!(
            "focusing: measured {measured:.4e} vs {gamma:.4e} 1/s ({:.2}%, < 5%); defocusing: {drift:.2e} 1/s = {:.1e} of focusing (< 1e-3)",
            100.0 * focus_err,
            drift / gamma
        ),
    )
}

fn group_velocity_oracle() -> Outcome {
    let k = CODATA_2018;
    let mut rng = StdRng::seed_from_u64(8);
    let (mut worst_vg, mut worst_vgp): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let p = hydrogen(&k, log_uniform(&mut rng, 1e18, 1e30), log_uniform(&mut rng, 1e3, 1e8), log_uniform(&mut rng, 1e-4, 1e2));
        let (pol, x) = if rng.gen_bool(0.5) {
            (Polarization::LeftHand, log_uniform(&mut rng, 1e-3, 0.9))
        } else {
            (Polarization::RightHand, log_uniform(&mut rng, 1e-3, 10.0))
        };
        let wavenumber = x * p.derived.omega_ci / p.derived.alfven_speed;
        let c = dispersion::dispersion(wavenumber, pol, &p).unwrap();
        let w = |kk: f64| dispersion::frequency(kk, pol, &p).unwrap();
        let h = 1e-6 * wavenumber;
        let vg = (w(wavenumber + h) - w(wavenumber - h)) / (2.0 * h);
        // step shrinks towards the left-hand resonance where ω(k) curves sharply
        let d = 1e-2 * wavenumber * (1.0 + pol.sign() * x).min(1.0);
        let vgp = (-w(wavenumber + 2.0 * d) + 16.0 * w(wavenumber + d) - 30.0 * w(wavenumber) + 16.0 * w(wavenumber - d)
            - w(wavenumber - 2.0 * d))
            / (12.0 * d * d);
        worst_vg = worst_vg.max(rel(vg, c.group_velocity));
        worst_vgp = worst_vgp.max(rel(vgp, c.group_dispersion));
    }
    outcome(
        worst_vg < 1e-6 && worst_vgp < 1e-6,
        format!("1000 draws, worst v_g {worst_vg:.2e}, v_g' {worst_vgp:.2e} (< 1e-6)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Q sign flip at P = 1/2", q_sign_flip),
        ("weak-field Q_c approximation", weak_field_approximation),
        ("regime curve slopes", regime_slopes),
        ("spin density difference scaling", spin_difference_scaling),
        ("solver conservation", conservation),
        ("soliton fidelity and convergence", soliton_fidelity),
        ("modulational instability", modulational_instability),
        ("group velocity oracle", group_velocity_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} criterion {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
