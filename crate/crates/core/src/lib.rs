//! Two-fluid electron spin effects on parallel-propagating Alfvén waves.
//!
//! Spin-up and spin-down electrons are treated as separate fluids. A wave
//! packet drives them apart through the spin ponderomotive force, and the
//! resulting density difference feeds back on the wave self-nonlinearity.
//! The crate provides
//!
//! - plasma parameters and the dimensionless quantum parameters ([`params`]),
//! - equilibrium spin populations and low-frequency responses ([`spin_fluid`]),
//! - the Hall-dispersive Alfvén branch and the envelope coefficients
//!   ([`dispersion`]),
//! - a split-step spectral solver for the envelope equation ([`nls`]),
//! - regime maps in the density-temperature plane ([`regime`]).

pub mod cli;
pub mod config;
pub mod constants;
pub mod dispersion;
pub mod error;
pub mod nls;
pub mod params;
pub mod plasma;
pub mod regime;
pub mod spin_fluid;
pub mod units;

pub use constants::{PhysicalConstants, CODATA_2018};
pub use error::{Error, Result};
pub use params::{DerivedQuantities, PlasmaComposition, QuantumParameters};
pub use plasma::{Checked, Plasma, RegimeWarning};
