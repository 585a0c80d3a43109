use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input failed its precondition. `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("outside the dispersion relation's domain: {0}")]
    Domain(String),

    #[error("sound–Alfvén resonance: Q_c diverges (|c_A² − c_s²|/c_s² = {ratio:.3e} is below {tolerance:.1e})")]
    Resonance { ratio: f64, tolerance: f64 },

    #[error("soliton not admissible: {0}")]
    Soliton(String),

    #[error("solver blow-up: non-finite amplitude after step {step}")]
    BlowUp { step: u64 },

    #[error("regime curve: {0}")]
    Curve(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation { field, reason: reason.into() }
    }

    /// True for errors caused by bad inputs rather than by a failed run.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::BlowUp { .. } | Error::Io(_))
    }
}
