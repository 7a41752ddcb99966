use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the model crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// An argument lies outside the validity range of an empirical model.
    #[error("{what} = {value} outside validity range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("point ({x}, {y}) is not inside any building")]
    OutsideBuildings { x: f64, y: f64 },

    #[error("unknown transmitter {0:?}")]
    UnknownTx(String),

    #[error("no admissible ray-optics path")]
    NoPath,

    #[error("record has no terminal position or transmitter label")]
    MissingGeometry,

    #[error("degenerate fit: all ranges are equal")]
    DegenerateFit,

    #[error("need at least {needed} records, got {got}")]
    NotEnoughRecords { needed: usize, got: usize },

    #[error("no coverage: SNR {snr_db:.2} dB at the start of the window is below {threshold_db:.2} dB")]
    NoCoverage { snr_db: f64, threshold_db: f64 },

    #[error("profile is not monotone: path gain rises {rise_db:.3} dB near {at_m} m")]
    NonMonotone { at_m: f64, rise_db: f64 },
}
