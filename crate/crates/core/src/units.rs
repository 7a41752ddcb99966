//! Decibel and wavelength helpers.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn wavelength(frequency_hz: f64) -> f64 {
    SPEED_OF_LIGHT / frequency_hz
}

/// Power ratio to dB. Zero maps to negative infinity.
pub fn to_db(linear: f64) -> f64 {
    if linear <= 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * libm::log10(linear)
    }
}

pub fn from_db(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// dB per metre equivalent of a power attenuation of `nepers` per metre.
pub fn nepers_to_db(nepers: f64) -> f64 {
    10.0 * nepers / core::f64::consts::LN_10
}
