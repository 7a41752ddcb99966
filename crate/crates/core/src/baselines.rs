//! Reference models: slope-intercept fits and the 3GPP TR 38.901 urban
//! macro outdoor-to-indoor path loss (deterministic mean terms only).

use crate::units::SPEED_OF_LIGHT;
use crate::{Error, Result};

/// `PL(r) = intercept + 10 n log10(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeInterceptModel {
    pub exponent_n: f64,
    /// Path loss at 1 m, dB.
    pub intercept_1m_db: f64,
}

impl SlopeInterceptModel {
    pub fn path_gain_db(&self, range: f64) -> Result<f64> {
        slope_intercept_pg(self, range)
    }
}

pub fn slope_intercept_pg(model: &SlopeInterceptModel, range: f64) -> Result<f64> {
    if !(range > 0.0) {
        return Err(Error::Domain {
            what: "range",
            value: range,
        });
    }
    Ok(-(model.intercept_1m_db + 10.0 * model.exponent_n * libm::log10(range)))
}

/// Through-wall material mix of the O2I building penetration model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuildingLoss {
    /// IRR (low-E) glass and concrete.
    #[default]
    HighLoss,
    /// Standard multi-pane glass and concrete.
    LowLoss,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GppO2iParams {
    pub frequency_hz: f64,
    pub bs_height: f64,
    pub ut_height: f64,
    pub glass_fraction: f64,
    pub indoor_depth: f64,
    pub los: bool,
    pub building_loss: BuildingLoss,
}

impl Default for GppO2iParams {
    fn default() -> Self {
        Self {
            frequency_hz: 28e9,
            bs_height: 25.0,
            ut_height: 1.5,
            glass_fraction: 0.3,
            indoor_depth: 6.0,
            los: true,
            building_loss: BuildingLoss::HighLoss,
        }
    }
}

const D2D_RANGE: (f64, f64) = (10.0, 5000.0);
const FREQ_GHZ_RANGE: (f64, f64) = (0.5, 100.0);
const UT_HEIGHT_RANGE: (f64, f64) = (1.5, 22.5);
/// Effective environment height for UT below 13 m.
const ENV_HEIGHT: f64 = 1.0;
/// Indoor loss per metre of the O2I model.
pub const INDOOR_LOSS_DB_PER_M: f64 = 0.5;

fn in_range(what: &'static str, value: f64, (min, max): (f64, f64)) -> Result<()> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what, value, min, max })
    }
}

/// LOS breakpoint distance `4 h'_BS h'_UT f / c`.
pub fn uma_breakpoint(frequency_hz: f64, bs_height: f64, ut_height: f64) -> f64 {
    4.0 * (bs_height - ENV_HEIGHT) * (ut_height - ENV_HEIGHT) * frequency_hz / SPEED_OF_LIGHT
}

/// UMa mean path loss in dB, without shadow fading.
pub fn gpp_uma_basic_pl(frequency_hz: f64, d2d: f64, bs_height: f64, ut_height: f64, los: bool) -> Result<f64> {
    let f_ghz = frequency_hz / 1e9;
    in_range("frequency_ghz", f_ghz, FREQ_GHZ_RANGE)?;
    in_range("d2d", d2d, D2D_RANGE)?;
    in_range("ut_height", ut_height, UT_HEIGHT_RANGE)?;
    if !(bs_height > ut_height) {
        return Err(Error::Domain {
            what: "bs_height",
            value: bs_height,
        });
    }
    let dh = bs_height - ut_height;
    let d3d = libm::hypot(d2d, dh);
    let bp = uma_breakpoint(frequency_hz, bs_height, ut_height);
    let fterm = 20.0 * libm::log10(f_ghz);
    let pl_los = if d2d <= bp {
        28.0 + 22.0 * libm::log10(d3d) + fterm
    } else {
        28.0 + 40.0 * libm::log10(d3d) + fterm - 9.0 * libm::log10(bp * bp + dh * dh)
    };
    if los {
        return Ok(pl_los);
    }
    let pl_nlos = 13.54 + 39.08 * libm::log10(d3d) + fterm - 0.6 * (ut_height - 1.5);
    Ok(pl_los.max(pl_nlos))
}

/// High-loss through-wall term for a wall with `glass_fraction` IRR glass.
pub fn gpp_o2i_tw_loss(frequency_hz: f64, glass_fraction: f64) -> f64 {
    gpp_o2i_tw_loss_for(frequency_hz, glass_fraction, BuildingLoss::HighLoss)
}

pub fn gpp_o2i_tw_loss_for(frequency_hz: f64, glass_fraction: f64, building: BuildingLoss) -> f64 {
    let f = frequency_hz / 1e9;
    let glass = match building {
        BuildingLoss::HighLoss => 23.0 + 0.3 * f,
        BuildingLoss::LowLoss => 2.0 + 0.2 * f,
    };
    let concrete = 5.0 + 4.0 * f;
    let g = glass_fraction;
    5.0 - 10.0 * libm::log10(g * libm::pow(10.0, -glass / 10.0) + (1.0 - g) * libm::pow(10.0, -concrete / 10.0))
}

/// Components of the O2I prediction; the spreads are reported, never applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GppO2iBreakdown {
    pub basic_pl_db: f64,
    pub through_wall_db: f64,
    pub indoor_db: f64,
    pub path_gain_db: f64,
    pub shadow_fading_std_db: f64,
    pub penetration_std_db: f64,
}

pub fn gpp_o2i_breakdown(params: &GppO2iParams, d2d: f64) -> Result<GppO2iBreakdown> {
    if !(0.0..=1.0).contains(&params.glass_fraction) {
        return Err(Error::Domain {
            what: "glass_fraction",
            value: params.glass_fraction,
        });
    }
    if !(params.indoor_depth >= 0.0) {
        return Err(Error::Domain {
            what: "indoor_depth",
            value: params.indoor_depth,
        });
    }
    let basic = gpp_uma_basic_pl(params.frequency_hz, d2d, params.bs_height, params.ut_height, params.los)?;
    let tw = gpp_o2i_tw_loss_for(params.frequency_hz, params.glass_fraction, params.building_loss);
    let indoor = INDOOR_LOSS_DB_PER_M * params.indoor_depth;
    Ok(GppO2iBreakdown {
        basic_pl_db: basic,
        through_wall_db: tw,
        indoor_db: indoor,
        path_gain_db: -(basic + tw + indoor),
        shadow_fading_std_db: if params.los { 4.0 } else { 6.0 },
        penetration_std_db: match params.building_loss {
            BuildingLoss::HighLoss => 6.5,
            BuildingLoss::LowLoss => 4.4,
        },
    })
}

/// Mean O2I path gain in dB.
pub fn gpp_o2i_pg(params: &GppO2iParams, d2d: f64) -> Result<f64> {
    gpp_o2i_breakdown(params, d2d).map(|b| b.path_gain_db)
}
