//! Noise floor, SNR and coverage range.

use crate::geometry::{PathGeometry, PathKind};
use crate::propagation::{term_gain, PropagationConstants};
use crate::units::to_db;
use crate::{Error, Result};

/// Thermal noise density at 290 K.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub tx_power_dbm: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_db: f64,
    pub snr_threshold_db: f64,
}

impl Default for LinkBudget {
    /// 30 dBm into a 25 dBi base antenna, 12 dBi terminal, 100 MHz, NF 9 dB, 8 dB SNR.
    fn default() -> Self {
        Self {
            tx_power_dbm: 30.0,
            tx_gain_dbi: 25.0,
            rx_gain_dbi: 12.0,
            bandwidth_hz: 100e6,
            noise_figure_db: 9.0,
            snr_threshold_db: 8.0,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        if !(self.bandwidth_hz > 0.0 && self.bandwidth_hz.is_finite()) {
            return Err(Error::Domain {
                what: "bandwidth_hz",
                value: self.bandwidth_hz,
            });
        }
        for (what, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_gain_dbi", self.tx_gain_dbi),
            ("rx_gain_dbi", self.rx_gain_dbi),
            ("noise_figure_db", self.noise_figure_db),
            ("snr_threshold_db", self.snr_threshold_db),
        ] {
            if !v.is_finite() {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(())
    }

    pub fn noise_floor_dbm(&self) -> f64 {
        noise_floor_dbm(self.bandwidth_hz, self.noise_figure_db)
    }
}

pub fn noise_floor_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * libm::log10(bandwidth_hz) + noise_figure_db
}

pub fn snr_db(path_gain_db: f64, budget: &LinkBudget) -> f64 {
    budget.tx_power_dbm + budget.tx_gain_dbi + budget.rx_gain_dbi + path_gain_db - budget.noise_floor_dbm()
}

/// Range interval searched by [`coverage_range`], metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchWindow {
    pub r_min: f64,
    pub r_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageRange {
    pub range_m: f64,
    /// The threshold still holds at `r_max`.
    pub unbounded_in_window: bool,
}

/// Bisection stops once the bracket is this narrow, metres.
pub const RANGE_RESOLUTION_M: f64 = 0.01;
/// Largest rise in path gain tolerated between 1 m samples, dB.
pub const MONOTONE_SLACK_DB: f64 = 0.1;

/// Largest range in the window at which `profile` still meets the SNR threshold.
pub fn coverage_range<F>(profile: F, budget: &LinkBudget, window: SearchWindow) -> Result<CoverageRange>
where
    F: Fn(f64) -> f64,
{
    budget.validate()?;
    let SearchWindow { r_min, r_max } = window;
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Error::Domain {
            what: "search window",
            value: r_max - r_min,
        });
    }
    let threshold = budget.snr_threshold_db;
    let meets = |r: f64| snr_db(profile(r), budget) >= threshold;

    let mut prev = profile(r_min);
    let mut k = 1.0;
    loop {
        let r = (r_min + k).min(r_max);
        let pg = profile(r);
        let rise = pg - prev;
        if rise > MONOTONE_SLACK_DB {
            return Err(Error::NonMonotone { at_m: r, rise_db: rise });
        }
        if r >= r_max {
            break;
        }
        prev = pg;
        k += 1.0;
    }

    let start = snr_db(profile(r_min), budget);
    if !(start >= threshold) {
        return Err(Error::NoCoverage {
            snr_db: start,
            threshold_db: threshold,
        });
    }
    if meets(r_max) {
        return Ok(CoverageRange {
            range_m: r_max,
            unbounded_in_window: true,
        });
    }
    let (mut lo, mut hi) = (r_min, r_max);
    while hi - lo > RANGE_RESOLUTION_M {
        let mid = 0.5 * (lo + hi);
        if meets(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CoverageRange {
        range_m: lo,
        unbounded_in_window: false,
    })
}

/// Terminal `depth` metres behind a wall faced head-on at range `r`.
pub fn normal_incidence_profile(consts: PropagationConstants, depth: f64) -> impl Fn(f64) -> f64 {
    move |r| {
        let path = PathGeometry::synthetic(PathKind::Direct, r, 0.0, depth);
        term_gain(&path, &consts).map(to_db).unwrap_or(f64::NEG_INFINITY)
    }
}

/// Terminal sliding along a facade whose plane is `standoff` metres from
/// the transmitter, so that `cos φ = standoff / r`. Ranges shorter than the
/// standoff are unreachable and map to negative infinity.
pub fn standoff_profile(consts: PropagationConstants, depth: f64, standoff: f64) -> impl Fn(f64) -> f64 {
    move |r| {
        if !(r >= standoff) {
            return f64::NEG_INFINITY;
        }
        let angle = libm::acos((standoff / r).min(1.0));
        let path = PathGeometry::synthetic(PathKind::Direct, r, angle, depth);
        term_gain(&path, &consts).map(to_db).unwrap_or(f64::NEG_INFINITY)
    }
}
