//! Three-path outdoor-to-indoor path gain.
//!
//! Each admissible path contributes
//!
//! ```text
//! λ² cos²φ T e^{-κ d} R / (8 π² ρ²)
//! ```
//!
//! where ρ is the outdoor range (range plus indoor depth for the side-wall
//! path), T the wall transmission, and R the concrete reflection
//! coefficient (reflected path only). The terms add in power.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::geometry::{enumerate_paths, PathGeometry, PathKind, Scene, Terminal, TxSite};
use crate::units::{to_db, wavelength};
use crate::{Error, Result};

/// Where a path's wall transmission coefficient comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transmission {
    /// `t_eff` for direct and reflected paths, `t_eff_side` for side-wall paths.
    #[default]
    Constants,
    /// The entry wall's own material.
    WallMaterials,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConstants {
    pub frequency_hz: f64,
    /// Front wall power transmission.
    pub t_eff: f64,
    /// Side wall power transmission.
    pub t_eff_side: f64,
    /// Indoor absorption of power, Np/m.
    pub kappa_in: f64,
    /// Refraction index of the reflecting facade.
    pub n2: f64,
    pub transmission: Transmission,
}

impl Default for PropagationConstants {
    /// Low-E glass office building at 28 GHz.
    fn default() -> Self {
        Self {
            frequency_hz: 28e9,
            t_eff: 2.5e-5,
            t_eff_side: 1.5e-4,
            kappa_in: 0.12,
            n2: libm::sqrt(5.0),
            transmission: Transmission::Constants,
        }
    }
}

impl PropagationConstants {
    pub fn wavelength(&self) -> f64 {
        wavelength(self.frequency_hz)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what, value| if ok { Ok(()) } else { Err(Error::Domain { what, value }) };
        check(
            self.frequency_hz > 0.0 && self.frequency_hz.is_finite(),
            "frequency_hz",
            self.frequency_hz,
        )?;
        check(self.t_eff > 0.0 && self.t_eff <= 1.0, "t_eff", self.t_eff)?;
        check(
            self.t_eff_side > 0.0 && self.t_eff_side <= 1.0,
            "t_eff_side",
            self.t_eff_side,
        )?;
        check(
            self.kappa_in >= 0.0 && self.kappa_in.is_finite(),
            "kappa_in",
            self.kappa_in,
        )?;
        check(self.n2 > 1.0 && self.n2.is_finite(), "n2", self.n2)
    }
}

/// Power reflection coefficient `0.3 + 0.7 exp(-(4 / n2) φ_g)`, grazing angle in radians.
pub fn reflection_coefficient_sq(grazing_angle: f64, n2: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&grazing_angle) {
        return Err(Error::Domain {
            what: "grazing angle",
            value: grazing_angle,
        });
    }
    if !(n2 > 0.0) {
        return Err(Error::Domain { what: "n2", value: n2 });
    }
    Ok(0.3 + 0.7 * libm::exp(-(4.0 / n2) * grazing_angle))
}

/// Power surviving `depth` metres indoors.
pub fn indoor_absorption(depth: f64, kappa_in: f64) -> Result<f64> {
    if !(depth >= 0.0) {
        return Err(Error::Domain {
            what: "indoor depth",
            value: depth,
        });
    }
    Ok(libm::exp(-kappa_in * depth))
}

/// Linear power gain contributed by one path.
pub fn term_gain(path: &PathGeometry, consts: &PropagationConstants) -> Result<f64> {
    if !(path.outdoor_range > 0.0) {
        return Err(Error::Domain {
            what: "outdoor range",
            value: path.outdoor_range,
        });
    }
    if !(path.incidence_angle >= 0.0) {
        return Err(Error::Domain {
            what: "incidence angle",
            value: path.incidence_angle,
        });
    }
    let cos_sq = if path.incidence_angle >= FRAC_PI_2 {
        0.0
    } else {
        let c = libm::cos(path.incidence_angle);
        c * c
    };
    let transmission = match (consts.transmission, path.kind) {
        (Transmission::WallMaterials, _) => path.entry_t_eff,
        (Transmission::Constants, PathKind::SideWall) => consts.t_eff_side,
        (Transmission::Constants, _) => consts.t_eff,
    };
    let absorption = indoor_absorption(path.indoor_depth, consts.kappa_in)?;
    let (reflection, range) = match path.kind {
        PathKind::Direct => (1.0, path.outdoor_range),
        PathKind::SideWall => (1.0, path.outdoor_range + path.indoor_depth),
        PathKind::Reflected => (
            reflection_coefficient_sq(path.grazing_angle.unwrap_or(0.0), consts.n2)?,
            path.outdoor_range,
        ),
    };
    let lambda = consts.wavelength();
    Ok(lambda * lambda * cos_sq * transmission * absorption * reflection / (8.0 * PI * PI * range * range))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathTerm {
    pub kind: PathKind,
    pub linear: f64,
    pub db: f64,
    pub geometry: PathGeometry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathGainBreakdown {
    pub total_linear: f64,
    /// Negative infinity when there is no admissible path.
    pub total_db: f64,
    pub terms: Vec<PathTerm>,
}

impl PathGainBreakdown {
    pub fn from_paths(paths: Vec<PathGeometry>, consts: &PropagationConstants) -> Result<Self> {
        let terms = paths
            .into_iter()
            .map(|geometry| {
                let linear = term_gain(&geometry, consts)?;
                Ok(PathTerm {
                    kind: geometry.kind,
                    linear,
                    db: to_db(linear),
                    geometry,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let total_linear: f64 = terms.iter().map(|t| t.linear).sum();
        Ok(Self {
            total_linear,
            total_db: to_db(total_linear),
            terms,
        })
    }

    /// Kind of the strongest term.
    pub fn dominant(&self) -> Option<PathKind> {
        self.terms
            .iter()
            .fold(None::<&PathTerm>, |best, t| match best {
                Some(b) if b.linear >= t.linear => Some(b),
                _ => Some(t),
            })
            .map(|t| t.kind)
    }
}

/// Path gain from `tx` to `terminal`, summed over all admissible paths.
pub fn oi_path_gain(
    scene: &Scene,
    tx: &TxSite,
    terminal: &Terminal,
    consts: &PropagationConstants,
) -> Result<PathGainBreakdown> {
    consts.validate()?;
    PathGainBreakdown::from_paths(enumerate_paths(scene, tx, terminal, consts), consts)
}
