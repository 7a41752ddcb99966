//! Outdoor-to-indoor path gain prediction for millimeter-wave links.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! - [`geometry`]: 2.5-D scenes of building footprints and rooftop
//!   transmitters, and the ray-optics paths (direct, side wall, reflected)
//!   that reach an indoor terminal.
//! - [`propagation`]: the three-term power sum over those paths.
//! - [`baselines`]: slope-intercept and 3GPP TR 38.901 UMa O2I reference
//!   models.
//! - [`calibration`]: least-squares slope-intercept fits and RMSE scoring
//!   of models against measurements.
//! - [`linkbudget`]: noise floor, SNR and coverage range.
//!
//! File formats, the coverage grid and the command-line tool live in the
//! `o2i` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baselines;
pub mod calibration;
mod error;
pub mod geometry;
pub mod linkbudget;
pub mod propagation;
pub mod units;

pub use error::{Error, Result};
pub use geometry::{
    Building, PathGeometry, PathKind, Point2, Point3, Scene, Terminal, TxSite, Wall, WallMaterial, WallRef,
};
pub use propagation::{PathGainBreakdown, PropagationConstants};
