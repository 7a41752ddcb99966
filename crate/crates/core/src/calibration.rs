//! Slope-intercept fitting and model scoring against measurements.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::baselines::{gpp_o2i_pg, GppO2iParams, SlopeInterceptModel};
use crate::geometry::{Point3, Scene, Terminal};
use crate::propagation::{oi_path_gain, PropagationConstants};
use crate::{Error, Result};

/// Label of the pooled row in a comparison table.
pub const OVERALL_LABEL: &str = "Overall";

/// Column names of a comparison table.
pub const TABLE_COLUMNS: [&str; 6] = [
    "subset",
    "n",
    "intercept_db",
    "fit_rmse_db",
    "gpp_rmse_db",
    "theory_rmse_db",
];

/// Where a measurement was taken, for replaying it through the ray model.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordGeometry {
    pub position: Point3,
    pub tx_label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub range_m: f64,
    /// Measured path gain, dB (negative).
    pub path_gain_db: f64,
    pub subset_label: String,
    pub geometry: Option<RecordGeometry>,
}

impl MeasurementRecord {
    pub fn new(subset_label: impl Into<String>, range_m: f64, path_gain_db: f64) -> Result<Self> {
        if !(range_m > 0.0 && range_m.is_finite()) {
            return Err(Error::Domain {
                what: "range_m",
                value: range_m,
            });
        }
        if !path_gain_db.is_finite() {
            return Err(Error::Domain {
                what: "path_gain_db",
                value: path_gain_db,
            });
        }
        Ok(Self {
            range_m,
            path_gain_db,
            subset_label: subset_label.into(),
            geometry: None,
        })
    }

    pub fn with_geometry(mut self, position: Point3, tx_label: impl Into<String>) -> Self {
        self.geometry = Some(RecordGeometry {
            position,
            tx_label: tx_label.into(),
        });
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent_n: f64,
    pub intercept_1m_db: f64,
    /// Root-mean-square residual with divisor N.
    pub rmse_db: f64,
    pub n_records: usize,
}

impl FitResult {
    pub fn model(&self) -> SlopeInterceptModel {
        SlopeInterceptModel {
            exponent_n: self.exponent_n,
            intercept_1m_db: self.intercept_1m_db,
        }
    }
}

/// Ordinary least squares of path loss against `10 log10(range)`.
pub fn fit_slope_intercept(records: &[MeasurementRecord]) -> Result<FitResult> {
    let count = records.len();
    if count < 2 {
        return Err(Error::NotEnoughRecords { needed: 2, got: count });
    }
    let xs: Vec<f64> = records.iter().map(|r| 10.0 * libm::log10(r.range_m)).collect();
    let ys: Vec<f64> = records.iter().map(|r| -r.path_gain_db).collect();
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::DegenerateFit);
    }
    let n = count as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let (sxx, sxy) = xs.iter().zip(&ys).fold((0.0, 0.0), |(sxx, sxy), (&x, &y)| {
        let dx = x - x_mean;
        (sxx + dx * dx, sxy + dx * (y - y_mean))
    });
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(FitResult {
        exponent_n: slope,
        intercept_1m_db: intercept,
        rmse_db: libm::sqrt(sse / n),
        n_records: count,
    })
}

/// RMS difference between `predictor` and the measured path gains.
pub fn model_rmse<F>(records: &[MeasurementRecord], mut predictor: F) -> Result<f64>
where
    F: FnMut(&MeasurementRecord) -> Result<f64>,
{
    if records.is_empty() {
        return Err(Error::NotEnoughRecords { needed: 1, got: 0 });
    }
    let mut sse = 0.0;
    for r in records {
        let e = predictor(r)? - r.path_gain_db;
        sse += e * e;
    }
    Ok(libm::sqrt(sse / records.len() as f64))
}

/// Ray-model prediction for a record that carries its geometry.
pub fn theory_prediction(scene: &Scene, consts: &PropagationConstants, record: &MeasurementRecord) -> Result<f64> {
    let geo = record.geometry.as_ref().ok_or(Error::MissingGeometry)?;
    let tx = scene.tx(&geo.tx_label)?;
    let terminal = Terminal::locate(scene, geo.position)?;
    let breakdown = oi_path_gain(scene, tx, &terminal, consts)?;
    if breakdown.terms.is_empty() {
        return Err(Error::NoPath);
    }
    Ok(breakdown.total_db)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub subset: String,
    pub fit: FitResult,
    pub gpp_rmse_db: f64,
    pub theory_rmse_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedSubset {
    pub subset: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonTable {
    /// Subsets in label order, then the pooled row.
    pub rows: Vec<ComparisonRow>,
    pub skipped: Vec<SkippedSubset>,
}

fn score_subset(
    label: &str,
    records: &[MeasurementRecord],
    scene: &Scene,
    consts: &PropagationConstants,
    gpp: &GppO2iParams,
) -> Result<ComparisonRow> {
    let fit = fit_slope_intercept(records)?;
    let gpp_rmse_db = model_rmse(records, |r| gpp_o2i_pg(gpp, r.range_m))?;
    let theory_rmse_db = model_rmse(records, |r| theory_prediction(scene, consts, r))?;
    Ok(ComparisonRow {
        subset: label.into(),
        fit,
        gpp_rmse_db,
        theory_rmse_db,
    })
}

/// Per-subset and pooled fit, 3GPP and ray-model accuracy.
///
/// A subset that cannot be scored (too few ranges, missing geometry, a
/// record with no admissible path, a range outside the 3GPP validity
/// window) is listed in `skipped` and left out of the pooled row.
pub fn compare_models(
    records: &[MeasurementRecord],
    scene: &Scene,
    consts: &PropagationConstants,
    gpp: &GppO2iParams,
) -> ComparisonTable {
    let mut groups: BTreeMap<&str, Vec<MeasurementRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.subset_label.as_str()).or_default().push(r.clone());
    }
    let mut table = ComparisonTable::default();
    let mut pooled = Vec::with_capacity(records.len());
    for (label, group) in groups {
        match score_subset(label, &group, scene, consts, gpp) {
            Ok(row) => {
                table.rows.push(row);
                pooled.extend(group);
            }
            Err(e) => table.skipped.push(SkippedSubset {
                subset: label.into(),
                reason: format!("{e}"),
            }),
        }
    }
    if !pooled.is_empty() {
        match score_subset(OVERALL_LABEL, &pooled, scene, consts, gpp) {
            Ok(row) => table.rows.push(row),
            Err(e) => table.skipped.push(SkippedSubset {
                subset: OVERALL_LABEL.into(),
                reason: format!("{e}"),
            }),
        }
    }
    table
}
