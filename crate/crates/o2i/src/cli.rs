//! `o2i` subcommands.
//!
//! Exit codes: 0 success, 1 evaluation failure, 2 bad input (arguments,
//! scene file, measurement CSV, unknown transmitter), 3 geometry error
//! (terminal outside every building).

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use o2i_core::baselines::{BuildingLoss, GppO2iParams};
use o2i_core::calibration::{
    compare_models, fit_slope_intercept, FitResult, MeasurementRecord, SkippedSubset, OVERALL_LABEL,
};
use o2i_core::linkbudget::{
    coverage_range, normal_incidence_profile, snr_db, standoff_profile, LinkBudget, SearchWindow,
};
use o2i_core::propagation::{oi_path_gain, Transmission};
use o2i_core::units::from_db;
use o2i_core::{PathGainBreakdown, Point2, Point3, PropagationConstants, Scene, Terminal};

use crate::grid::{self, GridSpec};
use crate::measurements::{read_records, MeasurementError};
use crate::report;
use crate::scene_file::{load_scene, SceneError};

#[derive(Debug, Parser)]
#[command(name = "o2i", version, about = "mmWave outdoor-to-indoor coverage prediction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Path gain breakdown for one terminal.
    Predict(PredictArgs),
    /// Path gain and SNR over a grid, as CSV.
    Coverage(CoverageArgs),
    /// Slope-intercept fit per subset.
    Fit(FitArgs),
    /// Fit, 3GPP and ray-model accuracy per subset.
    Compare(CompareArgs),
    /// Coverage range along a canonical profile.
    Budget(BudgetArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelFlags {
    /// Carrier frequency.
    #[arg(long, default_value_t = 28.0)]
    pub freq_ghz: f64,
    /// Front wall transmission, dB.
    #[arg(long)]
    pub t_eff_db: Option<f64>,
    /// Side wall transmission, dB.
    #[arg(long)]
    pub t_eff_side_db: Option<f64>,
    /// Indoor absorption, Np/m.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Refraction index of reflecting facades.
    #[arg(long)]
    pub n2: Option<f64>,
    /// Take wall transmission from the scene's wall materials.
    #[arg(long)]
    pub wall_materials: bool,
}

impl ModelFlags {
    pub fn constants(&self) -> PropagationConstants {
        let d = PropagationConstants::default();
        PropagationConstants {
            frequency_hz: self.freq_ghz * 1e9,
            t_eff: self.t_eff_db.map_or(d.t_eff, from_db),
            t_eff_side: self.t_eff_side_db.map_or(d.t_eff_side, from_db),
            kappa_in: self.kappa.unwrap_or(d.kappa_in),
            n2: self.n2.unwrap_or(d.n2),
            transmission: if self.wall_materials {
                Transmission::WallMaterials
            } else {
                Transmission::Constants
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BudgetFlags {
    #[arg(long, default_value_t = 30.0)]
    pub tx_dbm: f64,
    #[arg(long, default_value_t = 25.0)]
    pub tx_dbi: f64,
    #[arg(long, default_value_t = 12.0)]
    pub rx_dbi: f64,
    #[arg(long, default_value_t = 100.0)]
    pub bw_mhz: f64,
    #[arg(long, default_value_t = 9.0)]
    pub nf_db: f64,
    /// Required SNR, dB.
    #[arg(long, default_value_t = 8.0)]
    pub snr_db: f64,
}

impl BudgetFlags {
    pub fn budget(&self) -> LinkBudget {
        LinkBudget {
            tx_power_dbm: self.tx_dbm,
            tx_gain_dbi: self.tx_dbi,
            rx_gain_dbi: self.rx_dbi,
            bandwidth_hz: self.bw_mhz * 1e6,
            noise_figure_db: self.nf_db,
            snr_threshold_db: self.snr_db,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GppFlags {
    /// Line-of-sight street path (default).
    #[arg(long, conflicts_with = "gpp_nlos")]
    pub gpp_los: bool,
    #[arg(long)]
    pub gpp_nlos: bool,
    #[arg(long, default_value_t = 0.3)]
    pub glass_fraction: f64,
    #[arg(long, default_value_t = 6.0)]
    pub indoor_depth: f64,
    #[arg(long, default_value_t = 25.0)]
    pub bs_height: f64,
    #[arg(long, default_value_t = 1.5)]
    pub ut_height: f64,
    /// Standard glass instead of low-E glass.
    #[arg(long)]
    pub low_loss: bool,
}

impl GppFlags {
    pub fn params(&self, frequency_hz: f64) -> GppO2iParams {
        GppO2iParams {
            frequency_hz,
            bs_height: self.bs_height,
            ut_height: self.ut_height,
            glass_fraction: self.glass_fraction,
            indoor_depth: self.indoor_depth,
            los: !self.gpp_nlos,
            building_loss: if self.low_loss {
                BuildingLoss::LowLoss
            } else {
                BuildingLoss::HighLoss
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct PredictArgs {
    pub scene: PathBuf,
    pub tx: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// One JSON object per line instead of a table.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub link: BudgetFlags,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct CoverageArgs {
    pub scene: PathBuf,
    pub tx: String,
    /// Centre of the first cell.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
    pub origin: Vec<f64>,
    #[arg(long)]
    pub spacing: f64,
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    /// Terminal height.
    #[arg(long, default_value_t = 1.5)]
    pub z: f64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Output file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub link: BudgetFlags,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    pub measurements: PathBuf,
    /// Fit only this subset.
    #[arg(long)]
    pub subset: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct CompareArgs {
    pub measurements: PathBuf,
    pub scene: PathBuf,
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub gpp: GppFlags,
}

/// Terminal trajectory for `budget`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// Wall faced head-on.
    Normal,
    /// Along a facade at the given standoff distance.
    Standoff(f64),
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "normal" {
            return Ok(Self::Normal);
        }
        let d = s
            .strip_prefix("standoff:")
            .ok_or_else(|| format!("expected `normal` or `standoff:<metres>`, got {s:?}"))?;
        match d.parse::<f64>() {
            Ok(d) if d > 0.0 && d.is_finite() => Ok(Self::Standoff(d)),
            _ => Err(format!("standoff distance must be a positive number, got {d:?}")),
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct BudgetArgs {
    #[arg(long, default_value = "normal")]
    pub profile: Profile,
    /// Indoor depth behind the wall.
    #[arg(long, default_value_t = 6.0)]
    pub depth: f64,
    /// Start of the search window; defaults to 1 m, or the standoff distance.
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long, default_value_t = 1000.0)]
    pub r_max: f64,
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub link: BudgetFlags,
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        Self::new(2, format!("scene: {e}"))
    }
}

impl From<MeasurementError> for CliError {
    fn from(e: MeasurementError) -> Self {
        Self::new(2, format!("measurements: {e}"))
    }
}

impl From<o2i_core::Error> for CliError {
    fn from(e: o2i_core::Error) -> Self {
        use o2i_core::Error as E;
        let code = match e {
            E::OutsideBuildings { .. } => 3,
            E::UnknownTx(_) | E::Domain { .. } | E::OutOfRange { .. } => 2,
            _ => 1,
        };
        Self::new(code, e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::new(1, e.to_string())
    }
}

fn open(path: &PathBuf) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))
}

/// Library-level prediction shared by `predict` and the tests.
pub fn predict(
    scene: &Scene,
    tx: &str,
    at: Point3,
    consts: &PropagationConstants,
) -> Result<PathGainBreakdown, CliError> {
    let tx = scene.tx(tx)?;
    let terminal = Terminal::locate(scene, at).map_err(|e| CliError::new(3, format!("terminal: {e}")))?;
    Ok(oi_path_gain(scene, tx, &terminal, consts)?)
}

pub fn cmd_predict<W: Write>(args: &PredictArgs, out: W) -> Result<(), CliError> {
    let scene = load_scene(&args.scene)?;
    let b = predict(
        &scene,
        &args.tx,
        Point3::new(args.x, args.y, args.z),
        &args.model.constants(),
    )?;
    let budget = args.link.budget();
    budget.validate()?;
    let snr = snr_db(b.total_db, &budget);
    if args.json {
        report::write_breakdown_json(out, &b, snr)?;
    } else {
        report::write_breakdown_text(out, &b, snr)?;
    }
    Ok(())
}

pub fn cmd_coverage<W: Write>(args: &CoverageArgs, out: W) -> Result<(), CliError> {
    let scene = load_scene(&args.scene)?;
    let tx = scene.tx(&args.tx)?;
    let spec = GridSpec {
        origin: Point2::new(args.origin[0], args.origin[1]),
        spacing: args.spacing,
        nx: args.nx,
        ny: args.ny,
        z: args.z,
    };
    let budget = args.link.budget();
    budget.validate()?;
    let grid = grid::evaluate(&scene, tx, spec, &args.model.constants(), &budget, args.workers)?;
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::new(1, format!("{}: {e}", path.display())))?;
            grid.write_csv(BufWriter::new(file))?;
        }
        None => grid.write_csv(BufWriter::new(out))?,
    }
    Ok(())
}

/// Per-subset fits in label order plus the pooled row over fitted subsets.
pub fn fit_subsets(records: &[MeasurementRecord]) -> (Vec<(String, FitResult)>, Vec<SkippedSubset>) {
    let mut groups: BTreeMap<&str, Vec<MeasurementRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(&r.subset_label).or_default().push(r.clone());
    }
    let single = groups.len() == 1;
    let (mut rows, mut skipped, mut pooled) = (Vec::new(), Vec::new(), Vec::new());
    let mut push = |label: &str, group: &[MeasurementRecord], rows: &mut Vec<_>| match fit_slope_intercept(group) {
        Ok(f) => {
            rows.push((label.to_owned(), f));
            true
        }
        Err(e) => {
            skipped.push(SkippedSubset {
                subset: label.into(),
                reason: e.to_string(),
            });
            false
        }
    };
    for (label, group) in &groups {
        if push(label, group, &mut rows) {
            pooled.extend(group.iter().cloned());
        }
    }
    if !single && !pooled.is_empty() {
        push(OVERALL_LABEL, &pooled, &mut rows);
    }
    (rows, skipped)
}

pub fn cmd_fit<W: Write>(args: &FitArgs, out: W) -> Result<(), CliError> {
    let mut records = read_records(open(&args.measurements)?)?;
    if let Some(s) = &args.subset {
        records.retain(|r| &r.subset_label == s);
        if records.is_empty() {
            return Err(CliError::new(2, format!("subset: no records labelled {s:?}")));
        }
    }
    let (rows, skipped) = fit_subsets(&records);
    report::write_fit_csv(out, &rows, &skipped)?;
    Ok(())
}

pub fn cmd_compare<W: Write>(args: &CompareArgs, out: W) -> Result<(), CliError> {
    let records = read_records(open(&args.measurements)?)?;
    let scene = load_scene(&args.scene)?;
    let consts = args.model.constants();
    consts.validate()?;
    let table = compare_models(&records, &scene, &consts, &args.gpp.params(consts.frequency_hz));
    report::write_comparison_csv(out, &table)?;
    Ok(())
}

pub fn cmd_budget<W: Write>(args: &BudgetArgs, mut out: W) -> Result<(), CliError> {
    let consts = args.model.constants();
    consts.validate()?;
    let budget = args.link.budget();
    let (r_min, profile): (f64, Box<dyn Fn(f64) -> f64>) = match args.profile {
        Profile::Normal => (
            args.r_min.unwrap_or(1.0),
            Box::new(normal_incidence_profile(consts, args.depth)),
        ),
        Profile::Standoff(d) => (
            args.r_min.unwrap_or(d),
            Box::new(standoff_profile(consts, args.depth, d)),
        ),
    };
    let c = coverage_range(
        profile,
        &budget,
        SearchWindow {
            r_min,
            r_max: args.r_max,
        },
    )?;
    writeln!(
        out,
        "{:<18} {:>12}",
        "noise_floor_dbm",
        report::fmt_fixed(budget.noise_floor_dbm())
    )?;
    writeln!(
        out,
        "{:<18} {:>12}",
        "snr_threshold_db",
        report::fmt_fixed(budget.snr_threshold_db)
    )?;
    writeln!(out, "{:<18} {:>12}", "coverage_range_m", report::fmt_fixed(c.range_m))?;
    writeln!(out, "{:<18} {:>12}", "unbounded", c.unbounded_in_window)?;
    Ok(())
}

pub fn run<W: Write>(cli: &Cli, out: W) -> Result<(), CliError> {
    match &cli.command {
        Command::Predict(a) => cmd_predict(a, out),
        Command::Coverage(a) => cmd_coverage(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Budget(a) => cmd_budget(a, out),
    }
}
