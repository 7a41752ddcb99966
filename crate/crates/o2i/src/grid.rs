//! Path gain and SNR over a regular grid of terminal positions.

use std::io::{self, Write};

use o2i_core::linkbudget::{snr_db, LinkBudget};
use o2i_core::propagation::oi_path_gain;
use o2i_core::{PathKind, Point2, Point3, PropagationConstants, Scene, Terminal, TxSite};
use rayon::prelude::*;

use crate::report::fmt_fixed;

/// Marker written for cells outside every building.
pub const NULL_MARKER: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin: Point2,
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
    /// Terminal height, m.
    pub z: f64,
}

impl GridSpec {
    /// Cell centre for row-major index `i`.
    pub fn cell(&self, i: usize) -> Point2 {
        let (iy, ix) = (i / self.nx, i % self.nx);
        Point2::new(
            self.origin.x + ix as f64 * self.spacing,
            self.origin.y + iy as f64 * self.spacing,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Outdoor,
    Indoor {
        path_gain_db: f64,
        snr_db: f64,
        /// `None` when no ray-optics path reaches the cell.
        dominant: Option<PathKind>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageGrid {
    pub spec: GridSpec,
    /// Row-major from the origin, x fastest.
    pub cells: Vec<Cell>,
}

fn evaluate_cell(
    scene: &Scene,
    tx: &TxSite,
    consts: &PropagationConstants,
    budget: &LinkBudget,
    at: Point3,
) -> o2i_core::Result<Cell> {
    let terminal = match Terminal::locate(scene, at) {
        Ok(t) => t,
        Err(_) => return Ok(Cell::Outdoor),
    };
    let b = oi_path_gain(scene, tx, &terminal, consts)?;
    Ok(Cell::Indoor {
        path_gain_db: b.total_db,
        snr_db: snr_db(b.total_db, budget),
        dominant: b.dominant(),
    })
}

/// Evaluates every cell. `workers == 1` runs on the calling thread; any
/// other value uses a pool of that many threads (0 = one per core). Cell
/// values do not depend on the worker count.
pub fn evaluate(
    scene: &Scene,
    tx: &TxSite,
    spec: GridSpec,
    consts: &PropagationConstants,
    budget: &LinkBudget,
    workers: usize,
) -> o2i_core::Result<CoverageGrid> {
    if !(spec.spacing > 0.0) {
        return Err(o2i_core::Error::Domain {
            what: "grid spacing",
            value: spec.spacing,
        });
    }
    consts.validate()?;
    let n = spec.nx * spec.ny;
    let one = |i: usize| evaluate_cell(scene, tx, consts, budget, spec.cell(i).with_z(spec.z));
    let cells = if workers == 1 {
        (0..n).map(one).collect::<Result<Vec<_>, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| (0..n).into_par_iter().map(one).collect::<Result<Vec<_>, _>>())?
    };
    Ok(CoverageGrid { spec, cells })
}

impl CoverageGrid {
    /// CSV with columns `x,y,path_gain_db,snr_db,dominant`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,path_gain_db,snr_db,dominant")?;
        for (i, cell) in self.cells.iter().enumerate() {
            let p = self.spec.cell(i);
            let (x, y) = (fmt_fixed(p.x), fmt_fixed(p.y));
            match cell {
                Cell::Outdoor => writeln!(out, "{x},{y},{NULL_MARKER},{NULL_MARKER},{NULL_MARKER}")?,
                Cell::Indoor {
                    path_gain_db,
                    snr_db,
                    dominant,
                } => writeln!(
                    out,
                    "{x},{y},{},{},{}",
                    fmt_fixed(*path_gain_db),
                    fmt_fixed(*snr_db),
                    dominant.map_or("none", PathKind::as_str)
                )?,
            }
        }
        out.flush()
    }
}
