//! Text, CSV and JSON renderings of model results.

use std::io::{self, Write};

use o2i_core::calibration::{ComparisonTable, FitResult, SkippedSubset, TABLE_COLUMNS};
use o2i_core::PathGainBreakdown;
use serde_json::json;

/// Four decimals; negative zero prints as zero, infinities as `inf`/`-inf`.
pub fn fmt_fixed(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.4}")
}

fn json_num(v: f64) -> serde_json::Value {
    // JSON has no infinities; the absent-path sentinel becomes null.
    if v.is_finite() {
        json!(v)
    } else {
        serde_json::Value::Null
    }
}

/// Aligned table of path terms followed by the total and its SNR.
pub fn write_breakdown_text<W: Write>(mut out: W, b: &PathGainBreakdown, snr_db: f64) -> io::Result<()> {
    writeln!(
        out,
        "{:<10} {:>12} {:>14} {:>10} {:>12}",
        "term", "range_m", "incidence_deg", "depth_m", "gain_db"
    )?;
    for t in &b.terms {
        let g = &t.geometry;
        writeln!(
            out,
            "{:<10} {:>12} {:>14} {:>10} {:>12}",
            t.kind.as_str(),
            fmt_fixed(g.outdoor_range),
            fmt_fixed(g.incidence_angle.to_degrees()),
            fmt_fixed(g.indoor_depth),
            fmt_fixed(t.db)
        )?;
    }
    writeln!(out, "{:<10} {:>51}", "total", fmt_fixed(b.total_db))?;
    writeln!(out, "{:<10} {:>51}", "snr", fmt_fixed(snr_db))
}

/// One JSON object per term, then one for the total.
pub fn write_breakdown_json<W: Write>(mut out: W, b: &PathGainBreakdown, snr_db: f64) -> io::Result<()> {
    for t in &b.terms {
        let g = &t.geometry;
        let line = json!({
            "term": t.kind.as_str(),
            "range_m": g.outdoor_range,
            "incidence_rad": g.incidence_angle,
            "depth_m": g.indoor_depth,
            "grazing_rad": g.grazing_angle,
            "entry": [g.entry_point.x, g.entry_point.y],
            "reflection_point": g.reflection_point.map(|p| [p.x, p.y]),
            "gain_linear": t.linear,
            "gain_db": json_num(t.db),
        });
        writeln!(out, "{line}")?;
    }
    let total = json!({
        "term": "total",
        "gain_linear": b.total_linear,
        "gain_db": json_num(b.total_db),
        "snr_db": json_num(snr_db),
    });
    writeln!(out, "{total}")
}

pub fn write_skipped<W: Write>(mut out: W, skipped: &[SkippedSubset]) -> io::Result<()> {
    for s in skipped {
        writeln!(out, "# skipped {}: {}", s.subset, s.reason)?;
    }
    Ok(())
}

pub fn write_fit_csv<W: Write>(mut out: W, rows: &[(String, FitResult)], skipped: &[SkippedSubset]) -> io::Result<()> {
    writeln!(out, "subset,n,intercept_db,fit_rmse_db,n_records")?;
    for (label, f) in rows {
        writeln!(
            out,
            "{label},{},{},{},{}",
            fmt_fixed(f.exponent_n),
            fmt_fixed(f.intercept_1m_db),
            fmt_fixed(f.rmse_db),
            f.n_records
        )?;
    }
    write_skipped(&mut out, skipped)
}

pub fn write_comparison_csv<W: Write>(mut out: W, table: &ComparisonTable) -> io::Result<()> {
    writeln!(out, "{}", TABLE_COLUMNS.join(","))?;
    for r in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.subset,
            fmt_fixed(r.fit.exponent_n),
            fmt_fixed(r.fit.intercept_1m_db),
            fmt_fixed(r.fit.rmse_db),
            fmt_fixed(r.gpp_rmse_db),
            fmt_fixed(r.theory_rmse_db)
        )?;
    }
    write_skipped(&mut out, &table.skipped)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(fmt_fixed(-137.070_54), "-137.0705");
        assert_eq!(fmt_fixed(-0.0), "0.0000");
        assert_eq!(fmt_fixed(f64::NEG_INFINITY), "-inf");
    }
}
