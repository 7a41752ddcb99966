//! Measurement CSV: `subset,range_m,path_gain_db[,x,y,z,tx_label]`.
//!
//! The four geometry columns are optional as a group. When present in the
//! header, a row may still leave all four empty.

use std::io::{Read, Write};

use o2i_core::calibration::MeasurementRecord;
use o2i_core::Point3;

const REQUIRED: [&str; 3] = ["subset", "range_m", "path_gain_db"];
const GEOMETRY: [&str; 4] = ["x", "y", "z", "tx_label"];

#[derive(Debug, thiserror::Error)]
pub enum MeasurementError {
    #[error("line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("header: expected `{}` with optional `{}`, got `{found}`", REQUIRED.join(","), GEOMETRY.join(","))]
    Header { found: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn row_err(line: u64, message: impl Into<String>) -> MeasurementError {
    MeasurementError::Row {
        line,
        message: message.into(),
    }
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<MeasurementRecord>, MeasurementError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let with_geometry = match header.len() {
        3 => false,
        7 => true,
        _ => {
            return Err(MeasurementError::Header {
                found: header.join(","),
            })
        }
    };
    let expected = REQUIRED.iter().chain(if with_geometry { &GEOMETRY[..] } else { &[] });
    if !header.iter().zip(expected).all(|(a, b)| a == b) {
        return Err(MeasurementError::Header {
            found: header.join(","),
        });
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != header.len() {
            return Err(row_err(
                line,
                format!("expected {} fields, got {}", header.len(), row.len()),
            ));
        }
        let num = |i: usize| -> Result<f64, MeasurementError> {
            row[i]
                .parse::<f64>()
                .map_err(|_| row_err(line, format!("{}: not a number: {:?}", header[i], &row[i])))
        };
        let record = MeasurementRecord::new(&row[0], num(1)?, num(2)?).map_err(|e| row_err(line, e.to_string()))?;
        let record = if with_geometry && !(3..7).all(|i| row[i].is_empty()) {
            if row[6].is_empty() {
                return Err(row_err(line, "tx_label: missing"));
            }
            record.with_geometry(Point3::new(num(3)?, num(4)?, num(5)?), &row[6])
        } else {
            record
        };
        out.push(record);
    }
    Ok(out)
}

/// Writes records with full float precision, geometry columns included.
pub fn write_records<W: Write>(out: W, records: &[MeasurementRecord]) -> Result<(), MeasurementError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REQUIRED.iter().chain(&GEOMETRY))?;
    for r in records {
        let mut fields = vec![
            r.subset_label.clone(),
            r.range_m.to_string(),
            r.path_gain_db.to_string(),
        ];
        match &r.geometry {
            Some(g) => fields.extend([
                g.position.x.to_string(),
                g.position.y.to_string(),
                g.position.z.to_string(),
                g.tx_label.clone(),
            ]),
            None => fields.extend(std::iter::repeat_n(String::new(), 4)),
        }
        w.write_record(&fields)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_both_layouts() {
        let short = "subset,range_m,path_gain_db\na,10,-100\na,20,-106.5\n";
        let recs = read_records(short.as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].path_gain_db, -106.5);
        assert!(recs[0].geometry.is_none());

        let long = "subset,range_m,path_gain_db,x,y,z,tx_label\nb,30,-130,1,2,1.5,Tx1\nb,40,-131,,,,\n";
        let recs = read_records(long.as_bytes()).unwrap();
        let g = recs[0].geometry.as_ref().unwrap();
        assert_eq!((g.position.z, g.tx_label.as_str()), (1.5, "Tx1"));
        assert!(recs[1].geometry.is_none());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "subset,range_m,path_gain_db\na,10,-100\na,x,-100\n";
        let err = read_records(bad.as_bytes()).unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        let bad = "subset,range_m,path_gain_db\na,-1,-100\n";
        assert!(read_records(bad.as_bytes())
            .unwrap_err()
            .to_string()
            .starts_with("line 2:"));
        let bad = "subset,range,path_gain_db\n";
        assert!(matches!(
            read_records(bad.as_bytes()),
            Err(MeasurementError::Header { .. })
        ));
    }

    #[test]
    fn write_then_read_preserves_values() {
        let recs = vec![
            MeasurementRecord::new("s", 12.345678901234, -123.456789012345).unwrap(),
            MeasurementRecord::new("s", 50.0, -140.0)
                .unwrap()
                .with_geometry(Point3::new(0.1, 0.2, 1.5), "Tx1"),
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        assert_eq!(read_records(buf.as_slice()).unwrap(), recs);
    }
}
