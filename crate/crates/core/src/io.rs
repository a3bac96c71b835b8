//! Two-column `x,y` CSV ingestion and output.
//!
//! Input may carry one header line, rows may come in any order (they are
//! sorted by `x` on load) and duplicate abscissae are rejected. Line numbers
//! in errors are 1-based file lines.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{SampledCurve, MIN_POINTS};

pub fn read_curve_csv<R: Read>(reader: R) -> Result<SampledCurve> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(None)
        .from_reader(reader);

    let mut rows: Vec<(f64, f64, u64)> = Vec::new();
    for (index, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Csv {
            line: e.position().map_or(index as u64 + 1, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(index as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Csv {
                line,
                message: format!("expected 2 columns, found {}", record.len()),
            });
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => {
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::Csv { line, message: "non-finite value".into() });
                }
                rows.push((x, y, line));
            }
            _ if index == 0 => continue, // header
            (Err(_), _) => {
                return Err(Error::Csv { line, message: format!("column 1: not a number `{}`", &record[0]) })
            }
            (_, Err(_)) => {
                return Err(Error::Csv { line, message: format!("column 2: not a number `{}`", &record[1]) })
            }
        }
    }

    if rows.len() < MIN_POINTS {
        return Err(Error::TooFewPoints { got: rows.len(), min: MIN_POINTS });
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        let (first, second) = (w[0].2.min(w[1].2), w[0].2.max(w[1].2));
        return Err(Error::DuplicateAbscissa { x: w[0].0, first, second });
    }
    let (xs, ys) = rows.into_iter().map(|(x, y, _)| (x, y)).unzip();
    SampledCurve::new(xs, ys)
}

pub fn read_curve_csv_path(path: impl AsRef<Path>) -> Result<SampledCurve> {
    read_curve_csv(File::open(path)?)
}

/// Writes `x,y` with a header line, full round-trip precision.
pub fn write_curve_csv<W: Write>(curve: &SampledCurve, mut writer: W) -> Result<()> {
    writeln!(writer, "x,y")?;
    for (x, y) in curve.xs().iter().zip(curve.ys()) {
        writeln!(writer, "{x:?},{y:?}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_with_header_and_sorts() {
        let data = "x,y\n3,9\n1,1\n0,0\n2,4\n";
        let c = read_curve_csv(data.as_bytes()).unwrap();
        assert_eq!(c.xs(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(c.ys(), &[0.0, 1.0, 4.0, 9.0]);
    }

    #[test]
    fn reads_without_header() {
        let c = read_curve_csv("0,0\n1, 1\n2,4\n3,9\n\n".as_bytes()).unwrap();
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn duplicate_abscissa_reports_lines() {
        let err = read_curve_csv("x,y\n0,0\n1,1\n2,4\n1,2\n3,9\n".as_bytes()).unwrap_err();
        match err {
            Error::DuplicateAbscissa { x, first, second } => {
                assert_eq!(x, 1.0);
                assert_eq!((first, second), (3, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_rows() {
        let err = read_curve_csv("x,y\n0,0\n1,abc\n2,4\n3,9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 3, .. }), "{err:?}");
        let err = read_curve_csv("0,0\n1,1,1\n2,4\n3,9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }), "{err:?}");
        // A second non-numeric line is not a header.
        let err = read_curve_csv("x,y\nu,v\n0,0\n1,1\n2,4\n3,9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }), "{err:?}");
        let err = read_curve_csv("x,y\n0,0\n1,1\n2,4\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::TooFewPoints { got: 3, .. }));
    }

    #[test]
    fn write_then_read_is_lossless() {
        let xs = vec![0.1, 0.2, 0.30000000000000004, 1e-300];
        let mut sorted = xs.clone();
        sorted.sort_by(f64::total_cmp);
        let c = SampledCurve::new(sorted, vec![1.0 / 3.0, -2.5, 7e10, 0.0]).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&c, &mut buf).unwrap();
        assert_eq!(read_curve_csv(buf.as_slice()).unwrap(), c);
    }
}
