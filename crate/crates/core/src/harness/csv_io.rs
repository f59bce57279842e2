use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Region;
use crate::harness::{SweepResult, SweepRow};

pub const CSV_HEADER: [&str; 12] = [
    "region",
    "n",
    "K",
    "P",
    "r",
    "trials",
    "seed",
    "connected_count",
    "connected_frac",
    "mean_isolated",
    "mean_edges",
    "mean_components",
];

/// Plain decimal notation with nine significant digits.
fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_owned();
    }
    // The exponent after rounding to nine digits decides the precision.
    let sci = format!("{x:.8e}");
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (8 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io { path: path.to_owned(), source },
        other => Error::Csv { path: path.to_owned(), reason: format!("{other:?}") },
    }
}

/// Serialise `result` to any writer.
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| io::Error::other(e);
    writer.write_record(CSV_HEADER).map_err(io_err)?;
    for row in &result.rows {
        writer
            .write_record([
                row.region.to_string(),
                row.n.to_string(),
                row.k.to_string(),
                row.p.to_string(),
                format_float(row.r),
                row.trials.to_string(),
                row.seed.to_string(),
                row.connected_count.to_string(),
                format_float(row.connected_frac),
                format_float(row.mean_isolated),
                format_float(row.mean_edges),
                format_float(row.mean_components),
            ])
            .map_err(io_err)?;
    }
    writer.flush()
}

/// Write `result` to `path`.
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let io = |source| Error::Io { path: path.to_owned(), source };
    let file = File::create(path).map_err(io)?;
    write_csv(result, file).map_err(io)
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, i: usize, path: &Path) -> Result<T> {
    let raw = record.get(i).unwrap_or_default();
    raw.parse().map_err(|_| Error::Csv {
        path: path.to_owned(),
        reason: format!("line {}: bad {} value `{raw}`", record.position().map_or(0, |p| p.line()), CSV_HEADER[i]),
    })
}

/// Parse sweep CSV from any reader; `path` only labels errors.
pub fn read_csv<R: Read>(input: R, path: &Path) -> Result<SweepResult> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(Error::Csv { path: path.to_owned(), reason: format!("unexpected header {headers:?}") });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let region: Region = record[0].parse().map_err(|e: Error| Error::Csv {
            path: path.to_owned(),
            reason: e.to_string(),
        })?;
        rows.push(SweepRow {
            region,
            n: field(&record, 1, path)?,
            k: field(&record, 2, path)?,
            p: field(&record, 3, path)?,
            r: field(&record, 4, path)?,
            trials: field(&record, 5, path)?,
            seed: field(&record, 6, path)?,
            connected_count: field(&record, 7, path)?,
            connected_frac: field(&record, 8, path)?,
            mean_isolated: field(&record, 9, path)?,
            mean_edges: field(&record, 10, path)?,
            mean_components: field(&record, 11, path)?,
        });
    }
    Ok(SweepResult { rows })
}

pub fn parse_csv(path: &Path) -> Result<SweepResult> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    read_csv(file, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_float(0.0), "0.00000000");
        assert_eq!(format_float(1.0), "1.00000000");
        assert_eq!(format_float(0.173_912_345_67), "0.173912346");
        assert_eq!(format_float(3500.5), "3500.50000");
        assert_eq!(format_float(9.999_999_999), "10.0000000");
        assert_eq!(format_float(123_456_789_012.0), "123456789012");
        assert_eq!(format_float(1.5e-5), "0.0000150000000");
        assert!(!format_float(-2.25).contains(','));
    }

    #[test]
    fn header_is_exact() {
        let mut out = Vec::new();
        write_csv(&SweepResult::default(), &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "region,n,K,P,r,trials,seed,connected_count,connected_frac,mean_isolated,mean_edges,mean_components\n"
        );
    }

    #[test]
    fn malformed_input_is_reported() {
        let path = Path::new("mem.csv");
        assert!(matches!(read_csv("a,b\n1,2\n".as_bytes(), path), Err(Error::Csv { .. })));
        let bad = format!("{}\ntorus,x,1,1,0.1,1,1,0,0,0,0,1\n", CSV_HEADER.join(","));
        assert!(matches!(read_csv(bad.as_bytes(), path), Err(Error::Csv { .. })));
        assert!(matches!(parse_csv(Path::new("/nonexistent/dir/x.csv")), Err(Error::Io { .. })));
    }
}
