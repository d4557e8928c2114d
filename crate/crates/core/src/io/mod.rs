//! File formats: binary/ASCII PGM and PPM, the `VOL1` raw volume container,
//! and benchmark CSV. All writers go through a temporary file in the target
//! directory followed by a rename.

mod pnm;
mod volume;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use pnm::{decode_pnm, encode_pnm, quantize, read_image, read_pnm, write_image, BitDepth, DecodedImage};
pub use volume::{decode_volume, encode_volume, read_volume, write_volume, VolumeHeader, VOLUME_MAGIC};

use crate::bench::BenchRecord;
use crate::error::Result;

pub const CSV_HEADER: [&str; 6] = ["filter", "width", "height", "radius", "iterations", "seconds"];

/// Writes `bytes` to `path` via a sibling temporary file and an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Formats seconds in scientific notation with nine significant digits.
pub fn format_seconds(seconds: f64) -> String {
    format!("{seconds:.8e}")
}

pub fn encode_csv(rows: &[BenchRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.filter.clone(),
            r.width.to_string(),
            r.height.to_string(),
            r.radius.to_string(),
            r.iterations.to_string(),
            format_seconds(r.seconds),
        ])?;
    }
    w.flush()?;
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

pub fn write_csv(rows: &[BenchRecord], path: &Path) -> Result<()> {
    write_atomic(path, &encode_csv(rows)?)
}

pub fn read_csv(path: &Path) -> Result<Vec<BenchRecord>> {
    let bytes = fs::read(path)?;
    let mut r = csv::Reader::from_reader(bytes.as_slice());
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let bad = |what: &str| crate::error::Error::parse(0, format!("csv row {}: bad {what}", line + 1));
        out.push(BenchRecord {
            filter: field(0).to_string(),
            width: field(1).parse().map_err(|_| bad("width"))?,
            height: field(2).parse().map_err(|_| bad("height"))?,
            radius: field(3).parse().map_err(|_| bad("radius"))?,
            iterations: field(4).parse().map_err(|_| bad("iterations"))?,
            seconds: field(5).parse().map_err(|_| bad("seconds"))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(seconds: f64) -> BenchRecord {
        BenchRecord {
            filter: "osbf".into(),
            width: 256,
            height: 256,
            radius: 2,
            iterations: 1,
            seconds,
        }
    }

    #[test]
    fn header_only() {
        let text = String::from_utf8(encode_csv(&[]).unwrap()).unwrap();
        assert_eq!(text, "filter,width,height,radius,iterations,seconds\n");
    }

    #[test]
    fn one_record_two_lines() {
        let text = String::from_utf8(encode_csv(&[record(0.0012345678)]).unwrap()).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "osbf,256,256,2,1,1.23456780e-3");
    }

    #[test]
    fn seconds_keep_six_significant_digits() {
        for s in [0.5, 7.0e-7, 123.456789, 0.000123456] {
            let f = format_seconds(s);
            let mantissa = f.split('e').next().unwrap().replace('.', "");
            assert!(mantissa.len() >= 6, "{f}");
            assert!(f.contains('.'));
            let back: f64 = f.parse().unwrap();
            assert!((back - s).abs() <= 1e-6 * s);
        }
    }

    #[test]
    fn csv_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bench.csv");
        let rows = vec![record(0.25), BenchRecord { filter: "box".into(), ..record(1e-4) }];
        write_csv(&rows, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), rows);
    }
}
