//! `t,x,y,z` text format for sampled curves.

use std::io::{self, Read, Write};

use super::SampledCurve;
use crate::error::{Error, Result};
use crate::format;
use crate::Vec3;

pub const HEADER: [&str; 4] = ["t", "x", "y", "z"];

/// Allowed deviation of each parameter step from the mean step.
pub const UNIFORMITY_TOL: f64 = 1e-9;

fn csv_err(line: u64, message: impl Into<String>) -> Error {
    Error::Csv { line: line as usize, message: message.into() }
}

/// Reads a uniformly sampled curve. The first line must be the header
/// `t,x,y,z`; parameters must increase with a constant step.
pub fn read_curve_csv<R: Read>(reader: R) -> Result<SampledCurve> {
    let mut rdr = ::csv::ReaderBuilder::new().has_headers(true).trim(::csv::Trim::All).from_reader(reader);
    let header = rdr.headers().map_err(|e| csv_err(1, e.to_string()))?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(csv_err(1, format!("expected header `t,x,y,z`, found `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut ts = Vec::new();
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut v = [0.0; 4];
        for (k, field) in rec.iter().enumerate() {
            v[k] = field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| csv_err(line, format!("`{field}` is not a finite decimal number")))?;
        }
        ts.push(v[0]);
        points.push(Vec3::new(v[1], v[2], v[3]));
        lines.push(line);
    }
    let n = ts.len();
    if n < super::MIN_SAMPLES {
        return Err(Error::SampleCountTooSmall { got: n, min: super::MIN_SAMPLES });
    }
    let step = (ts[n - 1] - ts[0]) / (n - 1) as f64;
    for i in 1..n {
        let dt = ts[i] - ts[i - 1];
        if !(dt > 0.0) {
            return Err(csv_err(lines[i], "parameter is not strictly increasing"));
        }
        if (dt - step).abs() > UNIFORMITY_TOL {
            return Err(csv_err(lines[i], format!("parameter step {dt} deviates from the uniform step {step}")));
        }
    }
    SampledCurve::from_points(ts[0], step, points, false)
}

pub fn read_curve_csv_path(path: &std::path::Path) -> Result<SampledCurve> {
    let file = std::fs::File::open(path).map_err(|e| csv_err(0, format!("{}: {e}", path.display())))?;
    read_curve_csv(io::BufReader::new(file))
}

pub fn write_curve_csv<W: Write>(curve: &SampledCurve, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", HEADER.join(","))?;
    for (i, p) in curve.points.iter().enumerate() {
        writeln!(out, "{}", format::row(&[curve.param(i), p.x, p.y, p.z]))?;
    }
    Ok(())
}
