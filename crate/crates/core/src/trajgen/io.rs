use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{MissingMask, Provenance, Trajectory, TrajectoryPoint};
use crate::error::{Error, Result};

/// `t,x,y` with a header row.
pub fn render_trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,x,y\n");
    for p in traj.points() {
        let _ = writeln!(out, "{},{},{}", p.t, p.x, p.y);
    }
    out
}

pub fn render_mask_csv(mask: &MissingMask) -> String {
    let mut out = String::from("t\n");
    for t in mask.indices() {
        let _ = writeln!(out, "{t}");
    }
    out
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    fs::write(path, render_trajectory_csv(traj))?;
    Ok(())
}

pub fn write_mask_csv(path: &Path, mask: &MissingMask) -> Result<()> {
    fs::write(path, render_mask_csv(mask))?;
    Ok(())
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(|e| parse_error(1, e))?;
    let names: Vec<&str> = header.iter().collect();
    if names != expected {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`, got `{}`", expected.join(","), names.join(",")),
        });
    }
    Ok(())
}

fn parse_error(line: u64, e: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, i: usize, name: &str, line: u64) -> Result<T> {
    let raw = record.get(i).ok_or_else(|| parse_error(line, format!("missing field `{name}`")))?;
    raw.parse()
        .map_err(|_| parse_error(line, format!("invalid {name} value `{raw}`")))
}

/// Parses a `t,x,y` table. Line numbers in errors count the header as line 1.
pub fn parse_trajectory_csv(text: &str) -> Result<Trajectory> {
    let mut rdr = reader(text);
    check_header(&mut rdr, &["t", "x", "y"])?;
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let t: i64 = field(&record, 0, "t", line)?;
        let x: f64 = field(&record, 1, "x", line)?;
        let y: f64 = field(&record, 2, "y", line)?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(parse_error(line, "non-finite coordinate"));
        }
        if let Some(prev) = points.last().map(|p: &TrajectoryPoint| p.t) {
            if t <= prev {
                return Err(Error::Validation(format!(
                    "line {line}: time index {t} does not increase after {prev}"
                )));
            }
        }
        points.push(TrajectoryPoint { t, x, y });
    }
    Trajectory::new(points, Provenance::Loaded)
}

/// Parses a one-column `t` table of masked indices.
pub fn parse_mask_csv(text: &str) -> Result<MissingMask> {
    let mut rdr = reader(text);
    check_header(&mut rdr, &["t"])?;
    let mut indices = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        indices.push(field::<i64>(&record, 0, "t", line)?);
    }
    MissingMask::new(indices)
}

pub fn load_trajectory_csv(path: &Path) -> Result<Trajectory> {
    parse_trajectory_csv(&fs::read_to_string(path)?)
}

pub fn load_mask_csv(path: &Path) -> Result<MissingMask> {
    parse_mask_csv(&fs::read_to_string(path)?)
}
