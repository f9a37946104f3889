//! File formats: point-set CSV (`x,y`, no header), diagram CSV
//! (`dim,birth,death`), Gram CSV with a JSON sidecar, and band CSV
//! (`zx,zy,center,lo,hi`). Floats are written with 17 significant digits so
//! values round-trip exactly.

use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{PersistenceDiagram, PersistencePair, PointSet};
use crate::inference::ConfidenceBand;
use crate::vectorization::DiagramGram;

/// 17 significant digits: exact round-trip for f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad {what} `{s}`: {e}")))
}

pub fn write_point_set_csv(path: &Path, ps: &PointSet) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for p in ps.points() {
        writeln!(w, "{},{}", fmt_f64(p[0]), fmt_f64(p[1]))?;
    }
    Ok(())
}

pub fn read_point_set_csv(path: &Path) -> Result<PointSet> {
    let reader = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut points = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let (Some(x), Some(y), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::Parse(format!(
                "line {}: expected `x,y`, got `{line}`",
                lineno + 1
            )));
        };
        points.push([parse_f64(x, "x")?, parse_f64(y, "y")?]);
    }
    PointSet::new(points)
}

/// Writes diagrams (any mix of dimensions) as `dim,birth,death` rows under a
/// header line.
pub fn write_diagram_csv(path: &Path, diagrams: &[&PersistenceDiagram]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "dim,birth,death")?;
    for d in diagrams {
        for p in d.pairs() {
            writeln!(w, "{},{},{}", d.dimension(), fmt_f64(p.birth), fmt_f64(p.death))?;
        }
    }
    Ok(())
}

/// Reads a diagram CSV back, grouping rows by dimension (ascending).
pub fn read_diagram_csv(path: &Path) -> Result<Vec<PersistenceDiagram>> {
    let reader = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut by_dim: std::collections::BTreeMap<u32, Vec<PersistencePair>> =
        std::collections::BTreeMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == "dim,birth,death") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!(
                "line {}: expected `dim,birth,death`, got `{line}`",
                lineno + 1
            )));
        }
        let dim: u32 = cols[0]
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad dim `{}`: {e}", cols[0])))?;
        by_dim.entry(dim).or_default().push(PersistencePair {
            birth: parse_f64(cols[1], "birth")?,
            death: parse_f64(cols[2], "death")?,
        });
    }
    by_dim
        .into_iter()
        .map(|(dim, pairs)| PersistenceDiagram::new(dim, pairs))
        .collect()
}

/// Square Gram CSV; kernel family and parameters go in the JSON sidecar.
pub fn write_gram_csv(path: &Path, gram: &DiagramGram) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    let n = gram.size();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_f64(gram.value(i, j))).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Band CSV: `zx,zy,center,lo,hi` with a header row.
pub fn write_band_csv(path: &Path, band: &ConfidenceBand) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "zx,zy,center,lo,hi")?;
    for (i, z) in band.grid().points().iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_f64(z[0]),
            fmt_f64(z[1]),
            fmt_f64(band.center()[i]),
            fmt_f64(band.lower(i)),
            fmt_f64(band.upper(i))
        )?;
    }
    Ok(())
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    writeln!(w, "{text}")?;
    Ok(())
}
