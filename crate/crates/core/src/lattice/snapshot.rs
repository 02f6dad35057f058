//! Binary snapshot format: one JSON header line, then raw little-endian f64
//! payload in row-major order (interleaved re/im for complex fields).
//! Round-trips are bit-exact.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Field, Grid};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Header {
    dim: usize,
    #[serde(rename = "L")]
    half_period: f64,
    n: usize,
    complex: bool,
    dtype: String,
}

fn write_header(w: &mut impl Write, grid: &Grid, complex: bool) -> Result<()> {
    let header = Header {
        dim: grid.dim(),
        half_period: grid.half_period(),
        n: grid.n(),
        complex,
        dtype: "f64le".to_string(),
    };
    let line = serde_json::to_string(&header)?;
    w.write_all(line.as_bytes())?;
    w.write_all(b"\n")?;
    Ok(())
}

fn read_header(r: &mut impl BufRead) -> Result<(Grid, bool)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: Header = serde_json::from_str(line.trim_end())
        .map_err(|e| Error::SnapshotFormat(format!("bad header: {e}")))?;
    if header.dtype != "f64le" {
        return Err(Error::SnapshotFormat(format!(
            "unsupported dtype {}",
            header.dtype
        )));
    }
    let grid = Grid::new(header.dim, header.half_period, header.n)?;
    Ok((grid, header.complex))
}

/// Write a complex field snapshot.
pub fn write_field(path: impl AsRef<Path>, field: &Field) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, field.grid(), true)?;
    for v in field.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Read a complex field snapshot.
pub fn read_field(path: impl AsRef<Path>) -> Result<Field> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let (grid, complex) = read_header(&mut r)?;
    if !complex {
        return Err(Error::SnapshotFormat(
            "expected a complex field snapshot".into(),
        ));
    }
    let values = read_f64_payload(&mut r, 2 * grid.len())?
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    Field::from_values(&grid, values)
}

/// Write a real payload snapshot (`complex: false`).
pub fn write_real(path: impl AsRef<Path>, grid: &Grid, values: &[f64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::GridMismatch);
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut w, grid, false)?;
    for v in values {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Read a real payload snapshot.
pub fn read_real(path: impl AsRef<Path>) -> Result<(Grid, Vec<f64>)> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let (grid, complex) = read_header(&mut r)?;
    if complex {
        return Err(Error::SnapshotFormat("expected a real snapshot".into()));
    }
    let values = read_f64_payload(&mut r, grid.len())?;
    Ok((grid, values))
}

/// Parse just the header of a snapshot, plus the payload byte count.
pub fn describe(path: impl AsRef<Path>) -> Result<String> {
    let mut r = BufReader::new(std::fs::File::open(&path)?);
    let (grid, complex) = read_header(&mut r)?;
    let mut rest = Vec::new();
    r.read_to_end(&mut rest)?;
    let expected = grid.len() * 8 * if complex { 2 } else { 1 };
    Ok(format!(
        "dim={} L={} n={} complex={} payload_bytes={} (expected {})",
        grid.dim(),
        grid.half_period(),
        grid.n(),
        complex,
        rest.len(),
        expected
    ))
}

fn read_f64_payload(r: &mut impl Read, count: usize) -> Result<Vec<f64>> {
    let mut bytes = vec![0u8; count * 8];
    r.read_exact(&mut bytes)
        .map_err(|_| Error::SnapshotFormat("payload shorter than header implies".into()))?;
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}
