//! On-disk formats: F64G binary grids, P5 graymaps and CSV tables.

use std::fs;
use std::io::Write;
use std::path::Path;

use stirap_core::analysis::log_density;
use stirap_core::{GridSpec2D, ScalarField2D};

use crate::error::{io_err, CliError, Result};

pub const GRID_MAGIC: &[u8; 4] = b"F64G";
pub const GRID_VERSION: u16 = 1;
/// Magic, version, nx, ny, x0, y0, dx, dy.
pub const GRID_HEADER_BYTES: usize = 4 + 2 + 4 + 4 + 4 * 8;

/// Serialize a field to F64G bytes: little-endian header then `nx·ny` f64
/// values, row-major with `x` fastest.
pub fn encode_grid(field: &ScalarField2D) -> Vec<u8> {
    let g = &field.grid;
    let mut out = Vec::with_capacity(GRID_HEADER_BYTES + 8 * field.values.len());
    out.extend_from_slice(GRID_MAGIC);
    out.extend_from_slice(&GRID_VERSION.to_le_bytes());
    out.extend_from_slice(&(g.nx as u32).to_le_bytes());
    out.extend_from_slice(&(g.ny as u32).to_le_bytes());
    for v in [g.x0, g.y0, g.dx, g.dy] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in &field.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

/// Parse F64G bytes. `origin` only labels errors.
pub fn decode_grid(bytes: &[u8], origin: &Path) -> Result<ScalarField2D> {
    let fail = |message: String| CliError::Format {
        path: origin.to_path_buf(),
        message,
    };
    if bytes.len() < GRID_HEADER_BYTES {
        if bytes.len() >= 4 && &bytes[..4] != GRID_MAGIC {
            return Err(fail("bad magic, not an F64G grid".into()));
        }
        return Err(fail(format!("truncated header: {} of {GRID_HEADER_BYTES} bytes", bytes.len())));
    }
    if &bytes[..4] != GRID_MAGIC {
        return Err(fail("bad magic, not an F64G grid".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != GRID_VERSION {
        return Err(fail(format!("unsupported F64G version {version}, expected {GRID_VERSION}")));
    }
    let u32_at = |k: usize| u32::from_le_bytes(bytes[k..k + 4].try_into().unwrap()) as usize;
    let f64_at = |k: usize| f64::from_le_bytes(bytes[k..k + 8].try_into().unwrap());
    let (nx, ny) = (u32_at(6), u32_at(10));
    let (x0, y0, dx, dy) = (f64_at(14), f64_at(22), f64_at(30), f64_at(38));
    let count = nx
        .checked_mul(ny)
        .ok_or_else(|| fail(format!("grid {nx}×{ny} is too large")))?;
    let expected = GRID_HEADER_BYTES + 8 * count;
    if bytes.len() < expected {
        return Err(fail(format!("truncated payload: {} of {expected} bytes", bytes.len())));
    }
    if bytes.len() > expected {
        return Err(fail(format!("{} trailing bytes after the payload", bytes.len() - expected)));
    }
    let grid = GridSpec2D::new(nx, ny, x0, y0, dx, dy).map_err(|e| fail(e.to_string()))?;
    let values = bytes[GRID_HEADER_BYTES..].chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    ScalarField2D::new(grid, values).map_err(|e| fail(e.to_string()))
}

pub fn write_grid(field: &ScalarField2D, path: &Path) -> Result<()> {
    fs::write(path, encode_grid(field)).map_err(io_err(path))
}

/// Read a whole F64G file; nothing is returned unless it parses completely.
pub fn read_grid(path: &Path) -> Result<ScalarField2D> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    decode_grid(&bytes, path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    /// `log₁₀` of the value, floored at `10⁻¹²` of the maximum.
    Log,
}

/// 8-bit gray levels, row 0 = largest `y`. Linear maps `[min(0, lo), hi]`
/// onto `[0, 255]`, so zero is black and the maximum white; log maps the
/// floored `log₁₀` range. A field with no range renders white.
pub fn heatmap_pixels(field: &ScalarField2D, scale: Scale) -> Result<Vec<u8>> {
    if field.values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Usage("cannot render a field with non-finite values".into()));
    }
    let shown = match scale {
        Scale::Linear => field.clone(),
        Scale::Log => {
            if !(field.max() > 0.0) {
                return Err(CliError::Usage("log scale needs a positive maximum".into()));
            }
            log_density(field, None).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    let hi = shown.max();
    let lo = match scale {
        Scale::Linear => shown.min().min(0.0),
        Scale::Log => shown.min(),
    };
    let g = &field.grid;
    let mut px = Vec::with_capacity(g.len());
    for j in (0..g.ny).rev() {
        for i in 0..g.nx {
            let v = shown.at(i, j);
            let level = if hi > lo { (255.0 * (v - lo) / (hi - lo)).round() } else { 255.0 };
            px.push(level.clamp(0.0, 255.0) as u8);
        }
    }
    Ok(px)
}

/// Binary portable graymap (P5), width `nx`, height `ny`.
pub fn render_heatmap(field: &ScalarField2D, path: &Path, scale: Scale) -> Result<()> {
    let px = heatmap_pixels(field, scale)?;
    let mut out = format!("P5\n{} {}\n255\n", field.grid.nx, field.grid.ny).into_bytes();
    out.extend_from_slice(&px);
    fs::write(path, out).map_err(io_err(path))
}

/// Comma-separated table with a header row; numbers use Rust's shortest
/// round-trip formatting.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.write_record(&r).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(io_err(path))
}

/// Map as `x,y,value` rows in storage order.
pub fn write_field_csv(field: &ScalarField2D, path: &Path) -> Result<()> {
    let rows = field
        .grid
        .points()
        .zip(&field.values)
        .map(|((_, _, (x, y)), v)| vec![x.to_string(), y.to_string(), v.to_string()]);
    write_csv(path, &["x", "y", "value"], rows)
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => CliError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => CliError::Format {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

/// Write `bytes` and flush them to disk.
pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(io_err(path))?;
    f.write_all(bytes).map_err(io_err(path))?;
    f.sync_all().map_err(io_err(path))
}
