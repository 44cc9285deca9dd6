//! Post-processing shared by population maps and condensate snapshots.

use std::f64::consts::TAU;

use crate::error::{invalid, Error, Result};
use crate::grid::{Axis, ComplexField2D, Profile1D, ScalarField2D};
use crate::localization::fwhm;

/// `log₁₀(max(v, floor))` per point. `None` uses `10⁻¹²` of the field maximum.
pub fn log_density(field: &ScalarField2D, floor: Option<f64>) -> Result<ScalarField2D> {
    let floor = match floor {
        Some(f) => f,
        None => 1e-12 * field.max(),
    };
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(invalid(format!("log floor must be positive, got {floor}")));
    }
    Ok(ScalarField2D {
        grid: field.grid,
        values: field.values.iter().map(|v| v.max(floor).log10()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub profile: Profile1D,
    /// Coordinate of the extracted row (for `Axis::X`) or column.
    pub coordinate: f64,
    pub index: usize,
}

/// Nearest grid row (`Axis::X`, fixed `y = offset`) or column (`Axis::Y`,
/// fixed `x = offset`).
pub fn slice(field: &ScalarField2D, axis: Axis, offset: f64) -> Result<Slice> {
    let g = &field.grid;
    let (origin, step, n, last) = match axis {
        Axis::X => (g.y0, g.dy, g.ny, g.y_max()),
        Axis::Y => (g.x0, g.dx, g.nx, g.x_max()),
    };
    let slack = 1e-9 * step;
    if !(offset >= origin - slack && offset <= last + slack) {
        return Err(Error::OutOfBounds { offset, min: origin, max: last });
    }
    let index = (((offset - origin) / step).round() as usize).min(n - 1);
    let (positions, values, coordinate) = match axis {
        Axis::X => (
            (0..g.nx).map(|i| g.x(i)).collect(),
            (0..g.nx).map(|i| field.at(i, index)).collect(),
            g.y(index),
        ),
        Axis::Y => (
            (0..g.ny).map(|j| g.y(j)).collect(),
            (0..g.ny).map(|j| field.at(index, j)).collect(),
            g.x(index),
        ),
    };
    Ok(Slice {
        profile: Profile1D { positions, values },
        coordinate,
        index,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapComparison {
    pub max_abs_diff: f64,
    /// `√(∫(a − b)²)`.
    pub l2_diff: f64,
    /// FWHM of `a` over FWHM of `b`, each along x through its maximum.
    pub fwhm_ratio: Option<f64>,
}

fn peak_width(f: &ScalarField2D) -> Option<f64> {
    let (_, j) = f.argmax();
    slice(f, Axis::X, f.grid.y(j)).ok().and_then(|s| fwhm(&s.profile).ok()).map(|r| r.width)
}

pub fn compare_maps(a: &ScalarField2D, b: &ScalarField2D) -> Result<MapComparison> {
    a.ensure_same_grid(b)?;
    let mut max_abs_diff: f64 = 0.0;
    let mut sq = 0.0;
    for (x, y) in a.values.iter().zip(&b.values) {
        let d = x - y;
        max_abs_diff = max_abs_diff.max(d.abs());
        sq += d * d;
    }
    let fwhm_ratio = match (peak_width(a), peak_width(b)) {
        (Some(wa), Some(wb)) if wb > 0.0 => Some(wa / wb),
        _ => None,
    };
    Ok(MapComparison {
        max_abs_diff,
        l2_diff: (sq * a.grid.cell_area()).sqrt(),
        fwhm_ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vortex {
    pub position: (f64, f64),
    pub charge: i32,
}

/// Phase winding along a closed chain of grid indices, or `None` if any
/// sample falls below `floor`.
fn chain_winding(psi: &ComplexField2D, chain: &[(usize, usize)], floor: f64) -> Option<i32> {
    let g = &psi.grid;
    let mut total = 0.0;
    for k in 0..chain.len() {
        let (i0, j0) = chain[k];
        let (i1, j1) = chain[(k + 1) % chain.len()];
        let z0 = psi.values[g.index(i0, j0)];
        let z1 = psi.values[g.index(i1, j1)];
        if !(z0.norm() > floor) {
            return None;
        }
        total += (z1 / z0).arg();
    }
    Some((total / TAU).round() as i32)
}

/// Counter-clockwise perimeter of an index rectangle.
fn perimeter(i0: usize, j0: usize, i1: usize, j1: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in i0..i1 {
        out.push((i, j0));
    }
    for j in j0..j1 {
        out.push((i1, j));
    }
    for i in (i0 + 1..=i1).rev() {
        out.push((i, j1));
    }
    for j in (j0 + 1..=j1).rev() {
        out.push((i0, j));
    }
    out
}

/// Phase singularities of `ψ` where `|ψ|` around them exceeds
/// `relative_floor` of the field maximum. Every interior point is tested with
/// the ring of its eight neighbours; flagged points are merged into
/// 8-connected clusters, and each cluster's charge is the winding around its
/// bounding box grown by one cell.
pub fn find_vortices(psi: &ComplexField2D, relative_floor: f64) -> Result<Vec<Vortex>> {
    if !(relative_floor > 0.0 && relative_floor < 1.0) {
        return Err(invalid(format!("amplitude floor must lie in (0, 1), got {relative_floor}")));
    }
    let g = psi.grid;
    let floor = relative_floor * psi.max_abs();
    let mut flagged = vec![0i32; g.len()];
    for j in 1..g.ny - 1 {
        for i in 1..g.nx - 1 {
            let ring = perimeter(i - 1, j - 1, i + 1, j + 1);
            if let Some(w) = chain_winding(psi, &ring, floor) {
                flagged[g.index(i, j)] = w;
            }
        }
    }
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for start in 0..g.len() {
        if flagged[start] == 0 || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let (mut sx, mut sy, mut count) = (0.0, 0.0, 0usize);
        let (mut imin, mut imax, mut jmin, mut jmax) = (usize::MAX, 0, usize::MAX, 0);
        let mut votes = 0i32;
        while let Some(k) = stack.pop() {
            let (i, j) = (k % g.nx, k / g.nx);
            let (x, y) = g.point(i, j);
            sx += x;
            sy += y;
            count += 1;
            votes += flagged[k];
            imin = imin.min(i);
            imax = imax.max(i);
            jmin = jmin.min(j);
            jmax = jmax.max(j);
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= g.nx as i64 || nj >= g.ny as i64 {
                        continue;
                    }
                    let nk = g.index(ni as usize, nj as usize);
                    if flagged[nk] != 0 && !seen[nk] {
                        seen[nk] = true;
                        stack.push(nk);
                    }
                }
            }
        }
        let boxed = if imin >= 2 && jmin >= 2 && imax + 2 < g.nx && jmax + 2 < g.ny {
            chain_winding(psi, &perimeter(imin - 2, jmin - 2, imax + 2, jmax + 2), floor)
        } else {
            None
        };
        let charge = boxed.unwrap_or_else(|| (votes as f64 / count as f64).round() as i32);
        if charge != 0 {
            out.push(Vortex {
                position: (sx / count as f64, sy / count as f64),
                charge,
            });
        }
    }
    Ok(out)
}
