//! Uniform rectangular grids and the fields sampled on them.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// A uniform 2D grid. Point `(i, j)` sits at `(x0 + i·dx, y0 + j·dy)` and is
/// stored at linear index `j·nx + i` (rows of constant `y`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec2D {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub y0: f64,
    pub dx: f64,
    pub dy: f64,
}

impl GridSpec2D {
    pub fn new(nx: usize, ny: usize, x0: f64, y0: f64, dx: f64, dy: f64) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(invalid(format!("grid needs at least 2×2 points, got {nx}×{ny}")));
        }
        if !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(invalid(format!("grid spacing must be positive, got dx={dx}, dy={dy}")));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(invalid("grid origin must be finite"));
        }
        Ok(Self { nx, ny, x0, y0, dx, dy })
    }

    /// Grid whose first and last points land on the range endpoints.
    pub fn spanning(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(invalid(format!("grid needs at least 2×2 points, got {nx}×{ny}")));
        }
        Self::new(
            nx,
            ny,
            x.0,
            y.0,
            (x.1 - x.0) / (nx - 1) as f64,
            (y.1 - y.0) / (ny - 1) as f64,
        )
    }

    /// Cell-centred grid for a periodic box `[x.0, x.1) × [y.0, y.1)`: spacing
    /// `L/n`, first point half a cell inside the box. An odd point count puts a
    /// point on the box centre.
    pub fn periodic_box(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(invalid(format!("grid needs at least 2×2 points, got {nx}×{ny}")));
        }
        let dx = (x.1 - x.0) / nx as f64;
        let dy = (y.1 - y.0) / ny as f64;
        Self::new(nx, ny, x.0 + 0.5 * dx, y.0 + 0.5 * dy, dx, dy)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.dy
    }

    #[inline]
    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x(i), self.y(j))
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.nx - 1)
    }

    pub fn y_max(&self) -> f64 {
        self.y(self.ny - 1)
    }

    #[inline]
    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    /// Same grid with every length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            x0: self.x0 * factor,
            y0: self.y0 * factor,
            dx: self.dx * factor,
            dy: self.dy * factor,
            ..*self
        }
    }

    /// All points in storage order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize, (f64, f64))> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.point(i, j))))
    }

    /// Bilinear interpolation weights for an arbitrary point inside the grid.
    pub(crate) fn locate(&self, x: f64, y: f64) -> Option<(usize, usize, f64, f64)> {
        let fx = (x - self.x0) / self.dx;
        let fy = (y - self.y0) / self.dy;
        if !(fx >= 0.0 && fy >= 0.0 && fx <= (self.nx - 1) as f64 && fy <= (self.ny - 1) as f64) {
            return None;
        }
        let i = (fx.floor() as usize).min(self.nx - 2);
        let j = (fy.floor() as usize).min(self.ny - 2);
        Some((i, j, fx - i as f64, fy - j as f64))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Real-valued map on a grid (populations, margins, densities, phases).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField2D {
    pub grid: GridSpec2D,
    pub values: Vec<f64>,
}

impl ScalarField2D {
    pub fn new(grid: GridSpec2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "field has {} values, grid needs {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite field value at index {k}")));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = grid.points().map(|(_, _, (x, y))| f(x, y)).collect();
        Self { grid, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Index pair of the largest value (first occurrence in storage order).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (k, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = k;
            }
        }
        (best % self.grid.nx, best / self.grid.nx)
    }

    pub fn ensure_same_grid(&self, other: &ScalarField2D) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }
}

/// Complex-valued field on a grid (a single condensate component).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField2D {
    pub grid: GridSpec2D,
    pub values: Vec<Complex64>,
}

impl ComplexField2D {
    pub fn new(grid: GridSpec2D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(invalid(format!(
                "field has {} values, grid needs {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: GridSpec2D, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let values = grid.points().map(|(_, _, (x, y))| f(x, y)).collect();
        Self { grid, values }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn density(&self) -> ScalarField2D {
        ScalarField2D {
            grid: self.grid,
            values: self.values.iter().map(|z| z.norm_sqr()).collect(),
        }
    }

    /// Bilinear interpolation; `None` outside the grid.
    pub fn sample(&self, x: f64, y: f64) -> Option<Complex64> {
        let (i, j, tx, ty) = self.grid.locate(x, y)?;
        let g = &self.grid;
        let v00 = self.values[g.index(i, j)];
        let v10 = self.values[g.index(i + 1, j)];
        let v01 = self.values[g.index(i, j + 1)];
        let v11 = self.values[g.index(i + 1, j + 1)];
        Some(
            v00 * ((1.0 - tx) * (1.0 - ty))
                + v10 * (tx * (1.0 - ty))
                + v01 * ((1.0 - tx) * ty)
                + v11 * (tx * ty),
        )
    }
}

/// Samples of a 1D profile at (not necessarily uniform) positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile1D {
    pub positions: Vec<f64>,
    pub values: Vec<f64>,
}

impl Profile1D {
    pub fn new(positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(invalid("profile positions and values differ in length"));
        }
        Ok(Self { positions, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_grid_hits_both_endpoints() {
        let g = GridSpec2D::spanning(201, 201, (-2.0, 2.0), (-2.0, 2.0)).unwrap();
        assert_eq!(g.x(0), -2.0);
        assert!((g.x_max() - 2.0).abs() < 1e-12);
        assert_eq!(g.x(100), 0.0);
    }

    #[test]
    fn odd_periodic_box_has_centre_point() {
        let g = GridSpec2D::periodic_box(129, 129, (-50.0, 50.0), (-50.0, 50.0)).unwrap();
        assert!(g.x(64).abs() < 1e-12);
        assert!((g.dx - 100.0 / 129.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(GridSpec2D::new(1, 5, 0.0, 0.0, 1.0, 1.0).is_err());
        assert!(GridSpec2D::new(5, 5, 0.0, 0.0, 0.0, 1.0).is_err());
        assert!(ScalarField2D::new(GridSpec2D::new(2, 2, 0.0, 0.0, 1.0, 1.0).unwrap(), vec![0.0; 3]).is_err());
    }

    #[test]
    fn bilinear_sample_is_exact_for_linear_fields() {
        let g = GridSpec2D::spanning(11, 11, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = ComplexField2D::from_fn(g, |x, y| Complex64::new(2.0 * x - y, x + 3.0 * y));
        let z = f.sample(0.337, 0.651).unwrap();
        assert!((z - Complex64::new(2.0 * 0.337 - 0.651, 0.337 + 3.0 * 0.651)).norm() < 1e-12);
        assert!(f.sample(1.5, 0.2).is_none());
    }
}
