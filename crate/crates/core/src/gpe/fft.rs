use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::GridSpec2D;

/// Unnormalized 2D FFT over a row-major `nx × ny` array: rows, then columns
/// through a transpose. `inverse(forward(x)) = nx·ny·x`.
pub struct Fft2 {
    nx: usize,
    ny: usize,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
    transposed: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Fft2 {
    pub fn new(nx: usize, ny: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd_x = planner.plan_fft_forward(nx);
        let inv_x = planner.plan_fft_inverse(nx);
        let fwd_y = planner.plan_fft_forward(ny);
        let inv_y = planner.plan_fft_inverse(ny);
        let scratch_len = [&fwd_x, &inv_x, &fwd_y, &inv_y]
            .iter()
            .map(|f| f.get_inplace_scratch_len())
            .max()
            .unwrap_or(0);
        Self {
            nx,
            ny,
            fwd_x,
            inv_x,
            fwd_y,
            inv_y,
            transposed: vec![Complex64::new(0.0, 0.0); nx * ny],
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn forward(&mut self, data: &mut [Complex64]) {
        let (fx, fy) = (self.fwd_x.clone(), self.fwd_y.clone());
        self.run(data, &*fx, &*fy);
    }

    pub fn inverse(&mut self, data: &mut [Complex64]) {
        let (fx, fy) = (self.inv_x.clone(), self.inv_y.clone());
        self.run(data, &*fx, &*fy);
    }

    fn run(&mut self, data: &mut [Complex64], fx: &dyn Fft<f64>, fy: &dyn Fft<f64>) {
        let (nx, ny) = (self.nx, self.ny);
        assert_eq!(data.len(), nx * ny);
        fx.process_with_scratch(data, &mut self.scratch);
        for j in 0..ny {
            for i in 0..nx {
                self.transposed[i * ny + j] = data[j * nx + i];
            }
        }
        fy.process_with_scratch(&mut self.transposed, &mut self.scratch);
        for i in 0..nx {
            for j in 0..ny {
                data[j * nx + i] = self.transposed[i * ny + j];
            }
        }
    }
}

/// `|k|²` in storage order for the periodic box of period `n·dx`.
pub fn wavenumbers_squared(grid: &GridSpec2D) -> Vec<f64> {
    let axis = |n: usize, d: f64| -> Vec<f64> {
        let dk = TAU / (n as f64 * d);
        (0..n)
            .map(|i| {
                let m = if i <= (n - 1) / 2 { i as f64 } else { i as f64 - n as f64 };
                m * dk
            })
            .collect()
    };
    let kx = axis(grid.nx, grid.dx);
    let ky = axis(grid.ny, grid.dy);
    let mut out = Vec::with_capacity(grid.len());
    for y in &ky {
        for x in &kx {
            out.push(x * x + y * y);
        }
    }
    out
}
