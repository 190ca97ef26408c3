//! Sinogram sampling grids and the sinogram container.

use std::f64::consts::TAU;

use thiserror::Error;

/// Detector/angle sampling grid for a sinogram.
///
/// Default construction places detector offsets at pixel centers over
/// [-1,1] (t_k = -1 + (2k+1)/n_t) and angles uniformly over [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct SinogramGrid {
    pub t_values: Vec<f64>,
    pub theta_values: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("detector count must be >= 1, got {0}")]
    BadDetectorCount(usize),
    #[error("angle count must be >= 1, got {0}")]
    BadAngleCount(usize),
    #[error("sinogram dimensions {rows}x{cols} do not match grid {nt}x{ntheta}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        nt: usize,
        ntheta: usize,
    },
}

impl SinogramGrid {
    pub fn new(n_t: usize, n_theta: usize) -> Result<Self, GridError> {
        if n_t == 0 {
            return Err(GridError::BadDetectorCount(n_t));
        }
        if n_theta == 0 {
            return Err(GridError::BadAngleCount(n_theta));
        }
        let t_values = (0..n_t)
            .map(|k| -1.0 + (2.0 * k as f64 + 1.0) / n_t as f64)
            .collect();
        let theta_values = (0..n_theta)
            .map(|j| j as f64 * (TAU / n_theta as f64))
            .collect();
        Ok(SinogramGrid {
            t_values,
            theta_values,
        })
    }

    pub fn n_t(&self) -> usize {
        self.t_values.len()
    }

    pub fn n_theta(&self) -> usize {
        self.theta_values.len()
    }

    /// Detector pitch. Assumes the uniform default grid.
    pub fn dt(&self) -> f64 {
        if self.t_values.len() < 2 {
            return 2.0;
        }
        self.t_values[1] - self.t_values[0]
    }
}

/// Radon values on an explicit (t, θ) grid; row k ↔ t_k, column j ↔ θ_j.
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram {
    pub grid: SinogramGrid,
    /// Row-major n_t × n_theta matrix.
    pub values: Vec<f64>,
}

impl Sinogram {
    pub fn new(grid: SinogramGrid, values: Vec<f64>) -> Result<Self, GridError> {
        if values.len() != grid.n_t() * grid.n_theta() {
            return Err(GridError::DimensionMismatch {
                rows: values.len() / grid.n_theta().max(1),
                cols: grid.n_theta(),
                nt: grid.n_t(),
                ntheta: grid.n_theta(),
            });
        }
        Ok(Sinogram { grid, values })
    }

    pub fn zeros(grid: SinogramGrid) -> Self {
        let len = grid.n_t() * grid.n_theta();
        Sinogram {
            grid,
            values: vec![0.0; len],
        }
    }

    #[inline]
    pub fn at(&self, k: usize, j: usize) -> f64 {
        self.values[k * self.grid.n_theta() + j]
    }

    #[inline]
    pub fn set(&mut self, k: usize, j: usize, v: f64) {
        let ntheta = self.grid.n_theta();
        self.values[k * ntheta + j] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_matches_convention() {
        let g = SinogramGrid::new(4, 360).unwrap();
        assert_eq!(g.t_values, vec![-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(g.theta_values[0], 0.0);
        assert!((g.theta_values[1] - TAU / 360.0).abs() < 1e-15);
        assert_eq!(g.n_theta(), 360);
        // strictly increasing, symmetric about 0
        for w in g.t_values.windows(2) {
            assert!(w[0] < w[1]);
        }
        for k in 0..g.n_t() {
            assert!((g.t_values[k] + g.t_values[g.n_t() - 1 - k]).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_empty_grids() {
        assert!(SinogramGrid::new(0, 10).is_err());
        assert!(SinogramGrid::new(10, 0).is_err());
    }

    #[test]
    fn sinogram_dimension_check() {
        let g = SinogramGrid::new(3, 5).unwrap();
        assert!(Sinogram::new(g.clone(), vec![0.0; 15]).is_ok());
        assert!(Sinogram::new(g, vec![0.0; 14]).is_err());
    }
}
