//! Phantom rasterization and the discrete (ray-driven) forward projector.

use rayon::prelude::*;

use thiserror::Error;

use crate::grid::{Sinogram, SinogramGrid};
use crate::phantom::Phantom;

/// Square raster of attenuation samples. Pixel (i, j) — i counts rows from
/// the top — has its center at (x, y) = (−1 + (2j+1)/n, 1 − (2i+1)/n).
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub n: usize,
    /// Row-major n × n samples.
    pub values: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("image side length must be >= 2, got {0}")]
    BadSize(usize),
    #[error("value buffer length {got} does not match {n}x{n}")]
    BadBuffer { n: usize, got: usize },
}

impl Image {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self, RasterError> {
        if n < 2 {
            return Err(RasterError::BadSize(n));
        }
        if values.len() != n * n {
            return Err(RasterError::BadBuffer {
                n,
                got: values.len(),
            });
        }
        Ok(Image { n, values })
    }

    pub fn zeros(n: usize) -> Result<Self, RasterError> {
        Self::new(n, vec![0.0; n * n])
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Pixel-center coordinates of (row i, column j).
    #[inline]
    pub fn pixel_center(&self, i: usize, j: usize) -> (f64, f64) {
        pixel_center(self.n, i, j)
    }

    /// Bilinear sample at world coordinates, zero outside the pixel grid.
    pub fn sample_bilinear(&self, x: f64, y: f64) -> f64 {
        let n = self.n as f64;
        // fractional pixel coordinates of (x, y)
        let fj = (x + 1.0) * n / 2.0 - 0.5;
        let fi = (1.0 - y) * n / 2.0 - 0.5;
        let j0 = fj.floor();
        let i0 = fi.floor();
        let wj = fj - j0;
        let wi = fi - i0;
        let mut acc = 0.0;
        for (di, wy) in [(0, 1.0 - wi), (1, wi)] {
            for (dj, wx) in [(0, 1.0 - wj), (1, wj)] {
                let i = i0 as isize + di;
                let j = j0 as isize + dj;
                if i >= 0 && j >= 0 && (i as usize) < self.n && (j as usize) < self.n {
                    acc += wy * wx * self.at(i as usize, j as usize);
                }
            }
        }
        acc
    }
}

#[inline]
pub fn pixel_center(n: usize, i: usize, j: usize) -> (f64, f64) {
    (
        -1.0 + (2.0 * j as f64 + 1.0) / n as f64,
        1.0 - (2.0 * i as f64 + 1.0) / n as f64,
    )
}

/// Point-samples the phantom at pixel centers. No anti-aliasing: the sharp
/// discontinuities are the object of study.
pub fn rasterize(p: &Phantom, n: usize) -> Result<Image, RasterError> {
    if n < 2 {
        return Err(RasterError::BadSize(n));
    }
    let mut values = vec![0.0; n * n];
    values
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| {
            for (j, v) in row.iter_mut().enumerate() {
                let (x, y) = pixel_center(n, i, j);
                *v = p.attenuation(x, y);
            }
        });
    Ok(Image { n, values })
}

/// Discrete Radon transform of a raster: for each (t, θ) the line
/// p(s) = (t·cosθ − s·sinθ, t·sinθ + s·cosθ) is sampled at uniform step
/// h = 2/n over s ∈ [−1, 1] with bilinear interpolation, and the integral
/// is h times the sample sum. In circle mode the support sits inside the
/// unit disk, so chords never leave the sampled span.
pub fn forward_project(img: &Image, g: &SinogramGrid) -> Sinogram {
    let n_theta = g.n_theta();
    let h = 2.0 / img.n as f64;
    let n_samples = img.n;
    let mut values = vec![0.0; g.n_t() * n_theta];
    values
        .par_chunks_mut(n_theta)
        .zip(g.t_values.par_iter())
        .for_each(|(row, &t)| {
            for (j, &theta) in g.theta_values.iter().enumerate() {
                let (sin_t, cos_t) = theta.sin_cos();
                let mut acc = 0.0;
                for m in 0..n_samples {
                    let s = -1.0 + (m as f64 + 0.5) * h;
                    let x = t * cos_t - s * sin_t;
                    let y = t * sin_t + s * cos_t;
                    acc += img.sample_bilinear(x, y);
                }
                row[j] = h * acc;
            }
        });
    Sinogram {
        grid: g.clone(),
        values,
    }
}
