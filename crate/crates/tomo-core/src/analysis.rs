//! Error metrics, Gibbs-aware masking, and the two-pipeline comparison.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::analytic::analytic_sinogram;
use crate::fbp::{fbp, FilterKind, FilterSpec};
use crate::grid::SinogramGrid;
use crate::phantom::Phantom;
use crate::raster::{forward_project, pixel_center, rasterize, Image};

/// Boolean raster selecting the pixels included in error norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    pub n: usize,
    /// Row-major; true = included.
    pub values: Vec<bool>,
}

impl Mask {
    pub fn full(n: usize) -> Self {
        Mask {
            n,
            values: vec![true; n * n],
        }
    }

    pub fn true_count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

/// Result of the analytic-vs-discrete pipeline comparison on one phantom.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub phantom: String,
    pub n: usize,
    pub n_theta: usize,
    pub margin: usize,
    /// Masked relative 2-norm of fbp(analytic sinogram) vs the raster.
    pub err_analytic: f64,
    /// Masked relative 2-norm of fbp(discrete sinogram) vs the raster.
    pub err_discrete: f64,
    pub runtime_analytic: Duration,
    pub runtime_discrete: Duration,
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("image/mask dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("reference image vanishes on the mask (zero denominator)")]
    ZeroDenominator,
    #[error("mask excludes every pixel")]
    EmptyMask,
    #[error(transparent)]
    Raster(#[from] crate::raster::RasterError),
    #[error(transparent)]
    Fbp(#[from] crate::fbp::FbpError),
}

/// Masked relative 2-norm: √(Σ_m (a−b)²) / √(Σ_m b²). Summation is in
/// row-major pixel order so results are reproducible bit for bit.
pub fn relative_error(a: &Image, b: &Image, m: &Mask) -> Result<f64, AnalysisError> {
    if a.n != b.n || a.n != m.n {
        return Err(AnalysisError::DimensionMismatch(a.n, b.n.max(m.n)));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&av, &bv), &keep) in a.values.iter().zip(&b.values).zip(&m.values) {
        if keep {
            num += (av - bv) * (av - bv);
            den += bv * bv;
        }
    }
    if den == 0.0 {
        return Err(AnalysisError::ZeroDenominator);
    }
    Ok(num.sqrt() / den.sqrt())
}

/// Builds the Gibbs mask: a pixel survives only when every pixel within
/// Chebyshev distance `margin` shares its figure-membership signature
/// (erosion of each constant-attenuation region by a (2·margin+1)² box).
/// In circle mode the band within `margin` pixels of the unit circle is
/// excluded too, covering the reconstruction's disk boundary.
pub fn gibbs_mask(p: &Phantom, n: usize, margin: usize) -> Result<Mask, AnalysisError> {
    // intern figure-membership signatures into small ids
    let words = p.figures.len().div_ceil(64);
    let mut signature_ids: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut ids = vec![0u32; n * n];
    let mut key = vec![0u64; words];
    for i in 0..n {
        for j in 0..n {
            let (x, y) = pixel_center(n, i, j);
            key.iter_mut().for_each(|w| *w = 0);
            for (f_idx, fig) in p.figures.iter().enumerate() {
                if fig.contains(x, y) {
                    key[f_idx / 64] |= 1 << (f_idx % 64);
                }
            }
            let next = signature_ids.len() as u32;
            let id = *signature_ids.entry(key.clone()).or_insert(next);
            ids[i * n + j] = id;
        }
    }

    let m = margin as isize;
    let pixel = 2.0 / n as f64;
    let mut values = vec![true; n * n];
    for i in 0..n {
        for j in 0..n {
            let idx = i * n + j;
            if p.circle_mode {
                let (x, y) = pixel_center(n, i, j);
                if (x.hypot(y) - 1.0).abs() <= margin as f64 * pixel {
                    values[idx] = false;
                    continue;
                }
            }
            let id = ids[idx];
            'scan: for di in -m..=m {
                for dj in -m..=m {
                    let ii = i as isize + di;
                    let jj = j as isize + dj;
                    if ii < 0 || jj < 0 || ii >= n as isize || jj >= n as isize {
                        continue;
                    }
                    if ids[ii as usize * n + jj as usize] != id {
                        values[idx] = false;
                        break 'scan;
                    }
                }
            }
        }
    }
    let mask = Mask { n, values };
    if mask.true_count() == 0 {
        return Err(AnalysisError::EmptyMask);
    }
    Ok(mask)
}

/// Default mask margin at resolution n: 3 pixels at n=300, scaled
/// proportionally (round(n/100)).
pub fn default_margin(n: usize) -> usize {
    ((n as f64) / 100.0).round() as usize
}

/// Runs both reconstruction pipelines on one phantom and reports the
/// masked relative errors.
///
/// P        = rasterize(p, n)
/// P_an     = fbp(analytic_sinogram(p, g))
/// P_inv    = fbp(forward_project(P, g))
pub fn compare_pipelines(
    name: &str,
    p: &Phantom,
    n: usize,
    g: &SinogramGrid,
    margin: usize,
) -> Result<ComparisonReport, AnalysisError> {
    let reference = rasterize(p, n)?;
    let mask = gibbs_mask(p, n, margin)?;
    let spec = FilterSpec::for_detectors(FilterKind::Ramp, g.n_t());

    let start = Instant::now();
    let recon_analytic = fbp(&analytic_sinogram(p, g), n, &spec, p.circle_mode)?;
    let runtime_analytic = start.elapsed();

    let start = Instant::now();
    let recon_discrete = fbp(&forward_project(&reference, g), n, &spec, p.circle_mode)?;
    let runtime_discrete = start.elapsed();

    Ok(ComparisonReport {
        phantom: name.to_string(),
        n,
        n_theta: g.n_theta(),
        margin,
        err_analytic: relative_error(&recon_analytic, &reference, &mask)?,
        err_discrete: relative_error(&recon_discrete, &reference, &mask)?,
        runtime_analytic,
        runtime_discrete,
    })
}
