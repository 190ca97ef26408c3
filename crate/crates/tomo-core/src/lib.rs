//! Parametric tomography phantoms with exact (closed-form) and discrete
//! Radon transforms, filtered back-projection, and Gibbs-aware error
//! analysis.
//!
//! The normalized image domain is [-1,1]²; in circle mode phantom support
//! stays inside the unit disk so every chord fits the detector span.

pub mod analysis;
pub mod analytic;
pub mod fbp;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod phantom;
pub mod raster;

pub use analysis::{
    compare_pipelines, default_margin, gibbs_mask, relative_error, AnalysisError,
    ComparisonReport, Mask,
};
pub use analytic::{analytic_sinogram, radon_ellipse, radon_figure, radon_rectangle};
pub use fbp::{backproject, fbp, ramp_filter, FbpError, FilterKind, FilterSpec};
pub use grid::{GridError, Sinogram, SinogramGrid};
pub use phantom::{
    gallery, parse_phantom, write_phantom, Ellipse, Figure, Phantom, PhantomError, Rectangle,
    GALLERY_NAMES,
};
pub use raster::{forward_project, rasterize, Image, RasterError};
