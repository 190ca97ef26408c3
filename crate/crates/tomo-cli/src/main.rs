//! `tomo`: phantom generation, sinogram synthesis, filtered
//! back-projection, and analytic-vs-discrete pipeline comparison.
//!
//! Exit codes: 0 success, 1 runtime/data error, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tomo_core::{
    analytic_sinogram, compare_pipelines, fbp, forward_project, gallery, io, parse_phantom,
    rasterize, FilterKind, FilterSpec, Phantom, SinogramGrid, GALLERY_NAMES,
};

#[derive(Parser)]
#[command(name = "tomo", version, about = "Tomography phantom toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in phantom gallery
    Gallery {
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Rasterize a phantom to a float-grid image
    Phantom {
        #[command(flatten)]
        source: Source,
        /// Image side length in pixels
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        /// Output float-grid path
        #[arg(long)]
        out: PathBuf,
        /// Also write a 16-bit PGM preview
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Compute a sinogram (exact or discrete) of a phantom
    Sinogram {
        #[command(flatten)]
        source: Source,
        /// Detector count (and raster size for the discrete method)
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        /// Number of projection angles over [0, 2π)
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        angles: u32,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reconstruct an image from a sinogram file via FBP
    Reconstruct {
        /// Input sinogram float-grid file
        #[arg(long)]
        sinogram: PathBuf,
        /// Output image side length in pixels
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Filter::Ramp)]
        filter: Filter,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Run both pipelines and report masked relative errors
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        angles: u32,
        /// Gibbs-mask margin in pixels
        #[arg(long)]
        margin: Option<u32>,
        /// Append the report as a CSV row (header written if new file)
        #[arg(long)]
        out_csv: Option<PathBuf>,
    },
}

/// Phantom source: exactly one of a gallery name or a phantom file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in gallery name
    #[arg(long)]
    gallery: Option<String>,
    /// Phantom file path
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Analytic,
    Discrete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    Ramp,
    RampHann,
}

impl From<Filter> for FilterKind {
    fn from(f: Filter) -> Self {
        match f {
            Filter::Ramp => FilterKind::Ramp,
            Filter::RampHann => FilterKind::RampHann,
        }
    }
}

impl Source {
    fn load(&self) -> Result<(String, Phantom)> {
        if let Some(name) = &self.gallery {
            let p = gallery(name)?;
            return Ok((name.clone(), p));
        }
        let path = self.file.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read phantom file {}", path.display()))?;
        let p = parse_phantom(&text)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "phantom".into());
        Ok((name, p))
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gallery { format } => {
            match format {
                ListFormat::Text => {
                    for name in GALLERY_NAMES {
                        let p = gallery(name)?;
                        let kind = match p.figures[0] {
                            tomo_core::Figure::Ellipse(_) => "ellipses",
                            tomo_core::Figure::Rectangle(_) => "rectangles",
                        };
                        println!("{name}: {} {kind}", p.figures.len());
                    }
                }
                ListFormat::Csv => {
                    println!("name,figures,kind");
                    for name in GALLERY_NAMES {
                        let p = gallery(name)?;
                        let kind = match p.figures[0] {
                            tomo_core::Figure::Ellipse(_) => "ellipses",
                            tomo_core::Figure::Rectangle(_) => "rectangles",
                        };
                        println!("{name},{},{kind}", p.figures.len());
                    }
                }
            }
            Ok(())
        }
        Command::Phantom { source, n, out, pgm } => {
            let (_, phantom) = source.load()?;
            let img = rasterize(&phantom, n as usize)?;
            io::write_grid(&out, &io::GridData::Image(img.clone()))?;
            if let Some(pgm_path) = pgm {
                io::export_pgm(&img, &pgm_path)?;
            }
            Ok(())
        }
        Command::Sinogram {
            source,
            n,
            angles,
            method,
            out,
        } => {
            let (_, phantom) = source.load()?;
            let grid = SinogramGrid::new(n as usize, angles as usize)?;
            let sino = match method {
                Method::Analytic => analytic_sinogram(&phantom, &grid),
                Method::Discrete => {
                    let img = rasterize(&phantom, n as usize)?;
                    forward_project(&img, &grid)
                }
            };
            io::write_grid(&out, &io::GridData::Sinogram(sino))?;
            Ok(())
        }
        Command::Reconstruct {
            sinogram,
            n,
            filter,
            out,
            pgm,
        } => {
            let data = io::read_grid(&sinogram)
                .with_context(|| format!("cannot read sinogram {}", sinogram.display()))?;
            let sino = match data {
                io::GridData::Sinogram(s) => s,
                _ => bail!("{} is not a sinogram file", sinogram.display()),
            };
            let spec = FilterSpec::for_detectors(filter.into(), sino.grid.n_t());
            let img = fbp(&sino, n as usize, &spec, true)?;
            io::write_grid(&out, &io::GridData::Image(img.clone()))?;
            if let Some(pgm_path) = pgm {
                io::export_pgm(&img, &pgm_path)?;
            }
            Ok(())
        }
        Command::Compare {
            source,
            n,
            angles,
            margin,
            out_csv,
        } => {
            let (name, phantom) = source.load()?;
            let n = n as usize;
            let grid = SinogramGrid::new(n, angles as usize)?;
            let margin =
                margin.map_or_else(|| tomo_core::default_margin(n), |m| m as usize);
            let report = compare_pipelines(&name, &phantom, n, &grid, margin)?;
            println!("phantom={name} n={n} angles={angles} margin={margin}");
            println!("err_analytic={:.6}", report.err_analytic);
            println!("err_discrete={:.6}", report.err_discrete);
            if let Some(csv_path) = out_csv {
                append_csv_row(&csv_path, &report)?;
            }
            Ok(())
        }
    }
}

fn append_csv_row(path: &Path, report: &tomo_core::ComparisonReport) -> Result<()> {
    let row = io::render_csv(std::slice::from_ref(report))?;
    let body = match fs::read_to_string(path) {
        Ok(existing) => {
            // keep the existing header, append the new row
            let new_row = row
                .strip_prefix(&format!("{}\n", io::CSV_HEADER))
                .unwrap_or(&row);
            format!("{existing}{new_row}")
        }
        Err(_) => row,
    };
    fs::write(path, body)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // exits with code 2 on usage errors
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
