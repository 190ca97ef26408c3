//! Geometric figures, phantoms, and the built-in gallery.
//!
//! A phantom is an ordered collection of figures with constant attenuation;
//! where figures overlap the attenuations sum. All coordinates live on the
//! normalized image domain [-1,1]², x rightward, y upward.

use std::fmt;

use thiserror::Error;

/// An ellipse with pose and attenuation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub x0: f64,
    pub y0: f64,
    /// Semi-axis along the rotated local x direction.
    pub a: f64,
    /// Semi-axis along the rotated local y direction.
    pub b: f64,
    /// Counterclockwise rotation from the x-axis, radians.
    pub phi: f64,
    /// Attenuation contribution (grey level).
    pub delta: f64,
}

/// An axis-pair rectangle with pose and attenuation. `wx` and `wy` are the
/// full side lengths along the rotated local axes; a square has wx == wy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub x0: f64,
    pub y0: f64,
    pub wx: f64,
    pub wy: f64,
    pub phi: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Figure {
    Ellipse(Ellipse),
    Rectangle(Rectangle),
}

/// Ordered collection of figures. `circle_mode` constrains the support to
/// the closed unit disk so every chord fits a detector span of [-1,1].
#[derive(Debug, Clone, PartialEq)]
pub struct Phantom {
    pub figures: Vec<Figure>,
    pub circle_mode: bool,
}

#[derive(Debug, Error)]
pub enum PhantomError {
    #[error("unknown gallery name {0:?}; valid names: shepp_logan, modified_shepp_logan, squares, rectangles (alias: ellipses)")]
    UnknownGallery(String),
    #[error("phantom violates invariants: {0}")]
    Invalid(ViolationReport),
    #[error("phantom file parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Accumulated invariant violations from [`Phantom::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<String>,
}

impl ViolationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.violations.join("; "))
    }
}

impl Ellipse {
    /// Local coordinates of (x, y) in the frame rotated by phi about the center.
    #[inline]
    pub fn local(&self, x: f64, y: f64) -> (f64, f64) {
        let (sin_phi, cos_phi) = self.phi.sin_cos();
        let dx = x - self.x0;
        let dy = y - self.y0;
        (dx * cos_phi + dy * sin_phi, dy * cos_phi - dx * sin_phi)
    }

    /// Closed containment test: x̂²/a² + ŷ²/b² ≤ 1.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (xh, yh) = self.local(x, y);
        xh * xh / (self.a * self.a) + yh * yh / (self.b * self.b) <= 1.0
    }
}

impl Rectangle {
    #[inline]
    pub fn local(&self, x: f64, y: f64) -> (f64, f64) {
        let (sin_phi, cos_phi) = self.phi.sin_cos();
        let dx = x - self.x0;
        let dy = y - self.y0;
        (dx * cos_phi + dy * sin_phi, dy * cos_phi - dx * sin_phi)
    }

    /// Closed containment: |x̂| ≤ wx/2 and |ŷ| ≤ wy/2.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (xh, yh) = self.local(x, y);
        xh.abs() <= self.wx / 2.0 && yh.abs() <= self.wy / 2.0
    }

    /// The four corners in world coordinates.
    pub fn corners(&self) -> [(f64, f64); 4] {
        let (sin_phi, cos_phi) = self.phi.sin_cos();
        let hx = self.wx / 2.0;
        let hy = self.wy / 2.0;
        let mut out = [(0.0, 0.0); 4];
        for (k, (sx, sy)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .into_iter()
            .enumerate()
        {
            let lx = sx * hx;
            let ly = sy * hy;
            out[k] = (
                self.x0 + lx * cos_phi - ly * sin_phi,
                self.y0 + lx * sin_phi + ly * cos_phi,
            );
        }
        out
    }
}

impl Figure {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        match self {
            Figure::Ellipse(e) => e.contains(x, y),
            Figure::Rectangle(r) => r.contains(x, y),
        }
    }

    /// πab for ellipses, wx·wy for rectangles.
    pub fn area(&self) -> f64 {
        match self {
            Figure::Ellipse(e) => std::f64::consts::PI * e.a * e.b,
            Figure::Rectangle(r) => r.wx * r.wy,
        }
    }

    pub fn delta(&self) -> f64 {
        match self {
            Figure::Ellipse(e) => e.delta,
            Figure::Rectangle(r) => r.delta,
        }
    }

    /// Radius of the smallest origin-centered disk containing the figure.
    pub fn circumscribed_radius(&self) -> f64 {
        match self {
            Figure::Ellipse(e) => (e.x0.hypot(e.y0)) + e.a.max(e.b),
            Figure::Rectangle(r) => r
                .corners()
                .iter()
                .map(|&(x, y)| x.hypot(y))
                .fold(0.0, f64::max),
        }
    }
}

const CIRCLE_TOL: f64 = 1e-12;

impl Phantom {
    pub fn new(figures: Vec<Figure>, circle_mode: bool) -> Result<Self, PhantomError> {
        let p = Phantom {
            figures,
            circle_mode,
        };
        let report = p.validate();
        if report.is_ok() {
            Ok(p)
        } else {
            Err(PhantomError::Invalid(report))
        }
    }

    /// Summed attenuation of the modeled function at a point.
    pub fn attenuation(&self, x: f64, y: f64) -> f64 {
        self.figures
            .iter()
            .map(|f| if f.contains(x, y) { f.delta() } else { 0.0 })
            .sum()
    }

    /// Checks every type invariant; violations are returned, never panicked.
    pub fn validate(&self) -> ViolationReport {
        let mut report = ViolationReport::default();
        if self.figures.is_empty() {
            report.violations.push("phantom has no figures".into());
        }
        for (k, fig) in self.figures.iter().enumerate() {
            match fig {
                Figure::Ellipse(e) => {
                    if !(e.a > 0.0 && e.b > 0.0) {
                        report
                            .violations
                            .push(format!("figure {k}: semi-axis must be positive"));
                    }
                }
                Figure::Rectangle(r) => {
                    if !(r.wx > 0.0 && r.wy > 0.0) {
                        report
                            .violations
                            .push(format!("figure {k}: side length must be positive"));
                    }
                }
            }
            if self.circle_mode && fig.circumscribed_radius() > 1.0 + CIRCLE_TOL {
                report.violations.push(format!(
                    "figure {k}: support extends outside the unit disk (radius {:.6})",
                    fig.circumscribed_radius()
                ));
            }
        }
        report
    }
}

pub const GALLERY_NAMES: [&str; 4] = ["shepp_logan", "modified_shepp_logan", "squares", "rectangles"];

/// Builds one of the built-in phantoms. `ellipses` is an alias for
/// `shepp_logan`.
pub fn gallery(name: &str) -> Result<Phantom, PhantomError> {
    let text = match name {
        "shepp_logan" | "ellipses" => include_str!("../data/shepp_logan.phm"),
        "modified_shepp_logan" => include_str!("../data/modified_shepp_logan.phm"),
        "squares" => include_str!("../data/squares.phm"),
        "rectangles" => include_str!("../data/rectangles.phm"),
        other => return Err(PhantomError::UnknownGallery(other.to_string())),
    };
    parse_phantom(text)
}

/// Parses the plain-text phantom format: a `phantom v1 circle=<0|1>` header,
/// then one figure per line (`E x0 y0 a b phi delta` or
/// `R x0 y0 wx wy phi delta`), with `#` comments.
pub fn parse_phantom(text: &str) -> Result<Phantom, PhantomError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| PhantomError::Parse {
            line: 0,
            reason: "empty phantom file".into(),
        })?;
    let circle_mode = match header {
        "phantom v1 circle=0" => false,
        "phantom v1 circle=1" => true,
        _ => {
            return Err(PhantomError::Parse {
                line: line_no,
                reason: format!("bad header {header:?}, expected `phantom v1 circle=<0|1>`"),
            })
        }
    };

    let mut figures = Vec::new();
    for (line_no, line) in lines {
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap();
        let nums: Vec<f64> = toks
            .map(|t| {
                t.parse::<f64>().map_err(|_| PhantomError::Parse {
                    line: line_no,
                    reason: format!("bad number {t:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        if nums.len() != 6 {
            return Err(PhantomError::Parse {
                line: line_no,
                reason: format!("expected 6 numbers after {tag:?}, got {}", nums.len()),
            });
        }
        let fig = match tag {
            "E" => Figure::Ellipse(Ellipse {
                x0: nums[0],
                y0: nums[1],
                a: nums[2],
                b: nums[3],
                phi: nums[4],
                delta: nums[5],
            }),
            "R" => Figure::Rectangle(Rectangle {
                x0: nums[0],
                y0: nums[1],
                wx: nums[2],
                wy: nums[3],
                phi: nums[4],
                delta: nums[5],
            }),
            _ => {
                return Err(PhantomError::Parse {
                    line: line_no,
                    reason: format!("unknown figure tag {tag:?}, expected E or R"),
                })
            }
        };
        figures.push(fig);
    }
    Phantom::new(figures, circle_mode)
}

/// Serializes a phantom in the plain-text format. Numbers carry 17
/// significant digits so the round-trip is bit-exact.
pub fn write_phantom(p: &Phantom) -> String {
    let mut out = format!("phantom v1 circle={}\n", u8::from(p.circle_mode));
    for fig in &p.figures {
        let line = match fig {
            Figure::Ellipse(e) => format!(
                "E {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}\n",
                e.x0, e.y0, e.a, e.b, e.phi, e.delta
            ),
            Figure::Rectangle(r) => format!(
                "R {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}\n",
                r.x0, r.y0, r.wx, r.wy, r.phi, r.delta
            ),
        };
        out.push_str(&line);
    }
    out
}
