//! Independent chord-length oracle used to verify the closed-form Radon
//! values. It never touches the closed forms: it scans the line for sign
//! changes of an implicit boundary function and bisects each crossing.

use crate::phantom::Figure;

const SCAN_STEP: f64 = 1e-4;
const SCAN_SPAN: f64 = 3.0;
const BISECT_TOL: f64 = 1e-13;

/// Signed boundary function along one fixed line, with the trig frames
/// hoisted out of the per-sample evaluation.
struct LineBoundary<'a> {
    figure: &'a Figure,
    // line origin and direction in world coordinates
    ox: f64,
    oy: f64,
    dx: f64,
    dy: f64,
    // local rotation of the figure
    sin_p: f64,
    cos_p: f64,
}

impl<'a> LineBoundary<'a> {
    fn new(figure: &'a Figure, t: f64, theta: f64) -> Self {
        let (sin_t, cos_t) = theta.sin_cos();
        let phi = match figure {
            Figure::Ellipse(e) => e.phi,
            Figure::Rectangle(r) => r.phi,
        };
        let (sin_p, cos_p) = phi.sin_cos();
        LineBoundary {
            figure,
            ox: t * cos_t,
            oy: t * sin_t,
            dx: -sin_t,
            dy: cos_t,
            sin_p,
            cos_p,
        }
    }

    /// Negative strictly inside the figure, positive strictly outside.
    fn eval(&self, s: f64) -> f64 {
        let x = self.ox + s * self.dx;
        let y = self.oy + s * self.dy;
        match self.figure {
            Figure::Ellipse(e) => {
                let wx = x - e.x0;
                let wy = y - e.y0;
                let xh = wx * self.cos_p + wy * self.sin_p;
                let yh = wy * self.cos_p - wx * self.sin_p;
                xh * xh / (e.a * e.a) + yh * yh / (e.b * e.b) - 1.0
            }
            Figure::Rectangle(r) => {
                let wx = x - r.x0;
                let wy = y - r.y0;
                let xh = wx * self.cos_p + wy * self.sin_p;
                let yh = wy * self.cos_p - wx * self.sin_p;
                (xh.abs() - r.wx / 2.0).max(yh.abs() - r.wy / 2.0)
            }
        }
    }
}

/// Chord length of l_{t,θ} inside the figure, times the attenuation,
/// computed by sign-change scanning plus bisection.
pub fn oracle_chord(f: &Figure, t: f64, theta: f64) -> f64 {
    let line = LineBoundary::new(f, t, theta);
    let n_steps = (2.0 * SCAN_SPAN / SCAN_STEP).round() as usize;
    let mut crossings: Vec<f64> = Vec::new();
    let mut s_prev = -SCAN_SPAN;
    let mut g_prev = line.eval(s_prev);
    for i in 1..=n_steps {
        let s = -SCAN_SPAN + i as f64 * SCAN_STEP;
        let g = line.eval(s);
        if (g_prev < 0.0) != (g < 0.0) {
            // bisect the bracket [s_prev, s]
            let (mut lo, mut hi) = (s_prev, s);
            let mut g_lo = g_prev;
            while hi - lo > BISECT_TOL {
                let mid = 0.5 * (lo + hi);
                let g_mid = line.eval(mid);
                if (g_lo < 0.0) != (g_mid < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    g_lo = g_mid;
                }
            }
            crossings.push(0.5 * (lo + hi));
        }
        s_prev = s;
        g_prev = g;
    }

    // total measure of inside intervals between consecutive crossings
    let mut inside_len = 0.0;
    let mut bounds = Vec::with_capacity(crossings.len() + 2);
    bounds.push(-SCAN_SPAN);
    bounds.extend_from_slice(&crossings);
    bounds.push(SCAN_SPAN);
    for w in bounds.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if line.eval(mid) < 0.0 {
            inside_len += w[1] - w[0];
        }
    }
    f.delta() * inside_len
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phantom::{Ellipse, Rectangle};

    #[test]
    fn known_diameter() {
        let c = Figure::Ellipse(Ellipse {
            x0: 0.0,
            y0: 0.0,
            a: 0.5,
            b: 0.5,
            phi: 0.0,
            delta: 1.0,
        });
        assert!((oracle_chord(&c, 0.0, 0.4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn far_lines_miss() {
        let r = Figure::Rectangle(Rectangle {
            x0: 0.2,
            y0: -0.1,
            wx: 0.4,
            wy: 0.3,
            phi: 0.7,
            delta: 2.0,
        });
        assert_eq!(oracle_chord(&r, 1.5, 1.0), 0.0);
        assert_eq!(oracle_chord(&r, -2.0, 0.0), 0.0);
    }
}
