//! Knotted integration paths `C^(N)`.
//!
//! The path is parameterized by a real `s`:
//!
//! * left branch, `s <= -s_j`: `ξ = (s + s₀)(1 + iε)` in sector `S_0`;
//! * right branch, `s >= s_j`: `ξ = (s − s₀)(1 − iε)` carried `N` full turns
//!   up the surface, in sector `S_{2N}`;
//! * middle, `|s| < s_j`: a spiral in log-polar form, `ln ξ = ln r₀ + g(s) +
//!   iθ(s)`, whose angle rises monotonically by `2πN + π − 2·arctan ε`.
//!
//! Taken literally the branch formulas reach the origin at `s = ±s₀`, so the
//! branches are cut where their modulus equals `r₀`, at
//! `s_j = s₀ + r₀/√(1+ε²)`.  The middle section matches value and first
//! derivative there, and `ρ(0) = r₀`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::riemann::{SectorIndex, SurfacePoint};

pub const DEFAULT_JUNCTION: f64 = 5.0;
pub const DEFAULT_TILT: f64 = 0.25;
pub const DEFAULT_TURN_RADIUS: f64 = 1.0;
pub const DEFAULT_SAMPLES_PER_TURN: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    winding: u32,
    junction: f64,
    tilt: f64,
    turn_radius: f64,
    samples_per_turn: usize,
    // derived
    cut: f64,
    theta_left: f64,
    theta_right: f64,
    log_slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSample {
    pub s: f64,
    pub point: SurfacePoint,
    /// Principal-plane image of `point`.  On the straight branches this is
    /// computed from the linear formulas directly.
    pub z: Complex64,
    /// `dξ/ds`.
    pub velocity: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylineRow {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub sector: Option<SectorIndex>,
}

pub fn build_contour(winding: u32, junction: f64, tilt: f64, turn_radius: f64) -> Result<Contour> {
    Contour::new(winding, junction, tilt, turn_radius)
}

impl Contour {
    pub fn new(winding: u32, junction: f64, tilt: f64, turn_radius: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::ContourParameter(msg));
        if !(junction > 0.0 && junction.is_finite()) {
            return bad(format!("junction s0 = {junction} must be positive"));
        }
        if !(tilt > 0.0 && tilt.is_finite()) {
            return bad(format!("tilt eps = {tilt} must be positive"));
        }
        if !(turn_radius > 0.0 && turn_radius.is_finite()) {
            return bad(format!("turn radius r0 = {turn_radius} must be positive"));
        }
        if turn_radius > junction {
            return bad(format!(
                "turn radius r0 = {turn_radius} exceeds junction s0 = {junction}"
            ));
        }
        let stretch = tilt.hypot(1.0);
        let alpha = tilt.atan();
        Ok(Self {
            winding,
            junction,
            tilt,
            turn_radius,
            samples_per_turn: DEFAULT_SAMPLES_PER_TURN,
            cut: junction + turn_radius / stretch,
            theta_left: -PI + alpha,
            theta_right: 2.0 * PI * winding as f64 - alpha,
            log_slope: stretch / turn_radius,
        })
    }

    /// Contour with the default junction, tilt and turn radius.
    pub fn with_winding(winding: u32) -> Self {
        Self::new(winding, DEFAULT_JUNCTION, DEFAULT_TILT, DEFAULT_TURN_RADIUS)
            .expect("default contour parameters are valid")
    }

    pub fn samples_per_turn(mut self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ContourParameter(
                "samples per turn must be positive".into(),
            ));
        }
        self.samples_per_turn = n;
        Ok(self)
    }

    pub fn winding(&self) -> u32 {
        self.winding
    }
    pub fn junction(&self) -> f64 {
        self.junction
    }
    pub fn tilt(&self) -> f64 {
        self.tilt
    }
    pub fn turn_radius(&self) -> f64 {
        self.turn_radius
    }

    /// Parameter value beyond which the straight branch formulas hold.
    pub fn cut(&self) -> f64 {
        self.cut
    }

    pub fn theta_left(&self) -> f64 {
        self.theta_left
    }

    pub fn theta_right(&self) -> f64 {
        self.theta_right
    }

    /// Angle gained across the middle section.
    pub fn total_turn(&self) -> f64 {
        self.theta_right - self.theta_left
    }

    /// Smallest modulus reached anywhere on the path.
    pub fn min_radius(&self) -> f64 {
        self.turn_radius * (-self.log_slope * self.cut / 8.0).exp()
    }

    /// Parameter at which the left (`sign < 0`) or right branch has modulus
    /// `rho`.  Requires `rho >= r₀`.
    pub fn branch_parameter(&self, rho: f64, sign: f64) -> f64 {
        sign.signum() * (self.junction + rho / self.tilt.hypot(1.0))
    }

    /// Default sample count for a polyline covering `[s_min, s_max]`.
    pub fn default_sample_count(&self) -> usize {
        self.samples_per_turn * (self.winding as usize + 1) + 1
    }

    pub fn sample(&self, s: f64) -> ContourSample {
        if s <= -self.cut {
            let a = s + self.junction;
            let z = Complex64::new(a, a * self.tilt);
            let point = SurfacePoint::new(-a * self.tilt.hypot(1.0), self.theta_left)
                .expect("left branch modulus is positive");
            ContourSample {
                s,
                point,
                z,
                velocity: Complex64::new(1.0, self.tilt),
            }
        } else if s >= self.cut {
            let a = s - self.junction;
            let z = Complex64::new(a, -(a * self.tilt));
            let point = SurfacePoint::new(a * self.tilt.hypot(1.0), self.theta_right)
                .expect("right branch modulus is positive");
            ContourSample {
                s,
                point,
                z,
                velocity: Complex64::new(1.0, -self.tilt),
            }
        } else {
            self.sample_middle(s)
        }
    }

    fn sample_middle(&self, s: f64) -> ContourSample {
        let sj = self.cut;
        // log-modulus: g(s) = k/(2 s_j³) · s²(s² − s_j²), g(±s_j) = 0, g'(±s_j) = ±k
        let c = self.log_slope / (2.0 * sj * sj * sj);
        let g = c * s * s * (s * s - sj * sj);
        let dg = c * (4.0 * s * s * s - 2.0 * s * sj * sj);
        // angle: smoothstep in u = (s + s_j)/(2 s_j)
        let u = (s + sj) / (2.0 * sj);
        let turn = self.total_turn();
        let theta = self.theta_left + turn * u * u * (3.0 - 2.0 * u);
        let dtheta = turn * 6.0 * u * (1.0 - u) / (2.0 * sj);
        let rho = self.turn_radius * g.exp();
        let point = SurfacePoint::new(rho, theta).expect("spiral modulus is positive");
        let z = point.to_complex();
        ContourSample {
            s,
            point,
            z,
            velocity: z * Complex64::new(dg, dtheta),
        }
    }

    pub fn export_polyline(&self, s_min: f64, s_max: f64, n: usize) -> Result<Vec<PolylineRow>> {
        if !(s_min < s_max) || !s_min.is_finite() || !s_max.is_finite() {
            return Err(Error::InvalidInput(format!(
                "polyline range [{s_min}, {s_max}] is empty"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidInput(
                "polyline needs at least 2 points".into(),
            ));
        }
        let step = (s_max - s_min) / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                let s = if i == n - 1 {
                    s_max
                } else {
                    s_min + step * i as f64
                };
                let sample = self.sample(s);
                PolylineRow {
                    s,
                    x: sample.z.re,
                    y: sample.z.im,
                    theta: sample.point.theta(),
                    sector: sample.point.sector().ok(),
                }
            })
            .collect())
    }
}

pub fn sample(c: &Contour, s: f64) -> ContourSample {
    c.sample(s)
}

pub fn export_polyline(c: &Contour, s_min: f64, s_max: f64, n: usize) -> Result<Vec<PolylineRow>> {
    c.export_polyline(s_min, s_max, n)
}
