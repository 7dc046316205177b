//! Points on the logarithmic Riemann surface over the punctured plane.
//!
//! A point is stored as its modulus and an *unwrapped* argument, so
//! `theta = 0` and `theta = 2π` are different points with the same
//! projection onto the complex plane.  Multi-valued powers such as
//! `ξ^{ℓ+1}` or `(z/2)^ν` become single-valued functions of a
//! [`SurfacePoint`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    rho: f64,
    theta: f64,
}

/// Principal-branch view of a surface point: `theta = principal + shift·π`.
///
/// `principal` lies in `(-π, π]`, so `shift` is always even.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Principal {
    pub theta: f64,
    pub shift: i64,
}

/// Asymptotic sector label: `S_k` covers unwrapped angles in `((k-1)π, kπ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorIndex(pub i64);

impl SurfacePoint {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::BranchPoint);
        }
        if !theta.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite angle {theta}")));
        }
        Ok(Self { rho, theta })
    }

    /// Lift a cartesian point to the sheet `sheet_shift` turns away from the
    /// principal one.
    pub fn from_cartesian(x: f64, y: f64, sheet_shift: i64) -> Result<Self> {
        if x == 0.0 && y == 0.0 {
            return Err(Error::BranchPoint);
        }
        Self::new(x.hypot(y), y.atan2(x) + sheet_shift as f64 * 2.0 * PI)
    }

    /// Lift a principal complex number onto the surface.
    pub fn from_complex(z: Complex64, sheet_shift: i64) -> Result<Self> {
        Self::from_cartesian(z.re, z.im, sheet_shift)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_principal(&self) -> Principal {
        // theta = principal + 2πk with principal in (-π, π]
        let mut k = ((self.theta + PI) / (2.0 * PI)).ceil() - 1.0;
        let mut principal = self.theta - 2.0 * PI * k;
        if principal <= -PI {
            principal += 2.0 * PI;
            k -= 1.0;
        } else if principal > PI {
            principal -= 2.0 * PI;
            k += 1.0;
        }
        Principal {
            theta: principal,
            shift: 2 * k as i64,
        }
    }

    /// Split `theta = base + m·π` with `base` in `[-π/2, π/2]`.
    ///
    /// This is the reduction used by the Hankel continuation: `base` keeps
    /// the evaluation point in the closed right half-plane.
    pub fn split_half_turns(&self) -> (f64, i64) {
        let m = (self.theta / PI).round();
        (self.theta - m * PI, m as i64)
    }

    /// Projection onto the complex plane.
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.rho, self.theta)
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        let z = self.to_complex();
        (z.re, z.im)
    }

    /// `ln ξ = ln ρ + iθ`, single-valued on the surface.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.rho.ln(), self.theta)
    }

    /// `ξ^a = exp(a·ln ξ)` on the surface.
    pub fn power(&self, a: Complex64) -> Complex64 {
        (a * self.ln()).exp()
    }

    pub fn powf(&self, a: f64) -> Complex64 {
        Complex64::from_polar(self.rho.powf(a), a * self.theta)
    }

    /// `c·ξ` for real `c > 0`; stays on the same sheet.
    pub fn scale(&self, c: f64) -> Result<Self> {
        Self::new(self.rho * c, self.theta)
    }

    /// Rotate by `m` half-turns: `ξ·e^{imπ}`.
    pub fn rotate_half_turns(&self, m: i64) -> Self {
        Self {
            rho: self.rho,
            theta: self.theta + m as f64 * PI,
        }
    }

    pub fn sector(&self) -> Result<SectorIndex> {
        sector_of(self)
    }
}

pub fn sector_of(p: &SurfacePoint) -> Result<SectorIndex> {
    let q = p.theta / PI;
    if q == q.floor() {
        return Err(Error::SectorBoundary { theta: p.theta });
    }
    Ok(SectorIndex(q.floor() as i64 + 1))
}

pub fn power(p: &SurfacePoint, a: Complex64) -> Complex64 {
    p.power(a)
}
