//! Shooting along a contour as an independent check of admissibility.
//!
//! The free radial equation `ψ'' = (ℓ(ℓ+1)/ξ² − κ²)ψ` is carried along
//! `ξ(s)` with the chain rule, starting from the decaying `√ξ·H2_ν(κξ)` deep
//! in `S_0`.  At the far end of the right branch the state is split against
//! `√ξ·H1_ν(κξ)` and `√ξ·H2_ν(κξ)` taken on the principal branch of the
//! endpoint, where `H2` decays outward and `H1` grows.
//!
//! Both branch ends are placed at the same depth `|Im κξ| = T`.  The reported
//! `ratio` compares the two components *at the endpoint*, i.e. the
//! coefficient ratio times `|H1/H2| ≈ e^{2T}`, so a surviving `H1` admixture
//! shows up amplified while integration noise on an admissible run does not
//! reach the acceptance threshold.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::contour::Contour;
use crate::error::{Error, Result};
use crate::hankel::{hankel_large, hankel_on_surface, HankelValue, ASYMPTOTIC_MIN_RHO};
use crate::riemann::{SectorIndex, SurfacePoint};

/// Ratio at or below which a run counts as admissible.
pub const ADMISSIBLE_RATIO: f64 = 1e-6;
/// Ratio at or above which a run counts as rejected.
pub const REJECTED_RATIO: f64 = 1e2;
/// Wronskian drift allowed on an accepted run.
pub const MAX_WRONSKIAN_DRIFT: f64 = 1e-7;

const RESCALE_HIGH: f64 = 1e100;
const RESCALE_LOW: f64 = 1e-100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootConfig {
    /// Local error tolerance per step, relative to each launch's magnitude.
    pub tol: f64,
    /// `|Im κξ|` at both branch ends.
    pub depth: f64,
    pub min_step: f64,
}

impl Default for ShootConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            depth: 4.0,
            min_step: 1e-9,
        }
    }
}

impl ShootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-12..=1e-6).contains(&self.tol) {
            return Err(Error::InvalidInput(format!(
                "tolerance {} outside [1e-12, 1e-6]",
                self.tol
            )));
        }
        if !(self.depth > 0.0 && self.depth.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "depth {} must be positive",
                self.depth
            )));
        }
        if !(self.min_step > 0.0) {
            return Err(Error::InvalidInput("minimum step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    Rejected,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Admissible => "true",
            Verdict::Rejected => "false",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootResult {
    pub nu: f64,
    pub kappa: f64,
    pub winding: u32,
    /// `H2` amplitude at the far end (coefficient times `|√ξ H2|`).
    pub c_physical: Complex64,
    /// `H1` amplitude at the far end.
    pub c_unphysical: Complex64,
    /// `|c_unphysical| / |c_physical|`.
    pub ratio: f64,
    /// Raw coefficient ratio `c1/c2` against the unnormalized basis; the
    /// winding rule predicts `e^{iπν} sin(2Nπν)/sin((2N+1)πν)`.
    pub coefficient_ratio: Complex64,
    pub wronskian_drift: f64,
    pub verdict: Verdict,
    /// Exact rule `2Nν ∈ ℤ, ν ∉ ℤ`, checked to `1e-9`.
    pub predicted: bool,
    pub s_start: f64,
    pub s_end: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub s: f64,
    pub z: Complex64,
    /// Physical launch, divided by `exp(scale_log)`.
    pub psi: Complex64,
    pub dpsi: Complex64,
    pub scale_log: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<TrajectoryPoint>,
    /// Final `[ψ_a, ψ_a', ψ_b, ψ_b']` for the physical launch `a` and an
    /// independent companion `b`, divided by `exp(scale_log)`.
    pub final_state: [Complex64; 4],
    pub initial_state: [Complex64; 4],
    pub scale_log: f64,
    pub steps: usize,
}

impl Trajectory {
    pub fn final_physical(&self) -> (Complex64, Complex64) {
        (self.final_state[0], self.final_state[1])
    }

    /// Relative change of the launch-pair Wronskian from start to end.
    pub fn wronskian_drift(&self) -> f64 {
        let w = |y: &[Complex64; 4]| y[0] * y[3] - y[2] * y[1];
        let w0 = w(&self.initial_state);
        let w1 = w(&self.final_state) * (2.0 * self.scale_log).exp();
        (w1 - w0).norm() / w0.norm()
    }
}

/// Right-hand side in the path parameter:
/// `dψ/ds = v·ψ'`, `dψ'/ds = v·(ℓ(ℓ+1)/ξ² − κ²)·ψ` with `v = dξ/ds`.
pub fn rhs(
    ell: f64,
    kappa: f64,
    point: &SurfacePoint,
    state: (Complex64, Complex64),
    velocity: Complex64,
) -> (Complex64, Complex64) {
    let xi = point.to_complex();
    let q = ell * (ell + 1.0) / (xi * xi) - kappa * kappa;
    (velocity * state.1, velocity * q * state.0)
}

fn is_near_integer(x: f64) -> bool {
    (x - x.round()).abs() <= 1e-9
}

/// Floating-point view of the exact rule, for tabulated `ν`.
pub fn predicted_admissible(nu: f64, winding: u32) -> bool {
    winding >= 1 && is_near_integer(2.0 * winding as f64 * nu) && !is_near_integer(nu)
}

/// Hankel values used for boundary data.  Integer orders only occur at
/// large argument, where the expansion covers them.
fn boundary_hankel(nu: f64, z: &SurfacePoint) -> Result<HankelValue> {
    if nu == nu.trunc() {
        hankel_large(nu, z)
    } else {
        hankel_on_surface(nu, z)
    }
}

/// `(f, df/dξ)` for `f = √ξ·H1_ν(κξ)` and `√ξ·H2_ν(κξ)`.
type Basis = [(Complex64, Complex64); 2];

/// `(√ξ·H_j(κξ), d/dξ[√ξ·H_j(κξ)])` for both kinds.
fn basis_at(nu: f64, kappa: f64, xi: &SurfacePoint) -> Result<Basis> {
    let z = xi.scale(kappa)?;
    let h = boundary_hankel(nu, &z)?;
    let root = xi.powf(0.5);
    let inv_xi = Complex64::from_polar(1.0 / xi.rho(), -xi.theta());
    let make = |f: Complex64, df: Complex64| {
        let val = root * f;
        (val, 0.5 * inv_xi * val + root * kappa * df)
    };
    Ok([make(h.h1, h.dh1), make(h.h2, h.dh2)])
}

/// `ψ = √ξ·H2_ν(κξ)` and `dψ/dξ` at a start point in `S_0`.
pub fn initial_state(
    nu: f64,
    kappa: f64,
    c: &Contour,
    s_start: f64,
) -> Result<(Complex64, Complex64)> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidInput(format!(
            "kappa = {kappa} must be positive"
        )));
    }
    if s_start > -c.junction() {
        return Err(Error::InvalidInput(format!(
            "start s = {s_start} is not on the left branch"
        )));
    }
    let sample = c.sample(s_start);
    if sample.point.sector().ok() != Some(SectorIndex(0)) {
        return Err(Error::Sector {
            theta: sample.point.theta(),
        });
    }
    if kappa * sample.point.rho() < ASYMPTOTIC_MIN_RHO {
        return Err(Error::InvalidInput(format!(
            "start point too close to the origin: kappa*rho = {}",
            kappa * sample.point.rho()
        )));
    }
    let [_, physical] = basis_at(nu, kappa, &sample.point)?;
    Ok(physical)
}

fn path_rhs(ell: f64, kappa: f64, c: &Contour, s: f64, y: &[Complex64; 4]) -> [Complex64; 4] {
    let sample = c.sample(s);
    let (a0, a1) = rhs(ell, kappa, &sample.point, (y[0], y[1]), sample.velocity);
    let (b0, b1) = rhs(ell, kappa, &sample.point, (y[2], y[3]), sample.velocity);
    [a0, a1, b0, b1]
}

// Dormand–Prince 5(4)
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integration state carried across the smooth pieces of the contour.
struct Walk {
    y: [Complex64; 4],
    scale_log: f64,
    h: f64,
    points: Vec<TrajectoryPoint>,
    steps: usize,
}

struct Stepper<'a> {
    ell: f64,
    kappa: f64,
    contour: &'a Contour,
    tol: f64,
    min_step: f64,
}

impl Stepper<'_> {
    fn f(&self, s: f64, y: &[Complex64; 4]) -> [Complex64; 4] {
        path_rhs(self.ell, self.kappa, self.contour, s, y)
    }

    fn error_norm(&self, y: &[Complex64; 4], y_new: &[Complex64; 4], err: &[Complex64; 4]) -> f64 {
        let mut worst: f64 = 0.0;
        for launch in 0..2 {
            let i = 2 * launch;
            let scale = y[i]
                .norm()
                .max(y[i + 1].norm())
                .max(y_new[i].norm())
                .max(y_new[i + 1].norm())
                .max(1e-300);
            let e = err[i].norm().max(err[i + 1].norm());
            worst = worst.max(e / (self.tol * scale));
        }
        worst
    }

    /// Integrate one smooth piece `[s0, s1]`, continuing `walk`.
    fn run_piece(&self, s0: f64, s1: f64, walk: &mut Walk) -> Result<()> {
        let Walk {
            y,
            scale_log,
            h,
            points: out,
            steps,
        } = walk;
        let mut s = s0;
        let mut k1 = self.f(s, y);
        while s < s1 {
            let last = s + *h >= s1;
            let step = if last { s1 - s } else { *h };
            let mut k = [[Complex64::new(0.0, 0.0); 4]; 7];
            k[0] = k1;
            for stage in 1..7 {
                let mut yt = *y;
                for (j, kj) in k.iter().enumerate().take(stage) {
                    let a = A[stage][j];
                    if a != 0.0 {
                        for i in 0..4 {
                            yt[i] += step * a * kj[i];
                        }
                    }
                }
                k[stage] = self.f(s + C[stage] * step, &yt);
            }
            let mut y_new = *y;
            for (j, kj) in k.iter().enumerate().take(6) {
                let b = A[6][j];
                for i in 0..4 {
                    y_new[i] += step * b * kj[i];
                }
            }
            let mut err = [Complex64::new(0.0, 0.0); 4];
            for (j, kj) in k.iter().enumerate() {
                for i in 0..4 {
                    err[i] += step * E[j] * kj[i];
                }
            }
            let en = self.error_norm(y, &y_new, &err);
            let factor = if en == 0.0 {
                5.0
            } else {
                (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
            };
            if en <= 1.0 {
                s = if last { s1 } else { s + step };
                *y = y_new;
                k1 = k[6];
                *steps += 1;
                let big = y.iter().map(|v| v.norm()).fold(0.0, f64::max);
                if !(RESCALE_LOW..=RESCALE_HIGH).contains(&big) {
                    for v in y.iter_mut() {
                        *v /= big;
                    }
                    for v in k1.iter_mut() {
                        *v /= big;
                    }
                    *scale_log += big.ln();
                }
                out.push(TrajectoryPoint {
                    s,
                    z: self.contour.sample(s).z,
                    psi: y[0],
                    dpsi: y[1],
                    scale_log: *scale_log,
                });
                if !last {
                    *h = step * factor;
                }
            } else {
                *h = step * factor;
            }
            if *h < self.min_step && s < s1 {
                return Err(Error::Stiffness { s, step: *h });
            }
        }
        Ok(())
    }
}

/// Integrate the physical launch and an independent companion along the
/// contour from `s_start` to `s_end`.
pub fn integrate(
    nu: f64,
    kappa: f64,
    c: &Contour,
    s_start: f64,
    s_end: f64,
    tol: f64,
) -> Result<Trajectory> {
    integrate_with(
        nu,
        kappa,
        c,
        s_start,
        s_end,
        &ShootConfig {
            tol,
            ..ShootConfig::default()
        },
    )
}

pub fn integrate_with(
    nu: f64,
    kappa: f64,
    c: &Contour,
    s_start: f64,
    s_end: f64,
    cfg: &ShootConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if !(s_start < s_end) {
        return Err(Error::InvalidInput(format!(
            "integration range [{s_start}, {s_end}] is empty"
        )));
    }
    let (psi, dpsi) = initial_state(nu, kappa, c, s_start)?;
    // companion launch: Wronskian with the physical one is |ψ|² + |ψ'|²
    let y0 = [psi, dpsi, -dpsi.conj(), psi.conj()];
    let stepper = Stepper {
        ell: nu - 0.5,
        kappa,
        contour: c,
        tol: cfg.tol,
        min_step: cfg.min_step,
    };
    let mut cuts = vec![s_start];
    for b in [-c.cut(), c.cut()] {
        if b > s_start && b < s_end {
            cuts.push(b);
        }
    }
    cuts.push(s_end);

    let mut walk = Walk {
        y: y0,
        scale_log: 0.0,
        h: 0.05_f64.min(s_end - s_start),
        points: vec![TrajectoryPoint {
            s: s_start,
            z: c.sample(s_start).z,
            psi,
            dpsi,
            scale_log: 0.0,
        }],
        steps: 0,
    };
    for w in cuts.windows(2) {
        stepper.run_piece(w[0], w[1], &mut walk)?;
    }
    Ok(Trajectory {
        points: walk.points,
        final_state: walk.y,
        initial_state: y0,
        scale_log: walk.scale_log,
        steps: walk.steps,
    })
}

/// Coefficients `(c_physical, c_unphysical)` of `(ψ, dψ/dξ)` against
/// `√ξ·H2_ν(κξ)` and `√ξ·H1_ν(κξ)` on the principal branch of `endpoint`.
pub fn decompose(
    final_state: (Complex64, Complex64),
    nu: f64,
    kappa: f64,
    endpoint: &SurfacePoint,
) -> Result<(Complex64, Complex64)> {
    let (c2, c1, _) = decompose_detailed(final_state, nu, kappa, endpoint)?;
    Ok((c2, c1))
}

/// Principal-branch surface point with the same image as `p` but with the
/// square root still taken on `p`'s sheet.
fn principal_of(p: &SurfacePoint) -> SurfacePoint {
    SurfacePoint::new(p.rho(), p.to_principal().theta).expect("positive modulus")
}

fn decompose_detailed(
    final_state: (Complex64, Complex64),
    nu: f64,
    kappa: f64,
    endpoint: &SurfacePoint,
) -> Result<(Complex64, Complex64, Basis)> {
    if kappa * endpoint.rho() < ASYMPTOTIC_MIN_RHO {
        return Err(Error::InvalidInput(format!(
            "endpoint too close to the origin: kappa*rho = {}",
            kappa * endpoint.rho()
        )));
    }
    let principal = principal_of(endpoint);
    let [mut f1, mut f2] = basis_at(nu, kappa, &principal)?;
    // carry √ξ over to the endpoint's sheet; both basis functions share it
    let phase = Complex64::from_polar(1.0, 0.5 * (endpoint.theta() - principal.theta()));
    f1 = (f1.0 * phase, f1.1 * phase);
    f2 = (f2.0 * phase, f2.1 * phase);
    let det = f1.0 * f2.1 - f2.0 * f1.1;
    let expected = endpoint.to_complex() / principal.to_complex() * Complex64::new(0.0, -4.0 / PI);
    if !det.is_finite() || (det - expected).norm() > 1e-6 * expected.norm() {
        return Err(Error::Decomposition(format!(
            "basis Wronskian {det} differs from {expected}"
        )));
    }
    let (psi, dpsi) = final_state;
    let c1 = (psi * f2.1 - dpsi * f2.0) / det;
    let c2 = (dpsi * f1.0 - psi * f1.1) / det;
    Ok((c2, c1, [f1, f2]))
}

/// Branch parameter `|s|` at which the contour reaches depth `|Im κξ| = T`,
/// pushed out if needed so that `κρ >= 10` and the point is on the branch.
pub fn endpoint_parameter(c: &Contour, kappa: f64, depth: f64) -> f64 {
    let stretch = c.tilt().hypot(1.0);
    let t = (depth / (kappa * c.tilt()))
        .max(ASYMPTOTIC_MIN_RHO / (kappa * stretch))
        .max(c.turn_radius() / stretch);
    c.junction() + t
}

pub fn verify_admissibility(nu: f64, winding: u32, kappa: f64, c: &Contour) -> Result<ShootResult> {
    verify_with(nu, winding, kappa, c, &ShootConfig::default())
}

pub fn verify_with(
    nu: f64,
    winding: u32,
    kappa: f64,
    c: &Contour,
    cfg: &ShootConfig,
) -> Result<ShootResult> {
    Ok(verify_detailed(nu, winding, kappa, c, cfg)?.0)
}

/// Shooting run plus its trajectory.
pub fn verify_detailed(
    nu: f64,
    winding: u32,
    kappa: f64,
    c: &Contour,
    cfg: &ShootConfig,
) -> Result<(ShootResult, Trajectory)> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidInput(format!("nu = {nu} must be positive")));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "kappa = {kappa} must be positive"
        )));
    }
    if winding != c.winding() {
        return Err(Error::InvalidInput(format!(
            "winding {winding} does not match contour winding {}",
            c.winding()
        )));
    }
    let s_end = endpoint_parameter(c, kappa, cfg.depth);
    let s_start = -s_end;
    let traj = integrate_with(nu, kappa, c, s_start, s_end, cfg)?;
    let end = c.sample(s_end).point;
    let (c2, c1, [f1, f2]) = decompose_detailed(traj.final_physical(), nu, kappa, &end)?;
    let scale = traj.scale_log.exp();
    let c_physical = c2 * f2.0.norm() * scale;
    let c_unphysical = c1 * f1.0.norm() * scale;
    let ratio = c_unphysical.norm() / c_physical.norm();
    let drift = traj.wronskian_drift();
    let verdict = if drift > MAX_WRONSKIAN_DRIFT || ratio.is_nan() {
        Verdict::Indeterminate
    } else if ratio <= ADMISSIBLE_RATIO {
        Verdict::Admissible
    } else if ratio >= REJECTED_RATIO {
        Verdict::Rejected
    } else {
        Verdict::Indeterminate
    };
    let result = ShootResult {
        nu,
        kappa,
        winding,
        c_physical,
        c_unphysical,
        ratio,
        coefficient_ratio: c1 / c2,
        wronskian_drift: drift,
        verdict,
        predicted: predicted_admissible(nu, winding),
        s_start,
        s_end,
        steps: traj.steps,
    };
    Ok((result, traj))
}

/// `∫ |ψ(ξ(s))|² |dξ/ds| ds` over the trajectory (trapezoidal rule).
pub fn norm_on_contour(trajectory: &Trajectory, c: &Contour) -> f64 {
    let density = |p: &TrajectoryPoint| {
        let v = c.sample(p.s).velocity.norm();
        p.psi.norm_sqr() * (2.0 * p.scale_log).exp() * v
    };
    trajectory
        .points
        .windows(2)
        .map(|w| 0.5 * (w[1].s - w[0].s) * (density(&w[0]) + density(&w[1])))
        .sum()
}
