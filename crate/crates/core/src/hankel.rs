//! Hankel functions `H1_ν`, `H2_ν` of real order on the logarithmic Riemann
//! surface.
//!
//! Evaluation always starts in the closed right half-plane
//! (`|arg z| <= π/2`), where three methods cover the range:
//!
//! * `|z| > 12`: the large-argument expansion, summed to its smallest term;
//! * the function that decays away from the real axis (`H1` above it, `H2`
//!   below) with `|Im z| > 1.5`: trapezoidal quadrature of the `K_ν`
//!   integral, which avoids the cancellation in the `J_{±ν}` combination;
//! * everything else: the ascending series for `J_{±ν}`.
//!
//! Any other point is reached with the winding rule
//!
//! ```text
//! H2_ν(z e^{imπ}) = sin((1+m)πν)/sin(πν) · H2_ν(z) + e^{iπν} sin(mπν)/sin(πν) · H1_ν(z)
//! H1_ν(z e^{imπ}) = −sin((m−1)πν)/sin(πν) · H1_ν(z) − e^{−iπν} sin(mπν)/sin(πν) · H2_ν(z)
//! ```
//!
//! Derivatives are taken with respect to `z` and picked up alongside the
//! values, since the shooting code needs both.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::riemann::SurfacePoint;
use crate::special::{rgamma, sin_pi};

/// Largest modulus accepted by the ascending series.
pub const SERIES_CUTOFF: f64 = 25.0;
/// Modulus above which the asymptotic expansion replaces the series.
pub const ASYMPTOTIC_CROSSOVER: f64 = 12.0;
/// Smallest modulus accepted by [`hankel_asymptotic`].
pub const ASYMPTOTIC_MIN_RHO: f64 = 10.0;
/// `|Im z|` above which the decaying Hankel function comes from the `K_ν`
/// integral.
const DECAY_SWITCH: f64 = 1.5;
const NEAR_ORIGIN_MAX_RHO: f64 = 0.5;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelValue {
    pub order: f64,
    pub at: SurfacePoint,
    pub h1: Complex64,
    pub h2: Complex64,
    /// `d/dz H1_ν(z)`
    pub dh1: Complex64,
    /// `d/dz H2_ν(z)`
    pub dh2: Complex64,
}

impl HankelValue {
    /// `H1·H2' − H2·H1'`, which equals `−4i/(πz)` for exact values.
    pub fn wronskian(&self) -> Complex64 {
        self.h1 * self.dh2 - self.h2 * self.dh1
    }

    pub fn expected_wronskian(&self) -> Complex64 {
        -4.0 * I / (PI * self.at.to_complex())
    }

    pub fn wronskian_error(&self) -> f64 {
        let w = self.expected_wronskian();
        (self.wronskian() - w).norm() / w.norm()
    }

    /// Pairwise relative distance `max|Δh| / max|h|` over the two values.
    pub fn relative_distance(&self, other: &HankelValue) -> f64 {
        let diff = (self.h1 - other.h1).norm().max((self.h2 - other.h2).norm());
        diff / other.h1.norm().max(other.h2.norm())
    }
}

fn check_noninteger(nu: f64) -> Result<()> {
    if !nu.is_finite() {
        return Err(Error::InvalidInput(format!("order {nu} is not finite")));
    }
    if nu == nu.trunc() {
        return Err(Error::IntegerOrder { nu });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ascending series

/// `J_ν(z)` and `J'_ν(z)` summed until the tail is below round-off.
fn j_series(nu: f64, z: &SurfacePoint) -> (Complex64, Complex64) {
    if nu < 0.0 && nu == nu.trunc() {
        // J_{-n} = (-1)^n J_n
        let (j, dj) = j_series(-nu, z);
        let sign = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return (sign * j, sign * dj);
    }
    let half = z.scale(0.5).expect("positive scale");
    let lead = half.powf(nu) * rgamma(nu + 1.0);
    let q = -0.25 * z.to_complex() * z.to_complex();
    let mut term = lead;
    let mut sum = term;
    let mut dsum = nu * term;
    let min_terms = (0.5 * z.rho()).ceil() as usize + 2;
    for j in 1..400usize {
        term *= q / (j as f64 * (nu + j as f64));
        sum += term;
        dsum += (nu + 2.0 * j as f64) * term;
        if j > min_terms && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    let inv_z = Complex64::from_polar(1.0 / z.rho(), -z.theta());
    (sum, dsum * inv_z)
}

/// Ascending series for `J_ν` on the surface using exactly `terms` terms,
/// with `(z/2)^ν` taken from the unwrapped angle.
pub fn bessel_j_surface(nu: f64, z: &SurfacePoint, terms: usize) -> Result<Complex64> {
    if z.rho() > SERIES_CUTOFF {
        return Err(Error::SeriesDomain {
            rho: z.rho(),
            cutoff: SERIES_CUTOFF,
        });
    }
    if nu < 0.0 && nu == nu.trunc() {
        let sign = if (nu as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * bessel_j_surface(-nu, z, terms)?);
    }
    let half = z.scale(0.5)?;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    let q = -0.25 * z.to_complex() * z.to_complex();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..terms {
        if j > 0 {
            term *= q / (j as f64 * (nu + j as f64));
        }
        sum += term;
    }
    Ok(sum)
}

/// Number of series terms that brings the tail below `1e-16` relative to
/// the largest term at modulus `rho`.
pub fn series_terms_for(rho: f64) -> usize {
    // terms peak near j ≈ rho/2 and then fall faster than geometrically
    (2.5 * rho) as usize + 25
}

fn hankel_from_series(nu: f64, z: &SurfacePoint) -> HankelValue {
    let (jp, djp) = j_series(nu, z);
    let (jm, djm) = j_series(-nu, z);
    let denom = I * sin_pi(nu);
    let ep = Complex64::from_polar(1.0, PI * nu);
    let em = ep.conj();
    HankelValue {
        order: nu,
        at: *z,
        h1: (jm - em * jp) / denom,
        h2: (ep * jp - jm) / denom,
        dh1: (djm - em * djp) / denom,
        dh2: (ep * djp - djm) / denom,
    }
}

// ---------------------------------------------------------------------------
// K_ν integral, Re w > 0

/// `K_ν(w)` and `K'_ν(w)` from `∫₀^∞ exp(−w cosh t) cosh(νt) dt` by the
/// trapezoidal rule, which converges geometrically for this integrand.
fn bessel_k_integral(nu: f64, w: Complex64) -> (Complex64, Complex64) {
    debug_assert!(w.re > 0.0);
    let strip = FRAC_PI_2 - w.arg().abs();
    let h = (strip / 12.0).min(0.1);
    let e0 = (-w).exp();
    let mut k = 0.5 * e0;
    let mut dk = -0.5 * e0;
    let mut n = 1usize;
    loop {
        let t = h * n as f64;
        let ch = t.cosh();
        let f = (-w * ch).exp() * (nu * t).cosh();
        k += f;
        dk -= ch * f;
        if w.re * (ch - 1.0) > 45.0 {
            break;
        }
        n += 1;
    }
    (h * k, h * dk)
}

fn hankel1_from_k(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    // H1_ν(z) = (2/(πi)) e^{−iπν/2} K_ν(−iz)
    let (k, dk) = bessel_k_integral(nu, -I * z);
    let c = Complex64::from_polar(2.0 / PI, -FRAC_PI_2 * nu) / I;
    (c * k, c * dk * (-I))
}

fn hankel2_from_k(nu: f64, z: Complex64) -> (Complex64, Complex64) {
    // H2_ν(z) = −(2/(πi)) e^{iπν/2} K_ν(iz)
    let (k, dk) = bessel_k_integral(nu, I * z);
    let c = -Complex64::from_polar(2.0 / PI, FRAC_PI_2 * nu) / I;
    (c * k, c * dk * I)
}

// ---------------------------------------------------------------------------
// large-argument expansion

/// `√(πz/2)·e^{∓iω}·H_ν` series sums `Σ (±i)^k a_k(ν)/z^k`, truncated after
/// `max_terms` corrections or at the smallest term.
fn asymptotic_sums(nu: f64, z: Complex64, max_terms: Option<usize>) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let inv_z = z.inv();
    let mut a = Complex64::new(1.0, 0.0);
    let mut s1 = a;
    let mut s2 = a;
    let mut last = f64::INFINITY;
    let limit = max_terms.unwrap_or(200);
    let mut ik = Complex64::new(1.0, 0.0);
    for k in 1..=limit {
        let odd = (2 * k - 1) as f64;
        let next = a * (mu - odd * odd) / (8.0 * k as f64) * inv_z;
        let size = next.norm();
        if max_terms.is_none() && (size >= last || size <= 1e-17) {
            break;
        }
        ik *= I;
        s1 += ik * next;
        s2 += ik.conj() * next;
        a = next;
        last = size;
        if size == 0.0 {
            break;
        }
    }
    (s1, s2)
}

fn asymptotic_values(nu: f64, z: Complex64, max_terms: Option<usize>) -> (Complex64, Complex64) {
    let (s1, s2) = asymptotic_sums(nu, z, max_terms);
    let pre = (2.0 / (PI * z)).sqrt();
    let omega = z - FRAC_PI_2 * nu - 0.25 * PI;
    let e = (I * omega).exp();
    (pre * e * s1, pre * s2 / e)
}

fn asymptotic_full(
    nu: f64,
    z: Complex64,
    max_terms: Option<usize>,
) -> (Complex64, Complex64, Complex64, Complex64) {
    let (h1, h2) = asymptotic_values(nu, z, max_terms);
    let (g1, g2) = asymptotic_values(nu - 1.0, z, max_terms);
    // H'_ν = H_{ν−1} − (ν/z) H_ν
    let r = nu / z;
    (h1, h2, g1 - r * h1, g2 - r * h2)
}

/// Large-argument expansion with `order` correction terms (`order <= 2`).
///
/// The truncation error is `O(ρ^{−order−1})` relative to the leading term.
pub fn hankel_asymptotic(nu: f64, z: &SurfacePoint, order: usize) -> Result<HankelValue> {
    if !nu.is_finite() {
        return Err(Error::InvalidInput(format!("order {nu} is not finite")));
    }
    if z.rho() < ASYMPTOTIC_MIN_RHO {
        return Err(Error::AsymptoticDomain {
            rho: z.rho(),
            min: ASYMPTOTIC_MIN_RHO,
        });
    }
    if order > 2 {
        return Err(Error::InvalidInput(format!(
            "asymptotic order {order} exceeds 2 correction terms"
        )));
    }
    if z.theta().abs() >= PI {
        return Err(Error::InvalidInput(format!(
            "asymptotic expansion needs |arg z| < π, got {}",
            z.theta()
        )));
    }
    let (h1, h2, dh1, dh2) = asymptotic_full(nu, z.to_complex(), Some(order));
    Ok(HankelValue {
        order: nu,
        at: *z,
        h1,
        h2,
        dh1,
        dh2,
    })
}

/// Large-argument expansion summed to its smallest term, at any real order
/// (integers included).  Valid for `|arg z| < π`; accurate to roughly
/// `e^{−2|z|}` away from the Stokes lines at `arg z = ±π`.
pub fn hankel_large(nu: f64, z: &SurfacePoint) -> Result<HankelValue> {
    if z.rho() < ASYMPTOTIC_MIN_RHO {
        return Err(Error::AsymptoticDomain {
            rho: z.rho(),
            min: ASYMPTOTIC_MIN_RHO,
        });
    }
    let (h1, h2, dh1, dh2) = asymptotic_full(nu, z.to_complex(), None);
    Ok(HankelValue {
        order: nu,
        at: *z,
        h1,
        h2,
        dh1,
        dh2,
    })
}

// ---------------------------------------------------------------------------
// right half-plane evaluation and continuation

/// Evaluate at `|arg z| <= π/2` (plus rounding slack).
fn eval_right_half_plane(nu: f64, z: &SurfacePoint) -> HankelValue {
    debug_assert!(z.theta().abs() <= FRAC_PI_2 + 1e-12);
    let zc = z.to_complex();
    if z.rho() > ASYMPTOTIC_CROSSOVER {
        let (h1, h2, dh1, dh2) = asymptotic_full(nu, zc, None);
        return HankelValue {
            order: nu,
            at: *z,
            h1,
            h2,
            dh1,
            dh2,
        };
    }
    let mut v = hankel_from_series(nu, z);
    if zc.im > DECAY_SWITCH {
        let (h1, dh1) = hankel1_from_k(nu, zc);
        v.h1 = h1;
        v.dh1 = dh1;
    } else if zc.im < -DECAY_SWITCH {
        let (h2, dh2) = hankel2_from_k(nu, zc);
        v.h2 = h2;
        v.dh2 = dh2;
    }
    v
}

/// Coefficients `C(m)` with `(H1, H2)(z e^{imπ}) = C(m)·(H1, H2)(z)`.
///
/// Row 0 gives `H1`, row 1 gives `H2`; columns act on `(H1(z), H2(z))`.
pub fn winding_matrix(nu: f64, m: i64) -> Result<[[Complex64; 2]; 2]> {
    check_noninteger(nu)?;
    let s = sin_pi(nu);
    let mf = m as f64;
    let ratio = |x: f64| Complex64::new(sin_pi(x * nu) / s, 0.0);
    let ep = Complex64::from_polar(1.0, PI * nu);
    Ok([
        [-ratio(mf - 1.0), -ep.conj() * ratio(mf)],
        [ep * ratio(mf), ratio(mf + 1.0)],
    ])
}

/// Carry principal-sheet values `m` half-turns around the origin.
pub fn continue_winding(nu: f64, m: i64, at_principal: &HankelValue) -> Result<HankelValue> {
    check_noninteger(nu)?;
    if m == 0 {
        return Ok(*at_principal);
    }
    let c = winding_matrix(nu, m)?;
    let v = at_principal;
    // d/dζ at ζ = z e^{imπ} is e^{−imπ} d/dz
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(HankelValue {
        order: nu,
        at: v.at.rotate_half_turns(m),
        h1: c[0][0] * v.h1 + c[0][1] * v.h2,
        h2: c[1][0] * v.h1 + c[1][1] * v.h2,
        dh1: sign * (c[0][0] * v.dh1 + c[0][1] * v.dh2),
        dh2: sign * (c[1][0] * v.dh1 + c[1][1] * v.dh2),
    })
}

/// `H1_ν`, `H2_ν` with `|arg z| < π`.
pub fn hankel_principal(nu: f64, z: &SurfacePoint) -> Result<HankelValue> {
    check_noninteger(nu)?;
    if z.theta().abs() >= PI {
        return Err(Error::InvalidInput(format!(
            "principal evaluation needs |arg z| < π, got {}",
            z.theta()
        )));
    }
    hankel_on_surface(nu, z)
}

/// `H1_ν`, `H2_ν` anywhere on the surface.
pub fn hankel_on_surface(nu: f64, z: &SurfacePoint) -> Result<HankelValue> {
    check_noninteger(nu)?;
    let (base, m) = z.split_half_turns();
    let zp = SurfacePoint::new(z.rho(), base)?;
    let v = eval_right_half_plane(nu, &zp);
    let mut out = continue_winding(nu, m, &v)?;
    out.at = *z;
    Ok(out)
}

/// Leading terms `(ξ^{ℓ+1}, ξ^{−ℓ})` of the two solutions regular and
/// singular at the origin.  The corrections are `O(ρ²)` relative.
pub fn near_origin_basis(ell: f64, z: &SurfacePoint) -> Result<(Complex64, Complex64)> {
    if z.rho() > NEAR_ORIGIN_MAX_RHO {
        return Err(Error::InvalidInput(format!(
            "near-origin basis needs rho <= {NEAR_ORIGIN_MAX_RHO}, got {}",
            z.rho()
        )));
    }
    Ok((z.powf(ell + 1.0), z.powf(-ell)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(rho: f64, theta: f64) -> SurfacePoint {
        SurfacePoint::new(rho, theta).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    // closed forms at ν = 1/2 on the principal sheet
    fn h1_half(z: Complex64) -> Complex64 {
        -I * (2.0 / (PI * z)).sqrt() * (I * z).exp()
    }
    fn h2_half(z: Complex64) -> Complex64 {
        I * (2.0 / (PI * z)).sqrt() * (-I * z).exp()
    }

    #[test]
    fn series_examples_at_half_order() {
        let j = bessel_j_surface(0.5, &pt(PI, 0.0), 40).unwrap();
        assert!(j.norm() < 1e-15);

        let j = bessel_j_surface(0.5, &pt(1.0, 0.0), 40).unwrap();
        let expected = (2.0 / PI).sqrt() * 1f64.sin();
        assert!((j.re - expected).abs() < 1e-15 && j.im.abs() < 1e-16);
        assert!((expected - 0.671_397).abs() < 1e-6);

        // one full turn multiplies J_ν by e^{2iπν}; for ν = 1/2 that is −1
        let j_turn = bessel_j_surface(0.5, &pt(1.0, 2.0 * PI), 40).unwrap();
        assert!((j_turn + j).norm() < 1e-15);
        // half a turn: e^{iπ/2} = i
        let j_half = bessel_j_surface(0.5, &pt(1.0, PI), 40).unwrap();
        assert!((j_half - I * j).norm() < 1e-15);
    }

    #[test]
    fn series_rejects_large_modulus() {
        assert!(matches!(
            bessel_j_surface(0.5, &pt(25.5, 0.0), 100),
            Err(Error::SeriesDomain { .. })
        ));
    }

    #[test]
    fn principal_half_order_values() {
        let v = hankel_principal(0.5, &pt(1.0, 0.0)).unwrap();
        assert!((v.h2 - Complex64::new(0.671_397, 0.431_099)).norm() < 1e-6);
        assert!((v.h1 - Complex64::new(0.671_397, -0.431_099)).norm() < 1e-6);
        assert!(rel(v.h1, h1_half(Complex64::new(1.0, 0.0))) < 1e-14);
    }

    #[test]
    fn integer_order_rejected() {
        for nu in [0.0, 1.0, -2.0] {
            assert!(matches!(
                hankel_principal(nu, &pt(1.0, 0.0)),
                Err(Error::IntegerOrder { .. })
            ));
            assert!(matches!(
                winding_matrix(nu, 2),
                Err(Error::IntegerOrder { .. })
            ));
        }
    }

    #[test]
    fn half_integer_closed_forms_across_principal_sheet() {
        let mut rho = 0.1;
        while rho <= 30.0 {
            for theta in [-2.9, -2.0, -1.2, -0.4, 0.0, 0.7, 1.5, 2.3, 3.0] {
                let z = pt(rho, theta);
                let v = hankel_principal(0.5, &z).unwrap();
                let zc = z.to_complex();
                assert!(rel(v.h1, h1_half(zc)) < 1e-12, "h1 rho={rho} theta={theta}");
                assert!(rel(v.h2, h2_half(zc)) < 1e-12, "h2 rho={rho} theta={theta}");
            }
            rho *= 1.37;
        }
    }

    #[test]
    fn three_halves_closed_form() {
        // H1_{3/2}(z) = −√(2/(πz)) e^{iz} (1 + i/z)
        let mut rho = 0.1;
        while rho <= 30.0 {
            for theta in [-2.5, -1.0, 0.0, 0.9, 2.7] {
                let z = pt(rho, theta);
                let zc = z.to_complex();
                let v = hankel_principal(1.5, &z).unwrap();
                let h1 = -(2.0 / (PI * zc)).sqrt() * (I * zc).exp() * (1.0 + I / zc);
                let h2 = -(2.0 / (PI * zc)).sqrt() * (-I * zc).exp() * (1.0 - I / zc);
                assert!(rel(v.h1, h1) < 1e-12, "rho={rho} theta={theta}");
                assert!(rel(v.h2, h2) < 1e-12, "rho={rho} theta={theta}");
            }
            rho *= 1.41;
        }
    }

    #[test]
    fn wronskian_on_principal_sheet() {
        for nu in [0.1, 0.3, 0.5, 0.75, 1.2, 1.5, 2.5, 2.9] {
            let mut rho = 0.2;
            while rho <= 20.0 {
                for theta in [-3.0, -2.2, -1.57, -0.8, 0.0, 0.4, 1.1, 1.9, 2.8] {
                    let v = hankel_principal(nu, &pt(rho, theta)).unwrap();
                    assert!(
                        v.wronskian_error() < 1e-9,
                        "nu={nu} rho={rho} theta={theta}: {}",
                        v.wronskian_error()
                    );
                }
                rho *= 1.6;
            }
        }
    }

    #[test]
    fn sum_is_twice_j() {
        for nu in [0.3, 0.75, 1.5, 2.5] {
            for rho in [0.5, 2.0, 5.0, 9.0] {
                for theta in [-0.6, 0.0, 0.5] {
                    let z = pt(rho, theta);
                    let v = hankel_principal(nu, &z).unwrap();
                    let j = bessel_j_surface(nu, &z, series_terms_for(rho)).unwrap();
                    assert!(rel(v.h1 + v.h2, 2.0 * j) < 1e-10, "nu={nu} rho={rho}");
                }
            }
        }
        // half-integer closed form out to |z| = 20
        for rho in [12.5, 16.0, 20.0] {
            let z = pt(rho, 0.2);
            let v = hankel_principal(0.5, &z).unwrap();
            let zc = z.to_complex();
            let j = (2.0 / (PI * zc)).sqrt() * zc.sin();
            assert!(rel(v.h1 + v.h2, 2.0 * j) < 1e-10);
        }
    }

    #[test]
    fn asymptotic_examples() {
        // ν = 1/2: the correction series vanishes identically
        let z = pt(15.0, -0.3);
        let v = hankel_asymptotic(0.5, &z, 2).unwrap();
        assert!(rel(v.h1, h1_half(z.to_complex())) < 1e-14);
        assert!(rel(v.h2, h2_half(z.to_complex())) < 1e-14);

        // ν = 3/2 at ρ = 20, one correction term, against the full evaluation
        let z = pt(20.0, 0.0);
        let a = hankel_asymptotic(1.5, &z, 1).unwrap();
        let b = hankel_principal(1.5, &z).unwrap();
        assert!(rel(a.h1, b.h1) < 1e-3 && rel(a.h2, b.h2) < 1e-3);

        // h1·h2·(πz/2) = 1 + O(1/z)
        for rho in [10.0, 20.0, 40.0, 80.0] {
            let z = pt(rho, 0.1);
            let v = hankel_asymptotic(2.5, &z, 0).unwrap();
            let p = v.h1 * v.h2 * (PI * z.to_complex() / 2.0);
            assert!((p - 1.0).norm() < 1e-12);
            let w = hankel_principal(2.5, &z).unwrap();
            let p = w.h1 * w.h2 * (PI * z.to_complex() / 2.0);
            assert!((p - 1.0).norm() < 7.0 / rho);
        }

        assert!(matches!(
            hankel_asymptotic(0.5, &pt(9.0, 0.0), 1),
            Err(Error::AsymptoticDomain { .. })
        ));
    }

    #[test]
    fn asymptotic_decay_directions() {
        // lower half-plane: |H2| decays and |H1| grows with ρ
        let a = hankel_principal(0.5, &pt(10.0, -0.5)).unwrap();
        let b = hankel_principal(0.5, &pt(20.0, -0.5)).unwrap();
        assert!(b.h2.norm() < a.h2.norm() && b.h1.norm() > a.h1.norm());
    }

    #[test]
    fn winding_examples() {
        let base = hankel_principal(0.5, &pt(1.0, 0.0)).unwrap();
        assert_eq!(continue_winding(0.5, 0, &base).unwrap(), base);

        let c = winding_matrix(0.5, 2).unwrap();
        assert!((c[1][1] + 1.0).norm() < 1e-15 && c[1][0].norm() < 1e-15);
        let turned = continue_winding(0.5, 2, &base).unwrap();
        assert!((turned.h2 + base.h2).norm() < 1e-15);

        let c = winding_matrix(1.0 / 3.0, 2).unwrap();
        assert!(c[1][1].norm() < 1e-15);
        assert!((c[1][0] - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn surface_examples() {
        let z = pt(1.0, 2.0 * PI);
        let v = hankel_on_surface(0.5, &z).unwrap();
        assert!((v.h2 + Complex64::new(0.671_397, 0.431_099)).norm() < 1e-6);

        let z = pt(1.7, 0.4);
        assert_eq!(
            hankel_on_surface(0.75, &z).unwrap(),
            hankel_principal(0.75, &z).unwrap()
        );
    }

    #[test]
    fn winding_group_property() {
        for nu in [0.3, 0.5, 0.75, 1.5, 2.5, 1.0 / 3.0, 0.6] {
            for a in -5i64..=5 {
                for b in -5i64..=5 {
                    let ca = winding_matrix(nu, a).unwrap();
                    let cb = winding_matrix(nu, b).unwrap();
                    let cab = winding_matrix(nu, a + b).unwrap();
                    let scale = cab.iter().flatten().map(|c| c.norm()).fold(1.0, f64::max);
                    for i in 0..2 {
                        for j in 0..2 {
                            let prod = ca[i][0] * cb[0][j] + ca[i][1] * cb[1][j];
                            assert!((prod - cab[i][j]).norm() <= 1e-12 * scale);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unphysical_coefficient_vanishes_iff_doublet_condition() {
        for n in 1..=4i64 {
            for k in 1..=160 {
                let nu = k as f64 / 40.0;
                let admissible = (2 * n * k) % 40 == 0 && k % 40 != 0;
                match winding_matrix(nu, 2 * n) {
                    Ok(c) => {
                        let b = c[1][0].norm();
                        if admissible {
                            assert!(b <= 1e-14, "nu={nu} N={n}: {b}");
                        } else {
                            assert!(b > 1e-3, "nu={nu} N={n}: {b}");
                        }
                    }
                    Err(_) => assert!(k % 40 == 0),
                }
            }
        }
    }

    #[test]
    fn near_origin_examples() {
        let (p, m) = near_origin_basis(0.0, &pt(0.1, 0.0)).unwrap();
        assert!((p - 0.1).norm() < 1e-16 && (m - 1.0).norm() < 1e-16);

        // ℓ(ℓ+1) = 0: both leading terms single-valued after a full turn
        for ell in [0.0, -1.0] {
            let a = near_origin_basis(ell, &pt(0.3, 0.7)).unwrap();
            let b = near_origin_basis(ell, &pt(0.3, 0.7 + 2.0 * PI)).unwrap();
            assert!((a.0 - b.0).norm() < 1e-14 && (a.1 - b.1).norm() < 1e-14);
        }

        let (p0, _) = near_origin_basis(0.25, &pt(0.1, 0.0)).unwrap();
        let (p1, _) = near_origin_basis(0.25, &pt(0.1, 2.0 * PI)).unwrap();
        let phase = Complex64::from_polar(1.0, 2.0 * PI * 1.25);
        assert!((p1 - p0 * phase).norm() < 1e-15);

        assert!(near_origin_basis(0.0, &pt(0.6, 0.0)).is_err());
    }
}
