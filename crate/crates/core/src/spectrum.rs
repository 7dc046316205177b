//! Exact quantization rules for knotted contours.
//!
//! A solution that starts as the decaying `√ξ·H2_ν(κξ)` in `S_0` reaches
//! `S_{2N}` free of the growing `H1` component iff `2Nν ∈ ℤ` and `ν ∉ ℤ`.
//! With `ν = ℓ + 1/2` this gives `ℓ = (M − N)/(2N)` for labels `M` that are
//! not multiples of `2N`.  Everything here is decided in rational
//! arithmetic; floating point only appears when a value is handed on.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub winding: i64,
    pub label: i64,
    pub ell: Rational,
    pub nu: Rational,
    pub dimension: Option<i64>,
    pub partial_wave: Option<i64>,
    pub gamma: Option<Rational>,
}

impl SpectrumEntry {
    /// `ℓ < 0`: the asymptotic formulas still apply (`ν > 0`), but the
    /// leading near-origin term `ξ^{−ℓ}` is the regular one.
    pub fn negative_ell(&self) -> bool {
        self.ell < Rational::from_integer(0)
    }

    pub fn nu_f64(&self) -> f64 {
        to_f64(self.nu)
    }

    /// Attach the coupling that supports this state in dimension `d` with
    /// partial wave `m`.
    pub fn with_coupling(mut self, d: i64, m: i64) -> Result<Self> {
        self.gamma = Some(gamma_for(d, m, self.winding, self.label)?);
        self.dimension = Some(d);
        self.partial_wave = Some(m);
        Ok(self)
    }
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn check_winding(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidInput(format!(
            "winding number N = {n} must be >= 1"
        )));
    }
    Ok(())
}

/// `2Nν ∈ ℤ` and `ν ∉ ℤ`.
pub fn is_admissible(nu: Rational, winding: i64) -> bool {
    if winding < 1 {
        return false;
    }
    !nu.is_integer() && (nu * Rational::from_integer(2 * winding)).is_integer()
}

pub fn allowed_ell(winding: i64, label: i64) -> Result<Rational> {
    check_winding(winding)?;
    if label < 1 {
        return Err(Error::InvalidInput(format!(
            "label M = {label} must be >= 1"
        )));
    }
    if label % (2 * winding) == 0 {
        return Err(Error::ForbiddenLabel {
            m: label,
            two_n: 2 * winding,
        });
    }
    Ok(Rational::new(label - winding, 2 * winding))
}

/// `γ = (M/(2N))² − (m + (D−2)/2)²`.
pub fn gamma_for(dimension: i64, partial_wave: i64, winding: i64, label: i64) -> Result<Rational> {
    if dimension < 1 {
        return Err(Error::InvalidInput(format!(
            "dimension D = {dimension} must be >= 1"
        )));
    }
    if partial_wave < 0 {
        return Err(Error::InvalidInput(format!(
            "partial wave m = {partial_wave} must be >= 0"
        )));
    }
    allowed_ell(winding, label)?;
    let nu = Rational::new(label, 2 * winding);
    let a = centrifugal_shift(dimension, partial_wave);
    Ok(nu * nu - a * a)
}

/// `m + (D−2)/2`, the free-space order `ν` at `γ = 0`.
fn centrifugal_shift(dimension: i64, partial_wave: i64) -> Rational {
    Rational::from_integer(partial_wave) + Rational::new(dimension - 2, 2)
}

/// `ℓ(ℓ+1)` from the coupling: `γ + (m + (D−3)/2)(m + (D−1)/2)`.
pub fn ell_product_from_coupling(gamma: Rational, dimension: i64, partial_wave: i64) -> Rational {
    let m = Rational::from_integer(partial_wave);
    gamma + (m + Rational::new(dimension - 3, 2)) * (m + Rational::new(dimension - 1, 2))
}

pub fn enumerate_spectrum(winding: i64, label_max: i64) -> Result<Vec<SpectrumEntry>> {
    check_winding(winding)?;
    if label_max < 1 {
        return Err(Error::InvalidInput(format!(
            "M_max = {label_max} must be >= 1"
        )));
    }
    Ok((1..=label_max)
        .filter(|m| m % (2 * winding) != 0)
        .map(|label| SpectrumEntry {
            winding,
            label,
            ell: Rational::new(label - winding, 2 * winding),
            nu: Rational::new(label, 2 * winding),
            dimension: None,
            partial_wave: None,
            gamma: None,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyRow {
    pub partial_wave: i64,
    /// `ν = m + (D−2)/2` at zero coupling.
    pub nu: Rational,
    pub admissible: bool,
    /// `2m + D − 2`; the admissible label is `M = N·label_per_winding`.
    pub label_per_winding: Option<i64>,
}

impl DichotomyRow {
    pub fn label_for(&self, winding: i64) -> Option<i64> {
        self.label_per_winding.map(|k| k * winding)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyReport {
    pub dimension: i64,
    pub rows: Vec<DichotomyRow>,
}

/// Zero-coupling bound states: odd `D` admits every partial wave, even `D`
/// none (`ν` is an integer).
pub fn dichotomy(dimension: i64, partial_waves: &[i64]) -> Result<DichotomyReport> {
    if dimension < 2 {
        return Err(Error::InvalidInput(format!(
            "dimension D = {dimension} must be >= 2"
        )));
    }
    let mut rows = Vec::with_capacity(partial_waves.len());
    for &m in partial_waves {
        if m < 0 {
            return Err(Error::InvalidInput(format!(
                "partial wave m = {m} must be >= 0"
            )));
        }
        let nu = centrifugal_shift(dimension, m);
        // ν = (2m + D − 2)/2 = M/(2N) ⇒ M = N(2m + D − 2); admissible for
        // every N once ν is a half-integer
        let admissible = is_admissible(nu, 1);
        rows.push(DichotomyRow {
            partial_wave: m,
            nu,
            admissible,
            label_per_winding: admissible.then_some(2 * m + dimension - 2),
        });
    }
    Ok(DichotomyReport { dimension, rows })
}
