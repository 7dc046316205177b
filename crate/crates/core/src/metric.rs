//! Finite-dimensional quasi-Hermitian toy models.
//!
//! A model is built backwards from its Hermitian partner: pick a real
//! diagonal `h`, a non-unitary `Ω = exp(A)`, and set `H = Ω⁻¹ h Ω`.  Then
//! `Θ = Ω†Ω` is an exact metric, `H†Θ = ΘH`, and the truncated sums
//! `Θ_M = Σ_{k<M} s_k Ψ_k Ψ_k†` over eigenvectors `Ψ_k` of `H†` can be
//! compared against it.
//!
//! Every single term `Ψ_k Ψ_k†` already intertwines `H†` and `H` when the
//! eigenvalue is real, so the commutator residual is at rounding level for
//! every `M`.  What truncation does lose is completeness: the `defect`
//! `‖Θ_M − Θ_n‖/‖Θ_n‖` measures it and vanishes only at `M = n`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct MetricModel {
    pub dim: usize,
    pub seed: u64,
    pub skew: f64,
    /// Diagonal of `h`, increasing.
    pub spectrum: Vec<f64>,
    pub hamiltonian: CMatrix,
    pub omega: CMatrix,
    pub omega_inv: CMatrix,
    pub h: CMatrix,
    pub theta_exact: CMatrix,
}

#[derive(Debug, Clone)]
pub struct TruncatedMetric {
    pub rank: usize,
    pub weights: Vec<f64>,
    pub theta: CMatrix,
    /// `‖H†Θ_M − Θ_M H‖ / ‖Θ_M H‖` (Frobenius).
    pub residual: f64,
    /// `‖Θ_M − Θ_n‖ / ‖Θ_n‖` against the complete sum with the same weights
    /// extended by the policy.
    pub defect: f64,
}

/// Eigenvectors of `H` (`phi`) and `H†` (`psi`), sorted by eigenvalue and
/// normalized so that `|φ_k| = 1` and `ψ_j† φ_k = δ_jk`.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    pub eigenvalues: Vec<Complex64>,
    pub phi: Vec<CVector>,
    pub psi: Vec<CVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightsPolicy {
    /// `s_k = 1` on the biorthonormal `Ψ_k`.
    Biorthogonal,
    /// `s_k = 1` on unit-norm `Ψ_k`.
    Unit,
    /// Explicit weights on the biorthonormal `Ψ_k`, one per eigenvector.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub rank: usize,
    pub residual: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProducts {
    /// `ψ†ψ'`
    pub original: Complex64,
    /// `(Ωψ)†(Ωψ')`
    pub physical: Complex64,
    /// `ψ†Θψ'`
    pub third: Complex64,
}

fn frob(m: &CMatrix) -> f64 {
    m.norm()
}

fn relative_anti_hermiticity(m: &CMatrix) -> f64 {
    frob(&(m - m.adjoint())) / frob(m).max(f64::MIN_POSITIVE)
}

impl MetricModel {
    /// Model with a given `h` spectrum and metric factor `Ω`.
    pub fn from_parts(spectrum: &[f64], omega: CMatrix) -> Result<Self> {
        let n = spectrum.len();
        if n < 2 || omega.nrows() != n || omega.ncols() != n {
            return Err(Error::InvalidInput(format!(
                "need n >= 2 and a matching {n}x{n} Omega"
            )));
        }
        let omega_inv = omega
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("Omega is singular".into()))?;
        Ok(Self::assemble(
            spectrum.to_vec(),
            omega,
            omega_inv,
            0,
            f64::NAN,
        ))
    }

    fn assemble(
        spectrum: Vec<f64>,
        omega: CMatrix,
        omega_inv: CMatrix,
        seed: u64,
        skew: f64,
    ) -> Self {
        let n = spectrum.len();
        let h = CMatrix::from_diagonal(&CVector::from_iterator(
            n,
            spectrum.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        let hamiltonian = &omega_inv * &h * &omega;
        let theta_exact = omega.adjoint() * &omega;
        Self {
            dim: n,
            seed,
            skew,
            spectrum,
            hamiltonian,
            omega,
            omega_inv,
            h,
            theta_exact,
        }
    }

    /// `h` rebuilt from `H`, i.e. `Ω H Ω⁻¹`.
    pub fn similarity_partner(&self) -> CMatrix {
        &self.omega * &self.hamiltonian * &self.omega_inv
    }

    pub fn hermiticity_defect(&self) -> f64 {
        relative_anti_hermiticity(&self.similarity_partner())
    }

    /// `‖H†Θ − ΘH‖ / ‖ΘH‖` for the exact metric.
    pub fn quasi_hermiticity_defect(&self) -> f64 {
        commutator_residual(&self.hamiltonian, &self.theta_exact)
    }

    /// Eigenvalues of `H`, sorted by real part.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let mut ev = eigenvalues_of(&self.hamiltonian)?;
        ev.sort_by(|a, b| a.re.total_cmp(&b.re));
        Ok(ev)
    }

    pub fn eigenbasis(&self) -> Result<Eigenbasis> {
        let values = self.eigenvalues()?;
        let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for w in values.windows(2) {
            if (w[1] - w[0]).norm() < 1e-8 * scale {
                return Err(Error::Degeneracy {
                    a: w[0].re,
                    b: w[1].re,
                });
            }
        }
        let adjoint = self.hamiltonian.adjoint();
        let mut phi = Vec::with_capacity(self.dim);
        let mut psi = Vec::with_capacity(self.dim);
        for &lambda in &values {
            let f = inverse_iteration(&self.hamiltonian, lambda)?;
            let mut g = inverse_iteration(&adjoint, lambda.conj())?;
            let overlap = g.dotc(&f);
            if overlap.norm() < 1e-12 {
                return Err(Error::Decomposition(format!(
                    "left and right eigenvectors at {lambda} are orthogonal"
                )));
            }
            // ψ† φ = 1
            g /= overlap.conj();
            phi.push(f);
            psi.push(g);
        }
        Ok(Eigenbasis {
            eigenvalues: values,
            phi,
            psi,
        })
    }
}

fn eigenvalues_of(m: &CMatrix) -> Result<Vec<Complex64>> {
    let schur = m
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::Decomposition("Schur iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Unit eigenvector of `m` for a known eigenvalue.
fn inverse_iteration(m: &CMatrix, lambda: Complex64) -> Result<CVector> {
    let n = m.nrows();
    let shift = lambda + Complex64::new(1e-10, 1e-10) * lambda.norm().max(1.0);
    let shifted = m - CMatrix::from_diagonal_element(n, n, shift);
    let lu = shifted.lu();
    let mut x = CVector::from_iterator(
        n,
        (0..n).map(|i| Complex64::new(1.0, 0.1 * (i as f64 + 1.0))),
    );
    x /= Complex64::new(x.norm(), 0.0);
    for _ in 0..3 {
        let y = lu
            .solve(&x)
            .ok_or_else(|| Error::Decomposition(format!("singular shift at {lambda}")))?;
        let norm = y.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Decomposition(format!(
                "inverse iteration failed at {lambda}"
            )));
        }
        x = y / Complex64::new(norm, 0.0);
    }
    // fix the phase: largest component real and positive
    let (imax, _) = x
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("non-empty");
    let phase = x[imax] / x[imax].norm();
    Ok(x / phase)
}

fn commutator_residual(hamiltonian: &CMatrix, theta: &CMatrix) -> f64 {
    let th = theta * hamiltonian;
    frob(&(hamiltonian.adjoint() * theta - &th)) / frob(&th).max(f64::MIN_POSITIVE)
}

/// Random model: `h` has eigenvalues `k + 1 + δ_k` with `|δ_k| ≤ 1/4`, and
/// `A` is a complex Gaussian matrix rescaled to Frobenius norm `skew`.
pub fn build_model(n: usize, seed: u64, skew: f64) -> Result<MetricModel> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("dimension {n} must be >= 2")));
    }
    if !(0.0..=2.0).contains(&skew) {
        return Err(Error::InvalidInput(format!("skew {skew} outside [0, 2]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spectrum: Vec<f64> = (0..n)
        .map(|k| k as f64 + 1.0 + rng.random_range(-0.25..0.25))
        .collect();
    let mut a = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let norm = a.norm();
    a *= Complex64::new(skew / norm, 0.0);
    let omega = a.exp();
    let omega_inv = (-&a).exp();
    Ok(MetricModel::assemble(
        spectrum, omega, omega_inv, seed, skew,
    ))
}

fn check_weights(weights: &[f64]) -> Result<()> {
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
        return Err(Error::InvalidInput(format!("weight {w} is not positive")));
    }
    Ok(())
}

fn partial_sum(basis: &Eigenbasis, weights: &[f64]) -> CMatrix {
    let n = basis.psi.len();
    let mut theta = CMatrix::from_element(n, n, ZERO);
    for (psi, &s) in basis.psi.iter().zip(weights) {
        theta += psi * psi.adjoint() * Complex64::new(s, 0.0);
    }
    // exact Hermitian symmetry, independent of summation rounding
    (&theta + theta.adjoint()) * Complex64::new(0.5, 0.0)
}

fn truncated_from_basis(
    model: &MetricModel,
    basis: &Eigenbasis,
    full_weights: &[f64],
    rank: usize,
) -> TruncatedMetric {
    let theta = partial_sum(basis, &full_weights[..rank]);
    let complete = partial_sum(basis, full_weights);
    TruncatedMetric {
        rank,
        weights: full_weights[..rank].to_vec(),
        residual: commutator_residual(&model.hamiltonian, &theta),
        defect: frob(&(&theta - &complete)) / frob(&complete),
        theta,
    }
}

/// `Θ_M = Σ_{k<M} s_k Ψ_k Ψ_k†` on the biorthonormal `Ψ_k`.  The defect is
/// measured against the complete sum with the missing weights set to 1.
pub fn theta_truncated(
    model: &MetricModel,
    rank: usize,
    weights: &[f64],
) -> Result<TruncatedMetric> {
    if rank < 1 || rank > model.dim {
        return Err(Error::InvalidInput(format!(
            "rank {rank} outside [1, {}]",
            model.dim
        )));
    }
    if weights.len() != rank {
        return Err(Error::InvalidInput(format!(
            "expected {rank} weights, got {}",
            weights.len()
        )));
    }
    check_weights(weights)?;
    let basis = model.eigenbasis()?;
    let mut full = weights.to_vec();
    full.resize(model.dim, 1.0);
    Ok(truncated_from_basis(model, &basis, &full, rank))
}

fn policy_weights(policy: &WeightsPolicy, basis: &Eigenbasis) -> Result<Vec<f64>> {
    match policy {
        WeightsPolicy::Biorthogonal => Ok(vec![1.0; basis.psi.len()]),
        WeightsPolicy::Unit => Ok(basis.psi.iter().map(|p| 1.0 / p.norm_squared()).collect()),
        WeightsPolicy::Custom(w) => {
            if w.len() != basis.psi.len() {
                return Err(Error::InvalidInput(format!(
                    "expected {} weights, got {}",
                    basis.psi.len(),
                    w.len()
                )));
            }
            check_weights(w)?;
            Ok(w.clone())
        }
    }
}

/// Residual and defect for `M = 1..n`.
pub fn residual_curve(model: &MetricModel, policy: &WeightsPolicy) -> Result<Vec<CurvePoint>> {
    let basis = model.eigenbasis()?;
    let weights = policy_weights(policy, &basis)?;
    Ok((1..=model.dim)
        .map(|rank| {
            let t = truncated_from_basis(model, &basis, &weights, rank);
            CurvePoint {
                rank,
                residual: t.residual,
                defect: t.defect,
            }
        })
        .collect())
}

pub fn inner_products(model: &MetricModel, a: &CVector, b: &CVector) -> Result<InnerProducts> {
    if a.len() != model.dim || b.len() != model.dim {
        return Err(Error::InvalidInput(format!(
            "vectors must have length {}",
            model.dim
        )));
    }
    Ok(InnerProducts {
        original: a.dotc(b),
        physical: (&model.omega * a).dotc(&(&model.omega * b)),
        third: a.dotc(&(&model.theta_exact * b)),
    })
}

/// Hermitian eigenvalues of `Θ`, ascending.
pub fn metric_eigenvalues(theta: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = theta
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Seeded complex Gaussian vector, for sampling inner products.
pub fn random_vector(n: usize, rng: &mut impl Rng) -> CVector {
    CVector::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> CMatrix {
        CMatrix::identity(n, n)
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn model_invariants() {
        for seed in [1u64, 7, 42] {
            let m = build_model(10, seed, 0.8).unwrap();
            assert!(m.hermiticity_defect() <= 1e-10);
            assert!(m.quasi_hermiticity_defect() <= 1e-10);
            assert!(relative_anti_hermiticity(&m.theta_exact) < 1e-14);
            assert!(metric_eigenvalues(&m.theta_exact)[0] > 0.0);
            let ev = m.eigenvalues().unwrap();
            for (l, s) in ev.iter().zip(&m.spectrum) {
                assert!((l - c(*s)).norm() <= 1e-9, "{l} vs {s}");
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = build_model(6, 3, 1.0).unwrap();
        let b = build_model(6, 3, 1.0).unwrap();
        assert_eq!(a.hamiltonian, b.hamiltonian);
        assert_ne!(a.hamiltonian, build_model(6, 4, 1.0).unwrap().hamiltonian);
    }

    #[test]
    fn unitary_limit() {
        let m = build_model(5, 11, 0.0).unwrap();
        assert!(relative_anti_hermiticity(&m.hamiltonian) < 1e-15);
        assert!((&m.theta_exact - identity(5)).norm() < 1e-15);
        for rank in 1..=5 {
            let t = theta_truncated(&m, rank, &vec![2.5; rank]).unwrap();
            assert!(t.residual <= 1e-12);
        }
    }

    #[test]
    fn hand_built_two_by_two() {
        let a = 0.7;
        let omega = CMatrix::from_row_slice(2, 2, &[c(1.0), c(a), c(0.0), c(1.0)]);
        let m = MetricModel::from_parts(&[1.0, 2.0], omega).unwrap();
        let expected = CMatrix::from_row_slice(2, 2, &[c(1.0), c(a), c(a), c(1.0 + a * a)]);
        assert!((&m.theta_exact - expected).norm() < 1e-15);
        // H = Ω⁻¹hΩ = [[1, −a], [0, 2]]
        let h = CMatrix::from_row_slice(2, 2, &[c(1.0), c(-a), c(0.0), c(2.0)]);
        assert!((&m.hamiltonian - h).norm() < 1e-15);

        // Ψ_1 = (1, a), Ψ_2 = √(1+a²)(0, 1): Θ_2 − Θ_1 = (1+a²) e_2 e_2†
        let full = [[1.0, a], [a, 1.0 + 2.0 * a * a]];
        let full_norm = full.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        let t = theta_truncated(&m, 1, &[1.0]).unwrap();
        assert!(
            (t.defect - (1.0 + a * a) / full_norm).abs() < 1e-12,
            "{}",
            t.defect
        );
        assert!(t.residual < 1e-12);
        let t = theta_truncated(&m, 2, &[1.0, 1.0]).unwrap();
        let exp = CMatrix::from_fn(2, 2, |i, j| c(full[i][j]));
        assert!((&t.theta - exp).norm() < 1e-12);
    }

    #[test]
    fn complete_sum_with_any_positive_weights() {
        let m = build_model(10, 5, 1.2).unwrap();
        for weights in [
            vec![1.0; 10],
            (1..=10).map(|k| k as f64).collect(),
            vec![0.3; 10],
        ] {
            let t = theta_truncated(&m, 10, &weights).unwrap();
            assert!(t.residual <= 1e-10);
            assert!(metric_eigenvalues(&t.theta)[0] > 0.0);
            assert_eq!(t.theta, t.theta.adjoint());
        }
    }

    #[test]
    fn curve_ends_exact_and_truncation_leaves_defect() {
        let m = build_model(10, 2, 1.0).unwrap();
        for policy in [WeightsPolicy::Biorthogonal, WeightsPolicy::Unit] {
            let curve = residual_curve(&m, &policy).unwrap();
            assert_eq!(curve.len(), 10);
            assert!(curve[9].residual <= 1e-10 && curve[9].defect == 0.0);
            assert!(curve[4].defect > curve[9].defect + 1e-3);
        }
    }

    #[test]
    fn inner_product_identities() {
        let m = build_model(10, 9, 1.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_vector(10, &mut rng);
        let b = random_vector(10, &mut rng);
        let ip = inner_products(&m, &a, &b).unwrap();
        assert!(
            (ip.physical - ip.third).norm() <= 1e-12 * a.norm() * b.norm() * m.theta_exact.norm()
        );
        assert!((ip.original - ip.physical).norm() > 1e-3);
        let same = inner_products(&m, &a, &a).unwrap();
        assert!(same.physical.re > 0.0 && same.physical.im == 0.0);

        let id = build_model(10, 9, 0.0).unwrap();
        let ip = inner_products(&id, &a, &b).unwrap();
        assert!(
            (ip.original - ip.physical).norm() < 1e-12 && (ip.original - ip.third).norm() < 1e-12
        );
    }

    #[test]
    fn validation_and_degeneracy() {
        assert!(build_model(1, 0, 1.0).is_err());
        assert!(build_model(4, 0, 2.5).is_err());
        let m = build_model(4, 0, 1.0).unwrap();
        assert!(theta_truncated(&m, 0, &[]).is_err());
        assert!(theta_truncated(&m, 2, &[1.0]).is_err());
        assert!(theta_truncated(&m, 2, &[1.0, -1.0]).is_err());
        assert!(inner_products(&m, &CVector::zeros(3), &CVector::zeros(4)).is_err());

        let omega = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.5), c(0.0), c(1.0)]);
        let d = MetricModel::from_parts(&[1.0, 1.0], omega).unwrap();
        let err = theta_truncated(&d, 1, &[1.0]).unwrap_err();
        assert!(matches!(err, Error::Degeneracy { .. }) && err.is_numerical());
    }
}
