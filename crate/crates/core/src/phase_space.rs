// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! n-mode phase space: covariance matrices, symplectic spectra and the
//! entropic and nonclassicality measures of Gaussian states.
//!
//! Units ħ = 1, quadratures ordered (x₁, p₁, …, xₙ, pₙ), vacuum CM ½I.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, invalid, Result};

/// Tolerance on symmetry and on ν ≥ ½.
pub const PHYSICAL_TOL: f64 = 1e-12;

/// Phase-space point or first-moment vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceVector(Vec<f64>);

impl PhaseSpaceVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(invalid(format!("phase-space vector length must be even and positive, got {}", coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("phase-space vector must be finite"));
        }
        Ok(Self(coords))
    }

    pub fn zeros(modes: usize) -> Result<Self> {
        Self::new(vec![0.0; 2 * modes])
    }

    pub fn modes(&self) -> usize {
        self.0.len() / 2
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }
}

/// Real symmetric 2n×2n second-moment matrix.
///
/// Construction checks shape and symmetry only; use [`check_physical`] for
/// the uncertainty principle.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(DMatrix<f64>);

impl CovarianceMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        let (r, c) = m.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(invalid(format!("covariance matrix must be 2n×2n, got {r}×{c}")));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(invalid("covariance matrix must be finite"));
        }
        let scale = m.amax().max(1.0);
        for i in 0..r {
            for j in (i + 1)..r {
                if (m[(i, j)] - m[(j, i)]).abs() > PHYSICAL_TOL * scale {
                    return Err(invalid(format!("covariance matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let sym = (&m + m.transpose()) * 0.5;
        Ok(Self(sym))
    }

    /// Row-major entries of a `dim`×`dim` matrix.
    pub fn from_row_slice(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(invalid(format!("expected {} entries, got {}", dim * dim, entries.len())));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// ½I₂ₙ.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(invalid("mode count must be at least 1"));
        }
        Ok(Self(DMatrix::identity(2 * modes, 2 * modes) * 0.5))
    }

    /// Block-diagonal assembly of the given matrices.
    pub fn direct_sum(blocks: &[CovarianceMatrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(invalid("direct sum of zero blocks"));
        }
        let dim: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut m = DMatrix::zeros(dim, dim);
        let mut off = 0;
        for b in blocks {
            let d = b.dim();
            m.view_mut((off, off), (d, d)).copy_from(&b.0);
            off += d;
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn modes(&self) -> usize {
        self.0.nrows() / 2
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    /// 2×2 block (i, j) in mode indices.
    pub fn block(&self, i: usize, j: usize) -> DMatrix<f64> {
        self.0.view((2 * i, 2 * j), (2, 2)).into_owned()
    }

    /// Reduced CM of mode `i`.
    pub fn reduced(&self, i: usize) -> Result<Self> {
        if i >= self.modes() {
            return Err(invalid(format!("mode {i} out of range")));
        }
        Ok(Self(self.block(i, i)))
    }
}

impl std::ops::Index<(usize, usize)> for CovarianceMatrix {
    type Output = f64;

    fn index(&self, ix: (usize, usize)) -> &f64 {
        &self.0[ix]
    }
}

/// Gaussian state given by first and second moments.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: PhaseSpaceVector,
    cm: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(mean: PhaseSpaceVector, cm: CovarianceMatrix) -> Result<Self> {
        if mean.as_slice().len() != cm.dim() {
            return Err(invalid(format!("mean length {} does not match CM dimension {}", mean.as_slice().len(), cm.dim())));
        }
        if !check_physical(&cm) {
            return Err(domain("covariance matrix violates the uncertainty principle"));
        }
        Ok(Self { mean, cm })
    }

    /// Zero-mean state with the given CM.
    pub fn centered(cm: CovarianceMatrix) -> Result<Self> {
        let mean = PhaseSpaceVector::zeros(cm.modes())?;
        Self::new(mean, cm)
    }

    pub fn mean(&self) -> &PhaseSpaceVector {
        &self.mean
    }

    pub fn cm(&self) -> &CovarianceMatrix {
        &self.cm
    }

    pub fn modes(&self) -> usize {
        self.cm.modes()
    }

    pub(crate) fn from_parts_unchecked(mean: PhaseSpaceVector, cm: CovarianceMatrix) -> Self {
        Self { mean, cm }
    }
}

/// Purity, squeezing modulus and squeezing angle of a single-mode CM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeParams {
    mu: f64,
    r: f64,
    phi: f64,
}

impl SingleModeParams {
    /// μ ∈ (0, 1], r ≥ 0, φ finite; φ is folded into (−π/2, π/2].
    pub fn new(mu: f64, r: f64, phi: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(invalid(format!("purity must lie in (0, 1], got {mu}")));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err(invalid(format!("squeezing must be finite and non-negative, got {r}")));
        }
        if !phi.is_finite() {
            return Err(invalid("squeezing angle must be finite"));
        }
        Ok(Self { mu, r, phi: fold_angle(phi) })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Folds an angle of period π into (−π/2, π/2].
pub fn fold_angle(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(PI);
    if p > 0.5 * PI {
        p -= PI;
    }
    p
}

/// Symplectic eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum(Vec<f64>);

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn min(&self) -> f64 {
        *self.0.last().expect("spectrum is nonempty")
    }

    pub fn max(&self) -> f64 {
        self.0[0]
    }
}

/// ⊕ω with ω = [[0, 1], [−1, 0]].
pub fn symplectic_form(modes: usize) -> Result<DMatrix<f64>> {
    if modes == 0 {
        return Err(invalid("mode count must be at least 1"));
    }
    let mut m = DMatrix::zeros(2 * modes, 2 * modes);
    for i in 0..modes {
        m[(2 * i, 2 * i + 1)] = 1.0;
        m[(2 * i + 1, 2 * i)] = -1.0;
    }
    Ok(m)
}

/// Moduli of the eigenvalues of iΩσ, multiplicity halved.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> SymplecticSpectrum {
    let omega = symplectic_form(cm.modes()).expect("cm has at least one mode");
    let eig = (omega * cm.matrix()).complex_eigenvalues();
    let mut moduli: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    SymplecticSpectrum(moduli.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Positive definite with every symplectic eigenvalue ≥ ½ − 1e-12·max(1, maxᵢⱼ|σᵢⱼ|)².
pub fn check_physical(cm: &CovarianceMatrix) -> bool {
    if cm.matrix().clone().cholesky().is_none() {
        return false;
    }
    let scale = cm.matrix().amax().max(1.0);
    symplectic_eigenvalues(cm).min() >= 0.5 - PHYSICAL_TOL * scale * scale
}

fn require_physical(cm: &CovarianceMatrix) -> Result<()> {
    if check_physical(cm) {
        Ok(())
    } else {
        Err(domain("covariance matrix violates the uncertainty principle"))
    }
}

/// μ = 1/(2ⁿ√Det σ).
pub fn purity_gaussian(cm: &CovarianceMatrix) -> Result<f64> {
    require_physical(cm)?;
    Ok(1.0 / (2f64.powi(cm.modes() as i32) * cm.determinant().sqrt()))
}

/// f(x) = (x+½)ln(x+½) − (x−½)ln(x−½), continuous at x = ½.
pub fn bosonic_entropy(x: f64) -> f64 {
    let lo = x - 0.5;
    let hi = x + 0.5;
    let tail = if lo > 0.0 { lo * lo.ln() } else { 0.0 };
    hi * hi.ln() - tail
}

/// Σᵢ f(νᵢ) in nats.
pub fn von_neumann_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    require_physical(cm)?;
    Ok(symplectic_eigenvalues(cm).values().iter().map(|&v| bosonic_entropy(v)).sum())
}

/// max[(1 − 2u)/2, 0] with u the smallest eigenvalue of σ.
pub fn nonclassical_depth_gaussian(cm: &CovarianceMatrix) -> Result<f64> {
    require_physical(cm)?;
    let u = cm.matrix().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    Ok((0.5 - u).max(0.0))
}

/// Inverse of [`cm_from_params`]; r = 0 reports φ = 0.
pub fn params_from_cm(cm: &CovarianceMatrix) -> Result<SingleModeParams> {
    if cm.modes() != 1 {
        return Err(invalid("single-mode parametrization needs a 2×2 CM"));
    }
    let mu = purity_gaussian(cm)?;
    let m = cm.matrix();
    let c = ((m[(0, 0)] + m[(1, 1)]) * mu).max(1.0);
    let r = 0.5 * c.acosh();
    let sc = (m[(1, 1)] - m[(0, 0)]) * mu;
    let ss = 2.0 * m[(0, 1)] * mu;
    let phi = if r == 0.0 || sc.hypot(ss) < 1e-14 { 0.0 } else { fold_angle(0.5 * ss.atan2(sc)) };
    SingleModeParams::new(mu.min(1.0), r, phi)
}

/// σ₁₁ = (C − S cos2φ)/2μ, σ₂₂ = (C + S cos2φ)/2μ, σ₁₂ = S sin2φ/2μ with C = cosh2r, S = sinh2r.
pub fn cm_from_params(p: &SingleModeParams) -> CovarianceMatrix {
    let (c, s) = ((2.0 * p.r).cosh(), (2.0 * p.r).sinh());
    let (s2, c2) = (2.0 * p.phi).sin_cos();
    let k = 0.5 / p.mu;
    CovarianceMatrix(DMatrix::from_row_slice(2, 2, &[k * (c - s * c2), k * s * s2, k * s * s2, k * (c + s * c2)]))
}

/// W(X) = exp(−½ΔᵀΣ⁻¹Δ)/((2π)ⁿ√Det σ), Δ = X − X̄.
pub fn wigner_gaussian(state: &GaussianState, point: &PhaseSpaceVector) -> Result<f64> {
    let cm = state.cm();
    if point.as_slice().len() != cm.dim() {
        return Err(invalid("point dimension does not match state"));
    }
    let chol = cm.matrix().clone().cholesky().ok_or_else(|| domain("covariance matrix is singular"))?;
    let delta = nalgebra::DVector::from_iterator(
        cm.dim(),
        point.as_slice().iter().zip(state.mean().as_slice()).map(|(x, m)| x - m),
    );
    let y = chol.solve(&delta);
    let q = delta.dot(&y);
    let det = chol.determinant();
    Ok((-0.5 * q).exp() / ((2.0 * PI).powi(cm.modes() as i32) * det.sqrt()))
}

/// χ(X) = exp(−½XᵀΩᵀσΩX + i(ΩX̄)ᵀX).
pub fn characteristic_gaussian(state: &GaussianState, point: &PhaseSpaceVector) -> Result<Complex64> {
    let cm = state.cm();
    if point.as_slice().len() != cm.dim() {
        return Err(invalid("point dimension does not match state"));
    }
    let omega = symplectic_form(cm.modes())?;
    let x = nalgebra::DVector::from_column_slice(point.as_slice());
    let ox = &omega * &x;
    let quad = ox.dot(&(cm.matrix() * &ox));
    let mean = nalgebra::DVector::from_column_slice(state.mean().as_slice());
    let phase = (&omega * mean).dot(&x);
    Ok(Complex64::from_polar((-0.5 * quad).exp(), phase))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm2(a: f64, b: f64, c: f64) -> CovarianceMatrix {
        CovarianceMatrix::from_row_slice(2, &[a, c, c, b]).unwrap()
    }

    #[test]
    fn symplectic_form_shapes() {
        assert_eq!(symplectic_form(1).unwrap(), DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let o3 = symplectic_form(3).unwrap();
        assert_eq!(&o3 * &o3, -DMatrix::identity(6, 6));
        assert_eq!(o3.transpose(), -o3);
        assert!(symplectic_form(0).is_err());
    }

    #[test]
    fn spectra_of_simple_states() {
        assert!((symplectic_eigenvalues(&CovarianceMatrix::vacuum(1).unwrap()).values()[0] - 0.5).abs() < 1e-15);
        assert!((symplectic_eigenvalues(&cm2(2.0, 2.0, 0.0)).values()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn non_symmetric_rejected() {
        assert!(CovarianceMatrix::from_row_slice(2, &[1.0, 0.2, 0.1, 1.0]).is_err());
        assert!(CovarianceMatrix::from_row_slice(3, &[1.0; 9]).is_err());
    }

    #[test]
    fn physicality() {
        assert!(check_physical(&CovarianceMatrix::vacuum(2).unwrap()));
        assert!(!check_physical(&cm2(0.4, 0.4, 0.0)));
        assert!(!check_physical(&cm2(1.0, -1.0, 0.0)));
    }

    #[test]
    fn purity_values() {
        assert!((purity_gaussian(&CovarianceMatrix::vacuum(1).unwrap()).unwrap() - 1.0).abs() < 1e-15);
        assert!((purity_gaussian(&cm2(1.0, 1.0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!(purity_gaussian(&cm2(0.4, 0.4, 0.0)).is_err());
    }

    #[test]
    fn entropy_values() {
        assert_eq!(von_neumann_entropy(&CovarianceMatrix::vacuum(2).unwrap()).unwrap(), 0.0);
        let want = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert!((von_neumann_entropy(&cm2(1.0, 1.0, 0.0)).unwrap() - want).abs() < 1e-13);
        assert!((want - 0.954_771_252_7).abs() < 1e-9);
        let prod = CovarianceMatrix::direct_sum(&[cm2(1.0, 1.0, 0.0), cm2(2.0, 0.5, 0.3)]).unwrap();
        let sum = von_neumann_entropy(&cm2(1.0, 1.0, 0.0)).unwrap() + von_neumann_entropy(&cm2(2.0, 0.5, 0.3)).unwrap();
        assert!((von_neumann_entropy(&prod).unwrap() - sum).abs() < 1e-12);
    }

    #[test]
    fn depth_values() {
        assert_eq!(nonclassical_depth_gaussian(&CovarianceMatrix::vacuum(1).unwrap()).unwrap(), 0.0);
        let r: f64 = 0.7;
        let sq = cm2(0.5 * (2.0 * r).exp(), 0.5 * (-2.0 * r).exp(), 0.0);
        let got = nonclassical_depth_gaussian(&sq).unwrap();
        assert!((got - 0.5 * (1.0 - (-2.0 * r).exp())).abs() < 1e-14);
    }

    #[test]
    fn params_round_trip() {
        let v = params_from_cm(&CovarianceMatrix::vacuum(1).unwrap()).unwrap();
        assert!((v.mu() - 1.0).abs() < 1e-15 && v.r() == 0.0 && v.phi() == 0.0);
        let p = SingleModeParams::new(0.5, 1.0, PI / 4.0).unwrap();
        let q = params_from_cm(&cm_from_params(&p)).unwrap();
        assert!((q.mu() - 0.5).abs() < 1e-12 && (q.r() - 1.0).abs() < 1e-10 && (q.phi() - PI / 4.0).abs() < 1e-10);
    }

    #[test]
    fn angle_folding() {
        assert!((fold_angle(PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert!((fold_angle(-PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert!((fold_angle(3.0) - (3.0 - PI)).abs() < 1e-15);
    }

    #[test]
    fn wigner_peaks() {
        let vac = GaussianState::centered(CovarianceMatrix::vacuum(1).unwrap()).unwrap();
        let origin = PhaseSpaceVector::zeros(1).unwrap();
        assert!((wigner_gaussian(&vac, &origin).unwrap() - 1.0 / PI).abs() < 1e-15);
        let st = GaussianState::new(PhaseSpaceVector::new(vec![1.0, -2.0]).unwrap(), cm2(1.3, 0.9, 0.2)).unwrap();
        let at_mean = wigner_gaussian(&st, st.mean()).unwrap();
        assert!((at_mean - 1.0 / (2.0 * PI * st.cm().determinant().sqrt())).abs() < 1e-14);
    }

    #[test]
    fn characteristic_at_origin_is_one() {
        let st = GaussianState::new(PhaseSpaceVector::new(vec![0.4, 1.1]).unwrap(), cm2(1.3, 0.9, 0.2)).unwrap();
        let z = characteristic_gaussian(&st, &PhaseSpaceVector::zeros(1).unwrap()).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
