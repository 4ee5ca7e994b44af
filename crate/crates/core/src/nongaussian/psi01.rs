// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};

use super::check_time;
use crate::channels::{env_cm, BathParams};
use crate::error::{Error, Result};

/// Purity of (|0⟩ + e^{iϑ}|1⟩)/√2 after time t:
/// μ = [4 − 2k trC + (k²/4)((trC)² + 2trC²) + 2k vᵀCv]/(8√Det Q),
/// Q = (k/2)I + (1−k)ωᵀσ∞ω, C = Q⁻¹/2, v = (−sinϑ, cosϑ).
pub fn psi01_purity_t(vartheta: f64, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let k = bath.damping(t);
    let e = env_cm(bath);
    let e = e.matrix();
    let rot = Matrix2::new(e[(1, 1)], -e[(0, 1)], -e[(1, 0)], e[(0, 0)]);
    let q = 0.5 * k * Matrix2::identity() + (1.0 - k) * rot;
    let c = 0.5 * q.try_inverse().ok_or_else(|| Error::Numerical("singular Q".into()))?;
    let v = Vector2::new(-vartheta.sin(), vartheta.cos());
    let tr = c.trace();
    let tr2 = (c * c).trace();
    let num = 4.0 - 2.0 * k * tr + 0.25 * k * k * (tr * tr + 2.0 * tr2) + 2.0 * k * v.dot(&(c * v));
    Ok(num / (8.0 * q.determinant().sqrt()))
}

/// ϑ maximizing the purity at every t: π/2 − φ∞ folded into [0, π).
pub fn psi01_optimal_phase(bath: &BathParams) -> f64 {
    (0.5 * PI - bath.phi_inf()).rem_euclid(PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{lindblad_evolve, TruncatedDensityMatrix};
    use num_complex::Complex64;

    fn oracle(vartheta: f64, bath: &BathParams, t: f64) -> f64 {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let rho = TruncatedDensityMatrix::pure(&[Complex64::new(a, 0.0), Complex64::from_polar(a, vartheta)], 40).unwrap();
        lindblad_evolve(&rho, bath, t).unwrap().purity()
    }

    #[test]
    fn initial_purity_is_one() {
        let bath = BathParams::new(1.0, 0.3, 0.5, 0.2).unwrap();
        for &th in &[0.0, 0.7, 2.0] {
            assert!((psi01_purity_t(th, &bath, 0.0).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_bath_is_phase_independent() {
        let bath = BathParams::thermal(1.0, 0.4).unwrap();
        let a = psi01_purity_t(0.1, &bath, 0.8).unwrap();
        let b = psi01_purity_t(2.3, &bath, 0.8).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn matches_lindblad() {
        let bath = BathParams::new(1.0, 0.5, 0.3, 0.4).unwrap();
        for &(th, t) in &[(0.3, 0.2), (1.9, 0.7)] {
            assert!((psi01_purity_t(th, &bath, t).unwrap() - oracle(th, &bath, t)).abs() < 1e-8);
        }
    }

    #[test]
    fn optimal_phase_maximizes() {
        let bath = BathParams::new(1.0, 0.25, 0.28, 0.35).unwrap();
        let best = psi01_optimal_phase(&bath);
        let at_best = psi01_purity_t(best, &bath, 0.5).unwrap();
        for i in 0..720 {
            let th = PI * i as f64 / 720.0;
            assert!(psi01_purity_t(th, &bath, 0.5).unwrap() <= at_best + 1e-14);
        }
    }

    #[test]
    fn squeezed_bath_gain() {
        let sq = BathParams::new(1.0, 0.25, 0.28, 0.0).unwrap();
        let th = BathParams::thermal(1.0, 0.25).unwrap();
        let gain = psi01_purity_t(psi01_optimal_phase(&sq), &sq, 0.5).unwrap() / psi01_purity_t(0.0, &th, 0.5).unwrap() - 1.0;
        assert!(gain > 0.0);
    }
}
