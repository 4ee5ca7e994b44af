// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::Matrix2;

use super::check_time;
use super::field::{FockTerms, WignerField};
use crate::channels::{env_cm, BathParams};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{
    bessel_i0_scaled, binomial, integrate_1d, integrate_phase_space, laguerre, legendre, QuadratureResult,
    QuadratureSpec,
};

/// Non-Gaussian single-mode inputs built from |0⟩ and |1⟩ or a number state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FockInput {
    /// |n⟩.
    Number(usize),
    /// (|0⟩ + e^{iϑ}|1⟩)/√2.
    Superposition { vartheta: f64 },
}

/// χ(X, t) = e^{−k‖X‖²/4} L_n(k‖X‖²/2) e^{−½(1−k)Xᵀωᵀσ∞ωX}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCharacteristic {
    n: usize,
    k: f64,
    bath: Matrix2<f64>,
}

impl FockCharacteristic {
    pub fn n(&self) -> usize {
        self.n
    }

    /// χ at (x, p); real for number states.
    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let r2 = self.k * (x * x + p * p);
        let quad = x * x * self.bath[(1, 1)] - 2.0 * x * p * self.bath[(0, 1)] + p * p * self.bath[(0, 0)];
        (-0.25 * r2 - 0.5 * quad).exp() * laguerre(self.n, 0.5 * r2)
    }

    /// (2π)⁻¹∫χ² by adaptive quadrature.
    pub fn purity(&self, tolerance: f64) -> Result<QuadratureResult> {
        let lam = self.bath.symmetric_eigenvalues().min();
        let rate = 0.5 * self.k + lam;
        let half = ((36.0 + 8.0 * self.n as f64) / rate).sqrt();
        let spec = QuadratureSpec::symmetric(&[half, half], tolerance * 2.0 * PI)?;
        let r = integrate_phase_space(|v: &[f64]| self.eval(v[0], v[1]).powi(2), &spec)?;
        let s = 1.0 / (2.0 * PI);
        Ok(QuadratureResult { value: s * r.value, error: s * r.error, cells: r.cells })
    }
}

/// Characteristic function of |n⟩ after time t in the channel.
pub fn fock_char_t(n: usize, bath: &BathParams, t: f64) -> Result<FockCharacteristic> {
    check_time(t)?;
    let k = bath.damping(t);
    let e = env_cm(bath);
    let e = e.matrix();
    let bath_part = (1.0 - k) * Matrix2::new(e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]);
    Ok(FockCharacteristic { n, k, bath: bath_part })
}

/// μ = e^{γt}∫₀^∞ e^{−bs} L_n(s)² I₀(cs) ds with
/// b = 1 + (e^{γt}−1)cosh2r∞/μ∞ and c = (e^{γt}−1)|sinh2r∞|/μ∞.
pub fn fock_purity_t(n: usize, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let g = bath.gamma() * t;
    let em1 = g.exp_m1();
    let b = 1.0 + em1 * (2.0 * bath.r_inf()).cosh() / bath.mu_inf();
    let c = em1 * (2.0 * bath.r_inf()).sinh().abs() / bath.mu_inf();
    let gap = b - c;
    if !(gap > 0.0) {
        return Err(domain("Bessel-weighted purity integral does not converge"));
    }
    let f = |s: f64| (-gap * s).exp() * laguerre(n, s).powi(2) * bessel_i0_scaled(c * s);
    let width = (2.0 / gap).min(1.0);
    let reach = 4.0 * n as f64 + 10.0;
    let mut total: f64 = 0.0;
    let mut lo = 0.0;
    for _ in 0..200_000 {
        let hi = lo + width;
        let piece = integrate_1d(f, lo, hi, 1e-14 * width)?.value;
        total += piece;
        lo = hi;
        if (lo > reach || gap * lo > 80.0) && piece.abs() < 1e-17 * total {
            return Ok(g.exp() * total);
        }
    }
    Err(Error::Numerical("Bessel-weighted purity integral did not settle".into()))
}

/// Thermal-bath closed form,
/// μ = e^{γt}(ξ−2)ⁿ/ξⁿ⁺¹ P_n(1 + 2/(ξ²−2ξ)) with ξ = (e^{γt}+μ∞−1)/μ∞.
///
/// Near ξ = 2 the equivalent sum e^{γt}ξ^{−(2n+1)}Σ_j C(n,j)²(ξ−1)^{2j} is used.
pub fn fock_purity_thermal(n: usize, mu_inf: f64, gamma_t: f64) -> Result<f64> {
    if !(mu_inf > 0.0 && mu_inf <= 1.0) {
        return Err(invalid(format!("asymptotic purity must lie in (0, 1], got {mu_inf}")));
    }
    check_time(gamma_t)?;
    let e = gamma_t.exp();
    let xi = (e + mu_inf - 1.0) / mu_inf;
    let lead = e / xi;
    if (xi - 2.0).abs() > 0.1 {
        let ratio = (xi - 2.0) / xi;
        return Ok(lead * ratio.powi(n as i32) * legendre(n, 1.0 + 2.0 / (xi * xi - 2.0 * xi)));
    }
    let rho = (xi - 1.0) / xi;
    let sum: f64 = (0..=n)
        .map(|j| binomial(n, j).powi(2) * rho.powi(2 * j as i32) * xi.powi(2 * j as i32 - 2 * n as i32))
        .sum();
    Ok(lead * sum)
}

/// W(X) = ηⁿ/(πζⁿ⁺¹) e^{−‖X‖²/ζ} L_n(−2k‖X‖²/(ζη)) in a thermal bath, with
/// ζ = [1−(1−μ∞)k]/μ∞ and η = [1−(1+μ∞)k]/μ∞.
pub fn fock_wigner_t(n: usize, mu_inf: f64, gamma_t: f64) -> Result<WignerField> {
    if !(mu_inf > 0.0 && mu_inf <= 1.0) {
        return Err(invalid(format!("asymptotic purity must lie in (0, 1], got {mu_inf}")));
    }
    check_time(gamma_t)?;
    let k = (-gamma_t).exp();
    let zeta = (1.0 - (1.0 - mu_inf) * k) / mu_inf;
    let eta = (1.0 - (1.0 + mu_inf) * k) / mu_inf;
    let radius = (zeta * (36.0 + 8.0 * n as f64)).sqrt();
    Ok(WignerField::fock(FockTerms { n, zeta, eta, k }, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::single_mode_purity_t;
    use crate::nongaussian::negative_part;
    use crate::numerics::{default_truncation, lindblad_evolve, TruncatedDensityMatrix};
    use crate::phase_space::SingleModeParams;

    fn oracle(n: usize, bath: &BathParams, t: f64) -> f64 {
        let nb = crate::channels::nm_from_bath(bath).n();
        let dim = default_truncation(nb, n);
        lindblad_evolve(&TruncatedDensityMatrix::fock(n, dim).unwrap(), bath, t).unwrap().purity()
    }

    #[test]
    fn thermal_closed_form_values() {
        assert!((fock_purity_thermal(1, 0.5, 1.0).unwrap() - 0.398751596529).abs() < 1e-11);
        assert!((fock_purity_thermal(3, 0.5, 1.0).unwrap() - 0.241824625387).abs() < 1e-11);
        for n in 0..=10 {
            assert!((fock_purity_thermal(n, 0.3, 0.0).unwrap() - 1.0).abs() < 1e-12);
            assert!((fock_purity_thermal(n, 0.3, 50.0).unwrap() - 0.3).abs() < 1e-12);
        }
        let init = SingleModeParams::new(1.0, 0.0, 0.0).unwrap();
        let bath = BathParams::thermal(1.0, 0.4).unwrap();
        for &t in &[0.1, 0.7, 3.0] {
            let v = single_mode_purity_t(&init, &bath, t).unwrap();
            assert!((fock_purity_thermal(0, 0.4, t).unwrap() - v).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_and_binomial_branches_agree() {
        let mu: f64 = 0.5;
        let tnc = mu.ln_1p();
        for n in 0..=10 {
            for &d in &[-0.05, -0.06, 0.06, 0.05] {
                let t = tnc + d;
                let e = t.exp();
                let xi = (e + mu - 1.0) / mu;
                let rho = (xi - 1.0) / xi;
                let sum: f64 = (0..=n)
                    .map(|j| binomial(n, j).powi(2) * rho.powi(2 * j as i32) * xi.powi(2 * j as i32 - 2 * n as i32))
                    .sum();
                let got = fock_purity_thermal(n, mu, t).unwrap();
                assert!((got - e / xi * sum).abs() < 1e-12, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn bessel_integral_matches_thermal() {
        for n in [0usize, 1, 4, 10] {
            for &t in &[0.25, 1.0, 3.0] {
                let bath = BathParams::thermal(1.0, 0.35).unwrap();
                let a = fock_purity_t(n, &bath, t).unwrap();
                let b = fock_purity_thermal(n, 0.35, t).unwrap();
                assert!((a - b).abs() < 1e-10, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn long_times_reach_bath_purity() {
        let bath = BathParams::new(1.0, 0.45, 0.6, 0.1).unwrap();
        for n in [0usize, 3] {
            assert!((fock_purity_t(n, &bath, 40.0).unwrap() - 0.45).abs() < 1e-9);
        }
    }

    #[test]
    fn lindblad_agreement() {
        let bath = BathParams::thermal(1.0, 0.5).unwrap();
        assert!((fock_purity_thermal(2, 0.5, 1.0).unwrap() - oracle(2, &bath, 1.0)).abs() < 1e-6);
        let bath = BathParams::new(1.0, 0.6, 0.4, 0.3).unwrap();
        for n in [1usize, 2] {
            let want = oracle(n, &bath, 0.5);
            assert!((fock_purity_t(n, &bath, 0.5).unwrap() - want).abs() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn characteristic_purity() {
        let bath = BathParams::new(1.0, 0.5, 0.3, 0.4).unwrap();
        let chi = fock_char_t(1, &bath, 0.0).unwrap();
        assert_eq!(chi.eval(0.0, 0.0), 1.0);
        assert!((chi.purity(1e-10).unwrap().value - 1.0).abs() < 1e-8);
        let chi = fock_char_t(2, &bath, 0.6).unwrap();
        let q = chi.purity(1e-10).unwrap().value;
        assert!((q - fock_purity_t(2, &bath, 0.6).unwrap()).abs() < 1e-8);
        let vac = fock_char_t(0, &BathParams::thermal(1.0, 1.0).unwrap(), 0.0).unwrap();
        assert!((vac.eval(0.6, -0.2) - (-0.1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn wigner_values() {
        let w = fock_wigner_t(1, 0.5, 0.0).unwrap();
        assert!((w.eval(0.0, 0.0) + 1.0 / PI).abs() < 1e-15);
        assert!((w.eval(0.3, 0.4) + (1.0 - 0.5) * (-0.25f64).exp() / PI).abs() < 1e-15);
        for n in 0..=4 {
            let w = fock_wigner_t(n, 0.5, 0.3).unwrap();
            assert!((w.integral(1e-12).unwrap().value - 1.0).abs() < 1e-10);
            let p = w.purity(1e-12).unwrap().value;
            assert!((p - fock_purity_thermal(n, 0.5, 0.3).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn origin_sign_flips_at_positive_time() {
        let mu: f64 = 0.5;
        let tnc = mu.ln_1p();
        for n in [1usize, 3] {
            assert!(fock_wigner_t(n, mu, tnc - 1e-3).unwrap().eval(0.0, 0.0) < 0.0);
            assert!(fock_wigner_t(n, mu, tnc + 1e-3).unwrap().eval(0.0, 0.0) > 0.0);
        }
        for n in 1..=4 {
            let w = fock_wigner_t(n, mu, tnc).unwrap();
            assert!(negative_part(&w, 1e-12).unwrap().xi < 1e-12);
        }
    }

    #[test]
    fn negative_part_grows_with_n() {
        let xs: Vec<f64> =
            (1..=4).map(|n| negative_part(&fock_wigner_t(n, 0.5, 0.0).unwrap(), 1e-10).unwrap().xi).collect();
        assert!(xs.windows(2).all(|w| w[1] > w[0]), "{xs:?}");
        assert!(xs[0] > 0.0);
    }
}
