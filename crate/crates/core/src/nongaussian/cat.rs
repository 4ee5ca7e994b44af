// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};

use super::check_time;
use super::field::{CatTerms, WignerField};
use crate::channels::{env_cm, BathParams};
use crate::error::{invalid, Error, Result};

/// (|β₀⟩ + e^{iθ}|−β₀⟩)/norm with |β₀⟩ = S(r₀)D(X₀)|0⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatState {
    x0: [f64; 2],
    r0: f64,
    theta: f64,
}

impl CatState {
    /// Requires 1 + cosθ·e^{−‖X₀‖²} > 0.
    pub fn new(x0: [f64; 2], r0: f64, theta: f64) -> Result<Self> {
        if !x0.iter().all(|v| v.is_finite()) || !theta.is_finite() {
            return Err(invalid("cat parameters must be finite"));
        }
        if !(r0 >= 0.0 && r0.is_finite()) {
            return Err(invalid(format!("squeezing must be finite and non-negative, got {r0}")));
        }
        let s = Self { x0, r0, theta };
        if !(s.norm() > 1e-12) {
            return Err(invalid("cat state has vanishing norm"));
        }
        Ok(s)
    }

    pub fn x0(&self) -> [f64; 2] {
        self.x0
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn x0_sqr(&self) -> f64 {
        self.x0[0] * self.x0[0] + self.x0[1] * self.x0[1]
    }

    /// 1 + cosθ·e^{−‖X₀‖²}.
    fn norm(&self) -> f64 {
        1.0 + self.theta.cos() * (-self.x0_sqr()).exp()
    }

    fn r(&self) -> Matrix2<f64> {
        Matrix2::new(self.r0.exp(), 0.0, 0.0, (-self.r0).exp())
    }

    fn sigma_t(&self, bath: &BathParams, t: f64) -> Matrix2<f64> {
        let k = bath.damping(t);
        let r = self.r();
        let s0 = 0.5 * r * r;
        let e = env_cm(bath);
        let e = e.matrix();
        let s_inf = Matrix2::new(e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]);
        k * s0 + (1.0 - k) * s_inf
    }
}

/// Evolved four-term Wigner function.
pub fn cat_wigner_t(cat: &CatState, bath: &BathParams, t: f64) -> Result<WignerField> {
    check_time(t)?;
    let k = bath.damping(t);
    let sigma = cat.sigma_t(bath, t);
    let det = sigma.determinant();
    let p = sigma.try_inverse().ok_or_else(|| Error::Numerical("singular evolved CM".into()))?;
    let x0 = Vector2::new(cat.x0[0], cat.x0[1]);
    let r = cat.r();
    let m = k.sqrt() * r * x0;
    let v = k.sqrt() * r * Vector2::new(x0[1], -x0[0]);
    let std = sigma.symmetric_eigenvalues().max().sqrt();
    let reach = m.norm() + 6.0 * std;
    let terms = CatTerms {
        p,
        m,
        v,
        theta: cat.theta,
        x0_sqr: cat.x0_sqr(),
        prefactor: 1.0 / (4.0 * PI * cat.norm() * det.sqrt()),
    };
    Ok(WignerField::cat(terms, [reach, reach]))
}

/// Closed-form purity from Gaussian integrals of the four terms.
pub fn cat_purity_t(cat: &CatState, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let k = bath.damping(t);
    let sigma = cat.sigma_t(bath, t);
    let det = sigma.determinant();
    let p = sigma.try_inverse().ok_or_else(|| Error::Numerical("singular evolved CM".into()))?;
    let r = cat.r();
    let s = r * p * r;
    let tm = s.try_inverse().ok_or_else(|| Error::Numerical("singular S(t)".into()))? / det;
    let x0 = Vector2::new(cat.x0[0], cat.x0[1]);
    let n2 = cat.x0_sqr();
    let th = cat.theta;

    let xjx_re = x0[0] * x0[0] - x0[1] * x0[1];
    let xjx_im = 2.0 * x0[0] * x0[1];
    let tr_re = s[(0, 0)] - s[(1, 1)];
    let tr_im = s[(0, 1)] + s[(1, 0)];
    let q_re = xjx_re * tr_re + xjx_im * tr_im;
    let q_im = xjx_im * tr_re - xjx_re * tr_im;

    let t1 = 2.0 * (1.0 + (-k * x0.dot(&(s * x0))).exp());
    let t2 = 2.0 * (2.0 * th).cos() * (-2.0 * n2).exp() + 2.0 * (-2.0 * n2 + k * x0.dot(&(tm * x0))).exp();
    let t3 = 8.0 * th.cos() * (-n2 - 0.25 * k * q_re).exp() * (0.25 * k * q_im).cos();
    let nrm = cat.norm();
    Ok((t1 + t2 + t3) / (8.0 * nrm * nrm * det.sqrt()))
}

/// t_dec = 1/(2γ|α₀|²) with |α₀|² = ‖X₀‖²/2.
pub fn cat_tdec_estimate(cat: &CatState, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(invalid(format!("coupling must be positive, got {gamma}")));
    }
    let n2 = cat.x0_sqr();
    if n2 == 0.0 {
        return Err(invalid("decoherence time needs X₀ ≠ 0"));
    }
    Ok(1.0 / (gamma * n2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::single_mode_purity_t;
    use crate::nongaussian::negative_part;
    use crate::phase_space::SingleModeParams;

    #[test]
    fn initial_state_is_pure_and_normalized() {
        let bath = BathParams::thermal(1.0, 0.5).unwrap();
        for &(x0, r0, th) in &[([1.0, 1.0], 0.0, 0.0), ([0.5, -0.3], 0.7, 1.1), ([2.0, 0.0], 0.2, PI)] {
            let cat = CatState::new(x0, r0, th).unwrap();
            assert!((cat_purity_t(&cat, &bath, 0.0).unwrap() - 1.0).abs() < 1e-12);
            let w = cat_wigner_t(&cat, &bath, 0.0).unwrap();
            assert!((w.integral(1e-10).unwrap().value - 1.0).abs() < 1e-8);
            assert!((w.purity(1e-9).unwrap().value - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn coherent_cat_has_negative_lobes() {
        let bath = BathParams::thermal(1.0, 0.5).unwrap();
        let w = cat_wigner_t(&CatState::new([1.0, 1.0], 0.0, 0.0).unwrap(), &bath, 0.0).unwrap();
        let mut min = f64::INFINITY;
        for i in 0..200 {
            for j in 0..200 {
                min = min.min(w.eval(-4.0 + 0.04 * i as f64, -4.0 + 0.04 * j as f64));
            }
        }
        assert!(min < -0.05);
    }

    #[test]
    fn zero_displacement_reduces_to_squeezed_vacuum() {
        let bath = BathParams::new(1.0, 0.4, 0.3, 0.2).unwrap();
        let cat = CatState::new([0.0, 0.0], 0.8, 0.0).unwrap();
        let init = SingleModeParams::new(1.0, 0.8, std::f64::consts::FRAC_PI_2).unwrap();
        for &t in &[0.1, 0.5, 2.0] {
            let a = cat_purity_t(&cat, &bath, t).unwrap();
            let b = single_mode_purity_t(&init, &bath, t).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
        let w = cat_wigner_t(&cat, &bath, 0.3).unwrap();
        assert!(negative_part(&w, 1e-9).unwrap().xi.abs() < 1e-8);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let bath = BathParams::new(1.0, 0.5, 0.4, -0.3).unwrap();
        let cat = CatState::new([1.2, -0.4], 0.5, 0.9).unwrap();
        for &t in &[0.05, 0.4, 1.3] {
            let w = cat_wigner_t(&cat, &bath, t).unwrap();
            let q = w.purity(1e-10).unwrap();
            assert!((cat_purity_t(&cat, &bath, t).unwrap() - q.value).abs() < 1e-7, "t={t}");
        }
    }

    #[test]
    fn tdec_convention() {
        let c = CatState::new([4.0, 4.0], 0.0, 0.0).unwrap();
        assert!((cat_tdec_estimate(&c, 1.0).unwrap() - 0.03125).abs() < 1e-15);
        let c = CatState::new([1.0, 1.0], 0.0, 0.0).unwrap();
        assert!((cat_tdec_estimate(&c, 2.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(cat_tdec_estimate(&CatState::new([0.0, 0.0], 0.0, 0.0).unwrap(), 1.0).is_err());
    }

    #[test]
    fn invalid_cats() {
        assert!(CatState::new([0.0, 0.0], 0.0, PI).is_err());
        assert!(CatState::new([1.0, 0.0], -0.1, 0.0).is_err());
    }
}
