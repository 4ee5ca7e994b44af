// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random draws of symplectic matrices, physical covariance
//! matrices and bath parameters for randomized checks.

use nalgebra::DMatrix;
use rand::{Rng, RngExt};

use crate::channels::BathParams;
use crate::phase_space::{symplectic_form, CovarianceMatrix, SingleModeParams};
use crate::two_mode::StandardForm;

/// exp(ΩH) for a random symmetric H with entries in [−scale, scale].
pub fn random_symplectic<R: Rng + ?Sized>(modes: usize, scale: f64, rng: &mut R) -> DMatrix<f64> {
    let d = 2 * modes;
    let mut h = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = rng.random_range(-scale..=scale);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    (symplectic_form(modes).expect("modes ≥ 1") * h).exp()
}

/// Sᵀ diag(ν₁, ν₁, …) S with νᵢ ∈ [½, ν_max] and S from [`random_symplectic`].
pub fn random_physical_cm<R: Rng + ?Sized>(modes: usize, nu_max: f64, scale: f64, rng: &mut R) -> CovarianceMatrix {
    let s = random_symplectic(modes, scale, rng);
    let mut diag = DMatrix::zeros(2 * modes, 2 * modes);
    for i in 0..modes {
        let nu = rng.random_range(0.5..=nu_max);
        diag[(2 * i, 2 * i)] = nu;
        diag[(2 * i + 1, 2 * i + 1)] = nu;
    }
    let m = s.transpose() * diag * &s;
    CovarianceMatrix::new((&m + m.transpose()) * 0.5).expect("congruence of a symmetric matrix")
}

/// μ ∈ [μ_min, 1], r ∈ [0, r_max], φ ∈ (−π/2, π/2].
pub fn random_single_mode<R: Rng + ?Sized>(mu_min: f64, r_max: f64, rng: &mut R) -> SingleModeParams {
    let half = std::f64::consts::FRAC_PI_2;
    SingleModeParams::new(
        rng.random_range(mu_min..=1.0),
        rng.random_range(0.0..=r_max),
        rng.random_range(-half..=half),
    )
    .expect("ranges are valid")
}

/// γ ∈ [γ_min, γ_max], μ∞ ∈ [μ_min, 1], r∞ ∈ [0, r_max], φ∞ ∈ (−π/2, π/2].
pub fn random_bath<R: Rng + ?Sized>(gamma: (f64, f64), mu_min: f64, r_max: f64, rng: &mut R) -> BathParams {
    let half = std::f64::consts::FRAC_PI_2;
    BathParams::new(
        rng.random_range(gamma.0..=gamma.1),
        rng.random_range(mu_min..=1.0),
        rng.random_range(0.0..=r_max),
        rng.random_range(-half..=half),
    )
    .expect("ranges are valid")
}

/// Physical standard form by rejection sampling.
pub fn random_standard_form<R: Rng + ?Sized>(rng: &mut R) -> StandardForm {
    loop {
        let a: f64 = rng.random_range(0.5..=3.0);
        let b: f64 = rng.random_range(0.5..=3.0);
        let lim = (a * b).sqrt();
        let c1 = rng.random_range(-lim..=lim);
        let c2 = rng.random_range(-lim..=lim);
        if let Ok(sf) = StandardForm::new(a, b, c1, c2) {
            return sf;
        }
    }
}
