// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Gaussian dissipative channel: bath parametrization, exact moment
//! evolution and the single-mode closed-form trackers.
//!
//! With k = e^{−γt} each mode evolves as σ → kσ + (1−k)σ∞ and X̄ → √k X̄.
//! The bath CM is σ∞ = [[½+N+Re M, Im M], [Im M, ½+N−Re M]] with
//! M = |M|e^{−2iφ∞}, so a bath with φ∞ = 0 is squeezed in p.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::phase_space::{
    fold_angle, symplectic_form, CovarianceMatrix, GaussianState, PhaseSpaceVector, SingleModeParams,
};

/// Coupling and asymptotic state of one mode's reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    gamma: f64,
    mu_inf: f64,
    r_inf: f64,
    phi_inf: f64,
}

impl BathParams {
    /// γ > 0, μ∞ ∈ (0, 1], r∞ ≥ 0, φ∞ finite (folded into (−π/2, π/2]).
    pub fn new(gamma: f64, mu_inf: f64, r_inf: f64, phi_inf: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(invalid(format!("coupling must be positive and finite, got {gamma}")));
        }
        if !(mu_inf > 0.0 && mu_inf <= 1.0) {
            return Err(invalid(format!("asymptotic purity must lie in (0, 1], got {mu_inf}")));
        }
        if !(r_inf >= 0.0 && r_inf.is_finite()) {
            return Err(invalid(format!("bath squeezing must be finite and non-negative, got {r_inf}")));
        }
        if !phi_inf.is_finite() {
            return Err(invalid("bath squeezing angle must be finite"));
        }
        Ok(Self { gamma, mu_inf, r_inf, phi_inf: fold_angle(phi_inf) })
    }

    /// Unsqueezed bath.
    pub fn thermal(gamma: f64, mu_inf: f64) -> Result<Self> {
        Self::new(gamma, mu_inf, 0.0, 0.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu_inf(&self) -> f64 {
        self.mu_inf
    }

    pub fn r_inf(&self) -> f64 {
        self.r_inf
    }

    pub fn phi_inf(&self) -> f64 {
        self.phi_inf
    }

    pub fn is_thermal(&self) -> bool {
        self.r_inf == 0.0
    }

    /// e^{−γt}.
    pub fn damping(&self, t: f64) -> f64 {
        (-self.gamma * t).exp()
    }
}

/// Thermal occupation N and squeezing correlation M of a bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NMParams {
    n: f64,
    m: Complex64,
}

impl NMParams {
    /// N ≥ 0 and |M|² ≤ N(N+1) (+1e-12).
    pub fn new(n: f64, m: Complex64) -> Result<Self> {
        if !(n >= 0.0 && n.is_finite()) || !m.is_finite() {
            return Err(invalid(format!("thermal photon number must be finite and non-negative, got {n}")));
        }
        if m.norm_sqr() > n * (n + 1.0) + 1e-12 {
            return Err(invalid(format!("|M|² = {} exceeds N(N+1) = {}", m.norm_sqr(), n * (n + 1.0))));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> Complex64 {
        self.m
    }
}

/// μ∞ = 1/√((2N+1)² − 4|M|²), cosh2r∞ = √(1 + 4μ∞²|M|²), 2φ∞ = −Arg M.
pub fn bath_from_nm(nm: &NMParams, gamma: f64) -> Result<BathParams> {
    let disc = (2.0 * nm.n + 1.0).powi(2) - 4.0 * nm.m.norm_sqr();
    let mu = (1.0 / disc.max(1.0).sqrt()).min(1.0);
    let c = (1.0 + 4.0 * mu * mu * nm.m.norm_sqr()).sqrt();
    let r = 0.5 * c.max(1.0).acosh();
    let phi = if nm.m.norm() == 0.0 { 0.0 } else { -0.5 * nm.m.arg() };
    BathParams::new(gamma, mu, r, phi)
}

/// N = cosh2r∞/(2μ∞) − ½, M = sinh2r∞/(2μ∞)·e^{−2iφ∞}.
pub fn nm_from_bath(b: &BathParams) -> NMParams {
    let k = 0.5 / b.mu_inf;
    let n = ((2.0 * b.r_inf).cosh() * k - 0.5).max(0.0);
    let m = Complex64::from_polar((2.0 * b.r_inf).sinh() * k, -2.0 * b.phi_inf);
    NMParams { n, m }
}

/// Asymptotic 2×2 CM of the bath.
pub fn env_cm(b: &BathParams) -> CovarianceMatrix {
    let nm = nm_from_bath(b);
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[0.5 + nm.n + nm.m.re, nm.m.im, nm.m.im, 0.5 + nm.n - nm.m.re],
    );
    CovarianceMatrix::new(m).expect("bath CM is symmetric by construction")
}

/// One bath per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    baths: Vec<BathParams>,
}

impl ChannelSpec {
    pub fn new(baths: Vec<BathParams>) -> Result<Self> {
        if baths.is_empty() {
            return Err(invalid("channel needs at least one bath"));
        }
        Ok(Self { baths })
    }

    pub fn single(bath: BathParams) -> Self {
        Self { baths: vec![bath] }
    }

    pub fn baths(&self) -> &[BathParams] {
        &self.baths
    }

    pub fn modes(&self) -> usize {
        self.baths.len()
    }

    /// Common coupling when all γᵢ agree to 1e-14 relative.
    pub fn equal_couplings(&self) -> Option<f64> {
        let g = self.baths[0].gamma;
        self.baths.iter().all(|b| (b.gamma - g).abs() <= 1e-14 * g).then_some(g)
    }

    pub fn min_gamma(&self) -> f64 {
        self.baths.iter().map(|b| b.gamma).fold(f64::INFINITY, f64::min)
    }

    /// Γ(t) = ⊕√kᵢ I₂ and σ∞(t) = ⊕(1−kᵢ)σᵢ∞.
    pub fn matrices(&self, t: f64) -> (DMatrix<f64>, DMatrix<f64>) {
        let d = 2 * self.modes();
        let mut x = DMatrix::zeros(d, d);
        let mut y = DMatrix::zeros(d, d);
        for (i, b) in self.baths.iter().enumerate() {
            let k = b.damping(t);
            x[(2 * i, 2 * i)] = k.sqrt();
            x[(2 * i + 1, 2 * i + 1)] = k.sqrt();
            let env = env_cm(b);
            y.view_mut((2 * i, 2 * i), (2, 2)).copy_from(&(env.matrix() * (1.0 - k)));
        }
        (x, y)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}

/// Exact first- and second-moment evolution.
pub fn evolve_moments(state: &GaussianState, ch: &ChannelSpec, t: f64) -> Result<GaussianState> {
    check_time(t)?;
    if state.modes() != ch.modes() {
        return Err(invalid(format!("state has {} modes, channel {}", state.modes(), ch.modes())));
    }
    let (x, y) = ch.matrices(t);
    let cm = CovarianceMatrix::new(&x * state.cm().matrix() * &x + y)?;
    let mean = &x * DVector::from_column_slice(state.mean().as_slice());
    let mean = PhaseSpaceVector::new(mean.iter().copied().collect())?;
    Ok(GaussianState::from_parts_unchecked(mean, cm))
}

/// Complete positivity of σ → XᵀσX + Y: Y + (i/2)(Ω − XᵀΩX) ⪰ −1e-12.
pub fn gaussian_map_check(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<bool> {
    let d = x.nrows();
    if d == 0 || d % 2 != 0 || x.shape() != (d, d) || y.shape() != (d, d) {
        return Err(invalid("map matrices must both be 2n×2n"));
    }
    if (y - y.transpose()).amax() > 1e-12 * y.amax().max(1.0) {
        return Err(invalid("noise matrix must be symmetric"));
    }
    let omega = symplectic_form(d / 2)?;
    let anti = (&omega - x.transpose() * &omega * x) * 0.5;
    let h = DMatrix::from_fn(d, d, |i, j| Complex64::new(y[(i, j)], anti[(i, j)]));
    let min = h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    Ok(min >= -1e-12)
}

fn mixing_term(init: &SingleModeParams, bath: &BathParams) -> f64 {
    let (c0, s0) = ((2.0 * init.r()).cosh(), (2.0 * init.r()).sinh());
    let (ci, si) = ((2.0 * bath.r_inf).cosh(), (2.0 * bath.r_inf).sinh());
    ci * c0 + si * s0 * (2.0 * bath.phi_inf - 2.0 * init.phi()).cos()
}

/// μ(t) = μ₀[q²(1−k)² + k² + 2q(C∞C₀ + S∞S₀cos(2φ∞−2φ₀))(1−k)k]^{−½}, q = μ₀/μ∞.
pub fn single_mode_purity_t(init: &SingleModeParams, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let k = bath.damping(t);
    let q = init.mu() / bath.mu_inf;
    let s = q * q * (1.0 - k) * (1.0 - k) + k * k + 2.0 * q * mixing_term(init, bath) * (1.0 - k) * k;
    Ok(init.mu() / s.sqrt())
}

/// κ(t) = cosh2r(t)/μ(t) = C₀k/μ₀ + C∞(1−k)/μ∞.
fn kappa(init: &SingleModeParams, bath: &BathParams, k: f64) -> f64 {
    (2.0 * init.r()).cosh() * k / init.mu() + (2.0 * bath.r_inf).cosh() * (1.0 - k) / bath.mu_inf
}

/// r(t) from κ(t)·μ(t) = cosh2r(t).
pub fn single_mode_r_t(init: &SingleModeParams, bath: &BathParams, t: f64) -> Result<f64> {
    let mu = single_mode_purity_t(init, bath, t)?;
    let c = kappa(init, bath, bath.damping(t)) * mu;
    Ok(0.5 * c.max(1.0).acosh())
}

/// φ(t) with a flag set when r(t) vanishes and the angle is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEvolution {
    pub phi: f64,
    pub degenerate: bool,
}

/// tan2φ(t) = [S₀sin2φ₀k − S∞sin2φ∞q(1−k)] / [S₀cos2φ₀k − S∞cos2φ∞q(1−k)].
pub fn single_mode_phi_t(init: &SingleModeParams, bath: &BathParams, t: f64) -> Result<PhaseEvolution> {
    check_time(t)?;
    let k = bath.damping(t);
    let q = init.mu() / bath.mu_inf;
    let s0 = (2.0 * init.r()).sinh();
    let si = (2.0 * bath.r_inf).sinh();
    let (sn0, cs0) = (2.0 * init.phi()).sin_cos();
    let (sni, csi) = (2.0 * bath.phi_inf).sin_cos();
    let num = s0 * sn0 * k - si * sni * q * (1.0 - k);
    let den = s0 * cs0 * k - si * csi * q * (1.0 - k);
    let scale = s0 * k + si * q * (1.0 - k);
    if num.hypot(den) <= 1e-13 * scale.max(f64::MIN_POSITIVE) || (num == 0.0 && den == 0.0) {
        return Ok(PhaseEvolution { phi: 0.0, degenerate: true });
    }
    Ok(PhaseEvolution { phi: fold_angle(0.5 * num.atan2(den)), degenerate: false })
}

/// (μ, r, φ) at time t.
pub fn single_mode_params_t(init: &SingleModeParams, bath: &BathParams, t: f64) -> Result<SingleModeParams> {
    let mu = single_mode_purity_t(init, bath, t)?;
    let r = single_mode_r_t(init, bath, t)?;
    let phi = single_mode_phi_t(init, bath, t)?.phi;
    SingleModeParams::new(mu.min(1.0), r, phi)
}

fn require_thermal(bath: &BathParams) -> Result<()> {
    if bath.is_thermal() {
        Ok(())
    } else {
        Err(invalid("operation is defined for an unsqueezed (thermal) bath"))
    }
}

/// Time of the interior purity minimum in a thermal bath, if any.
///
/// k_min = (q − C₀)/(q + 1/q − 2C₀), existing iff C₀ > max(q, 1/q).
pub fn t_min(init: &SingleModeParams, bath: &BathParams) -> Result<Option<f64>> {
    require_thermal(bath)?;
    let q = init.mu() / bath.mu_inf;
    let c0 = (2.0 * init.r()).cosh();
    if c0 <= q.max(1.0 / q) {
        return Ok(None);
    }
    let k = (q - c0) / (q + 1.0 / q - 2.0 * c0);
    if !(k > 0.0 && k < 1.0) {
        return Ok(None);
    }
    Ok(Some(-k.ln() / bath.gamma))
}

/// t_nc = ln(1 + μ∞)/γ.
pub fn t_nc(bath: &BathParams) -> Result<f64> {
    require_thermal(bath)?;
    Ok(bath.mu_inf.ln_1p() / bath.gamma)
}

/// τ(t) = [1 − κ + √(κ² − 1/μ²)]/2, clamped at 0.
pub fn single_mode_tau_t(init: &SingleModeParams, bath: &BathParams, t: f64) -> Result<f64> {
    let mu = single_mode_purity_t(init, bath, t)?;
    let kap = kappa(init, bath, bath.damping(t));
    let disc = (kap * kap - 1.0 / (mu * mu)).max(0.0);
    Ok((0.5 * (1.0 - kap + disc.sqrt())).max(0.0))
}
