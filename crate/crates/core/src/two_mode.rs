// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-mode Gaussian states: standard forms, PPT spectrum, entanglement and
//! correlation measures, and their evolution in the channel.

use nalgebra::DMatrix;

use crate::channels::{evolve_moments, BathParams, ChannelSpec};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::polynomial_real_roots;
use crate::phase_space::{
    check_physical, nonclassical_depth_gaussian, von_neumann_entropy, CovarianceMatrix, GaussianState,
};

/// `σ = [[a,0,c₁,0],[0,a,0,c₂],[c₁,0,b,0],[0,c₂,0,b]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardForm {
    a: f64,
    b: f64,
    c1: f64,
    c2: f64,
}

impl StandardForm {
    /// Fails with a domain error if the assembled CM is not physical.
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        if ![a, b, c1, c2].iter().all(|v| v.is_finite()) {
            return Err(invalid("standard-form entries must be finite"));
        }
        let sf = Self { a, b, c1, c2 };
        if a < 0.5 - 1e-12 || b < 0.5 - 1e-12 || !check_physical(&sf.cm_unchecked()) {
            return Err(domain(format!("standard form ({a}, {b}, {c1}, {c2}) is not physical")));
        }
        Ok(sf)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn is_symmetric(&self) -> bool {
        (self.a - self.b).abs() < 1e-12
    }

    fn cm_unchecked(&self) -> CovarianceMatrix {
        let (a, b, c1, c2) = (self.a, self.b, self.c1, self.c2);
        #[rustfmt::skip]
        let m = DMatrix::from_row_slice(4, 4, &[
            a, 0.0, c1, 0.0,
            0.0, a, 0.0, c2,
            c1, 0.0, b, 0.0,
            0.0, c2, 0.0, b,
        ]);
        CovarianceMatrix::new(m).expect("symmetric by construction")
    }
}

/// Global purity μ and two-mode squeezing r of a squeezed thermal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedThermalParams {
    mu: f64,
    r: f64,
}

impl SqueezedThermalParams {
    pub fn new(mu: f64, r: f64) -> Result<Self> {
        if !(mu > 0.0 && mu <= 1.0) {
            return Err(invalid(format!("purity must lie in (0, 1], got {mu}")));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err(invalid(format!("squeezing must be finite and non-negative, got {r}")));
        }
        Ok(Self { mu, r })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// a = b = cosh2r/(2√μ), c₁ = −c₂ = sinh2r/(2√μ).
    pub fn standard_form(&self) -> StandardForm {
        let s = 2.0 * self.mu.sqrt();
        let (a, c) = ((2.0 * self.r).cosh() / s, (2.0 * self.r).sinh() / s);
        StandardForm { a, b: a, c1: c, c2: -c }
    }

    /// ν̃₋ = e^{−2r}/(2√μ).
    pub fn ppt_nu_minus(&self) -> f64 {
        (-2.0 * self.r).exp() / (2.0 * self.mu.sqrt())
    }

    /// E_N = max(0, 2r + ½ ln μ).
    pub fn log_negativity(&self) -> f64 {
        (2.0 * self.r + 0.5 * self.mu.ln()).max(0.0)
    }
}

/// Local-symplectic invariants of a two-mode CM [[α, γ], [γᵀ, β]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInvariants {
    pub det_sigma: f64,
    pub det_alpha: f64,
    pub det_beta: f64,
    pub det_gamma: f64,
}

impl TwoModeInvariants {
    /// Δ = Det α + Det β + 2 Det γ.
    pub fn delta(&self) -> f64 {
        self.det_alpha + self.det_beta + 2.0 * self.det_gamma
    }

    /// Δ̃ = Det α + Det β − 2 Det γ.
    pub fn delta_tilde(&self) -> f64 {
        self.det_alpha + self.det_beta - 2.0 * self.det_gamma
    }

    /// (ν̃₋, ν̃₊) with ν̃∓² = [Δ̃ ∓ √(Δ̃² − 4 Det σ)]/2.
    pub fn ppt_eigenvalues(&self) -> Result<(f64, f64)> {
        let dt = self.delta_tilde();
        let disc = dt * dt - 4.0 * self.det_sigma;
        if disc < -1e-12 * dt.abs().max(1.0).powi(2) {
            return Err(Error::Numerical(format!("negative PPT discriminant {disc:e}")));
        }
        let root = disc.max(0.0).sqrt();
        let plus2 = (dt + root) / 2.0;
        let minus2 = if plus2 > 0.0 { (self.det_sigma / plus2).max(0.0) } else { 0.0 };
        Ok((minus2.sqrt(), plus2.sqrt()))
    }

    /// (ν₋, ν₊) from Δ in place of Δ̃.
    pub fn symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let d = self.delta();
        let disc = d * d - 4.0 * self.det_sigma;
        if disc < -1e-12 * d.abs().max(1.0).powi(2) {
            return Err(Error::Numerical(format!("negative symplectic discriminant {disc:e}")));
        }
        let root = disc.max(0.0).sqrt();
        let plus2 = (d + root) / 2.0;
        let minus2 = if plus2 > 0.0 { (self.det_sigma / plus2).max(0.0) } else { 0.0 };
        Ok((minus2.sqrt(), plus2.sqrt()))
    }
}

/// Assembles the 4×4 CM of a standard form.
pub fn standard_form_to_cm(sf: &StandardForm) -> CovarianceMatrix {
    sf.cm_unchecked()
}

fn require_two_mode(cm: &CovarianceMatrix) -> Result<()> {
    if cm.modes() != 2 {
        return Err(invalid(format!("expected a two-mode CM, got {} modes", cm.modes())));
    }
    Ok(())
}

/// ps − qr with error-free products.
fn det2(p: f64, q: f64, r: f64, s: f64) -> f64 {
    let ps = p * s;
    let qr = q * r;
    (ps - qr) + (p.mul_add(s, -ps) - q.mul_add(r, -qr))
}

fn block_det(m: &DMatrix<f64>, i: usize, j: usize) -> f64 {
    det2(m[(i, j)], m[(i, j + 1)], m[(i + 1, j)], m[(i + 1, j + 1)])
}

/// Determinants of σ and its 2×2 blocks. When x and p decouple, Det σ is
/// the product of the position and momentum determinants.
pub fn invariants(cm: &CovarianceMatrix) -> Result<TwoModeInvariants> {
    require_two_mode(cm)?;
    let m = cm.matrix();
    let decoupled = [(0, 1), (0, 3), (1, 2), (2, 3)].iter().all(|&(i, j)| m[(i, j)] == 0.0);
    let det_sigma = if decoupled {
        det2(m[(0, 0)], m[(0, 2)], m[(2, 0)], m[(2, 2)]) * det2(m[(1, 1)], m[(1, 3)], m[(3, 1)], m[(3, 3)])
    } else {
        cm.determinant()
    };
    Ok(TwoModeInvariants {
        det_sigma,
        det_alpha: block_det(m, 0, 0),
        det_beta: block_det(m, 2, 2),
        det_gamma: block_det(m, 0, 2),
    })
}

/// Partial transposition: p₂ → −p₂.
pub fn mirror_reflect(cm: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    require_two_mode(cm)?;
    let p = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[1.0, 1.0, 1.0, -1.0]));
    CovarianceMatrix::new(&p * cm.matrix() * &p)
}

fn require_physical(cm: &CovarianceMatrix) -> Result<()> {
    require_two_mode(cm)?;
    if !check_physical(cm) {
        return Err(domain("covariance matrix violates the uncertainty principle"));
    }
    Ok(())
}

/// (ν̃₋, ν̃₊) of the partially transposed CM.
pub fn ppt_symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<(f64, f64)> {
    require_physical(cm)?;
    invariants(cm)?.ppt_eigenvalues()
}

/// E_N = max(0, −ln 2ν̃₋).
pub fn log_negativity(cm: &CovarianceMatrix) -> Result<f64> {
    let (nm, _) = ppt_symplectic_eigenvalues(cm)?;
    Ok((-(2.0 * nm).ln()).max(0.0))
}

/// ν̃₋ ≥ ½ − 1e-12.
pub fn is_separable(cm: &CovarianceMatrix) -> Result<bool> {
    let (nm, _) = ppt_symplectic_eigenvalues(cm)?;
    Ok(nm >= 0.5 - 1e-12)
}

/// I = S(α) + S(β) − S(σ) in nats.
pub fn mutual_information(cm: &CovarianceMatrix) -> Result<f64> {
    require_physical(cm)?;
    let sa = von_neumann_entropy(&cm.reduced(0)?)?;
    let sb = von_neumann_entropy(&cm.reduced(1)?)?;
    Ok(sa + sb - von_neumann_entropy(cm)?)
}

/// F = 1/(1 + 2ν̃₋).
pub fn teleportation_fidelity(cm: &CovarianceMatrix) -> Result<f64> {
    let (nm, _) = ppt_symplectic_eigenvalues(cm)?;
    Ok(1.0 / (1.0 + 2.0 * nm))
}

/// 2u = a + b − √((a−b)² + 4c²) with c the larger correlation in modulus.
pub fn smallest_eigenvalue_u(sf: &StandardForm) -> f64 {
    let c = sf.c1.abs().max(sf.c2.abs());
    0.5 * (sf.a + sf.b - ((sf.a - sf.b).powi(2) + 4.0 * c * c).sqrt())
}

/// Polynomial coefficients in k = e^{−γt} of the evolved invariants and of
/// the separability quartic u k⁴ + v k³ + w k² + y k + z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    pub sigma: [f64; 5],
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub gamma2: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub y: f64,
    pub z: f64,
}

impl CoefficientSet {
    fn poly(c: &[f64], k: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, v| acc * k + v)
    }

    /// Invariants at k.
    pub fn invariants_at(&self, k: f64) -> TwoModeInvariants {
        TwoModeInvariants {
            det_sigma: Self::poly(&self.sigma, k),
            det_alpha: Self::poly(&self.alpha, k),
            det_beta: Self::poly(&self.beta, k),
            det_gamma: self.gamma2 * k * k,
        }
    }

    /// Ascending coefficients [z, y, w, v, u].
    pub fn quartic(&self) -> [f64; 5] {
        [self.z, self.y, self.w, self.v, self.u]
    }
}

/// Equal couplings, and bath 1 unsqueezed or with φ₁∞ = 0.
fn coefficient_path_available(ch: &ChannelSpec) -> bool {
    ch.modes() == 2 && ch.equal_couplings().is_some() && {
        let b1 = ch.baths()[0];
        b1.r_inf() == 0.0 || b1.phi_inf() == 0.0
    }
}

/// Closed-form coefficients for a standard-form input.
///
/// Requires γ₁ = γ₂ and a reference bath 1 with φ₁∞ = 0 (or r₁∞ = 0).
pub fn coefficient_set(sf: &StandardForm, ch: &ChannelSpec) -> Result<CoefficientSet> {
    if ch.modes() != 2 {
        return Err(invalid("two-mode coefficients need a two-bath channel"));
    }
    if !coefficient_path_available(ch) {
        return Err(invalid("coefficient path needs equal couplings and φ₁∞ = 0"));
    }
    let (b1, b2) = (ch.baths()[0], ch.baths()[1]);
    let (a, b, c1, c2) = (sf.a, sf.b, sf.c1, sf.c2);
    let (m1, m2) = (b1.mu_inf(), b2.mu_inf());
    let (ch1, ch2) = ((2.0 * b1.r_inf()).cosh(), (2.0 * b2.r_inf()).cosh());
    let (sh1, sh2) = (-(2.0 * b1.r_inf()).sinh(), -(2.0 * b2.r_inf()).sinh());
    let cos2 = (2.0 * b2.phi_inf()).cos();
    let (m1s, m2s) = (m1 * m1, m2 * m2);
    let p = c1 * c1 + c2 * c2;
    let q = c1 * c1 - c2 * c2;
    let m12 = m1 * m2;

    let s4 = a * a * b * b + a * a / (4.0 * m2s) + b * b / (4.0 * m1s)
        - a * a * b * ch2 / m2
        - a * b * b * ch1 / m1
        + a * b * ch1 * ch2 / m12
        - a * ch1 / (4.0 * m1 * m2s)
        - b * ch2 / (4.0 * m1s * m2)
        + p * (a * ch2 / (2.0 * m2) + b * ch1 / (2.0 * m1) - ch1 * ch2 / (4.0 * m12) - sh1 * sh2 * cos2 / (4.0 * m12) - a * b)
        + q * (a * sh2 * cos2 / (2.0 * m2) + b * sh1 / (2.0 * m1) - sh1 * ch2 / (4.0 * m12) - ch1 * sh2 * cos2 / (4.0 * m12))
        + c1 * c1 * c2 * c2
        + 1.0 / (16.0 * m1s * m2s);
    let s3 = -2.0 * a * a / (4.0 * m2s) - 2.0 * b * b / (4.0 * m1s)
        + a * a * b * ch2 / m2
        + a * b * b * ch1 / m1
        - 2.0 * a * b * ch1 * ch2 / m12
        + 3.0 * a * ch1 / (4.0 * m1 * m2s)
        + 3.0 * b * ch2 / (4.0 * m1s * m2)
        - q * (a * sh2 * cos2 / (2.0 * m2) + b * sh1 / (2.0 * m1)
            - 2.0 * sh1 * ch2 / (4.0 * m12)
            - 2.0 * ch1 * sh2 * cos2 / (4.0 * m12))
        - p * (a * ch2 / (2.0 * m2) + b * ch1 / (2.0 * m1)
            - 2.0 * ch1 * ch2 / (4.0 * m12)
            - 2.0 * sh1 * sh2 * cos2 / (4.0 * m12))
        - 1.0 / (4.0 * m1s * m2s);
    let s2 = a * a / (4.0 * m2s) + b * b / (4.0 * m1s) + a * b * ch1 * ch2 / m12
        - 3.0 * a * ch1 / (4.0 * m1 * m2s)
        - 3.0 * b * ch2 / (4.0 * m1s * m2)
        - p * (ch1 * ch2 / (4.0 * m12) + sh1 * sh2 * cos2 / (4.0 * m12))
        - q * (sh1 * ch2 / (4.0 * m12) + ch1 * sh2 * cos2 / (4.0 * m12))
        + 6.0 / (16.0 * m1s * m2s);
    let s1 = a * ch1 / (4.0 * m1 * m2s) + b * ch2 / (4.0 * m1s * m2) - 1.0 / (4.0 * m1s * m2s);
    let s0 = 1.0 / (16.0 * m1s * m2s);

    let alpha = [1.0 / (4.0 * m1s), a * ch1 / m1 - 2.0 / (4.0 * m1s), a * a - a * ch1 / m1 + 1.0 / (4.0 * m1s)];
    let beta = [1.0 / (4.0 * m2s), b * ch2 / m2 - 2.0 / (4.0 * m2s), b * b - b * ch2 / m2 + 1.0 / (4.0 * m2s)];
    let gamma2 = c1 * c2;

    Ok(CoefficientSet {
        sigma: [s0, s1, s2, s3, s4],
        alpha,
        beta,
        gamma2,
        u: 4.0 * s4,
        v: 4.0 * s3,
        w: 4.0 * s2 - alpha[2] - beta[2] + 2.0 * gamma2,
        y: 4.0 * s1 - alpha[1] - beta[1],
        z: 4.0 * s0 - alpha[0] - beta[0] + 0.25,
    })
}

/// Evolved invariants and whether they came from the coefficient polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedInvariants {
    pub invariants: TwoModeInvariants,
    pub via_coefficients: bool,
}

fn evolve_standard_form(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> Result<CovarianceMatrix> {
    if ch.modes() != 2 {
        return Err(invalid("two-mode evolution needs a two-bath channel"));
    }
    let s0 = GaussianState::centered(standard_form_to_cm(sf))?;
    Ok(evolve_moments(&s0, ch, t)?.cm().clone())
}

/// Det σ, Det α, Det β, Det γ at time t; polynomial path when available.
pub fn evolved_invariants(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> Result<EvolvedInvariants> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid(format!("time must be finite and non-negative, got {t}")));
    }
    if coefficient_path_available(ch) {
        let k = ch.baths()[0].damping(t);
        let cs = coefficient_set(sf, ch)?;
        return Ok(EvolvedInvariants { invariants: cs.invariants_at(k), via_coefficients: true });
    }
    let cm = evolve_standard_form(sf, ch, t)?;
    Ok(EvolvedInvariants { invariants: invariants(&cm)?, via_coefficients: false })
}

/// ν̃₋ of the evolved state by the direct CM path.
pub fn evolved_nu_minus(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> Result<f64> {
    let cm = evolve_standard_form(sf, ch, t)?;
    Ok(invariants(&cm)?.ppt_eigenvalues()?.0)
}

/// Separability time and, on the quartic path, the unpolished root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementTime {
    /// Time with |ν̃₋(t) − ½| < 1e-9.
    pub t: f64,
    /// k_ent from the quartic, when the coefficient path applied.
    pub k_quartic: Option<f64>,
    /// −ln(k_ent)/γ before polishing.
    pub t_quartic: Option<f64>,
}

fn bisect<F: Fn(f64) -> Result<f64>>(g: &F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut glo = g(lo)?;
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    let (gl, gh) = (g(lo)?.abs(), g(hi)?.abs());
    Ok(if gl <= gh { lo } else { hi })
}

/// Time after which an entangled input becomes separable; `None` if it
/// stays entangled for all times.
///
/// Equal couplings with an admissible bath orientation use the quartic in
/// k; otherwise the first sign change of ν̃₋(t) − ½ is bracketed on a grid.
/// Both paths finish with bisection on ν̃₋(t) − ½.
pub fn entanglement_time(sf: &StandardForm, ch: &ChannelSpec) -> Result<Option<EntanglementTime>> {
    if ch.modes() != 2 {
        return Err(invalid("entanglement time needs a two-bath channel"));
    }
    if is_separable(&standard_form_to_cm(sf))? {
        return Err(invalid("initial state is separable"));
    }
    let g = |t: f64| -> Result<f64> { Ok(evolved_nu_minus(sf, ch, t)? - 0.5) };
    let horizon = 50.0 / ch.min_gamma();

    if coefficient_path_available(ch) {
        let gamma = ch.baths()[0].gamma();
        let cs = coefficient_set(sf, ch)?;
        let roots = polynomial_real_roots(&cs.quartic())?;
        let k = roots.into_iter().filter(|&k| k > 1e-14 && k < 1.0).fold(None, |m: Option<f64>, k| {
            Some(m.map_or(k, |m| m.max(k)))
        });
        let Some(k) = k else {
            return if g(horizon)? < 1e-9 {
                Ok(None)
            } else {
                Err(Error::Numerical("quartic has no root in (0, 1) but the state separates".into()))
            };
        };
        let tq = -k.ln() / gamma;
        let (lo, hi) = bracket_around(&g, tq, horizon)?;
        let t = bisect(&g, lo, hi)?;
        return Ok(Some(EntanglementTime { t, k_quartic: Some(k), t_quartic: Some(tq) }));
    }

    let n = 4000;
    let mut prev_t = 0.0;
    for i in 1..=n {
        let t = horizon * (i as f64 / n as f64).powi(3);
        if g(t)? >= 0.0 {
            let t = bisect(&g, prev_t, t)?;
            return Ok(Some(EntanglementTime { t, k_quartic: None, t_quartic: None }));
        }
        prev_t = t;
    }
    Ok(None)
}

fn bracket_around<F: Fn(f64) -> Result<f64>>(g: &F, t0: f64, horizon: f64) -> Result<(f64, f64)> {
    let mut delta = 1e-9 * t0.max(1e-6);
    for _ in 0..80 {
        let lo = (t0 - delta).max(0.0);
        let hi = (t0 + delta).min(horizon);
        if g(lo)? < 0.0 && g(hi)? >= 0.0 {
            return Ok((lo, hi));
        }
        delta *= 4.0;
    }
    Err(Error::Numerical("could not bracket the separability crossing".into()))
}

/// Closed-form t_ent for a squeezed thermal input in equal thermal baths of
/// global asymptotic purity μ∞ (per-mode purity √μ∞):
/// γt = ln(1 + √μ∞(1 − e^{−2r}/√μ)/(1 − √μ∞)). `None` when μ∞ = 1.
pub fn entanglement_time_squeezed_thermal(p: &SqueezedThermalParams, mu_inf_global: f64, gamma: f64) -> Result<Option<f64>> {
    let sf = p.standard_form();
    let (lo, hi) = entanglement_time_bounds(&sf, mu_inf_global, gamma)?;
    debug_assert!((lo - hi).abs() <= 1e-12 * hi.abs().max(1.0) || lo.is_nan());
    let m = mu_inf_global.sqrt();
    if m >= 1.0 {
        return Ok(None);
    }
    let x = m * (1.0 - (-2.0 * p.r).exp() / p.mu.sqrt()) / (1.0 - m);
    Ok(Some(x.ln_1p() / gamma))
}

/// Bounds on γt_ent for symmetric inputs in equal thermal baths of global
/// asymptotic purity μ∞, from |c₁| and |c₂|.
pub fn entanglement_time_bounds(sf: &StandardForm, mu_inf_global: f64, gamma: f64) -> Result<(f64, f64)> {
    if !sf.is_symmetric() {
        return Err(invalid("bounds apply to symmetric standard forms"));
    }
    if !(mu_inf_global > 0.0 && mu_inf_global < 1.0) || !(gamma > 0.0) {
        return Err(invalid("bounds need 0 < μ∞ < 1 and γ > 0"));
    }
    let m = mu_inf_global.sqrt();
    let (cs, cl) = {
        let (x, y) = (sf.c1.abs(), sf.c2.abs());
        (x.min(y), x.max(y))
    };
    let f = |c: f64| (m * (2.0 * c - 2.0 * sf.a + 1.0) / (1.0 - m)).ln_1p() / gamma;
    Ok((f(cs), f(cl)))
}

/// τ(t) for a standard-form input in thermal baths (couplings may differ).
pub fn two_mode_tau_thermal_t(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> Result<f64> {
    if ch.modes() != 2 || !ch.baths().iter().all(BathParams::is_thermal) {
        return Err(invalid("thermal-bath nonclassical depth needs two unsqueezed baths"));
    }
    let (b1, b2) = (ch.baths()[0], ch.baths()[1]);
    let (k1, k2) = (b1.damping(t), b2.damping(t));
    let c = sf.c1.abs().max(sf.c2.abs());
    let big_a = sf.a * k1 + (1.0 - k1) / (2.0 * b1.mu_inf());
    let big_b = sf.b * k2 + (1.0 - k2) / (2.0 * b2.mu_inf());
    let off = c * (k1 * k2).sqrt();
    let u = 0.5 * (big_a + big_b - ((big_a - big_b).powi(2) + 4.0 * off * off).sqrt());
    Ok((0.5 - u).max(0.0))
}

/// τ(t) for a squeezed thermal input in squeezed baths with φ₁∞ = φ₂∞ = 0
/// and equal couplings.
pub fn two_mode_tau_squeezed_t(p: &SqueezedThermalParams, ch: &ChannelSpec, t: f64) -> Result<f64> {
    let Some(gamma) = (ch.modes() == 2).then(|| ch.equal_couplings()).flatten() else {
        return Err(invalid("squeezed-bath nonclassical depth needs two baths with equal couplings"));
    };
    if ch.baths().iter().any(|b| b.r_inf() != 0.0 && b.phi_inf() != 0.0) {
        return Err(invalid("squeezed-bath nonclassical depth needs φ∞ = 0 on squeezed baths"));
    }
    let k = (-gamma * t).exp();
    let pv: Vec<f64> = ch.baths().iter().map(|b| (-2.0 * b.r_inf()).exp() / (2.0 * b.mu_inf())).collect();
    let a = (2.0 * p.r).cosh() / (2.0 * p.mu.sqrt());
    let c2 = (2.0 * p.r).sinh().powi(2) / p.mu;
    let tau = 0.5 - a * k - 0.5 * (pv[0] + pv[1]) * (1.0 - k)
        + 0.5 * (((pv[0] - pv[1]) * (1.0 - k)).powi(2) + c2 * k * k).sqrt();
    Ok(tau.max(0.0))
}

/// Equal baths (per-mode purity √μ∞, squeezing r∞, φ∞ = 0):
/// τ = [1 − e^{−2r}k/√μ − e^{−2r∞}(1−k)/√μ∞]/2, clamped at 0.
pub fn two_mode_tau_equal_baths(p: &SqueezedThermalParams, mu_inf_global: f64, r_inf: f64, gamma: f64, t: f64) -> f64 {
    let k = (-gamma * t).exp();
    let tau = 1.0 - (-2.0 * p.r).exp() * k / p.mu.sqrt() - (-2.0 * r_inf).exp() * (1.0 - k) / mu_inf_global.sqrt();
    (0.5 * tau).max(0.0)
}

/// Closed form where one applies, CM path otherwise.
pub fn two_mode_tau_t(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> Result<f64> {
    if ch.modes() == 2 && ch.baths().iter().all(BathParams::is_thermal) {
        return two_mode_tau_thermal_t(sf, ch, t);
    }
    let cm = evolve_standard_form(sf, ch, t)?;
    nonclassical_depth_gaussian(&cm)
}

/// F(t) = 1/(1 + e^{−2r−γt} + (1 − e^{−γt})/μ∞) for a two-mode squeezed
/// vacuum in equal thermal baths of per-mode purity μ∞.
pub fn fidelity_t(r: f64, ch: &ChannelSpec, t: f64) -> Result<f64> {
    if ch.modes() != 2 || ch.baths()[0] != ch.baths()[1] || !ch.baths()[0].is_thermal() {
        return Err(invalid("closed-form fidelity needs two identical thermal baths"));
    }
    if !(r >= 0.0 && r.is_finite()) || !(t >= 0.0 && t.is_finite()) {
        return Err(invalid("fidelity needs finite r ≥ 0 and t ≥ 0"));
    }
    let b = ch.baths()[0];
    let k = b.damping(t);
    Ok(1.0 / (1.0 + (-2.0 * r).exp() * k + (1.0 - k) / b.mu_inf()))
}
