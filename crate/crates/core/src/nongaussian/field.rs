// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};

use crate::error::{invalid, Error, Result};
use crate::numerics::{binomial, integrate_1d, integrate_phase_space, laguerre, QuadratureResult, QuadratureSpec};
use crate::phase_space::GaussianState;

#[derive(Debug, Clone)]
pub(crate) struct CatTerms {
    /// σ(t)⁻¹.
    pub p: Matrix2<f64>,
    /// Real peak centres ±m.
    pub m: Vector2<f64>,
    /// Interference centre −i·v.
    pub v: Vector2<f64>,
    pub theta: f64,
    pub x0_sqr: f64,
    /// 1/(4π N √Det σ(t)).
    pub prefactor: f64,
}

impl CatTerms {
    fn eval(&self, x: Vector2<f64>) -> f64 {
        let q = |d: Vector2<f64>| d.dot(&(self.p * d));
        let peaks = (-0.5 * q(x - self.m)).exp() + (-0.5 * q(x + self.m)).exp();
        let pv = self.p * self.v;
        let expo = -self.x0_sqr - 0.5 * q(x) + 0.5 * self.v.dot(&pv);
        let fringe = 2.0 * expo.exp() * (self.theta - x.dot(&pv)).cos();
        self.prefactor * (peaks + fringe)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct FockTerms {
    pub n: usize,
    pub zeta: f64,
    pub eta: f64,
    pub k: f64,
}

impl FockTerms {
    fn eval_radial(&self, rho2: f64) -> f64 {
        let (n, zeta, eta) = (self.n, self.zeta, self.eta);
        let a = 2.0 * self.k * rho2 / zeta;
        let poly = if eta.abs() > 1e-3 {
            eta.powi(n as i32) * laguerre(n, -a / eta)
        } else {
            let mut fact = 1.0;
            (0..=n)
                .map(|m| {
                    if m > 0 {
                        fact *= m as f64;
                    }
                    binomial(n, m) * a.powi(m as i32) * eta.powi((n - m) as i32) / fact
                })
                .sum()
        };
        poly * (-rho2 / zeta).exp() / (PI * zeta.powi(n as i32 + 1))
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Gaussian { mean: Vector2<f64>, inv: Matrix2<f64>, norm: f64 },
    Cat(CatTerms),
    Fock(FockTerms),
}

/// Single-mode Wigner function with a rectangular integration domain.
#[derive(Debug, Clone)]
pub struct WignerField {
    kind: Kind,
    domain: [(f64, f64); 2],
}

impl WignerField {
    pub(crate) fn cat(terms: CatTerms, half_widths: [f64; 2]) -> Self {
        Self { kind: Kind::Cat(terms), domain: [(-half_widths[0], half_widths[0]), (-half_widths[1], half_widths[1])] }
    }

    pub(crate) fn fock(terms: FockTerms, radius: f64) -> Self {
        Self { kind: Kind::Fock(terms), domain: [(-radius, radius), (-radius, radius)] }
    }

    /// Wigner function of a single-mode Gaussian state.
    pub fn gaussian(state: &GaussianState) -> Result<Self> {
        if state.modes() != 1 {
            return Err(invalid("Wigner fields are single-mode"));
        }
        let cm = state.cm().matrix();
        let sigma = Matrix2::new(cm[(0, 0)], cm[(0, 1)], cm[(1, 0)], cm[(1, 1)]);
        let det = sigma.determinant();
        let inv = sigma.try_inverse().ok_or_else(|| Error::Numerical("singular CM".into()))?;
        let mean = Vector2::new(state.mean().as_slice()[0], state.mean().as_slice()[1]);
        let std = sigma.symmetric_eigenvalues().max().sqrt();
        let hw = |i: usize| mean[i].abs() + 6.0 * std;
        Ok(Self {
            kind: Kind::Gaussian { mean, inv, norm: 1.0 / (2.0 * PI * det.sqrt()) },
            domain: [(-hw(0), hw(0)), (-hw(1), hw(1))],
        })
    }

    /// W(x, p).
    pub fn eval(&self, x: f64, p: f64) -> f64 {
        let v = Vector2::new(x, p);
        match &self.kind {
            Kind::Gaussian { mean, inv, norm } => {
                let d = v - mean;
                norm * (-0.5 * d.dot(&(inv * d))).exp()
            }
            Kind::Cat(c) => c.eval(v),
            Kind::Fock(f) => f.eval_radial(x * x + p * p),
        }
    }

    /// Integration box per axis.
    pub fn domain(&self) -> [(f64, f64); 2] {
        self.domain
    }

    /// Rotationally symmetric about the origin.
    pub fn is_radial(&self) -> bool {
        matches!(self.kind, Kind::Fock(_))
    }

    fn integrate<G: Fn(f64) -> f64 + Sync>(&self, g: G, tolerance: f64) -> Result<QuadratureResult> {
        if let Kind::Fock(f) = &self.kind {
            let r = self.domain[0].1;
            let res = integrate_1d(|rho| 2.0 * PI * rho * g(f.eval_radial(rho * rho)), 0.0, r, tolerance)?;
            return Ok(res);
        }
        let spec = QuadratureSpec::new(
            vec![self.domain[0].0, self.domain[1].0],
            vec![self.domain[0].1, self.domain[1].1],
            tolerance,
        )?;
        integrate_phase_space(|x: &[f64]| g(self.eval(x[0], x[1])), &spec)
    }

    /// ∫W over the domain.
    pub fn integral(&self, tolerance: f64) -> Result<QuadratureResult> {
        self.integrate(|w| w, tolerance)
    }

    /// 2π∫W² over the domain.
    pub fn purity(&self, tolerance: f64) -> Result<QuadratureResult> {
        let r = self.integrate(|w| w * w, tolerance / (2.0 * PI))?;
        Ok(QuadratureResult { value: 2.0 * PI * r.value, error: 2.0 * PI * r.error, cells: r.cells })
    }
}

/// ξ with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativePartResult {
    pub xi: f64,
    pub est_error: f64,
}

/// ξ = 2∫max(−W, 0) over the field's domain.
pub fn negative_part(w: &WignerField, tolerance: f64) -> Result<NegativePartResult> {
    if !(tolerance > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    if let Kind::Gaussian { .. } = w.kind {
        return Ok(NegativePartResult { xi: 0.0, est_error: 0.0 });
    }
    let r = w.integrate(|v| (-v).max(0.0), 0.5 * tolerance)?;
    Ok(NegativePartResult { xi: 2.0 * r.value, est_error: 2.0 * r.error })
}

/// First time in [lo, hi] at which ξ(t) falls to `threshold`, by bisection
/// to `time_tol`.
pub fn positivity_time<F>(field_at: F, lo: f64, hi: f64, threshold: f64, tolerance: f64, time_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<WignerField>,
{
    let xi = |t: f64| -> Result<f64> { Ok(negative_part(&field_at(t)?, tolerance)?.xi) };
    if !(lo < hi) {
        return Err(invalid("empty time bracket"));
    }
    if xi(lo)? <= threshold {
        return Err(invalid(format!("ξ is already below threshold at t = {lo}")));
    }
    if xi(hi)? > threshold {
        return Err(Error::Numerical(format!("ξ is still above threshold at t = {hi}")));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > time_tol {
        let m = 0.5 * (a + b);
        if xi(m)? > threshold {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}
