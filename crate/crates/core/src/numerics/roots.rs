// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Real roots of low-degree real polynomials via companion-matrix eigenvalues.

use nalgebra::DMatrix;

use crate::error::{invalid, Result};

const IMAG_CUTOFF: f64 = 1e-10;
const NEAR_REAL_CUTOFF: f64 = 1e-4;
const RESIDUAL_TOL: f64 = 1e-9;

/// p(x), p'(x), p''(x) for ascending coefficients.
fn eval3(c: &[f64], x: f64) -> (f64, f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    let mut ddp = 0.0;
    for &a in c.iter().rev() {
        ddp = ddp * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp, ddp)
}

/// Real roots of `c[0] + c[1]·x + … + c[d]·x^d`, ascending and deduplicated.
///
/// Leading coefficients below 1e-14·‖c‖ are dropped before the companion
/// matrix is formed. Eigenvalues with |Im| < 1e-10 are accepted directly;
/// eigenvalues whose imaginary part is small relative to their modulus are
/// treated as a split multiple root and polished on p′. Every returned
/// root satisfies |p(x)| < 1e-9·‖c‖·max(1, |x|)^d.
pub fn polynomial_real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(invalid("polynomial coefficients must be finite"));
    }
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(invalid("all-zero polynomial has no isolated roots"));
    }
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-14 * norm {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }

    let lead = c[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 0..deg {
        if i + 1 < deg {
            comp[(i + 1, i)] = 1.0;
        }
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let eig = comp.complex_eigenvalues();

    let residual_ok = |x: f64| {
        let (p, _, _) = eval3(&c, x);
        p.abs() < RESIDUAL_TOL * norm * x.abs().max(1.0).powi(deg as i32)
    };

    let mut roots = Vec::new();
    for z in eig.iter() {
        let scale = z.norm().max(1.0);
        if z.im.abs() < IMAG_CUTOFF {
            let x = newton_polish(&c, z.re, false);
            if residual_ok(x) {
                roots.push(x);
            }
        } else if z.im.abs() < NEAR_REAL_CUTOFF * scale {
            let x = newton_polish(&c, z.re, true);
            if residual_ok(x) {
                roots.push(x);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-7 * a.abs().max(1.0));
    Ok(roots)
}

// Newton on p (simple root) or on p′ (multiple root); a step is kept only
// if it does not increase the target residual.
fn newton_polish(c: &[f64], x0: f64, on_derivative: bool) -> f64 {
    let target = |x: f64| {
        let (p, dp, ddp) = eval3(c, x);
        if on_derivative { (dp, ddp) } else { (p, dp) }
    };
    let mut x = x0;
    let (mut g, mut dg) = target(x);
    for _ in 0..50 {
        if dg == 0.0 || g == 0.0 {
            break;
        }
        let nx = x - g / dg;
        let (ng, ndg) = target(nx);
        if ng.abs() >= g.abs() {
            break;
        }
        x = nx;
        g = ng;
        dg = ndg;
    }
    x
}
