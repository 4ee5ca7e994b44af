// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Orthogonal polynomials and the modified Bessel function I₀.

use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 15.0;

/// Laguerre polynomial Lₙ(x) by the three-term recurrence.
pub fn laguerre(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial Pₙ(x) by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * k);
        sum += term;
        if term < 1e-17 * sum {
            return sum;
        }
    }
}

// Σ aₖ/xᵏ of the large-argument expansion, x ≥ SERIES_LIMIT.
fn i0_asymptotic_sum(x: f64) -> f64 {
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        let next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if next.abs() >= term.abs() {
            return sum;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            return sum;
        }
    }
}

/// Modified Bessel function of the first kind, order zero.
///
/// Overflows to `inf` beyond |x| ≈ 713; use [`bessel_i0_scaled`] or
/// [`ln_bessel_i0`] there.
pub fn bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        i0_series(ax)
    } else {
        ax.exp() / (2.0 * PI * ax).sqrt() * i0_asymptotic_sum(ax)
    }
}

/// e^{−|x|}·I₀(x).
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        (-ax).exp() * i0_series(ax)
    } else {
        i0_asymptotic_sum(ax) / (2.0 * PI * ax).sqrt()
    }
}

/// ln I₀(x), finite for every finite x.
pub fn ln_bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        i0_series(ax).ln()
    } else {
        ax + i0_asymptotic_sum(ax).ln() - 0.5 * (2.0 * PI * ax).ln()
    }
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc.round()
}
