// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive tensor-product Gauss–Legendre cubature on boxes of dimension 1–4.
//!
//! Each cell carries a one-level rule and the sum of the same rule on its
//! 2^d halves; their difference is the cell's error estimate and the finer
//! value is the cell's contribution. Cells with the largest estimate are
//! split until the summed estimate meets the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

/// Box, tolerance and refinement budget for [`integrate_phase_space`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    lower: Vec<f64>,
    upper: Vec<f64>,
    tolerance: f64,
    max_cells: usize,
    initial_divisions: usize,
    order: usize,
}

impl QuadratureSpec {
    /// Integration box `[lower, upper]` with absolute tolerance `tolerance`.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, tolerance: f64) -> Result<Self> {
        let d = lower.len();
        if d == 0 || d > 4 || upper.len() != d {
            return Err(invalid(format!(
                "quadrature dimension must be 1..=4 with matching bounds, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.iter().chain(&upper).any(|v| !v.is_finite()) {
            return Err(invalid("quadrature extents must be finite"));
        }
        if lower.iter().zip(&upper).any(|(a, b)| a >= b) {
            return Err(invalid("quadrature lower bound must be below upper bound"));
        }
        if !(tolerance > 0.0) {
            return Err(invalid("quadrature tolerance must be positive"));
        }
        let (initial_divisions, max_cells) = match d {
            1 => (8, 20_000),
            2 => (8, 400_000),
            3 => (4, 200_000),
            _ => (4, 100_000),
        };
        Ok(Self { lower, upper, tolerance, max_cells, initial_divisions, order: 6 })
    }

    /// Box `[−h_i, h_i]` on every axis.
    pub fn symmetric(half_widths: &[f64], tolerance: f64) -> Result<Self> {
        Self::new(half_widths.iter().map(|h| -h).collect(), half_widths.to_vec(), tolerance)
    }

    pub fn with_max_cells(mut self, max_cells: usize) -> Self {
        self.max_cells = max_cells.max(1);
        self
    }

    pub fn with_initial_divisions(mut self, divisions: usize) -> Self {
        self.initial_divisions = divisions.max(1);
        self
    }

    /// Gauss–Legendre points per axis per cell.
    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order.clamp(1, 32);
        self
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_cells(&self) -> usize {
        self.max_cells
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error: f64,
    pub cells: usize,
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 1..n {
                let kf = k as f64;
                let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            x = 0.0;
            dp = 1.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

struct Rule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn apply<F: Fn(&[f64]) -> f64>(&self, f: &F, lo: &[f64], hi: &[f64]) -> f64 {
        let d = self.dim;
        let q = self.nodes.len();
        let mut half = [0.0; 4];
        let mut mid = [0.0; 4];
        let mut vol = 1.0;
        for a in 0..d {
            half[a] = 0.5 * (hi[a] - lo[a]);
            mid[a] = 0.5 * (hi[a] + lo[a]);
            vol *= half[a];
        }
        let mut idx = [0usize; 4];
        let mut x = [0.0; 4];
        let mut sum = 0.0;
        loop {
            let mut w = 1.0;
            for a in 0..d {
                x[a] = mid[a] + half[a] * self.nodes[idx[a]];
                w *= self.weights[idx[a]];
            }
            sum += w * f(&x[..d]);
            let mut a = 0;
            loop {
                idx[a] += 1;
                if idx[a] < q {
                    break;
                }
                idx[a] = 0;
                a += 1;
                if a == d {
                    return sum * vol;
                }
            }
        }
    }

    fn child_bounds(&self, lo: &[f64], hi: &[f64], c: usize) -> (Vec<f64>, Vec<f64>) {
        let mut clo = lo.to_vec();
        let mut chi = hi.to_vec();
        for a in 0..self.dim {
            let m = 0.5 * (lo[a] + hi[a]);
            if c >> a & 1 == 0 {
                chi[a] = m;
            } else {
                clo[a] = m;
            }
        }
        (clo, chi)
    }

    fn cell<F: Fn(&[f64]) -> f64>(&self, f: &F, lo: Vec<f64>, hi: Vec<f64>, coarse: f64) -> Cell {
        let parts: Vec<f64> = (0..1usize << self.dim)
            .map(|c| {
                let (clo, chi) = self.child_bounds(&lo, &hi, c);
                self.apply(f, &clo, &chi)
            })
            .collect();
        let value: f64 = parts.iter().sum();
        let err = (value - coarse).abs();
        Cell { lo, hi, parts, value, err, seq: 0 }
    }
}

struct Cell {
    lo: Vec<f64>,
    hi: Vec<f64>,
    parts: Vec<f64>,
    value: f64,
    err: f64,
    seq: usize,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Integrates `f` over the box of `spec`.
///
/// Returns [`Error::Unconverged`] with the best estimate when the cell
/// budget is exhausted, and [`Error::Numerical`] if `f` returns a
/// non-finite value.
pub fn integrate_phase_space<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = spec.dim();
    let (nodes, weights) = gauss_legendre(spec.order);
    let rule = Rule { dim: d, nodes, weights };
    let m = spec.initial_divisions;

    let n0 = m.pow(d as u32);
    let mut cells: Vec<Cell> = (0..n0)
        .into_par_iter()
        .map(|flat| {
            let mut lo = vec![0.0; d];
            let mut hi = vec![0.0; d];
            let mut rem = flat;
            for a in 0..d {
                let i = rem % m;
                rem /= m;
                let w = (spec.upper[a] - spec.lower[a]) / m as f64;
                lo[a] = spec.lower[a] + w * i as f64;
                hi[a] = if i + 1 == m { spec.upper[a] } else { spec.lower[a] + w * (i + 1) as f64 };
            }
            let coarse = rule.apply(&f, &lo, &hi);
            rule.cell(&f, lo, hi, coarse)
        })
        .collect();
    for (i, c) in cells.iter_mut().enumerate() {
        c.seq = i;
    }
    let mut seq = cells.len();
    if cells.iter().any(|c| !c.value.is_finite()) {
        return Err(Error::Numerical("integrand is not finite on the quadrature box".into()));
    }
    let mut heap: BinaryHeap<Cell> = cells.into_iter().collect();
    let mut running = heap.iter().map(|c| c.err).sum::<f64>();

    loop {
        if running <= spec.tolerance || heap.len() >= spec.max_cells {
            let (value, error) = totals(&heap);
            if error <= spec.tolerance {
                return Ok(QuadratureResult { value, error, cells: heap.len() });
            }
            if heap.len() >= spec.max_cells {
                return Err(Error::Unconverged { estimate: value, error, cells: heap.len() });
            }
            running = error;
        }
        let room = (spec.max_cells - heap.len()) / ((1 << d) - 1).max(1);
        let batch = (heap.len() / 32).clamp(1, 256).min(room.max(1));
        let mut parents = Vec::with_capacity(batch);
        let mut shed = 0.0;
        while parents.len() < batch {
            match heap.pop() {
                Some(c) => {
                    shed += c.err;
                    parents.push(c);
                    if running - shed <= 0.5 * spec.tolerance {
                        break;
                    }
                }
                None => break,
            }
        }
        let children: Vec<Cell> = parents
            .par_iter()
            .flat_map_iter(|p| {
                (0..1usize << d).map(|c| {
                    let (lo, hi) = rule.child_bounds(&p.lo, &p.hi, c);
                    rule.cell(&f, lo, hi, p.parts[c])
                })
            })
            .collect();
        if children.iter().any(|c| !c.value.is_finite()) {
            return Err(Error::Numerical("integrand is not finite on the quadrature box".into()));
        }
        running -= shed;
        for mut c in children {
            running += c.err;
            c.seq = seq;
            seq += 1;
            heap.push(c);
        }
    }
}

fn totals(heap: &BinaryHeap<Cell>) -> (f64, f64) {
    let mut v = 0.0;
    let mut comp = 0.0;
    let mut e = 0.0;
    let mut cells: Vec<&Cell> = heap.iter().collect();
    cells.sort_unstable_by_key(|c| c.seq);
    for c in cells {
        let y = c.value - comp;
        let t = v + y;
        comp = (t - v) - y;
        v = t;
        e += c.err;
    }
    (v, e)
}

/// One-dimensional convenience wrapper over [`integrate_phase_space`].
pub fn integrate_1d<F>(f: F, a: f64, b: f64, tolerance: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let spec = QuadratureSpec::new(vec![a], vec![b], tolerance)?.with_order(10);
    integrate_phase_space(|x: &[f64]| f(x[0]), &spec)
}
