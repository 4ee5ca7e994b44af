// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Truncated Fock-basis integration of the Gaussian-bath master equation
//!
//! ```text
//! ϱ̇ = γ/2 { N L[a†]ϱ + (N+1) L[a]ϱ − M* D[a]ϱ − M D[a†]ϱ },
//! L[o]ϱ = 2oϱo† − o†oϱ − ϱo†o,  D[o]ϱ = 2oϱo − ooϱ − ϱoo,
//! ```
//!
//! with fixed-step classical Runge–Kutta. Ladder operators act elementwise
//! on the row-major matrix using the truncated a, a† so the trace is
//! conserved exactly by the generator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::channels::{nm_from_bath, BathParams};
use crate::error::{invalid, Error, Result};

/// Density matrix on the Fock basis {0, …, dim−1}, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDensityMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl TruncatedDensityMatrix {
    /// Validates hermiticity (1e-12), unit trace (1e-8) and positivity (−1e-10).
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(invalid(format!("density matrix needs {dim}×{dim} entries, got {}", data.len())));
        }
        let rho = Self { dim, data };
        if rho.hermiticity_defect() > 1e-12 {
            return Err(invalid("density matrix is not Hermitian"));
        }
        if (rho.trace() - 1.0).abs() > 1e-8 {
            return Err(invalid(format!("density matrix trace {} is not 1", rho.trace())));
        }
        if rho.min_eigenvalue() < -1e-10 {
            return Err(invalid("density matrix is not positive semidefinite"));
        }
        Ok(rho)
    }

    /// |n⟩⟨n| in a basis of size `dim`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(invalid(format!("Fock level {n} outside basis of size {dim}")));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        data[n * dim + n] = Complex64::new(1.0, 0.0);
        Ok(Self { dim, data })
    }

    /// |ψ⟩⟨ψ| for the normalized amplitudes padded with zeros to `dim`.
    pub fn pure(amplitudes: &[Complex64], dim: usize) -> Result<Self> {
        if amplitudes.is_empty() || amplitudes.len() > dim {
            return Err(invalid("amplitude vector must be nonempty and fit in the basis"));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(invalid("amplitude vector has zero norm"));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, ai) in amplitudes.iter().enumerate() {
            for (j, aj) in amplitudes.iter().enumerate() {
                data[i * dim + j] = ai * aj.conj() / (norm * norm);
            }
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    /// Tr ϱ².
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// max |ϱᵢⱼ − ϱⱼᵢ*|.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                m = m.max((self.data[i * d + j] - self.data[j * d + i].conj()).norm());
            }
        }
        m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let d = self.dim;
        let herm = DMatrix::from_fn(d, d, |i, j| 0.5 * (self.data[i * d + j] + self.data[j * d + i].conj()));
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Population of the top ⌈dim/10⌉ levels.
    pub fn tail_mass(&self) -> f64 {
        let d = self.dim;
        let start = d - d.div_ceil(10);
        (start..d).map(|i| self.data[i * d + i].re).sum()
    }

    /// ⟨a†a⟩.
    pub fn mean_photon_number(&self) -> f64 {
        (0..self.dim).map(|i| i as f64 * self.data[i * self.dim + i].re).sum()
    }

    /// ⟨a⟩.
    pub fn expect_a(&self) -> Complex64 {
        let d = self.dim;
        (0..d - 1).map(|i| ((i + 1) as f64).sqrt() * self.data[(i + 1) * d + i]).sum()
    }

    /// ⟨a²⟩.
    pub fn expect_a2(&self) -> Complex64 {
        let d = self.dim;
        (0..d.saturating_sub(2))
            .map(|i| (((i + 1) * (i + 2)) as f64).sqrt() * self.data[(i + 2) * d + i])
            .sum()
    }
}

/// Basis size max(20, ⌈8(N + n + 1)⌉), raised until the thermal weight
/// (N/(N+1))^d beyond level d = dim − n − 1 is below 1e-10.
pub fn default_truncation(n_bath: f64, n_init: usize) -> usize {
    let base = 20usize.max((8.0 * (n_bath + n_init as f64 + 1.0)).ceil() as usize);
    if n_bath <= 0.0 {
        return base;
    }
    let q = n_bath / (n_bath + 1.0);
    let tail = (1e-10f64.ln() / q.ln()).ceil() as usize + n_init + 1;
    base.max(tail)
}

struct Generator {
    dim: usize,
    sq: Vec<f64>,
    n: f64,
    m: Complex64,
}

impl Generator {
    // d(ϱ)/d(γt)
    fn apply(&self, rho: &[Complex64], out: &mut [Complex64]) {
        let d = self.dim;
        let s = |k: usize| if k < self.sq.len() { self.sq[k] } else { 0.0 };
        let at = |i: usize, j: usize| rho[i * d + j];
        let e = |i: usize| if i + 1 < d { (i + 1) as f64 } else { 0.0 };
        let (n, m) = (self.n, self.m);
        let mc = m.conj();
        for i in 0..d {
            for j in 0..d {
                let r = at(i, j);
                let mut la = -((i + j) as f64) * r;
                if i + 1 < d && j + 1 < d {
                    la += 2.0 * s(i + 1) * s(j + 1) * at(i + 1, j + 1);
                }
                let mut lad = -(e(i) + e(j)) * r;
                if i >= 1 && j >= 1 {
                    lad += 2.0 * s(i) * s(j) * at(i - 1, j - 1);
                }
                let mut da = Complex64::new(0.0, 0.0);
                if i + 1 < d && j >= 1 {
                    da += 2.0 * s(i + 1) * s(j) * at(i + 1, j - 1);
                }
                if i + 2 < d {
                    da -= s(i + 1) * s(i + 2) * at(i + 2, j);
                }
                if j >= 2 {
                    da -= s(j - 1) * s(j) * at(i, j - 2);
                }
                let mut dad = Complex64::new(0.0, 0.0);
                if i >= 1 && j + 1 < d {
                    dad += 2.0 * s(i) * s(j + 1) * at(i - 1, j + 1);
                }
                if i >= 2 {
                    dad -= s(i) * s(i - 1) * at(i - 2, j);
                }
                if j + 2 < d {
                    dad -= s(j + 2) * s(j + 1) * at(i, j + 2);
                }
                out[i * d + j] = 0.5 * (n * lad + (n + 1.0) * la - mc * da - m * dad);
            }
        }
    }
}

/// Evolves `rho0` to each time in `times` (ascending, ≥ 0) in one pass.
///
/// Step γΔt ≤ 10⁻³/(1+|M|). Fails with [`Error::Truncation`] when more than
/// 10⁻⁶ of the population sits in the top tenth of the basis at any output
/// time, and with [`Error::Numerical`] if the trace drifts by more than 10⁻⁸.
pub fn lindblad_trajectory(
    rho0: &TruncatedDensityMatrix,
    bath: &BathParams,
    times: &[f64],
) -> Result<Vec<TruncatedDensityMatrix>> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(invalid("times must be finite and non-negative"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("times must be ascending"));
    }
    let nm = nm_from_bath(bath);
    let d = rho0.dim;
    let gen = Generator { dim: d, sq: (0..=d + 2).map(|k| (k as f64).sqrt()).collect(), n: nm.n(), m: nm.m() };
    let hmax = 1e-3 / (1.0 + nm.m().norm());

    let mut rho = rho0.data.clone();
    let mut k1 = vec![Complex64::new(0.0, 0.0); d * d];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let span = bath.gamma() * (t - now);
        let steps = (span / hmax).ceil() as usize;
        if steps > 0 {
            let h = span / steps as f64;
            for _ in 0..steps {
                gen.apply(&rho, &mut k1);
                for (x, (r, k)) in tmp.iter_mut().zip(rho.iter().zip(&k1)) {
                    *x = r + 0.5 * h * k;
                }
                gen.apply(&tmp, &mut k2);
                for (x, (r, k)) in tmp.iter_mut().zip(rho.iter().zip(&k2)) {
                    *x = r + 0.5 * h * k;
                }
                gen.apply(&tmp, &mut k3);
                for (x, (r, k)) in tmp.iter_mut().zip(rho.iter().zip(&k3)) {
                    *x = r + h * k;
                }
                gen.apply(&tmp, &mut k4);
                for i in 0..d * d {
                    rho[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
                let tr: f64 = (0..d).map(|i| rho[i * d + i].re).sum();
                if (tr - 1.0).abs() > 1e-8 {
                    return Err(Error::Numerical(format!("trace drifted to {tr}")));
                }
            }
        }
        now = t;
        let state = TruncatedDensityMatrix { dim: d, data: rho.clone() };
        let tail = state.tail_mass();
        if tail > 1e-6 {
            return Err(Error::Truncation(format!(
                "population {tail:e} in the top tenth of a {d}-level basis at γt = {}",
                bath.gamma() * t
            )));
        }
        out.push(state);
    }
    Ok(out)
}

/// Evolves `rho0` for time `t` under the bath.
pub fn lindblad_evolve(rho0: &TruncatedDensityMatrix, bath: &BathParams, t: f64) -> Result<TruncatedDensityMatrix> {
    Ok(lindblad_trajectory(rho0, bath, &[t])?.remove(0))
}
