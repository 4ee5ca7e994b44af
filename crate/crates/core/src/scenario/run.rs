// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{InitialState, Quantity, Scenario};
use super::{ResultTable, ScenarioError};
use crate::channels::{
    evolve_moments, nm_from_bath, single_mode_params_t, single_mode_purity_t, single_mode_tau_t, ChannelSpec,
};
use crate::error::Result;
use crate::nongaussian::{
    cat_purity_t, cat_wigner_t, fock_purity_t, fock_purity_thermal, fock_wigner_t, negative_part, psi01_purity_t,
};
use crate::numerics::{default_truncation, lindblad_evolve, TruncatedDensityMatrix};
use crate::phase_space::{
    bosonic_entropy, cm_from_params, nonclassical_depth_gaussian, purity_gaussian, von_neumann_entropy,
    CovarianceMatrix, GaussianState,
};
use crate::two_mode::{
    evolved_invariants, fidelity_t, log_negativity, mutual_information, standard_form_to_cm, teleportation_fidelity,
    two_mode_tau_t, SqueezedThermalParams, StandardForm,
};

const CAT_XI_TOL: f64 = 1e-9;
const FOCK_XI_TOL: f64 = 1e-12;
const CAT_PURITY_TOL: f64 = 1e-10;

/// Runner settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Compute oracle columns even if the scenario does not request them.
    pub oracle: bool,
    /// Largest accepted |closed form − oracle|.
    pub tolerance: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { oracle: false, tolerance: 1e-6 }
    }
}

fn has_oracle(state: &InitialState, q: Quantity) -> bool {
    use InitialState as S;
    use Quantity as Q;
    match state {
        S::SingleGaussian(_) => matches!(q, Q::Purity | Q::Entropy | Q::Tau),
        S::Cat(_) | S::Fock(_) | S::Psi01(_) => q == Q::Purity,
        S::TwoMode(_) | S::Fidelity(_) => q != Q::Xi,
    }
}

fn two_mode_form(state: &InitialState) -> Option<StandardForm> {
    match state {
        InitialState::TwoMode(sf) => Some(*sf),
        InitialState::Fidelity(r) => Some(SqueezedThermalParams::new(1.0, *r).ok()?.standard_form()),
        _ => None,
    }
}

fn evolved_cm(state: &InitialState, ch: &ChannelSpec, t: f64) -> Result<CovarianceMatrix> {
    let cm = match state {
        InitialState::SingleGaussian(p) => cm_from_params(p),
        _ => standard_form_to_cm(&two_mode_form(state).expect("two-mode state")),
    };
    Ok(evolve_moments(&GaussianState::centered(cm)?, ch, t)?.cm().clone())
}

fn primary(state: &InitialState, ch: &ChannelSpec, q: Quantity, t: f64) -> Result<f64> {
    use InitialState as S;
    use Quantity as Q;
    let bath = &ch.baths()[0];
    match state {
        S::SingleGaussian(p) => match q {
            Q::Purity => single_mode_purity_t(p, bath, t),
            Q::Entropy => von_neumann_entropy(&cm_from_params(&single_mode_params_t(p, bath, t)?)),
            Q::Tau => single_mode_tau_t(p, bath, t),
            _ => Ok(0.0),
        },
        S::Cat(c) => match q {
            Q::Purity => cat_purity_t(c, bath, t),
            _ => Ok(negative_part(&cat_wigner_t(c, bath, t)?, CAT_XI_TOL)?.xi),
        },
        S::Fock(n) => match q {
            Q::Purity if bath.is_thermal() => fock_purity_thermal(*n, bath.mu_inf(), bath.gamma() * t),
            Q::Purity => fock_purity_t(*n, bath, t),
            _ => Ok(negative_part(&fock_wigner_t(*n, bath.mu_inf(), bath.gamma() * t)?, FOCK_XI_TOL)?.xi),
        },
        S::Psi01(th) => psi01_purity_t(*th, bath, t),
        S::TwoMode(_) | S::Fidelity(_) => {
            let sf = two_mode_form(state).expect("two-mode state");
            if q == Q::Tau {
                return two_mode_tau_t(&sf, ch, t);
            }
            if let (S::Fidelity(r), Q::Fidelity) = (state, q) {
                return fidelity_t(*r, ch, t);
            }
            let inv = evolved_invariants(&sf, ch, t)?.invariants;
            let total = || -> Result<f64> {
                let (a, b) = inv.symplectic_eigenvalues()?;
                Ok(bosonic_entropy(a) + bosonic_entropy(b))
            };
            match q {
                Q::Purity => Ok(1.0 / (4.0 * inv.det_sigma.sqrt())),
                Q::Entropy => total(),
                Q::MutualInfo => Ok(bosonic_entropy(inv.det_alpha.sqrt()) + bosonic_entropy(inv.det_beta.sqrt()) - total()?),
                Q::Logneg => Ok((-(2.0 * inv.ppt_eigenvalues()?.0).ln()).max(0.0)),
                Q::Fidelity => Ok(1.0 / (1.0 + 2.0 * inv.ppt_eigenvalues()?.0)),
                _ => Ok(0.0),
            }
        }
    }
}

fn cm_oracle(state: &InitialState, ch: &ChannelSpec, q: Quantity, t: f64) -> Result<f64> {
    use Quantity as Q;
    let cm = evolved_cm(state, ch, t)?;
    match q {
        Q::Purity => purity_gaussian(&cm),
        Q::Entropy => von_neumann_entropy(&cm),
        Q::Tau => nonclassical_depth_gaussian(&cm),
        Q::Logneg => log_negativity(&cm),
        Q::MutualInfo => mutual_information(&cm),
        _ => teleportation_fidelity(&cm),
    }
}

/// Purity along the grid by stepping the truncated master equation; stops
/// at the first failure.
fn lindblad_purities(state: &InitialState, ch: &ChannelSpec, times: &[f64]) -> Vec<std::result::Result<f64, String>> {
    let bath = &ch.baths()[0];
    let n_bath = nm_from_bath(bath).n();
    let rho0 = match state {
        InitialState::Fock(n) => TruncatedDensityMatrix::fock(*n, default_truncation(n_bath, *n)),
        InitialState::Psi01(th) => {
            let a = std::f64::consts::FRAC_1_SQRT_2;
            TruncatedDensityMatrix::pure(
                &[Complex64::new(a, 0.0), Complex64::from_polar(a, *th)],
                default_truncation(n_bath, 1),
            )
        }
        _ => unreachable!("master-equation oracle is for number-state inputs"),
    };
    let mut out = Vec::with_capacity(times.len());
    let mut rho = match rho0 {
        Ok(r) => r,
        Err(e) => return times.iter().map(|_| Err(e.to_string())).collect(),
    };
    let mut t_prev = 0.0;
    for &t in times {
        match lindblad_evolve(&rho, bath, t - t_prev) {
            Ok(r) => {
                rho = r;
                t_prev = t;
                out.push(Ok(rho.purity()));
            }
            Err(e) => {
                let msg = e.to_string();
                out.extend(std::iter::repeat_n(Err(msg), times.len() - out.len()));
                break;
            }
        }
    }
    out
}

/// Evaluates every requested quantity on the time grid; oracle failures are
/// recorded in the table rather than aborting the run.
pub fn run_scenario(s: &Scenario, opts: &RunOptions) -> std::result::Result<ResultTable, ScenarioError> {
    let want_oracle = s.oracle || opts.oracle;
    let mut columns = vec!["t".to_string()];
    let mut warnings = Vec::new();
    let oracle_q: Vec<Quantity> =
        if want_oracle { s.quantities.iter().copied().filter(|&q| has_oracle(&s.state, q)).collect() } else { vec![] };
    for q in &s.quantities {
        columns.push(q.name().to_string());
    }
    for q in &oracle_q {
        columns.push(format!("{}_oracle", q.name()));
        columns.push(format!("{}_absdev", q.name()));
    }
    let gaussian = matches!(s.state, InitialState::SingleGaussian(_) | InitialState::TwoMode(_) | InitialState::Fidelity(_));
    if gaussian && s.quantities.contains(&Quantity::Xi) {
        warnings.push("xi is identically 0 for Gaussian states".to_string());
    }
    if s.quantities.is_empty() {
        return Ok(ResultTable { columns, rows: vec![], max_deviation: vec![], warnings, failures: vec![] });
    }

    let primaries: Vec<Result<Vec<f64>>> = s
        .times
        .par_iter()
        .map(|&t| s.quantities.iter().map(|&q| primary(&s.state, &s.channel, q, t)).collect())
        .collect();
    let mut values = Vec::with_capacity(primaries.len());
    for r in primaries {
        values.push(r?);
    }

    let lindblad = if oracle_q.contains(&Quantity::Purity) && matches!(s.state, InitialState::Fock(_) | InitialState::Psi01(_)) {
        Some(lindblad_purities(&s.state, &s.channel, &s.times))
    } else {
        None
    };
    let oracles: Vec<Vec<std::result::Result<f64, String>>> = s
        .times
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            oracle_q
                .iter()
                .map(|&q| match &s.state {
                    InitialState::Cat(c) => cat_wigner_t(c, &s.channel.baths()[0], t)
                        .and_then(|w| w.purity(CAT_PURITY_TOL))
                        .map(|r| r.value)
                        .map_err(|e| e.to_string()),
                    InitialState::Fock(_) | InitialState::Psi01(_) => lindblad.as_ref().expect("oracle run")[i].clone(),
                    _ => cm_oracle(&s.state, &s.channel, q, t).map_err(|e| e.to_string()),
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(s.times.len());
    let mut failures = Vec::new();
    let mut max_dev = vec![0.0f64; oracle_q.len()];
    for (i, &t) in s.times.iter().enumerate() {
        let mut row = vec![t];
        row.extend(&values[i]);
        for (j, q) in oracle_q.iter().enumerate() {
            let v = values[i][s.quantities.iter().position(|x| x == q).expect("listed")];
            match &oracles[i][j] {
                Ok(o) => {
                    let d = (v - o).abs();
                    max_dev[j] = max_dev[j].max(d);
                    row.push(*o);
                    row.push(d);
                }
                Err(m) => {
                    failures.push((t, format!("{} oracle: {m}", q.name())));
                    row.push(f64::NAN);
                    row.push(f64::NAN);
                }
            }
        }
        rows.push(row);
    }
    let max_deviation = oracle_q.iter().map(|q| q.name().to_string()).zip(max_dev).collect();
    Ok(ResultTable { columns, rows, max_deviation, warnings, failures })
}

impl ResultTable {
    /// Fails if an oracle errored or deviated by more than `tolerance`.
    pub fn check(&self, tolerance: f64) -> std::result::Result<(), ScenarioError> {
        if let Some((t, m)) = self.failures.first() {
            return Err(ScenarioError::Oracle(format!("{} row(s) failed, first at t = {t}: {m}", self.failures.len())));
        }
        for (q, d) in &self.max_deviation {
            if !(*d <= tolerance) {
                return Err(ScenarioError::Oracle(format!("{q}: max |Δ| = {d:e} exceeds {tolerance:e}")));
            }
        }
        Ok(())
    }
}
