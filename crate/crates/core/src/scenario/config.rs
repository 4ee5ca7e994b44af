// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::Deserialize;

use super::ScenarioError;
use crate::channels::{BathParams, ChannelSpec};
use crate::nongaussian::CatState;
use crate::phase_space::SingleModeParams;
use crate::two_mode::{SqueezedThermalParams, StandardForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    SingleGaussian,
    Cat,
    Fock,
    Psi01,
    TwoMode,
    Fidelity,
}

/// Reported quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Purity,
    Entropy,
    Tau,
    Xi,
    Logneg,
    MutualInfo,
    Fidelity,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Self::Purity => "purity",
            Self::Entropy => "entropy",
            Self::Tau => "tau",
            Self::Xi => "xi",
            Self::Logneg => "logneg",
            Self::MutualInfo => "mutual-info",
            Self::Fidelity => "fidelity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Evaluation times in the same units as 1/γ.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl TimeGrid {
    pub fn times(&self) -> Result<Vec<f64>, ScenarioError> {
        let bad = |m: &str| Err(ScenarioError::Config(format!("time grid: {m}")));
        if self.points == 0 {
            return bad("needs at least one point");
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start < 0.0 || self.stop < self.start {
            return bad("needs finite 0 ≤ start ≤ stop");
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let n = (self.points - 1) as f64;
        match self.spacing {
            Spacing::Linear => Ok((0..self.points)
                .map(|i| if i + 1 == self.points { self.stop } else { self.start + (self.stop - self.start) * i as f64 / n })
                .collect()),
            Spacing::Log => {
                if self.start <= 0.0 {
                    return bad("log spacing needs start > 0");
                }
                let (a, b) = (self.start.ln(), self.stop.ln());
                Ok((0..self.points)
                    .map(|i| if i + 1 == self.points { self.stop } else { (a + (b - a) * i as f64 / n).exp() })
                    .collect())
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BathConfig {
    gamma: f64,
    mu_inf: f64,
    r_inf: f64,
    phi_inf: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    name: Option<String>,
    kind: Kind,
    state: serde_json::Value,
    baths: Vec<BathConfig>,
    time: TimeGrid,
    quantities: Vec<Quantity>,
    #[serde(default)]
    oracle: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianConfig {
    mu: f64,
    r: f64,
    phi: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatConfig {
    x0: [f64; 2],
    r0: f64,
    theta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FockConfig {
    n: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Psi01Config {
    vartheta: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum TwoModeConfig {
    Standard { a: f64, b: f64, c1: f64, c2: f64 },
    SqueezedThermal { mu: f64, r: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FidelityConfig {
    r: f64,
}

/// Validated initial state.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    SingleGaussian(SingleModeParams),
    Cat(CatState),
    Fock(usize),
    Psi01(f64),
    TwoMode(StandardForm),
    /// Two-mode squeezed vacuum with squeezing r, in equal thermal baths.
    Fidelity(f64),
}

impl InitialState {
    pub fn modes(&self) -> usize {
        match self {
            Self::TwoMode(_) | Self::Fidelity(_) => 2,
            _ => 1,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::SingleGaussian(_) => "single-gaussian",
            Self::Cat(_) => "cat",
            Self::Fock(_) => "fock",
            Self::Psi01(_) => "psi01",
            Self::TwoMode(_) => "two-mode",
            Self::Fidelity(_) => "fidelity",
        }
    }
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: Option<String>,
    pub state: InitialState,
    pub channel: ChannelSpec,
    pub times: Vec<f64>,
    pub quantities: Vec<Quantity>,
    pub oracle: bool,
}

fn cfg<E: std::fmt::Display>(e: E) -> ScenarioError {
    ScenarioError::Config(e.to_string())
}

fn state_of<T: serde::de::DeserializeOwned>(v: serde_json::Value, kind: &str) -> Result<T, ScenarioError> {
    serde_json::from_value(v).map_err(|e| ScenarioError::Config(format!("{kind} state: {e}")))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(text).map_err(cfg)?;
        let state = match raw.kind {
            Kind::SingleGaussian => {
                let c: GaussianConfig = state_of(raw.state, "single-gaussian")?;
                InitialState::SingleGaussian(SingleModeParams::new(c.mu, c.r, c.phi).map_err(cfg)?)
            }
            Kind::Cat => {
                let c: CatConfig = state_of(raw.state, "cat")?;
                InitialState::Cat(CatState::new(c.x0, c.r0, c.theta).map_err(cfg)?)
            }
            Kind::Fock => InitialState::Fock(state_of::<FockConfig>(raw.state, "fock")?.n),
            Kind::Psi01 => {
                let c: Psi01Config = state_of(raw.state, "psi01")?;
                if !c.vartheta.is_finite() {
                    return Err(ScenarioError::Config("psi01 phase must be finite".into()));
                }
                InitialState::Psi01(c.vartheta)
            }
            Kind::TwoMode => InitialState::TwoMode(match state_of(raw.state, "two-mode")? {
                TwoModeConfig::Standard { a, b, c1, c2 } => StandardForm::new(a, b, c1, c2).map_err(cfg)?,
                TwoModeConfig::SqueezedThermal { mu, r } => {
                    SqueezedThermalParams::new(mu, r).map_err(cfg)?.standard_form()
                }
            }),
            Kind::Fidelity => {
                let c: FidelityConfig = state_of(raw.state, "fidelity")?;
                SqueezedThermalParams::new(1.0, c.r).map_err(cfg)?;
                InitialState::Fidelity(c.r)
            }
        };
        let baths = raw
            .baths
            .iter()
            .map(|b| BathParams::new(b.gamma, b.mu_inf, b.r_inf, b.phi_inf))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(cfg)?;
        if baths.len() != state.modes() {
            return Err(ScenarioError::Config(format!(
                "{} needs {} bath(s), got {}",
                state.kind_name(),
                state.modes(),
                baths.len()
            )));
        }
        let channel = ChannelSpec::new(baths).map_err(cfg)?;
        if let InitialState::Fidelity(_) = state {
            let b = channel.baths();
            if b[0] != b[1] || !b[0].is_thermal() {
                return Err(ScenarioError::Config("fidelity needs two identical thermal baths".into()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for q in &raw.quantities {
            if !seen.insert(*q) {
                return Err(ScenarioError::Config(format!("quantity {} listed twice", q.name())));
            }
            check_quantity(&state, &channel, *q)?;
        }
        Ok(Self {
            name: raw.name,
            state,
            channel,
            times: raw.time.times()?,
            quantities: raw.quantities,
            oracle: raw.oracle,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

fn check_quantity(state: &InitialState, ch: &ChannelSpec, q: Quantity) -> Result<(), ScenarioError> {
    use InitialState as S;
    use Quantity as Q;
    let ok = match (state, q) {
        (_, Q::Purity) => true,
        (S::SingleGaussian(_), Q::Entropy | Q::Tau | Q::Xi) => true,
        (S::TwoMode(_) | S::Fidelity(_), Q::Entropy | Q::Tau | Q::Xi | Q::Logneg | Q::MutualInfo | Q::Fidelity) => true,
        (S::Cat(_), Q::Xi) => true,
        (S::Fock(_), Q::Xi) => ch.baths()[0].is_thermal(),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::Config(format!("quantity {} is not available for {}", q.name(), state.kind_name())))
    }
}
