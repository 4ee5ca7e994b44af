// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Declarative scenarios: JSON config in, time-series CSV out.

mod config;
mod run;
mod table;

pub use config::{InitialState, Quantity, Scenario, Spacing, TimeGrid};
pub use run::{run_scenario, RunOptions};
pub use table::{emit, ResultTable};

use thiserror::Error;

/// Failures of the scenario runner, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(#[from] crate::Error),
    #[error("oracle check failed: {0}")]
    Oracle(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl ScenarioError {
    /// 1 for config and IO errors, 2 for numerical and oracle failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Io(_) => 1,
            Self::Numerical(_) | Self::Oracle(_) => 2,
        }
    }
}
