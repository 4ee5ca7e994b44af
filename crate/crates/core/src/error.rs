// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by every module.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a precondition (shape, sign, range).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The input is well formed but outside the physical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure produced an unusable result.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature unconverged: estimate {estimate:e}, error {error:e} after {cells} cells")]
    Unconverged {
        /// Best value reached.
        estimate: f64,
        /// Error estimate attached to `estimate`.
        error: f64,
        /// Number of cells in the final partition.
        cells: usize,
    },
    /// The truncated Fock basis is too small for the requested evolution.
    #[error("truncation error: {0}")]
    Truncation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
