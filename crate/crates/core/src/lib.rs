// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form decoherence of continuous-variable states in uncorrelated
//! Gaussian baths, with independent numerical oracles.
//!
//! Units: ħ = 1, vacuum covariance matrix ½I, quadratures ordered
//! (x₁, p₁, …, xₙ, pₙ). Times enter through the dimensionless γt.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod channels;
pub mod error;
pub mod nongaussian;
pub mod numerics;
pub mod phase_space;
pub mod sampling;
pub mod scenario;
pub mod two_mode;

pub use error::{Error, Result};
