// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Special functions and the independent numerical oracles.

pub mod lindblad;
pub mod quadrature;
pub mod roots;
pub mod special;

pub use lindblad::{default_truncation, lindblad_evolve, lindblad_trajectory, TruncatedDensityMatrix};
pub use quadrature::{gauss_legendre, integrate_1d, integrate_phase_space, QuadratureResult, QuadratureSpec};
pub use roots::polynomial_real_roots;
pub use special::{bessel_i0, bessel_i0_scaled, binomial, laguerre, legendre, ln_bessel_i0};
