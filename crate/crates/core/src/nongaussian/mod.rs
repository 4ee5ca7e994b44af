// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! Decoherence of non-Gaussian states: Schrödinger cats, Fock states and the
//! |0⟩/|1⟩ superposition.

mod cat;
mod field;
mod fock;
mod psi01;

pub use cat::{cat_purity_t, cat_tdec_estimate, cat_wigner_t, CatState};
pub use field::{negative_part, positivity_time, NegativePartResult, WignerField};
pub use fock::{
    fock_char_t, fock_purity_t, fock_purity_thermal, fock_wigner_t, FockCharacteristic, FockInput,
};
pub use psi01::{psi01_optimal_phase, psi01_purity_t};

use crate::error::{invalid, Result};

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid(format!("time must be finite and non-negative, got {t}")));
    }
    Ok(())
}
