// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use cvdec::channels::{evolve_moments, BathParams, ChannelSpec};
use cvdec::phase_space::{purity_gaussian, symplectic_eigenvalues, CovarianceMatrix, GaussianState};
use cvdec::sampling::{random_physical_cm, random_standard_form};
use cvdec::two_mode::{
    coefficient_set, entanglement_time, evolved_invariants, evolved_nu_minus, invariants, is_separable, log_negativity,
    mirror_reflect, ppt_symplectic_eigenvalues, standard_form_to_cm, SqueezedThermalParams, StandardForm,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn thermal_pair(g1: f64, m1: f64, g2: f64, m2: f64) -> ChannelSpec {
    ChannelSpec::new(vec![BathParams::thermal(g1, m1).unwrap(), BathParams::thermal(g2, m2).unwrap()]).unwrap()
}

fn evolved(sf: &StandardForm, ch: &ChannelSpec, t: f64) -> CovarianceMatrix {
    let s = GaussianState::centered(standard_form_to_cm(sf)).unwrap();
    evolve_moments(&s, ch, t).unwrap().cm().clone()
}

fn standard_form() -> impl Strategy<Value = StandardForm> {
    any::<u64>().prop_map(|seed| random_standard_form(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn squeezed_thermal() -> impl Strategy<Value = StandardForm> {
    (0.3f64..=1.0, 0.1f64..1.5).prop_map(|(mu, r)| SqueezedThermalParams::new(mu, r).unwrap().standard_form())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ppt_eigenvalue_matches_mirror_reflected_spectrum(seed in any::<u64>()) {
        let cm = random_physical_cm(2, 2.0, 0.5, &mut ChaCha8Rng::seed_from_u64(seed));
        let (nm, np) = ppt_symplectic_eigenvalues(&cm).unwrap();
        let spec = symplectic_eigenvalues(&mirror_reflect(&cm).unwrap());
        prop_assert!((nm - spec.min()).abs() < 1e-10 * np.max(1.0));
        prop_assert!((np - spec.max()).abs() < 1e-10 * np.max(1.0));
    }

    #[test]
    fn delta_identities(seed in any::<u64>()) {
        let cm = random_physical_cm(2, 2.0, 0.5, &mut ChaCha8Rng::seed_from_u64(seed));
        let inv = invariants(&cm).unwrap();
        prop_assert_eq!(inv.delta(), inv.det_alpha + inv.det_beta + 2.0 * inv.det_gamma);
        prop_assert_eq!(inv.delta_tilde(), inv.det_alpha + inv.det_beta - 2.0 * inv.det_gamma);
        let (m, p) = inv.symplectic_eigenvalues().unwrap();
        let spec = symplectic_eigenvalues(&cm);
        prop_assert!((m - spec.min()).abs() < 1e-9 && (p - spec.max()).abs() < 1e-9);
    }

    #[test]
    fn log_negativity_non_increasing_in_thermal_baths(sf in standard_form(), m1 in 0.1f64..=1.0, m2 in 0.1f64..=1.0, g2 in 0.2f64..3.0) {
        let ch = thermal_pair(1.0, m1, g2, m2);
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let en = log_negativity(&evolved(&sf, &ch, 0.1 * i as f64)).unwrap();
            prop_assert!(en <= prev + 1e-12);
            prev = en;
        }
    }

    #[test]
    fn monotone_in_bath_purity_and_coupling(sf in standard_form(), m in 0.1f64..0.9, dm in 0.01f64..0.1, g in 0.3f64..2.0, t in 0.05f64..2.0) {
        let base = evolved(&sf, &thermal_pair(g, m, g, m), t);
        let purer = evolved(&sf, &thermal_pair(g, m + dm, g, m), t);
        let faster = evolved(&sf, &thermal_pair(g, m, g * 1.2, m), t);
        prop_assert!(log_negativity(&purer).unwrap() >= log_negativity(&base).unwrap() - 1e-12);
        prop_assert!(purity_gaussian(&purer).unwrap() >= purity_gaussian(&base).unwrap() - 1e-12);
        prop_assert!(log_negativity(&faster).unwrap() <= log_negativity(&base).unwrap() + 1e-12);
    }

    #[test]
    fn nu_minus_monotone_in_second_bath_angle(sf in squeezed_thermal(), mu_inf in 0.3f64..=1.0, r_inf in 0.1f64..1.0, t in 0.05f64..1.5) {
        let b1 = BathParams::new(1.0, mu_inf, r_inf, 0.0).unwrap();
        let mut prev = 0.0;
        for j in 0..=10 {
            let phi2 = std::f64::consts::FRAC_PI_4 * j as f64 / 10.0;
            let ch = ChannelSpec::new(vec![b1, BathParams::new(1.0, mu_inf, r_inf, phi2).unwrap()]).unwrap();
            let nm = evolved_nu_minus(&sf, &ch, t).unwrap();
            prop_assert!(nm >= prev - 1e-12);
            prev = nm;
        }
    }

    #[test]
    fn coefficient_polynomials_match_determinants(sf in standard_form(), mu in 0.1f64..=1.0, r in 0.0f64..1.0, t in 0.0f64..4.0) {
        let b1 = BathParams::new(1.0, mu, r, 0.0).unwrap();
        let b2 = BathParams::new(1.0, mu * 0.8, r * 0.5, 0.4).unwrap();
        let ch = ChannelSpec::new(vec![b1, b2]).unwrap();
        let poly = coefficient_set(&sf, &ch).unwrap().invariants_at(b1.damping(t));
        let direct = invariants(&evolved(&sf, &ch, t)).unwrap();
        for (a, b) in [
            (poly.det_sigma, direct.det_sigma),
            (poly.det_alpha, direct.det_alpha),
            (poly.det_beta, direct.det_beta),
            (poly.det_gamma, direct.det_gamma),
        ] {
            prop_assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
        }
        prop_assert!(evolved_invariants(&sf, &ch, t).unwrap().via_coefficients);
    }

    #[test]
    fn separability_flips_at_entanglement_time(mu in 0.5f64..=1.0, r in 0.2f64..2.0, mu_inf in 0.1f64..0.9, g in 0.5f64..2.0) {
        let sf = SqueezedThermalParams::new(mu, r).unwrap().standard_form();
        let ch = thermal_pair(g, mu_inf, g, mu_inf);
        prop_assume!(!is_separable(&standard_form_to_cm(&sf)).unwrap());
        if let Some(te) = entanglement_time(&sf, &ch).unwrap() {
            let before = evolved(&sf, &ch, (te.t - 1e-6 / g).max(0.0));
            let after = evolved(&sf, &ch, te.t + 1e-6 / g);
            prop_assert!(!is_separable(&before).unwrap());
            prop_assert!(is_separable(&after).unwrap());
        }
    }
}
