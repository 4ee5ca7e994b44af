// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_PI_2;

use cvdec::channels::{
    bath_from_nm, env_cm, evolve_moments, gaussian_map_check, nm_from_bath, single_mode_params_t, single_mode_purity_t,
    single_mode_tau_t, BathParams, ChannelSpec,
};
use cvdec::phase_space::{
    check_physical, cm_from_params, fold_angle, nonclassical_depth_gaussian, params_from_cm, GaussianState,
    PhaseSpaceVector, SingleModeParams,
};
use cvdec::sampling::random_physical_cm;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bath() -> impl Strategy<Value = BathParams> {
    (0.1f64..3.0, 0.05f64..=1.0, 0.0f64..1.5, -1.5f64..1.5).prop_map(|(g, m, r, p)| BathParams::new(g, m, r, p).unwrap())
}

fn init() -> impl Strategy<Value = SingleModeParams> {
    (0.05f64..=1.0, 0.0f64..1.5, -1.5f64..1.5).prop_map(|(m, r, p)| SingleModeParams::new(m, r, p).unwrap())
}

fn angle_gap(a: f64, b: f64) -> f64 {
    fold_angle(a - b).abs().min((fold_angle(a - b) - std::f64::consts::PI).abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_forms_match_moment_map(p in init(), b in bath(), gt in 0.0f64..6.0) {
        let t = gt / b.gamma();
        let s = GaussianState::centered(cm_from_params(&p)).unwrap();
        let moved = evolve_moments(&s, &ChannelSpec::single(b), t).unwrap();
        let direct = params_from_cm(moved.cm()).unwrap();
        let closed = single_mode_params_t(&p, &b, t).unwrap();
        prop_assert!((closed.mu() - direct.mu()).abs() < 1e-9);
        prop_assert!((closed.r() - direct.r()).abs() < 1e-6);
        if direct.r() > 1e-4 {
            prop_assert!(angle_gap(closed.phi(), direct.phi()) < 1e-6);
        }
        let tau = single_mode_tau_t(&p, &b, t).unwrap();
        prop_assert!((tau - nonclassical_depth_gaussian(moved.cm()).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn semigroup(seed in any::<u64>(), b1 in bath(), b2 in bath(), t1 in 0.0f64..2.0, t2 in 0.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_physical_cm(2, 2.0, 0.4, &mut rng);
        let s = GaussianState::new(PhaseSpaceVector::new(vec![0.3, -1.0, 2.0, 0.5]).unwrap(), cm).unwrap();
        let ch = ChannelSpec::new(vec![b1, b2]).unwrap();
        let two_step = evolve_moments(&evolve_moments(&s, &ch, t1).unwrap(), &ch, t2).unwrap();
        let one_step = evolve_moments(&s, &ch, t1 + t2).unwrap();
        let scale = s.cm().matrix().amax().max(1.0);
        prop_assert!((two_step.cm().matrix() - one_step.cm().matrix()).amax() < 1e-10 * scale);
        for (x, y) in two_step.mean().as_slice().iter().zip(one_step.mean().as_slice()) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn evolution_stays_physical(seed in any::<u64>(), b1 in bath(), b2 in bath(), t in 0.0f64..10.0) {
        let cm = random_physical_cm(2, 2.5, 0.6, &mut ChaCha8Rng::seed_from_u64(seed));
        let ch = ChannelSpec::new(vec![b1, b2]).unwrap();
        let out = evolve_moments(&GaussianState::centered(cm).unwrap(), &ch, t).unwrap();
        prop_assert!(check_physical(out.cm()));
        let (x, y) = ch.matrices(t);
        prop_assert!(gaussian_map_check(&x, &y).unwrap());
    }

    #[test]
    fn countersqueezed_input_is_optimal(b in bath(), mu0 in 0.2f64..=1.0, gt in 0.05f64..4.0) {
        let t = gt / b.gamma();
        let best = SingleModeParams::new(mu0, b.r_inf(), fold_angle(b.phi_inf() + FRAC_PI_2)).unwrap();
        let top = single_mode_purity_t(&best, &b, t).unwrap();
        for i in 0..=40 {
            let r0 = 0.05 * i as f64;
            for j in 0..12 {
                let phi0 = -FRAC_PI_2 + std::f64::consts::PI * j as f64 / 12.0;
                let other = SingleModeParams::new(mu0, r0, phi0).unwrap();
                prop_assert!(single_mode_purity_t(&other, &b, t).unwrap() <= top + 1e-12);
            }
        }
    }

    #[test]
    fn purity_increasing_in_input_purity(p in init(), b in bath(), gt in 0.0f64..5.0, dm in 0.01f64..0.5) {
        let t = gt / b.gamma();
        let hi = (p.mu() + dm).min(1.0);
        prop_assume!(hi > p.mu());
        let q = SingleModeParams::new(hi, p.r(), p.phi()).unwrap();
        prop_assert!(single_mode_purity_t(&q, &b, t).unwrap() >= single_mode_purity_t(&p, &b, t).unwrap() - 1e-14);
    }

    #[test]
    fn bath_nm_round_trip(b in bath()) {
        let nm = nm_from_bath(&b);
        prop_assert!(nm.m().norm_sqr() <= nm.n() * (nm.n() + 1.0) + 1e-12);
        prop_assert!(check_physical(&env_cm(&b)));
        let back = bath_from_nm(&nm, b.gamma()).unwrap();
        prop_assert!((back.mu_inf() - b.mu_inf()).abs() < 1e-10);
        prop_assert!((back.r_inf() - b.r_inf()).abs() < 1e-8);
        if b.r_inf() > 1e-6 {
            prop_assert!(angle_gap(back.phi_inf(), b.phi_inf()) < 1e-8);
        }
    }
}

#[test]
fn long_time_limit_is_the_bath() {
    let b = BathParams::new(0.7, 0.3, 0.8, 0.4).unwrap();
    let p = SingleModeParams::new(0.9, 1.2, -0.3).unwrap();
    let t = 50.0 / b.gamma();
    let out = single_mode_params_t(&p, &b, t).unwrap();
    assert!((out.mu() - b.mu_inf()).abs() < 1e-12);
    assert!((out.r() - b.r_inf()).abs() < 1e-10);
    let s = evolve_moments(&GaussianState::centered(cm_from_params(&p)).unwrap(), &ChannelSpec::single(b), t).unwrap();
    assert!((s.cm().matrix() - env_cm(&b).matrix()).amax() < 1e-10);
}
