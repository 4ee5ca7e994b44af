// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use cvdec_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { cvdec_last_error_message(buf.as_mut_ptr(), buf.len()) };
    if n == 0 {
        return String::new();
    }
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn tmsv(r: f64) -> *mut CvdecGaussianState {
    let (a, c) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
    let cm = [a, 0.0, c, 0.0, 0.0, a, 0.0, -c, c, 0.0, a, 0.0, 0.0, -c, 0.0, a];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cvdec_state_new(2, ptr::null(), cm.as_ptr(), &mut s) }, CvdecStatus::Ok);
    s
}

const THERMAL: CvdecBath = CvdecBath { gamma: 1.0, mu_inf: 0.5, r_inf: 0.0, phi_inf: 0.0 };

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(cvdec_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn gaussian_state_round_trip_and_measures() {
    unsafe {
        let cm = [1.0, 0.0, 0.0, 1.0];
        let mean = [0.5, -0.5];
        let mut s = ptr::null_mut();
        assert_eq!(cvdec_state_new(1, mean.as_ptr(), cm.as_ptr(), &mut s), CvdecStatus::Ok);
        assert_eq!(cvdec_state_modes(s), 1);
        let mut mu = 0.0;
        assert_eq!(cvdec_purity(s, &mut mu), CvdecStatus::Ok);
        assert!((mu - 0.5).abs() < 1e-15);
        let mut ent = 0.0;
        assert_eq!(cvdec_entropy(s, &mut ent), CvdecStatus::Ok);
        assert!((ent - (1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln())).abs() < 1e-12);
        let mut copy = ptr::null_mut();
        assert_eq!(cvdec_state_clone(s, &mut copy), CvdecStatus::Ok);
        let mut back = [0.0; 4];
        assert_eq!(cvdec_state_cm(copy, back.as_mut_ptr(), 4), CvdecStatus::Ok);
        assert_eq!(back, cm);
        let mut m = [0.0; 2];
        assert_eq!(cvdec_state_mean(copy, m.as_mut_ptr(), 2), CvdecStatus::Ok);
        assert_eq!(m, mean);
        assert_eq!(cvdec_state_cm(copy, back.as_mut_ptr(), 3), CvdecStatus::InvalidArgument);
        cvdec_state_free(copy);
        cvdec_state_free(s);
    }
}

#[test]
fn evolution_reaches_the_bath() {
    unsafe {
        let s = tmsv(1.0);
        let mut ch = ptr::null_mut();
        let baths = [THERMAL, THERMAL];
        assert_eq!(cvdec_channel_new(baths.as_ptr(), 2, &mut ch), CvdecStatus::Ok);
        let mut en0 = 0.0;
        assert_eq!(cvdec_log_negativity(s, &mut en0), CvdecStatus::Ok);
        assert!((en0 - 2.0).abs() < 1e-12);
        let mut late = ptr::null_mut();
        assert_eq!(cvdec_evolve(s, ch, 50.0, &mut late), CvdecStatus::Ok);
        let (mut mu, mut en, mut f, mut info) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(cvdec_purity(late, &mut mu), CvdecStatus::Ok);
        assert_eq!(cvdec_log_negativity(late, &mut en), CvdecStatus::Ok);
        assert_eq!(cvdec_teleportation_fidelity(late, &mut f), CvdecStatus::Ok);
        assert_eq!(cvdec_mutual_information(late, &mut info), CvdecStatus::Ok);
        assert!((mu - 0.25).abs() < 1e-12);
        assert_eq!(en, 0.0);
        assert!(f < 0.5);
        assert!(info.abs() < 1e-10);
        let mut tau = 0.0;
        assert_eq!(cvdec_nonclassical_depth(late, &mut tau), CvdecStatus::Ok);
        assert_eq!(tau, 0.0);

        let sf = CvdecStandardForm { a: 2f64.cosh() / 2.0, b: 2f64.cosh() / 2.0, c1: 2f64.sinh() / 2.0, c2: -2f64.sinh() / 2.0 };
        let (mut t, mut found) = (0.0, false);
        assert_eq!(cvdec_entanglement_time(&sf, ch, &mut t, &mut found), CvdecStatus::Ok);
        assert!(found);
        let expect = (1.0 + 0.5 * (1.0 - (-2.0f64).exp()) / (1.0 - 0.5)).ln();
        assert!((t - expect).abs() < 1e-9);

        cvdec_state_free(late);
        cvdec_state_free(s);
        cvdec_channel_free(ch);
    }
}

#[test]
fn non_gaussian_purities() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(cvdec_fock_purity(1, &THERMAL, 1.0, &mut v), CvdecStatus::Ok);
        assert!((v - 0.398751596529).abs() < 1e-11);
        assert_eq!(cvdec_cat_purity(1.0, 1.0, 0.0, 0.0, &THERMAL, 0.0, &mut v), CvdecStatus::Ok);
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(cvdec_psi01_purity(0.3, &THERMAL, 0.0, &mut v), CvdecStatus::Ok);
        assert!((v - 1.0).abs() < 1e-12);
        assert_eq!(cvdec_t_nc(&THERMAL, &mut v), CvdecStatus::Ok);
        assert!((v - 1.5f64.ln()).abs() < 1e-15);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        let bad = [0.4, 0.0, 0.0, 0.4];
        assert_eq!(cvdec_state_new(1, ptr::null(), bad.as_ptr(), &mut s), CvdecStatus::Domain);
        assert!(s.is_null());
        assert!(!last_error().is_empty());

        let asym = [1.0, 0.2, 0.0, 1.0];
        assert_eq!(cvdec_state_new(1, ptr::null(), asym.as_ptr(), &mut s), CvdecStatus::InvalidArgument);
        assert_eq!(cvdec_state_new(1, ptr::null(), ptr::null(), &mut s), CvdecStatus::NullPointer);
        assert_eq!(cvdec_state_new(0, ptr::null(), bad.as_ptr(), &mut s), CvdecStatus::InvalidArgument);

        let mut v = 0.0;
        assert_eq!(cvdec_purity(ptr::null(), &mut v), CvdecStatus::NullPointer);
        assert!(last_error().contains("null"));
        let squeezed = CvdecBath { gamma: 1.0, mu_inf: 0.5, r_inf: 0.3, phi_inf: 0.0 };
        assert_eq!(cvdec_t_nc(&squeezed, &mut v), CvdecStatus::InvalidArgument);
        let broken = CvdecBath { gamma: -1.0, ..THERMAL };
        assert_eq!(cvdec_fock_purity(1, &broken, 1.0, &mut v), CvdecStatus::InvalidArgument);

        let one = [THERMAL];
        let mut ch = ptr::null_mut();
        assert_eq!(cvdec_channel_new(one.as_ptr(), 1, &mut ch), CvdecStatus::Ok);
        let two = tmsv(0.5);
        let mut out = ptr::null_mut();
        assert_eq!(cvdec_evolve(two, ch, 1.0, &mut out), CvdecStatus::InvalidArgument);
        let single = [0.5, 0.0, 0.0, 0.5];
        let mut s1 = ptr::null_mut();
        assert_eq!(cvdec_state_new(1, ptr::null(), single.as_ptr(), &mut s1), CvdecStatus::Ok);
        assert_eq!(cvdec_log_negativity(s1, &mut v), CvdecStatus::InvalidArgument);

        assert_eq!(cvdec_purity(s1, &mut v), CvdecStatus::Ok);
        assert_eq!(last_error(), "");
        cvdec_state_free(s1);
        cvdec_state_free(two);
        cvdec_channel_free(ch);
        cvdec_state_free(ptr::null_mut());
        cvdec_channel_free(ptr::null_mut());
    }
}

#[test]
fn error_message_truncates() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(cvdec_purity(ptr::null(), &mut v), CvdecStatus::NullPointer);
        let full = cvdec_last_error_message(ptr::null_mut(), 0);
        let mut buf = [1 as std::ffi::c_char; 4];
        assert_eq!(cvdec_last_error_message(buf.as_mut_ptr(), buf.len()), full);
        assert_eq!(buf[3], 0);
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_bytes().len(), 3);
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("cvdec.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for name in ["cvdec_state_new", "cvdec_evolve", "cvdec_entanglement_time", "CVDEC_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(res) = Command::new(compiler).args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang]).arg(&header).output()
        else {
            eprintln!("{compiler} not available, skipping");
            continue;
        };
        assert!(res.status.success(), "{compiler}: {}", String::from_utf8_lossy(&res.stderr));
    }
}
