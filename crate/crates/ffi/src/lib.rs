// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

//! C ABI over the cvdec library.
//!
//! Every fallible call returns a [`CvdecStatus`] and writes results through
//! out-pointers. The message of the last failure on the calling thread is
//! available from [`cvdec_last_error_message`]. Handles are heap objects
//! owned by the caller and released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cvdec::channels::{evolve_moments, t_nc, BathParams, ChannelSpec};
use cvdec::nongaussian::{cat_purity_t, fock_purity_t, psi01_purity_t, CatState};
use cvdec::phase_space::{
    nonclassical_depth_gaussian, purity_gaussian, von_neumann_entropy, CovarianceMatrix, GaussianState, PhaseSpaceVector,
};
use cvdec::two_mode::{entanglement_time, log_negativity, mutual_information, teleportation_fidelity, StandardForm};
use cvdec::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvdecStatus {
    Ok = 0,
    InvalidArgument = 1,
    Domain = 2,
    Numerical = 3,
    Unconverged = 4,
    Truncation = 5,
    NullPointer = 6,
    Panic = 7,
}

/// Bath coupling γ, asymptotic purity μ∞, squeezing r∞ and angle φ∞.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CvdecBath {
    pub gamma: f64,
    pub mu_inf: f64,
    pub r_inf: f64,
    pub phi_inf: f64,
}

/// Two-mode standard form `σ = [[a,0,c1,0],[0,a,0,c2],[c1,0,b,0],[0,c2,0,b]]`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CvdecStandardForm {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Opaque Gaussian state: first moments and covariance matrix.
pub struct CvdecGaussianState {
    inner: GaussianState,
}

/// Opaque product channel, one bath per mode.
pub struct CvdecChannel {
    inner: ChannelSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CvdecStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => CvdecStatus::InvalidArgument,
            Error::Domain(_) => CvdecStatus::Domain,
            Error::Numerical(_) => CvdecStatus::Numerical,
            Error::Unconverged { .. } => CvdecStatus::Unconverged,
            Error::Truncation(_) => CvdecStatus::Truncation,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(CvdecStatus::NullPointer, format!("{name} is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> CvdecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CvdecStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CvdecStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn state_ref<'a>(s: *const CvdecGaussianState) -> Result<&'a GaussianState, Failure> {
    s.as_ref().map(|h| &h.inner).ok_or_else(|| null("state"))
}

unsafe fn channel_ref<'a>(c: *const CvdecChannel) -> Result<&'a ChannelSpec, Failure> {
    c.as_ref().map(|h| &h.inner).ok_or_else(|| null("channel"))
}

unsafe fn bath_of(b: *const CvdecBath) -> Result<BathParams, Failure> {
    let b = b.as_ref().ok_or_else(|| null("bath"))?;
    Ok(BathParams::new(b.gamma, b.mu_inf, b.r_inf, b.phi_inf)?)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cvdec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf`.
///
/// Returns the length including the terminating NUL; 0 when no error is
/// recorded. The message is truncated when `len` is too small.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn cvdec_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Creates a state from a row-major 2n×2n covariance matrix and an optional
/// mean of length 2n (null for zero mean).
///
/// # Safety
/// `cm` must point to 4·modes² doubles, `mean` to 2·modes doubles or be
/// null, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_new(
    modes: usize,
    mean: *const f64,
    cm: *const f64,
    out: *mut *mut CvdecGaussianState,
) -> CvdecStatus {
    guard(|| {
        if cm.is_null() {
            return Err(null("cm"));
        }
        if modes == 0 || modes > 64 {
            return Err(Failure(CvdecStatus::InvalidArgument, format!("mode count {modes} out of range")));
        }
        let d = 2 * modes;
        let cm = CovarianceMatrix::from_row_slice(d, std::slice::from_raw_parts(cm, d * d))?;
        let mean = if mean.is_null() { vec![0.0; d] } else { std::slice::from_raw_parts(mean, d).to_vec() };
        let state = GaussianState::new(PhaseSpaceVector::new(mean)?, cm)?;
        write(out, boxed(CvdecGaussianState { inner: state }), "out")
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_free(state: *mut CvdecGaussianState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Deep copy of a state.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_clone(
    state: *const CvdecGaussianState,
    out: *mut *mut CvdecGaussianState,
) -> CvdecStatus {
    guard(|| {
        let s = state_ref(state)?.clone();
        write(out, boxed(CvdecGaussianState { inner: s }), "out")
    })
}

/// Number of modes, or 0 for a null handle.
///
/// # Safety
/// `state` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_modes(state: *const CvdecGaussianState) -> usize {
    state.as_ref().map_or(0, |s| s.inner.modes())
}

/// Copies the row-major covariance matrix into `out` (length ≥ 4n²).
///
/// # Safety
/// `state` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_cm(state: *const CvdecGaussianState, out: *mut f64, len: usize) -> CvdecStatus {
    guard(|| {
        let m = state_ref(state)?.cm().matrix();
        let d = m.nrows();
        if out.is_null() {
            return Err(null("out"));
        }
        if len < d * d {
            return Err(Failure(CvdecStatus::InvalidArgument, format!("buffer holds {len}, need {}", d * d)));
        }
        for i in 0..d {
            for j in 0..d {
                *out.add(i * d + j) = m[(i, j)];
            }
        }
        Ok(())
    })
}

/// Copies the mean vector into `out` (length ≥ 2n).
///
/// # Safety
/// `state` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cvdec_state_mean(state: *const CvdecGaussianState, out: *mut f64, len: usize) -> CvdecStatus {
    guard(|| {
        let v = state_ref(state)?.mean().as_slice();
        if out.is_null() {
            return Err(null("out"));
        }
        if len < v.len() {
            return Err(Failure(CvdecStatus::InvalidArgument, format!("buffer holds {len}, need {}", v.len())));
        }
        ptr::copy_nonoverlapping(v.as_ptr(), out, v.len());
        Ok(())
    })
}

/// Creates a channel from `count` baths, one per mode.
///
/// # Safety
/// `baths` must point to `count` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_channel_new(
    baths: *const CvdecBath,
    count: usize,
    out: *mut *mut CvdecChannel,
) -> CvdecStatus {
    guard(|| {
        if baths.is_null() {
            return Err(null("baths"));
        }
        let list = (0..count).map(|i| bath_of(baths.add(i))).collect::<Result<Vec<_>, _>>()?;
        let ch = ChannelSpec::new(list)?;
        write(out, boxed(CvdecChannel { inner: ch }), "out")
    })
}

/// Releases a channel. Null is ignored.
///
/// # Safety
/// `channel` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cvdec_channel_free(channel: *mut CvdecChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Evolves `state` through `channel` for time `t` into a new handle.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_evolve(
    state: *const CvdecGaussianState,
    channel: *const CvdecChannel,
    t: f64,
    out: *mut *mut CvdecGaussianState,
) -> CvdecStatus {
    guard(|| {
        let s = evolve_moments(state_ref(state)?, channel_ref(channel)?, t)?;
        write(out, boxed(CvdecGaussianState { inner: s }), "out")
    })
}

unsafe fn scalar<F>(state: *const CvdecGaussianState, out: *mut f64, f: F) -> CvdecStatus
where
    F: FnOnce(&GaussianState) -> cvdec::Result<f64>,
{
    guard(|| {
        let v = f(state_ref(state)?)?;
        write(out, v, "out")
    })
}

/// Purity 1/(2ⁿ√Det σ).
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_purity(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| purity_gaussian(s.cm()))
}

/// Von Neumann entropy in nats.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_entropy(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| von_neumann_entropy(s.cm()))
}

/// Nonclassical depth τ.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_nonclassical_depth(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| nonclassical_depth_gaussian(s.cm()))
}

/// Logarithmic negativity of a two-mode state.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_log_negativity(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| log_negativity(s.cm()))
}

/// Mutual information of a two-mode state in nats.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_mutual_information(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| mutual_information(s.cm()))
}

/// Coherent-state teleportation fidelity 1/(1 + 2ν̃₋).
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_teleportation_fidelity(state: *const CvdecGaussianState, out: *mut f64) -> CvdecStatus {
    scalar(state, out, |s| teleportation_fidelity(s.cm()))
}

/// Separability time of a standard form in a two-bath channel.
///
/// `found` is set to false, and `t_ent` left untouched, when the state
/// stays entangled for all times.
///
/// # Safety
/// Pointers must be valid; `channel` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cvdec_entanglement_time(
    sf: *const CvdecStandardForm,
    channel: *const CvdecChannel,
    t_ent: *mut f64,
    found: *mut bool,
) -> CvdecStatus {
    guard(|| {
        let f = sf.as_ref().ok_or_else(|| null("standard form"))?;
        let sf = StandardForm::new(f.a, f.b, f.c1, f.c2)?;
        if t_ent.is_null() {
            return Err(null("t_ent"));
        }
        match entanglement_time(&sf, channel_ref(channel)?)? {
            Some(e) => {
                *t_ent = e.t;
                write(found, true, "found")
            }
            None => write(found, false, "found"),
        }
    })
}

/// Purity of the Fock state |n⟩ after time t.
///
/// # Safety
/// `bath` must point to a value and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_fock_purity(n: u32, bath: *const CvdecBath, t: f64, out: *mut f64) -> CvdecStatus {
    guard(|| {
        let v = fock_purity_t(n as usize, &bath_of(bath)?, t)?;
        write(out, v, "out")
    })
}

/// Purity of the cat state with centre (x0, p0), squeezing r0 and phase θ.
///
/// # Safety
/// `bath` must point to a value and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_cat_purity(
    x0: f64,
    p0: f64,
    r0: f64,
    theta: f64,
    bath: *const CvdecBath,
    t: f64,
    out: *mut f64,
) -> CvdecStatus {
    guard(|| {
        let cat = CatState::new([x0, p0], r0, theta)?;
        let v = cat_purity_t(&cat, &bath_of(bath)?, t)?;
        write(out, v, "out")
    })
}

/// Purity of (|0⟩ + e^{iϑ}|1⟩)/√2 after time t.
///
/// # Safety
/// `bath` must point to a value and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_psi01_purity(vartheta: f64, bath: *const CvdecBath, t: f64, out: *mut f64) -> CvdecStatus {
    guard(|| {
        let v = psi01_purity_t(vartheta, &bath_of(bath)?, t)?;
        write(out, v, "out")
    })
}

/// Time ln(1 + μ∞)/γ after which every state has a positive Wigner function
/// in a thermal bath.
///
/// # Safety
/// `bath` must point to a value and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn cvdec_t_nc(bath: *const CvdecBath, out: *mut f64) -> CvdecStatus {
    guard(|| {
        let v = t_nc(&bath_of(bath)?)?;
        write(out, v, "out")
    })
}
