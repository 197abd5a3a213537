//! C ABI for nlfg-core.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_from_*`
//! functions and released with the matching `*_free`. Fallible calls return
//! an [`NlfgStatus`] code; on failure [`nlfg_last_error`] describes the
//! problem. Results come back through out-pointers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nlfg_core::analysis::{self, DistributionTable, MeasureOptions};
use nlfg_core::gf::WordVector;
use nlfg_core::nlfg::{GeneratorJson, NlfgGenerator};
use nlfg_core::oracle::{self, CountParams};
use nlfg_core::Error;

/// Status codes. Zero is success; every failure is negative.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NlfgStatus {
    Ok = 0,
    NullPointer = -1,
    InvalidSpec = -2,
    NotPrimitive = -3,
    TooLarge = -4,
    Mismatch = -5,
    Internal = -6,
    Panic = -7,
}

/// A generator: register state plus multiplier assembly.
pub struct NlfgGeneratorHandle(NlfgGenerator);

/// Full-period output counts of a generator.
pub struct NlfgDistributionHandle(DistributionTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NlfgStatus {
    match e {
        Error::NotPrimitive { .. } => NlfgStatus::NotPrimitive,
        Error::TooLarge { .. } => NlfgStatus::TooLarge,
        Error::Mismatch(_) => NlfgStatus::Mismatch,
        Error::Internal(_) => NlfgStatus::Internal,
        _ => NlfgStatus::InvalidSpec,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (NlfgStatus, String)>) -> NlfgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NlfgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside nlfg".into());
            NlfgStatus::Panic
        }
    }
}

fn core<T>(r: nlfg_core::Result<T>) -> Result<T, (NlfgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (NlfgStatus, String) {
    (NlfgStatus::NullPointer, format!("{name} is null"))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nlfg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nlfg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a generator from a JSON config (`{register, pairs | m, mode}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlfg_generator_from_json(json: *const c_char, out: *mut *mut NlfgGeneratorHandle) -> NlfgStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (NlfgStatus::InvalidSpec, "config is not UTF-8".to_string()))?;
        let cfg: GeneratorJson = core(serde_json::from_str(text).map_err(Error::from))?;
        let gen = core(cfg.build())?;
        *out = Box::into_raw(Box::new(NlfgGeneratorHandle(gen)));
        Ok(())
    })
}

/// # Safety
/// `gen` must be NULL or a handle from [`nlfg_generator_from_json`] that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nlfg_generator_free(gen: *mut NlfgGeneratorHandle) {
    if !gen.is_null() {
        drop(Box::from_raw(gen));
    }
}

/// Entries per output word (r), or 0 for a NULL handle.
///
/// # Safety
/// `gen` must be NULL or a live generator handle.
#[no_mangle]
pub unsafe extern "C" fn nlfg_generator_width(gen: *const NlfgGeneratorHandle) -> usize {
    gen.as_ref().map_or(0, |g| g.0.spec().r())
}

/// Writes the next `count` outputs, `count * r` entries, into `out` and
/// advances the generator.
///
/// # Safety
/// `gen` must be a live handle and `out` must have room for `out_len`
/// entries.
#[no_mangle]
pub unsafe extern "C" fn nlfg_generator_fill(
    gen: *mut NlfgGeneratorHandle,
    out: *mut u32,
    out_len: usize,
    count: usize,
) -> NlfgStatus {
    guard(|| {
        let g = gen.as_mut().ok_or_else(|| null("gen"))?;
        if out.is_null() && count > 0 {
            return Err(null("out"));
        }
        let r = g.0.spec().r();
        let need = count.checked_mul(r).filter(|&n| n <= out_len).ok_or_else(|| {
            (NlfgStatus::InvalidSpec, format!("{count} outputs of width {r} do not fit in {out_len} entries"))
        })?;
        if need == 0 {
            return Ok(());
        }
        let buf = std::slice::from_raw_parts_mut(out, need);
        for chunk in buf.chunks_exact_mut(r) {
            chunk.copy_from_slice(g.0.step().entries());
        }
        Ok(())
    })
}

/// Counts one full period of outputs from the generator's current state.
/// `max_states` of 0 selects the default bound; `threads` of 0 means 1.
///
/// # Safety
/// `gen` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlfg_measure(
    gen: *const NlfgGeneratorHandle,
    max_states: u64,
    threads: usize,
    out: *mut *mut NlfgDistributionHandle,
) -> NlfgStatus {
    guard(|| {
        let g = gen.as_ref().ok_or_else(|| null("gen"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = MeasureOptions {
            max_states: if max_states == 0 { analysis::DEFAULT_MAX_STATES } else { max_states },
            threads: threads.max(1),
        };
        let table = core(analysis::measure_distribution(&g.0, &opts))?;
        *out = Box::into_raw(Box::new(NlfgDistributionHandle(table)));
        Ok(())
    })
}

/// # Safety
/// `dist` must be NULL or a live handle from [`nlfg_measure`].
#[no_mangle]
pub unsafe extern "C" fn nlfg_distribution_free(dist: *mut NlfgDistributionHandle) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Number of symbols counted, or 0 for a NULL handle.
///
/// # Safety
/// `dist` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nlfg_distribution_period(dist: *const NlfgDistributionHandle) -> u64 {
    dist.as_ref().map_or(0, |d| d.0.period())
}

/// Occurrences of the word `value[0..r]`.
///
/// # Safety
/// `dist` must be a live handle, `value` must point to `r` entries and
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nlfg_distribution_count(
    dist: *const NlfgDistributionHandle,
    value: *const u32,
    r: usize,
    out: *mut u64,
) -> NlfgStatus {
    guard(|| {
        let d = dist.as_ref().ok_or_else(|| null("dist"))?;
        if value.is_null() || out.is_null() {
            return Err(null("value or out"));
        }
        let v = WordVector(std::slice::from_raw_parts(value, r).to_vec());
        core(d.0.spec().check_word(&v))?;
        *out = d.0.count(&v);
        Ok(())
    })
}

/// Checks the table against the closed forms for its own parameters and
/// stores 1 (all classes match) or 0 in `pass`.
///
/// # Safety
/// `dist` must be a live handle and `pass` valid.
#[no_mangle]
pub unsafe extern "C" fn nlfg_distribution_reconcile(dist: *const NlfgDistributionHandle, pass: *mut i32) -> NlfgStatus {
    guard(|| {
        let d = dist.as_ref().ok_or_else(|| null("dist"))?;
        if pass.is_null() {
            return Err(null("pass"));
        }
        let t = &d.0;
        let params = core(CountParams::new(t.spec().q() as u64, t.spec().r() as u32, t.l() as u32, t.m() as u32))?;
        let rec = core(analysis::reconcile(t, &params, t.mode()))?;
        *pass = i32::from(rec.pass);
        Ok(())
    })
}

fn to_u64(n: num_bigint::BigUint) -> Result<u64, (NlfgStatus, String)> {
    u64::try_from(&n).map_err(|_| (NlfgStatus::TooLarge, format!("{n} does not fit in 64 bits")))
}

/// Per-period occurrences of a word under the field-product NLFG:
/// the zero word if `zero` is nonzero, otherwise any nonzero word.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nlfg_oracle_n_proposed(q: u64, r: u32, l: u32, m: u32, zero: i32, out: *mut u64) -> NlfgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = core(CountParams::new(q, r, l, m))?;
        *out = to_u64(core(oracle::n_proposed(&p, zero != 0))?)?;
        Ok(())
    })
}

/// Per-period occurrences of a word with `kappa` nonzero entries under
/// the element-wise NLFG (`kappa` = 0 is the zero word).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nlfg_oracle_n_elementwise(q: u64, r: u32, l: u32, m: u32, kappa: u32, out: *mut u64) -> NlfgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = core(CountParams::new(q, r, l, m))?;
        *out = to_u64(core(oracle::n_elementwise_class(&p, kappa))?)?;
        Ok(())
    })
}

/// Assembly inputs (out of q^(2m)) that produce zero (`zero` nonzero) or
/// a given nonzero value.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nlfg_oracle_psi(m: u32, q: u64, zero: i32, out: *mut u64) -> NlfgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if q < 2 {
            return Err((NlfgStatus::InvalidSpec, "q must be at least 2".into()));
        }
        *out = to_u64(core(oracle::psi_m(m, q, zero != 0))?)?;
        Ok(())
    })
}
