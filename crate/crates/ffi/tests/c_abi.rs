use std::ffi::{CStr, CString};
use std::ptr;

use nlfg_ffi::*;

const EXAMPLE: &str = r#"{
  "register": {"spec": {"p": 2, "r": 3, "outer_poly": "x^3+x+1"}, "L": 5},
  "m": 2,
  "mode": "element-wise"
}"#;

fn generator(json: &str) -> *mut NlfgGeneratorHandle {
    let c = CString::new(json).unwrap();
    let mut gen = ptr::null_mut();
    let status = unsafe { nlfg_generator_from_json(c.as_ptr(), &mut gen) };
    assert_eq!(status, NlfgStatus::Ok);
    gen
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(nlfg_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn measure_and_reconcile() {
    let gen = generator(EXAMPLE);
    unsafe {
        assert_eq!(nlfg_generator_width(gen), 3);
        let mut dist = ptr::null_mut();
        assert_eq!(nlfg_measure(gen, 0, 2, &mut dist), NlfgStatus::Ok);
        assert_eq!(nlfg_distribution_period(dist), 32767);
        let mut n = 0u64;
        for (v, want) in [([0u32, 0, 0], 7999u64), ([0, 1, 0], 4800), ([1, 1, 0], 2880), ([1, 1, 1], 1728)] {
            assert_eq!(nlfg_distribution_count(dist, v.as_ptr(), 3, &mut n), NlfgStatus::Ok);
            assert_eq!(n, want);
        }
        assert_eq!(nlfg_distribution_count(dist, [2u32, 0, 0].as_ptr(), 3, &mut n), NlfgStatus::InvalidSpec);
        let mut pass = 0;
        assert_eq!(nlfg_distribution_reconcile(dist, &mut pass), NlfgStatus::Ok);
        assert_eq!(pass, 1);
        nlfg_distribution_free(dist);
        nlfg_generator_free(gen);
    }
}

#[test]
fn fill_matches_step_order() {
    let gen = generator(r#"{"register": {"spec": {"p": 2}, "L": 5, "taps": [1,0,1,0,0]}, "m": 2}"#);
    let mut buf = [9u32; 31];
    unsafe {
        assert_eq!(nlfg_generator_fill(gen, buf.as_mut_ptr(), buf.len(), 31), NlfgStatus::Ok);
        assert_eq!(buf.iter().filter(|&&b| b == 1).count(), 12);
        assert_eq!(nlfg_generator_fill(gen, buf.as_mut_ptr(), 4, 5), NlfgStatus::InvalidSpec);
        nlfg_generator_free(gen);
    }
}

#[test]
fn errors_and_codes() {
    unsafe {
        let mut gen = ptr::null_mut();
        assert_eq!(nlfg_generator_from_json(ptr::null(), &mut gen), NlfgStatus::NullPointer);
        let bad = CString::new(r#"{"register": {"spec": {"p": 2, "r": 3}, "L": 5}, "m": 2}"#).unwrap();
        assert_eq!(nlfg_generator_from_json(bad.as_ptr(), &mut gen), NlfgStatus::InvalidSpec);
        assert!(last_error().contains("outer_poly"));
        let not_prim =
            CString::new(r#"{"register": {"spec": {"p": 2}, "L": 4, "feedback_poly": "x^4+x^2+1"}, "m": 1}"#).unwrap();
        assert_eq!(nlfg_generator_from_json(not_prim.as_ptr(), &mut gen), NlfgStatus::Ok);
        let mut dist = ptr::null_mut();
        assert_eq!(nlfg_measure(gen, 0, 1, &mut dist), NlfgStatus::NotPrimitive);
        assert_eq!(nlfg_measure(gen, 8, 1, &mut dist), NlfgStatus::TooLarge);
        assert!(dist.is_null());
        nlfg_generator_free(gen);
        nlfg_generator_free(ptr::null_mut());
        nlfg_distribution_free(ptr::null_mut());
    }
}

#[test]
fn oracle_values() {
    let mut n = 0u64;
    unsafe {
        assert_eq!(nlfg_oracle_psi(2, 2, 0, &mut n), NlfgStatus::Ok);
        assert_eq!(n, 6);
        assert_eq!(nlfg_oracle_psi(2, 2, 1, &mut n), NlfgStatus::Ok);
        assert_eq!(n, 10);
        assert_eq!(nlfg_oracle_n_proposed(2, 3, 5, 2, 1, &mut n), NlfgStatus::Ok);
        assert_eq!(n, 4543);
        assert_eq!(nlfg_oracle_n_elementwise(2, 3, 5, 2, 3, &mut n), NlfgStatus::Ok);
        assert_eq!(n, 1728);
        assert_eq!(nlfg_oracle_n_proposed(2, 3, 5, 3, 1, &mut n), NlfgStatus::InvalidSpec);
        assert_eq!(nlfg_oracle_n_proposed(1 << 40, 4, 40, 1, 1, &mut n), NlfgStatus::TooLarge);
        let v = CStr::from_ptr(nlfg_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
