//! Exercise the C entry points from Rust, including the error paths a C
//! caller would hit.

use std::ffi::{CStr, CString};
use std::ptr;

use tropflow::bakery::{bakery_makespan, Schedule};
use tropflow::sldi::Method;
use tropflow::synth;
use tropflow_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tropflow_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn shop_round_trip_matches_library() {
    let cfg = synth::toy_shop();
    let json = CString::new(cfg.to_json()).unwrap();
    let mut shop: *mut TropflowShop = ptr::null_mut();
    let status = unsafe { tropflow_shop_parse(json.as_ptr(), ptr::null(), &mut shop) };
    assert_eq!(status, TropflowStatus::Ok);
    assert_eq!(unsafe { tropflow_shop_type_count(shop) }, 2);
    assert_eq!(unsafe { tropflow_shop_total_quantity(shop) }, 7);

    let schedule = [2u32, 1u32];
    let expected = bakery_makespan(&cfg, &Schedule(vec![1, 0]), Method::Block, false)
        .unwrap()
        .value()
        .unwrap();
    for method in [
        TropflowMethod::Dense,
        TropflowMethod::Block,
        TropflowMethod::Fast,
        TropflowMethod::Oracle,
    ] {
        let mut makespan = f64::NAN;
        let status = unsafe {
            tropflow_shop_makespan(shop, schedule.as_ptr(), schedule.len(), method, &mut makespan)
        };
        assert_eq!(status, TropflowStatus::Ok);
        assert_eq!(makespan, expected, "{method:?}");
    }

    let mut best = [0u32; 2];
    let mut best_len = 0usize;
    let mut best_makespan = f64::NAN;
    let status = unsafe {
        tropflow_shop_optimize(
            shop,
            TropflowMethod::Fast,
            10,
            0.0,
            best.as_mut_ptr(),
            &mut best_len,
            &mut best_makespan,
        )
    };
    assert_eq!(status, TropflowStatus::Ok);
    assert_eq!(best_len, 2);
    assert!(best.iter().all(|&id| id == 1 || id == 2));
    assert!(best_makespan <= expected);

    unsafe { tropflow_shop_free(shop) };
}

#[test]
fn parse_and_argument_errors() {
    let mut shop: *mut TropflowShop = ptr::null_mut();
    let status = unsafe { tropflow_shop_parse(ptr::null(), ptr::null(), &mut shop) };
    assert_eq!(status, TropflowStatus::InvalidArgument);

    let bad = CString::new("{ not json").unwrap();
    let status = unsafe { tropflow_shop_parse(bad.as_ptr(), ptr::null(), &mut shop) };
    assert_eq!(status, TropflowStatus::ParseError);
    assert!(!last_error().is_empty());

    let cfg = synth::toy_shop();
    let json = CString::new(cfg.to_json()).unwrap();
    let status = unsafe { tropflow_shop_parse(json.as_ptr(), ptr::null(), &mut shop) };
    assert_eq!(status, TropflowStatus::Ok);

    // Zero is not a valid 1-based type id.
    let schedule = [0u32, 1u32];
    let mut makespan = 0.0;
    let status = unsafe {
        tropflow_shop_makespan(
            shop,
            schedule.as_ptr(),
            schedule.len(),
            TropflowMethod::Block,
            &mut makespan,
        )
    };
    assert_eq!(status, TropflowStatus::InvalidArgument);

    // Incomplete schedule.
    let schedule = [1u32];
    let status = unsafe {
        tropflow_shop_makespan(
            shop,
            schedule.as_ptr(),
            schedule.len(),
            TropflowMethod::Block,
            &mut makespan,
        )
    };
    assert_eq!(status, TropflowStatus::InvalidArgument);
    assert!(last_error().contains("missing"), "{}", last_error());

    unsafe { tropflow_shop_free(shop) };
}

#[test]
fn infeasible_shop_reports_status() {
    let cfg = synth::infeasible_shop();
    let json = CString::new(cfg.to_json()).unwrap();
    let mut shop: *mut TropflowShop = ptr::null_mut();
    assert_eq!(
        unsafe { tropflow_shop_parse(json.as_ptr(), ptr::null(), &mut shop) },
        TropflowStatus::Ok
    );
    let schedule = [1u32];
    let mut makespan = 0.0;
    let status = unsafe {
        tropflow_shop_makespan(shop, schedule.as_ptr(), 1, TropflowMethod::Block, &mut makespan)
    };
    assert_eq!(status, TropflowStatus::Infeasible);
    assert!(last_error().contains("circuit"), "{}", last_error());

    let mut best = [0u32; 1];
    let mut best_len = 0usize;
    let mut best_makespan = 0.0;
    let status = unsafe {
        tropflow_shop_optimize(
            shop,
            TropflowMethod::Fast,
            10,
            0.0,
            best.as_mut_ptr(),
            &mut best_len,
            &mut best_makespan,
        )
    };
    assert_eq!(status, TropflowStatus::Infeasible);
    unsafe { tropflow_shop_free(shop) };
}

#[test]
fn instance_endpoints() {
    let mut rng = {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(5)
    };
    let inst = synth::random_sldi(&mut rng, 4, 6, false);
    let json = CString::new(inst.to_json()).unwrap();
    let mut handle: *mut TropflowInstance = ptr::null_mut();
    assert_eq!(
        unsafe { tropflow_instance_parse(json.as_ptr(), &mut handle) },
        TropflowStatus::Ok
    );
    let direct = tropflow::sldi::dense_makespan(&inst, false);
    let mut makespan = f64::NAN;
    let status =
        unsafe { tropflow_instance_makespan(handle, TropflowMethod::Dense, &mut makespan) };
    match status {
        TropflowStatus::Ok => assert_eq!(Some(makespan), direct.value()),
        TropflowStatus::Infeasible => assert!(!direct.feasible),
        TropflowStatus::Decoupled => {
            assert!(direct.feasible && direct.decoupled);
            assert_eq!(makespan, f64::NEG_INFINITY);
        }
        other => panic!("unexpected status {other:?}"),
    }
    let status = unsafe { tropflow_instance_makespan(handle, TropflowMethod::Fast, &mut makespan) };
    assert_eq!(status, TropflowStatus::InvalidArgument);
    unsafe { tropflow_instance_free(handle) };

    // Two unconstrained steps: feasible but decoupled.
    let doc = r#"{
        "n": 1,
        "modes": { "free": { "a0": "-inf", "a1": "-inf", "b0": "+inf", "b1": "+inf" } },
        "sequence": ["free", "free"]
    }"#;
    let json = CString::new(doc).unwrap();
    assert_eq!(
        unsafe { tropflow_instance_parse(json.as_ptr(), &mut handle) },
        TropflowStatus::Ok
    );
    let status =
        unsafe { tropflow_instance_makespan(handle, TropflowMethod::Block, &mut makespan) };
    assert_eq!(status, TropflowStatus::Decoupled);
    assert_eq!(makespan, f64::NEG_INFINITY);
    unsafe { tropflow_instance_free(handle) };
}

#[test]
fn generated_header_covers_the_api() {
    let header = include_str!("../include/tropflow.h");
    for symbol in [
        "tropflow_last_error",
        "tropflow_shop_parse",
        "tropflow_shop_free",
        "tropflow_shop_type_count",
        "tropflow_shop_total_quantity",
        "tropflow_shop_makespan",
        "tropflow_shop_optimize",
        "tropflow_instance_parse",
        "tropflow_instance_free",
        "tropflow_instance_makespan",
        "TropflowStatus",
        "TropflowMethod",
        "struct TropflowShop",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
