//! C ABI over the scheduling engine.
//!
//! Conventions:
//! - handles (`TropflowShop`, `TropflowInstance`) are opaque and owned by
//!   the caller through the matching `_free` function;
//! - every fallible call returns a [`TropflowStatus`]; on anything other
//!   than `OK`, [`tropflow_last_error`] holds a message for the calling
//!   thread until its next API call;
//! - strings are NUL-terminated UTF-8; schedules are 1-based type ids.
//!
//! All entry points catch panics and turn them into
//! `TROPFLOW_STATUS_PANIC` instead of unwinding across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use tropflow::bakery::{bakery_makespan, BakeryConfig, Schedule};
use tropflow::search::{exhaustive_search, SearchError, SearchOptions};
use tropflow::sldi::{dense_makespan, MakespanResult, Method, SldiInstance};
use tropflow::ExtReal;

/// Result of an API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TropflowStatus {
    Ok = 0,
    InvalidArgument = 1,
    /// The system has no consistent trajectory.
    Infeasible = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    /// Feasible, but the last event is unreachable from the first; the
    /// makespan output is set to negative infinity.
    Decoupled = 5,
    Panic = 6,
}

/// Solver selection.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TropflowMethod {
    Dense = 0,
    Block = 1,
    Fast = 2,
    Oracle = 3,
}

impl From<TropflowMethod> for Method {
    fn from(m: TropflowMethod) -> Method {
        match m {
            TropflowMethod::Dense => Method::Dense,
            TropflowMethod::Block => Method::Block,
            TropflowMethod::Fast => Method::Fast,
            TropflowMethod::Oracle => Method::Oracle,
        }
    }
}

/// Opaque shop configuration handle.
pub struct TropflowShop {
    config: BakeryConfig,
}

/// Opaque raw-instance handle.
pub struct TropflowInstance {
    instance: SldiInstance,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: TropflowStatus, message: &str) -> TropflowStatus {
    set_error(message);
    status
}

/// Message for the last non-OK status on this thread. Never null; the
/// pointer stays valid until the next tropflow call on the same thread.
#[no_mangle]
pub extern "C" fn tropflow_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn guarded(body: impl FnOnce() -> TropflowStatus) -> TropflowStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_owned())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            fail(TropflowStatus::Panic, &msg)
        }
    }
}

/// # Safety
/// `ptr` must be null or a NUL-terminated string.
unsafe fn utf8<'a>(ptr: *const c_char) -> Result<&'a str, TropflowStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(TropflowStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        TropflowStatus::InvalidArgument
    })
}

fn deliver(result: &MakespanResult, out_makespan: *mut f64) -> TropflowStatus {
    if !result.feasible {
        let msg = result
            .witness
            .map(|w| w.to_string())
            .unwrap_or_else(|| "infeasible".to_owned());
        return fail(TropflowStatus::Infeasible, &msg);
    }
    match result.makespan {
        ExtReal::Finite(v) => {
            unsafe { *out_makespan = v };
            TropflowStatus::Ok
        }
        ExtReal::NegInf => {
            unsafe { *out_makespan = f64::NEG_INFINITY };
            fail(TropflowStatus::Decoupled, "first and last events are decoupled")
        }
        ExtReal::PosInf => fail(TropflowStatus::Panic, "feasible result with +inf makespan"),
    }
}

/// Parse a shop document (optionally overriding quantities with a demand
/// document) into a new handle.
///
/// # Safety
/// `shop_json` must be a NUL-terminated string; `demand_json` may be null;
/// `out` must point to writable handle storage.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_parse(
    shop_json: *const c_char,
    demand_json: *const c_char,
    out: *mut *mut TropflowShop,
) -> TropflowStatus {
    guarded(|| {
        if out.is_null() {
            return fail(TropflowStatus::InvalidArgument, "null output pointer");
        }
        let shop = match utf8(shop_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let demand = if demand_json.is_null() {
            None
        } else {
            match utf8(demand_json) {
                Ok(s) => Some(s),
                Err(status) => return status,
            }
        };
        match BakeryConfig::from_json(shop, demand) {
            Ok(config) => {
                *out = Box::into_raw(Box::new(TropflowShop { config }));
                TropflowStatus::Ok
            }
            Err(e) => fail(TropflowStatus::ParseError, &e.to_string()),
        }
    })
}

/// # Safety
/// `shop` must come from [`tropflow_shop_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_free(shop: *mut TropflowShop) {
    if !shop.is_null() {
        drop(Box::from_raw(shop));
    }
}

/// Number of product types (including zero-demand types).
///
/// # Safety
/// `shop` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_type_count(shop: *const TropflowShop) -> u32 {
    if shop.is_null() {
        return 0;
    }
    (*shop).config.type_count() as u32
}

/// Total products across all types.
///
/// # Safety
/// `shop` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_total_quantity(shop: *const TropflowShop) -> u32 {
    if shop.is_null() {
        return 0;
    }
    (*shop).config.total_quantity()
}

/// Makespan of one schedule (1-based type ids, one per active type).
///
/// # Safety
/// `shop` must be a live handle, `schedule` must point to `schedule_len`
/// ids, `out_makespan` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_makespan(
    shop: *const TropflowShop,
    schedule: *const u32,
    schedule_len: usize,
    method: TropflowMethod,
    out_makespan: *mut f64,
) -> TropflowStatus {
    guarded(|| {
        if shop.is_null() || out_makespan.is_null() || (schedule.is_null() && schedule_len > 0) {
            return fail(TropflowStatus::InvalidArgument, "null argument");
        }
        let config = &(*shop).config;
        let ids = std::slice::from_raw_parts(schedule, schedule_len);
        if ids.contains(&0) {
            return fail(TropflowStatus::InvalidArgument, "type ids are 1-based");
        }
        let order = Schedule(ids.iter().map(|&id| id as usize - 1).collect());
        match bakery_makespan(config, &order, method.into(), false) {
            Ok(result) => deliver(&result, out_makespan),
            Err(e) => fail(TropflowStatus::InvalidArgument, &e.to_string()),
        }
    })
}

/// Exhaustively search the schedules of the active types.
///
/// `budget_seconds <= 0` means no budget. On success `out_schedule`
/// (capacity `tropflow_shop_type_count` entries) receives the optimal
/// order as 1-based ids, `out_schedule_len` its length, and
/// `out_makespan` the optimal makespan.
///
/// # Safety
/// `shop` must be a live handle and the out pointers writable with the
/// stated capacity.
#[no_mangle]
pub unsafe extern "C" fn tropflow_shop_optimize(
    shop: *const TropflowShop,
    method: TropflowMethod,
    max_types: u32,
    budget_seconds: f64,
    out_schedule: *mut u32,
    out_schedule_len: *mut usize,
    out_makespan: *mut f64,
) -> TropflowStatus {
    guarded(|| {
        if shop.is_null() || out_schedule.is_null() || out_schedule_len.is_null() || out_makespan.is_null() {
            return fail(TropflowStatus::InvalidArgument, "null argument");
        }
        let config = &(*shop).config;
        let opts = SearchOptions {
            method: method.into(),
            max_types: max_types as usize,
            budget: (budget_seconds > 0.0).then(|| Duration::from_secs_f64(budget_seconds)),
            ..Default::default()
        };
        let result = match exhaustive_search(config, &opts) {
            Ok(result) => result,
            Err(
                e @ (SearchError::TooManyTypes { .. }
                | SearchError::TooManySchedules { .. }
                | SearchError::BudgetExhausted { .. }),
            ) => return fail(TropflowStatus::BudgetExceeded, &e.to_string()),
            Err(e @ SearchError::InfeasibleShop { .. }) => {
                return fail(TropflowStatus::Infeasible, &e.to_string())
            }
            Err(e) => return fail(TropflowStatus::InvalidArgument, &e.to_string()),
        };
        match result.best {
            Some((schedule, makespan)) => {
                if schedule.0.len() > config.type_count() {
                    return fail(TropflowStatus::Panic, "schedule longer than type count");
                }
                for (slot, &type_id) in schedule.0.iter().enumerate() {
                    *out_schedule.add(slot) = type_id as u32 + 1;
                }
                *out_schedule_len = schedule.0.len();
                *out_makespan = makespan.as_finite().unwrap_or(0.0);
                TropflowStatus::Ok
            }
            None => fail(TropflowStatus::Infeasible, "no schedule admits a consistent trajectory"),
        }
    })
}

/// Parse a raw instance document (`{n, modes, sequence}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tropflow_instance_parse(
    json: *const c_char,
    out: *mut *mut TropflowInstance,
) -> TropflowStatus {
    guarded(|| {
        if out.is_null() {
            return fail(TropflowStatus::InvalidArgument, "null output pointer");
        }
        let text = match utf8(json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match SldiInstance::from_json(text) {
            Ok(instance) => {
                *out = Box::into_raw(Box::new(TropflowInstance { instance }));
                TropflowStatus::Ok
            }
            Err(e) => fail(TropflowStatus::ParseError, &e.to_string()),
        }
    })
}

/// # Safety
/// `instance` must come from [`tropflow_instance_parse`] and not be
/// freed twice.
#[no_mangle]
pub unsafe extern "C" fn tropflow_instance_free(instance: *mut TropflowInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Makespan of a raw instance. The fast method needs a shop structure
/// and is rejected here.
///
/// # Safety
/// `instance` must be a live handle and `out_makespan` writable.
#[no_mangle]
pub unsafe extern "C" fn tropflow_instance_makespan(
    instance: *const TropflowInstance,
    method: TropflowMethod,
    out_makespan: *mut f64,
) -> TropflowStatus {
    guarded(|| {
        if instance.is_null() || out_makespan.is_null() {
            return fail(TropflowStatus::InvalidArgument, "null argument");
        }
        let inst = &(*instance).instance;
        let result = match method {
            TropflowMethod::Dense => dense_makespan(inst, false),
            TropflowMethod::Block => tropflow::block::block_makespan_of(inst),
            TropflowMethod::Oracle => tropflow::oracle::oracle_makespan(inst),
            TropflowMethod::Fast => {
                return fail(
                    TropflowStatus::InvalidArgument,
                    "the fast solver applies to shop handles; use dense, block or oracle",
                )
            }
        };
        deliver(&result, out_makespan)
    })
}
