//! C ABI for `qmckay`.
//!
//! Groups are opaque handles. Reports come back as NUL-terminated JSON strings
//! owned by the library; release them with `qmckay_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use qmckay::cli::{self, CliConfig, Command, Format};
use qmckay::grouprep::{GroupSpec, McKayData};
use qmckay::gwtheory::{bps_table, gw_genus0, BpsTable, CurveClass};
use qmckay::numeric::Precision;
use qmckay::Error;

/// Status codes. The nonzero values below 5 match the CLI exit codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QmckayStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidArgument = 2,
    UnsupportedGroup = 3,
    Internal = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Opaque group handle.
pub struct QmckayGroup {
    spec: GroupSpec,
    data: McKayData,
    bps: BpsTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QmckayStatus {
    match cli::exit_code(e) {
        3 => QmckayStatus::UnsupportedGroup,
        4 => QmckayStatus::Internal,
        _ => QmckayStatus::InvalidArgument,
    }
}

fn guard<F: FnOnce() -> Result<(), (QmckayStatus, String)>>(f: F) -> QmckayStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmckayStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside qmckay".into());
            QmckayStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (QmckayStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QmckayStatus, String) {
    (QmckayStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QmckayStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QmckayStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_json(out: *mut *mut c_char, s: String) -> Result<(), (QmckayStatus, String)> {
    let c = CString::new(s).map_err(|_| (QmckayStatus::Internal, "report contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn qmckay_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a group from `C:k`, `D:m`, `T`, `O`, `I` or an ADE label such as `D5`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qmckay_group_new(
    spec: *const c_char,
    precision_digits: u32,
    out: *mut *mut QmckayGroup,
) -> QmckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec: GroupSpec = read_str(spec, "spec")?.parse().map_err(lib_err)?;
        let digits = if precision_digits == 0 {
            Precision::DEFAULT_DIGITS
        } else {
            precision_digits
        };
        let data = McKayData::with_precision(spec, Precision::digits(digits)).map_err(lib_err)?;
        let bps = bps_table(&data);
        *out = Box::into_raw(Box::new(QmckayGroup { spec, data, bps }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from `qmckay_group_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qmckay_group_free(group: *mut QmckayGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of G.
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qmckay_group_order(group: *const QmckayGroup) -> usize {
    group.as_ref().map_or(0, |g| g.data.group.order)
}

/// Number of curve-class coordinates (nontrivial irreps of G).
///
/// # Safety
/// `group` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qmckay_group_class_rank(group: *const QmckayGroup) -> usize {
    group.as_ref().map_or(0, |g| g.bps.rank())
}

/// Genus-zero GW invariant of the class `coefficients` (length `len`) as a reduced fraction.
///
/// # Safety
/// `group` must be a live handle, `coefficients` must point to `len` integers,
/// `numerator` and `denominator` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qmckay_gw_genus0(
    group: *const QmckayGroup,
    coefficients: *const i64,
    len: usize,
    numerator: *mut i64,
    denominator: *mut i64,
) -> QmckayStatus {
    guard(|| {
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        if coefficients.is_null() || numerator.is_null() || denominator.is_null() {
            return Err(null("argument"));
        }
        if len != g.bps.rank() {
            return Err((
                QmckayStatus::InvalidArgument,
                format!("class has {len} entries, expected {}", g.bps.rank()),
            ));
        }
        let beta = CurveClass(std::slice::from_raw_parts(coefficients, len).to_vec());
        let v = gw_genus0(&g.bps, &beta).map_err(lib_err)?;
        let conv = |x: &BigInt| -> Result<i64, (QmckayStatus, String)> {
            i64::try_from(x).map_err(|_| (QmckayStatus::Internal, "value does not fit in 64 bits".to_string()))
        };
        *numerator = conv(v.numer())?;
        *denominator = conv(v.denom())?;
        Ok(())
    })
}

/// Runs one report (`roots`, `group`, `bps`, `gw`, `partition`, `dt`, `intersect`,
/// `crc`, `verify`) and returns it as JSON. `verify` returns
/// `QMCKAY_STATUS_VERIFICATION_FAILED` with the report still written when a check fails.
///
/// # Safety
/// `group` must be a live handle, `command` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qmckay_report_json(
    group: *const QmckayGroup,
    command: *const c_char,
    max_q_degree: u32,
    q_series_degree: u32,
    lambda_order: i32,
    out: *mut *mut c_char,
) -> QmckayStatus {
    let mut failed = false;
    let status = guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let cmd = match read_str(command, "command")? {
            "roots" => Command::Roots,
            "group" => Command::Group,
            "bps" => Command::Bps,
            "gw" => Command::Gw,
            "partition" => Command::Partition,
            "dt" => Command::Dt,
            "intersect" => Command::Intersect,
            "crc" => Command::Crc { degree: 5 },
            "verify" => Command::Verify,
            other => return Err((QmckayStatus::InvalidArgument, format!("unknown command {other:?}"))),
        };
        let config = CliConfig {
            group: g.spec.to_string(),
            max_q_degree,
            q_series_degree,
            lambda_order,
            precision: g.data.group.precision.decimal_digits(),
            format: Format::Json,
            output: None,
        };
        let report = cli::execute(&cmd, &config).map_err(lib_err)?;
        failed = !report.passed;
        write_json(out, report.render(Format::Json).map_err(lib_err)?)
    });
    if status == QmckayStatus::Ok && failed {
        set_error("verification failed".into());
        QmckayStatus::VerificationFailed
    } else {
        status
    }
}

/// BPS table as JSON: `[{"class": [...], "n0": "p/q", "fiber_size": n}, ...]`.
///
/// # Safety
/// `group` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qmckay_bps_json(group: *const QmckayGroup, out: *mut *mut c_char) -> QmckayStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let g = group.as_ref().ok_or_else(|| null("group"))?;
        let s = serde_json::to_string(&g.bps.entries).map_err(|e| (QmckayStatus::Internal, e.to_string()))?;
        write_json(out, s)
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qmckay_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
