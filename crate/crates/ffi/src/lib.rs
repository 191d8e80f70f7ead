//! C ABI over `cubedom`.
//!
//! Certificates and solve reports cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns a [`CubedomStatus`]; on failure the message is available from
//! [`cubedom_last_error_message`] on the same thread. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`cubedom_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use cubedom::experiments::conjecture_main_term;
use cubedom::solver::branch_and_bound_gamma_with_workers;
use cubedom::{
    binomial, brute_force_gamma, counting_lower_bound, graph_stats, greedy_dominate,
    theorem1_construct, theorem2_construct, verify_certificate, verify_structural,
    DominationCertificate, Error, LevelGraphSpec, SolveReport, StructuralVerdict,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubedomStatus {
    Ok = 0,
    InvalidParameters = 1,
    InvalidVertex = 2,
    OutOfRange = 3,
    InvalidParts = 4,
    InvalidInput = 5,
    Overflow = 6,
    TooLarge = 7,
    BudgetExceeded = 8,
    Internal = 9,
    NullPointer = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubedomVerdict {
    Verified = 0,
    Refuted = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CubedomGraphStats {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub upper_degree: u64,
    pub lower_degree: u64,
}

/// Opaque certificate handle.
pub struct CubedomCertificate(DominationCertificate);

/// Opaque solve report handle.
pub struct CubedomReport(SolveReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CubedomStatus {
    match e {
        Error::InvalidParameters(_) => CubedomStatus::InvalidParameters,
        Error::InvalidVertex(_) => CubedomStatus::InvalidVertex,
        Error::OutOfRange(_) => CubedomStatus::OutOfRange,
        Error::InvalidParts(_) => CubedomStatus::InvalidParts,
        Error::InvalidInput(_) => CubedomStatus::InvalidInput,
        Error::Overflow { .. } => CubedomStatus::Overflow,
        Error::TooLarge { .. } => CubedomStatus::TooLarge,
        Error::BudgetExceeded(_) => CubedomStatus::BudgetExceeded,
        Error::Internal(_) => CubedomStatus::Internal,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> CubedomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CubedomStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            CubedomStatus::NullPointer
        }
        Err(_) => {
            set_error("panic inside cubedom".into());
            CubedomStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cubedom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_binomial(n: u32, k: u32, out: *mut u64) -> CubedomStatus {
    guard(|| write_out(out, binomial(n, k)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_graph_stats(
    n: u32,
    k: u32,
    l: u32,
    out: *mut CubedomGraphStats,
) -> CubedomStatus {
    guard(|| {
        let s = graph_stats(&LevelGraphSpec::new(n, k, l)?)?;
        let stats = CubedomGraphStats {
            vertex_count: s.vertex_count,
            edge_count: s.edge_count,
            upper_degree: s.upper_degree,
            lower_degree: s.lower_degree,
        };
        write_out(out, stats, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_counting_lower_bound(
    n: u32,
    k: u32,
    l: u32,
    out: *mut u64,
) -> CubedomStatus {
    guard(|| write_out(out, counting_lower_bound(&LevelGraphSpec::new(n, k, l)?)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_conjecture_main_term(n: u32, k: u32, out: *mut f64) -> CubedomStatus {
    guard(|| write_out(out, conjecture_main_term(n, k)?, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_theorem1_construct(
    n: u32,
    k: u32,
    out: *mut *mut CubedomCertificate,
) -> CubedomStatus {
    guard(|| {
        let (_, cert) = theorem1_construct(n, k)?;
        write_out(out, boxed(CubedomCertificate(cert)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_theorem2_construct(
    n: u32,
    out: *mut *mut CubedomCertificate,
) -> CubedomStatus {
    guard(|| write_out(out, boxed(CubedomCertificate(theorem2_construct(n)?)), "out"))
}

/// Parses the certificate JSON format written by `cubedom construct`.
#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_from_json(
    json: *const c_char,
    out: *mut *mut CubedomCertificate,
) -> CubedomStatus {
    guard(|| {
        if json.is_null() {
            return Err(Fail::Null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let cert = DominationCertificate::from_json(text)?;
        write_out(out, boxed(CubedomCertificate(cert)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_to_json(
    cert: *const CubedomCertificate,
    out: *mut *mut c_char,
) -> CubedomStatus {
    guard(|| {
        let cert = borrow(cert, "cert")?;
        write_out(out, c_string(cert.0.to_json()), "out")
    })
}

/// Number of members; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_size(cert: *const CubedomCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.len())
}

/// Enumerative check. `witness_json`, when non-null, receives the first
/// undominated vertex as JSON, or null when verified.
#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_verify(
    cert: *const CubedomCertificate,
    verified: *mut bool,
    witness_json: *mut *mut c_char,
) -> CubedomStatus {
    guard(|| {
        let cert = borrow(cert, "cert")?;
        let v = verify_certificate(&cert.0)?;
        if !witness_json.is_null() {
            let w = v.witness.map_or(ptr::null_mut(), |w| {
                c_string(serde_json::to_string(&w).expect("vertex serializes"))
            });
            witness_json.write(w);
        }
        write_out(verified, v.verified, "verified")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_verify_structural(
    cert: *const CubedomCertificate,
    verdict: *mut CubedomVerdict,
) -> CubedomStatus {
    guard(|| {
        let cert = borrow(cert, "cert")?;
        let v = match verify_structural(&cert.0)? {
            StructuralVerdict::Verified => CubedomVerdict::Verified,
            StructuralVerdict::Refuted { .. } => CubedomVerdict::Refuted,
            StructuralVerdict::Inconclusive => CubedomVerdict::Inconclusive,
        };
        write_out(verdict, v, "verdict")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_certificate_free(cert: *mut CubedomCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Branch and bound. Running out of `node_budget` is not an error: the
/// report is returned with `proven_optimal == false`.
#[no_mangle]
pub unsafe extern "C" fn cubedom_exact(
    n: u32,
    k: u32,
    l: u32,
    node_budget: u64,
    workers: u32,
    out: *mut *mut CubedomReport,
) -> CubedomStatus {
    guard(|| {
        let spec = LevelGraphSpec::new(n, k, l)?;
        let r = branch_and_bound_gamma_with_workers(&spec, node_budget, workers.max(1) as usize)?;
        write_out(out, boxed(CubedomReport(r)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_greedy(
    n: u32,
    k: u32,
    l: u32,
    out: *mut *mut CubedomReport,
) -> CubedomStatus {
    guard(|| {
        let r = greedy_dominate(&LevelGraphSpec::new(n, k, l)?)?;
        write_out(out, boxed(CubedomReport(r)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_brute_force(
    n: u32,
    k: u32,
    l: u32,
    max_size: u64,
    out: *mut *mut CubedomReport,
) -> CubedomStatus {
    guard(|| {
        let r = brute_force_gamma(&LevelGraphSpec::new(n, k, l)?, max_size)?;
        write_out(out, boxed(CubedomReport(r)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_value(r: *const CubedomReport, out: *mut u64) -> CubedomStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.value, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_lower_bound(
    r: *const CubedomReport,
    out: *mut u64,
) -> CubedomStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.lower_bound, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_proven_optimal(
    r: *const CubedomReport,
    out: *mut bool,
) -> CubedomStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.proven_optimal, "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_nodes_explored(
    r: *const CubedomReport,
    out: *mut u64,
) -> CubedomStatus {
    guard(|| write_out(out, borrow(r, "report")?.0.nodes_explored, "out"))
}

/// Copies the witness into a new certificate handle.
#[no_mangle]
pub unsafe extern "C" fn cubedom_report_witness(
    r: *const CubedomReport,
    out: *mut *mut CubedomCertificate,
) -> CubedomStatus {
    guard(|| {
        let w = borrow(r, "report")?.0.witness.clone();
        write_out(out, boxed(CubedomCertificate(w)), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_to_json(
    r: *const CubedomReport,
    out: *mut *mut c_char,
) -> CubedomStatus {
    guard(|| {
        let r = borrow(r, "report")?;
        write_out(out, c_string(serde_json::to_string(&r.0).expect("report serializes")), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn cubedom_report_free(r: *mut CubedomReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
