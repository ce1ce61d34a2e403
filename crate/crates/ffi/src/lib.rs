//! C ABI for the domcheck toolkit: opaque matrix and map handles, status
//! codes, and flat buffers of interleaved re/im doubles. The header is
//! generated by cbindgen into include/domcheck.h at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};

use domcheck_core::decompose::{check_decomposable, Decomposability};
use domcheck_core::eig::{is_psd, operator_norm};
use domcheck_core::majorization::{singular_spectrum, submajorizes, transfer_certificate};
use domcheck_core::maps::{check_cp, dominates, BuiltinMap, DominationOrder, SuperOperator};
use domcheck_core::matrix::ComplexMatrix;
use domcheck_core::seesaw::{check_k_positive, check_positive, PositivityVerdict};
use domcheck_core::{Error, ToleranceConfig};

/// Opaque dense complex matrix handle.
pub struct DcMatrix(ComplexMatrix);

/// Opaque linear-map handle.
pub struct DcMap(SuperOperator);

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    NotPsd = 5,
    NoConvergence = 6,
    NotSubmajorized = 7,
    NotMember = 8,
    BufferTooSmall = 9,
    InternalError = 10,
}

/// Three-way verdict for positivity-style checks.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcVerdict {
    CertifiedPass = 0,
    HeuristicPass = 1,
    Violated = 2,
    Inconclusive = 3,
}

/// Plain-old-data tolerance configuration; obtain defaults from
/// dc_config_default and adjust fields as needed.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DcConfig {
    pub tol_psd: f64,
    pub tol_eig: f64,
    pub tol_herm: f64,
    pub tol_cert: f64,
    pub max_iters: u64,
    pub restarts: u64,
    pub seed: u64,
}

impl DcConfig {
    fn to_core(self) -> ToleranceConfig {
        ToleranceConfig {
            tol_psd: self.tol_psd,
            tol_eig: self.tol_eig,
            tol_herm: self.tol_herm,
            tol_cert: self.tol_cert,
            max_iters: self.max_iters as usize,
            restarts: (self.restarts as usize).max(1),
            seed: self.seed,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

fn status_of(err: &Error) -> DcStatus {
    match err {
        Error::NotHermitian { .. } => DcStatus::NotHermitian,
        Error::NotPsd { .. } => DcStatus::NotPsd,
        Error::NoConvergence { .. } => DcStatus::NoConvergence,
        Error::DimensionMismatch(_) => DcStatus::DimensionMismatch,
        Error::NotSubmajorized => DcStatus::NotSubmajorized,
        Error::NotMember => DcStatus::NotMember,
        Error::BadK { .. } | Error::BadGauge(_) | Error::BadPartition(_) | Error::BadRange(_) => {
            DcStatus::InvalidArgument
        }
        Error::InfeasibleParameters(_) | Error::BadThreshold { .. } | Error::UnknownId(_) => {
            DcStatus::InvalidArgument
        }
        _ => DcStatus::InternalError,
    }
}

fn fail(err: &Error) -> DcStatus {
    set_error(err.to_string());
    status_of(err)
}

fn config_or_default(cfg: *const DcConfig) -> ToleranceConfig {
    if cfg.is_null() {
        ToleranceConfig::default()
    } else {
        unsafe { (*cfg).to_core() }
    }
}

/// Default tolerances and budgets.
#[no_mangle]
pub extern "C" fn dc_config_default() -> DcConfig {
    let cfg = ToleranceConfig::default();
    DcConfig {
        tol_psd: cfg.tol_psd,
        tol_eig: cfg.tol_eig,
        tol_herm: cfg.tol_herm,
        tol_cert: cfg.tol_cert,
        max_iters: cfg.max_iters as u64,
        restarts: cfg.restarts as u64,
        seed: cfg.seed,
    }
}

/// Copies the most recent error message on this thread into `buffer`
/// (NUL-terminated, truncated to `len` bytes). Returns the full length.
///
/// # Safety
/// `buffer` must point to `len` writable bytes, or be NULL (query mode).
#[no_mangle]
pub unsafe extern "C" fn dc_last_error_message(buffer: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes();
        if !buffer.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer as *mut u8, n);
                *buffer.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Creates a matrix from row-major interleaved (re, im) doubles of length
/// 2 * rows * cols.
///
/// # Safety
/// `entries` must point to 2*rows*cols doubles; `out` must be a valid
/// destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_new(
    rows: usize,
    cols: usize,
    entries: *const f64,
    out: *mut *mut DcMatrix,
) -> DcStatus {
    if entries.is_null() || out.is_null() {
        set_error("null pointer");
        return DcStatus::NullPointer;
    }
    if rows == 0 || cols == 0 {
        set_error("dimensions must be positive");
        return DcStatus::InvalidArgument;
    }
    let slice = unsafe { std::slice::from_raw_parts(entries, 2 * rows * cols) };
    let m = ComplexMatrix::from_fn(rows, cols, |i, j| {
        let k = 2 * (i * cols + j);
        num_complex::Complex64::new(slice[k], slice[k + 1])
    });
    unsafe { *out = Box::into_raw(Box::new(DcMatrix(m))) };
    DcStatus::Ok
}

/// # Safety
/// `out` must be a valid destination for one pointer.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_identity(n: usize, out: *mut *mut DcMatrix) -> DcStatus {
    if out.is_null() {
        return DcStatus::NullPointer;
    }
    if n == 0 {
        set_error("dimension must be positive");
        return DcStatus::InvalidArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(DcMatrix(ComplexMatrix::identity(n)))) };
    DcStatus::Ok
}

/// # Safety
/// `m` must be a pointer previously returned by a dc_matrix constructor and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_free(m: *mut DcMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// # Safety
/// `m` must be a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_rows(m: *const DcMatrix) -> usize {
    if m.is_null() { 0 } else { unsafe { (*m).0.rows() } }
}

/// # Safety
/// `m` must be a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_cols(m: *const DcMatrix) -> usize {
    if m.is_null() { 0 } else { unsafe { (*m).0.cols() } }
}

/// Copies row-major interleaved entries into `buffer` (2*rows*cols doubles).
///
/// # Safety
/// `m` must be a live matrix handle; `buffer` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn dc_matrix_entries(m: *const DcMatrix, buffer: *mut f64, len: usize) -> DcStatus {
    if m.is_null() || buffer.is_null() {
        return DcStatus::NullPointer;
    }
    let matrix = unsafe { &(*m).0 };
    let needed = 2 * matrix.rows() * matrix.cols();
    if len < needed {
        set_error(format!("buffer holds {len} doubles, need {needed}"));
        return DcStatus::BufferTooSmall;
    }
    let out = unsafe { std::slice::from_raw_parts_mut(buffer, needed) };
    for (k, z) in matrix.data().iter().enumerate() {
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
    DcStatus::Ok
}

/// Singular values, non-increasing; writes min(len, count) values and stores
/// the true count in `written`.
///
/// # Safety
/// `m` must be a live matrix handle; `buffer` must hold `len` doubles;
/// `written` must be a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_singular_values(
    m: *const DcMatrix,
    buffer: *mut f64,
    len: usize,
    written: *mut usize,
) -> DcStatus {
    if m.is_null() || buffer.is_null() || written.is_null() {
        return DcStatus::NullPointer;
    }
    let spectrum = singular_spectrum(unsafe { &(*m).0 });
    let values = spectrum.values();
    let n = values.len().min(len);
    let out = unsafe { std::slice::from_raw_parts_mut(buffer, n) };
    out.copy_from_slice(&values[..n]);
    unsafe { *written = values.len() };
    if n < values.len() { DcStatus::BufferTooSmall } else { DcStatus::Ok }
}

/// # Safety
/// `m` must be a live matrix handle; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_operator_norm(m: *const DcMatrix, out: *mut f64) -> DcStatus {
    if m.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    unsafe { *out = operator_norm(&(*m).0) };
    DcStatus::Ok
}

/// PSD test with relative threshold; stores the verdict and the minimal
/// eigenvalue.
///
/// # Safety
/// `m` must be a live matrix handle; `cfg` NULL or valid; outputs valid.
#[no_mangle]
pub unsafe extern "C" fn dc_is_psd(
    m: *const DcMatrix,
    cfg: *const DcConfig,
    out_psd: *mut bool,
    out_min_eigenvalue: *mut f64,
) -> DcStatus {
    if m.is_null() || out_psd.is_null() || out_min_eigenvalue.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    match is_psd(unsafe { &(*m).0 }, &config) {
        Ok(v) => {
            unsafe {
                *out_psd = v.psd;
                *out_min_eigenvalue = v.min_eigenvalue;
            }
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Does the spectrum of `a` submajorize the spectrum of `b`?
///
/// # Safety
/// `a` and `b` must be live matrix handles; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_submajorizes(
    a: *const DcMatrix,
    b: *const DcMatrix,
    cfg: *const DcConfig,
    out: *mut bool,
) -> DcStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    let sa = singular_spectrum(unsafe { &(*a).0 });
    let sb = singular_spectrum(unsafe { &(*b).0 });
    unsafe { *out = submajorizes(&sa, &sb, &config) };
    DcStatus::Ok
}

/// Doubly substochastic transfer matrix with D mu_a = mu_b, returned as a
/// real matrix handle.
///
/// # Safety
/// `a` and `b` must be live matrix handles; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_transfer_certificate(
    a: *const DcMatrix,
    b: *const DcMatrix,
    cfg: *const DcConfig,
    out: *mut *mut DcMatrix,
) -> DcStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    let sa = singular_spectrum(unsafe { &(*a).0 });
    let sb = singular_spectrum(unsafe { &(*b).0 });
    match transfer_certificate(&sa, &sb, &config) {
        Ok(d) => {
            let n = d.dim();
            let m = ComplexMatrix::from_fn(n, n, |i, j| {
                num_complex::Complex64::new(d.entries()[i][j], 0.0)
            });
            unsafe { *out = Box::into_raw(Box::new(DcMatrix(m))) };
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Builds a named map: "identity", "transpose", "trace_times_identity",
/// "symmetrization" (all need `dim`), or "stormer_U" / "stormer_V" /
/// "stormer_W" (3x3, `dim` ignored).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_map_new_builtin(
    name: *const c_char,
    dim: usize,
    out: *mut *mut DcMap,
) -> DcStatus {
    if name.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    let name = match unsafe { CStr::from_ptr(name) }.to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("builtin name is not valid UTF-8");
            return DcStatus::InvalidArgument;
        }
    };
    if dim == 0 {
        set_error("dimension must be positive");
        return DcStatus::InvalidArgument;
    }
    let builtin = match name {
        "identity" => BuiltinMap::Identity { dim },
        "transpose" => BuiltinMap::Transpose { dim },
        "trace_times_identity" => BuiltinMap::TraceTimesIdentity { dim },
        "symmetrization" => BuiltinMap::Symmetrization { dim },
        "stormer_U" => BuiltinMap::StormerU,
        "stormer_V" => BuiltinMap::StormerV,
        "stormer_W" => BuiltinMap::StormerW,
        other => {
            set_error(format!("unknown builtin '{other}'"));
            return DcStatus::InvalidArgument;
        }
    };
    unsafe { *out = Box::into_raw(Box::new(DcMap(SuperOperator::builtin(builtin)))) };
    DcStatus::Ok
}

/// Builds a map from `count` Kraus elements.
///
/// # Safety
/// `elements` must point to `count` live matrix handles; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dc_map_new_kraus(
    elements: *const *const DcMatrix,
    count: usize,
    out: *mut *mut DcMap,
) -> DcStatus {
    if elements.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    let handles = unsafe { std::slice::from_raw_parts(elements, count) };
    let mut kraus = Vec::with_capacity(count);
    for &h in handles {
        if h.is_null() {
            set_error("null kraus element");
            return DcStatus::NullPointer;
        }
        kraus.push(unsafe { (*h).0.clone() });
    }
    match SuperOperator::from_kraus(kraus) {
        Ok(map) => {
            unsafe { *out = Box::into_raw(Box::new(DcMap(map))) };
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Builds a map from its Choi matrix (size dim_in*dim_out square).
///
/// # Safety
/// `choi` must be a live matrix handle; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_map_new_choi(
    choi: *const DcMatrix,
    dim_in: usize,
    dim_out: usize,
    out: *mut *mut DcMap,
) -> DcStatus {
    if choi.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    match SuperOperator::from_choi(unsafe { (*choi).0.clone() }, dim_in, dim_out) {
        Ok(map) => {
            unsafe { *out = Box::into_raw(Box::new(DcMap(map))) };
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// # Safety
/// `m` must be a pointer previously returned by a dc_map constructor and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_map_free(m: *mut DcMap) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Applies the map to a matrix, producing a fresh matrix handle.
///
/// # Safety
/// `map` and `a` must be live handles; `out` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_map_apply(
    map: *const DcMap,
    a: *const DcMatrix,
    out: *mut *mut DcMatrix,
) -> DcStatus {
    if map.is_null() || a.is_null() || out.is_null() {
        return DcStatus::NullPointer;
    }
    match unsafe { (*map).0.apply(&(*a).0) } {
        Ok(m) => {
            unsafe { *out = Box::into_raw(Box::new(DcMatrix(m))) };
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Complete positivity via the Choi criterion.
///
/// # Safety
/// `map` must be a live handle; outputs valid destinations.
#[no_mangle]
pub unsafe extern "C" fn dc_check_cp(
    map: *const DcMap,
    cfg: *const DcConfig,
    out_cp: *mut bool,
    out_min_choi_eigenvalue: *mut f64,
) -> DcStatus {
    if map.is_null() || out_cp.is_null() || out_min_choi_eigenvalue.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    match check_cp(unsafe { &(*map).0 }, &config) {
        Ok(r) => {
            unsafe {
                *out_cp = r.cp;
                *out_min_choi_eigenvalue = r.min_choi_eigenvalue;
            }
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

fn verdict_of(v: &PositivityVerdict) -> (DcVerdict, f64) {
    match v {
        PositivityVerdict::Certified { .. } => (DcVerdict::CertifiedPass, 0.0),
        PositivityVerdict::Heuristic { best_value, .. } => (DcVerdict::HeuristicPass, *best_value),
        PositivityVerdict::Violated { certificate } => (DcVerdict::Violated, certificate.value()),
    }
}

/// Positivity of the map (see-saw over product vectors when no structural
/// rule applies). `out_value` carries the best or violating value.
///
/// # Safety
/// `map` must be a live handle; outputs valid destinations.
#[no_mangle]
pub unsafe extern "C" fn dc_check_positive(
    map: *const DcMap,
    cfg: *const DcConfig,
    out_verdict: *mut DcVerdict,
    out_value: *mut f64,
) -> DcStatus {
    if map.is_null() || out_verdict.is_null() || out_value.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    match check_positive(unsafe { &(*map).0 }, &config) {
        Ok(v) => {
            let (verdict, value) = verdict_of(&v);
            unsafe {
                *out_verdict = verdict;
                *out_value = value;
            }
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// k-positivity; k = min(dim_in, dim_out) is complete positivity.
///
/// # Safety
/// `map` must be a live handle; outputs valid destinations.
#[no_mangle]
pub unsafe extern "C" fn dc_check_k_positive(
    map: *const DcMap,
    k: usize,
    cfg: *const DcConfig,
    out_verdict: *mut DcVerdict,
    out_value: *mut f64,
) -> DcStatus {
    if map.is_null() || out_verdict.is_null() || out_value.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    match check_k_positive(unsafe { &(*map).0 }, k, &config) {
        Ok(v) => {
            let (verdict, value) = verdict_of(&v);
            unsafe {
                *out_verdict = verdict;
                *out_value = value;
            }
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Decomposability: CertifiedPass with the pair residual, Violated with the
/// PPT-witness pairing, or Inconclusive with the best residual.
///
/// # Safety
/// `map` must be a live handle; outputs valid destinations.
#[no_mangle]
pub unsafe extern "C" fn dc_check_decomposable(
    map: *const DcMap,
    cfg: *const DcConfig,
    out_verdict: *mut DcVerdict,
    out_value: *mut f64,
) -> DcStatus {
    if map.is_null() || out_verdict.is_null() || out_value.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    match check_decomposable(unsafe { &(*map).0 }, &config) {
        Ok(v) => {
            let (verdict, value) = match &v {
                Decomposability::Decomposable { certificate } => {
                    (DcVerdict::CertifiedPass, certificate.value())
                }
                Decomposability::NonDecomposable { certificate } => {
                    (DcVerdict::Violated, certificate.value())
                }
                Decomposability::Inconclusive { certificate } => {
                    (DcVerdict::Inconclusive, certificate.value())
                }
            };
            unsafe {
                *out_verdict = verdict;
                *out_value = value;
            }
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Domination 0 <= T <= S; `order` 0 = positive, 1 = complete.
///
/// # Safety
/// `s` and `t` must be live handles; `out_dominated` a valid destination.
#[no_mangle]
pub unsafe extern "C" fn dc_dominates(
    s: *const DcMap,
    t: *const DcMap,
    order: u32,
    cfg: *const DcConfig,
    out_dominated: *mut bool,
) -> DcStatus {
    if s.is_null() || t.is_null() || out_dominated.is_null() {
        return DcStatus::NullPointer;
    }
    let config = config_or_default(cfg);
    let ord = if order == 0 { DominationOrder::Positive } else { DominationOrder::Complete };
    match dominates(unsafe { &(*s).0 }, unsafe { &(*t).0 }, ord, &config) {
        Ok(report) => {
            unsafe { *out_dominated = report.dominated() };
            DcStatus::Ok
        }
        Err(e) => fail(&e),
    }
}
