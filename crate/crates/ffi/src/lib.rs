//! C ABI over `goldbach-lab`.
//!
//! Tables are opaque heap handles created by `*_new` and released by
//! `*_free`. Every fallible call returns a [`GlStatus`] and writes its result
//! through an out-pointer; on failure the message is kept per thread and can
//! be copied out with [`gl_last_error_message`]. Panics never cross the
//! boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use goldbach_lab::explicit_formula::{oscillating_term, psi_via_contour, ZetaZeros};
use goldbach_lab::goldbach::{
    goldbach_convolution, goldbach_direct, twin_prime_constant, GoldbachTable,
};
use goldbach_lab::progressions::large_sieve::{
    montgomery_identity, t1_check, IdentityCheck, Relation, SequenceWindow, T1Variant,
};
use goldbach_lab::sieve::{build_mangoldt_table, MangoldtTable};
use goldbach_lab::{Complex64, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NullPointer = 1,
    Capacity = 2,
    OutOfRange = 3,
    Domain = 4,
    Argument = 5,
    Precision = 6,
    Ingestion = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlMethod {
    Direct = 0,
    Convolution = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlT1Variant {
    Centered = 0,
    Plain = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlRelation {
    Equals = 0,
    Leq = 1,
}

/// g(n), G(n), J(n) and F(n) for one n.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GlGoldbachRow {
    pub g: u64,
    pub big_g: f64,
    pub j: f64,
    pub f: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlIdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub relation: GlRelation,
    pub pass: bool,
}

impl From<IdentityCheck> for GlIdentityCheck {
    fn from(c: IdentityCheck) -> Self {
        Self {
            lhs: c.lhs,
            rhs: c.rhs,
            tolerance: c.tolerance,
            relation: match c.relation {
                Relation::Equals => GlRelation::Equals,
                Relation::Leq => GlRelation::Leq,
            },
            pass: c.pass,
        }
    }
}

/// Λ and ψ up to a limit.
pub struct GlMangoldtTable(MangoldtTable);

/// Goldbach functions up to a limit.
pub struct GlGoldbachTable(GoldbachTable);

/// Zeta zero ordinates.
pub struct GlZetaZeros(ZetaZeros);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> GlStatus {
    match err {
        Error::Capacity(_) => GlStatus::Capacity,
        Error::OutOfRange { .. } => GlStatus::OutOfRange,
        Error::Domain(_) => GlStatus::Domain,
        Error::Argument(_) => GlStatus::Argument,
        Error::Precision { .. } => GlStatus::Precision,
        Error::Ingestion { .. } => GlStatus::Ingestion,
        Error::Io { .. } => GlStatus::Io,
    }
}

fn fail(status: GlStatus, message: impl Into<String>) -> GlStatus {
    set_error(message.into());
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), GlStatus>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GlStatus::Ok,
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(GlStatus::Panic, msg)
        }
    }
}

fn lib<T>(r: goldbach_lab::Result<T>) -> Result<T, GlStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, GlStatus> {
    p.as_ref()
        .ok_or_else(|| fail(GlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), GlStatus> {
    if out.is_null() {
        return Err(fail(GlStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn window(re: *const f64, im: *const f64, n: usize) -> Result<SequenceWindow, GlStatus> {
    if n == 0 {
        return Ok(SequenceWindow::zeros(0));
    }
    if re.is_null() {
        return Err(fail(GlStatus::NullPointer, "real parts are null"));
    }
    let re = std::slice::from_raw_parts(re, n);
    let values = if im.is_null() {
        re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
    } else {
        let im = std::slice::from_raw_parts(im, n);
        re.iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect()
    };
    Ok(SequenceWindow::new(values))
}

/// Copies the calling thread's last error message into `buf` (always NUL
/// terminated when `len > 0`) and returns the full message length without
/// the terminator. Returns 0 when there is no message.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn gl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_mangoldt_table_new(
    limit: u64,
    out: *mut *mut GlMangoldtTable,
) -> GlStatus {
    guard(|| {
        let t = lib(build_mangoldt_table(limit))?;
        write(out, Box::into_raw(Box::new(GlMangoldtTable(t))))
    })
}

/// # Safety
/// `table` must come from [`gl_mangoldt_table_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn gl_mangoldt_table_free(table: *mut GlMangoldtTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Table limit, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_mangoldt_table_limit(table: *const GlMangoldtTable) -> u64 {
    table.as_ref().map_or(0, |t| t.0.limit())
}

/// Λ(n).
///
/// # Safety
/// `table` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_mangoldt_lambda(
    table: *const GlMangoldtTable,
    n: u64,
    out: *mut f64,
) -> GlStatus {
    guard(|| {
        let t = deref(table, "table")?;
        if n > t.0.limit() {
            return Err(fail(
                GlStatus::OutOfRange,
                format!("n = {n} exceeds limit {}", t.0.limit()),
            ));
        }
        write(out, t.0.lambda(n as usize))
    })
}

/// ψ(x).
///
/// # Safety
/// `table` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_chebyshev_psi(
    table: *const GlMangoldtTable,
    x: f64,
    out: *mut f64,
) -> GlStatus {
    guard(|| {
        let t = deref(table, "table")?;
        write(out, lib(t.0.chebyshev_psi(x))?)
    })
}

/// ψ(x; q, a).
///
/// # Safety
/// `table` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_psi_progression(
    table: *const GlMangoldtTable,
    x: f64,
    q: u64,
    a: u64,
    out: *mut f64,
) -> GlStatus {
    guard(|| {
        let t = deref(table, "table")?;
        write(out, lib(t.0.psi_progression(x, q, a))?)
    })
}

/// φ(q).
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_euler_totient(q: u64, out: *mut u64) -> GlStatus {
    guard(|| {
        if q == 0 {
            return Err(fail(GlStatus::Argument, "totient of 0 is undefined"));
        }
        write(out, goldbach_lab::euler_totient(q))
    })
}

/// C₂ truncated at `prime_limit`, and the lower bound for the omitted tail
/// factor.
///
/// # Safety
/// Both out-pointers must be valid for one write; `tail_bound` may be null.
#[no_mangle]
pub unsafe extern "C" fn gl_twin_prime_constant(
    prime_limit: u64,
    value: *mut f64,
    tail_bound: *mut f64,
) -> GlStatus {
    guard(|| {
        let c = lib(twin_prime_constant(prime_limit))?;
        if !tail_bound.is_null() {
            tail_bound.write(c.tail_bound);
        }
        write(value, c.value)
    })
}

/// # Safety
/// `mangoldt` must be a live handle with limit at least `limit`; `out` valid
/// for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_goldbach_table_new(
    mangoldt: *const GlMangoldtTable,
    limit: u64,
    method: GlMethod,
    out: *mut *mut GlGoldbachTable,
) -> GlStatus {
    guard(|| {
        let t = deref(mangoldt, "table")?;
        let g = lib(match method {
            GlMethod::Direct => goldbach_direct(limit, &t.0),
            GlMethod::Convolution => goldbach_convolution(limit, &t.0),
        })?;
        write(out, Box::into_raw(Box::new(GlGoldbachTable(g))))
    })
}

/// # Safety
/// `table` must come from [`gl_goldbach_table_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn gl_goldbach_table_free(table: *mut GlGoldbachTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// # Safety
/// `table` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_goldbach_row(
    table: *const GlGoldbachTable,
    n: u64,
    out: *mut GlGoldbachRow,
) -> GlStatus {
    guard(|| {
        let t = &deref(table, "table")?.0;
        if n > t.limit() {
            return Err(fail(
                GlStatus::OutOfRange,
                format!("n = {n} exceeds limit {}", t.limit()),
            ));
        }
        let n = n as usize;
        write(
            out,
            GlGoldbachRow {
                g: t.g(n),
                big_g: t.big_g(n),
                j: t.j(n),
                f: t.f(n),
            },
        )
    })
}

/// The 100 zeros shipped with the library.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_zeta_zeros_bundled(out: *mut *mut GlZetaZeros) -> GlStatus {
    guard(|| {
        write(
            out,
            Box::into_raw(Box::new(GlZetaZeros(ZetaZeros::bundled()))),
        )
    })
}

/// Loads a zeros file (one ordinate per line, `#` comments).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_zeta_zeros_load(
    path: *const c_char,
    out: *mut *mut GlZetaZeros,
) -> GlStatus {
    guard(|| {
        if path.is_null() {
            return Err(fail(GlStatus::NullPointer, "path is null"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| fail(GlStatus::Argument, "path is not UTF-8"))?;
        let z = lib(ZetaZeros::load(path))?;
        write(out, Box::into_raw(Box::new(GlZetaZeros(z))))
    })
}

/// # Safety
/// `zeros` must come from a `gl_zeta_zeros_*` constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn gl_zeta_zeros_free(zeros: *mut GlZetaZeros) {
    if !zeros.is_null() {
        drop(Box::from_raw(zeros));
    }
}

/// Number of zeros, or 0 for a null handle.
///
/// # Safety
/// `zeros` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gl_zeta_zeros_len(zeros: *const GlZetaZeros) -> usize {
    zeros.as_ref().map_or(0, |z| z.0.len())
}

/// H_K(x) with the first `k` zeros.
///
/// # Safety
/// `zeros` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_oscillating_term(
    zeros: *const GlZetaZeros,
    x: f64,
    k: usize,
    out: *mut f64,
) -> GlStatus {
    guard(|| {
        let z = deref(zeros, "zeros")?;
        write(out, lib(oscillating_term(x, &z.0, k))?)
    })
}

/// Circle-mean recovery of `Σ_{2≤n≤N+1} Λ(n)`.
///
/// # Safety
/// `table` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_psi_via_contour(
    table: *const GlMangoldtTable,
    n: u64,
    samples: usize,
    out: *mut f64,
) -> GlStatus {
    guard(|| {
        let t = deref(table, "table")?;
        write(out, lib(psi_via_contour(n, samples, &t.0))?)
    })
}

/// Montgomery's formula for `a_1..a_n`; `im` may be null for real windows.
///
/// # Safety
/// `re` (and `im` unless null) must hold `n` values; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_montgomery_identity(
    q: u64,
    re: *const f64,
    im: *const f64,
    n: usize,
    out: *mut GlIdentityCheck,
) -> GlStatus {
    guard(|| {
        if q == 0 {
            return Err(fail(GlStatus::Argument, "modulus must be positive"));
        }
        let w = window(re, im, n)?;
        write(out, montgomery_identity(q as usize, &w).into())
    })
}

/// Large-sieve estimate over the moduli set `moduli[0..moduli_len]`.
///
/// # Safety
/// `moduli` must hold `moduli_len` values, `re` (and `im` unless null) `n`
/// values; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn gl_t1_check(
    moduli: *const u64,
    moduli_len: usize,
    re: *const f64,
    im: *const f64,
    n: usize,
    variant: GlT1Variant,
    out: *mut GlIdentityCheck,
) -> GlStatus {
    guard(|| {
        let m: &[u64] = if moduli_len == 0 {
            &[]
        } else if moduli.is_null() {
            return Err(fail(GlStatus::NullPointer, "moduli are null"));
        } else {
            std::slice::from_raw_parts(moduli, moduli_len)
        };
        let w = window(re, im, n)?;
        let v = match variant {
            GlT1Variant::Centered => T1Variant::Centered,
            GlT1Variant::Plain => T1Variant::Plain,
        };
        write(out, t1_check(m, &w, v).into())
    })
}
