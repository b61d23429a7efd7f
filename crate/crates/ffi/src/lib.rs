//! C ABI over the enumeration library.
//!
//! Color schemes and triangles travel as opaque handles created and freed
//! here; every fallible call returns a [`MotzkinStatus`] and records a
//! human-readable message retrievable with [`motzkin_last_error`]. Counts
//! are arbitrary-precision, so they leave the library as NUL-terminated
//! decimal strings written into caller-supplied buffers: pass a null
//! buffer (or one that is too small) to learn the required size through
//! the `written` out-parameter.

use std::cell::RefCell;
use std::ffi::c_char;
use std::ptr;
use std::slice;

use motzkin_core::paths::ColorScheme;
use motzkin_core::riordan::{
    dyck_scheme, fine_scheme, motzkin_az, row_sums, triangle_from_az, Triangle,
};
use num_bigint::BigInt;

/// Outcome of a C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MotzkinStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The arguments do not describe a valid object; see
    /// `motzkin_last_error`.
    InvalidArgument = 2,
    /// The output buffer cannot hold the result; `written` holds the
    /// required size in bytes, terminator included.
    BufferTooSmall = 3,
}

/// Opaque pair of color tuples.
pub struct MotzkinScheme {
    inner: ColorScheme,
}

/// Opaque triangle of path counts.
pub struct MotzkinTriangle {
    inner: Triangle,
    sums: Vec<BigInt>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

fn fail(message: impl Into<String>) -> MotzkinStatus {
    set_last_error(message);
    MotzkinStatus::InvalidArgument
}

fn null_arg(name: &str) -> MotzkinStatus {
    set_last_error(format!("{name} must not be null"));
    MotzkinStatus::NullArgument
}

/// Copies `text` into `buf` as a NUL-terminated string.
///
/// Stores the required size (terminator included) in `written` when that
/// pointer is non-null, and only copies when the buffer is large enough.
unsafe fn write_string(
    text: &str,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    let required = text.len() + 1;
    if !written.is_null() {
        *written = required;
    }
    if buf.is_null() || buf_len < required {
        set_last_error(format!(
            "a buffer of {buf_len} bytes cannot hold the {required}-byte result"
        ));
        return MotzkinStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    MotzkinStatus::Ok
}

unsafe fn emit_scheme(
    result: Result<ColorScheme, impl std::fmt::Display>,
    out: *mut *mut MotzkinScheme,
) -> MotzkinStatus {
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(MotzkinScheme { inner }));
            MotzkinStatus::Ok
        }
        Err(err) => fail(err.to_string()),
    }
}

/// Builds a scheme from two color tuples of length `order`.
///
/// On success stores a handle in `out`; release it with
/// [`motzkin_scheme_free`].
///
/// # Safety
///
/// `alpha` and `beta` must point to `order` readable `uint64_t` values and
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn motzkin_scheme_new(
    alpha: *const u64,
    beta: *const u64,
    order: usize,
    out: *mut *mut MotzkinScheme,
) -> MotzkinStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if alpha.is_null() {
        return null_arg("alpha");
    }
    if beta.is_null() {
        return null_arg("beta");
    }
    let alpha = slice::from_raw_parts(alpha, order).to_vec();
    let beta = slice::from_raw_parts(beta, order).to_vec();
    emit_scheme(ColorScheme::new(alpha, beta), out)
}

/// Builds the scheme whose triangle counts k-step paths allowed `depth`
/// units below the axis.
///
/// # Safety
///
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn motzkin_scheme_dyck(
    k: usize,
    depth: usize,
    out: *mut *mut MotzkinScheme,
) -> MotzkinStatus {
    if out.is_null() {
        return null_arg("out");
    }
    emit_scheme(dyck_scheme(k, depth), out)
}

/// Builds the scheme whose triangle counts k-step paths of depth `depth`
/// avoiding width-`r` return hills.
///
/// # Safety
///
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn motzkin_scheme_fine(
    k: usize,
    depth: usize,
    r: usize,
    out: *mut *mut MotzkinScheme,
) -> MotzkinStatus {
    if out.is_null() {
        return null_arg("out");
    }
    emit_scheme(fine_scheme(k, depth, r), out)
}

/// The order of the scheme's color tuples, or 0 for a null handle.
///
/// # Safety
///
/// `scheme` must be null or a live handle from a `motzkin_scheme_*`
/// constructor.
#[no_mangle]
pub unsafe extern "C" fn motzkin_scheme_order(scheme: *const MotzkinScheme) -> usize {
    match scheme.as_ref() {
        Some(scheme) => scheme.inner.order(),
        None => 0,
    }
}

/// Releases a scheme handle. A null handle is ignored.
///
/// # Safety
///
/// `scheme` must be null or a live handle from a `motzkin_scheme_*`
/// constructor, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn motzkin_scheme_free(scheme: *mut MotzkinScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Builds the first `rows` rows of the scheme's triangle of path counts.
///
/// On success stores a handle in `out`; release it with
/// [`motzkin_triangle_free`].
///
/// # Safety
///
/// `scheme` must be a live scheme handle and `out` a valid pointer to a
/// handle slot.
#[no_mangle]
pub unsafe extern "C" fn motzkin_triangle_new(
    scheme: *const MotzkinScheme,
    rows: usize,
    out: *mut *mut MotzkinTriangle,
) -> MotzkinStatus {
    if out.is_null() {
        return null_arg("out");
    }
    let Some(scheme) = scheme.as_ref() else {
        return null_arg("scheme");
    };
    match triangle_from_az(&motzkin_az(&scheme.inner), rows) {
        Ok(inner) => {
            let sums = row_sums(&inner);
            *out = Box::into_raw(Box::new(MotzkinTriangle { inner, sums }));
            MotzkinStatus::Ok
        }
        Err(err) => fail(err.to_string()),
    }
}

/// The number of rows a triangle holds, or 0 for a null handle.
///
/// # Safety
///
/// `triangle` must be null or a live handle from
/// [`motzkin_triangle_new`].
#[no_mangle]
pub unsafe extern "C" fn motzkin_triangle_rows(triangle: *const MotzkinTriangle) -> usize {
    match triangle.as_ref() {
        Some(triangle) => triangle.inner.n_rows(),
        None => 0,
    }
}

/// Writes entry (n, m) of the triangle as a NUL-terminated decimal string.
///
/// Entries with `m > n` are 0. `written` (when non-null) receives the
/// required buffer size in bytes, terminator included; the call returns
/// `BufferTooSmall` without writing when `buf` is null or too short.
///
/// # Safety
///
/// `triangle` must be a live handle; `buf` must be null or point to
/// `buf_len` writable bytes; `written` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn motzkin_triangle_entry(
    triangle: *const MotzkinTriangle,
    n: usize,
    m: usize,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    let Some(triangle) = triangle.as_ref() else {
        return null_arg("triangle");
    };
    if n >= triangle.inner.n_rows() {
        return fail(format!(
            "row {n} is outside the triangle ({} rows built)",
            triangle.inner.n_rows()
        ));
    }
    write_string(&triangle.inner.entry(n, m).to_string(), buf, buf_len, written)
}

/// Writes the sum of row n as a NUL-terminated decimal string, with the
/// same buffer convention as [`motzkin_triangle_entry`].
///
/// # Safety
///
/// Same contract as [`motzkin_triangle_entry`].
#[no_mangle]
pub unsafe extern "C" fn motzkin_triangle_row_sum(
    triangle: *const MotzkinTriangle,
    n: usize,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    let Some(triangle) = triangle.as_ref() else {
        return null_arg("triangle");
    };
    let Some(sum) = triangle.sums.get(n) else {
        return fail(format!(
            "row {n} is outside the triangle ({} rows built)",
            triangle.inner.n_rows()
        ));
    };
    write_string(&sum.to_string(), buf, buf_len, written)
}

/// Releases a triangle handle. A null handle is ignored.
///
/// # Safety
///
/// `triangle` must be null or a live handle from
/// [`motzkin_triangle_new`], and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn motzkin_triangle_free(triangle: *mut MotzkinTriangle) {
    if !triangle.is_null() {
        drop(Box::from_raw(triangle));
    }
}

unsafe fn one_shot_count(
    scheme: Result<ColorScheme, impl std::fmt::Display>,
    n: usize,
    m: usize,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    let scheme = match scheme {
        Ok(scheme) => scheme,
        Err(err) => return fail(err.to_string()),
    };
    match triangle_from_az(&motzkin_az(&scheme), n + 1) {
        Ok(triangle) => write_string(&triangle.entry(n, m).to_string(), buf, buf_len, written),
        Err(err) => fail(err.to_string()),
    }
}

/// Writes the number of k-step paths of depth `a`, semilength `n`, and end
/// semiheight `m` as a decimal string, with the buffer convention of
/// [`motzkin_triangle_entry`].
///
/// # Safety
///
/// `buf` must be null or point to `buf_len` writable bytes; `written`
/// must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn motzkin_count_dyck(
    k: usize,
    a: usize,
    n: usize,
    m: usize,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    one_shot_count(dyck_scheme(k, a), n, m, buf, buf_len, written)
}

/// Writes the number of such paths that also avoid width-`r` return hills,
/// with the buffer convention of [`motzkin_triangle_entry`].
///
/// # Safety
///
/// Same contract as [`motzkin_count_dyck`].
#[no_mangle]
pub unsafe extern "C" fn motzkin_count_fine(
    k: usize,
    a: usize,
    r: usize,
    n: usize,
    m: usize,
    buf: *mut c_char,
    buf_len: usize,
    written: *mut usize,
) -> MotzkinStatus {
    one_shot_count(fine_scheme(k, a, r), n, m, buf, buf_len, written)
}

/// Copies the calling thread's last error message into `buf` and returns
/// the required buffer size in bytes, terminator included.
///
/// The message is only meaningful after a call on the same thread returned
/// a status other than `Ok`. Passing a null or short buffer just measures.
///
/// # Safety
///
/// `buf` must be null or point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn motzkin_last_error(buf: *mut c_char, buf_len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let required = message.len() + 1;
        if !buf.is_null() && buf_len >= required {
            ptr::copy_nonoverlapping(message.as_ptr(), buf.cast::<u8>(), message.len());
            *buf.add(message.len()) = 0;
        }
        required
    })
}
