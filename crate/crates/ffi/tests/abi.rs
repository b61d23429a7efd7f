//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers, status codes, caller-supplied buffers, and the per-thread
//! error message.

use std::ffi::{c_char, CStr};
use std::ptr;

use motzkin_ffi::{
    motzkin_count_dyck, motzkin_count_fine, motzkin_last_error, motzkin_scheme_dyck,
    motzkin_scheme_free, motzkin_scheme_new, motzkin_scheme_order, motzkin_triangle_entry,
    motzkin_triangle_free, motzkin_triangle_new, motzkin_triangle_row_sum, motzkin_triangle_rows,
    MotzkinScheme, MotzkinStatus, MotzkinTriangle,
};

fn read_buf(buf: &[c_char]) -> String {
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().expect("utf8").to_string()
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let required = unsafe { motzkin_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(required <= buf.len(), "error message unexpectedly long");
    read_buf(&buf)
}

fn new_scheme(alpha: &[u64], beta: &[u64]) -> *mut MotzkinScheme {
    let mut scheme: *mut MotzkinScheme = ptr::null_mut();
    let status =
        unsafe { motzkin_scheme_new(alpha.as_ptr(), beta.as_ptr(), alpha.len(), &mut scheme) };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    assert!(!scheme.is_null());
    scheme
}

fn entry_string(triangle: *const MotzkinTriangle, n: usize, m: usize) -> String {
    let mut buf = [0 as c_char; 64];
    let mut written = 0usize;
    let status = unsafe {
        motzkin_triangle_entry(triangle, n, m, buf.as_mut_ptr(), buf.len(), &mut written)
    };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    let text = read_buf(&buf);
    assert_eq!(written, text.len() + 1);
    text
}

#[test]
fn triangle_round_trip_through_the_abi() {
    let scheme = new_scheme(&[1], &[1]);
    assert_eq!(unsafe { motzkin_scheme_order(scheme) }, 1);

    let mut triangle: *mut MotzkinTriangle = ptr::null_mut();
    let status = unsafe { motzkin_triangle_new(scheme, 8, &mut triangle) };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { motzkin_triangle_rows(triangle) }, 8);

    let column: Vec<String> = (0..8).map(|n| entry_string(triangle, n, 0)).collect();
    assert_eq!(column, ["1", "1", "2", "4", "9", "21", "51", "127"]);
    // Entries above the diagonal are zero, not errors.
    assert_eq!(entry_string(triangle, 2, 5), "0");

    let mut buf = [0 as c_char; 64];
    let status = unsafe {
        motzkin_triangle_row_sum(triangle, 4, buf.as_mut_ptr(), buf.len(), ptr::null_mut())
    };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    assert_eq!(read_buf(&buf), "35");

    unsafe {
        motzkin_triangle_free(triangle);
        motzkin_scheme_free(scheme);
    }
}

#[test]
fn short_buffers_report_the_required_size() {
    let scheme = new_scheme(&[3], &[3]);
    let mut triangle: *mut MotzkinTriangle = ptr::null_mut();
    assert_eq!(unsafe { motzkin_triangle_new(scheme, 12, &mut triangle) }, MotzkinStatus::Ok);

    // Row 11 of the (3, 3) triangle has a multi-digit leftmost entry.
    let mut written = 0usize;
    let status =
        unsafe { motzkin_triangle_entry(triangle, 11, 0, ptr::null_mut(), 0, &mut written) };
    assert_eq!(status, MotzkinStatus::BufferTooSmall);
    assert!(written > 2, "expected a multi-digit entry, needed {written} bytes");

    let mut buf = vec![0 as c_char; written];
    let status = unsafe {
        motzkin_triangle_entry(triangle, 11, 0, buf.as_mut_ptr(), buf.len(), &mut written)
    };
    assert_eq!(status, MotzkinStatus::Ok);
    assert_eq!(read_buf(&buf).len() + 1, written);

    unsafe {
        motzkin_triangle_free(triangle);
        motzkin_scheme_free(scheme);
    }
}

#[test]
fn null_and_invalid_arguments_set_the_error_message() {
    let mut scheme: *mut MotzkinScheme = ptr::null_mut();
    let status = unsafe { motzkin_scheme_new(ptr::null(), ptr::null(), 1, &mut scheme) };
    assert_eq!(status, MotzkinStatus::NullArgument);
    assert!(!last_error().is_empty());

    // Order-0 tuples are rejected by the library.
    let status = unsafe { motzkin_scheme_new([].as_ptr(), [].as_ptr(), 0, &mut scheme) };
    assert_eq!(status, MotzkinStatus::InvalidArgument);
    assert!(!last_error().is_empty());

    let mut out: *mut MotzkinScheme = ptr::null_mut();
    // k below 2 cannot shape a k-step family.
    let status = unsafe { motzkin_scheme_dyck(1, 0, &mut out) };
    assert_eq!(status, MotzkinStatus::InvalidArgument);
    assert!(!last_error().is_empty());

    let mut triangle: *mut MotzkinTriangle = ptr::null_mut();
    let status = unsafe { motzkin_triangle_new(ptr::null(), 4, &mut triangle) };
    assert_eq!(status, MotzkinStatus::NullArgument);

    // Out-of-range row on a live triangle.
    let scheme = new_scheme(&[1], &[2]);
    assert_eq!(unsafe { motzkin_triangle_new(scheme, 3, &mut triangle) }, MotzkinStatus::Ok);
    let status =
        unsafe { motzkin_triangle_entry(triangle, 9, 0, ptr::null_mut(), 0, ptr::null_mut()) };
    assert_eq!(status, MotzkinStatus::InvalidArgument);
    assert!(last_error().contains("row 9"));
    unsafe {
        motzkin_triangle_free(triangle);
        motzkin_scheme_free(scheme);
    }

    // Freeing null handles is a no-op.
    unsafe {
        motzkin_scheme_free(ptr::null_mut());
        motzkin_triangle_free(ptr::null_mut());
    }
}

#[test]
fn one_shot_counts_match_known_values() {
    let mut buf = [0 as c_char; 64];
    let status =
        unsafe { motzkin_count_dyck(3, 1, 2, 0, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    assert_eq!(read_buf(&buf), "7");

    let status =
        unsafe { motzkin_count_fine(2, 0, 1, 5, 0, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, MotzkinStatus::Ok, "{}", last_error());
    assert_eq!(read_buf(&buf), "18");

    let status =
        unsafe { motzkin_count_dyck(1, 5, 2, 0, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, MotzkinStatus::InvalidArgument);
}

#[test]
fn the_committed_header_covers_the_exported_surface() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/motzkin_ffi.h"))
            .expect("the generated header is committed alongside the crate");
    for symbol in [
        "MOTZKIN_STATUS_OK",
        "MOTZKIN_STATUS_BUFFER_TOO_SMALL",
        "struct MotzkinScheme",
        "struct MotzkinTriangle",
        "motzkin_scheme_new",
        "motzkin_scheme_dyck",
        "motzkin_scheme_fine",
        "motzkin_scheme_order",
        "motzkin_scheme_free",
        "motzkin_triangle_new",
        "motzkin_triangle_rows",
        "motzkin_triangle_entry",
        "motzkin_triangle_row_sum",
        "motzkin_triangle_free",
        "motzkin_count_dyck",
        "motzkin_count_fine",
        "motzkin_last_error",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
