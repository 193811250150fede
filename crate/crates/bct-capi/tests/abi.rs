//! Exercises the C ABI exactly as an external caller would: through
//! the exported `extern "C"` symbols, raw pointers, and status codes.

use std::ffi::{c_char, CStr};
use std::ptr;

use bct_capi::*;

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    bct_string_free(p);
    s
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(bct_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

#[test]
fn full_session_over_the_order_54_datum() {
    // Host: <a, b | a^9 = b^3 = 1, b^-1 a b = a^4>, order 27.
    let mut g: *mut BctGroup = ptr::null_mut();
    assert_eq!(bct_group_metacyclic(9, 3, 4, &mut g), BctStatus::Ok);
    assert_eq!(bct_group_order(g), 27);

    let s = [0usize, 3, 4, 14];
    let mut b: *mut BctBiCayley = ptr::null_mut();
    let status = unsafe {
        bct_bicayley_new(g, ptr::null(), 0, ptr::null(), 0, s.as_ptr(), s.len(), &mut b)
    };
    assert_eq!(status, BctStatus::Ok);
    assert_eq!(bct_bicayley_vertex_count(b), 54);
    assert_eq!(bct_bicayley_valency(b), 4);
    assert_eq!(bct_bicayley_is_connected(b), 1);

    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(bct_bicayley_aut_order(b, &mut text), BctStatus::Ok);
    assert_eq!(unsafe { take_string(text) }, "1296");

    let mut json: *mut c_char = ptr::null_mut();
    assert_eq!(bct_bicayley_classify_json(b, &mut json), BctStatus::Ok);
    let json = unsafe { take_string(json) };
    assert!(json.contains("\"aut_two_arc_transitive\": true"));
    assert!(json.contains("\"translations_normal\": false"));
    assert!(json.contains("\"schema_version\": 1"));

    unsafe {
        bct_bicayley_free(b);
        bct_group_free(g);
    }
}

#[test]
fn status_codes_and_messages() {
    // Validation errors -> INVALID plus a message.
    let mut g: *mut BctGroup = ptr::null_mut();
    assert_eq!(bct_group_metacyclic(9, 3, 2, &mut g), BctStatus::Invalid);
    assert!(g.is_null());
    assert!(!last_error().is_empty());

    // Null out-pointer -> NULL_ARGUMENT.
    assert_eq!(bct_group_cyclic(5, ptr::null_mut()), BctStatus::NullArgument);

    // Triple validation across the boundary: S index out of range.
    assert_eq!(bct_group_cyclic(5, &mut g), BctStatus::Ok);
    let bad_s = [9usize];
    let mut b: *mut BctBiCayley = ptr::null_mut();
    let status = unsafe {
        bct_bicayley_new(g, ptr::null(), 0, ptr::null(), 0, bad_s.as_ptr(), 1, &mut b)
    };
    assert_eq!(status, BctStatus::Invalid);
    assert!(last_error().contains("out of range"));

    // |R| != |L| is rejected.
    let r = [1usize, 4];
    let s = [0usize];
    let status = unsafe {
        bct_bicayley_new(g, r.as_ptr(), 2, ptr::null(), 0, s.as_ptr(), 1, &mut b)
    };
    assert_eq!(status, BctStatus::Invalid);
    assert!(last_error().contains("must be equal"));

    // Null set pointer with nonzero length.
    let status = unsafe {
        bct_bicayley_new(g, ptr::null(), 2, ptr::null(), 0, s.as_ptr(), 1, &mut b)
    };
    assert_eq!(status, BctStatus::NullArgument);

    // Accessors are null-safe.
    assert_eq!(bct_bicayley_vertex_count(ptr::null()), 0);
    assert_eq!(bct_bicayley_valency(ptr::null()), 0);
    assert_eq!(bct_bicayley_is_connected(ptr::null()), 0);
    unsafe {
        bct_bicayley_free(ptr::null_mut());
        bct_group_free(g);
        bct_group_free(ptr::null_mut());
        bct_string_free(ptr::null_mut());
    }
}

#[test]
fn graph6_output_matches_the_core_encoder() {
    let mut g: *mut BctGroup = ptr::null_mut();
    assert_eq!(bct_group_cyclic(2, &mut g), BctStatus::Ok);
    let s = [0usize, 1];
    let mut b: *mut BctBiCayley = ptr::null_mut();
    let status = unsafe {
        bct_bicayley_new(g, ptr::null(), 0, ptr::null(), 0, s.as_ptr(), 2, &mut b)
    };
    assert_eq!(status, BctStatus::Ok);
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(bct_bicayley_graph6(b, &mut text), BctStatus::Ok);
    // The 4-cycle in bi-Cayley vertex order.
    assert_eq!(unsafe { take_string(text) }, "C]");
    unsafe {
        bct_bicayley_free(b);
        bct_group_free(g);
    }
}
