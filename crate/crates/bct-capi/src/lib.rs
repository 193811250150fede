//! C ABI for the bi-Cayley toolkit.
//!
//! Conventions:
//!
//! * Handles (`BctGroup`, `BctBiCayley`) are opaque pointers owned by
//!   the library; release them with the matching `_free` function.
//!   `_free` accepts null.
//! * Every fallible call returns a [`BctStatus`]; results come back
//!   through out-pointers, written only on `Ok`.
//! * Strings returned through out-pointers are NUL-terminated, owned
//!   by the caller, and must be released with [`bct_string_free`].
//! * On any non-`Ok` status, [`bct_last_error_message`] returns a
//!   thread-local description of the most recent failure.
//! * Panics never cross the boundary: they are caught and reported as
//!   [`BctStatus::Panic`].
//!
//! The committed header `include/bct.h` is generated from this file
//! with cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use bct_core::bicayley::BiCayley;
use bct_core::classify::classify;
use bct_core::formats::{normaliser_summary, Provenance, RunReport};
use bct_core::group::FiniteGroup;
use bct_core::Error;

/// Result of a C-ABI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BctStatus {
    /// Success; out-pointers are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Validation failed (bad parameters, malformed data, disconnected
    /// input, no witness). Matches CLI exit code 2.
    Invalid = 2,
    /// The object exceeds a documented size bound. Matches CLI exit
    /// code 3.
    BoundExceeded = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BctStatus {
    match e.exit_code() {
        3 => BctStatus::BoundExceeded,
        _ => BctStatus::Invalid,
    }
}

/// Runs a fallible body with panic containment and error capture.
fn guarded<F: FnOnce() -> Result<(), (BctStatus, String)>>(body: F) -> BctStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BctStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".into());
            set_error(&format!("internal panic: {msg}"));
            BctStatus::Panic
        }
    }
}

fn fail(e: Error) -> (BctStatus, String) {
    (status_of(&e), e.to_string())
}

const NULL_ARG: (BctStatus, String) = (BctStatus::NullArgument, String::new());

/// Message describing the most recent failure on this thread, valid
/// until the next failing call on the same thread. Never null; empty
/// for a null-argument failure with no message.
#[no_mangle]
pub extern "C" fn bct_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Accepts null.
///
/// # Safety
/// `s` must be a pointer previously returned through one of this
/// library's string out-parameters, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opaque finite-group handle.
pub struct BctGroup {
    inner: Arc<FiniteGroup>,
}

/// Opaque bi-Cayley datum handle.
pub struct BctBiCayley {
    inner: BiCayley,
}

fn emit_group(
    out: *mut *mut BctGroup,
    build: impl FnOnce() -> Result<FiniteGroup, Error>,
) -> BctStatus {
    guarded(|| {
        if out.is_null() {
            return Err(NULL_ARG);
        }
        let g = build().map_err(fail)?;
        let handle = Box::new(BctGroup { inner: Arc::new(g) });
        unsafe { *out = Box::into_raw(handle) };
        Ok(())
    })
}

/// Creates the cyclic group of order `n`.
#[no_mangle]
pub extern "C" fn bct_group_cyclic(n: usize, out: *mut *mut BctGroup) -> BctStatus {
    emit_group(out, || FiniteGroup::make_cyclic(n))
}

/// Creates the direct product `C_d1 × C_d2`.
#[no_mangle]
pub extern "C" fn bct_group_abelian2(
    d1: usize,
    d2: usize,
    out: *mut *mut BctGroup,
) -> BctStatus {
    emit_group(out, || FiniteGroup::make_abelian2(d1, d2))
}

/// Creates the dihedral group of order `2n` (`n ≥ 3`).
#[no_mangle]
pub extern "C" fn bct_group_dihedral(n: usize, out: *mut *mut BctGroup) -> BctStatus {
    emit_group(out, || FiniteGroup::make_dihedral(n))
}

/// Creates the split metacyclic group
/// `⟨a, b | a^na = b^nb = 1, b⁻¹ab = a^r⟩`.
#[no_mangle]
pub extern "C" fn bct_group_metacyclic(
    na: usize,
    nb: usize,
    r: usize,
    out: *mut *mut BctGroup,
) -> BctStatus {
    emit_group(out, || FiniteGroup::make_metacyclic(na, nb, r))
}

/// Order of the group; 0 if the handle is null.
#[no_mangle]
pub extern "C" fn bct_group_order(group: *const BctGroup) -> usize {
    if group.is_null() {
        return 0;
    }
    unsafe { (*group).inner.order() }
}

/// Releases a group handle. Accepts null.
///
/// # Safety
/// `group` must come from a `bct_group_*` constructor and not have
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn bct_group_free(group: *mut BctGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Validates a bi-Cayley datum `(R, L, S)` over the group: `R` and `L`
/// identity-free, inverse-closed, and of equal size; all entries are
/// element indices below the group order. Set pointers may be null
/// when the corresponding length is 0.
///
/// # Safety
/// Non-null set pointers must reference `*_len` readable elements;
/// `group` must be a live group handle.
#[no_mangle]
pub unsafe extern "C" fn bct_bicayley_new(
    group: *const BctGroup,
    r: *const usize,
    r_len: usize,
    l: *const usize,
    l_len: usize,
    s: *const usize,
    s_len: usize,
    out: *mut *mut BctBiCayley,
) -> BctStatus {
    guarded(|| {
        if group.is_null() || out.is_null() {
            return Err(NULL_ARG);
        }
        let slice = |p: *const usize, len: usize| -> Result<&[usize], (BctStatus, String)> {
            if len == 0 {
                Ok(&[])
            } else if p.is_null() {
                Err(NULL_ARG)
            } else {
                Ok(unsafe { std::slice::from_raw_parts(p, len) })
            }
        };
        let (r, l, s) = (slice(r, r_len)?, slice(l, l_len)?, slice(s, s_len)?);
        let g = unsafe { &*group };
        let b = BiCayley::new(g.inner.clone(), r, l, s).map_err(fail)?;
        unsafe { *out = Box::into_raw(Box::new(BctBiCayley { inner: b })) };
        Ok(())
    })
}

/// Releases a bi-Cayley handle. Accepts null.
///
/// # Safety
/// `b` must come from `bct_bicayley_new` and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn bct_bicayley_free(b: *mut BctBiCayley) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of vertices (twice the group order); 0 on null.
#[no_mangle]
pub extern "C" fn bct_bicayley_vertex_count(b: *const BctBiCayley) -> usize {
    if b.is_null() {
        return 0;
    }
    unsafe { (*b).inner.vertex_count() }
}

/// Valency `|R| + |S|`; 0 on null.
#[no_mangle]
pub extern "C" fn bct_bicayley_valency(b: *const BctBiCayley) -> usize {
    if b.is_null() {
        return 0;
    }
    unsafe { (*b).inner.valency() }
}

/// 1 if the graph is connected, 0 otherwise (or on null).
#[no_mangle]
pub extern "C" fn bct_bicayley_is_connected(b: *const BctBiCayley) -> i32 {
    if b.is_null() {
        return 0;
    }
    unsafe { (*b).inner.graph().is_connected() as i32 }
}

fn emit_string(out: *mut *mut c_char, text: String) -> Result<(), (BctStatus, String)> {
    let c = CString::new(text.replace('\0', " ")).expect("NUL bytes removed");
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// graph6 encoding of the graph. The string must be freed with
/// [`bct_string_free`].
#[no_mangle]
pub extern "C" fn bct_bicayley_graph6(
    b: *const BctBiCayley,
    out: *mut *mut c_char,
) -> BctStatus {
    guarded(|| {
        if b.is_null() || out.is_null() {
            return Err(NULL_ARG);
        }
        let b = unsafe { &*b };
        emit_string(out, b.inner.graph().to_graph6())
    })
}

/// Full classification as a JSON run report (same schema as the CLI).
/// The string must be freed with [`bct_string_free`].
#[no_mangle]
pub extern "C" fn bct_bicayley_classify_json(
    b: *const BctBiCayley,
    out: *mut *mut c_char,
) -> BctStatus {
    guarded(|| {
        if b.is_null() || out.is_null() {
            return Err(NULL_ARG);
        }
        let b = &unsafe { &*b }.inner;
        let mut rr = RunReport::new(Provenance {
            source: "capi".into(),
            descriptor: Some(b.descriptor()),
            graph6: b.graph().to_graph6(),
        });
        rr.report = Some(classify(b).map_err(fail)?);
        rr.normaliser = Some(normaliser_summary(b).map_err(fail)?);
        emit_string(out, rr.to_json())
    })
}

/// Order of the full automorphism group of the graph, as a decimal
/// string (it can exceed 64 bits). The string must be freed with
/// [`bct_string_free`].
#[no_mangle]
pub extern "C" fn bct_bicayley_aut_order(
    b: *const BctBiCayley,
    out: *mut *mut c_char,
) -> BctStatus {
    guarded(|| {
        if b.is_null() || out.is_null() {
            return Err(NULL_ARG);
        }
        let b = &unsafe { &*b }.inner;
        emit_string(out, b.graph().automorphism_group().order().to_string())
    })
}
