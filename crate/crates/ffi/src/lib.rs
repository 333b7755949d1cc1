//! C ABI over the circfib library.
//!
//! Every call returns a [`CfStatus`]. On failure the message is kept per
//! thread and read back with [`cf_last_error`]. Words cross the boundary as
//! NUL-terminated digit strings; results are written into caller buffers,
//! which must hold the word length plus one byte. Groups are opaque
//! handles released with [`cf_group_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circfib::error::Error;
use circfib::fibcore::CircWord;
use circfib::group::{self, Group, GroupElement};
use circfib::rewrite::normalize;
use circfib::wheels::count_trees_matrix;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    /// Malformed word, bad length, zero word, index out of range.
    InvalidInput = 1,
    /// A size bound was exceeded.
    Resource = 2,
    /// An internal consistency check failed.
    CheckFailed = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    /// A Rust panic was caught.
    Panic = 6,
}

/// Opaque handle to an enumerated group.
pub struct CfGroup {
    inner: Group,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Buffer { need: usize, cap: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return CfStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            let status = match e.exit_code() {
                2 => CfStatus::InvalidInput,
                3 => CfStatus::Resource,
                _ => CfStatus::CheckFailed,
            };
            (status, e.to_string())
        }
        Ok(Err(Failure::Null(what))) => (CfStatus::NullPointer, format!("{what} is null")),
        Ok(Err(Failure::Buffer { need, cap })) => (
            CfStatus::BufferTooSmall,
            format!("buffer holds {cap} bytes, {need} needed"),
        ),
        Err(p) => {
            let what = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown".into());
            (CfStatus::Panic, format!("panic: {what}"))
        }
    };
    set_error(msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn read_word(p: *const c_char, what: &'static str) -> Result<CircWord, Failure> {
    Ok(read_str(p, what)?.parse::<CircWord>()?)
}

unsafe fn read_element(p: *const c_char, what: &'static str) -> Result<GroupElement, Failure> {
    Ok(GroupElement::from_any(&read_word(p, what)?)?)
}

unsafe fn write_str(s: &str, out: *mut c_char, cap: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let need = s.len() + 1;
    if cap < need {
        return Err(Failure::Buffer { need, cap });
    }
    ptr::copy_nonoverlapping(s.as_ptr(), out.cast::<u8>(), s.len());
    *out.add(s.len()) = 0;
    Ok(())
}

unsafe fn write_val<T>(v: T, out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    *out = v;
    Ok(())
}

unsafe fn group_ref<'a>(g: *const CfGroup) -> Result<&'a Group, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or(Failure::Null("group"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `cap > 0`). Returns the full message length
/// plus one, or 0 when the last call succeeded.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && cap > 0 {
                let n = bytes.len().min(cap - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
                *buf.add(n) = 0;
            }
            bytes.len() + 1
        }
    })
}

/// Normal form of `word`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_reduce(word: *const c_char, out: *mut c_char, cap: usize) -> CfStatus {
    guard(|| {
        let w = normalize(&read_word(word, "word")?)?;
        write_str(&w.to_string(), out, cap)
    })
}

/// Sum of two words of the same even length, in normal form.
///
/// # Safety
/// `u` and `v` must be NUL-terminated strings; `out` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_add(
    u: *const c_char,
    v: *const c_char,
    out: *mut c_char,
    cap: usize,
) -> CfStatus {
    guard(|| {
        let s = group::add(&read_element(u, "u")?, &read_element(v, "v")?)?;
        write_str(&s.to_string(), out, cap)
    })
}

/// Inverse of `u`.
///
/// # Safety
/// `u` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_neg(u: *const c_char, out: *mut c_char, cap: usize) -> CfStatus {
    guard(|| write_str(&group::neg(&read_element(u, "u")?).to_string(), out, cap))
}

/// `k` times `u`; negative `k` multiplies the inverse.
///
/// # Safety
/// `u` must be a NUL-terminated string; `out` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_mul(
    k: i64,
    u: *const c_char,
    out: *mut c_char,
    cap: usize,
) -> CfStatus {
    guard(|| {
        write_str(
            &group::scalar_mul(k, &read_element(u, "u")?).to_string(),
            out,
            cap,
        )
    })
}

/// Order of `u` in its group.
///
/// # Safety
/// `u` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_element_order(u: *const c_char, out: *mut u64) -> CfStatus {
    guard(|| write_val(group::element_order(&read_element(u, "u")?), out))
}

/// Number of spanning trees of the wheel with `ell` rim vertices.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_wheel_tree_count(ell: usize, out: *mut u64) -> CfStatus {
    guard(|| {
        let n = count_trees_matrix(ell)?;
        let n = u64::try_from(n)
            .map_err(|_| Error::Resource(format!("tree count for l = {ell} exceeds 64 bits")))?;
        write_val(n, out)
    })
}

/// Enumerates the group of length `2 * ell`, refusing `ell > max_ell`.
/// On success `*out` holds a handle to release with [`cf_group_free`].
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_new(
    ell: usize,
    max_ell: usize,
    out: *mut *mut CfGroup,
) -> CfStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let g = Group::with_bound(ell, max_ell)?;
        *out = Box::into_raw(Box::new(CfGroup { inner: g }));
        Ok(())
    })
}

/// Releases a handle from [`cf_group_new`]. Null is ignored.
///
/// # Safety
/// `g` must be null or a live handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn cf_group_free(g: *mut CfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_order(g: *const CfGroup, out: *mut usize) -> CfStatus {
    guard(|| write_val(group_ref(g)?.order(), out))
}

/// Index of the identity element.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_identity(g: *const CfGroup, out: *mut usize) -> CfStatus {
    guard(|| write_val(group_ref(g)?.identity_index(), out))
}

/// Word of element `i`; `out` needs `2 * ell + 1` bytes.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn cf_group_element(
    g: *const CfGroup,
    i: usize,
    out: *mut c_char,
    cap: usize,
) -> CfStatus {
    guard(|| {
        let g = group_ref(g)?;
        let e = g.element(i).ok_or_else(|| {
            Error::Domain(format!("index {i} out of range for order {}", g.order()))
        })?;
        write_str(&e.to_string(), out, cap)
    })
}

/// Index of an admissible word; either identity representative is accepted.
///
/// # Safety
/// `g` must be a live handle; `word` a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_index_of(
    g: *const CfGroup,
    word: *const c_char,
    out: *mut usize,
) -> CfStatus {
    guard(|| {
        let g = group_ref(g)?;
        let w = read_word(word, "word")?;
        let i = g
            .index_of(&w)
            .ok_or_else(|| Error::Domain(format!("{w} is not an element of the group")))?;
        write_val(i, out)
    })
}

/// Index of `elements[a] + elements[b]`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_add(
    g: *const CfGroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> CfStatus {
    guard(|| write_val(group_ref(g)?.add_indices(a, b)?, out))
}

/// Index of `-elements[a]`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_neg(g: *const CfGroup, a: usize, out: *mut usize) -> CfStatus {
    guard(|| write_val(group_ref(g)?.neg_index(a)?, out))
}

/// Invariant factors `(e1, e2)` with `e2 | e1`.
///
/// # Safety
/// `g` must be a live handle; `e1` and `e2` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cf_group_invariant_factors(
    g: *const CfGroup,
    e1: *mut u64,
    e2: *mut u64,
) -> CfStatus {
    guard(|| {
        if e1.is_null() || e2.is_null() {
            return Err(Failure::Null("out"));
        }
        let (a, b) = group_ref(g)?.structure()?.invariant_factors;
        *e1 = a;
        *e2 = b;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let mut buf = [0 as c_char; 256];
        unsafe { cf_last_error(buf.as_mut_ptr(), buf.len()) };
        unsafe { CStr::from_ptr(buf.as_ptr()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn error_message_is_per_call() {
        let mut out = [0 as c_char; 8];
        let bad = c"02a1";
        assert_eq!(
            unsafe { cf_reduce(bad.as_ptr(), out.as_mut_ptr(), 8) },
            CfStatus::InvalidInput
        );
        assert!(last_error().contains("bad digit"));
        let good = c"0201";
        assert_eq!(
            unsafe { cf_reduce(good.as_ptr(), out.as_mut_ptr(), 8) },
            CfStatus::Ok
        );
        assert_eq!(unsafe { cf_last_error(ptr::null_mut(), 0) }, 0);
    }

    #[test]
    fn short_buffer_is_reported() {
        let mut out = [0 as c_char; 4];
        let w = c"0201";
        assert_eq!(
            unsafe { cf_reduce(w.as_ptr(), out.as_mut_ptr(), 4) },
            CfStatus::BufferTooSmall
        );
        assert!(last_error().contains("5 needed"));
    }

    #[test]
    fn truncated_error_is_terminated() {
        let bad = c"0";
        let mut out = [0 as c_char; 8];
        unsafe { cf_reduce(bad.as_ptr(), out.as_mut_ptr(), 8) };
        let mut buf = [1 as c_char; 5];
        let full = unsafe { cf_last_error(buf.as_mut_ptr(), 5) };
        assert!(full > 5);
        assert_eq!(buf[4], 0);
    }
}
