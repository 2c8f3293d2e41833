//! C ABI over the `mckay` library.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`McStatus`]; on failure a description is available from
//! [`mckay_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and released
//! with [`mckay_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mckay::chambers::{cross_wall, Budget, Chamber, Limits, WallType};
use mckay::cli;
use mckay::grouplat::{parse_group, GroupSpec};
use mckay::Error;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Degenerate = 5,
    InvalidFlip = 6,
    Precondition = 7,
    ResourceLimit = 8,
    Invariant = 9,
    OutOfRange = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McWallType {
    Zero = 0,
    One = 1,
    Three = 3,
}

/// A finite abelian subgroup of SL(3,C).
pub struct McGroup {
    group: GroupSpec,
}

/// A GIT chamber with its moduli space and tautological bundles.
pub struct McChamber {
    chamber: Chamber,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> McStatus {
    match e {
        Error::Parse(_) => McStatus::Parse,
        Error::Validation(_) => McStatus::Validation,
        Error::Degenerate(_) => McStatus::Degenerate,
        Error::InvalidFlip(_) => McStatus::InvalidFlip,
        Error::Precondition(_) => McStatus::Precondition,
        Error::ResourceLimit(_) => McStatus::ResourceLimit,
        Error::Invariant(_) => McStatus::Invariant,
    }
}

struct Fail(McStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Run `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> McStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside mckay".into());
            McStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(McStatus::NullArgument, "null string".into()));
    }
    // SAFETY: the caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail(McStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    // SAFETY: the caller passes a valid, writable pointer or null.
    unsafe { p.as_mut() }.ok_or_else(|| Fail(McStatus::NullArgument, "null out-pointer".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    // SAFETY: the caller passes a live handle or null.
    unsafe { p.as_ref() }.ok_or_else(|| Fail(McStatus::NullArgument, "null handle".into()))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(McStatus::Invariant, "string contains NUL".into()))
}

/// Last error message on this thread, or null. The pointer stays valid
/// until the next `mckay_*` call on the same thread.
#[no_mangle]
pub extern "C" fn mckay_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse a group such as `1/11(1,2,8)` or `1/6(1,1,4)+1/2(1,0,1)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `group_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_parse(spec: *const c_char, group_out: *mut *mut McGroup) -> McStatus {
    guard(|| {
        let slot = unsafe { out(group_out) }?;
        let g = parse_group(unsafe { read_str(spec) }?)?;
        *slot = Box::into_raw(Box::new(McGroup { group: g }));
        Ok(())
    })
}

/// Order of the group.
///
/// # Safety
/// `group` must be a live handle and `order_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_order(group: *const McGroup, order_out: *mut usize) -> McStatus {
    guard(|| {
        let g = unsafe { get(group) }?;
        *unsafe { out(order_out) }? = g.group.order();
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from [`mckay_group_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_group_free(group: *mut McGroup) {
    if !group.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(group) });
    }
}

/// The G-Hilb chamber.
///
/// # Safety
/// `group` must be a live handle and `chamber_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_ghilb(group: *const McGroup, chamber_out: *mut *mut McChamber) -> McStatus {
    guard(|| {
        let g = unsafe { get(group) }?;
        let slot = unsafe { out(chamber_out) }?;
        let mut budget = Budget::new(Limits::default().max_lps);
        let ch = cli::load_chamber(&g.group, None, &mut budget)?;
        *slot = Box::into_raw(Box::new(McChamber { chamber: ch }));
        Ok(())
    })
}

/// The chamber of a state token produced by [`mckay_chamber_token`].
///
/// # Safety
/// `group` must be a live handle, `token` a NUL-terminated string and
/// `chamber_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_from_token(
    group: *const McGroup,
    token: *const c_char,
    chamber_out: *mut *mut McChamber,
) -> McStatus {
    guard(|| {
        let g = unsafe { get(group) }?;
        let tok = unsafe { read_str(token) }?;
        let slot = unsafe { out(chamber_out) }?;
        let mut budget = Budget::new(Limits::default().max_lps);
        let ch = cli::load_chamber(&g.group, Some(tok), &mut budget)?;
        *slot = Box::into_raw(Box::new(McChamber { chamber: ch }));
        Ok(())
    })
}

/// Number of facets.
///
/// # Safety
/// `chamber` must be a live handle and `count_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_facet_count(chamber: *const McChamber, count_out: *mut usize) -> McStatus {
    guard(|| {
        let ch = unsafe { get(chamber) }?;
        *unsafe { out(count_out) }? = ch.chamber.facets.len();
        Ok(())
    })
}

/// Reduced normal of facet `k`, written into `buf` (order − 1 entries).
///
/// # Safety
/// `chamber` must be a live handle and `buf` must point to `len` writable
/// `int64_t`s.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_facet_normal(
    chamber: *const McChamber,
    k: usize,
    buf: *mut i64,
    len: usize,
) -> McStatus {
    guard(|| {
        let ch = unsafe { get(chamber) }?;
        let f = ch
            .chamber
            .facets
            .get(k)
            .ok_or_else(|| Fail(McStatus::OutOfRange, format!("no facet {k}")))?;
        if buf.is_null() {
            return Err(Fail(McStatus::NullArgument, "null buffer".into()));
        }
        if len < f.normal.len() {
            return Err(Fail(McStatus::BufferTooSmall, format!("need {} entries", f.normal.len())));
        }
        // SAFETY: `buf` holds at least `len >= normal.len()` entries.
        unsafe { ptr::copy_nonoverlapping(f.normal.as_ptr(), buf, f.normal.len()) };
        Ok(())
    })
}

/// Wall type of facet `k`.
///
/// # Safety
/// `chamber` must be a live handle and `type_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_facet_type(
    chamber: *const McChamber,
    k: usize,
    type_out: *mut McWallType,
) -> McStatus {
    guard(|| {
        let ch = unsafe { get(chamber) }?;
        let f = ch
            .chamber
            .facets
            .get(k)
            .ok_or_else(|| Fail(McStatus::OutOfRange, format!("no facet {k}")))?;
        *unsafe { out(type_out) }? = match f.wall_type {
            WallType::Zero => McWallType::Zero,
            WallType::I => McWallType::One,
            WallType::III => McWallType::Three,
        };
        Ok(())
    })
}

/// Facets as text, one `label: inequality [type t]` per line.
///
/// # Safety
/// `group` and `chamber` must be live handles and `text_out` a valid
/// pointer. Free the result with [`mckay_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_describe(
    group: *const McGroup,
    chamber: *const McChamber,
    text_out: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let g = unsafe { get(group) }?;
        let ch = unsafe { get(chamber) }?;
        let slot = unsafe { out(text_out) }?;
        *slot = c_string(ch.chamber.facet_lines(&g.group).join("\n"))?;
        Ok(())
    })
}

/// Cross facet `k` into the adjacent chamber.
///
/// # Safety
/// `group` and `chamber` must be live handles and `chamber_out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_cross(
    group: *const McGroup,
    chamber: *const McChamber,
    k: usize,
    chamber_out: *mut *mut McChamber,
) -> McStatus {
    guard(|| {
        let g = unsafe { get(group) }?;
        let ch = unsafe { get(chamber) }?;
        let slot = unsafe { out(chamber_out) }?;
        if k >= ch.chamber.facets.len() {
            return Err(Fail(McStatus::OutOfRange, format!("no facet {k}")));
        }
        let mut budget = Budget::new(Limits::default().max_lps);
        let next = cross_wall(&g.group, &ch.chamber, k)?.analyze(&g.group, &mut budget)?;
        *slot = Box::into_raw(Box::new(McChamber { chamber: next }));
        Ok(())
    })
}

/// State token of a chamber, replayable with [`mckay_chamber_from_token`].
///
/// # Safety
/// `chamber` must be a live handle and `token_out` a valid pointer. Free
/// the result with [`mckay_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_token(chamber: *const McChamber, token_out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let ch = unsafe { get(chamber) }?;
        let slot = unsafe { out(token_out) }?;
        *slot = c_string(cli::state_token(&ch.chamber.state))?;
        Ok(())
    })
}

/// # Safety
/// `chamber` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_chamber_free(chamber: *mut McChamber) {
    if !chamber.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(chamber) });
    }
}

/// JSON report of `ghilb`, `markings`, `chamber`, `enumerate` or `verify`
/// for a group spec.
///
/// # Safety
/// `command` and `spec` must be NUL-terminated strings and `json_out` a
/// valid pointer. Free the result with [`mckay_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mckay_report_json(
    command: *const c_char,
    spec: *const c_char,
    json_out: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let cmd = unsafe { read_str(command) }?;
        let spec = unsafe { read_str(spec) }?;
        let slot = unsafe { out(json_out) }?;
        let limits = Limits::default();
        let rep = match cmd {
            "ghilb" => cli::cmd_ghilb(spec)?.0,
            "markings" => cli::cmd_markings(spec)?,
            "chamber" => cli::cmd_chamber(spec, None, &limits)?,
            "enumerate" => cli::cmd_enumerate(spec, &limits)?,
            "verify" => cli::cmd_verify(spec, &limits)?,
            _ => return Err(Fail(McStatus::Precondition, format!("unknown command `{cmd}`"))),
        };
        *slot = c_string(rep.to_json())?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mckay_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the string came from `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}
