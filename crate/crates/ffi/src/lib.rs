//! C ABI over `oddsun`.
//!
//! Families live behind the opaque [`OddsunFamily`] handle. Every fallible
//! call returns an [`OddsunStatus`]; on failure a message is available from
//! [`oddsun_last_error`] on the same thread until the next failing call.
//! Handles returned through out-parameters are owned by the caller and must
//! be released with [`oddsun_family_free`]; strings with [`oddsun_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oddsun::bounds::claimed_bounds;
use oddsun::construct;
use oddsun::detect::{
    find_classic_sunflower, find_even_sunflower, find_odd_sunflower, Certificate, OddSearch,
};
use oddsun::io;
use oddsun::mos::{enumerate_mos, MosSearchConfig};
use oddsun::reduction::{reduce_3dm, ThreeDMInstance};
use oddsun::{ElemSet, Error, SetFamily};

/// A set family. Opaque to C.
pub struct OddsunFamily {
    inner: SetFamily,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddsunStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TooLarge = 3,
    ParseError = 4,
    PreconditionViolated = 5,
    EvenN = 6,
    EmptyInstance = 7,
    BufferTooSmall = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

/// Result of a sunflower search.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddsunOutcome {
    Absent = 0,
    Found = 1,
    BudgetExceeded = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: OddsunStatus, message: impl Into<String>) -> OddsunStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> OddsunStatus {
    let status = match &e {
        Error::EmptySet { .. }
        | Error::DuplicateSet { .. }
        | Error::ElementOutOfRange { .. }
        | Error::InvalidParameter(_) => OddsunStatus::InvalidArgument,
        Error::MaterializationTooLarge { .. } | Error::TooLarge { .. } => OddsunStatus::TooLarge,
        Error::PreconditionViolated(_) => OddsunStatus::PreconditionViolated,
        Error::EvenN(_) => OddsunStatus::EvenN,
        Error::EmptyInstance => OddsunStatus::EmptyInstance,
        Error::Parse { .. } => OddsunStatus::ParseError,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> OddsunStatus) -> OddsunStatus {
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| fail(OddsunStatus::Panic, "internal panic"))
}

unsafe fn family_ref<'a>(f: *const OddsunFamily) -> Result<&'a SetFamily, OddsunStatus> {
    f.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(OddsunStatus::NullPointer, "family handle is null"))
}

unsafe fn emit(out: *mut *mut OddsunFamily, result: Result<SetFamily, Error>) -> OddsunStatus {
    if out.is_null() {
        return fail(OddsunStatus::NullPointer, "output pointer is null");
    }
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(OddsunFamily { inner }));
            OddsunStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            from_error(e)
        }
    }
}

/// Copies `values` into `buf` (capacity `cap`) and stores the full length in `len`.
unsafe fn write_indices(
    values: &[usize],
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    if len.is_null() {
        return fail(OddsunStatus::NullPointer, "length pointer is null");
    }
    *len = values.len();
    if values.len() > cap {
        return fail(
            OddsunStatus::BufferTooSmall,
            format!("need room for {} values, got {cap}", values.len()),
        );
    }
    if !values.is_empty() {
        if buf.is_null() {
            return fail(OddsunStatus::NullPointer, "buffer is null");
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    OddsunStatus::Ok
}

/// The message for the last failing call on this thread, or null.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn oddsun_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a family from `count` members in compressed form: member `i` is
/// `elements[offsets[i] .. offsets[i + 1]]`, so `offsets` has `count + 1` entries.
///
/// # Safety
/// `offsets` must point to `count + 1` values and `elements` to at least
/// `offsets[count]` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_new(
    universe: usize,
    elements: *const usize,
    offsets: *const usize,
    count: usize,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| {
        if offsets.is_null() || (elements.is_null() && count > 0) {
            return fail(OddsunStatus::NullPointer, "elements or offsets is null");
        }
        let offsets = std::slice::from_raw_parts(offsets, count + 1);
        if offsets.windows(2).any(|w| w[0] > w[1]) {
            return fail(
                OddsunStatus::InvalidArgument,
                "offsets must be non-decreasing",
            );
        }
        let total = offsets[count];
        let elements = if total == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(elements, total)
        };
        let sets = offsets
            .windows(2)
            .map(|w| elements[w[0]..w[1]].iter().copied().collect::<ElemSet>())
            .collect();
        emit(out, SetFamily::new(universe, sets))
    })
}

/// Releases a family; null is ignored.
///
/// # Safety
/// `f` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_free(f: *mut OddsunFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of members, or 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_len(f: *const OddsunFamily) -> usize {
    f.as_ref().map_or(0, |h| h.inner.len())
}

/// Universe size, or 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_universe(f: *const OddsunFamily) -> usize {
    f.as_ref().map_or(0, |h| h.inner.universe())
}

/// Writes member `index` (ascending elements) into `buf`; `len` receives its size.
///
/// # Safety
/// `f` must be a live handle, `buf` writable for `cap` values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_member(
    f: *const OddsunFamily,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    guard(|| {
        let family = match family_ref(f) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if index >= family.len() {
            return fail(
                OddsunStatus::InvalidArgument,
                format!("member {index} of a family of {}", family.len()),
            );
        }
        let elements: Vec<usize> = family.member(index).iter().collect();
        write_indices(&elements, buf, cap, len)
    })
}

unsafe fn report(
    found: Option<Certificate>,
    outcome: *mut OddsunOutcome,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    if outcome.is_null() || len.is_null() {
        return fail(
            OddsunStatus::NullPointer,
            "outcome or length pointer is null",
        );
    }
    match found {
        Some(c) => {
            *outcome = OddsunOutcome::Found;
            write_indices(&c.indices(), buf, cap, len)
        }
        None => {
            *len = 0;
            OddsunStatus::Ok
        }
    }
}

/// Odd-sunflower search within `budget` nodes. On `ODDSUN_OUTCOME_FOUND`
/// the witness member indices (0-based, ascending) go to `buf`.
///
/// # Safety
/// `f` must be a live handle; `outcome` and `len` writable; `buf` writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn oddsun_find_odd(
    f: *const OddsunFamily,
    budget: u64,
    outcome: *mut OddsunOutcome,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    guard(|| {
        let family = match family_ref(f) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if outcome.is_null() {
            return fail(OddsunStatus::NullPointer, "outcome pointer is null");
        }
        *outcome = OddsunOutcome::Absent;
        match find_odd_sunflower(family, budget) {
            OddSearch::Found { certificate, .. } => {
                report(Some(certificate), outcome, buf, cap, len)
            }
            OddSearch::Absent { .. } => report(None, outcome, buf, cap, len),
            OddSearch::BudgetExceeded { .. } => {
                let status = report(None, outcome, buf, cap, len);
                *outcome = OddsunOutcome::BudgetExceeded;
                status
            }
        }
    })
}

/// Even-sunflower search; see [`oddsun_find_odd`] for the output convention.
///
/// # Safety
/// As for [`oddsun_find_odd`].
#[no_mangle]
pub unsafe extern "C" fn oddsun_find_even(
    f: *const OddsunFamily,
    outcome: *mut OddsunOutcome,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    guard(|| {
        let family = match family_ref(f) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if outcome.is_null() {
            return fail(OddsunStatus::NullPointer, "outcome pointer is null");
        }
        *outcome = OddsunOutcome::Absent;
        report(find_even_sunflower(family), outcome, buf, cap, len)
    })
}

/// Classic (three-petal) sunflower search; see [`oddsun_find_odd`].
///
/// # Safety
/// As for [`oddsun_find_odd`].
#[no_mangle]
pub unsafe extern "C" fn oddsun_find_classic(
    f: *const OddsunFamily,
    outcome: *mut OddsunOutcome,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> OddsunStatus {
    guard(|| {
        let family = match family_ref(f) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if outcome.is_null() {
            return fail(OddsunStatus::NullPointer, "outcome pointer is null");
        }
        *outcome = OddsunOutcome::Absent;
        report(find_classic_sunflower(family), outcome, buf, cap, len)
    })
}

/// All `(n-1)`-subsets of `{1..n}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_c_n(n: usize, out: *mut *mut OddsunFamily) -> OddsunStatus {
    guard(|| emit(out, construct::c_n(n)))
}

/// `C_n` plus `{1..n}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_c_n_plus(n: usize, out: *mut *mut OddsunFamily) -> OddsunStatus {
    guard(|| emit(out, construct::c_n_plus(n)))
}

/// # Safety
/// `f`, `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_direct_sum(
    f: *const OddsunFamily,
    g: *const OddsunFamily,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| match (family_ref(f), family_ref(g)) {
        (Ok(f), Ok(g)) => emit(out, construct::direct_sum(f, g).map(|(s, _)| s)),
        (Err(s), _) | (_, Err(s)) => s,
    })
}

/// # Safety
/// `f`, `g` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_wreath(
    f: *const OddsunFamily,
    g: *const OddsunFamily,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| match (family_ref(f), family_ref(g)) {
        (Ok(f), Ok(g)) => emit(out, construct::wreath(f, g).map(|(w, _)| w)),
        (Err(s), _) | (_, Err(s)) => s,
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_construction1(
    n: usize,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| emit(out, construct::construction1(n)))
}

/// `C_9` wreath `C_3`: 59049 members.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_construction2(out: *mut *mut OddsunFamily) -> OddsunStatus {
    guard(|| emit(out, construct::construction2()))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_binary_tree(k: usize, out: *mut *mut OddsunFamily) -> OddsunStatus {
    guard(|| emit(out, construct::binary_tree_family(k)))
}

/// Growth-rate bound `id` (1, 2 or 3) with its stated threshold.
///
/// # Safety
/// `value`, `threshold` and `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_bound(
    id: u8,
    value: *mut f64,
    threshold: *mut f64,
    holds: *mut bool,
) -> OddsunStatus {
    guard(|| {
        if value.is_null() || threshold.is_null() || holds.is_null() {
            return fail(OddsunStatus::NullPointer, "output pointer is null");
        }
        let Some(b) = claimed_bounds().into_iter().find(|b| b.id == id) else {
            return fail(
                OddsunStatus::InvalidArgument,
                format!("no bound {id}; use 1, 2 or 3"),
            );
        };
        *value = b.bound.value;
        *threshold = b.threshold;
        *holds = b.holds();
        OddsunStatus::Ok
    })
}

/// Number of k-uniform minimal odd-sunflower classes. Zero bounds select
/// the defaults, which exist for `k <= 3`.
///
/// # Safety
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_mos_count(
    k: usize,
    max_members: usize,
    max_universe: usize,
    count: *mut usize,
) -> OddsunStatus {
    guard(|| {
        if count.is_null() {
            return fail(OddsunStatus::NullPointer, "count pointer is null");
        }
        let mut config = match MosSearchConfig::default_for(k) {
            Ok(c) => c,
            Err(_) if max_members > 0 && max_universe > 0 => MosSearchConfig {
                k,
                max_members,
                max_universe,
            },
            Err(e) => return from_error(e),
        };
        if max_members > 0 {
            config.max_members = max_members;
        }
        if max_universe > 0 {
            config.max_universe = max_universe;
        }
        match enumerate_mos(config) {
            Ok(r) => {
                *count = r.classes.len();
                OddsunStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Reduces a 3DM instance given as `count` triples `edges[3i], edges[3i+1], edges[3i+2]`.
///
/// # Safety
/// `edges` must point to `3 * count` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_reduce_3dm(
    n: usize,
    edges: *const usize,
    count: usize,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| {
        if edges.is_null() && count > 0 {
            return fail(OddsunStatus::NullPointer, "edges is null");
        }
        let flat = if count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 3 * count)
        };
        let triples = flat.chunks(3).map(|t| (t[0], t[1], t[2])).collect();
        let result = ThreeDMInstance::new(n, triples)
            .and_then(|inst| reduce_3dm(&inst))
            .map(|r| r.family);
        emit(out, result)
    })
}

/// Parses family-file text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_parse(
    text: *const c_char,
    out: *mut *mut OddsunFamily,
) -> OddsunStatus {
    guard(|| {
        if text.is_null() {
            return fail(OddsunStatus::NullPointer, "text is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(OddsunStatus::InvalidUtf8, "text is not UTF-8");
        };
        emit(out, io::parse_family(text).map(|p| p.family))
    })
}

/// Renders a family as family-file text; free the result with [`oddsun_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oddsun_family_render(
    f: *const OddsunFamily,
    out: *mut *mut c_char,
) -> OddsunStatus {
    guard(|| {
        let family = match family_ref(f) {
            Ok(x) => x,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(OddsunStatus::NullPointer, "output pointer is null");
        }
        let text = CString::new(io::render_family(family)).expect("rendered text has no nul bytes");
        *out = text.into_raw();
        OddsunStatus::Ok
    })
}

/// Releases a string from this library; null is ignored.
///
/// # Safety
/// `s` must come from [`oddsun_family_render`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn oddsun_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
