//! C ABI for the symbolic engine: opaque handles, integer status codes, and
//! serialized strings. Every returned string is owned by the caller and must
//! be released with `bk_string_free`; handles with their `_free` partner.
//!
//! Failure detail is kept per thread: after any non-`BK_OK` status,
//! `bk_last_error` returns a message valid until the next call on the same
//! thread.

use braidkit::coaction::{check_comodule_algebra, coaction, multiplication_table, verify_transmutation, COACTIONS, TABLES};
use braidkit::files::{parse_structure, write_structure, Resolver};
use braidkit::hopf::{applicable_axioms, HopfOps, StructureMap, AXIOMS};
use braidkit::presentations::Builtin;
use braidkit::report::CheckEntry;
use braidkit::structures::{structure, STRUCTURES};
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

/// Status codes returned by every fallible entry point.
pub const BK_OK: c_int = 0;
pub const BK_ERR_NULL: c_int = 1;
pub const BK_ERR_UTF8: c_int = 2;
pub const BK_ERR_UNKNOWN_NAME: c_int = 3;
pub const BK_ERR_PARSE: c_int = 4;
pub const BK_ERR_MATH: c_int = 5;
pub const BK_ERR_PANIC: c_int = 6;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Message for the most recent failure on this thread; empty string if none.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn bk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Opaque handle to a (braided) Hopf structure.
pub struct BkStructure {
    sm: Arc<StructureMap>,
}

fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(BK_ERR_NULL);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        BK_ERR_UTF8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> c_int {
    if out.is_null() {
        set_error("output pointer is null");
        return BK_ERR_NULL;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            BK_OK
        }
        Err(_) => {
            set_error("output contains an interior nul byte");
            BK_ERR_PARSE
        }
    }
}

fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            BK_ERR_PANIC
        }
    }
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// JSON catalog of shipped names, grouped by kind.
#[no_mangle]
pub extern "C" fn bk_catalog(out: *mut *mut c_char) -> c_int {
    guarded(|| {
        let catalog = serde_json::json!({
            "presentations": Builtin::all().iter().map(|b| b.name()).collect::<Vec<_>>(),
            "structures": STRUCTURES,
            "coactions": COACTIONS,
            "tables": TABLES,
        });
        give_string(serde_json::to_string_pretty(&catalog).expect("serializes"), out)
    })
}

/// Open a catalog structure by name.
#[no_mangle]
pub extern "C" fn bk_structure_open(name: *const c_char, out: *mut *mut BkStructure) -> c_int {
    guarded(|| {
        let name = match read_str(name, "name") {
            Ok(s) => s,
            Err(code) => return code,
        };
        if out.is_null() {
            set_error("output pointer is null");
            return BK_ERR_NULL;
        }
        if !STRUCTURES.contains(&name) {
            set_error(&format!("unknown structure `{name}`"));
            return BK_ERR_UNKNOWN_NAME;
        }
        match structure(name) {
            Ok(sm) => {
                unsafe { *out = Box::into_raw(Box::new(BkStructure { sm })) };
                BK_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                BK_ERR_MATH
            }
        }
    })
}

/// Parse a structure document (the same text format the CLI reads).
#[no_mangle]
pub extern "C" fn bk_structure_parse(text: *const c_char, out: *mut *mut BkStructure) -> c_int {
    guarded(|| {
        let text = match read_str(text, "document") {
            Ok(s) => s,
            Err(code) => return code,
        };
        if out.is_null() {
            set_error("output pointer is null");
            return BK_ERR_NULL;
        }
        match parse_structure(text) {
            Ok(sm) => {
                unsafe { *out = Box::into_raw(Box::new(BkStructure { sm })) };
                BK_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                BK_ERR_PARSE
            }
        }
    })
}

/// Release a structure handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn bk_structure_free(h: *mut BkStructure) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Serialize the structure back to its document text.
#[no_mangle]
pub extern "C" fn bk_structure_write(h: *const BkStructure, out: *mut *mut c_char) -> c_int {
    guarded(|| {
        if h.is_null() {
            set_error("structure handle is null");
            return BK_ERR_NULL;
        }
        let sm = unsafe { &(*h).sm };
        give_string(write_structure(sm), out)
    })
}

/// Check one axiom (or all applicable ones when `axiom` is null) at the given
/// word-length bound. `*holds` is 1 when every check passes, 0 otherwise;
/// `report_json` (optional) receives the full structured report.
#[no_mangle]
pub extern "C" fn bk_structure_check(
    h: *const BkStructure,
    axiom: *const c_char,
    max_word_len: usize,
    holds: *mut c_int,
    report_json: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        if h.is_null() || holds.is_null() {
            set_error("null argument");
            return BK_ERR_NULL;
        }
        let sm = unsafe { (*h).sm.clone() };
        let selected: Vec<&'static str> = if axiom.is_null() {
            applicable_axioms(&sm)
        } else {
            let name = match read_str(axiom, "axiom") {
                Ok(s) => s,
                Err(code) => return code,
            };
            match AXIOMS.iter().copied().find(|a| *a == name) {
                Some(a) => vec![a],
                None => {
                    set_error(&format!("unknown axiom `{name}`"));
                    return BK_ERR_UNKNOWN_NAME;
                }
            }
        };
        let ops = HopfOps::new(sm);
        let mut checks: Vec<CheckEntry> = Vec::new();
        let well = match ops.check_well_defined() {
            Ok(r) => r,
            Err(e) => {
                set_error(&e.to_string());
                return BK_ERR_MATH;
            }
        };
        checks.push(CheckEntry::from(&well));
        for ax in selected {
            match ops.check_axiom(ax, max_word_len) {
                Ok(r) => checks.push(CheckEntry::from(&r)),
                Err(e) => {
                    set_error(&e.to_string());
                    return BK_ERR_MATH;
                }
            }
        }
        let all_hold = checks.iter().all(|c| c.status == "holds");
        unsafe { *holds = if all_hold { 1 } else { 0 } };
        if !report_json.is_null() {
            let json = serde_json::to_string_pretty(&checks).expect("serializes");
            return give_string(json, report_json);
        }
        BK_OK
    })
}

/// Check that a catalog coaction is an algebra homomorphism into the named
/// coacted presentation. `*holds` as in `bk_structure_check`.
#[no_mangle]
pub extern "C" fn bk_comodule_algebra_check(
    coaction_name: *const c_char,
    coacted: *const c_char,
    max_word_len: usize,
    holds: *mut c_int,
) -> c_int {
    guarded(|| {
        let (cname, pname) = match (read_str(coaction_name, "coaction"), read_str(coacted, "coacted")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(code), _) | (_, Err(code)) => return code,
        };
        if holds.is_null() {
            set_error("null argument");
            return BK_ERR_NULL;
        }
        let beta = match coaction(cname) {
            Ok(b) => b,
            Err(e) => {
                set_error(&e.to_string());
                return BK_ERR_UNKNOWN_NAME;
            }
        };
        let pres = match Resolver::new().presentation(pname) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e.to_string());
                return BK_ERR_UNKNOWN_NAME;
            }
        };
        match check_comodule_algebra(&beta, &pres, max_word_len) {
            Ok(rep) => {
                unsafe { *holds = if rep.holds() { 1 } else { 0 } };
                BK_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                BK_ERR_MATH
            }
        }
    })
}

/// Run the three-part verification of a catalog transmutation table.
#[no_mangle]
pub extern "C" fn bk_transmutation_check(name: *const c_char, holds: *mut c_int) -> c_int {
    guarded(|| {
        let name = match read_str(name, "table") {
            Ok(s) => s,
            Err(code) => return code,
        };
        if holds.is_null() {
            set_error("null argument");
            return BK_ERR_NULL;
        }
        let table = match multiplication_table(name) {
            Ok(t) => t,
            Err(e) => {
                set_error(&e.to_string());
                return BK_ERR_UNKNOWN_NAME;
            }
        };
        match verify_transmutation(&table) {
            Ok(rep) => {
                unsafe { *holds = if rep.holds() { 1 } else { 0 } };
                BK_OK
            }
            Err(e) => {
                set_error(&e.to_string());
                BK_ERR_MATH
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        bk_string_free(p);
        s
    }

    #[test]
    fn catalog_lists_names() {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(bk_catalog(&mut out), BK_OK);
        let s = take_string(out);
        assert!(s.contains("ar_hopf") && s.contains("adjoint_tqr"));
    }

    #[test]
    fn open_check_write_round_trip() {
        let mut h: *mut BkStructure = ptr::null_mut();
        assert_eq!(bk_structure_open(cstr("ar_hopf").as_ptr(), &mut h), BK_OK);
        let mut holds: c_int = -1;
        let mut rep: *mut c_char = ptr::null_mut();
        assert_eq!(
            bk_structure_check(h, cstr("counit").as_ptr(), 2, &mut holds, &mut rep),
            BK_OK
        );
        assert_eq!(holds, 1);
        assert!(take_string(rep).contains("\"status\": \"holds\""));

        let mut doc: *mut c_char = ptr::null_mut();
        assert_eq!(bk_structure_write(h, &mut doc), BK_OK);
        let text = take_string(doc);
        let mut h2: *mut BkStructure = ptr::null_mut();
        assert_eq!(bk_structure_parse(cstr(&text).as_ptr(), &mut h2), BK_OK);
        let mut doc2: *mut c_char = ptr::null_mut();
        assert_eq!(bk_structure_write(h2, &mut doc2), BK_OK);
        assert_eq!(text, take_string(doc2));
        bk_structure_free(h);
        bk_structure_free(h2);
    }

    #[test]
    fn error_paths_set_messages() {
        let mut h: *mut BkStructure = ptr::null_mut();
        assert_eq!(
            bk_structure_open(cstr("nonsense").as_ptr(), &mut h),
            BK_ERR_UNKNOWN_NAME
        );
        let msg = unsafe { CStr::from_ptr(bk_last_error()) }.to_str().unwrap();
        assert!(msg.contains("nonsense"));
        assert_eq!(bk_structure_open(ptr::null(), &mut h), BK_ERR_NULL);
        let mut bad: *mut BkStructure = ptr::null_mut();
        assert_eq!(
            bk_structure_parse(cstr("garbage").as_ptr(), &mut bad),
            BK_ERR_PARSE
        );
    }

    #[test]
    fn comodule_and_transmutation_entry_points() {
        let mut holds: c_int = -1;
        assert_eq!(
            bk_comodule_algebra_check(cstr("adjoint_ar").as_ptr(), cstr("ar").as_ptr(), 2, &mut holds),
            BK_OK
        );
        assert_eq!(holds, 0);
        assert_eq!(
            bk_comodule_algebra_check(cstr("adjoint_ar").as_ptr(), cstr("br_abcd").as_ptr(), 2, &mut holds),
            BK_OK
        );
        assert_eq!(holds, 1);
        assert_eq!(
            bk_transmutation_check(cstr("transmute_host_ar").as_ptr(), &mut holds),
            BK_OK
        );
        assert_eq!(holds, 1);
    }
}
