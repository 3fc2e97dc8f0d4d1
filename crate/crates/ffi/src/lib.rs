//! C ABI over the weilkit engine.
//!
//! Every entry point returns a [`WkStatus`]. Objects cross the boundary as
//! opaque handles that the caller releases with the matching `*_free`
//! function. Strings returned to the caller are owned by the library and must
//! be released with [`wk_string_free`]. After a non-OK status the message is
//! available from [`wk_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weilkit::cohomology::cohomology_window;
use weilkit::groupoid::{holonomy_rep, nerve, BundleCocycle, FiniteGroupoid, GroupoidComplex};
use weilkit::io::{parse_document, Document};
use weilkit::lie::LieAlgebraData;
use weilkit::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WkStatus {
    Ok = 0,
    /// A mathematical check failed or a requested object does not exist.
    CheckFailed = 1,
    /// Malformed input: bad JSON, bad presentation, dimension mismatch.
    InvalidInput = 2,
    NullPointer = 3,
    /// Input was not valid UTF-8.
    InvalidUtf8 = 4,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 5,
    Internal = 6,
}

pub struct WkLieAlgebra(LieAlgebraData);

pub struct WkGroupoid(FiniteGroupoid);

pub struct WkBundle(BundleCocycle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> WkStatus {
    match weilkit::cli::exit_code(e) {
        2 => WkStatus::InvalidInput,
        _ => WkStatus::CheckFailed,
    }
}

fn fail(e: Error) -> WkStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

/// Runs `f`, converting panics to `WkStatus::Internal`.
fn guard(f: impl FnOnce() -> WkStatus) -> WkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            WkStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, WkStatus> {
    if s.is_null() {
        set_error("null pointer argument");
        return Err(WkStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        WkStatus::InvalidUtf8
    })
}

fn parse(json: &str) -> Result<Document, WkStatus> {
    parse_document(json).map_err(fail)
}

fn wrong_kind(expected: &str, found: &Document) -> WkStatus {
    set_error(format!("expected a {expected} document, found {}", found.kind()));
    WkStatus::InvalidInput
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Returns the message of the last failed call on this thread, or null.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the command-line interface in-process. `argv` excludes the program
/// name. The report is written to `*out` (release with `wk_string_free`) and
/// the process exit code the CLI would use to `*exit_code`.
///
/// # Safety
/// `argv` must point to `argc` valid C strings; `out` and `exit_code` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char, exit_code: *mut i32) -> WkStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() || (argc > 0 && argv.is_null()) {
            set_error("null pointer argument");
            return WkStatus::NullPointer;
        }
        let mut args = vec!["weilkit".to_string()];
        for i in 0..argc {
            args.push(try_status!(read_str(*argv.add(i))).to_string());
        }
        let outcome = weilkit::cli::run(args);
        if !outcome.stderr.is_empty() {
            set_error(outcome.stderr.trim_end());
        }
        *exit_code = outcome.code;
        *out = to_c_string(outcome.stdout);
        WkStatus::Ok
    })
}

/// Parses and validates a Lie algebra document (antisymmetry and Jacobi).
///
/// # Safety
/// `json` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_lie_algebra_from_json(json: *const c_char, out: *mut *mut WkLieAlgebra) -> WkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null pointer argument");
            return WkStatus::NullPointer;
        }
        let doc = try_status!(parse(try_status!(read_str(json))));
        let Document::LieAlgebra(d) = doc else {
            return wrong_kind("lie_algebra", &doc);
        };
        match d.build() {
            Ok(lie) => {
                *out = Box::into_raw(Box::new(WkLieAlgebra(lie)));
                WkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Dimension of the Lie algebra, or 0 for a null handle.
///
/// # Safety
/// `lie` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_lie_algebra_dim(lie: *const WkLieAlgebra) -> usize {
    lie.as_ref().map_or(0, |l| l.0.dim())
}

/// Returns 1 if the bracket vanishes identically, 0 otherwise or for null.
///
/// # Safety
/// `lie` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_lie_algebra_is_abelian(lie: *const WkLieAlgebra) -> i32 {
    lie.as_ref().map_or(0, |l| l.0.is_abelian() as i32)
}

/// # Safety
/// `lie` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wk_lie_algebra_free(lie: *mut WkLieAlgebra) {
    if !lie.is_null() {
        drop(Box::from_raw(lie));
    }
}

/// Parses and validates a finite groupoid document.
///
/// # Safety
/// `json` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_groupoid_from_json(json: *const c_char, out: *mut *mut WkGroupoid) -> WkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null pointer argument");
            return WkStatus::NullPointer;
        }
        let doc = try_status!(parse(try_status!(read_str(json))));
        let Document::Groupoid(d) = doc else {
            return wrong_kind("groupoid", &doc);
        };
        match d.build() {
            Ok(g) => {
                *out = Box::into_raw(Box::new(WkGroupoid(g)));
                WkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_groupoid_object_count(g: *const WkGroupoid) -> usize {
    g.as_ref().map_or(0, |g| g.0.n_objects())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_groupoid_arrow_count(g: *const WkGroupoid) -> usize {
    g.as_ref().map_or(0, |g| g.0.n_arrows())
}

/// Writes dim H^k over the rationals for k = 0..len into `dims`.
///
/// # Safety
/// `g` must be a live handle and `dims` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn wk_groupoid_cohomology(g: *const WkGroupoid, dims: *mut usize, len: usize) -> WkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            set_error("null groupoid handle");
            return WkStatus::NullPointer;
        };
        if len == 0 {
            return WkStatus::Ok;
        }
        if dims.is_null() {
            set_error("null output buffer");
            return WkStatus::NullPointer;
        }
        let n = nerve(&g.0, len);
        let c = GroupoidComplex { nerve: &n };
        for k in 0..len {
            match cohomology_window(&c, k as u32) {
                Ok(h) => *dims.add(k) = h.dimension,
                Err(e) => return fail(e),
            }
        }
        WkStatus::Ok
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wk_groupoid_free(g: *mut WkGroupoid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parses a bundle document and checks that the cocycle is a functor.
///
/// # Safety
/// `json` must be a valid C string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wk_bundle_from_json(json: *const c_char, out: *mut *mut WkBundle) -> WkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null pointer argument");
            return WkStatus::NullPointer;
        }
        let doc = try_status!(parse(try_status!(read_str(json))));
        let Document::Bundle(d) = doc else {
            return wrong_kind("bundle", &doc);
        };
        match d.build() {
            Ok(b) => {
                *out = Box::into_raw(Box::new(WkBundle(b)));
                WkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Holonomy of the bundle at `object`: for each loop at the object, writes
/// the index of its holonomy in the structure group into `out`. `*count`
/// holds the buffer length on entry and the number of loops on return; if the
/// buffer is too short nothing is written and `BufferTooSmall` is returned.
///
/// # Safety
/// `b` must be a live handle, `object` a valid C string, `count` valid for
/// reads and writes, and `out` valid for `*count` writes.
#[no_mangle]
pub unsafe extern "C" fn wk_bundle_holonomy(b: *const WkBundle, object: *const c_char, out: *mut usize, count: *mut usize) -> WkStatus {
    guard(|| {
        let (Some(b), false) = (b.as_ref(), count.is_null()) else {
            set_error("null pointer argument");
            return WkStatus::NullPointer;
        };
        let name = try_status!(read_str(object));
        let Some(x) = b.0.base.object_index(name) else {
            set_error(format!("object {name:?} not found"));
            return WkStatus::CheckFailed;
        };
        let rep = match holonomy_rep(&b.0, x) {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        let cap = *count;
        *count = rep.len();
        if cap < rep.len() {
            set_error(format!("buffer holds {cap} entries, {} needed", rep.len()));
            return WkStatus::BufferTooSmall;
        }
        if out.is_null() {
            set_error("null output buffer");
            return WkStatus::NullPointer;
        }
        for (i, &(_, g)) in rep.iter().enumerate() {
            *out.add(i) = g;
        }
        WkStatus::Ok
    })
}

/// Name of the structure-group element with the given index, or null if out
/// of range. Release with `wk_string_free`.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_bundle_group_element(b: *const WkBundle, index: usize) -> *mut c_char {
    match b.as_ref().and_then(|b| b.0.group.names().get(index)) {
        Some(n) => to_c_string(n.clone()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `b` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wk_bundle_free(b: *mut WkBundle) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/");

    fn fixture(name: &str) -> CString {
        CString::new(std::fs::read_to_string(format!("{FIXTURES}{name}")).unwrap()).unwrap()
    }

    fn last_error() -> String {
        let p = wk_last_error();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn lie_algebra_handle() {
        let json = fixture("so3.json");
        let mut h = ptr::null_mut();
        unsafe {
            assert_eq!(wk_lie_algebra_from_json(json.as_ptr(), &mut h), WkStatus::Ok);
            assert_eq!(wk_lie_algebra_dim(h), 3);
            assert_eq!(wk_lie_algebra_is_abelian(h), 0);
            wk_lie_algebra_free(h);
        }
    }

    #[test]
    fn rejected_inputs_set_status_and_message() {
        let mut h = ptr::null_mut();
        unsafe {
            let bad = fixture("bad_jacobi.json");
            assert_eq!(wk_lie_algebra_from_json(bad.as_ptr(), &mut h), WkStatus::CheckFailed);
            assert!(last_error().contains("Jacobi"));

            let malformed = fixture("malformed.json");
            assert_eq!(wk_lie_algebra_from_json(malformed.as_ptr(), &mut h), WkStatus::InvalidInput);
            assert!(last_error().contains("line"));

            let groupoid = fixture("z2_groupoid.json");
            assert_eq!(wk_lie_algebra_from_json(groupoid.as_ptr(), &mut h), WkStatus::InvalidInput);

            assert_eq!(wk_lie_algebra_from_json(ptr::null(), &mut h), WkStatus::NullPointer);
        }
        assert!(h.is_null());
    }

    #[test]
    fn groupoid_cohomology() {
        let json = fixture("pair3_groupoid.json");
        let mut g = ptr::null_mut();
        let mut dims = [9usize; 3];
        unsafe {
            assert_eq!(wk_groupoid_from_json(json.as_ptr(), &mut g), WkStatus::Ok);
            assert_eq!(wk_groupoid_object_count(g), 3);
            assert_eq!(wk_groupoid_arrow_count(g), 9);
            assert_eq!(wk_groupoid_cohomology(g, dims.as_mut_ptr(), dims.len()), WkStatus::Ok);
            wk_groupoid_free(g);
        }
        assert_eq!(dims, [1, 0, 0]);
    }

    #[test]
    fn bundle_holonomy() {
        let json = fixture("z4_mod2_bundle.json");
        let mut b = ptr::null_mut();
        unsafe {
            assert_eq!(wk_bundle_from_json(json.as_ptr(), &mut b), WkStatus::Ok);
            let obj = CString::new("*").unwrap();
            let mut count = 0usize;
            assert_eq!(wk_bundle_holonomy(b, obj.as_ptr(), ptr::null_mut(), &mut count), WkStatus::BufferTooSmall);
            assert!(count > 0);
            let mut out = vec![usize::MAX; count];
            assert_eq!(wk_bundle_holonomy(b, obj.as_ptr(), out.as_mut_ptr(), &mut count), WkStatus::Ok);
            let names: Vec<String> = out
                .iter()
                .map(|&i| {
                    let p = wk_bundle_group_element(b, i);
                    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
                    wk_string_free(p);
                    s
                })
                .collect();
            assert_eq!(names, ["0", "1", "0", "1"]);

            let missing = CString::new("nowhere").unwrap();
            let mut n = 0usize;
            assert_eq!(wk_bundle_holonomy(b, missing.as_ptr(), ptr::null_mut(), &mut n), WkStatus::CheckFailed);
            wk_bundle_free(b);
        }
    }

    #[test]
    fn run_cli_in_process() {
        let path = CString::new(format!("{FIXTURES}z2_groupoid.json")).unwrap();
        let cmd = CString::new("cohomology").unwrap();
        let argv = [cmd.as_ptr(), path.as_ptr()];
        let mut out = ptr::null_mut();
        let mut code = -1;
        unsafe {
            assert_eq!(wk_run(argv.len(), argv.as_ptr(), &mut out, &mut code), WkStatus::Ok);
            assert_eq!(code, 0);
            let text = CStr::from_ptr(out).to_string_lossy().into_owned();
            assert!(text.contains("\"dimension\""));
            wk_string_free(out);
        }
    }
}
