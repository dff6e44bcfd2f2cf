//! C ABI for the hv2 exact computer-algebra engine.
//!
//! Conventions, uniform across the interface:
//!
//! * Handles (`Hv2Spec`, `Hv2Poly`) are opaque; create them with the
//!   `*_parse` functions and release them with the matching `*_free`.
//! * Strings returned through out-parameters are NUL-terminated UTF-8 owned
//!   by the caller; release them with `hv2_string_free`.
//! * Every fallible function returns an [`Hv2Status`]; on failure the
//!   out-parameters are left null/zeroed and a human-readable message is
//!   available from `hv2_last_error_message` (per thread).
//! * Panics never unwind across the boundary; they surface as
//!   `Hv2Status::Panic` (or `-1` from `hv2_run`).

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hv2_core::cli;
use hv2_core::error::Error;
use hv2_core::lie::Generator;
use hv2_core::modules::ModuleSpec;
use hv2_core::poly::Poly;

/// Result codes for every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Hv2Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Malformed scalar, polynomial, generator, or record text.
    Parse = 3,
    /// Division by zero or another impossible exact-arithmetic step.
    Arithmetic = 4,
    /// Inputs violate a documented precondition.
    Precondition = 5,
    /// The two records cannot be compared (different variant or parameters).
    Incompatible = 6,
    /// An action family did not match any classified shape.
    NotClassified = 7,
    /// A window too small to generate the required constraints.
    Window = 8,
    /// The operation is not defined on the given domain.
    Unsupported = 9,
    /// A panic was caught at the boundary.
    Panic = 10,
}

/// Opaque handle to a module record.
pub struct Hv2Spec(ModuleSpec);

/// Opaque handle to an exact polynomial in `d1`, `d2`.
pub struct Hv2Poly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(msg: &str) {
    LAST_ERROR.with(|slot| slot.borrow_mut().replace_range(.., msg));
}

fn status_of(err: &Error) -> Hv2Status {
    set_last_error(&err.to_string());
    match err {
        Error::Parse(_) => Hv2Status::Parse,
        Error::DivisionByZero => Hv2Status::Arithmetic,
        Error::Precondition(_) => Hv2Status::Precondition,
        Error::Incompatible(_) => Hv2Status::Incompatible,
        Error::NotClassified(_) => Hv2Status::NotClassified,
        Error::Window(_) => Hv2Status::Window,
        Error::Unsupported(_) => Hv2Status::Unsupported,
    }
}

/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn str_in<'a>(ptr: *const c_char) -> Result<&'a str, Hv2Status> {
    if ptr.is_null() {
        set_last_error("null string argument");
        return Err(Hv2Status::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8");
        Hv2Status::Utf8
    })
}

/// Our renderings are pure ASCII, so the CString conversion cannot fail.
fn string_out(s: String) -> *mut c_char {
    CString::new(s).expect("rendered text has no interior NUL").into_raw()
}

fn guard(body: impl FnOnce() -> Hv2Status) -> Hv2Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            Hv2Status::Panic
        }
    }
}

/// Parses a module record from its flag-set form, e.g.
/// `"--p 1,0 --lambda 2,3 --alpha 0 --b0 1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hv2_spec_parse(
    text: *const c_char,
    out: *mut *mut Hv2Spec,
) -> Hv2Status {
    guard(|| {
        if out.is_null() {
            set_last_error("null out-parameter");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, ptr::null_mut());
        let text = match str_in(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match text.parse::<ModuleSpec>() {
            Ok(spec) => {
                ptr::write(out, Box::into_raw(Box::new(Hv2Spec(spec))));
                Hv2Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Renders the canonical flag-set form of a record.
///
/// # Safety
/// `spec` must come from `hv2_spec_parse`; `out` must be a valid pointer.
/// Free the string with `hv2_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hv2_spec_render(
    spec: *const Hv2Spec,
    out: *mut *mut c_char,
) -> Hv2Status {
    guard(|| {
        if spec.is_null() || out.is_null() {
            set_last_error("null argument");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, string_out((*spec).0.to_flag_string()));
        Hv2Status::Ok
    })
}

/// Releases a record handle. Null is ignored.
///
/// # Safety
/// `spec` must be null or come from `hv2_spec_parse`, and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hv2_spec_free(spec: *mut Hv2Spec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Parses a polynomial such as `"d1^2*d2 - 1/2*d2 + 2i"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hv2_poly_parse(
    text: *const c_char,
    out: *mut *mut Hv2Poly,
) -> Hv2Status {
    guard(|| {
        if out.is_null() {
            set_last_error("null out-parameter");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, ptr::null_mut());
        let text = match str_in(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match text.parse::<Poly>() {
            Ok(f) => {
                ptr::write(out, Box::into_raw(Box::new(Hv2Poly(f))));
                Hv2Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Renders a polynomial in canonical graded-lexicographic order.
///
/// # Safety
/// `poly` must come from a parse or action call; `out` must be a valid
/// pointer. Free the string with `hv2_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hv2_poly_render(
    poly: *const Hv2Poly,
    out: *mut *mut c_char,
) -> Hv2Status {
    guard(|| {
        if poly.is_null() || out.is_null() {
            set_last_error("null argument");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, string_out((*poly).0.to_string()));
        Hv2Status::Ok
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `poly` must be null or come from this interface, and must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hv2_poly_free(poly: *mut Hv2Poly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Releases a string returned by this interface. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this interface, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hv2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Applies one generator (literal `"T(m1,m2)"`, `"E(m1,m2)"`, `"D1"`, or
/// `"D2"`) to a polynomial under the record's action.
///
/// # Safety
/// `spec` and `f` must be live handles; `generator` a NUL-terminated string;
/// `out` a valid pointer. The result is a new handle.
#[no_mangle]
pub unsafe extern "C" fn hv2_act(
    spec: *const Hv2Spec,
    generator: *const c_char,
    f: *const Hv2Poly,
    out: *mut *mut Hv2Poly,
) -> Hv2Status {
    guard(|| {
        if spec.is_null() || f.is_null() || out.is_null() {
            set_last_error("null argument");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, ptr::null_mut());
        let gen_text = match str_in(generator) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let generator = match gen_text.parse::<Generator>() {
            Ok(g) => g,
            Err(e) => return status_of(&e),
        };
        let result = (*spec).0.act_generator(&generator, &(*f).0);
        ptr::write(out, Box::into_raw(Box::new(Hv2Poly(result))));
        Hv2Status::Ok
    })
}

/// Whether `f` lies in the record's distinguished submodule (vanishes at the
/// submodule point).
///
/// # Safety
/// `spec` and `f` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hv2_in_distinguished_submodule(
    spec: *const Hv2Spec,
    f: *const Hv2Poly,
    out: *mut bool,
) -> Hv2Status {
    guard(|| {
        if spec.is_null() || f.is_null() || out.is_null() {
            set_last_error("null argument");
            return Hv2Status::NullArgument;
        }
        ptr::write(out, (*spec).0.in_distinguished_submodule(&(*f).0));
        Hv2Status::Ok
    })
}

/// Scans `[-bound, bound]^2` lexicographically for an index whose T-action
/// pushes `f` out of the distinguished submodule. On success `*found` says
/// whether a witness exists within the bound and `*m1`, `*m2` hold it.
///
/// # Safety
/// `spec` and `f` must be live handles; `found`, `m1`, `m2` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hv2_simplicity_witness(
    spec: *const Hv2Spec,
    f: *const Hv2Poly,
    bound: i64,
    found: *mut bool,
    m1: *mut i64,
    m2: *mut i64,
) -> Hv2Status {
    guard(|| {
        if spec.is_null() || f.is_null() || found.is_null() || m1.is_null() || m2.is_null() {
            set_last_error("null argument");
            return Hv2Status::NullArgument;
        }
        ptr::write(found, false);
        ptr::write(m1, 0);
        ptr::write(m2, 0);
        match (*spec).0.simplicity_witness(&(*f).0, bound) {
            Ok(Some(m)) => {
                ptr::write(found, true);
                ptr::write(m1, m.m1);
                ptr::write(m2, m.m2);
                Hv2Status::Ok
            }
            Ok(None) => Hv2Status::Ok,
            Err(e) => status_of(&e),
        }
    })
}

/// Copies the current thread's last error message (empty if none).
///
/// # Safety
/// `out` must be a valid pointer. Free the string with `hv2_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hv2_last_error_message(out: *mut *mut c_char) -> Hv2Status {
    guard(|| {
        if out.is_null() {
            return Hv2Status::NullArgument;
        }
        let msg = LAST_ERROR.with(|slot| slot.borrow().clone());
        ptr::write(out, string_out(msg));
        Hv2Status::Ok
    })
}

/// Runs one CLI invocation in-process. `argv` follows the C `main`
/// convention (`argv[0]` is the program name). The rendered standard output
/// and standard error are returned through the out-parameters (free with
/// `hv2_string_free`); the return value is the process exit code (0 pass,
/// 1 failures, 2 usage error, 3 arithmetic/precondition error), or -1 for
/// null/invalid arguments or an internal panic.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out_stdout` and
/// `out_stderr` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hv2_run(
    argc: c_int,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> c_int {
    let result = catch_unwind(AssertUnwindSafe(|| {
        if out_stdout.is_null() || out_stderr.is_null() {
            set_last_error("null out-parameter");
            return -1;
        }
        ptr::write(out_stdout, ptr::null_mut());
        ptr::write(out_stderr, ptr::null_mut());
        if argc < 0 || (argc > 0 && argv.is_null()) {
            set_last_error("invalid argv");
            return -1;
        }
        let mut args: Vec<String> = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            match str_in(*argv.add(i)) {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return -1,
            }
        }
        if args.is_empty() {
            args.push("hv2".to_string());
        }
        let outcome = cli::run(args);
        ptr::write(out_stdout, string_out(outcome.stdout));
        ptr::write(out_stderr, string_out(outcome.stderr));
        outcome.exit_code
    }));
    match result {
        Ok(code) => code,
        Err(_) => {
            set_last_error("internal panic");
            -1
        }
    }
}
