//! C ABI for the orbicoh engine: opaque group handles, status codes, and
//! flat output buffers. The header is generated by cbindgen into
//! `include/orbicoh.h`.
//!
//! Conventions: every function returning [`OrbicohStatus`] reports failure
//! details through [`orbicoh_last_error`]; all pointers must be valid for
//! the stated lengths; handles are freed exactly once with
//! [`orbicoh_group_free`]. Panics are caught at the boundary and surfaced
//! as `InternalPanic`.

use orbicoh::cli::{parse_ids, parse_module, parse_rep};
use orbicoh::group::{all_subgroups, builtin_group, make_family, FiniteGroup, Subgroup};
use orbicoh::groupcoh::group_cohomology_dims;
use orbicoh::homalg::{ext_dims, HullStrategy, ResolveCaps};
use orbicoh::linalg::PrimeField;
use orbicoh::orbit::build_orbit_category;
use orbicoh::relcoh::{periodicity_report, relative_cohomology_dims};
use orbicoh::spectral::e2_page;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbicohStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ComputeError = 3,
    InternalPanic = 4,
}

/// An immutable finite group handle.
pub struct OrbicohGroup {
    inner: FiniteGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn guard(body: impl FnOnce() -> OrbicohStatus) -> OrbicohStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            OrbicohStatus::InternalPanic
        }
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

/// Version string of the underlying engine; static storage.
#[no_mangle]
pub extern "C" fn orbicoh_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn orbicoh_status_name(status: OrbicohStatus) -> *const c_char {
    let name: &'static str = match status {
        OrbicohStatus::Ok => "Ok\0",
        OrbicohStatus::NullArgument => "NullArgument\0",
        OrbicohStatus::InvalidArgument => "InvalidArgument\0",
        OrbicohStatus::ComputeError => "ComputeError\0",
        OrbicohStatus::InternalPanic => "InternalPanic\0",
    };
    name.as_ptr().cast()
}

/// Copies the last error message on this thread into `buf` (NUL
/// terminated, truncated to `cap`); returns the full message length.
///
/// # Safety
/// `buf` must point to `cap` writable bytes, or be null (query length).
#[no_mangle]
pub unsafe extern "C" fn orbicoh_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a builtin group by name (`klein4`, `cyclic:n`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_group_builtin(
    name: *const c_char,
    out: *mut *mut OrbicohGroup,
) -> OrbicohStatus {
    guard(|| {
        let Some(name) = cstr(name) else {
            set_error("name is null or not UTF-8");
            return OrbicohStatus::NullArgument;
        };
        if out.is_null() {
            set_error("out is null");
            return OrbicohStatus::NullArgument;
        }
        match builtin_group(name) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(OrbicohGroup { inner: g }));
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::InvalidArgument
            }
        }
    })
}

/// Builds a group from a row-major `order` × `order` Cayley table of
/// element indices.
///
/// # Safety
/// `entries` must point to `order * order` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_group_from_cayley(
    order: u32,
    entries: *const u32,
    out: *mut *mut OrbicohGroup,
) -> OrbicohStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            set_error("entries or out is null");
            return OrbicohStatus::NullArgument;
        }
        let n = order as usize;
        let flat = std::slice::from_raw_parts(entries, n * n);
        let table: Vec<Vec<usize>> = (0..n)
            .map(|r| {
                flat[r * n..(r + 1) * n]
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect();
        match FiniteGroup::from_cayley(&table) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(OrbicohGroup { inner: g }));
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::InvalidArgument
            }
        }
    })
}

/// Releases a group handle.
///
/// # Safety
/// `group` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_group_free(group: *mut OrbicohGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of the group; 0 on a null handle.
///
/// # Safety
/// `group` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_group_order(group: *const OrbicohGroup) -> u32 {
    if group.is_null() {
        return 0;
    }
    (*group).inner.order() as u32
}

/// Number of subgroups, which bounds the `S<k>` id space.
///
/// # Safety
/// `group` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_subgroup_count(
    group: *const OrbicohGroup,
    out: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if group.is_null() || out.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        *out = all_subgroups(&(*group).inner).len() as u32;
        OrbicohStatus::Ok
    })
}

unsafe fn fill_dims(out: *mut u32, dims: &[usize]) {
    for (i, &d) in dims.iter().enumerate() {
        *out.add(i) = d as u32;
    }
}

/// Relative cohomology dimensions for degrees 0..=max_deg. `out_dims` must
/// hold max_deg + 1 entries.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_relative_cohomology(
    group: *const OrbicohGroup,
    family: *const c_char,
    p: u32,
    coeff: *const c_char,
    max_deg: u32,
    out_dims: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if group.is_null() || out_dims.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        let (Some(family), Some(coeff)) = (cstr(family), cstr(coeff)) else {
            set_error("family or coeff is null or not UTF-8");
            return OrbicohStatus::NullArgument;
        };
        let g = &(*group).inner;
        let run = || -> orbicoh::Result<Vec<usize>> {
            let field = PrimeField::new(p as u64)?;
            let fam = make_family(g, family)?;
            let rep = parse_rep(g, field, coeff)?;
            relative_cohomology_dims(g, &fam, &rep, max_deg as usize, ResolveCaps::default())
        };
        match run() {
            Ok(dims) => {
                fill_dims(out_dims, &dims);
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::ComputeError
            }
        }
    })
}

/// Ext dimensions between two module specs for degrees 0..=max_deg.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_ext_dims(
    group: *const OrbicohGroup,
    family: *const c_char,
    p: u32,
    m_spec: *const c_char,
    n_spec: *const c_char,
    max_deg: u32,
    out_dims: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if group.is_null() || out_dims.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        let (Some(family), Some(m_spec), Some(n_spec)) = (cstr(family), cstr(m_spec), cstr(n_spec))
        else {
            set_error("spec string is null or not UTF-8");
            return OrbicohStatus::NullArgument;
        };
        let g = &(*group).inner;
        let run = || -> orbicoh::Result<Vec<usize>> {
            let field = PrimeField::new(p as u64)?;
            let fam = make_family(g, family)?;
            let cat = build_orbit_category(g, &fam)?;
            let m = parse_module(&cat, field, m_spec)?;
            let n = parse_module(&cat, field, n_spec)?;
            ext_dims(
                &m,
                &n,
                max_deg as usize,
                HullStrategy::Minimized,
                ResolveCaps::default(),
            )
        };
        match run() {
            Ok(dims) => {
                fill_dims(out_dims, &dims);
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::ComputeError
            }
        }
    })
}

/// Ordinary group cohomology of a subgroup (`"full"` or `"S<k>"`) for
/// degrees 0..=max_deg.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_group_cohomology(
    group: *const OrbicohGroup,
    subgroup: *const c_char,
    p: u32,
    coeff: *const c_char,
    max_deg: u32,
    out_dims: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if group.is_null() || out_dims.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        let (Some(subgroup), Some(coeff)) = (cstr(subgroup), cstr(coeff)) else {
            set_error("subgroup or coeff is null or not UTF-8");
            return OrbicohStatus::NullArgument;
        };
        let g = &(*group).inner;
        let run = || -> orbicoh::Result<Vec<usize>> {
            let field = PrimeField::new(p as u64)?;
            let sub = if subgroup == "full" {
                Subgroup::full(g)
            } else {
                parse_ids(g, subgroup)?
                    .pop()
                    .ok_or(orbicoh::Error::BadSpec {
                        reason: "empty subgroup id".into(),
                    })?
            };
            let rep = parse_rep(g, field, coeff)?;
            group_cohomology_dims(g, &sub, &rep, max_deg as usize, ResolveCaps::default())
        };
        match run() {
            Ok(dims) => {
                fill_dims(out_dims, &dims);
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::ComputeError
            }
        }
    })
}

/// E2 page dimensions: out_grid receives (max_p + 1) * (max_q + 1) values,
/// row-major in p (entry p * (max_q + 1) + q).
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_e2_dims(
    group: *const OrbicohGroup,
    family: *const c_char,
    p: u32,
    coeff: *const c_char,
    max_p: u32,
    max_q: u32,
    out_grid: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if group.is_null() || out_grid.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        let (Some(family), Some(coeff)) = (cstr(family), cstr(coeff)) else {
            set_error("family or coeff is null or not UTF-8");
            return OrbicohStatus::NullArgument;
        };
        let g = &(*group).inner;
        let run = || -> orbicoh::Result<Vec<usize>> {
            let field = PrimeField::new(p as u64)?;
            let fam = make_family(g, family)?;
            let rep = parse_rep(g, field, coeff)?;
            let page = e2_page(
                g,
                &fam,
                &rep,
                max_p as usize,
                max_q as usize,
                ResolveCaps::default(),
            )?;
            let mut flat = Vec::with_capacity((max_p as usize + 1) * (max_q as usize + 1));
            for pp in 0..=max_p as usize {
                for qq in 0..=max_q as usize {
                    flat.push(page.dims[pp][qq]);
                }
            }
            Ok(flat)
        };
        match run() {
            Ok(flat) => {
                fill_dims(out_grid, &flat);
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::ComputeError
            }
        }
    })
}

/// Smallest verified period of a dimension sequence beyond the offset;
/// writes 0 when no period is detected in the window.
///
/// # Safety
/// `dims` must point to `len` values; `out_period` must be valid.
#[no_mangle]
pub unsafe extern "C" fn orbicoh_periodicity(
    dims: *const u32,
    len: usize,
    offset: u32,
    out_period: *mut u32,
) -> OrbicohStatus {
    guard(|| {
        if dims.is_null() || out_period.is_null() {
            set_error("null argument");
            return OrbicohStatus::NullArgument;
        }
        let seq: Vec<usize> = std::slice::from_raw_parts(dims, len)
            .iter()
            .map(|&v| v as usize)
            .collect();
        match periodicity_report(&seq, offset as usize) {
            Ok(report) => {
                *out_period = report.period.unwrap_or(0) as u32;
                OrbicohStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                OrbicohStatus::InvalidArgument
            }
        }
    })
}

// keep CString linked in for potential future string-returning APIs
#[allow(dead_code)]
fn _unused(_: CString) {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn builtin_roundtrip() {
        unsafe {
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            let st = orbicoh_group_builtin(c("klein4").as_ptr(), &mut g);
            assert_eq!(st, OrbicohStatus::Ok);
            assert_eq!(orbicoh_group_order(g), 4);
            let mut count = 0u32;
            assert_eq!(orbicoh_subgroup_count(g, &mut count), OrbicohStatus::Ok);
            assert_eq!(count, 5);
            orbicoh_group_free(g);
        }
    }

    #[test]
    fn relative_cohomology_through_abi() {
        unsafe {
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            orbicoh_group_builtin(c("klein4").as_ptr(), &mut g);
            let mut dims = [0u32; 9];
            let st = orbicoh_relative_cohomology(
                g,
                c("cyclic").as_ptr(),
                2,
                c("trivial").as_ptr(),
                8,
                dims.as_mut_ptr(),
            );
            assert_eq!(st, OrbicohStatus::Ok);
            assert_eq!(dims, [1, 0, 1, 3, 5, 7, 9, 11, 13]);
            let mut period = 99u32;
            assert_eq!(
                orbicoh_periodicity(dims.as_ptr(), dims.len(), 2, &mut period),
                OrbicohStatus::Ok
            );
            assert_eq!(period, 0, "no period detected");
            orbicoh_group_free(g);
        }
    }

    #[test]
    fn ext_and_groupcoh_through_abi() {
        unsafe {
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            orbicoh_group_builtin(c("klein4").as_ptr(), &mut g);
            let mut dims = [0u32; 5];
            let st = orbicoh_ext_dims(
                g,
                c("cyclic").as_ptr(),
                2,
                c("interval:S0").as_ptr(),
                c("constant").as_ptr(),
                4,
                dims.as_mut_ptr(),
            );
            assert_eq!(st, OrbicohStatus::Ok);
            assert_eq!(dims, [1, 2, 3, 4, 5]);
            let st = orbicoh_group_cohomology(
                g,
                c("full").as_ptr(),
                2,
                c("trivial").as_ptr(),
                4,
                dims.as_mut_ptr(),
            );
            assert_eq!(st, OrbicohStatus::Ok);
            assert_eq!(dims, [1, 2, 3, 4, 5]);
            orbicoh_group_free(g);
        }
    }

    #[test]
    fn e2_grid_through_abi() {
        unsafe {
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            orbicoh_group_builtin(c("klein4").as_ptr(), &mut g);
            let mut grid = [0u32; 12]; // (2+1) * (3+1)
            let st = orbicoh_e2_dims(
                g,
                c("cyclic").as_ptr(),
                2,
                c("trivial").as_ptr(),
                2,
                3,
                grid.as_mut_ptr(),
            );
            assert_eq!(st, OrbicohStatus::Ok);
            // p-major rows: p=0 -> (1,3,3,3), p=1 -> (0,3,3,3), p=2 -> (1,3,3,3)
            assert_eq!(grid, [1, 3, 3, 3, 0, 3, 3, 3, 1, 3, 3, 3]);
            orbicoh_group_free(g);
        }
    }

    #[test]
    fn cayley_input_and_errors() {
        unsafe {
            let entries: [u32; 4] = [0, 1, 1, 0];
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            assert_eq!(
                orbicoh_group_from_cayley(2, entries.as_ptr(), &mut g),
                OrbicohStatus::Ok
            );
            assert_eq!(orbicoh_group_order(g), 2);
            orbicoh_group_free(g);

            let mut bad: *mut OrbicohGroup = ptr::null_mut();
            let st = orbicoh_group_builtin(c("nonsense").as_ptr(), &mut bad);
            assert_eq!(st, OrbicohStatus::InvalidArgument);
            let mut buf = [0i8; 128];
            let n = orbicoh_last_error(buf.as_mut_ptr(), buf.len());
            assert!(n > 0);
            let msg = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
            assert!(msg.contains("UnknownName"), "{msg}");

            assert_eq!(
                orbicoh_group_builtin(ptr::null(), &mut bad),
                OrbicohStatus::NullArgument
            );
        }
    }

    #[test]
    fn compute_error_reported() {
        unsafe {
            let mut g: *mut OrbicohGroup = ptr::null_mut();
            orbicoh_group_builtin(c("klein4").as_ptr(), &mut g);
            let mut dims = [0u32; 3];
            let st = orbicoh_relative_cohomology(
                g,
                c("cyclic").as_ptr(),
                6, // not prime
                c("trivial").as_ptr(),
                2,
                dims.as_mut_ptr(),
            );
            assert_eq!(st, OrbicohStatus::ComputeError);
            orbicoh_group_free(g);
        }
    }

    #[test]
    fn status_names_and_version() {
        unsafe {
            let name = CStr::from_ptr(orbicoh_status_name(OrbicohStatus::Ok));
            assert_eq!(name.to_str().unwrap(), "Ok");
            let v = CStr::from_ptr(orbicoh_version());
            assert!(!v.to_str().unwrap().is_empty());
        }
    }
}
