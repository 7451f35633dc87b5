//! C ABI over `hypvis`.
//!
//! Every function returns an `int32_t` status (`HV_OK` on success) and writes results
//! through caller-provided pointers. After a failure `hv_last_error` returns a message
//! for the calling thread. Catalogs and distortion parameter sets are opaque handles
//! released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hypvis::distortion::{self, DistortionParams};
use hypvis::hyperbolic::rho_half_plane;
use hypvis::visual_angle::{
    catalog_auto, visual_angle, visual_angle_bounds, visual_angle_oracle, Branch, CatalogField,
    PointCatalog, VisualAngleResult,
};
use hypvis::{ComplexPoint, Error, HalfPlanePair};

pub const HV_OK: i32 = 0;
pub const HV_NULL_POINTER: i32 = 1;
pub const HV_INVALID_POINT: i32 = 2;
pub const HV_DEGENERATE: i32 = 3;
pub const HV_OUT_OF_RANGE: i32 = 4;
pub const HV_NOT_ON_UNIT_CIRCLE: i32 = 5;
pub const HV_GEOMETRY: i32 = 6;
pub const HV_ABSENT: i32 = 7;
pub const HV_PANIC: i32 = 99;

pub const HV_BRANCH_ACUTE: i32 = 0;
pub const HV_BRANCH_OBTUSE: i32 = 1;
pub const HV_BRANCH_VERTICAL: i32 = 2;
pub const HV_BRANCH_HORIZONTAL: i32 = 3;

pub const HV_FIELD_A_STAR: i32 = 0;
pub const HV_FIELD_B_STAR: i32 = 1;
pub const HV_FIELD_C: i32 = 2;
pub const HV_FIELD_D: i32 = 3;
pub const HV_FIELD_F: i32 = 4;
pub const HV_FIELD_G: i32 = 5;
pub const HV_FIELD_M: i32 = 6;
pub const HV_FIELD_P: i32 = 7;
pub const HV_FIELD_Q: i32 = 8;
pub const HV_FIELD_U: i32 = 9;
pub const HV_FIELD_U1: i32 = 10;
pub const HV_FIELD_S: i32 = 11;
pub const HV_FIELD_V: i32 = 12;

/// A complex number `re + im·i`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HvComplex {
    pub re: f64,
    pub im: f64,
}

/// Visual angle with the real-axis point attaining it.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HvVisualAngle {
    pub angle: f64,
    pub attaining_point: f64,
    pub branch: i32,
    pub sin_angle: f64,
    pub tanh_half_rho: f64,
}

/// Construction points of a pair.
pub struct HvCatalog {
    catalog: PointCatalog,
}

/// Distortion functions at a fixed `K ≥ 1`.
pub struct HvDistortion {
    params: DistortionParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::NonFinite { .. } | Error::NotInHalfPlane { .. } | Error::OutsideDisk => {
            HV_INVALID_POINT
        }
        Error::DegeneratePair | Error::DegenerateTuple | Error::CoincidentPoints => HV_DEGENERATE,
        Error::OutOfRange { .. } | Error::InvalidRadius(_) => HV_OUT_OF_RANGE,
        Error::UnitViolation { .. } => HV_NOT_ON_UNIT_CIRCLE,
        Error::ParallelLines
        | Error::CollinearPoints
        | Error::PoleInput
        | Error::VerticalGeodesic
        | Error::EqualHeights => HV_GEOMETRY,
    }
}

/// Runs `f`, records any error or panic, and returns the status.
fn guard(f: impl FnOnce() -> Result<(), i32>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HV_OK,
        Ok(Err(code)) => code,
        Err(_) => {
            set_error("internal panic");
            HV_PANIC
        }
    }
}

fn check<T>(r: hypvis::Result<T>) -> Result<T, i32> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

fn null_pointer<T>() -> Result<T, i32> {
    set_error("null pointer argument");
    Err(HV_NULL_POINTER)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), i32> {
    if out.is_null() {
        return null_pointer();
    }
    out.write(value);
    Ok(())
}

fn pair(a: HvComplex, b: HvComplex) -> Result<HalfPlanePair, i32> {
    check(HalfPlanePair::from_coords(a.re, a.im, b.re, b.im))
}

fn field(index: i32) -> Result<CatalogField, i32> {
    usize::try_from(index)
        .ok()
        .and_then(|i| CatalogField::ALL.get(i).copied())
        .ok_or_else(|| {
            set_error(&format!("unknown catalog field {index}"));
            HV_OUT_OF_RANGE
        })
}

fn branch_code(b: Branch) -> i32 {
    match b {
        Branch::AcuteFormula => HV_BRANCH_ACUTE,
        Branch::ObtuseFormula => HV_BRANCH_OBTUSE,
        Branch::VerticalCase => HV_BRANCH_VERTICAL,
        Branch::HorizontalCase => HV_BRANCH_HORIZONTAL,
    }
}

impl From<VisualAngleResult> for HvVisualAngle {
    fn from(r: VisualAngleResult) -> Self {
        Self {
            angle: r.angle,
            attaining_point: r.attaining_point.x(),
            branch: branch_code(r.branch),
            sin_angle: r.big_t,
            tanh_half_rho: r.t,
        }
    }
}

impl From<ComplexPoint> for HvComplex {
    fn from(z: ComplexPoint) -> Self {
        Self {
            re: z.re(),
            im: z.im(),
        }
    }
}

/// Message describing the last failure on this thread. Valid until the next call
/// that fails on the same thread.
#[no_mangle]
pub extern "C" fn hv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Hyperbolic distance of two points of the upper half-plane.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_rho(a: HvComplex, b: HvComplex, out: *mut f64) -> i32 {
    guard(|| write(out, rho_half_plane(&pair(a, b)?)))
}

/// Visual angle of a distinct pair.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_visual_angle(
    a: HvComplex,
    b: HvComplex,
    out: *mut HvVisualAngle,
) -> i32 {
    guard(|| write(out, check(visual_angle(&pair(a, b)?))?.into()))
}

/// Brute-force visual angle on `grid` real-axis samples followed by refinement.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_visual_angle_oracle(
    a: HvComplex,
    b: HvComplex,
    grid: usize,
    out: *mut f64,
) -> i32 {
    guard(|| write(out, check(visual_angle_oracle(&pair(a, b)?, grid))?))
}

/// Lower and upper bounds of the visual angle in terms of the hyperbolic distance.
///
/// # Safety
/// `lower` and `upper` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_visual_angle_bounds(
    a: HvComplex,
    b: HvComplex,
    lower: *mut f64,
    upper: *mut f64,
) -> i32 {
    guard(|| {
        if lower.is_null() || upper.is_null() {
            return null_pointer();
        }
        let (lo, hi) = check(visual_angle_bounds(&pair(a, b)?))?;
        write(lower, lo)?;
        write(upper, hi)
    })
}

/// Builds the construction catalog of a pair. Unit-circle pairs use the
/// unit-circle closed forms.
///
/// # Safety
/// `out` must be null or valid for writes. The handle must be released with
/// `hv_catalog_free`.
#[no_mangle]
pub unsafe extern "C" fn hv_catalog_new(
    a: HvComplex,
    b: HvComplex,
    out: *mut *mut HvCatalog,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return null_pointer();
        }
        let catalog = check(catalog_auto(&pair(a, b)?))?;
        write(out, Box::into_raw(Box::new(HvCatalog { catalog })))
    })
}

/// Reads one field (`HV_FIELD_*`). Returns `HV_ABSENT` when the point does not exist
/// for the pair.
///
/// # Safety
/// `catalog` must come from `hv_catalog_new`; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_catalog_get(
    catalog: *const HvCatalog,
    field_index: i32,
    out: *mut HvComplex,
) -> i32 {
    guard(|| {
        let Some(c) = catalog.as_ref() else {
            return null_pointer();
        };
        let f = field(field_index)?;
        match c.catalog.get(f) {
            Some(z) => write(out, z.into()),
            None => {
                set_error(&format!("{} is not defined for this pair", f.name()));
                Err(HV_ABSENT)
            }
        }
    })
}

/// Releases a catalog. Null is ignored.
///
/// # Safety
/// `catalog` must be null or come from `hv_catalog_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hv_catalog_free(catalog: *mut HvCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// `μ(r)` for `r ∈ (0, 1)`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_mu(r: f64, out: *mut f64) -> i32 {
    guard(|| write(out, check(distortion::mu(r))?))
}

/// Inverse of `μ`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_mu_inv(y: f64, out: *mut f64) -> i32 {
    guard(|| write(out, check(distortion::mu_inv(y))?))
}

/// Creates distortion functions for `K ≥ 1`.
///
/// # Safety
/// `out` must be null or valid for writes. The handle must be released with
/// `hv_distortion_free`.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_new(k: f64, out: *mut *mut HvDistortion) -> i32 {
    guard(|| {
        if out.is_null() {
            return null_pointer();
        }
        let params = check(DistortionParams::new(k))?;
        write(out, Box::into_raw(Box::new(HvDistortion { params })))
    })
}

fn params<'a>(d: *const HvDistortion) -> Result<&'a DistortionParams, i32> {
    // SAFETY: callers pass null or a live handle from `hv_distortion_new`.
    match unsafe { d.as_ref() } {
        Some(d) => Ok(&d.params),
        None => null_pointer(),
    }
}

/// `λ(K)`.
///
/// # Safety
/// `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_lambda(d: *const HvDistortion, out: *mut f64) -> i32 {
    guard(|| write(out, params(d)?.lambda()))
}

/// `φ_K(r)` for `r ∈ [0, 1]`.
///
/// # Safety
/// `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_phi(d: *const HvDistortion, r: f64, out: *mut f64) -> i32 {
    guard(|| write(out, check(params(d)?.phi(r))?))
}

/// `η_K(t)` for `t ≥ 0`.
///
/// # Safety
/// `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_eta(d: *const HvDistortion, t: f64, out: *mut f64) -> i32 {
    guard(|| write(out, check(params(d)?.eta(t))?))
}

/// Upper bound for `tan(v(f(a), f(b))/2)` given `v(a, b) = v ∈ (0, π/2)`.
///
/// # Safety
/// `d` must come from `hv_distortion_new`; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_holder_bound(
    d: *const HvDistortion,
    v: f64,
    out: *mut f64,
) -> i32 {
    guard(|| write(out, check(params(d)?.holder_rhs(v))?))
}

/// Releases a distortion handle. Null is ignored.
///
/// # Safety
/// `d` must be null or come from `hv_distortion_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hv_distortion_free(d: *mut HvDistortion) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    fn c(re: f64, im: f64) -> HvComplex {
        HvComplex { re, im }
    }

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::DegeneratePair), HV_DEGENERATE);
        assert_eq!(
            status_of(&Error::NotInHalfPlane { re: 0.0, im: -1.0 }),
            HV_INVALID_POINT
        );
        assert_eq!(
            status_of(&Error::OutOfRange {
                what: "k",
                value: 0.0
            }),
            HV_OUT_OF_RANGE
        );
    }

    #[test]
    fn field_constants_follow_catalog_order() {
        assert_eq!(field(HV_FIELD_A_STAR).unwrap(), CatalogField::AStar);
        assert_eq!(field(HV_FIELD_U1).unwrap(), CatalogField::U1);
        assert_eq!(field(HV_FIELD_V).unwrap(), CatalogField::V);
        assert!(field(13).is_err() && field(-1).is_err());
    }

    #[test]
    fn error_message_is_recorded() {
        let mut out = 0.0;
        let s = unsafe { hv_rho(c(0.0, 1.0), c(0.0, -1.0), &mut out) };
        assert_eq!(s, HV_INVALID_POINT);
        let msg = unsafe { CStr::from_ptr(hv_last_error()) }.to_str().unwrap();
        assert!(msg.contains("upper half-plane"), "{msg}");
    }
}
