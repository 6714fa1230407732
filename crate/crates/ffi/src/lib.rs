//! C ABI over the `freefall` library.
//!
//! Every function returns an [`FfStatus`]; results go through out-pointers.
//! Metrics are opaque [`FfMetric`] handles released with [`ff_metric_free`].
//! After a non-OK status, [`ff_last_error`] returns a description that stays
//! valid until the next call on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use freefall::expr::{parse_metric_spec, MetricSpec};
use freefall::geometry::{FdStep, FrameField, GeometryError, Point};
use freefall::lingrav::{self, Coupling, GaugeTolerances, PolarizationMode};
use freefall::metrics;
use freefall::thermal::{self, ChirpParams, PhysicalConstants, QuadControls, ThermalError};
use num_complex::Complex64;

/// Status codes; the numeric values match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfStatus {
    Ok = 0,
    /// malformed text, unknown name or parameter
    Parse = 2,
    /// evaluation domain error, degenerate metric or wrong signature
    Domain = 3,
    /// quadrature or series did not converge
    Convergence = 5,
    /// argument outside its documented range
    InvalidArgument = 7,
    NullPointer = 8,
    /// internal panic caught at the boundary
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfUnits {
    Si = 0,
    Natural = 1,
}

impl FfUnits {
    fn constants(self) -> PhysicalConstants {
        match self {
            FfUnits::Si => PhysicalConstants::si(),
            FfUnits::Natural => PhysicalConstants::natural(),
        }
    }
}

/// Opaque metric handle.
pub struct FfMetric {
    spec: MetricSpec,
}

/// Frame data at one point. Rank-2 arrays are row-major `[i*4 + j]`, rank-3
/// arrays `[i*16 + j*4 + k]`, with the index meanings of the library:
/// `e[alpha][mu]`, `omega[mu][nu][lambda]`, `spin[mu][alpha][beta]`,
/// `christoffel[lambda][mu][nu]`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FfConnection {
    pub g: [f64; 16],
    pub e: [f64; 16],
    pub einv: [f64; 16],
    pub omega: [f64; 64],
    pub spin: [f64; 64],
    pub christoffel: [f64; 64],
    pub residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FfGaugeSummary {
    pub trials: u64,
    pub failed: u64,
    pub worst_gauge: f64,
    pub worst_bianchi: f64,
    /// first failing trial, or -1
    pub first_failure: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn fail(status: FfStatus, msg: impl AsRef<str>) -> FfStatus {
    set_error(msg.as_ref());
    status
}

fn guard(body: impl FnOnce() -> FfStatus) -> FfStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(FfStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, FfStatus> {
    if ptr.is_null() {
        return Err(fail(FfStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(FfStatus::Parse, "string is not valid UTF-8"))
}

fn thermal_status(e: &ThermalError) -> FfStatus {
    match e {
        ThermalError::Convergence { .. } => fail(FfStatus::Convergence, e.to_string()),
        ThermalError::Pole(_) | ThermalError::PhaseOverflow(_) => {
            fail(FfStatus::Domain, e.to_string())
        }
        ThermalError::InvalidParameter(_) => fail(FfStatus::InvalidArgument, e.to_string()),
    }
}

macro_rules! out_ptr {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(FfStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Last error message of the calling thread; empty after a successful call.
#[no_mangle]
pub extern "C" fn ff_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse metric-spec text into a new handle.
#[no_mangle]
pub unsafe extern "C" fn ff_metric_parse(text: *const c_char, out: *mut *mut FfMetric) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_metric_spec(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(FfMetric { spec }));
                FfStatus::Ok
            }
            Err(e) => fail(FfStatus::Parse, e.to_string()),
        }
    })
}

/// Handle for one of `minkowski`, `spherical-minkowski`, `schwarzschild`, `rindler`.
#[no_mangle]
pub unsafe extern "C" fn ff_metric_builtin(
    name: *const c_char,
    out: *mut *mut FfMetric,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match metrics::builtin(name) {
            Some(Ok(spec)) => {
                *out = Box::into_raw(Box::new(FfMetric { spec }));
                FfStatus::Ok
            }
            Some(Err(e)) => fail(FfStatus::Parse, e.to_string()),
            None => fail(FfStatus::Parse, format!("unknown built-in metric `{name}`")),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_metric_set_param(
    metric: *mut FfMetric,
    name: *const c_char,
    value: f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(metric);
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match (*metric).spec.set_param(name, value) {
            Ok(()) => FfStatus::Ok,
            Err(e) => fail(FfStatus::Parse, e.to_string()),
        }
    })
}

/// Canonical spec text; free the returned string with [`ff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ff_metric_to_text(
    metric: *const FfMetric,
    out: *mut *mut c_char,
) -> FfStatus {
    guard(|| {
        out_ptr!(metric, out);
        match CString::new((*metric).spec.to_text()) {
            Ok(s) => {
                *out = s.into_raw();
                FfStatus::Ok
            }
            Err(_) => fail(FfStatus::Panic, "spec text contains NUL"),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ff_metric_free(metric: *mut FfMetric) {
    if !metric.is_null() {
        drop(Box::from_raw(metric));
    }
}

fn flat2(m: &[[f64; 4]; 4]) -> [f64; 16] {
    std::array::from_fn(|i| m[i / 4][i % 4])
}

fn flat3(t: &[[[f64; 4]; 4]; 4]) -> [f64; 64] {
    std::array::from_fn(|i| t[i / 16][(i / 4) % 4][i % 4])
}

/// Frame, connections and tetrad-postulate residual at `point[0..4]`.
/// `rel_step <= 0` selects the default relative step.
#[no_mangle]
pub unsafe extern "C" fn ff_frame_connection(
    metric: *const FfMetric,
    point: *const f64,
    rel_step: f64,
    out: *mut FfConnection,
) -> FfStatus {
    guard(|| {
        out_ptr!(metric, point, out);
        let x: [f64; 4] = std::ptr::read(point as *const [f64; 4]);
        let step = if rel_step > 0.0 {
            FdStep::Relative(rel_step)
        } else {
            FdStep::default()
        };
        let p = match Point::new(x) {
            Ok(p) => p,
            Err(e) => return fail(FfStatus::InvalidArgument, e.to_string()),
        };
        let frame = match FrameField::with_step((*metric).spec.clone(), step) {
            Ok(f) => f,
            Err(e) => return fail(FfStatus::InvalidArgument, e.to_string()),
        };
        match frame.connection_at(&p) {
            Ok(b) => {
                *out = FfConnection {
                    g: flat2(&b.tetrad.g),
                    e: flat2(&b.tetrad.e),
                    einv: flat2(&b.tetrad.einv),
                    omega: flat3(&b.omega),
                    spin: flat3(&b.spin),
                    christoffel: flat3(&b.christoffel),
                    residual: b.residual,
                };
                FfStatus::Ok
            }
            Err(e @ GeometryError::BadStep) => fail(FfStatus::InvalidArgument, e.to_string()),
            Err(e) => fail(FfStatus::Domain, e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_complex_gamma(
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out_re, out_im);
        match thermal::complex_gamma(Complex64::new(re, im)) {
            Ok(g) => {
                *out_re = g.re;
                *out_im = g.im;
                FfStatus::Ok
            }
            Err(e) => thermal_status(&e),
        }
    })
}

/// Closed-form chirp amplitude `F(Omega)` for emitted frequency `omega`,
/// acceleration `a` and light speed `c`.
#[no_mangle]
pub unsafe extern "C" fn ff_fourier_amplitude_analytic(
    big_omega: f64,
    omega: f64,
    a: f64,
    c: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out_re, out_im);
        let result = ChirpParams::new(omega, a, c)
            .and_then(|p| thermal::fourier_amplitude_analytic(big_omega, &p));
        match result {
            Ok(f) => {
                *out_re = f.re;
                *out_im = f.im;
                FfStatus::Ok
            }
            Err(e) => thermal_status(&e),
        }
    })
}

/// Quadrature path; `split <= 0`, `series_terms == 0` or `max_intervals == 0`
/// select the defaults.
#[no_mangle]
pub unsafe extern "C" fn ff_fourier_amplitude_numeric(
    big_omega: f64,
    omega: f64,
    a: f64,
    c: f64,
    split: f64,
    series_terms: u32,
    max_intervals: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out_re, out_im);
        let mut ctrl = QuadControls::default();
        if split > 0.0 {
            ctrl.split = split;
        }
        if series_terms > 0 {
            ctrl.series_terms = series_terms as usize;
        }
        if max_intervals > 0 {
            ctrl.max_intervals = max_intervals as usize;
        }
        let result = ChirpParams::new(omega, a, c)
            .and_then(|p| thermal::fourier_amplitude_numeric(big_omega, &p, &ctrl));
        match result {
            Ok(f) => {
                *out_re = f.re;
                *out_im = f.im;
                FfStatus::Ok
            }
            Err(e) => thermal_status(&e),
        }
    })
}

fn scalar(out: *mut f64, result: Result<f64, ThermalError>) -> FfStatus {
    match result {
        Ok(v) => {
            // SAFETY: callers check `out` for null first
            unsafe { *out = v };
            FfStatus::Ok
        }
        Err(e) => thermal_status(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn ff_unruh_temperature(
    acceleration: f64,
    units: FfUnits,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        scalar(
            out,
            thermal::unruh_temperature(acceleration, &units.constants()),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_surface_gravity(
    mass: f64,
    radius: f64,
    units: FfUnits,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        scalar(
            out,
            thermal::surface_gravity(mass, radius, &units.constants()),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_hawking_temperature(
    mass: f64,
    units: FfUnits,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        scalar(out, thermal::hawking_temperature(mass, &units.constants()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_schwarzschild_radius(
    mass: f64,
    units: FfUnits,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        scalar(out, thermal::schwarzschild_radius(mass, &units.constants()))
    })
}

unsafe fn read_mode(amplitude: *const f64, k: *const f64) -> Result<PolarizationMode, FfStatus> {
    let a: [f64; 16] = std::ptr::read(amplitude as *const [f64; 16]);
    let k: [f64; 4] = std::ptr::read(k as *const [f64; 4]);
    let m: [[f64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| a[i * 4 + j]));
    PolarizationMode::new(m, k).map_err(|e| fail(FfStatus::InvalidArgument, e.to_string()))
}

/// `T^{eg}` for the symmetric row-major amplitude `amplitude[16]` and covector `k[4]`.
#[no_mangle]
pub unsafe extern "C" fn ff_kinetic_apply(
    amplitude: *const f64,
    k: *const f64,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(amplitude, k, out);
        match read_mode(amplitude, k) {
            Ok(mode) => {
                let t = flat2(&lingrav::kinetic_apply(&mode));
                std::ptr::copy_nonoverlapping(t.as_ptr(), out, 16);
                FfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ff_action_density(
    amplitude: *const f64,
    k: *const f64,
    kappa: f64,
    out: *mut f64,
) -> FfStatus {
    guard(|| {
        out_ptr!(amplitude, k, out);
        let coupling = match Coupling::new(kappa) {
            Ok(c) => c,
            Err(e) => return fail(FfStatus::InvalidArgument, e.to_string()),
        };
        match read_mode(amplitude, k) {
            Ok(mode) => {
                *out = lingrav::action_density(&mode, &coupling);
                FfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Randomized gauge identities, natural-unit coupling, default tolerances.
#[no_mangle]
pub unsafe extern "C" fn ff_gauge_check(
    trials: u64,
    seed: u64,
    out: *mut FfGaugeSummary,
) -> FfStatus {
    guard(|| {
        out_ptr!(out);
        match lingrav::gauge_orbit_check_with(
            trials,
            seed,
            &Coupling::natural(),
            &GaugeTolerances::default(),
        ) {
            Ok(report) => {
                *out = FfGaugeSummary {
                    trials,
                    failed: report.failed() as u64,
                    worst_gauge: report.worst_gauge(),
                    worst_bianchi: report.worst_bianchi(),
                    first_failure: report.first_failure().map_or(-1, |f| f.trial as i64),
                };
                FfStatus::Ok
            }
            Err(e) => fail(FfStatus::InvalidArgument, e.to_string()),
        }
    })
}
