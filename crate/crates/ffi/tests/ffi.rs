use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use freefall_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ff_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn builtin(name: &str) -> *mut FfMetric {
    let name = CString::new(name).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ff_metric_builtin(name.as_ptr(), &mut m) },
        FfStatus::Ok
    );
    assert!(!m.is_null());
    m
}

fn empty_connection() -> FfConnection {
    FfConnection {
        g: [0.0; 16],
        e: [0.0; 16],
        einv: [0.0; 16],
        omega: [0.0; 64],
        spin: [0.0; 64],
        christoffel: [0.0; 64],
        residual: f64::NAN,
    }
}

#[test]
fn schwarzschild_connection_values() {
    let m = builtin("schwarzschild");
    let point = [0.0, 2.0, std::f64::consts::FRAC_PI_2, 0.0];
    let mut c = empty_connection();
    assert_eq!(
        unsafe { ff_frame_connection(m, point.as_ptr(), 0.0, &mut c) },
        FfStatus::Ok
    );
    assert!((c.e[0] - 0.5f64.sqrt()).abs() < 1e-12);
    assert!((c.e[5] - 2.0f64.sqrt()).abs() < 1e-12);
    // omega[r][t][t], christoffel[r][t][t], spin[t][0][1]
    assert!((c.omega[16] - 0.125).abs() < 1e-6);
    assert!((c.christoffel[16] - 0.0625).abs() < 1e-6);
    assert!((c.spin[1] + 0.125).abs() < 1e-6);
    assert!(c.residual < 1e-6);
    unsafe { ff_metric_free(m) };
}

#[test]
fn parse_set_param_and_text() {
    let src = CString::new("coords = t,x,y,z\nparam a = 1\ng[0][0] = (1 + a*x)^2\ng[1][1] = -1\ng[2][2] = -1\ng[3][3] = -1\n")
        .unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ff_metric_parse(src.as_ptr(), &mut m) },
        FfStatus::Ok
    );
    let a = CString::new("a").unwrap();
    assert_eq!(
        unsafe { ff_metric_set_param(m, a.as_ptr(), 2.5) },
        FfStatus::Ok
    );
    let missing = CString::new("b").unwrap();
    assert_eq!(
        unsafe { ff_metric_set_param(m, missing.as_ptr(), 1.0) },
        FfStatus::Parse
    );
    assert!(!last_error().is_empty());

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ff_metric_to_text(m, &mut text) }, FfStatus::Ok);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(s.contains("param a = 2.5"), "{s}");
    unsafe {
        ff_string_free(text);
        ff_metric_free(m);
    }
}

#[test]
fn error_statuses() {
    let bad = CString::new("coords = t,x,y,z\ng[0][0] = 1 +\n").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ff_metric_parse(bad.as_ptr(), &mut m) },
        FfStatus::Parse
    );
    assert!(m.is_null());

    let unknown = CString::new("kerr").unwrap();
    assert_eq!(
        unsafe { ff_metric_builtin(unknown.as_ptr(), &mut m) },
        FfStatus::Parse
    );
    assert!(last_error().contains("kerr"));

    let s = builtin("schwarzschild");
    let inside = [0.0, 0.5, 1.0, 0.0];
    let mut c = empty_connection();
    assert_eq!(
        unsafe { ff_frame_connection(s, inside.as_ptr(), 0.0, &mut c) },
        FfStatus::Domain
    );
    let nan = [0.0, f64::NAN, 1.0, 0.0];
    assert_eq!(
        unsafe { ff_frame_connection(s, nan.as_ptr(), 0.0, &mut c) },
        FfStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { ff_frame_connection(s, inside.as_ptr(), 0.0, ptr::null_mut()) },
        FfStatus::NullPointer
    );
    unsafe { ff_metric_free(s) };

    let mut v = 0.0;
    assert_eq!(
        unsafe { ff_hawking_temperature(-1.0, FfUnits::Si, &mut v) },
        FfStatus::InvalidArgument
    );
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(
        unsafe { ff_complex_gamma(-2.0, 0.0, &mut re, &mut im) },
        FfStatus::Domain
    );
    assert_eq!(
        unsafe { ff_fourier_amplitude_numeric(1.0, 1.0, 1.0, 1.0, 0.0, 0, 1, &mut re, &mut im) },
        FfStatus::Convergence
    );
    unsafe { ff_metric_free(ptr::null_mut()) };
}

#[test]
fn thermal_entry_points() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(
        unsafe { ff_complex_gamma(5.0, 0.0, &mut re, &mut im) },
        FfStatus::Ok
    );
    assert!((re - 24.0).abs() < 1e-12 && im.abs() < 1e-12);

    let (mut nre, mut nim) = (0.0, 0.0);
    assert_eq!(
        unsafe { ff_fourier_amplitude_analytic(1.0, 1.0, 1.0, 1.0, &mut re, &mut im) },
        FfStatus::Ok
    );
    assert_eq!(
        unsafe { ff_fourier_amplitude_numeric(1.0, 1.0, 1.0, 1.0, 0.0, 0, 0, &mut nre, &mut nim) },
        FfStatus::Ok
    );
    assert!((re * re + im * im - 0.011_755_441_347_369_11).abs() < 1e-12);
    assert!(((nre - re).powi(2) + (nim - im).powi(2)).sqrt() < 1e-9);

    let mut t = 0.0;
    assert_eq!(
        unsafe { ff_hawking_temperature(1.0, FfUnits::Natural, &mut t) },
        FfStatus::Ok
    );
    assert_eq!(t, 1.0 / (8.0 * std::f64::consts::PI));
    let mut a = 0.0;
    assert_eq!(
        unsafe { ff_surface_gravity(1.0, 1.0, FfUnits::Natural, &mut a) },
        FfStatus::Ok
    );
    assert_eq!(a, 1.0);
    assert_eq!(
        unsafe { ff_unruh_temperature(2.0 * std::f64::consts::PI, FfUnits::Natural, &mut t) },
        FfStatus::Ok
    );
    assert_eq!(t, 1.0);
    let mut rs = 0.0;
    assert_eq!(
        unsafe { ff_schwarzschild_radius(1.989e30, FfUnits::Si, &mut rs) },
        FfStatus::Ok
    );
    assert!((rs - 2954.0).abs() < 1.0);
}

#[test]
fn lingrav_entry_points() {
    // pure-gauge amplitude k_a xi_b + k_b xi_a is annihilated by the kinetic operator
    let k = [1.0, 0.3, -0.2, 0.5];
    let xi = [0.2, -0.7, 0.4, 0.1];
    let amp: Vec<f64> = (0..16)
        .map(|i| k[i / 4] * xi[i % 4] + k[i % 4] * xi[i / 4])
        .collect();
    let mut t = [f64::NAN; 16];
    assert_eq!(
        unsafe { ff_kinetic_apply(amp.as_ptr(), k.as_ptr(), t.as_mut_ptr()) },
        FfStatus::Ok
    );
    assert!(t.iter().all(|v| v.abs() < 1e-12), "{t:?}");
    let mut q = f64::NAN;
    assert_eq!(
        unsafe { ff_action_density(amp.as_ptr(), k.as_ptr(), 1.0, &mut q) },
        FfStatus::Ok
    );
    assert!(q.abs() < 1e-12);
    assert_eq!(
        unsafe { ff_action_density(amp.as_ptr(), k.as_ptr(), 0.0, &mut q) },
        FfStatus::InvalidArgument
    );

    let mut asym = amp.clone();
    asym[1] += 1.0;
    assert_eq!(
        unsafe { ff_kinetic_apply(asym.as_ptr(), k.as_ptr(), t.as_mut_ptr()) },
        FfStatus::InvalidArgument
    );

    let mut s = FfGaugeSummary::default();
    assert_eq!(unsafe { ff_gauge_check(100, 42, &mut s) }, FfStatus::Ok);
    assert_eq!((s.trials, s.failed, s.first_failure), (100, 0, -1));
    assert!(s.worst_gauge < 1e-10 && s.worst_bianchi < 1e-12);
}

#[test]
fn header_declares_every_entry_point() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/freefall.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for name in [
        "ff_last_error",
        "ff_metric_parse",
        "ff_metric_builtin",
        "ff_metric_set_param",
        "ff_metric_to_text",
        "ff_string_free",
        "ff_metric_free",
        "ff_frame_connection",
        "ff_complex_gamma",
        "ff_fourier_amplitude_analytic",
        "ff_fourier_amplitude_numeric",
        "ff_unruh_temperature",
        "ff_surface_gravity",
        "ff_hawking_temperature",
        "ff_schwarzschild_radius",
        "ff_kinetic_apply",
        "ff_action_density",
        "ff_gauge_check",
        "typedef struct FfMetric FfMetric",
        "FF_STATUS_CONVERGENCE = 5",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    // a C compiler, when present, must accept the header as-is
    if let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-x", "c"])
        .arg(&header)
        .output()
    {
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}
