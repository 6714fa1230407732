use std::f64::consts::{FRAC_PI_2, PI};

use freefall::expr::parse_metric_spec;
use freefall::geometry::{
    anholonomity_at, christoffel_at, spin_connection_at, tetrad_postulate_residual, vierbein_at,
    FdStep, FrameField, GeometryError, Point,
};
use freefall::metrics;

fn frame(name: &str) -> FrameField {
    FrameField::new(metrics::builtin(name).unwrap().unwrap())
}

// oracle values from oracles/schwarzschild.py (rs = 1, r = 2, theta = pi/2)
#[test]
fn schwarzschild_symbolic_oracle() {
    let f = frame("schwarzschild");
    let p = Point([0.0, 2.0, FRAC_PI_2, 0.0]);
    let e = vierbein_at(f.spec(), &p).unwrap();
    for (i, want) in [0.5f64.sqrt(), 2.0f64.sqrt(), 2.0, 2.0]
        .into_iter()
        .enumerate()
    {
        assert!((e[i][i] - want).abs() < 1e-12, "e[{i}][{i}] = {}", e[i][i]);
    }
    let omega = anholonomity_at(&f, &p).unwrap();
    assert!((omega[1][0][0] - 0.125).abs() < 1e-6);
    assert!((omega[0][1][0] + 0.125).abs() < 1e-6);
    let c = christoffel_at(&f, &p).unwrap();
    assert!((c[1][0][0] - 0.0625).abs() < 1e-6);
    assert!((c[0][0][1] - 0.25).abs() < 1e-6);
    assert!((c[1][1][1] + 0.25).abs() < 1e-6);
    assert!((c[1][2][2] + 1.0).abs() < 1e-6);
    assert!((c[2][1][2] - 0.5).abs() < 1e-6);
    let s = spin_connection_at(&f, &p).unwrap();
    assert!((s[0][0][1] + 0.125).abs() < 1e-6);
    assert!((s[2][1][2] - 0.5f64.sqrt()).abs() < 1e-6);
    assert!((s[3][1][3] - 0.5f64.sqrt()).abs() < 1e-6);
    assert!(tetrad_postulate_residual(&f, &p).unwrap() < 1e-8);
}

#[test]
fn spherical_minkowski_closed_forms() {
    // Gamma^r_{theta theta} = -r, Gamma^theta_{r theta} = 1/r, Gamma^phi_{theta phi} = cot(theta)
    let f = frame("spherical-minkowski");
    let (r, th) = (3.0, 0.8);
    let c = christoffel_at(&f, &Point([0.0, r, th, 0.0])).unwrap();
    assert!((c[1][2][2] + r).abs() < 1e-8);
    assert!((c[2][1][2] - 1.0 / r).abs() < 1e-8);
    assert!((c[3][2][3] - th.cos() / th.sin()).abs() < 1e-8);
    assert!((c[1][3][3] + r * th.sin().powi(2)).abs() < 1e-8);
}

#[test]
fn rindler_acceleration() {
    // Gamma^x_tt = a (1 + a x), Gamma^t_tx = a / (1 + a x)
    let mut spec = metrics::builtin("rindler").unwrap().unwrap();
    spec.set_param("a", 0.5).unwrap();
    let f = FrameField::new(spec);
    let x = 0.4;
    let c = christoffel_at(&f, &Point([0.0, x, 0.0, 0.0])).unwrap();
    assert!((c[1][0][0] - 0.5 * (1.0 + 0.5 * x)).abs() < 1e-8);
    assert!((c[0][0][1] - 0.5 / (1.0 + 0.5 * x)).abs() < 1e-8);
}

#[test]
fn flat_metric_has_vanishing_connections() {
    let f = frame("minkowski");
    let b = f.connection_at(&Point([1.0, -2.0, 3.0, 0.5])).unwrap();
    assert!(b.omega.iter().flatten().flatten().all(|v| *v == 0.0));
    assert!(b.spin.iter().flatten().flatten().all(|v| *v == 0.0));
    assert!(b.christoffel.iter().flatten().flatten().all(|v| *v == 0.0));
    assert_eq!(b.residual, 0.0);
}

#[test]
fn non_diagonal_metric_frame() {
    let spec = parse_metric_spec(
        "coords = t,x,y,z\nparam w = 0.2\ng[0][0] = 1 - w^2*(x^2 + y^2)\ng[0][1] = w*y\ng[0][2] = -w*x\n\
         g[1][1] = -1\ng[2][2] = -1\ng[3][3] = -1\n",
    )
    .unwrap();
    let f = FrameField::new(spec);
    for p in [
        [0.0, 0.1, 0.2, 0.0],
        [3.0, -1.0, 0.5, 2.0],
        [0.0, 1.5, 1.5, -1.0],
    ] {
        let b = f.connection_at(&Point(p)).unwrap();
        assert!(b.tetrad.reconstruction_error() < 1e-14);
        assert!(b.spin_antisymmetry_error() < 1e-8, "{p:?}");
        assert!(b.residual < 1e-8, "{p:?}: {}", b.residual);
        // upper-triangular frame
        for a in 1..4 {
            for mu in 0..a {
                assert_eq!(b.tetrad.e[a][mu], 0.0);
            }
        }
    }
}

#[test]
fn residual_converges_quadratically() {
    let f = frame("schwarzschild");
    let p = Point([0.0, 3.0, 1.1, 0.3]);
    let step = FdStep::Absolute([1e-2; 4]);
    let coarse = FrameField::with_step(f.spec().clone(), step)
        .unwrap()
        .connection_at(&p)
        .unwrap()
        .residual;
    let fine = FrameField::with_step(f.spec().clone(), step.halved())
        .unwrap()
        .connection_at(&p)
        .unwrap()
        .residual;
    let ratio = coarse / fine;
    assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
}

#[test]
fn domain_and_signature_errors() {
    let f = frame("schwarzschild");
    assert!(matches!(
        f.connection_at(&Point([0.0, 0.5, 1.0, 0.0])),
        Err(GeometryError::Signature { .. })
    ));
    // the stencil straddles the horizon
    assert!(matches!(
        f.connection_at(&Point([0.0, 1.0, 1.0, 0.0])),
        Err(GeometryError::Eval { .. })
    ));
    let sphere = frame("spherical-minkowski");
    assert!(matches!(
        sphere.tetrad_at(&Point([0.0, 1.0, 0.0, 0.0])),
        Err(GeometryError::Degenerate { .. })
    ));
    assert!(matches!(
        Point::new([0.0, f64::NAN, 0.0, 0.0]),
        Err(GeometryError::NonFinitePoint(_))
    ));
    assert_eq!(
        FrameField::with_step(f.spec().clone(), FdStep::Relative(0.0)),
        Err(GeometryError::BadStep)
    );
}

#[test]
fn relative_step_scales_with_coordinates() {
    let p = Point([0.0, 250.0, PI, -0.5]);
    assert_eq!(
        FdStep::Relative(1e-5).at(&p),
        [1e-5, 250.0 * 1e-5, PI * 1e-5, 1e-5]
    );
}
