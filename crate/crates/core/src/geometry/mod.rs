//! Local Lorentz frames from a metric.
//!
//! Index conventions used throughout:
//!
//! * `eta = diag(+1, -1, -1, -1)`.
//! * Vierbein `e[alpha][mu]` = e^alpha_mu (Lorentz row, coordinate column) with
//!   `eta_ab e^a_mu e^b_nu = g_mu_nu`; inverse `einv[alpha][mu]` = e_alpha^mu.
//! * Anholonomity `omega[mu][nu][lambda]` =
//!   Omega_{mu nu}^lambda = 1/2 [e_a^lambda d_mu e^a_nu - (mu <-> nu)].
//! * Spin connection `spin[mu][alpha][beta]` = Gamma_mu^{alpha beta}. With all
//!   Omega indices lowered by g and
//!   `S_{abc} = Omega_{abc} - Omega_{cab} + Omega_{bca}`, the coordinate form is
//!   `Gamma_{mu nu lambda} = S_{lambda mu nu}` (no factor 1/2); its last two
//!   indices are raised with g and converted with e^alpha_nu e^beta_lambda.
//!   This is the ordering and normalization for which the tetrad postulate
//!   `d_mu e^a_nu - Gamma^l_{mu nu} e^a_l + Gamma_mu^a_b e^b_nu = 0` holds.
//! * Christoffel `christoffel[lambda][mu][nu]` = Gamma^lambda_{mu nu}.
//!
//! Derivatives are second-order central differences with step
//! `h_mu = rel * max(1, |x_mu|)` (default `rel = 1e-5`) or fixed per-axis steps.

mod dump;
mod tetrad;

use thiserror::Error;

use crate::expr::{ExprError, MetricSpec};

pub use dump::connection_csv;

pub type Mat4 = [[f64; 4]; 4];
pub type Rank3 = [[[f64; 4]; 4]; 4];

pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Charts with `|det g|` below this are rejected as degenerate.
pub const DEGENERATE_DET: f64 = 1e-12;

pub const DEFAULT_RELATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("coordinates must be finite, got {0:?}")]
    NonFinitePoint([f64; 4]),
    #[error("metric evaluation failed at x + {offset:?}: {source}")]
    Eval { offset: [f64; 4], source: ExprError },
    #[error("metric is degenerate at {point:?}: |det g| = {det:e}")]
    Degenerate { point: [f64; 4], det: f64 },
    #[error("non-Lorentzian signature at {point:?}: {detail}")]
    Signature { point: [f64; 4], detail: String },
    #[error("finite-difference step must be positive and finite")]
    BadStep,
}

/// Coordinate values, ordered as in the metric's `coords`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub [f64; 4]);

impl Point {
    pub fn new(x: [f64; 4]) -> Result<Self, GeometryError> {
        if x.iter().all(|v| v.is_finite()) {
            Ok(Point(x))
        } else {
            Err(GeometryError::NonFinitePoint(x))
        }
    }

    fn shifted(&self, axis: usize, h: f64) -> [f64; 4] {
        let mut x = self.0;
        x[axis] += h;
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FdStep {
    /// `h_mu = rel * max(1, |x_mu|)`
    Relative(f64),
    Absolute([f64; 4]),
}

impl Default for FdStep {
    fn default() -> Self {
        FdStep::Relative(DEFAULT_RELATIVE_STEP)
    }
}

impl FdStep {
    pub fn at(&self, p: &Point) -> [f64; 4] {
        match *self {
            FdStep::Relative(rel) => p.0.map(|x| rel * x.abs().max(1.0)),
            FdStep::Absolute(h) => h,
        }
    }

    fn validate(&self) -> Result<(), GeometryError> {
        let ok = match self {
            FdStep::Relative(r) => r.is_finite() && *r > 0.0,
            FdStep::Absolute(h) => h.iter().all(|v| v.is_finite() && *v > 0.0),
        };
        if ok {
            Ok(())
        } else {
            Err(GeometryError::BadStep)
        }
    }

    /// Same policy with every step halved.
    pub fn halved(&self) -> FdStep {
        match *self {
            FdStep::Relative(r) => FdStep::Relative(r / 2.0),
            FdStep::Absolute(h) => FdStep::Absolute(h.map(|v| v / 2.0)),
        }
    }
}

/// Metric, vierbein and inverse vierbein at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad {
    pub g: Mat4,
    pub e: Mat4,
    pub einv: Mat4,
}

impl Tetrad {
    /// `max|eta e e - g| / max|g|`
    pub fn reconstruction_error(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let s: f64 = (0..4).map(|a| ETA[a] * self.e[a][mu] * self.e[a][nu]).sum();
                worst = worst.max((s - self.g[mu][nu]).abs());
                scale = scale.max(self.g[mu][nu].abs());
            }
        }
        worst / scale
    }

    /// Largest deviation of `e einv^T` and `einv^T e` from the identity.
    pub fn inverse_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let lorentz: f64 = (0..4).map(|mu| self.e[i][mu] * self.einv[j][mu]).sum();
                let coord: f64 = (0..4).map(|a| self.einv[a][i] * self.e[a][j]).sum();
                worst = worst
                    .max((lorentz - delta).abs())
                    .max((coord - delta).abs());
            }
        }
        worst
    }
}

/// Metric spec plus finite-difference policy.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    spec: MetricSpec,
    step: FdStep,
}

impl FrameField {
    pub fn new(spec: MetricSpec) -> Self {
        FrameField {
            spec,
            step: FdStep::default(),
        }
    }

    pub fn with_step(spec: MetricSpec, step: FdStep) -> Result<Self, GeometryError> {
        step.validate()?;
        Ok(FrameField { spec, step })
    }

    pub fn spec(&self) -> &MetricSpec {
        &self.spec
    }

    pub fn step(&self) -> FdStep {
        self.step
    }

    fn metric_offset(&self, x: &[f64; 4], offset: [f64; 4]) -> Result<Mat4, GeometryError> {
        self.spec
            .eval_at(x)
            .map_err(|source| GeometryError::Eval { offset, source })
    }

    pub fn metric_at(&self, p: &Point) -> Result<Mat4, GeometryError> {
        self.metric_offset(&p.0, [0.0; 4])
    }

    pub fn tetrad_at(&self, p: &Point) -> Result<Tetrad, GeometryError> {
        self.tetrad_offset(&p.0, [0.0; 4])
    }

    fn tetrad_offset(&self, x: &[f64; 4], offset: [f64; 4]) -> Result<Tetrad, GeometryError> {
        let g = self.metric_offset(x, offset)?;
        let f = tetrad::ldl(&g);
        let det: f64 = f.d.iter().product();
        if !(det.abs() >= DEGENERATE_DET) {
            return Err(GeometryError::Degenerate { point: *x, det });
        }
        let bad = tetrad::signature_violations(&f.d);
        if !bad.is_empty() {
            let detail = if self.spec.is_diagonal() {
                bad.iter()
                    .map(|&k| {
                        let want = if k == 0 { "> 0" } else { "< 0" };
                        format!("g[{k}][{k}] = {} (expected {want})", g[k][k])
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            } else {
                bad.iter()
                    .map(|&k| format!("pivot {k} = {} (expected sign {:+})", f.d[k], ETA[k]))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(GeometryError::Signature { point: *x, detail });
        }
        let e = tetrad::frame_from_ldl(&f);
        let einv = tetrad::invert(&e)
            .map(|m| tetrad::transpose(&m))
            .ok_or(GeometryError::Degenerate { point: *x, det })?;
        Ok(Tetrad { g, e, einv })
    }

    /// Central-difference derivatives of the metric and vierbein.
    fn derivatives(&self, p: &Point) -> Result<Derivatives, GeometryError> {
        let h = self.step.at(p);
        let mut dg = [[[0.0; 4]; 4]; 4];
        let mut de = [[[0.0; 4]; 4]; 4];
        for mu in 0..4 {
            let mut off = [0.0; 4];
            off[mu] = h[mu];
            let plus = self.tetrad_offset(&p.shifted(mu, h[mu]), off)?;
            off[mu] = -h[mu];
            let minus = self.tetrad_offset(&p.shifted(mu, -h[mu]), off)?;
            let inv2h = 1.0 / (2.0 * h[mu]);
            for i in 0..4 {
                for j in 0..4 {
                    dg[mu][i][j] = (plus.g[i][j] - minus.g[i][j]) * inv2h;
                    de[mu][i][j] = (plus.e[i][j] - minus.e[i][j]) * inv2h;
                }
            }
        }
        Ok(Derivatives {
            at: self.tetrad_at(p)?,
            dg,
            de,
            h,
        })
    }

    pub fn connection_at(&self, p: &Point) -> Result<ConnectionBundle, GeometryError> {
        let d = self.derivatives(p)?;
        let omega = anholonomity(&d);
        let spin = spin_connection(&d.at, &omega);
        let christoffel = christoffel(&d)?;
        let residual = postulate_residual(&d, &spin, &christoffel);
        Ok(ConnectionBundle {
            point: *p,
            step: d.h,
            tetrad: d.at,
            omega,
            spin,
            christoffel,
            residual,
        })
    }
}

struct Derivatives {
    at: Tetrad,
    /// `dg[mu][a][b]` = d_mu g_ab
    dg: Rank3,
    /// `de[mu][alpha][nu]` = d_mu e^alpha_nu
    de: Rank3,
    h: [f64; 4],
}

/// Everything computed from one finite-difference stencil around a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionBundle {
    pub point: Point,
    pub step: [f64; 4],
    pub tetrad: Tetrad,
    pub omega: Rank3,
    pub spin: Rank3,
    pub christoffel: Rank3,
    pub residual: f64,
}

impl ConnectionBundle {
    /// `max |Gamma_mu^{ab} + Gamma_mu^{ba}|`
    pub fn spin_antisymmetry_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    worst = worst.max((self.spin[m][a][b] + self.spin[m][b][a]).abs());
                }
            }
        }
        worst
    }
}

fn anholonomity(d: &Derivatives) -> Rank3 {
    let einv = &d.at.einv;
    // w[mu][nu][l] = 1/2 e_a^l d_mu e^a_nu
    let mut w = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for l in 0..4 {
                w[mu][nu][l] = 0.5 * (0..4).map(|a| einv[a][l] * d.de[mu][a][nu]).sum::<f64>();
            }
        }
    }
    let mut omega = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for l in 0..4 {
                omega[mu][nu][l] = w[mu][nu][l] - w[nu][mu][l];
            }
        }
    }
    omega
}

fn spin_connection(t: &Tetrad, omega: &Rank3) -> Rank3 {
    let g = &t.g;
    let ginv = tetrad::invert(g).unwrap_or([[0.0; 4]; 4]);
    let mut low = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                low[a][b][c] = (0..4).map(|k| omega[a][b][k] * g[k][c]).sum();
            }
        }
    }
    let s = |a: usize, b: usize, c: usize| low[a][b][c] - low[c][a][b] + low[b][c][a];
    // Gamma_mu^{nu lambda} = g^{nu rho} g^{lambda sigma} S_{sigma mu rho}
    let mut coord = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        let mut lowered = [[0.0; 4]; 4];
        for rho in 0..4 {
            for sigma in 0..4 {
                lowered[rho][sigma] = s(sigma, mu, rho);
            }
        }
        for nu in 0..4 {
            for l in 0..4 {
                let mut acc = 0.0;
                for rho in 0..4 {
                    for sigma in 0..4 {
                        acc += ginv[nu][rho] * ginv[l][sigma] * lowered[rho][sigma];
                    }
                }
                coord[mu][nu][l] = acc;
            }
        }
    }
    let e = &t.e;
    let mut spin = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for nu in 0..4 {
                    for l in 0..4 {
                        acc += e[a][nu] * e[b][l] * coord[mu][nu][l];
                    }
                }
                spin[mu][a][b] = acc;
            }
        }
    }
    spin
}

fn christoffel(d: &Derivatives) -> Result<Rank3, GeometryError> {
    let ginv = tetrad::invert(&d.at.g).ok_or(GeometryError::Degenerate {
        point: [f64::NAN; 4],
        det: 0.0,
    })?;
    let mut out = [[[0.0; 4]; 4]; 4];
    for l in 0..4 {
        for mu in 0..4 {
            for nu in mu..4 {
                let v = 0.5
                    * (0..4)
                        .map(|r| ginv[l][r] * (d.dg[mu][r][nu] + d.dg[nu][r][mu] - d.dg[r][mu][nu]))
                        .sum::<f64>();
                out[l][mu][nu] = v;
                out[l][nu][mu] = v;
            }
        }
    }
    Ok(out)
}

fn postulate_residual(d: &Derivatives, spin: &Rank3, christoffel: &Rank3) -> f64 {
    let e = &d.at.e;
    let mut worst = 0.0f64;
    for a in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                let affine: f64 = (0..4).map(|l| christoffel[l][mu][nu] * e[a][l]).sum();
                // Gamma_mu^a_b = Gamma_mu^{a c} eta_cb
                let lorentz: f64 = (0..4).map(|b| spin[mu][a][b] * ETA[b] * e[b][nu]).sum();
                worst = worst.max((d.de[mu][a][nu] - affine + lorentz).abs());
            }
        }
    }
    worst
}

/// e^alpha_mu at `p` using the default step policy (the frame needs no derivatives).
pub fn vierbein_at(spec: &MetricSpec, p: &Point) -> Result<Mat4, GeometryError> {
    Ok(FrameField::new(spec.clone()).tetrad_at(p)?.e)
}

pub fn anholonomity_at(frame: &FrameField, p: &Point) -> Result<Rank3, GeometryError> {
    Ok(anholonomity(&frame.derivatives(p)?))
}

pub fn spin_connection_at(frame: &FrameField, p: &Point) -> Result<Rank3, GeometryError> {
    let d = frame.derivatives(p)?;
    Ok(spin_connection(&d.at, &anholonomity(&d)))
}

pub fn christoffel_at(frame: &FrameField, p: &Point) -> Result<Rank3, GeometryError> {
    christoffel(&frame.derivatives(p)?)
}

pub fn tetrad_postulate_residual(frame: &FrameField, p: &Point) -> Result<f64, GeometryError> {
    Ok(frame.connection_at(p)?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};

    fn frame(name: &str) -> FrameField {
        FrameField::new(metrics::builtin(name).unwrap().unwrap())
    }

    fn max_abs(t: &Rank3) -> f64 {
        t.iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn minkowski_is_trivial() {
        let f = frame("minkowski");
        let p = Point::new([0.3, -1.0, 2.0, 5.0]).unwrap();
        let e = vierbein_at(f.spec(), &p).unwrap();
        for a in 0..4 {
            for m in 0..4 {
                assert_eq!(e[a][m], if a == m { 1.0 } else { 0.0 });
            }
        }
        let b = f.connection_at(&p).unwrap();
        assert_eq!(max_abs(&b.omega), 0.0);
        assert_eq!(max_abs(&b.spin), 0.0);
        assert_eq!(max_abs(&b.christoffel), 0.0);
        assert_eq!(b.residual, 0.0);
    }

    #[test]
    fn schwarzschild_vierbein() {
        let f = frame("schwarzschild");
        let e = vierbein_at(f.spec(), &Point([0.0, 2.0, FRAC_PI_2, 0.0])).unwrap();
        let want = [FRAC_1_SQRT_2, SQRT_2, 2.0, 2.0];
        for k in 0..4 {
            assert!((e[k][k] - want[k]).abs() < 1e-7);
        }
    }

    #[test]
    fn inside_horizon_is_signature_error() {
        let f = frame("schwarzschild");
        match f.tetrad_at(&Point([0.0, 0.5, FRAC_PI_2, 0.0])) {
            Err(GeometryError::Signature { detail, .. }) => {
                assert!(detail.contains("g[0][0]"), "{detail}");
                assert!(detail.contains("g[1][1]"), "{detail}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn polar_axis_is_degenerate() {
        let f = frame("spherical-minkowski");
        assert!(matches!(
            f.tetrad_at(&Point([0.0, 2.0, 0.0, 0.0])),
            Err(GeometryError::Degenerate { .. })
        ));
    }

    #[test]
    fn horizon_is_domain_error_with_offset() {
        let f = frame("schwarzschild");
        assert!(matches!(
            f.tetrad_at(&Point([0.0, 1.0, FRAC_PI_2, 0.0])),
            Err(GeometryError::Eval {
                offset: [0.0, 0.0, 0.0, 0.0],
                ..
            })
        ));
        // stencil straddles the horizon: the central point is fine, r - h is not
        let fine = FrameField::with_step(f.spec().clone(), FdStep::Absolute([0.1, 0.2, 0.1, 0.1]))
            .unwrap();
        let err = fine
            .connection_at(&Point([0.0, 1.1, FRAC_PI_2, 0.0]))
            .unwrap_err();
        match err {
            GeometryError::Signature { .. }
            | GeometryError::Eval { .. }
            | GeometryError::Degenerate { .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_finite_point_and_bad_step() {
        assert!(Point::new([0.0, f64::NAN, 0.0, 0.0]).is_err());
        let spec = metrics::builtin("minkowski").unwrap().unwrap();
        assert_eq!(
            FrameField::with_step(spec.clone(), FdStep::Relative(0.0)),
            Err(GeometryError::BadStep)
        );
        assert!(FrameField::with_step(spec, FdStep::Absolute([1e-3, 1e-3, -1.0, 1e-3])).is_err());
    }

    #[test]
    fn anholonomity_exactly_antisymmetric() {
        let f = frame("schwarzschild");
        let om = anholonomity_at(&f, &Point([0.0, 3.0, 1.0, 0.4])).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                for l in 0..4 {
                    assert_eq!(om[m][n][l], -om[n][m][l]);
                }
            }
        }
    }

    #[test]
    fn christoffel_exactly_symmetric() {
        let f = frame("spherical-minkowski");
        let c = christoffel_at(&f, &Point([0.0, 1.7, 0.9, 0.2])).unwrap();
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert_eq!(c[l][m][n], c[l][n][m]);
                }
            }
        }
    }

    #[test]
    fn non_diagonal_metric_passes_postulate() {
        let src = "\
coords = t,x,y,z
param w = 0.3
g[0][0] = 1 - w^2*(x^2 + y^2)
g[0][1] = w*y
g[0][2] = -w*x
g[1][1] = -1
g[2][2] = -1
g[3][3] = -1
";
        let spec = crate::expr::parse_metric_spec(src).unwrap();
        let f = FrameField::new(spec);
        let b = f.connection_at(&Point([0.0, 0.4, -0.7, 0.1])).unwrap();
        assert!(b.tetrad.reconstruction_error() <= 1e-12);
        assert!(b.tetrad.inverse_error() <= 1e-12);
        assert!(b.residual < 1e-6, "{}", b.residual);
        assert!(b.spin_antisymmetry_error() < 1e-6);
    }
}
