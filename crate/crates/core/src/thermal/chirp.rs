//! Fourier analysis of the Doppler-shifted zero-point phase.
//!
//! An observer with proper acceleration `a` sees the phase `omega t` of a mode
//! as `phi(t) = (omega c / a) e^{a t / c}`; the instantaneous frequency
//! `omega e^{a t / c}` sweeps exponentially. (The inner exponent is real: an
//! imaginary one would not reproduce the `Gamma(i Omega c / a)` result below.)
//!
//! With `x = Omega c / a`, `beta = omega c / a` and `u = e^{a t / c}`,
//!
//! ```text
//! F(Omega) = int dt e^{i Omega t} e^{i phi(t)}
//!          = (c/a) int_0^inf u^{i x - 1} e^{i beta u} du
//!          = (c/a) e^{-pi x / 2} beta^{-i x} Gamma(i x)
//! ```
//!
//! after rotating the contour to `u = i y`. The damping factor is
//! `e^{-pi x / 2}`; with it, `|Gamma(i x)|^2 = pi / (x sinh(pi x))` gives
//! `|F|^2 = (2 pi c / (Omega a)) / (e^{2 pi x} - 1)`, a Bose-Einstein factor.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::{integrate, QuadFailure};
use super::{complex_gamma, require_positive, ThermalError};
use crate::csv::{fmt_f64, CsvBuf};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest `a t / c` accepted by [`chirp_phase`].
pub const MAX_PHASE_EXPONENT: f64 = 700.0;

/// Terms of the asymptotic tail series in the time-domain diagnostic.
const TAIL_TERMS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpParams {
    omega: f64,
    a: f64,
    c: f64,
}

impl ChirpParams {
    pub fn new(omega: f64, a: f64, c: f64) -> Result<Self, ThermalError> {
        require_positive("omega", omega)?;
        require_positive("acceleration", a)?;
        require_positive("c", c)?;
        Ok(ChirpParams { omega, a, c })
    }

    /// `omega = a = c = 1`
    pub fn unit() -> Self {
        ChirpParams {
            omega: 1.0,
            a: 1.0,
            c: 1.0,
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `x = Omega c / a`
    pub fn dimensionless(&self, big_omega: f64) -> f64 {
        big_omega * self.c / self.a
    }

    /// Inverse of [`ChirpParams::dimensionless`].
    pub fn frequency(&self, x: f64) -> f64 {
        x * self.a / self.c
    }

    fn beta(&self) -> f64 {
        self.omega * self.c / self.a
    }

    fn time_scale(&self) -> f64 {
        self.c / self.a
    }
}

pub fn chirp_phase(t: f64, p: &ChirpParams) -> Result<f64, ThermalError> {
    let exponent = p.a * t / p.c;
    if !t.is_finite() {
        return Err(ThermalError::InvalidParameter(format!(
            "time {t} is not finite"
        )));
    }
    if exponent > MAX_PHASE_EXPONENT {
        return Err(ThermalError::PhaseOverflow(exponent));
    }
    Ok(p.beta() * exponent.exp())
}

/// `d phi / dt = omega e^{a t / c}`
pub fn instantaneous_frequency(t: f64, p: &ChirpParams) -> Result<f64, ThermalError> {
    chirp_phase(t, p).map(|phi| phi * p.a / p.c)
}

/// `1 / (e^{2 pi x} - 1)`
pub fn planck_factor(x: f64) -> f64 {
    1.0 / (2.0 * PI * x).exp_m1()
}

// (c/a) e^{i pi s / 2} beta^{-s} G, with G = Gamma(s) from either path
fn assemble(s: Complex64, p: &ChirpParams, gamma: Complex64) -> Complex64 {
    let rotation = (I * PI * 0.5 * s).exp();
    let scale = (-s * p.beta().ln()).exp();
    p.time_scale() * rotation * scale * gamma
}

pub fn fourier_amplitude_analytic(
    big_omega: f64,
    p: &ChirpParams,
) -> Result<Complex64, ThermalError> {
    require_positive("Omega", big_omega)?;
    let s = Complex64::new(0.0, p.dimensionless(big_omega));
    Ok(assemble(s, p, complex_gamma(s)?))
}

/// Closed form of the time integral with an extra factor `e^{damping t}`:
/// the same expression with `s = (damping + i Omega) c / a`.
pub fn fourier_amplitude_damped_analytic(
    big_omega: f64,
    damping: f64,
    p: &ChirpParams,
) -> Result<Complex64, ThermalError> {
    require_positive("Omega", big_omega)?;
    require_positive("damping", damping)?;
    let s = Complex64::new(damping, big_omega) * p.time_scale();
    Ok(assemble(s, p, complex_gamma(s)?))
}

/// Controls for [`fourier_amplitude_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadControls {
    /// split point between the endpoint series and quadrature
    pub split: f64,
    pub series_terms: usize,
    /// quadrature runs in `v = ln y` from `ln split` to `ln upper`
    pub upper: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadControls {
    fn default() -> Self {
        QuadControls {
            split: 0.05,
            series_terms: 25,
            upper: 60.0,
            rel_tol: 1e-13,
            abs_tol: 1e-16,
            max_intervals: 4000,
        }
    }
}

fn convergence(fail: QuadFailure) -> ThermalError {
    ThermalError::Convergence {
        achieved: fail.best.error,
        target: fail.target,
        intervals: fail.best.intervals,
    }
}

/// `Gamma(s) = int_0^inf y^{s-1} e^{-y} dy`, split at `y = split`.
///
/// On `(0, split]` the integrand is expanded,
/// `sum_n (-1)^n split^{n+s} / (n! (n+s))`, which also continues the
/// integral to `Re s = 0`. The rest is integrated in `v = ln y`, where the
/// integrand `e^{s v - e^v}` is smooth and decays double-exponentially.
pub fn gamma_integral(s: Complex64, ctrl: &QuadControls) -> Result<Complex64, ThermalError> {
    require_positive("split", ctrl.split)?;
    if !(ctrl.upper > ctrl.split) {
        return Err(ThermalError::InvalidParameter(format!(
            "upper limit {} must exceed the split point {}",
            ctrl.upper, ctrl.split
        )));
    }
    if ctrl.series_terms == 0 {
        return Err(ThermalError::InvalidParameter(
            "series_terms must be >= 1".into(),
        ));
    }
    let eps = ctrl.split;
    let eps_s = (s * eps.ln()).exp();
    let mut coeff = 1.0; // (-eps)^n / n!
    let mut series = Complex64::new(0.0, 0.0);
    let mut last = Complex64::new(0.0, 0.0);
    for n in 0..ctrl.series_terms {
        let denom = s + n as f64;
        if denom.norm() == 0.0 {
            return Err(ThermalError::Pole(-(n as f64)));
        }
        last = eps_s * coeff / denom;
        series += last;
        coeff *= -eps / (n as f64 + 1.0);
    }
    let tail = integrate(
        |v| (s * v - v.exp()).exp(),
        eps.ln(),
        ctrl.upper.ln(),
        ctrl.rel_tol,
        ctrl.abs_tol,
        ctrl.max_intervals,
    )
    .map_err(convergence)?;
    let total = series + tail.value;
    // the series must have converged as well
    let series_target = ctrl.abs_tol.max(ctrl.rel_tol * total.norm());
    if last.norm() > series_target {
        return Err(ThermalError::Convergence {
            achieved: last.norm(),
            target: series_target,
            intervals: tail.intervals,
        });
    }
    Ok(total)
}

pub fn fourier_amplitude_numeric(
    big_omega: f64,
    p: &ChirpParams,
    ctrl: &QuadControls,
) -> Result<Complex64, ThermalError> {
    require_positive("Omega", big_omega)?;
    let s = Complex64::new(0.0, p.dimensionless(big_omega));
    Ok(assemble(s, p, gamma_integral(s, ctrl)?))
}

/// Controls for the time-domain diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeDomainControls {
    /// convergence factor `e^{damping t}` for `t -> -inf`
    pub damping: f64,
    /// lower limit; below it `e^{damping t}` is taken as negligible
    pub t_min: f64,
    /// upper limit, in units of `c/a`; the remaining tail is added from its
    /// leading asymptotic term
    pub t_max: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for TimeDomainControls {
    fn default() -> Self {
        TimeDomainControls {
            damping: 0.1,
            t_min: -400.0,
            t_max: 8.0,
            rel_tol: 1e-10,
            max_intervals: 200_000,
        }
    }
}

/// Brute-force `int e^{(i Omega + damping) t} e^{i phi(t)} dt` in the time
/// domain. The undamped integral only converges conditionally, so this is a
/// diagnostic to compare against [`fourier_amplitude_damped_analytic`].
pub fn fourier_amplitude_time_domain(
    big_omega: f64,
    p: &ChirpParams,
    ctrl: &TimeDomainControls,
) -> Result<Complex64, ThermalError> {
    require_positive("Omega", big_omega)?;
    require_positive("damping", ctrl.damping)?;
    let k = Complex64::new(ctrl.damping, big_omega);
    let beta = p.beta();
    let rate = p.a / p.c;
    let t_hi = ctrl.t_max * p.time_scale();
    if ctrl.t_min >= t_hi || rate * t_hi > MAX_PHASE_EXPONENT {
        return Err(ThermalError::InvalidParameter(format!(
            "bad time window [{}, {t_hi}]",
            ctrl.t_min
        )));
    }
    let body = integrate(
        |t| (k * t + I * beta * (rate * t).exp()).exp(),
        ctrl.t_min,
        t_hi,
        ctrl.rel_tol,
        0.0,
        ctrl.max_intervals,
    )
    .map_err(convergence)?;
    // (c/a) int_U^inf u^m e^{i beta u} du with m = s - 1, by repeated parts:
    // (c/a) (i/beta) U^m e^{i beta U} sum_n m (m-1)...(m-n+1) (i / (beta U))^n
    let s = k * p.time_scale();
    let m = s - 1.0;
    let u = (rate * t_hi).exp();
    let ratio = I / (beta * u);
    let mut term = Complex64::new(1.0, 0.0);
    let mut series = term;
    for n in 0..TAIL_TERMS {
        term *= (m - n as f64) * ratio;
        series += term;
    }
    let tail = p.time_scale() * (I / beta) * (m * u.ln()).exp() * (I * beta * u).exp() * series;
    Ok(body.value + tail)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSample {
    pub x: f64,
    pub power_numeric: f64,
    pub power_analytic: f64,
    pub planck: f64,
    pub rel_err_quad: f64,
    pub identity_err: f64,
}

/// One sweep row; `numeric` is an error when quadrature failed for this `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub x: f64,
    pub power_analytic: f64,
    pub planck: f64,
    pub identity_err: f64,
    pub numeric: Result<(f64, f64), ThermalError>,
}

impl SpectrumRow {
    pub fn sample(&self) -> Option<SpectrumSample> {
        let (power_numeric, rel_err_quad) = *self.numeric.as_ref().ok()?;
        Some(SpectrumSample {
            x: self.x,
            power_numeric,
            power_analytic: self.power_analytic,
            planck: self.planck,
            rel_err_quad,
            identity_err: self.identity_err,
        })
    }
}

fn sweep_row(x: f64, p: &ChirpParams, ctrl: &QuadControls) -> Result<SpectrumRow, ThermalError> {
    let big_omega = p.frequency(x);
    let analytic = fourier_amplitude_analytic(big_omega, p)?;
    let power_analytic = analytic.norm_sqr();
    let planck = planck_factor(x);
    let normalized = power_analytic * big_omega * p.a / (2.0 * PI * p.c);
    let identity_err = (normalized - planck).abs() / planck;
    let numeric = fourier_amplitude_numeric(big_omega, p, ctrl).map(|f| {
        let power = f.norm_sqr();
        (power, (power - power_analytic).abs() / power_analytic)
    });
    Ok(SpectrumRow {
        x,
        power_analytic,
        planck,
        identity_err,
        numeric,
    })
}

/// Both amplitude paths on `steps` evenly spaced `x` in `[xmin, xmax]`.
/// Quadrature failures mark their row; parameter errors abort.
pub fn spectrum_sweep(
    p: &ChirpParams,
    xmin: f64,
    xmax: f64,
    steps: usize,
    ctrl: &QuadControls,
) -> Result<Vec<SpectrumRow>, ThermalError> {
    require_positive("xmin", xmin)?;
    require_positive("xmax", xmax)?;
    if xmin >= xmax {
        return Err(ThermalError::InvalidParameter(format!(
            "xmin {xmin} must be below xmax {xmax}"
        )));
    }
    if steps < 2 {
        return Err(ThermalError::InvalidParameter(format!(
            "steps must be >= 2, got {steps}"
        )));
    }
    let grid: Vec<f64> = (0..steps)
        .map(|i| {
            if i + 1 == steps {
                xmax
            } else {
                xmin + (xmax - xmin) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    grid.into_par_iter()
        .map(|x| sweep_row(x, p, ctrl))
        .collect()
}

/// `x,power_numeric,power_analytic,planck,rel_err_quad,identity_err`; rows
/// whose quadrature failed leave the numeric cells empty.
pub fn spectrum_csv(rows: &[SpectrumRow]) -> String {
    let mut buf = CsvBuf::new();
    buf.header(&[
        "x",
        "power_numeric",
        "power_analytic",
        "planck",
        "rel_err_quad",
        "identity_err",
    ]);
    for r in rows {
        let (num, rel) = match &r.numeric {
            Ok((power, rel)) => (fmt_f64(*power), fmt_f64(*rel)),
            Err(_) => (String::new(), String::new()),
        };
        buf.row([
            fmt_f64(r.x),
            num,
            fmt_f64(r.power_analytic),
            fmt_f64(r.planck),
            rel,
            fmt_f64(r.identity_err),
        ]);
    }
    buf.into_string()
}
