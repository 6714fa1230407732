//! The Doppler-chirp spectrum of an accelerated observer and the associated
//! Unruh and Hawking temperatures.

mod chirp;
mod gamma;
pub mod quadrature;

use std::f64::consts::PI;

use thiserror::Error;

use crate::csv::{fmt_f64, CsvBuf};

pub use chirp::{
    chirp_phase, fourier_amplitude_analytic, fourier_amplitude_damped_analytic,
    fourier_amplitude_numeric, fourier_amplitude_time_domain, gamma_integral,
    instantaneous_frequency, planck_factor, spectrum_csv, spectrum_sweep, ChirpParams,
    QuadControls, SpectrumRow, SpectrumSample, TimeDomainControls,
};
pub use gamma::complex_gamma;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermalError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("phase overflow: a t / c = {0} exceeds 700")]
    PhaseOverflow(f64),
    #[error("Gamma has a pole at {0}")]
    Pole(f64),
    #[error("quadrature did not converge: error estimate {achieved:e} > target {target:e} after {intervals} intervals")]
    Convergence {
        achieved: f64,
        target: f64,
        intervals: usize,
    },
}

fn require_positive(name: &str, v: f64) -> Result<(), ThermalError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ThermalError::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// hbar, c, G, k_B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub g: f64,
    pub kb: f64,
}

impl PhysicalConstants {
    /// CODATA 2018, SI units.
    pub const fn si() -> Self {
        PhysicalConstants {
            hbar: 1.054_571_817e-34,
            c: 299_792_458.0,
            g: 6.674_30e-11,
            kb: 1.380_649e-23,
        }
    }

    pub const fn natural() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            c: 1.0,
            g: 1.0,
            kb: 1.0,
        }
    }

    pub fn new(hbar: f64, c: f64, g: f64, kb: f64) -> Result<Self, ThermalError> {
        for (name, v) in [("hbar", hbar), ("c", c), ("G", g), ("k_B", kb)] {
            require_positive(name, v)?;
        }
        Ok(PhysicalConstants { hbar, c, g, kb })
    }
}

/// `T = hbar a / (2 pi c k_B)`
pub fn unruh_temperature(a: f64, k: &PhysicalConstants) -> Result<f64, ThermalError> {
    require_positive("acceleration", a)?;
    Ok(k.hbar * a / (2.0 * PI * k.c * k.kb))
}

/// `a = G M / R^2`
pub fn surface_gravity(mass: f64, radius: f64, k: &PhysicalConstants) -> Result<f64, ThermalError> {
    require_positive("mass", mass)?;
    require_positive("radius", radius)?;
    Ok(k.g * mass / (radius * radius))
}

/// `r_S = 2 G M / c^2`
pub fn schwarzschild_radius(mass: f64, k: &PhysicalConstants) -> Result<f64, ThermalError> {
    require_positive("mass", mass)?;
    Ok(2.0 * k.g * mass / (k.c * k.c))
}

/// `T_H = hbar c^3 / (8 pi G M k_B)`, evaluated as the Unruh temperature of
/// the surface gravity at `r_S` so both routes round identically.
pub fn hawking_temperature(mass: f64, k: &PhysicalConstants) -> Result<f64, ThermalError> {
    unruh_temperature(surface_gravity(mass, schwarzschild_radius(mass, k)?, k)?, k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub radius: f64,
    pub temperature: f64,
    pub ratio_to_hawking: f64,
    /// `R < r_S`: computed, but no outside observer receives it
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureProfile {
    pub mass: f64,
    pub hawking: f64,
    pub schwarzschild_radius: f64,
    pub rows: Vec<ProfileRow>,
}

/// `T_U(R) = hbar G M / (2 pi c R^2 k_B)` on `steps` evenly spaced radii.
pub fn temperature_profile(
    mass: f64,
    rmin: f64,
    rmax: f64,
    steps: usize,
    k: &PhysicalConstants,
) -> Result<TemperatureProfile, ThermalError> {
    require_positive("mass", mass)?;
    require_positive("rmin", rmin)?;
    require_positive("rmax", rmax)?;
    if rmin > rmax {
        return Err(ThermalError::InvalidParameter(format!(
            "rmin {rmin} exceeds rmax {rmax}"
        )));
    }
    if steps == 0 || (steps == 1 && rmin != rmax) {
        return Err(ThermalError::InvalidParameter(format!(
            "steps must be >= 2 for a range, got {steps}"
        )));
    }
    let hawking = hawking_temperature(mass, k)?;
    let rs = schwarzschild_radius(mass, k)?;
    let rows = (0..steps)
        .map(|i| {
            let radius = if steps == 1 {
                rmin
            } else if i + 1 == steps {
                rmax
            } else {
                rmin + (rmax - rmin) * i as f64 / (steps - 1) as f64
            };
            let temperature = k.hbar * k.g * mass / (2.0 * PI * k.c * radius * radius * k.kb);
            ProfileRow {
                radius,
                temperature,
                ratio_to_hawking: temperature / hawking,
                interior: radius < rs,
            }
        })
        .collect();
    Ok(TemperatureProfile {
        mass,
        hawking,
        schwarzschild_radius: rs,
        rows,
    })
}

impl TemperatureProfile {
    /// `R_m,T_K,ratio_to_hawking,interior` preceded by a comment line with T_H and r_S.
    pub fn to_csv(&self) -> String {
        let mut buf = CsvBuf::new();
        buf.comment(&format!(
            "M={} T_H={} r_S={}",
            fmt_f64(self.mass),
            fmt_f64(self.hawking),
            fmt_f64(self.schwarzschild_radius)
        ));
        buf.header(&["R_m", "T_K", "ratio_to_hawking", "interior"]);
        for r in &self.rows {
            buf.row([
                fmt_f64(r.radius),
                fmt_f64(r.temperature),
                fmt_f64(r.ratio_to_hawking),
                u8::from(r.interior).to_string(),
            ]);
        }
        buf.into_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: PhysicalConstants = PhysicalConstants::natural();
    const SI: PhysicalConstants = PhysicalConstants::si();

    #[test]
    fn unruh_examples() {
        assert_eq!(unruh_temperature(2.0 * PI, &NAT).unwrap(), 1.0);
        let t = unruh_temperature(9.81, &SI).unwrap();
        assert!((t / 3.98e-20 - 1.0).abs() < 5e-3, "{t}");
        assert_eq!(unruh_temperature(2.0 * 9.81, &SI).unwrap(), 2.0 * t);
        assert!(unruh_temperature(0.0, &SI).is_err());
    }

    #[test]
    fn surface_gravity_examples() {
        assert_eq!(surface_gravity(1.0, 1.0, &NAT).unwrap(), 1.0);
        let earth = surface_gravity(5.972e24, 6.371e6, &SI).unwrap();
        assert!((earth - 9.82).abs() < 0.01, "{earth}");
        let a = surface_gravity(3.0, 1.7, &SI).unwrap();
        assert_eq!(surface_gravity(3.0, 3.4, &SI).unwrap(), a / 4.0);
        assert!(surface_gravity(1.0, -1.0, &NAT).is_err());
    }

    #[test]
    fn hawking_examples() {
        let sun = hawking_temperature(1.989e30, &SI).unwrap();
        assert!((sun / 6.17e-8 - 1.0).abs() < 0.01, "{sun}");
        assert_eq!(hawking_temperature(2.0 * 1.989e30, &SI).unwrap(), sun / 2.0);
        assert_eq!(hawking_temperature(1.0, &NAT).unwrap(), 1.0 / (8.0 * PI));
        assert!(hawking_temperature(0.0, &SI).is_err());
    }

    #[test]
    fn hawking_matches_closed_form() {
        for m in [1.0, 7.3e11, 1.989e30, 4.2e39] {
            let closed = SI.hbar * SI.c.powi(3) / (8.0 * PI * SI.g * m * SI.kb);
            let t = hawking_temperature(m, &SI).unwrap();
            assert!((t / closed - 1.0).abs() < 1e-15, "{m}: {t} vs {closed}");
        }
    }

    #[test]
    fn profile_examples() {
        let m = 1.989e30;
        let rs = schwarzschild_radius(m, &SI).unwrap();
        let p = temperature_profile(m, rs, 2.0 * rs, 2, &SI).unwrap();
        assert!((p.rows[0].ratio_to_hawking - 1.0).abs() < 1e-14);
        assert!((p.rows[1].ratio_to_hawking - 0.25).abs() < 1e-14);
        assert!(!p.rows[0].interior);

        let solar_radius = temperature_profile(m, 6.96e8, 6.96e8, 1, &SI).unwrap();
        let t = solar_radius.rows[0].temperature;
        assert!((t / 1.111e-18 - 1.0).abs() < 0.01, "{t}");

        let inside = temperature_profile(m, 0.5 * rs, rs, 3, &SI).unwrap();
        assert_eq!(
            inside.rows.iter().map(|r| r.interior).collect::<Vec<_>>(),
            vec![true, true, false]
        );
    }

    #[test]
    fn profile_rejects_bad_ranges() {
        assert!(temperature_profile(1.0, 2.0, 1.0, 5, &NAT).is_err());
        assert!(temperature_profile(1.0, 1.0, 2.0, 1, &NAT).is_err());
        assert!(temperature_profile(1.0, 1.0, 2.0, 0, &NAT).is_err());
        assert!(temperature_profile(-1.0, 1.0, 2.0, 4, &NAT).is_err());
    }

    #[test]
    fn profile_csv_layout() {
        let csv = temperature_profile(1.0, 1.0, 4.0, 2, &NAT)
            .unwrap()
            .to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# M=1 T_H="));
        assert_eq!(lines[1], "R_m,T_K,ratio_to_hawking,interior");
        assert!(lines[2].starts_with("1,"));
        assert!(lines[2].ends_with(",1"));
        assert_eq!(lines.len(), 4);
    }
}
