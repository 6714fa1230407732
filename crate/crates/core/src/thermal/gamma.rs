//! Complex Gamma function.
//!
//! Stirling's series for `ln Gamma` at `|z| >= 15`, reached from smaller `|z|`
//! by the recurrence `Gamma(z) = Gamma(z + n) / (z (z + 1) ... (z + n - 1))`.
//! Working in log form keeps `|Im z|` in the tens from overflowing, and the
//! series has no cancellation between terms. The left half-plane uses the
//! reflection formula `Gamma(z) Gamma(1 - z) = pi / sin(pi z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ThermalError;

/// Radius beyond which the asymptotic series is used directly.
const STIRLING_RADIUS: f64 = 15.0;

/// `B_2k / (2k (2k - 1))` for k = 1..10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// ln(2 pi) / 2
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < STIRLING_RADIUS {
        shift += z.ln();
        z += 1.0;
    }
    let w = z.inv();
    let w2 = w * w;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = w;
    for c in STIRLING_COEFFS {
        series += c * p;
        p *= w2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series - shift
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64, ThermalError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(ThermalError::InvalidParameter(format!(
            "gamma argument {z} is not finite"
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(ThermalError::Pole(z.re));
    }
    if z.re < 0.5 {
        let reflected = ln_gamma_right(1.0 - z).exp();
        Ok(PI / ((PI * z).sin() * reflected))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}
