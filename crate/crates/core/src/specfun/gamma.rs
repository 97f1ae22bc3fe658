use std::f64::consts::PI;

use num_complex::Complex64;

use super::{is_finite, near_nonpositive_integer, SpecfunError};

const POLE_TOL: f64 = 1e-12;

// Godfrey's coefficients for g = 7, n = 9, as published.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of log Γ(z): analytic on ℂ minus the non-positive real
/// axis, real for real z > 0.
///
/// Lanczos approximation for Re z ≥ 1/2, reflection otherwise. The branch
/// correction on the reflected side keeps the imaginary part continuous.
pub fn lngamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if !is_finite(z) {
        return Err(SpecfunError::NonFinite);
    }
    if near_nonpositive_integer(z, POLE_TOL) {
        return Err(SpecfunError::GammaPole { z });
    }
    if z.re < 0.5 {
        let shift = (2.0 * PI).copysign(z.im) * (0.5 * z.re + 0.25).floor();
        let reflected = lngamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), shift) - ln_sinpi(z) - reflected);
    }
    Ok(lanczos(z))
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// Principal log of sin(πz), safe against cosh overflow for large |Im z|.
fn ln_sinpi(z: Complex64) -> Complex64 {
    if z.im.abs() < 100.0 {
        return (z * PI).sin().ln();
    }
    // sin(πz) = ∓ e^{∓iπz} (1 - e^{±2iπz}) / (2i), dominant exponential first.
    let i = Complex64::i();
    let raw = if z.im > 0.0 {
        -i * PI * z - 2f64.ln()
            + i * (PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (2.0 * i * PI * z).exp()).ln()
    } else {
        i * PI * z - 2f64.ln() - i * (PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (-2.0 * i * PI * z).exp()).ln()
    };
    Complex64::new(raw.re, wrap_phase(raw.im))
}

fn wrap_phase(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    t
}
