use num_complex::Complex64;

use super::{is_finite, lngamma, near_nonpositive_integer, SpecfunError};

/// Hard cap on Maclaurin terms before giving up.
pub const SERIES_MAX_TERMS: usize = 20_000;

const SERIES_REL_TOL: f64 = 1e-16;
const POLE_TOL: f64 = 1e-12;
const DEGENERATE_TOL: f64 = 1e-8;
const DIRECT_RADIUS: f64 = 0.5;

/// Arguments of ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: Complex64,
}

impl Hyp2F1Args {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Self {
        Self { a, b, c, z }
    }

    /// Real-valued convenience constructor, mostly for tests.
    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), z.into())
    }

    fn validate(&self) -> Result<(), SpecfunError> {
        if ![self.a, self.b, self.c, self.z].into_iter().all(is_finite) {
            return Err(SpecfunError::NonFinite);
        }
        if near_nonpositive_integer(self.c, POLE_TOL) {
            return Err(SpecfunError::ParameterPole { c: self.c });
        }
        Ok(())
    }
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z).
///
/// Dispatch by argument:
/// * `|z| <= 0.5`: Maclaurin series.
/// * `0.5 < |z| <= 1`, `Re z < 0`: Pfaff, `(1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))`.
///   This sends the matching point z = -1 to 1/2.
/// * `0.5 < |z| <= 1`, `Re z >= 0`: Maclaurin series (z near 1 is unsupported).
/// * `|z| > 1`: two-term connection to argument 1/z, then the cases above.
pub fn hyp2f1(args: &Hyp2F1Args) -> Result<Complex64, SpecfunError> {
    args.validate()?;
    let Hyp2F1Args { a, b, c, z } = *args;
    let value = if z.norm() > 1.0 {
        connection(a, b, c, z)?
    } else {
        inside_unit_disk(a, b, c, z)?
    };
    if is_finite(value) {
        Ok(value)
    } else {
        Err(SpecfunError::NonFinite)
    }
}

/// d/dz ₂F₁(a, b; c; z) = (ab/c) ₂F₁(a+1, b+1; c+1; z).
pub fn hyp2f1_dz(args: &Hyp2F1Args) -> Result<Complex64, SpecfunError> {
    args.validate()?;
    let Hyp2F1Args { a, b, c, z } = *args;
    let shifted = Hyp2F1Args::new(a + 1.0, b + 1.0, c + 1.0, z);
    let value = a * b / c * hyp2f1(&shifted)?;
    if is_finite(value) {
        Ok(value)
    } else {
        Err(SpecfunError::NonFinite)
    }
}

fn inside_unit_disk(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    if z.norm() <= DIRECT_RADIUS || z.re >= 0.0 {
        return hyp2f1_series(a, b, c, z);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = z / (z - one);
    let prefactor = (-a * (one - z).ln()).exp();
    Ok(prefactor * hyp2f1_series(a, c - b, c, w)?)
}

/// Two-term connection formula to argument 1/z, valid for non-integer b - a.
fn connection(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    let diff = b - a;
    if diff.im.abs() < DEGENERATE_TOL && (diff.re - diff.re.round()).abs() < DEGENERATE_TOL {
        return Err(SpecfunError::ConnectionDegenerate { diff });
    }
    let one = Complex64::new(1.0, 0.0);
    let inv = one / z;
    let log_minus_z = (-z).ln();

    let first = match gamma_ratio(&[c, b - a], &[b, c - a])? {
        Some(coef) => {
            let f = inside_unit_disk(a, one - c + a, one - b + a, inv)?;
            coef * (-a * log_minus_z).exp() * f
        }
        None => Complex64::new(0.0, 0.0),
    };
    let second = match gamma_ratio(&[c, a - b], &[a, c - b])? {
        Some(coef) => {
            let f = inside_unit_disk(b, one - c + b, one - a + b, inv)?;
            coef * (-b * log_minus_z).exp() * f
        }
        None => Complex64::new(0.0, 0.0),
    };
    Ok(first + second)
}

/// ∏Γ(num) / ∏Γ(den) evaluated in log space. `None` when a denominator
/// argument sits on a pole (the ratio vanishes).
fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Option<Complex64>, SpecfunError> {
    let mut log = Complex64::new(0.0, 0.0);
    for &x in num {
        log += lngamma(x)?;
    }
    for &x in den {
        match lngamma(x) {
            Ok(v) => log -= v,
            Err(SpecfunError::GammaPole { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(log.exp()))
}

/// Direct Maclaurin sum. Stops once two consecutive terms fall below
/// `1e-16 * |sum|`, or exactly when a numerator parameter terminates it.
fn hyp2f1_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..SERIES_MAX_TERMS {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term.re == 0.0 && term.im == 0.0 {
            return Ok(sum);
        }
        if !is_finite(sum) {
            return Err(SpecfunError::NonFinite);
        }
        if term.norm() < SERIES_REL_TOL * sum.norm() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(SpecfunError::SeriesNoConvergence {
        terms: SERIES_MAX_TERMS,
    })
}
