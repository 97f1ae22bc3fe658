//! Potential profile, asymptotic wavenumbers and energy regimes.
//!
//! Natural units ħ = c = 1 throughout. The potential is `-a` left of `x0`,
//! `+a` on `[x0, x1]` and `a·tanh(b·x)` right of `x1`.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid potential parameters: {0}")]
    InvalidParams(String),
    #[error("energy {energy} is at or too close to a threshold")]
    ThresholdSingular { energy: f64 },
}

/// Width of the threshold exclusion band, relative to the mass.
pub const THRESHOLD_EPS_REL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Step height.
    pub a: f64,
    /// Inverse length of the tanh tail; larger is sharper.
    pub b: f64,
    /// Particle mass.
    pub m: f64,
    pub x0: f64,
    pub x1: f64,
}

impl PotentialParams {
    /// Validated constructor: `a, b, m > 0` and `x0 < x1 < 0`.
    pub fn new(a: f64, b: f64, m: f64, x0: f64, x1: f64) -> Result<Self, ModelError> {
        let p = Self { a, b, m, x0, x1 };
        if !(a > 0.0) {
            return Err(ModelError::InvalidParams(format!(
                "a must be positive, got {a}"
            )));
        }
        p.check_geometry()?;
        Ok(p)
    }

    /// Constraints the solver itself needs. Unlike [`PotentialParams::new`]
    /// this admits `a = 0`, the free-particle limit.
    pub fn check_geometry(&self) -> Result<(), ModelError> {
        let Self { a, b, m, x0, x1 } = *self;
        if ![a, b, m, x0, x1].iter().all(|v| v.is_finite()) {
            return Err(ModelError::InvalidParams("non-finite parameter".into()));
        }
        if a < 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "a must be non-negative, got {a}"
            )));
        }
        if !(b > 0.0) {
            return Err(ModelError::InvalidParams(format!(
                "b must be positive, got {b}"
            )));
        }
        if !(m > 0.0) {
            return Err(ModelError::InvalidParams(format!(
                "m must be positive, got {m}"
            )));
        }
        if !(x0 < x1 && x1 < 0.0) {
            return Err(ModelError::InvalidParams(format!(
                "need x0 < x1 < 0, got x0={x0}, x1={x1}"
            )));
        }
        Ok(())
    }

    pub fn threshold_eps(&self) -> f64 {
        THRESHOLD_EPS_REL * self.m
    }
}

/// V(x) with the half-open convention `[x0, x1]` for the plateau.
pub fn potential_value(p: &PotentialParams, x: f64) -> f64 {
    if x < p.x0 {
        -p.a
    } else if x <= p.x1 {
        p.a
    } else {
        p.a * (p.b * x).tanh()
    }
}

/// Wavenumbers and hypergeometric exponents at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSet {
    pub energy: f64,
    /// Left asymptotic wavenumber, sqrt((E+a)² - m²) > 0.
    pub r: f64,
    /// r / 2b.
    pub nu: f64,
    /// Plateau / right asymptotic wavenumber, always equal to 2b·mu.
    pub q: Complex64,
    /// Real with the sign of E - a when propagating, +i·|μ| when evanescent.
    pub mu: Complex64,
    /// Root of b²(2λ - 1)² = b² - 4a² with the `+` square root.
    pub lambda: Complex64,
}

impl DispersionSet {
    /// True when the right-hand asymptotic wave propagates.
    pub fn mu_is_real(&self) -> bool {
        self.mu.im == 0.0
    }
}

pub fn dispersion(p: &PotentialParams, energy: f64) -> Result<DispersionSet, ModelError> {
    let PotentialParams { a, b, m, .. } = *p;
    let right = (energy - a).powi(2) - m * m;
    if !energy.is_finite() || energy <= m || right.abs() < p.threshold_eps() {
        return Err(ModelError::ThresholdSingular { energy });
    }
    let r = ((energy + a).powi(2) - m * m).sqrt();
    let mu = if right > 0.0 {
        Complex64::new(right.sqrt().copysign(energy - a) / (2.0 * b), 0.0)
    } else {
        Complex64::new(0.0, (-right).sqrt() / (2.0 * b))
    };
    let disc = b * b - 4.0 * a * a;
    let root = if disc >= 0.0 {
        Complex64::new(disc.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-disc).sqrt())
    };
    Ok(DispersionSet {
        energy,
        r,
        nu: r / (2.0 * b),
        q: 2.0 * b * mu,
        mu,
        lambda: (b + root) / (2.0 * b),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyRegime {
    /// m < E < a - m: R > 1, T < 0.
    Superradiant,
    /// a - m <= E <= a + m: decaying transmitted wave, R = 1.
    Evanescent,
    /// E > a + m.
    Propagating,
    /// Within eps of m, a - m or a + m (or below the mass gap).
    NearThreshold,
}

impl EnergyRegime {
    pub fn label(self) -> &'static str {
        match self {
            EnergyRegime::Superradiant => "superradiant",
            EnergyRegime::Evanescent => "evanescent",
            EnergyRegime::Propagating => "propagating",
            EnergyRegime::NearThreshold => "threshold",
        }
    }
}

impl std::fmt::Display for EnergyRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Energies at or below `m + eps` have no incident wave and land in
/// `NearThreshold` too.
pub fn classify_regime(p: &PotentialParams, energy: f64, eps: f64) -> EnergyRegime {
    let PotentialParams { a, m, .. } = *p;
    let lower = a - m;
    let upper = a + m;
    if energy <= m + eps || (energy - lower).abs() < eps || (energy - upper).abs() < eps {
        EnergyRegime::NearThreshold
    } else if energy < lower {
        EnergyRegime::Superradiant
    } else if energy <= upper {
        EnergyRegime::Evanescent
    } else {
        EnergyRegime::Propagating
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> PotentialParams {
        PotentialParams::new(5.0, 2.0, 1.0, -4.0, -2.0).unwrap()
    }

    #[test]
    fn potential_branches() {
        let p = reference();
        assert_eq!(potential_value(&p, -5.0), -5.0);
        assert_eq!(potential_value(&p, -3.0), 5.0);
        assert_eq!(potential_value(&p, 0.0), 0.0);
        assert!((potential_value(&p, 10.0) - 5.0).abs() < 1e-8);
        assert_eq!(potential_value(&p, -4.0), 5.0);
        assert_eq!(potential_value(&p, -2.0), 5.0);
    }

    #[test]
    fn sharp_tail_limit() {
        let p = PotentialParams::new(5.0, 1e6, 1.0, -4.0, -2.0).unwrap();
        assert!((potential_value(&p, 0.1) - 5.0).abs() < 1e-12);
        assert!((potential_value(&p, -0.1) + 5.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_params() {
        assert!(PotentialParams::new(0.0, 2.0, 1.0, -4.0, -2.0).is_err());
        assert!(PotentialParams::new(5.0, -2.0, 1.0, -4.0, -2.0).is_err());
        assert!(PotentialParams::new(5.0, 2.0, 0.0, -4.0, -2.0).is_err());
        assert!(PotentialParams::new(5.0, 2.0, 1.0, -2.0, -4.0).is_err());
        assert!(PotentialParams::new(5.0, 2.0, 1.0, -4.0, 0.5).is_err());
        assert!(PotentialParams::new(5.0, f64::NAN, 1.0, -4.0, -2.0).is_err());
    }

    #[test]
    fn superradiant_dispersion() {
        let d = dispersion(&reference(), 3.0).unwrap();
        assert!((d.r - 63f64.sqrt()).abs() < 1e-14);
        assert!((d.mu.re + 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert_eq!(d.mu.im, 0.0);
        assert!((d.r - 2.0 * 2.0 * d.nu).abs() < 1e-12);
        assert_eq!(d.q, 4.0 * d.mu);
    }

    #[test]
    fn evanescent_dispersion() {
        let d = dispersion(&reference(), 5.0).unwrap();
        assert_eq!(d.mu.re, 0.0);
        assert!((d.mu.im - 0.25).abs() < 1e-15);
        assert!(!d.mu_is_real());
    }

    #[test]
    fn lambda_real_for_sharp_tail() {
        let p = PotentialParams::new(5.0, 50.0, 1.0, -4.0, -2.0).unwrap();
        let d = dispersion(&p, 7.0).unwrap();
        let want = (50.0 + 2400f64.sqrt()) / 100.0;
        assert!((d.lambda.re - want).abs() < 1e-15 && d.lambda.im == 0.0);
        assert!((d.lambda.re - 0.989_90).abs() < 1e-5);
    }

    #[test]
    fn lambda_complex_for_smooth_tail() {
        let d = dispersion(&reference(), 7.0).unwrap();
        assert_eq!(d.lambda.re, 0.5);
        assert!((d.lambda.im - 96f64.sqrt() / 4.0).abs() < 1e-15);
        let lhs = 4.0 * (2.0 * d.lambda - 1.0).powi(2);
        assert!((lhs - Complex64::new(4.0 - 100.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn thresholds_rejected() {
        let p = reference();
        for e in [1.0, 0.5, 4.0, 6.0, 6.0 + 1e-9] {
            assert!(matches!(
                dispersion(&p, e),
                Err(ModelError::ThresholdSingular { .. })
            ));
        }
    }

    #[test]
    fn regime_examples() {
        let p = reference();
        assert_eq!(classify_regime(&p, 3.0, 1e-6), EnergyRegime::Superradiant);
        assert_eq!(classify_regime(&p, 5.0, 1e-6), EnergyRegime::Evanescent);
        assert_eq!(classify_regime(&p, 7.0, 1e-6), EnergyRegime::Propagating);
        assert_eq!(classify_regime(&p, 4.0, 0.01), EnergyRegime::NearThreshold);
        assert_eq!(
            classify_regime(&p, 4.005, 0.01),
            EnergyRegime::NearThreshold
        );
        assert_eq!(classify_regime(&p, 0.5, 1e-6), EnergyRegime::NearThreshold);
    }

    #[test]
    fn weak_step_has_no_superradiant_window() {
        let p = PotentialParams::new(1.5, 2.0, 1.0, -4.0, -2.0).unwrap();
        for k in 1..400 {
            let e = 1.0 + k as f64 * 0.01;
            assert_ne!(classify_regime(&p, e, 1e-6), EnergyRegime::Superradiant);
        }
        assert_eq!(classify_regime(&p, 2.0, 1e-6), EnergyRegime::Evanescent);
        assert_eq!(classify_regime(&p, 3.0, 1e-6), EnergyRegime::Propagating);
    }
}
