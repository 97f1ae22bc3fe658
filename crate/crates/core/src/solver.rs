//! Exact scattering amplitudes from wavefunction matching.
//!
//! Four representations of the solution are glued together:
//!
//! * plane waves `b1 e^{-irx} + c1 e^{irx}` for `x < x0`,
//! * plane waves `b2 e^{-iqx} + c2 e^{iqx}` on `[x0, x1]`,
//! * `b3 φ_ref + c3 φ_inc`, hypergeometric bases in `y = -e^{2bx}`, on `[x1, 0]`,
//! * the purely outgoing `c4 φ_trans` with argument `-e^{-2bx}` for `x >= 0`.
//!
//! With `c4 = 1`, value and slope continuity at `x0`, `x1` and `0` give a 6×6
//! linear system for `(b1, c1, b2, c2, b3, c3)`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{mat_vec, norm_inf, LinalgError, Lu, Matrix, Vector};
use crate::model::{
    classify_regime, dispersion, DispersionSet, EnergyRegime, ModelError, PotentialParams,
};
use crate::specfun::{hyp2f1, hyp2f1_dz, lngamma, Hyp2F1Args, SpecfunError};

/// Systems with a larger 1-norm condition number are refused.
pub const MAX_CONDITION: f64 = 1e12;

/// Number of unknown amplitudes in the matching system.
pub const UNKNOWNS: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Special(#[from] SpecfunError),
    #[error("x = {x} is outside the domain [{lo}, {hi}] of this representation")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("matching system is ill-conditioned (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A wavefunction value and its x-derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveEval {
    pub value: Complex64,
    pub derivative: Complex64,
    pub x: f64,
}

impl WaveEval {
    fn scaled(self, k: Complex64) -> Self {
        Self {
            value: self.value * k,
            derivative: self.derivative * k,
            x: self.x,
        }
    }

    fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            derivative: self.derivative + other.derivative,
            x: self.x,
        }
    }
}

fn plane_waves(k: Complex64, (left, right): (Complex64, Complex64), x: f64) -> WaveEval {
    let i = Complex64::i();
    let backward = left * (-i * k * x).exp();
    let forward = right * (i * k * x).exp();
    WaveEval {
        value: backward + forward,
        derivative: i * k * (forward - backward),
        x,
    }
}

/// `b1 e^{-irx} + c1 e^{irx}`. Physical for `x <= x0`, but defined everywhere.
pub fn eval_region_i(disp: &DispersionSet, coeffs: (Complex64, Complex64), x: f64) -> WaveEval {
    plane_waves(disp.r.into(), coeffs, x)
}

/// `b2 e^{-iqx} + c2 e^{iqx}`; q is imaginary in the evanescent regime.
pub fn eval_region_ii(disp: &DispersionSet, coeffs: (Complex64, Complex64), x: f64) -> WaveEval {
    plane_waves(disp.q, coeffs, x)
}

/// Unit-amplitude reflected and incident bases `(φ_ref, φ_inc)` for `x <= 0`:
///
/// `φ_ref = (1+e^{2bx})^λ e^{-2ibνx} ₂F₁(-iν+λ+iμ, -iν+λ-iμ; 1-2iν; -e^{2bx})`
/// `φ_inc = (1+e^{2bx})^λ e^{+2ibνx} ₂F₁(+iν+λ-iμ, +iν+λ+iμ; 1+2iν; -e^{2bx})`
pub fn eval_ref_inc(
    p: &PotentialParams,
    disp: &DispersionSet,
    x: f64,
) -> Result<(WaveEval, WaveEval), SolverError> {
    if !(x <= 0.0) {
        return Err(SolverError::OutOfDomain {
            x,
            lo: f64::NEG_INFINITY,
            hi: 0.0,
        });
    }
    let b = p.b;
    let i = Complex64::i();
    let (nu, mu, lambda) = (disp.nu, disp.mu, disp.lambda);
    let ex = (2.0 * b * x).exp();
    let z = Complex64::new(-ex, 0.0);
    let envelope = (lambda * ex.ln_1p()).exp();
    let envelope_log_slope = 2.0 * b * lambda * ex / (1.0 + ex);

    let basis = |sign: f64| -> Result<WaveEval, SolverError> {
        let s = sign * i * nu;
        let args = Hyp2F1Args::new(
            s + lambda - sign * i * mu,
            s + lambda + sign * i * mu,
            1.0 + 2.0 * s,
            z,
        );
        let f = hyp2f1(&args)?;
        let df = hyp2f1_dz(&args)?;
        let phase = (2.0 * b * s * x).exp();
        let value = envelope * phase * f;
        let derivative =
            value * (envelope_log_slope + 2.0 * b * s) + envelope * phase * df * (2.0 * b * z);
        Ok(WaveEval {
            value,
            derivative,
            x,
        })
    };
    Ok((basis(-1.0)?, basis(1.0)?))
}

/// Unit-amplitude transmitted wave for `x >= 0`:
///
/// `φ_trans = (1+e^{-2bx})^λ e^{2ibμx} ₂F₁(iν+λ-iμ, -iν+λ-iμ; 1-2iμ; -e^{-2bx})`,
/// which tends to `e^{2ibμx}` as `x → ∞`.
pub fn eval_trans(
    p: &PotentialParams,
    disp: &DispersionSet,
    x: f64,
) -> Result<WaveEval, SolverError> {
    if !(x >= 0.0) {
        return Err(SolverError::OutOfDomain {
            x,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let b = p.b;
    let i = Complex64::i();
    let (nu, mu, lambda) = (disp.nu, disp.mu, disp.lambda);
    let ex = (-2.0 * b * x).exp();
    let w = Complex64::new(-ex, 0.0);
    let args = Hyp2F1Args::new(
        i * nu + lambda - i * mu,
        -i * nu + lambda - i * mu,
        1.0 - 2.0 * i * mu,
        w,
    );
    let f = hyp2f1(&args)?;
    let df = hyp2f1_dz(&args)?;
    let envelope = (lambda * ex.ln_1p()).exp();
    let phase = (2.0 * i * b * mu * x).exp();
    let value = envelope * phase * f;
    let log_slope = -2.0 * b * lambda * ex / (1.0 + ex) + 2.0 * i * b * mu;
    let derivative = value * log_slope + envelope * phase * df * (-2.0 * b * w);
    Ok(WaveEval {
        value,
        derivative,
        x,
    })
}

/// Amplitudes `(b3, c3)` with `b3 φ_ref + c3 φ_inc = φ_trans`, obtained in
/// closed form from the two-term connection formula of ₂F₁ at argument 1/z.
///
/// Independent of the numerical matching at `x = 0`; used as a cross-check.
pub fn connection_amplitudes(disp: &DispersionSet) -> Result<(Complex64, Complex64), SolverError> {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let (nu, mu, lambda) = (disp.nu, disp.mu, disp.lambda);
    let ratio = |num: [Complex64; 2], den: [Complex64; 2]| -> Result<Complex64, SpecfunError> {
        Ok((lngamma(num[0])? + lngamma(num[1])? - lngamma(den[0])? - lngamma(den[1])?).exp())
    };
    // φ_inc = k_inc_t φ_trans + k_inc_b φ_back, likewise for φ_ref.
    let (a, b, c) = (
        i * nu + lambda - i * mu,
        i * nu + lambda + i * mu,
        one + 2.0 * i * nu,
    );
    let k_inc_t = ratio([c, b - a], [b, c - a])?;
    let k_inc_b = ratio([c, a - b], [a, c - b])?;
    let (a, b, c) = (
        -i * nu + lambda + i * mu,
        -i * nu + lambda - i * mu,
        one - 2.0 * i * nu,
    );
    let k_ref_t = ratio([c, a - b], [a, c - b])?;
    let k_ref_b = ratio([c, b - a], [b, c - a])?;
    let det = k_ref_t * k_inc_b - k_inc_t * k_ref_b;
    Ok((k_inc_b / det, -k_ref_b / det))
}

/// Solved amplitudes, normalised to `c4 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitudes {
    pub b1: Complex64,
    pub c1: Complex64,
    pub b2: Complex64,
    pub c2: Complex64,
    pub b3: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
}

impl Amplitudes {
    fn from_solution(x: &Vector<UNKNOWNS>) -> Self {
        Self {
            b1: x[0],
            c1: x[1],
            b2: x[2],
            c2: x[3],
            b3: x[4],
            c3: x[5],
            c4: Complex64::new(1.0, 0.0),
        }
    }
}

/// Continuity conditions at `x0`, `x1` and `0` in the unknowns
/// `(b1, c1, b2, c2, b3, c3)`; rows alternate value / derivative.
#[derive(Debug, Clone)]
pub struct MatchSystem {
    pub matrix: Matrix<UNKNOWNS>,
    pub rhs: Vector<UNKNOWNS>,
    /// 1-norm condition number of `matrix`.
    pub condition: f64,
    pub dispersion: DispersionSet,
    params: PotentialParams,
    lu: Lu<UNKNOWNS>,
}

pub fn build_match_system(p: &PotentialParams, energy: f64) -> Result<MatchSystem, SolverError> {
    p.check_geometry()?;
    let disp = dispersion(p, energy)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);

    let i_back = eval_region_i(&disp, (one, zero), p.x0);
    let i_fwd = eval_region_i(&disp, (zero, one), p.x0);
    let ii_back_0 = eval_region_ii(&disp, (one, zero), p.x0);
    let ii_fwd_0 = eval_region_ii(&disp, (zero, one), p.x0);
    let ii_back_1 = eval_region_ii(&disp, (one, zero), p.x1);
    let ii_fwd_1 = eval_region_ii(&disp, (zero, one), p.x1);
    let (ref_1, inc_1) = eval_ref_inc(p, &disp, p.x1)?;
    let (ref_0, inc_0) = eval_ref_inc(p, &disp, 0.0)?;
    let trans = eval_trans(p, &disp, 0.0)?;

    let mut m = [[zero; UNKNOWNS]; UNKNOWNS];
    let mut rhs = [zero; UNKNOWNS];

    m[0] = [
        i_back.value,
        i_fwd.value,
        -ii_back_0.value,
        -ii_fwd_0.value,
        zero,
        zero,
    ];
    m[1] = [
        i_back.derivative,
        i_fwd.derivative,
        -ii_back_0.derivative,
        -ii_fwd_0.derivative,
        zero,
        zero,
    ];
    m[2] = [
        zero,
        zero,
        ii_back_1.value,
        ii_fwd_1.value,
        -ref_1.value,
        -inc_1.value,
    ];
    m[3] = [
        zero,
        zero,
        ii_back_1.derivative,
        ii_fwd_1.derivative,
        -ref_1.derivative,
        -inc_1.derivative,
    ];
    m[4] = [zero, zero, zero, zero, ref_0.value, inc_0.value];
    m[5] = [zero, zero, zero, zero, ref_0.derivative, inc_0.derivative];
    rhs[4] = trans.value;
    rhs[5] = trans.derivative;

    let lu = Lu::factor(&m).map_err(|_| SolverError::IllConditioned {
        condition: f64::INFINITY,
    })?;
    let condition = lu.condition_1();
    Ok(MatchSystem {
        matrix: m,
        rhs,
        condition,
        dispersion: disp,
        params: *p,
        lu,
    })
}

impl MatchSystem {
    pub fn solve(&self) -> Result<Amplitudes, SolverError> {
        if !(self.condition <= MAX_CONDITION) {
            return Err(SolverError::IllConditioned {
                condition: self.condition,
            });
        }
        Ok(Amplitudes::from_solution(&self.lu.solve(&self.rhs)))
    }

    /// `‖A x - rhs‖∞ / (‖A‖∞ ‖x‖∞)` for a candidate solution.
    pub fn relative_residual(&self, amps: &Amplitudes) -> f64 {
        let x = [amps.b1, amps.c1, amps.b2, amps.c2, amps.b3, amps.c3];
        let ax = mat_vec(&self.matrix, &x);
        let res = ax
            .iter()
            .zip(&self.rhs)
            .map(|(l, r)| (l - r).norm())
            .fold(0.0, f64::max);
        let x_norm = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
        res / (norm_inf(&self.matrix) * x_norm.max(1.0))
    }

    /// Largest relative jump `(|Δφ| + |Δφ'|) / (|φ| + |φ'|)` over the three
    /// matching points, re-evaluating each representation from scratch.
    pub fn matching_residual(&self, amps: &Amplitudes) -> Result<f64, SolverError> {
        let (p, disp) = (&self.params, &self.dispersion);
        let jump = |left: WaveEval, right: WaveEval| {
            let d = (left.value - right.value).norm() + (left.derivative - right.derivative).norm();
            d / (left.value.norm() + left.derivative.norm())
        };
        let at_x0 = jump(
            eval_region_i(disp, (amps.b1, amps.c1), p.x0),
            eval_region_ii(disp, (amps.b2, amps.c2), p.x0),
        );
        let (ref_1, inc_1) = eval_ref_inc(p, disp, p.x1)?;
        let at_x1 = jump(
            eval_region_ii(disp, (amps.b2, amps.c2), p.x1),
            ref_1.scaled(amps.b3).plus(inc_1.scaled(amps.c3)),
        );
        let (ref_0, inc_0) = eval_ref_inc(p, disp, 0.0)?;
        let at_0 = jump(
            ref_0.scaled(amps.b3).plus(inc_0.scaled(amps.c3)),
            eval_trans(p, disp, 0.0)?.scaled(amps.c4),
        );
        Ok(at_x0.max(at_x1).max(at_0))
    }
}

/// One energy's scattering observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    pub energy: f64,
    /// `|b1|² / |c1|²`.
    pub reflection: f64,
    /// `(2bμ / r) |c4|² / |c1|²` for real μ; `1 - R` in the evanescent regime.
    pub transmission: f64,
    /// Transmission from the outgoing current; zero for a decaying wave.
    pub transmission_current: f64,
    pub regime: EnergyRegime,
    /// `|R + T_current - 1|`.
    pub unitarity_residual: f64,
    pub matching_residual: f64,
    pub condition: f64,
}

/// Builds and solves the matching system, returning it with the amplitudes.
pub fn solve_amplitudes(
    p: &PotentialParams,
    energy: f64,
) -> Result<(MatchSystem, Amplitudes), SolverError> {
    let system = build_match_system(p, energy)?;
    let amps = system.solve()?;
    Ok((system, amps))
}

pub fn solve_point(p: &PotentialParams, energy: f64) -> Result<ScatteringPoint, SolverError> {
    let regime = classify_regime(p, energy, p.threshold_eps());
    if regime == EnergyRegime::NearThreshold {
        return Err(ModelError::ThresholdSingular { energy }.into());
    }
    let (system, amps) = solve_amplitudes(p, energy)?;
    let disp = &system.dispersion;
    let incident = amps.c1.norm_sqr();
    let reflection = amps.b1.norm_sqr() / incident;
    let transmission_current = if disp.mu_is_real() {
        2.0 * p.b * disp.mu.re / disp.r * amps.c4.norm_sqr() / incident
    } else {
        0.0
    };
    let transmission = if disp.mu_is_real() {
        transmission_current
    } else {
        1.0 - reflection
    };
    let point = ScatteringPoint {
        energy,
        reflection,
        transmission,
        transmission_current,
        regime,
        unitarity_residual: (reflection + transmission_current - 1.0).abs(),
        matching_residual: system.matching_residual(&amps)?,
        condition: system.condition,
    };
    if [
        point.reflection,
        point.transmission,
        point.matching_residual,
    ]
    .iter()
    .all(|v| v.is_finite())
    {
        Ok(point)
    } else {
        Err(SpecfunError::NonFinite.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> PotentialParams {
        PotentialParams::new(5.0, 2.0, 1.0, -4.0, -2.0).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn region_i_unit_forward_wave_at_origin() {
        let d = dispersion(&reference(), 7.0).unwrap();
        let w = eval_region_i(&d, (c(0.0, 0.0), c(1.0, 0.0)), 0.0);
        assert_eq!(w.value, c(1.0, 0.0));
        assert!((w.derivative - c(0.0, d.r)).norm() < 1e-14);
    }

    #[test]
    fn region_i_backward_log_derivative() {
        let d = dispersion(&reference(), 7.0).unwrap();
        for x in [-7.3, -4.0, 0.2] {
            let w = eval_region_i(&d, (c(1.0, 0.0), c(0.0, 0.0)), x);
            assert!((w.derivative / w.value - c(0.0, -d.r)).norm() < 1e-13);
        }
    }

    #[test]
    fn region_i_standing_wave() {
        let d = dispersion(&reference(), 3.0).unwrap();
        let w = eval_region_i(&d, (c(1.0, 0.0), c(1.0, 0.0)), -4.0);
        assert!((w.value - c(2.0 * (4.0 * d.r).cos(), 0.0)).norm() < 1e-13);
        assert!((w.derivative - c(2.0 * d.r * (4.0 * d.r).sin(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn region_ii_evanescent_is_real_exponential() {
        let d = dispersion(&reference(), 5.0).unwrap();
        let kappa = d.q.im;
        for x in [-4.0, -3.0, -2.0] {
            let w = eval_region_ii(&d, (c(0.0, 0.0), c(1.0, 0.0)), x);
            assert!((w.value - c((-kappa * x).exp(), 0.0)).norm() < 1e-13);
        }
        let w = eval_region_ii(&d, (c(1.0, 0.0), c(1.0, 0.0)), 0.0);
        assert_eq!(w.value, c(2.0, 0.0));
    }

    #[test]
    fn region_ii_hand_evaluation() {
        // E = 7: q = sqrt(3), value 2cos(2q), derivative 2q sin(2q) at x = -2
        let d = dispersion(&reference(), 7.0).unwrap();
        let q = 3f64.sqrt();
        let w = eval_region_ii(&d, (c(1.0, 0.0), c(1.0, 0.0)), -2.0);
        assert!((w.value - c(2.0 * (2.0 * q).cos(), 0.0)).norm() < 1e-13);
        assert!((w.derivative - c(2.0 * q * (2.0 * q).sin(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn incident_basis_is_plane_wave_far_left() {
        let p = reference();
        let d = dispersion(&p, 7.0).unwrap();
        let x = -20.0 / p.b;
        let (_, inc) = eval_ref_inc(&p, &d, x).unwrap();
        let want = c(0.0, d.r * x).exp();
        assert!((inc.value - want).norm() < 1e-8);
    }

    #[test]
    fn incident_basis_near_x1_is_leading_order() {
        let p = reference();
        let d = dispersion(&p, 7.0).unwrap();
        let (_, inc) = eval_ref_inc(&p, &d, p.x1).unwrap();
        let lead = (d.lambda * (-8f64).exp().ln_1p()).exp() * c(0.0, 2.0 * p.b * d.nu * p.x1).exp();
        // |₂F₁ - 1| is bounded by the first series term |ab/c||z| plus a small tail.
        let i = Complex64::i();
        let (a, b, cc) = (
            i * d.nu + d.lambda - i * d.mu,
            i * d.nu + d.lambda + i * d.mu,
            1.0 + 2.0 * i * d.nu,
        );
        let first_term = (a * b / cc).norm() * (-8f64).exp();
        assert!(first_term < 2e-3);
        assert!((inc.value / lead - 1.0).norm() < 1.05 * first_term);
    }

    #[test]
    fn transmitted_wave_far_right() {
        let p = reference();
        let d = dispersion(&p, 7.0).unwrap();
        let x = 20.0 / p.b;
        let t = eval_trans(&p, &d, x).unwrap();
        assert!((t.value.norm() - 1.0).abs() < 1e-8);
        assert!((t.value - c(0.0, 2.0 * p.b * d.mu.re * x).exp()).norm() < 1e-8);
    }

    #[test]
    fn transmitted_wave_decays_when_evanescent() {
        let p = reference();
        let d = dispersion(&p, 5.0).unwrap();
        let near = eval_trans(&p, &d, 1.0 / p.b).unwrap().value.norm();
        let far = eval_trans(&p, &d, 5.0 / p.b).unwrap().value.norm();
        assert!(far < near);
    }

    #[test]
    fn domains_enforced() {
        let p = reference();
        let d = dispersion(&p, 7.0).unwrap();
        assert!(matches!(
            eval_trans(&p, &d, -0.1),
            Err(SolverError::OutOfDomain { .. })
        ));
        assert!(matches!(
            eval_ref_inc(&p, &d, 0.1),
            Err(SolverError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn derivatives_match_central_differences() {
        let p = reference();
        let h = 1e-6;
        for e in [3.0, 5.0, 7.0] {
            let d = dispersion(&p, e).unwrap();
            let (r0, i0) = eval_ref_inc(&p, &d, -1.0).unwrap();
            let (rp, ip) = eval_ref_inc(&p, &d, -1.0 + h).unwrap();
            let (rm, im) = eval_ref_inc(&p, &d, -1.0 - h).unwrap();
            let fd_ref = (rp.value - rm.value) / (2.0 * h);
            let fd_inc = (ip.value - im.value) / (2.0 * h);
            assert!((r0.derivative - fd_ref).norm() < 1e-6 * r0.derivative.norm());
            assert!((i0.derivative - fd_inc).norm() < 1e-6 * i0.derivative.norm());

            let t0 = eval_trans(&p, &d, 0.7).unwrap();
            let fd = (eval_trans(&p, &d, 0.7 + h).unwrap().value
                - eval_trans(&p, &d, 0.7 - h).unwrap().value)
                / (2.0 * h);
            assert!((t0.derivative - fd).norm() < 1e-6 * t0.derivative.norm());
        }
    }

    #[test]
    fn matched_amplitudes_agree_with_connection_formula() {
        let p = reference();
        for e in [3.0, 5.0, 7.0, 12.0] {
            let (system, amps) = solve_amplitudes(&p, e).unwrap();
            let (b3, c3) = connection_amplitudes(&system.dispersion).unwrap();
            assert!(
                (amps.b3 - b3).norm() < 1e-8 * b3.norm().max(1.0),
                "E={e}: {} vs {b3}",
                amps.b3
            );
            assert!(
                (amps.c3 - c3).norm() < 1e-8 * c3.norm().max(1.0),
                "E={e}: {} vs {c3}",
                amps.c3
            );

            let d = &system.dispersion;
            let (r0, i0) = eval_ref_inc(&p, d, 0.0).unwrap();
            let t0 = eval_trans(&p, d, 0.0).unwrap();
            let combined = r0.value * b3 + i0.value * c3;
            assert!((combined - t0.value).norm() < 1e-8 * t0.value.norm());
        }
    }

    #[test]
    fn structure_is_six_by_six() {
        let s = build_match_system(&reference(), 7.0).unwrap();
        assert_eq!(s.matrix.len(), 6);
        assert!(s.matrix.iter().all(|row| row.len() == 6));
        assert_eq!(s.rhs.len(), 6);
    }

    #[test]
    fn solve_residual_is_tiny() {
        let (system, amps) = solve_amplitudes(&reference(), 7.0).unwrap();
        assert!(system.relative_residual(&amps) < 1e-10);
        assert!(system.condition < MAX_CONDITION);
    }

    #[test]
    fn free_particle_does_not_reflect() {
        let p = PotentialParams {
            a: 0.0,
            b: 2.0,
            m: 1.0,
            x0: -4.0,
            x1: -2.0,
        };
        for e in [1.5, 3.0, 9.0] {
            let (_, amps) = solve_amplitudes(&p, e).unwrap();
            assert!(amps.b1.norm() < 1e-10, "E={e}: b1={}", amps.b1);
            assert!((amps.c1.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn frozen_reference_values() {
        // Independent extended-precision matching (mpmath, numerical slopes).
        let p = reference();
        for (e, r, t) in [
            (3.0, 1.305_796_316_790_952, -0.305_796_316_790_952),
            (7.0, 0.547_962_321_884_072_5, 0.452_037_678_115_927_5),
            (12.0, 0.490_182_817_768_906_26, 0.509_817_182_231_093_7),
        ] {
            let pt = solve_point(&p, e).unwrap();
            assert!(
                (pt.reflection - r).abs() < 1e-9,
                "E={e}: R={}",
                pt.reflection
            );
            assert!(
                (pt.transmission - t).abs() < 1e-9,
                "E={e}: T={}",
                pt.transmission
            );
        }
    }

    #[test]
    fn evanescent_reflects_fully() {
        let pt = solve_point(&reference(), 5.0).unwrap();
        assert_eq!(pt.regime, EnergyRegime::Evanescent);
        assert!((pt.reflection - 1.0).abs() < 1e-6);
        assert!(pt.transmission.abs() < 1e-6);
        assert_eq!(pt.transmission_current, 0.0);
    }

    #[test]
    fn superradiant_point() {
        let pt = solve_point(&reference(), 3.0).unwrap();
        assert_eq!(pt.regime, EnergyRegime::Superradiant);
        assert!(pt.reflection > 1.0 && pt.transmission < 0.0);
        assert!(pt.unitarity_residual < 1e-6);
    }

    #[test]
    fn threshold_energy_refused() {
        let err = solve_point(&reference(), 6.0).unwrap_err();
        assert!(matches!(
            err,
            SolverError::Model(ModelError::ThresholdSingular { .. })
        ));
    }
}
