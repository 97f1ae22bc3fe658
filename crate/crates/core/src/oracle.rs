//! Independent numerical routes to R and T that never touch ₂F₁.
//!
//! Both main oracles start from the purely outgoing wave `e^{ikx}` on the
//! right and carry `(φ, φ')` leftwards, then split the result into
//! `b1 e^{-irx} + c1 e^{irx}`:
//!
//! * [`ode_scatter`] integrates the Klein-Gordon equation with classical RK4,
//! * [`staircase_scatter`] replaces the tanh tail by constant steps and
//!   composes exact 2×2 transfer matrices.
//!
//! [`sharp_step_scatter`] solves the b → ∞ limit (four constant levels) by
//! direct matching.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{LinalgError, Lu};
use crate::model::{ModelError, PotentialParams};

/// Refusal threshold on |R + T - 1| for the ODE route.
pub const ODE_MAX_UNITARITY_RESIDUAL: f64 = 1e-4;
pub const STAIRCASE_MIN_SEGMENTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("energy {energy} has no propagating transmitted wave")]
    UnsupportedRegime { energy: f64 },
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("step too coarse: |R + T - 1| = {residual:.3e}")]
    StepTooCoarse { residual: f64 },
    #[error("numeric overflow while composing transfer matrices")]
    Overflow,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    OdeBackward,
    Staircase,
    SharpStep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub reflection: f64,
    pub transmission: f64,
    pub method: OracleMethod,
    /// Step size for the ODE, segment count for the staircase, 0 for exact.
    pub resolution: f64,
}

impl OracleResult {
    pub fn unitarity_residual(&self) -> f64 {
        (self.reflection + self.transmission - 1.0).abs()
    }
}

/// Default right edge of the tanh staircase: |tanh(b·x) - 1| < 1e-8 there.
pub fn default_tail(p: &PotentialParams) -> f64 {
    10.0 / p.b + 1.0
}

/// Asymptotic wavenumbers `(r, k)`: r > 0 on the left, k = sign(E-a)·|k| on
/// the right (positive group velocity).
fn asymptotic_wavenumbers(p: &PotentialParams, energy: f64) -> Result<(f64, f64), OracleError> {
    p.check_geometry()?;
    let left = (energy + p.a).powi(2) - p.m * p.m;
    let right = (energy - p.a).powi(2) - p.m * p.m;
    if !(energy > p.m) || left <= 0.0 {
        return Err(ModelError::ThresholdSingular { energy }.into());
    }
    if right <= p.threshold_eps() {
        return Err(OracleError::UnsupportedRegime { energy });
    }
    Ok((left.sqrt(), right.sqrt().copysign(energy - p.a)))
}

type State = [Complex64; 2];

fn outgoing_state(k: f64, x: f64) -> State {
    let w = Complex64::new(0.0, k * x).exp();
    [w, Complex64::new(0.0, k) * w]
}

/// Splits `(φ, φ')` at `x` into `b1 e^{-irx} + c1 e^{irx}` and forms R, T.
fn project_left(state: State, r: f64, k: f64, x: f64) -> (f64, f64) {
    let ir = Complex64::new(0.0, r);
    let c1 = (state[0] + state[1] / ir) * 0.5 * (-ir * x).exp();
    let b1 = (state[0] - state[1] / ir) * 0.5 * (ir * x).exp();
    let incident = c1.norm_sqr();
    (b1.norm_sqr() / incident, k / r / incident)
}

fn rk4_interval(mut s: State, from: f64, to: f64, step: f64, k2: impl Fn(f64) -> f64) -> State {
    let n = ((to - from).abs() / step).ceil().max(1.0) as usize;
    let h = (to - from) / n as f64;
    let rhs = |x: f64, s: State| -> State { [s[1], -k2(x) * s[0]] };
    let axpy = |s: State, d: State, t: f64| -> State { [s[0] + d[0] * t, s[1] + d[1] * t] };
    for j in 0..n {
        let x = from + j as f64 * h;
        let d1 = rhs(x, s);
        let d2 = rhs(x + 0.5 * h, axpy(s, d1, 0.5 * h));
        let d3 = rhs(x + 0.5 * h, axpy(s, d2, 0.5 * h));
        let d4 = rhs(x + h, axpy(s, d3, h));
        for i in 0..2 {
            s[i] += (d1[i] + 2.0 * d2[i] + 2.0 * d3[i] + d4[i]) * (h / 6.0);
        }
    }
    s
}

/// RK4 integration from `x_right` back to `x_left`, one sub-grid per
/// potential piece so the jumps at `x0` and `x1` fall on grid points.
pub fn ode_scatter(
    p: &PotentialParams,
    energy: f64,
    x_left: f64,
    x_right: f64,
    step: f64,
) -> Result<OracleResult, OracleError> {
    let (r, k) = asymptotic_wavenumbers(p, energy)?;
    if !(x_left < p.x0) || !(x_right > 10.0 / p.b) || !(step > 0.0) {
        return Err(OracleError::BadGrid(format!(
            "need x_left < x0, x_right > 10/b, step > 0 (got {x_left}, {x_right}, {step})"
        )));
    }
    let m2 = p.m * p.m;
    let k2 = |v: f64| (energy - v).powi(2) - m2;
    let mut s = outgoing_state(k, x_right);
    s = rk4_interval(s, x_right, p.x1, step, |x| k2(p.a * (p.b * x).tanh()));
    s = rk4_interval(s, p.x1, p.x0, step, |_| k2(p.a));
    s = rk4_interval(s, p.x0, x_left, step, |_| k2(-p.a));
    let (reflection, transmission) = project_left(s, r, k, x_left);
    let out = OracleResult {
        reflection,
        transmission,
        method: OracleMethod::OdeBackward,
        resolution: step,
    };
    let residual = out.unitarity_residual();
    if !(residual <= ODE_MAX_UNITARITY_RESIDUAL) {
        return Err(OracleError::StepTooCoarse { residual });
    }
    Ok(out)
}

/// Carries `(φ, φ')` from `x` to `x - width` across constant `k²`.
fn step_back(s: State, width: f64, k2: f64) -> State {
    let kappa = Complex64::new(k2, 0.0).sqrt();
    let theta = kappa * width;
    let cos = theta.cos();
    let sin = theta.sin();
    let sinc = if kappa.norm() * width < 1e-8 {
        Complex64::new(width, 0.0)
    } else {
        sin / kappa
    };
    [cos * s[0] - sinc * s[1], kappa * sin * s[0] + cos * s[1]]
}

/// Staircase transfer-matrix route: the tail on `[x1, x_tail]` is cut into
/// `n_segments` equal steps with V sampled at each midpoint; `V = a` beyond
/// `x_tail`. The plateau and the left region are exact.
pub fn staircase_scatter(
    p: &PotentialParams,
    energy: f64,
    n_segments: usize,
    x_tail: f64,
) -> Result<OracleResult, OracleError> {
    staircase_with_tail(p, energy, n_segments, x_tail, |x| p.a * (p.b * x).tanh())
}

fn staircase_with_tail(
    p: &PotentialParams,
    energy: f64,
    n_segments: usize,
    x_tail: f64,
    tail: impl Fn(f64) -> f64,
) -> Result<OracleResult, OracleError> {
    let (r, k) = asymptotic_wavenumbers(p, energy)?;
    if n_segments < STAIRCASE_MIN_SEGMENTS {
        return Err(OracleError::BadGrid(format!(
            "need at least {STAIRCASE_MIN_SEGMENTS} segments, got {n_segments}"
        )));
    }
    if !(x_tail > 0.0) {
        return Err(OracleError::BadGrid(format!(
            "x_tail must be positive, got {x_tail}"
        )));
    }
    let m2 = p.m * p.m;
    let k2 = |v: f64| (energy - v).powi(2) - m2;
    let width = (x_tail - p.x1) / n_segments as f64;
    let mut s = outgoing_state(k, x_tail);
    for j in (0..n_segments).rev() {
        let mid = p.x1 + (j as f64 + 0.5) * width;
        s = step_back(s, width, k2(tail(mid)));
    }
    s = step_back(s, p.x1 - p.x0, k2(p.a));
    if !s.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        return Err(OracleError::Overflow);
    }
    let (reflection, transmission) = project_left(s, r, k, p.x0);
    Ok(OracleResult {
        reflection,
        transmission,
        method: OracleMethod::Staircase,
        resolution: n_segments as f64,
    })
}

/// The b → ∞ limit: levels `-a, +a, -a, +a` with jumps at `x0`, `x1`, `0`,
/// solved by direct value/slope matching with unit transmitted amplitude.
pub fn sharp_step_scatter(p: &PotentialParams, energy: f64) -> Result<OracleResult, OracleError> {
    let (r, k) = asymptotic_wavenumbers(p, energy)?;
    let q = k;
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    let wave = |kk: f64, x: f64| (i * kk * x).exp();
    // Columns: (b1, c1, b2, c2, b3, c3); each row is left side minus right side.
    let pair = |kk: f64, x: f64| {
        let (bw, fw) = (wave(-kk, x), wave(kk, x));
        ([bw, fw], [-i * kk * bw, i * kk * fw])
    };
    let (v_i, d_i) = pair(r, p.x0);
    let (v_ii0, d_ii0) = pair(q, p.x0);
    let (v_ii1, d_ii1) = pair(q, p.x1);
    let (v_iii1, d_iii1) = pair(r, p.x1);
    let (v_iii0, d_iii0) = pair(r, 0.0);
    let matrix = [
        [v_i[0], v_i[1], -v_ii0[0], -v_ii0[1], zero, zero],
        [d_i[0], d_i[1], -d_ii0[0], -d_ii0[1], zero, zero],
        [zero, zero, v_ii1[0], v_ii1[1], -v_iii1[0], -v_iii1[1]],
        [zero, zero, d_ii1[0], d_ii1[1], -d_iii1[0], -d_iii1[1]],
        [zero, zero, zero, zero, v_iii0[0], v_iii0[1]],
        [zero, zero, zero, zero, d_iii0[0], d_iii0[1]],
    ];
    let rhs = [zero, zero, zero, zero, Complex64::new(1.0, 0.0), i * k];
    let x = Lu::factor(&matrix)?.solve(&rhs);
    let incident = x[1].norm_sqr();
    Ok(OracleResult {
        reflection: x[0].norm_sqr() / incident,
        transmission: k / r / incident,
        method: OracleMethod::SharpStep,
        resolution: 0.0,
    })
}
