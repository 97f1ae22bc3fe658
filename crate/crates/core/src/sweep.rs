//! Energy sweeps and transmission-resonance detection.

use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use crate::model::{classify_regime, EnergyRegime, PotentialParams};
use crate::solver::{solve_point, ScatteringPoint};

/// Accepted points must satisfy |R + T - 1| below this.
pub const UNITARITY_TOL: f64 = 1e-6;
/// A local maximum of T counts as a resonance above this height.
pub const RESONANCE_MIN_T: f64 = 0.999;
const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    ConfigInvalid(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub params: PotentialParams,
    pub e_min: f64,
    pub e_max: f64,
    pub e_step: f64,
    pub eps_threshold: f64,
    pub output: OutputPaths,
}

impl SweepConfig {
    /// Grid `[m + 0.05, 3a]` with step 0.01 and the default threshold band.
    pub fn with_defaults(params: PotentialParams) -> Self {
        Self {
            params,
            e_min: params.m + 0.05,
            e_max: 3.0 * params.a,
            e_step: 0.01,
            eps_threshold: params.threshold_eps(),
            output: OutputPaths::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let p = &self.params;
        PotentialParams::new(p.a, p.b, p.m, p.x0, p.x1)
            .map_err(|e| SweepError::ConfigInvalid(e.to_string()))?;
        if !(p.m < self.e_min && self.e_min < self.e_max) {
            return Err(SweepError::ConfigInvalid(format!(
                "need m < emin < emax, got m={}, emin={}, emax={}",
                p.m, self.e_min, self.e_max
            )));
        }
        if !(self.e_step > 0.0) || !self.e_max.is_finite() {
            return Err(SweepError::ConfigInvalid(format!(
                "estep must be positive, got {}",
                self.e_step
            )));
        }
        if !(self.eps_threshold >= 0.0) {
            return Err(SweepError::ConfigInvalid(format!(
                "threshold band must be non-negative, got {}",
                self.eps_threshold
            )));
        }
        if self.grid_len() > MAX_GRID_POINTS {
            return Err(SweepError::ConfigInvalid(format!(
                "grid has more than {MAX_GRID_POINTS} points"
            )));
        }
        Ok(())
    }

    fn grid_len(&self) -> usize {
        ((self.e_max - self.e_min) / self.e_step + 1e-9).floor() as usize + 1
    }

    /// `e_min + k·e_step` for every k that stays within `e_max`.
    pub fn energies(&self) -> Vec<f64> {
        (0..self.grid_len())
            .map(|k| self.e_min + k as f64 * self.e_step)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointOutcome {
    Solved(ScatteringPoint),
    /// Inside a threshold band; kept so the grid stays aligned.
    Threshold,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub energy: f64,
    pub outcome: PointOutcome,
}

impl SweepRow {
    pub fn point(&self) -> Option<&ScatteringPoint> {
        match &self.outcome {
            PointOutcome::Solved(p) => Some(p),
            _ => None,
        }
    }
}

fn evaluate(cfg: &SweepConfig, energy: f64) -> SweepRow {
    let p = &cfg.params;
    let outcome = if classify_regime(p, energy, cfg.eps_threshold) == EnergyRegime::NearThreshold {
        PointOutcome::Threshold
    } else {
        match solve_point(p, energy) {
            Ok(pt) if pt.unitarity_residual < UNITARITY_TOL => PointOutcome::Solved(pt),
            Ok(pt) => {
                PointOutcome::Failed(format!("unitarity residual {:.3e}", pt.unitarity_residual))
            }
            Err(e) => PointOutcome::Failed(e.to_string()),
        }
    };
    SweepRow { energy, outcome }
}

/// Solves every grid energy in parallel; rows come back in ascending E.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    cfg.validate()?;
    Ok(cfg
        .energies()
        .into_par_iter()
        .map(|e| evaluate(cfg, e))
        .collect())
}

pub fn run_sweep_serial(cfg: &SweepConfig) -> Result<Vec<SweepRow>, SweepError> {
    cfg.validate()?;
    Ok(cfg
        .energies()
        .into_iter()
        .map(|e| evaluate(cfg, e))
        .collect())
}

pub fn accepted_points(rows: &[SweepRow]) -> Vec<ScatteringPoint> {
    rows.iter().filter_map(|r| r.point().copied()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub energy: f64,
    pub transmission: f64,
}

/// Local maxima of T among propagating points, refined by the parabola
/// through the three bracketing samples, kept when the refined T exceeds
/// [`RESONANCE_MIN_T`].
pub fn find_resonances(points: &[ScatteringPoint]) -> Vec<Resonance> {
    let samples: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.regime == EnergyRegime::Propagating)
        .map(|p| (p.energy, p.transmission))
        .collect();
    samples
        .windows(3)
        .filter(|w| w[1].1 >= w[0].1 && w[1].1 > w[2].1)
        .map(|w| refine_peak(w[0], w[1], w[2]))
        .filter(|r| r.transmission > RESONANCE_MIN_T)
        .collect()
}

fn refine_peak((x0, y0): (f64, f64), (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> Resonance {
    // Vertex of the interpolating parabola in divided-difference form.
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curv = (d12 - d01) / (x2 - x0);
    if !(curv < 0.0) {
        return Resonance {
            energy: x1,
            transmission: y1,
        };
    }
    let slope_at_x1 = d01 + curv * (x1 - x0);
    let vertex = (x1 - slope_at_x1 / (2.0 * curv)).clamp(x0, x2);
    let dx = vertex - x1;
    Resonance {
        energy: vertex,
        transmission: y1 + slope_at_x1 * dx + curv * dx * dx,
    }
}
