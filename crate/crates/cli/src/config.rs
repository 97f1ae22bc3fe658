//! Run settings merged from built-in defaults, a `key = value` file and flags.

use std::fs;
use std::path::{Path, PathBuf};

use kgstep::model::PotentialParams;
use kgstep::sweep::{OutputPaths, SweepConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Syntax {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Every setting is optional so layers can be merged field by field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub m: Option<f64>,
    pub x0: Option<f64>,
    pub x1: Option<f64>,
    pub emin: Option<f64>,
    pub emax: Option<f64>,
    pub estep: Option<f64>,
    pub eps: Option<f64>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub strict: Option<bool>,
}

impl Settings {
    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            a: over.a.or(self.a),
            b: over.b.or(self.b),
            m: over.m.or(self.m),
            x0: over.x0.or(self.x0),
            x1: over.x1.or(self.x1),
            emin: over.emin.or(self.emin),
            emax: over.emax.or(self.emax),
            estep: over.estep.or(self.estep),
            eps: over.eps.or(self.eps),
            out: over.out.or(self.out),
            plot: over.plot.or(self.plot),
            strict: over.strict.or(self.strict),
        }
    }

    pub fn parse_file(path: &Path) -> Result<Settings, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Settings::parse_str(&text, &path.display().to_string())
    }

    pub fn parse_str(text: &str, origin: &str) -> Result<Settings, ConfigError> {
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let syntax = |message: String| ConfigError::Syntax {
                path: origin.to_string(),
                line: idx + 1,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(syntax(format!("missing value for `{key}`")));
            }
            let number = || {
                value
                    .parse::<f64>()
                    .map_err(|_| syntax(format!("`{key}` expects a number, got `{value}`")))
            };
            match key {
                "a" => s.a = Some(number()?),
                "b" => s.b = Some(number()?),
                "m" => s.m = Some(number()?),
                "x0" => s.x0 = Some(number()?),
                "x1" => s.x1 = Some(number()?),
                "emin" => s.emin = Some(number()?),
                "emax" => s.emax = Some(number()?),
                "estep" => s.estep = Some(number()?),
                "eps" => s.eps = Some(number()?),
                "out" => s.out = Some(PathBuf::from(value)),
                "plot" => s.plot = Some(PathBuf::from(value)),
                "strict" => {
                    s.strict = Some(value.parse::<bool>().map_err(|_| {
                        syntax(format!("`strict` expects true or false, got `{value}`"))
                    })?)
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        Ok(s)
    }

    /// Fills unset fields with defaults and validates the result.
    pub fn resolve(&self) -> Result<(SweepConfig, bool), ConfigError> {
        let params = PotentialParams::new(
            self.a.unwrap_or(5.0),
            self.b.unwrap_or(2.0),
            self.m.unwrap_or(1.0),
            self.x0.unwrap_or(-4.0),
            self.x1.unwrap_or(-2.0),
        )
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        let defaults = SweepConfig::with_defaults(params);
        let cfg = SweepConfig {
            e_min: self.emin.unwrap_or(defaults.e_min),
            e_max: self.emax.unwrap_or(defaults.e_max),
            e_step: self.estep.unwrap_or(defaults.e_step),
            eps_threshold: self.eps.unwrap_or(defaults.eps_threshold),
            output: OutputPaths {
                csv: self.out.clone(),
                svg: self.plot.clone(),
            },
            params,
        };
        cfg.validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok((cfg, self.strict.unwrap_or(false)))
    }
}
