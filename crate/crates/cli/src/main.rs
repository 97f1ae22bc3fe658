use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kgstep::report::{csv_string, emit_csv, emit_svg};
use kgstep::sweep::{accepted_points, find_resonances, run_sweep, PointOutcome};

use crate::config::Settings;

mod config;

const EXIT_CONFIG: u8 = 2;
const EXIT_POINT_FAILED: u8 = 3;
const EXIT_IO: u8 = 1;

/// Sweep reflection and transmission of a Klein-Gordon particle across a
/// step potential joined to a tanh tail.
#[derive(Parser, Debug)]
#[command(name = "kgstep", version)]
struct Args {
    /// Key = value settings file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,

    /// Potential height a
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,

    /// Tail smoothness b
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,

    /// Particle mass m
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,

    /// Left edge of the barrier
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,

    /// Right edge of the barrier (must be negative)
    #[arg(long, allow_hyphen_values = true)]
    x1: Option<f64>,

    /// First energy of the sweep [default: m + 0.05]
    #[arg(long, allow_hyphen_values = true)]
    emin: Option<f64>,

    /// Last energy of the sweep [default: 3a]
    #[arg(long, allow_hyphen_values = true)]
    emax: Option<f64>,

    /// Energy step [default: 0.01]
    #[arg(long)]
    estep: Option<f64>,

    /// Half-width of the bands skipped around E = m and E = a ± m [default: 1e-6·m]
    #[arg(long)]
    eps: Option<f64>,

    /// CSV destination; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,

    /// SVG plot destination
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Exit with status 3 if any grid point failed
    #[arg(long)]
    strict: bool,
}

impl Args {
    fn settings(&self) -> Settings {
        Settings {
            a: self.a,
            b: self.b,
            m: self.m,
            x0: self.x0,
            x1: self.x1,
            emin: self.emin,
            emax: self.emax,
            estep: self.estep,
            eps: self.eps,
            out: self.out.clone(),
            plot: self.plot.clone(),
            strict: self.strict.then_some(true),
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();

    let file = match &args.config {
        Some(path) => match Settings::parse_file(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
        },
        None => Settings::default(),
    };
    let (cfg, strict) = match file.overlay(args.settings()).resolve() {
        Ok(resolved) => resolved,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let written = match &cfg.output.csv {
        Some(path) => emit_csv(&rows, path),
        None => csv_string(&rows).map(|csv| {
            let _ = std::io::stdout().lock().write_all(csv.as_bytes());
        }),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    if let Some(path) = &cfg.output.svg {
        if let Err(e) = emit_svg(&rows, path) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    }

    let mut failed = 0usize;
    let mut gaps = 0usize;
    for row in &rows {
        match &row.outcome {
            PointOutcome::Failed(reason) => {
                failed += 1;
                eprintln!("warning: E = {:.6}: {reason}", row.energy);
            }
            PointOutcome::Threshold => gaps += 1,
            PointOutcome::Solved(_) => {}
        }
    }
    let points = accepted_points(&rows);
    eprintln!(
        "{} energies: {} solved, {} threshold gaps, {} failed",
        rows.len(),
        points.len(),
        gaps,
        failed
    );
    for peak in find_resonances(&points) {
        eprintln!(
            "resonance: E = {:.6}, T = {:.9}",
            peak.energy, peak.transmission
        );
    }

    if strict && failed > 0 {
        ExitCode::from(EXIT_POINT_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
