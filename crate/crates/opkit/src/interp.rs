//! Interpolation of an irregularly sampled sum of sinusoids.
//!
//! The true signal has an exactly sparse, Hermitian-symmetric spectrum on
//! the DFT grid. It is sampled at a random sorted subset of times and
//! recovered three ways: a plain least-squares solve on the restriction
//! (zeros off the samples), Tikhonov inversion with a second-derivative
//! penalty, and FISTA on the spectrum through `R · DFTᴴ`.

use std::fs;
use std::path::Path;

use opkit_core::ops::{Dft, Restriction, SecondDerivative};
use opkit_core::random::{seeded, sorted_indices};
use opkit_core::solve::{fista, regularized_inversion, solve_auto, SolveReport, SolverConfig};
use opkit_core::{c64, ComplexVector, OperatorExpr, C64};
use serde::Serialize;

use crate::{CliError, Result};

/// Coefficients below this fraction of the largest count as zero when
/// reading off the recovered support.
pub const SUPPORT_RTOL: f64 = 1e-3;
/// Default ℓ₁ weight as a fraction of `‖Aᴴy‖∞`.
pub const DEFAULT_TAU_FACTOR: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpConfig {
    /// Signal length, a power of two.
    pub n: usize,
    pub sample_fraction: f64,
    /// Positive-frequency bins, each in `(0, n/2)`.
    pub freqs: Vec<usize>,
    pub amps: Vec<f64>,
    pub seed: u64,
    /// Second-derivative weight for the regularized recovery.
    pub eps: f64,
    /// Absolute ℓ₁ weight; `None` means `0.05·‖Aᴴy‖∞`.
    pub tau: Option<f64>,
    /// FISTA iteration cap.
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for InterpConfig {
    fn default() -> Self {
        Self {
            n: 256,
            sample_fraction: 0.25,
            freqs: vec![8, 21, 34],
            amps: vec![1.0, 0.5, 0.25],
            seed: 42,
            eps: 1.0,
            tau: None,
            max_iters: 1000,
            tol: 1e-8,
        }
    }
}

impl InterpConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Usage(msg));
        if self.n < 4 || !self.n.is_power_of_two() {
            return fail(format!("n must be a power of two >= 4, got {}", self.n));
        }
        if !(self.sample_fraction > 0.0 && self.sample_fraction <= 1.0) {
            return fail(format!("sample fraction must lie in (0, 1], got {}", self.sample_fraction));
        }
        if self.freqs.is_empty() || self.freqs.len() != self.amps.len() {
            return fail("need as many amplitudes as frequencies (at least one)".into());
        }
        if let Some(f) = self.freqs.iter().find(|&&f| f == 0 || 2 * f >= self.n) {
            return fail(format!("frequency bin {f} outside (0, {})", self.n / 2));
        }
        let mut sorted = self.freqs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.freqs.len() {
            return fail("frequency bins must be distinct".into());
        }
        if self.amps.iter().any(|a| !(a.is_finite() && *a != 0.0)) {
            return fail("amplitudes must be finite and non-zero".into());
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return fail(format!("eps must be positive, got {}", self.eps));
        }
        if let Some(tau) = self.tau {
            if !(tau > 0.0 && tau.is_finite()) {
                return fail(format!("tau must be positive, got {tau}"));
            }
        }
        if self.max_iters == 0 || !(self.tol > 0.0) {
            return fail("max_iters must be >= 1 and tol > 0".into());
        }
        Ok(())
    }

    pub fn sample_count(&self) -> usize {
        ((self.sample_fraction * self.n as f64).floor() as usize).max(1)
    }

    /// Sorted bins `{f, n − f}` of the synthesized spectrum.
    pub fn true_support(&self) -> Vec<usize> {
        let mut bins: Vec<usize> = self.freqs.iter().flat_map(|&f| [f, self.n - f]).collect();
        bins.sort_unstable();
        bins
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodReport {
    pub rel_l2_error: f64,
    pub iterations: usize,
    pub stop_reason: &'static str,
    pub final_residual: f64,
}

impl MethodReport {
    fn new(x: &[f64], truth: &[f64], report: &SolveReport) -> Self {
        Self {
            rel_l2_error: rel_l2(x, truth),
            iterations: report.iterations,
            stop_reason: report.stop_reason.as_str(),
            final_residual: *report.residual_history.last().expect("history holds iterate 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FistaReport {
    #[serde(flatten)]
    pub method: MethodReport,
    pub tau: f64,
    pub final_objective: f64,
    pub recovered_support: Vec<usize>,
    pub true_support: Vec<usize>,
    pub support_recovered: bool,
    /// Largest imaginary part of the recovered time signal before taking
    /// the real part.
    pub max_imag: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpReport {
    pub config: InterpConfig,
    pub sample_count: usize,
    pub naive: MethodReport,
    pub regularized: MethodReport,
    pub fista: FistaReport,
}

#[derive(Debug, Clone)]
pub struct InterpOutcome {
    pub x_true: Vec<f64>,
    pub indices: Vec<usize>,
    pub spectrum: ComplexVector,
    pub x_naive: Vec<f64>,
    pub x_reg: Vec<f64>,
    pub x_fista: Vec<f64>,
    pub spectrum_fista: ComplexVector,
    pub report: InterpReport,
}

pub fn rel_l2(x: &[f64], truth: &[f64]) -> f64 {
    let num: f64 = x.iter().zip(truth).map(|(a, b)| (a - b).powi(2)).sum();
    let den: f64 = truth.iter().map(|b| b * b).sum();
    (num / den).sqrt()
}

/// Indices of coefficients within `SUPPORT_RTOL` of the largest magnitude.
pub fn support(coeffs: &[C64]) -> Vec<usize> {
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Vec::new();
    }
    (0..coeffs.len()).filter(|&k| coeffs[k].norm() >= SUPPORT_RTOL * max).collect()
}

/// Spectrum with `X[f] = X[n−f] = a·√n/2`, so the time signal is
/// `Σ a·cos(2πft/n)`.
pub fn synthesize_spectrum(cfg: &InterpConfig) -> ComplexVector {
    let mut spectrum = ComplexVector::zeros(cfg.n);
    let scale = (cfg.n as f64).sqrt() / 2.0;
    for (&f, &a) in cfg.freqs.iter().zip(&cfg.amps) {
        spectrum[f] = c64(a * scale, 0.0);
        spectrum[cfg.n - f] = c64(a * scale, 0.0);
    }
    spectrum
}

fn real_part(v: &[C64]) -> (Vec<f64>, f64) {
    let max_imag = v.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    (v.iter().map(|z| z.re).collect(), max_imag)
}

pub fn run(cfg: &InterpConfig) -> Result<InterpOutcome> {
    cfg.validate()?;
    let n = cfg.n;
    let idft = OperatorExpr::from(Dft::new(n)?).h();

    let spectrum = synthesize_spectrum(cfg);
    let (x_true, imag) = real_part(&idft.forward(&spectrum)?);
    if imag > 1e-10 {
        return Err(CliError::Usage(format!("synthesized signal is not real (imag {imag:e})")));
    }

    let indices = sorted_indices(&mut seeded(cfg.seed), n, cfg.sample_count());
    let restriction: OperatorExpr = Restriction::new(n, indices.clone())?.into();
    let y = restriction.forward(&ComplexVector::from_real(&x_true))?;

    let cgls_cfg = SolverConfig::cgls_defaults(restriction.shape()).with_tol(cfg.tol);
    let (naive, naive_rep) = solve_auto(&restriction, &y, &cgls_cfg)?;
    let x_naive = naive.real_parts();

    let d2: OperatorExpr = SecondDerivative::new(n, 1.0)?.into();
    let reg_cfg = SolverConfig::cgls_defaults(restriction.shape())
        .with_tol(cfg.tol)
        .with_eps(vec![cfg.eps]);
    let (reg, reg_rep) = regularized_inversion(&restriction, &[d2], &y, &reg_cfg)?;
    let x_reg = reg.real_parts();

    let sparse_op = OperatorExpr::compose(&restriction, &idft)?;
    let tau = match cfg.tau {
        Some(t) => t,
        None => DEFAULT_TAU_FACTOR * sparse_op.adjoint_apply(&y)?.iter().map(|c| c.norm()).fold(0.0, f64::max),
    };
    let fista_cfg = SolverConfig::new(cfg.max_iters, cfg.tol).with_tau(tau).with_seed(cfg.seed);
    let (spectrum_fista, fista_rep) = fista(&sparse_op, &y, &fista_cfg)?;
    let (x_fista, max_imag) = real_part(&idft.forward(&spectrum_fista)?);

    let recovered_support = support(&spectrum_fista);
    let true_support = cfg.true_support();
    let report = InterpReport {
        config: cfg.clone(),
        sample_count: indices.len(),
        naive: MethodReport::new(&x_naive, &x_true, &naive_rep),
        regularized: MethodReport::new(&x_reg, &x_true, &reg_rep),
        fista: FistaReport {
            method: MethodReport::new(&x_fista, &x_true, &fista_rep),
            tau,
            final_objective: *fista_rep.objective_history.last().expect("history holds iterate 0"),
            support_recovered: recovered_support == true_support,
            recovered_support,
            true_support,
            max_imag,
        },
    };
    Ok(InterpOutcome {
        x_true,
        indices,
        spectrum,
        x_naive,
        x_reg,
        x_fista,
        spectrum_fista,
        report,
    })
}

#[derive(Serialize)]
struct SignalRow {
    t: usize,
    x_true: f64,
    y_mask: u8,
    x_naive: f64,
    x_reg: f64,
    x_fista: f64,
}

/// Writes `signals.csv` and `report.json` into `dir`, creating it if needed.
pub fn write_outputs(outcome: &InterpOutcome, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;

    let csv_path = dir.join("signals.csv");
    let file = fs::File::create(&csv_path).map_err(|e| CliError::io(&csv_path, e))?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
    let mut sampled = outcome.indices.iter().peekable();
    for t in 0..outcome.x_true.len() {
        let hit = sampled.next_if_eq(&&t).is_some();
        w.serialize(SignalRow {
            t,
            x_true: outcome.x_true[t],
            y_mask: u8::from(hit),
            x_naive: outcome.x_naive[t],
            x_reg: outcome.x_reg[t],
            x_fista: outcome.x_fista[t],
        })?;
    }
    w.flush().map_err(|e| CliError::io(&csv_path, e))?;

    let json_path = dir.join("report.json");
    let mut text = serde_json::to_string_pretty(&outcome.report)?;
    text.push('\n');
    fs::write(&json_path, text).map_err(|e| CliError::io(&json_path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_configs() {
        let ok = InterpConfig::default();
        assert!(ok.validate().is_ok());
        let bad = [
            InterpConfig { n: 100, ..ok.clone() },
            InterpConfig { sample_fraction: 0.0, ..ok.clone() },
            InterpConfig { freqs: vec![8, 128, 3], ..ok.clone() },
            InterpConfig { freqs: vec![8, 8, 3], ..ok.clone() },
            InterpConfig { amps: vec![1.0], ..ok.clone() },
            InterpConfig { eps: 0.0, ..ok.clone() },
            InterpConfig { tau: Some(-1.0), ..ok.clone() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn support_threshold() {
        let c = [c64(1.0, 0.0), c64(0.0, 9e-4), c64(0.0, 1e-3), c64(0.0, 0.0)];
        assert_eq!(support(&c), vec![0, 2]);
        assert!(support(&[C64::default(); 3]).is_empty());
    }

    #[test]
    fn true_support_is_hermitian() {
        assert_eq!(InterpConfig::default().true_support(), vec![8, 21, 34, 222, 235, 248]);
    }
}
