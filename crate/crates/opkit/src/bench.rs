//! Forward-product timing: structured operators against dense matrices.
//!
//! Each `(operator, implementation, size)` combination is warmed up three
//! times, then applied `repeats` times. A monotonic clock around the whole
//! loop gives the mean; per-repeat samples give the (population) standard
//! deviation, which is zero for a single repeat.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use opkit_core::ops::{Dft, FirstDerivative, Restriction};
use opkit_core::random::{complex_normal_vector, seeded};
use opkit_core::{materialize_with_cap, OperatorExpr};

use crate::{CliError, Result};

pub const WARMUP_RUNS: usize = 3;
pub const DEFAULT_REPEATS: usize = 200;
/// Dense matrices above 2²⁴ entries (M > 4096) are not built.
pub const DEFAULT_DENSE_CAP: usize = 1 << 24;
/// One sample kept out of every `SUBSAMPLING` for the restriction benchmark.
pub const SUBSAMPLING: usize = 10;
pub const CSV_HEADER: [&str; 6] = ["op_name", "impl", "size", "repeats", "mean_seconds", "std_seconds"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    Restriction,
    FirstDerivative,
    Dft,
}

impl BenchOp {
    pub const ALL: [BenchOp; 3] = [BenchOp::Restriction, BenchOp::FirstDerivative, BenchOp::Dft];

    pub fn name(&self) -> &'static str {
        match self {
            BenchOp::Restriction => "restriction",
            BenchOp::FirstDerivative => "deriv1",
            BenchOp::Dft => "dft",
        }
    }

    /// The structured operator acting on a length-`size` model.
    pub fn build(&self, size: usize) -> Result<OperatorExpr> {
        Ok(match self {
            BenchOp::Restriction => Restriction::new(size, (0..size).step_by(SUBSAMPLING).collect())?.into(),
            BenchOp::FirstDerivative => FirstDerivative::new(size, 1.0)?.into(),
            BenchOp::Dft => Dft::new(size)?.into(),
        })
    }
}

impl FromStr for BenchOp {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown benchmark operator '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Impl {
    Operator,
    Dense,
}

impl Impl {
    pub fn name(&self) -> &'static str {
        match self {
            Impl::Operator => "operator",
            Impl::Dense => "dense",
        }
    }
}

impl FromStr for Impl {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" => Ok(Impl::Operator),
            "dense" => Ok(Impl::Dense),
            _ => Err(CliError::Usage(format!("unknown implementation '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub op_name: String,
    pub impl_: Impl,
    pub size: usize,
    pub repeats: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchRow {
    Measured(BenchRecord),
    /// The dense matrix would exceed the cap.
    Skipped {
        op_name: String,
        impl_: Impl,
        size: usize,
        repeats: usize,
    },
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchRow::Measured(r) => write!(
                f,
                "{:<12} {:<9} {:>7}  mean {:.3e} s  std {:.3e} s",
                r.op_name,
                r.impl_.name(),
                r.size,
                r.mean_seconds,
                r.std_seconds
            ),
            BenchRow::Skipped { op_name, impl_, size, .. } => {
                write!(f, "{:<12} {:<9} {:>7}  skipped (dense cap)", op_name, impl_.name(), size)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub ops: Vec<BenchOp>,
    pub impls: Vec<Impl>,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub dense_cap: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            ops: BenchOp::ALL.to_vec(),
            impls: vec![Impl::Operator, Impl::Dense],
            sizes: (10..=14).map(|p| 1usize << p).collect(),
            repeats: DEFAULT_REPEATS,
            dense_cap: DEFAULT_DENSE_CAP,
            seed: 0,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(CliError::Usage("repeats must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage("sizes must be non-empty and strictly ascending".into()));
        }
        if self.ops.contains(&BenchOp::Dft) && !self.sizes.iter().all(|s| s.is_power_of_two()) {
            return Err(CliError::Usage("dft benchmark sizes must be powers of two".into()));
        }
        Ok(())
    }
}

/// Times `repeats` forward applications after the warm-up runs and returns
/// `(mean, std)` in seconds.
pub fn time_forward(op: &OperatorExpr, repeats: usize, seed: u64) -> Result<(f64, f64)> {
    let x = complex_normal_vector(&mut seeded(seed), op.ncols());
    for _ in 0..WARMUP_RUNS {
        black_box(op.forward(black_box(&x))?);
    }
    let mut samples = Vec::with_capacity(repeats);
    let total = Instant::now();
    for _ in 0..repeats {
        let t = Instant::now();
        black_box(op.forward(black_box(&x))?);
        samples.push(t.elapsed().as_secs_f64());
    }
    let mean = total.elapsed().as_secs_f64() / repeats as f64;
    let sample_mean = samples.iter().sum::<f64>() / repeats as f64;
    let var = samples.iter().map(|s| (s - sample_mean).powi(2)).sum::<f64>() / repeats as f64;
    Ok((mean, var.sqrt()))
}

/// Runs every combination in order, calling `on_row` as each one finishes.
pub fn run(cfg: &BenchConfig, mut on_row: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &op in &cfg.ops {
        for &impl_ in &cfg.impls {
            for &size in &cfg.sizes {
                let row = bench_one(op, impl_, size, cfg)?;
                on_row(&row);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn bench_one(op: BenchOp, impl_: Impl, size: usize, cfg: &BenchConfig) -> Result<BenchRow> {
    let structured = op.build(size)?;
    let expr = match impl_ {
        Impl::Operator => structured,
        Impl::Dense => {
            if size.saturating_mul(size) > cfg.dense_cap {
                return Ok(BenchRow::Skipped {
                    op_name: op.name().into(),
                    impl_,
                    size,
                    repeats: cfg.repeats,
                });
            }
            materialize_with_cap(&structured, cfg.dense_cap)?.into()
        }
    };
    let (mean_seconds, std_seconds) = time_forward(&expr, cfg.repeats, cfg.seed)?;
    Ok(BenchRow::Measured(BenchRecord {
        op_name: op.name().into(),
        impl_,
        size,
        repeats: cfg.repeats,
        mean_seconds,
        std_seconds,
    }))
}

/// Writes the CSV. Skipped rows carry `skipped` in both timing columns.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        match row {
            BenchRow::Measured(r) => w.write_record([
                r.op_name.clone(),
                r.impl_.name().into(),
                r.size.to_string(),
                r.repeats.to_string(),
                r.mean_seconds.to_string(),
                r.std_seconds.to_string(),
            ])?,
            BenchRow::Skipped { op_name, impl_, size, repeats } => w.write_record([
                op_name.clone(),
                impl_.name().into(),
                size.to_string(),
                repeats.to_string(),
                "skipped".into(),
                "skipped".into(),
            ])?,
        }
    }
    w.flush().map_err(|e| CliError::io("<bench csv>", e))?;
    Ok(())
}

/// Least-squares slope of `log(mean)` against `log(size)`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|(s, _)| (*s as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `(size, mean)` pairs of the measured rows for one operator and implementation.
pub fn series(rows: &[BenchRow], op: BenchOp, impl_: Impl) -> Vec<(usize, f64)> {
    rows.iter()
        .filter_map(|row| match row {
            BenchRow::Measured(r) if r.op_name == op.name() && r.impl_ == impl_ => Some((r.size, r.mean_seconds)),
            _ => None,
        })
        .collect()
}
