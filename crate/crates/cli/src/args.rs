use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goldbach_core::continuation::QuadratureConfig;

/// Evaluate the explicit formula for Cesàro-Riesz means of Goldbach
/// representation numbers and compare it with the sieve.
#[derive(Parser, Debug)]
#[command(name = "goldbach", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Record wall-clock time per row; without it the column is 0 so that
    /// output is reproducible byte for byte
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Mellin kernel against its closed form
    VerifyKernel(KernelArgs),
    /// Explicit formula against the direct mean, one row per (N, k)
    Compare(CompareArgs),
    /// Compare over a range of N, adding the shortened formulas
    Sweep(SweepArgs),
    /// Laurent data at the trivial zeros
    LaurentTable(LaurentArgs),
    /// Quick end-to-end smoke test
    Selftest(SelftestArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file (stdout if absent)
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-11)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    /// Height of the vertical segment in line integrals
    #[arg(long, default_value_t = 100.0)]
    pub contour_height: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_subdivisions: usize,
    #[arg(long, default_value_t = 1e-14)]
    pub series_tail_tol: f64,
}

impl QuadArgs {
    pub fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            contour_height: self.contour_height,
            max_subdivisions: self.max_subdivisions,
            series_tail_tol: self.series_tail_tol,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct FormulaArgs {
    /// Zero table: one ordinate per line, '#' comments allowed
    #[arg(long, env = "GOLDBACH_ZEROS", default_value = "data/zeros_1000.txt")]
    pub zeros: PathBuf,

    /// Zero sums run over |γ| ≤ T
    #[arg(long = "T", default_value_t = 1000.0)]
    pub t: f64,

    /// Residue series run over ν = 1..M
    #[arg(long = "M", default_value_t = 8)]
    pub m: u32,

    /// Radius of the residue circles
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,

    /// Relative slack added to the tail estimates when judging a row
    #[arg(long, default_value_t = 1e-3)]
    pub rel_guard: f64,

    #[command(flatten)]
    pub quad: QuadArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    /// Values of N (comma separated)
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n: Vec<usize>,

    /// Values of k (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<f64>,

    #[command(flatten)]
    pub formula: FormulaArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long = "Nmin")]
    pub n_min: usize,

    #[arg(long = "Nmax")]
    pub n_max: usize,

    /// `xF` multiplies N by F, `+D` or `D` adds D
    #[arg(long, default_value = "x2")]
    pub step: String,

    /// Values of k (comma separated)
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<f64>,

    #[command(flatten)]
    pub formula: FormulaArgs,
}

#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    /// Abscissa of the vertical line
    #[arg(long, default_value_t = 2.0)]
    pub abscissa: f64,

    /// Height where the line is bent onto horizontal rays
    #[arg(long, default_value_t = 300.0)]
    pub height: f64,

    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct LaurentArgs {
    /// Largest ν
    #[arg(long = "M", default_value_t = 20)]
    pub m: u32,

    /// Values of N for the A_ν(N) columns
    #[arg(long = "N", value_delimiter = ',', default_value = "4,100")]
    pub n: Vec<usize>,

    #[command(flatten)]
    pub quad: QuadArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SelftestArgs {
    /// Zero table; the formula check is skipped if it cannot be read
    #[arg(long, env = "GOLDBACH_ZEROS", default_value = "data/zeros_1000.txt")]
    pub zeros: PathBuf,
}
