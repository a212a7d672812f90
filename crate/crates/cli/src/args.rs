use clap::{Args, Parser, Subcommand, ValueEnum};
use freeclt::analytic::{Complex64, Grid, Polynomial};
use freeclt::{wire, Flavor};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "freeclt", version, about = "Linearized classical and free central limit operators")]
pub struct Cli {
    /// Write the run manifest to this file instead of stderr.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count partitions with one block of size n and k pairs.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Convert between moments and cumulants.
    Transform(TransformArgs),
    /// Central limit iteration, linearization matrix and its eigenvectors.
    #[command(subcommand)]
    Clt(CltCmd),
    /// Moments and sampled density of an eigenfunction.
    Eigenfn(EigenfnArgs),
    /// Cauchy-transform numerics.
    #[command(subcommand)]
    Analytic(AnalyticCmd),
    /// Run the exact identity checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FlavorArg {
    Classical,
    Free,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Classical => Flavor::Classical,
            FlavorArg::Free => Flavor::Free,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum PartitionsCmd {
    /// Print the count as a decimal integer.
    Count(CountArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    /// Count by brute-force enumeration instead of the closed form.
    #[arg(long)]
    pub oracle: bool,
    /// Largest ground set the enumeration may visit.
    #[arg(long, env = "FREECLT_MAX_GROUND_SIZE", default_value_t = freeclt::partitions::DEFAULT_MAX_GROUND_SIZE)]
    pub max_ground_size: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    /// moments to cumulants
    M2c,
    /// cumulants to moments
    C2m,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long, value_enum)]
    pub direction: Direction,
    /// Sequence JSON file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum CltCmd {
    /// Iterate the central limit operator from a moment sequence.
    Iterate(IterateArgs),
    /// The lower-triangular linearization matrix.
    Matrix(MatrixArgs),
    /// Check every column against its eigenvalue exactly.
    Eigencheck(EigencheckArgs),
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub size: usize,
    /// Zero-padded CSV rows instead of JSON.
    #[arg(long)]
    pub csv: bool,
    #[arg(long, default_value_t = freeclt::clt::DEFAULT_MAX_MATRIX_SIZE)]
    pub max_size: usize,
}

#[derive(Debug, Args)]
pub struct EigencheckArgs {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = freeclt::clt::DEFAULT_MAX_MATRIX_SIZE)]
    pub max_size: usize,
}

#[derive(Debug, Args)]
pub struct EigenfnArgs {
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub n: usize,
    /// Number of moments to report.
    #[arg(long, default_value_t = 32)]
    pub orders: usize,
    /// Sample the density at this many points.
    #[arg(long)]
    pub density_samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum AnalyticCmd {
    /// Density of the free convolution of two measures, as CSV.
    Freeconv(FreeconvArgs),
    /// Residual of the transport equation for a polynomial perturbation.
    Pdecheck(PdecheckArgs),
    /// Boundary-value density of an eigenfunction, as CSV.
    Eigden(EigdenArgs),
}

fn grid(s: &str) -> Result<Grid, String> {
    wire::parse_grid(s).map_err(|e| e.to_string())
}

fn complex(s: &str) -> Result<Complex64, String> {
    wire::parse_complex(s).map_err(|e| e.to_string())
}

fn polynomial(s: &str) -> Result<Polynomial, String> {
    wire::parse_polynomial(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct FreeconvArgs {
    /// Measure descriptor JSON file.
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// `lo:hi:n`
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Debug, Args)]
pub struct PdecheckArgs {
    /// `poly:c0,c1,...`
    #[arg(long, value_parser = polynomial, allow_hyphen_values = true)]
    pub psi: Polynomial,
    /// `re,im` with im > 0
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub z: Complex64,
    /// Measure descriptor JSON file; the standard semicircle by default.
    #[arg(long)]
    pub nu: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EigdenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub y: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Seed for the randomized round-trip checks.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}
