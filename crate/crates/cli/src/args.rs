use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "gabor-forge",
    version,
    about = "Finite Gabor frames from CAZAC sequences"
)]
pub struct Cli {
    /// Absolute zero threshold; overrides GABOR_FORGE_TOL.
    #[arg(long, global = true, value_name = "TOL")]
    pub tol_zero: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a sequence.
    Gen(GenArgs),
    /// Check the CAZAC property and the equivalent Hadamard / cyclic-root forms.
    Verify(InputArgs),
    /// Discrete periodic ambiguity function of a sequence.
    Dpaf(InputArgs),
    /// Adjoint of a time-frequency subgroup.
    Adjoint(AdjointArgs),
    /// Decide whether a Gabor system is a tight frame.
    Certify(CertifyArgs),
    /// Gram matrix of a Gabor system (JSON) or its support (CSV).
    Gram(SystemArgs),
    /// Analysis followed by synthesis on a certified tight frame.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Sparsity,
    Gram,
    Bruteforce,
    All,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// chu, p4, wiener, bjorck, bjorck_saffari_sq, milewski or kronecker.
    #[arg(long)]
    pub family: String,

    /// Length (chu, p4, wiener), side length (bjorck_saffari_sq) or the
    /// Milewski expansion factor.
    #[arg(long)]
    pub n: Option<usize>,

    /// Wiener parameter.
    #[arg(long)]
    pub s: Option<i64>,

    /// Björck prime length.
    #[arg(long)]
    pub p: Option<u64>,

    /// Length of the default Milewski base (Chu if odd, P4 if even).
    #[arg(long)]
    pub m: Option<usize>,

    /// Sequence file used as the Milewski base or Björck-Saffari `c`.
    #[arg(long, value_name = "FILE")]
    pub base: Option<PathBuf>,

    /// Björck-Saffari permutation, e.g. `0,2,1`; identity when omitted.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Option<Vec<usize>>,

    /// Kronecker factors.
    #[arg(long, value_name = "FILE")]
    pub u: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub v: Option<PathBuf>,

    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Sequence JSON file.
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    #[command(flatten)]
    pub out: Output,
}

/// Exactly one lattice description.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LatticeArgs {
    /// Product subgroup `a,b,N'` with `a b N' = N` and gcd(a, b) = 1.
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "A,B,N'")]
    pub product: Option<Vec<usize>>,

    /// Cyclic subgroup generated by `k,l`.
    #[arg(long, value_delimiter = ',', num_args = 1, value_name = "K,L")]
    pub cyclic: Option<Vec<usize>>,

    /// Subgroup JSON file.
    #[arg(long, value_name = "FILE")]
    pub explicit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AdjointArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,

    /// Lattice size; required for `--cyclic`.
    #[arg(long)]
    pub n: Option<usize>,

    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(short, long, value_name = "FILE")]
    pub input: PathBuf,

    #[command(flatten)]
    pub lattice: LatticeArgs,

    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    #[arg(long, value_enum, default_value = "sparsity")]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Signal file (sequence JSON); the unit impulse at 0 when omitted.
    #[arg(long, value_name = "FILE")]
    pub x: Option<PathBuf>,
}
