//! `qwigner`: command-line front end for `qwigner-core`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwigner_core::random::DEFAULT_SEED;
use qwigner_core::Tolerances;

/// Quasi-probability distributions for tuples of Hermitian matrices.
///
/// Every subcommand reads a tuple (`--input` JSON or `--example` name),
/// runs one computation and prints CSV or a TSV check report. Exit status is
/// 0 on success, 1 when a check fails or the input is rejected, 2 on usage
/// errors.
#[derive(Debug, Parser)]
#[command(name = "qwigner", version)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Absolute tolerance of the Hermiticity check on input matrices.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub hermiticity_tol: f64,

    /// Absolute tolerance of the unit-trace check on the state.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub trace_tol: f64,

    /// Smallest eigenvalue of the state allowed below zero.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub psd_tol: f64,

    /// Relative gap below which eigenvalues are grouped into one projection.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub degeneracy_rel: f64,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            hermiticity: self.hermiticity_tol,
            trace: self.trace_tol,
            psd: self.psd_tol,
            degeneracy_rel: self.degeneracy_rel,
            ..Tolerances::default()
        }
    }
}

/// Where the tuple and state come from.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// JSON file `{"n", "d", "operators", "state"?}` with `[re, im]` entries.
    #[arg(long, conflicts_with = "example")]
    pub input: Option<PathBuf>,

    /// Name of a built-in example (see `example list`).
    #[arg(long)]
    pub example: Option<String>,
}

/// Grid geometry shared by the grid-based subcommands.
#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Regularization parameter: Gaussian smoothing of variance 2ε per axis
    /// (exponential route: damping rate).
    #[arg(long)]
    pub epsilon: Option<f64>,

    /// Box `[lo, hi]` on every axis (default: fitted to the operator ranges).
    #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub bounds: Option<Vec<f64>>,

    /// Samples per axis (power of two).
    #[arg(long, default_value_t = 128)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// FFT of the Gaussian-damped characteristic function.
    Gaussian,
    /// Direction integral with exponential damping (n ≤ 2).
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Residual {
    Gpoly,
    Heart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Charfn,
    Moments,
    Geometry,
    Grid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a tuple and state: Hermiticity, unit trace, positivity;
    /// report n, d, commutativity and operator ranges.
    Validate(Source),

    /// Evaluate the characteristic function tr ρ e^{iξ·A} at one point,
    /// optionally along the ray tξ.
    Charfn {
        #[command(flatten)]
        source: Source,
        /// Dual point ξ.
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
        xi: Vec<f64>,
        /// Evaluate at tξ for these t instead of ξ alone.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        ray: Option<Vec<f64>>,
    },

    /// Compute the regularized distribution on a grid; write CSV and a PGM
    /// image (2-D grids, or the middle slice of 3-D grids).
    Wigner {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Route::Gaussian)]
        route: Route,
        /// Number of directions of the exponential route.
        #[arg(long, default_value_t = 720)]
        directions: usize,
        /// CSV output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// PGM output, with a `.meta` sidecar holding the scaling.
        #[arg(long)]
        image: Option<PathBuf>,
    },

    /// Marginal of the grid along a direction, compared (L¹) with the
    /// smeared spectral distribution of u·A in ρ.
    Marginal {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridArgs,
        /// Direction u (defaults to the first axis).
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        direction: Option<Vec<f64>>,
        /// Largest accepted L¹ distance.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        /// CSV output `t,grid,spectral`.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Boundary of the joint numerical range: support values and the
    /// expectation tuples of top eigenvectors over sampled directions.
    Jnr {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 360)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Singular support: expectation tuples of nondegenerate eigenvectors
    /// of ξ·A, optionally checked against a known defining polynomial.
    Sing {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, value_enum)]
        residual: Option<Residual>,
        /// Largest accepted polynomial residual.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Point cloud CSV (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Eigenvalue curves of A_1 cos t + A_2 sin t followed by continuity,
    /// with the reconstruction of singular points from (c, ċ).
    Curves {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 720)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Nearly commuting pairs: ellipses of the 2×2 compressions and the
    /// one-sided Hausdorff distance from the singular support to them.
    Ellipses {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2000)]
        resolution: usize,
        /// Largest accepted Hausdorff distance.
        #[arg(long, default_value_t = 0.15)]
        tol: f64,
    },

    /// Weyl-ordered moments: multinomial identity, commutator orthogonality
    /// (pairs) and, with --index, the moment matrix itself.
    Moments {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        degree: u32,
        /// Multi-index r of a moment to print.
        #[arg(long, num_args = 1..)]
        index: Option<Vec<u32>>,
    },

    /// Informational completeness: real dimension of the span of Weyl
    /// moments and, for pairs, the trace identity for commutator terms.
    Infocomp {
        #[command(flatten)]
        source: Source,
        /// Expected span dimension (checked when given).
        #[arg(long)]
        expect: Option<usize>,
    },

    /// Completeness of normally ordered moments for a pair: overlaps of the
    /// eigenbases of A_1 and A_2.
    NormalComplete {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },

    /// Mixed-moment positivity for seeded positive semidefinite pairs and the
    /// three-projection counterexample.
    Bmv {
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Largest total order n + m.
        #[arg(long, default_value_t = 10)]
        max_order: u32,
    },

    /// Dihedral covariance: twirl rank, covariance residual of the multiplet
    /// and, optionally, the grid of a rotated state against the rotated grid.
    Symmetry {
        #[arg(long, default_value_t = 5)]
        p: usize,
        /// Also compare grids on this many samples per axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Regularization of the grid comparison.
        #[arg(long)]
        epsilon: Option<f64>,
    },

    /// Built-in examples.
    Example {
        #[command(subcommand)]
        action: ExampleAction,
    },

    /// Run the structural invariant suite and print a TSV report.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Tuple source; the whole catalog when absent.
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleAction {
    /// List example names with a short description.
    List,
    /// Print an example as tuple JSON.
    Dump { name: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
