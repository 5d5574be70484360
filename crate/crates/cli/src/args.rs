use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rotcc", version, about = "Compile functions into multi-controlled rotation circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a polynomial exactly by enumerating control tuples.
    CompilePoly(CompilePolyArgs),
    /// Tabulate a function and transform the table into a circuit.
    CompileLut(CompileLutArgs),
    /// Drop gates from a circuit file until a budget is met.
    Approximate(ApproximateArgs),
    /// Measure a circuit's error against a target function.
    Simulate(SimulateArgs),
    /// Compile, approximate and simulate over grids of sizes and budgets.
    Sweep(SweepArgs),
}

/// Argument register encoding.
#[derive(Debug, Args)]
pub struct RegisterArgs {
    /// Number of argument qubits (default 8).
    #[arg(long)]
    pub n: Option<usize>,
    /// Half-open two's-complement range `-a:a`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "weights")]
    pub range: Option<String>,
    /// Explicit per-qubit weights, least significant first in index order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<f64>>,
}

impl RegisterArgs {
    pub fn is_explicit(&self) -> bool {
        self.n.is_some() || self.range.is_some() || self.weights.is_some()
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Print a JSON summary on stdout instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the circuit document to this path.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompilePolyArgs {
    /// Coefficients a0,a1,...,ad.
    #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<f64>,
    #[command(flatten)]
    pub register: RegisterArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Reject,
    Zero,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// arcsin, asin-recip, sin, exp, pow:<d>, poly:<a0,a1,...> or expr:<expression in x>.
    #[arg(long = "fn", value_name = "FUNCTION", allow_hyphen_values = true)]
    pub function: Option<String>,
    /// Handling of inputs where the function is undefined.
    #[arg(long, value_enum, default_value = "zero")]
    pub policy: PolicyArg,
}

#[derive(Debug, Args)]
pub struct CompileLutArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    #[command(flatten)]
    pub register: RegisterArgs,
    /// Drop gates whose angle magnitude is at most this value.
    #[arg(long)]
    pub zero_tol: Option<f64>,
    /// Also write the dense table of angles to this path.
    #[arg(long)]
    pub raw_table: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BudgetKind {
    Toffoli,
    Error,
}

#[derive(Debug, Args)]
pub struct ApproximateArgs {
    /// Circuit document to approximate.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Toffoli count or error allowance, depending on --budget-kind.
    #[arg(long)]
    pub budget: String,
    #[arg(long, value_enum, default_value = "toffoli")]
    pub budget_kind: BudgetKind,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Taylor,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit document to simulate.
    #[arg(long, short, required_unless_present = "baseline")]
    pub input: Option<PathBuf>,
    /// Target function; defaults to the source recorded in the circuit.
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Expected register; must match the circuit when given.
    #[command(flatten)]
    pub register: RegisterArgs,
    /// Report a reference approximation on the register instead of a circuit.
    #[arg(long, value_enum)]
    pub baseline: Option<Baseline>,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Register sizes.
    #[arg(long, value_delimiter = ',', default_value = "8")]
    pub n: Vec<usize>,
    /// Half-open two's-complement range `-a:a`.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Budgets, one row per size and budget.
    #[arg(long, required = true, value_delimiter = ',')]
    pub budgets: Vec<String>,
    #[arg(long, value_enum, default_value = "toffoli")]
    pub budget_kind: BudgetKind,
    /// Print the rows as JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    /// Write the CSV table to this path instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
