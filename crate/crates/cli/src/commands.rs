use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use log::info;
use serde::Serialize;

use rotcc::io::{export_sweep_csv, parse_circuit, serialize_circuit, ApproximationMetadata};
use rotcc::lut;
use rotcc::pipeline::sweep as run_sweep;
use rotcc::sim::error_metrics_against;
use rotcc::{
    compile_polynomial, taylor_baseline, transform_lut, Budget, CostReport, ErrorReport, FunctionSpec, Polynomial,
    RegisterSpec, RotationCircuit, Strategy, UndefinedPolicy,
};

use crate::args::{
    ApproximateArgs, Baseline, BudgetKind, CompileLutArgs, CompilePolyArgs, FunctionArgs, OutputArgs, PolicyArg,
    RegisterArgs, SimulateArgs, SweepArgs,
};

const DEFAULT_N: usize = 8;
const DEFAULT_RANGE: &str = "-0.5:0.5";

#[derive(Debug)]
pub enum CliError {
    Core(rotcc::Error),
    Config(String),
    Io { path: PathBuf, source: std::io::Error },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<rotcc::Error> for CliError {
    fn from(e: rotcc::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Half range `a` from the shorthand `-a:a`.
fn parse_range(range: &str) -> CliResult<f64> {
    let (lo, hi) = range
        .split_once(':')
        .ok_or_else(|| config(format!("range `{range}` must look like -a:a")))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| config(format!("range bound `{s}` is not a number")));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(hi > 0.0 && lo == -hi) {
        return Err(config(format!("range `{range}` must be symmetric, [-a, a) with a > 0")));
    }
    Ok(hi)
}

fn register(args: &RegisterArgs) -> CliResult<RegisterSpec> {
    if let Some(weights) = &args.weights {
        if args.n.is_some_and(|n| n != weights.len()) {
            return Err(config(format!("--n {} disagrees with {} weights", args.n.unwrap(), weights.len())));
        }
        return Ok(RegisterSpec::new(weights.clone(), "weights")?);
    }
    let half = parse_range(args.range.as_deref().unwrap_or(DEFAULT_RANGE))?;
    Ok(RegisterSpec::twos_complement(args.n.unwrap_or(DEFAULT_N), half)?)
}

fn budget(kind: BudgetKind, value: &str) -> CliResult<Budget> {
    let bad = || config(format!("budget `{value}` is not a valid {kind:?} budget"));
    match kind {
        BudgetKind::Toffoli => value.trim().parse().map(Budget::Toffoli).map_err(|_| bad()),
        BudgetKind::Error => {
            let eps: f64 = value.trim().parse().map_err(|_| bad())?;
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(bad());
            }
            Ok(Budget::Error(eps))
        }
    }
}

fn function(args: &FunctionArgs, fallback: Option<&str>) -> CliResult<FunctionSpec> {
    let source = args
        .function
        .as_deref()
        .or(fallback)
        .ok_or_else(|| config("no target function: pass --fn"))?;
    let policy = match args.policy {
        PolicyArg::Reject => UndefinedPolicy::Reject,
        PolicyArg::Zero => UndefinedPolicy::ZeroAndExclude,
    };
    Ok(source.parse::<FunctionSpec>()?.with_policy(policy))
}

#[derive(Serialize)]
struct CircuitSummary<'a> {
    command: &'a str,
    source_function: String,
    n: usize,
    register: &'a str,
    /// Stored gates, including zero angles.
    gates: usize,
    cost: CostReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    approximation: Option<ApproximationMetadata>,
    #[serde(skip_serializing_if = "Option::is_none")]
    excluded_masks: Option<Vec<u32>>,
}

fn emit_circuit(
    out: &OutputArgs,
    circuit: &RotationCircuit,
    mut summary: CircuitSummary<'_>,
) -> CliResult {
    if let Some(path) = &out.output {
        let text = serialize_circuit(circuit, Some(summary.source_function.clone()), summary.approximation.clone());
        write(path, &text)?;
        info!("wrote {}", path.display());
    }
    summary.gates = circuit.len();
    summary.cost = circuit.cost_report();
    if out.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
        return Ok(());
    }
    let c = &summary.cost;
    println!("function    {}", summary.source_function);
    println!("register    n = {} ({})", summary.n, summary.register);
    println!("gates       {} stored, {} nonzero", summary.gates, c.gate_count);
    println!("toffoli     {}", c.toffoli_count);
    println!("ancilla     {}", c.ancilla_count);
    println!("max_controls {}", c.max_controls);
    if let Some(a) = &summary.approximation {
        println!("budget      {} {}", a.budget, a.budget_kind);
        println!("omitted     {}", a.omitted);
        println!("bound       {:e}", a.bound);
    }
    if let Some(excluded) = &summary.excluded_masks {
        println!("excluded    {}", excluded.len());
    }
    Ok(())
}

pub fn compile_poly(args: CompilePolyArgs) -> CliResult {
    let register = register(&args.register)?;
    let p = Polynomial::new(args.coeffs)?;
    let circuit = compile_polynomial(&p, &register)?;
    let summary = CircuitSummary {
        command: "compile-poly",
        source_function: FunctionSpec::polynomial(p).name(),
        n: register.n(),
        register: register.label(),
        gates: 0,
        cost: CostReport::default(),
        approximation: None,
        excluded_masks: None,
    };
    emit_circuit(&args.out, &circuit, summary)
}

pub fn compile_lut(args: CompileLutArgs) -> CliResult {
    let register = register(&args.register)?;
    let f = function(&args.function, None)?;
    let table = lut::compile_lut(&f, &register)?;
    let mut circuit = transform_lut(&table);
    if let Some(tol) = args.zero_tol {
        if !(tol >= 0.0) {
            return Err(config("--zero-tol must be non-negative"));
        }
        circuit = circuit.canonicalize(tol);
    }
    if let Some(path) = &args.raw_table {
        let dump = serde_json::json!({
            "function": f.name(),
            "register": { "n": register.n(), "weights": register.weights(), "label": register.label() },
            "angles": table.angles,
            "excluded": table.excluded,
        });
        write(path, &format!("{}\n", serde_json::to_string_pretty(&dump).expect("table serializes")))?;
    }
    let summary = CircuitSummary {
        command: "compile-lut",
        source_function: f.name(),
        n: register.n(),
        register: register.label(),
        gates: 0,
        cost: CostReport::default(),
        approximation: None,
        excluded_masks: Some(table.excluded.iter().map(|m| m.bits()).collect()),
    };
    emit_circuit(&args.out, &circuit, summary)
}

pub fn approximate(args: ApproximateArgs) -> CliResult {
    let (circuit, metadata) = parse_circuit(&read(&args.input)?)?;
    let budget = budget(args.budget_kind, &args.budget)?;
    let result = budget.apply(&circuit)?;
    let register = circuit.register();
    let summary = CircuitSummary {
        command: "approximate",
        source_function: metadata.source_function.unwrap_or_default(),
        n: register.n(),
        register: register.label(),
        gates: 0,
        cost: CostReport::default(),
        approximation: Some(budget.metadata(&result)),
        excluded_masks: None,
    };
    emit_circuit(&args.out, &result.kept, summary)
}

#[derive(Serialize)]
struct SimulationSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<String>,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    taylor_max_error: Option<f64>,
}

pub fn simulate(args: SimulateArgs) -> CliResult {
    let mut summary = SimulationSummary { function: None, n: 0, report: None, taylor_max_error: None };
    let mut register = None;
    if let Some(path) = &args.input {
        let (circuit, metadata) = parse_circuit(&read(path)?)?;
        if args.register.is_explicit() {
            let mut requested = RegisterArgs {
                n: args.register.n.or(Some(circuit.register().n())),
                range: args.register.range.clone(),
                weights: args.register.weights.clone(),
            };
            if requested.weights.is_some() && args.register.n.is_none() {
                requested.n = None;
            }
            let expected = self::register(&requested)?;
            if !expected.same_encoding(circuit.register()) {
                return Err(rotcc::Error::RegisterMismatch(format!(
                    "circuit register is {} on {} qubits, requested {} on {} qubits",
                    circuit.register().label(),
                    circuit.register().n(),
                    expected.label(),
                    expected.n()
                ))
                .into());
            }
        }
        let f = function(&args.function, metadata.source_function.as_deref())?;
        let table = lut::compile_lut(&f, circuit.register())?;
        summary.report = Some(error_metrics_against(&circuit, &table, Strategy::default())?);
        summary.function = Some(f.name());
        register = Some(circuit.register().clone());
    }
    let register = match register {
        Some(r) => r,
        None => self::register(&args.register)?,
    };
    summary.n = register.n();
    if args.baseline == Some(Baseline::Taylor) {
        summary.taylor_max_error = Some(taylor_baseline(&register)?);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("report serializes"));
        return Ok(());
    }
    if let Some(r) = &summary.report {
        println!("function    {}", summary.function.as_deref().unwrap_or_default());
        println!("n           {}", summary.n);
        println!("max_error   {:e}", r.max_error);
        println!("avg_error   {:e}", r.avg_error);
        println!("argmax      mask {} value {}", r.argmax_mask, r.argmax_value);
        println!("samples     {}", r.samples);
        println!("excluded    {}", r.excluded_masks.len());
        for m in &r.excluded_masks {
            println!("  excluded mask {m} value {}", register.value_of(*m));
        }
    }
    if let Some(t) = summary.taylor_max_error {
        println!("taylor_max_error {t:e}");
    }
    Ok(())
}

pub fn sweep(args: SweepArgs) -> CliResult {
    let f = function(&args.function, None)?;
    let half = parse_range(args.range.as_deref().unwrap_or(DEFAULT_RANGE))?;
    let registers = args
        .n
        .iter()
        .map(|&n| RegisterSpec::twos_complement(n, half))
        .collect::<rotcc::Result<Vec<_>>>()?;
    let budgets = args
        .budgets
        .iter()
        .map(|b| budget(args.budget_kind, b))
        .collect::<CliResult<Vec<_>>>()?;
    let rows = run_sweep(&f, &registers, &budgets, Strategy::default())?;
    let text = if args.json {
        format!("{}\n", serde_json::to_string_pretty(&rows).expect("rows serialize"))
    } else {
        export_sweep_csv(&rows)
    };
    match &args.output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
