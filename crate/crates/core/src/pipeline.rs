//! Compile, approximate and simulate in one pass: the machinery behind the
//! budget sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::approx::{truncate_to_error_budget, truncate_to_toffoli_budget, ApproximationResult};
use crate::circuit::{RegisterSpec, RotationCircuit};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Strategy};
use crate::io::{ApproximationMetadata, SweepRow};
use crate::lut::{compile_lut_with, transform_lut_with, FunctionSpec};
use crate::sim::{error_metrics_against, ErrorReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Budget {
    Toffoli(u64),
    Error(f64),
}

impl Budget {
    pub fn kind(&self) -> &'static str {
        match self {
            Budget::Toffoli(_) => "toffoli",
            Budget::Error(_) => "error",
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Budget::Toffoli(t) => t as f64,
            Budget::Error(e) => e,
        }
    }

    pub fn apply(&self, circuit: &RotationCircuit) -> Result<ApproximationResult> {
        match *self {
            Budget::Toffoli(t) => Ok(truncate_to_toffoli_budget(circuit, t)),
            Budget::Error(e) => truncate_to_error_budget(circuit, e),
        }
    }

    pub fn metadata(&self, result: &ApproximationResult) -> ApproximationMetadata {
        ApproximationMetadata {
            budget_kind: self.kind().to_string(),
            budget: self.value(),
            bound: result.bound,
            omitted: result.omitted.len(),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Toffoli(t) => write!(f, "{t} toffoli"),
            Budget::Error(e) => write!(f, "{e:e} error"),
        }
    }
}

/// One sweep cell with everything that produced it.
#[derive(Debug, Clone)]
pub struct SweepCell {
    pub budget: Budget,
    pub approximation: ApproximationResult,
    pub report: ErrorReport,
}

/// Compiles `f` on `register` once, then approximates and simulates it for
/// every budget. Cells come back in the order of `budgets`.
pub fn sweep_register(
    f: &FunctionSpec,
    register: &RegisterSpec,
    budgets: &[Budget],
    strategy: Strategy,
) -> Result<Vec<SweepCell>> {
    let stage = |budget: String| {
        let n = register.n();
        move |source: Error| Error::Stage { n, budget: budget.clone(), source: Box::new(source) }
    };
    let table = compile_lut_with(f, register, strategy).map_err(stage("compile".into()))?;
    let exact = transform_lut_with(&table, strategy);
    map_indexed(strategy, budgets.len(), |i| {
        let budget = budgets[i];
        let approximation = budget.apply(&exact).map_err(stage(budget.to_string()))?;
        let report = error_metrics_against(&approximation.kept, &table, Strategy::Sequential)
            .map_err(stage(budget.to_string()))?;
        Ok(SweepCell { budget, approximation, report })
    })
    .into_iter()
    .collect()
}

/// CSV rows for every `(register, budget)` pair.
pub fn sweep(
    f: &FunctionSpec,
    registers: &[RegisterSpec],
    budgets: &[Budget],
    strategy: Strategy,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(registers.len() * budgets.len());
    for register in registers {
        for cell in sweep_register(f, register, budgets, strategy)? {
            rows.push(SweepRow {
                function: f.name(),
                n: register.n(),
                budget: cell.budget.value(),
                toffoli: cell.approximation.cost.toffoli_count,
                ancilla: cell.approximation.cost.ancilla_count,
                gate_count: cell.approximation.cost.gate_count,
                bound: cell.approximation.bound,
                max_error: cell.report.max_error,
                avg_error: cell.report.avg_error,
            });
        }
    }
    Ok(rows)
}
