//! Space-efficient multi-controlled rotation circuits for `R_y(f(x))` on a
//! fixed-point argument register.
//!
//! Circuits come from two compilers: [`poly::compile_polynomial`] expands a
//! polynomial over the register bits, and [`lut::compile_lut`] +
//! [`lut::transform_lut`] turn a lookup table for any function into the same
//! subset-firing form. [`approx`] drops expensive low-value gates under a
//! Toffoli or error budget, [`sim`] measures the resulting accuracy on every
//! basis input, and [`io`] writes circuits as JSON or OpenQASM 3.
//!
//! The data-parallel kernels run on rayon with the default `parallel`
//! feature and sequentially without it; see [`exec::Strategy`].

pub mod approx;
pub mod circuit;
pub mod error;
pub mod exec;
pub mod io;
pub mod lut;
pub mod pipeline;
pub mod poly;
pub mod sim;

#[cfg(any(test, feature = "reference"))]
pub mod reference;

pub use approx::{
    rank_gates, rank_gates_by, truncate_to_error_budget, truncate_to_error_budget_by, truncate_to_toffoli_budget,
    worst_case_bound, ApproximationResult, RankKey, RankedGate,
};
pub use circuit::{
    max_qubits, toffoli_cost, ControlSet, CostReport, LookupTable, RegisterSpec, RotationCircuit, RotationGate,
};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use lut::{compile_lut, transform_lut, FunctionKind, FunctionSpec, UndefinedPolicy};
pub use pipeline::Budget;
pub use poly::{compile_polynomial, predict_counts, Polynomial, PredictedCounts};
pub use sim::{error_metrics, evaluate, evaluate_all, evaluate_all_accumulated, rotation_amplitudes, taylor_baseline, ErrorReport};
