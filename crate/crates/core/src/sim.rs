//! Quasi-classical simulation: every argument qubit is `|0⟩` or `|1⟩`, so a
//! circuit reduces to an angle accumulator.

use serde::{Deserialize, Serialize};

use crate::circuit::{ControlSet, LookupTable, RegisterSpec, RotationCircuit};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, subset_butterfly, Strategy};
use crate::lut::{compile_lut_with, FunctionSpec};

/// Accumulated angle on one basis input: the sum of every gate whose controls
/// are a subset of `input`, in ascending bitmask order.
pub fn evaluate(circuit: &RotationCircuit, input: ControlSet) -> f64 {
    circuit
        .gates()
        .iter()
        .filter(|g| g.controls.is_subset_of(input))
        .fold(0.0, |acc, g| acc + g.theta)
}

pub fn evaluate_all(circuit: &RotationCircuit) -> Vec<f64> {
    evaluate_all_with(circuit, Strategy::default())
}

/// Accumulated angle on all `2^n` inputs via the subset-sum transform.
pub fn evaluate_all_with(circuit: &RotationCircuit, strategy: Strategy) -> Vec<f64> {
    let mut table = circuit.to_dense();
    zeta_in_place(&mut table, strategy);
    table
}

/// Accumulated angle on all `2^n` inputs, each computed by [`evaluate`]
/// independently. `O(gates · 2^n)`; this is the plain accumulator model,
/// including its rounding behaviour.
pub fn evaluate_all_accumulated(circuit: &RotationCircuit, strategy: Strategy) -> Vec<f64> {
    map_indexed(strategy, circuit.register().size(), |m| evaluate(circuit, ControlSet::new(m as u32)))
}

/// `a[s] = Σ_{t ⊆ s} a[t]`, in place. Inverse of
/// [`crate::lut::mobius_in_place`].
pub fn zeta_in_place(table: &mut [f64], strategy: Strategy) {
    subset_butterfly(strategy, table, |hi, lo| *hi += lo);
}

/// Accuracy of a circuit against its target over every basis input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub max_error: f64,
    pub avg_error: f64,
    pub argmax_mask: ControlSet,
    /// Register value at `argmax_mask`.
    pub argmax_value: f64,
    pub excluded_masks: Vec<ControlSet>,
    pub samples: usize,
}

pub fn error_metrics(circuit: &RotationCircuit, f: &FunctionSpec) -> Result<ErrorReport> {
    error_metrics_with(circuit, f, Strategy::default())
}

pub fn error_metrics_with(circuit: &RotationCircuit, f: &FunctionSpec, strategy: Strategy) -> Result<ErrorReport> {
    let target = compile_lut_with(f, circuit.register(), strategy)?;
    error_metrics_against(circuit, &target, strategy)
}

/// Largest and mean absolute error against a tabulated target, skipping the
/// table's excluded inputs. The first input attaining the maximum is reported.
pub fn error_metrics_against(
    circuit: &RotationCircuit,
    target: &LookupTable,
    strategy: Strategy,
) -> Result<ErrorReport> {
    if !circuit.register().same_encoding(&target.register) {
        return Err(Error::RegisterMismatch(
            "circuit and target table encode different register values".into(),
        ));
    }
    let simulated = evaluate_all_with(circuit, strategy);
    let mut excluded = target.excluded.iter().map(|m| m.bits() as usize).peekable();
    let mut max_error = -1.0f64;
    let mut argmax = 0usize;
    let mut sum = 0.0;
    let mut samples = 0usize;
    for (m, (&want, &got)) in target.angles.iter().zip(&simulated).enumerate() {
        if excluded.peek() == Some(&m) {
            excluded.next();
            continue;
        }
        let err = (want - got).abs();
        if err > max_error {
            max_error = err;
            argmax = m;
        }
        sum += err;
        samples += 1;
    }
    if samples == 0 {
        return Err(Error::AllExcluded);
    }
    let argmax_mask = ControlSet::new(argmax as u32);
    Ok(ErrorReport {
        max_error,
        avg_error: sum / samples as f64,
        argmax_mask,
        argmax_value: circuit.register().value_of(argmax_mask),
        excluded_masks: target.excluded.clone(),
        samples,
    })
}

/// Largest difference between two circuits over all basis inputs.
pub fn max_deviation(a: &RotationCircuit, b: &RotationCircuit) -> Result<f64> {
    if !a.register().same_encoding(b.register()) {
        return Err(Error::RegisterMismatch("circuits act on different registers".into()));
    }
    let (ea, eb) = (evaluate_all(a), evaluate_all(b));
    Ok(ea.iter().zip(&eb).fold(0.0, |m, (x, y)| m.max((x - y).abs())))
}

/// Worst error of the zero-cost approximation `arcsin(x) ≈ x` over the
/// register's values.
pub fn taylor_baseline(register: &RegisterSpec) -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 0..register.size() as u32 {
        let x = register.value_of(ControlSet::new(m));
        if x.abs() > 1.0 {
            return Err(Error::Domain { function: "arcsin".into(), x });
        }
        worst = worst.max((x.asin() - x).abs());
    }
    Ok(worst)
}

/// Amplitudes `(cos(θ/2), sin(θ/2))` of `R_y(θ)|0⟩`.
pub fn rotation_amplitudes(theta: f64) -> (f64, f64) {
    let (s, c) = (theta / 2.0).sin_cos();
    (c, s)
}
