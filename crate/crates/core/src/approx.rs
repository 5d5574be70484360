//! Greedy gate omission under a Toffoli or error budget.
//!
//! Only gates with two or more controls cost Toffoli gates, so only those are
//! candidates. Candidates are omitted in ascending order of
//! `|theta| / (2(|controls| - 1))`. The error of the kept circuit on any basis
//! input is bounded by the sum of `|theta|` over the omitted gates.

use serde::{Deserialize, Serialize};

use crate::circuit::{toffoli_cost, CostReport, RotationCircuit, RotationGate};
use crate::error::{Error, Result};
use crate::exec::{sort_by, Strategy};

/// Key used to order omission candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankKey {
    /// Contribution-to-cost ratio `|theta| / toffoli_cost`.
    #[default]
    Ratio,
    /// Plain `|theta|`.
    Angle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedGate {
    pub gate: RotationGate,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    pub kept: RotationCircuit,
    /// Omitted gates, in omission order.
    pub omitted: Vec<RotationGate>,
    /// Worst-case absolute error introduced by the omission.
    pub bound: f64,
    pub cost: CostReport,
}

pub fn rank_gates(circuit: &RotationCircuit) -> Vec<RankedGate> {
    rank_gates_by(circuit, RankKey::Ratio)
}

/// Omission candidates, cheapest first. Ties go to the gate with more
/// controls, then to the smaller bitmask.
pub fn rank_gates_by(circuit: &RotationCircuit, key: RankKey) -> Vec<RankedGate> {
    let mut ranked: Vec<RankedGate> = circuit
        .gates()
        .iter()
        .filter(|g| g.controls.len() >= 2)
        .map(|&gate| RankedGate { gate, ratio: gate.theta.abs() / toffoli_cost(gate.controls.len()) as f64 })
        .collect();
    let primary = move |r: &RankedGate| match key {
        RankKey::Ratio => r.ratio,
        RankKey::Angle => r.gate.theta.abs(),
    };
    sort_by(Strategy::default(), &mut ranked, |a, b| {
        primary(a)
            .total_cmp(&primary(b))
            .then_with(|| b.gate.controls.len().cmp(&a.gate.controls.len()))
            .then_with(|| a.gate.controls.cmp(&b.gate.controls))
    });
    ranked
}

/// Sum of `|theta|` over `omitted`, accumulated in slice order.
pub fn worst_case_bound(omitted: &[RotationGate]) -> f64 {
    omitted.iter().fold(0.0, |acc, g| acc + g.theta.abs())
}

/// Omits ranked gates until the kept circuit needs at most `budget` Toffoli
/// gates, stopping at the first prefix that fits.
pub fn truncate_to_toffoli_budget(circuit: &RotationCircuit, budget: u64) -> ApproximationResult {
    let mut toffoli = circuit.cost_report().toffoli_count;
    let omitted: Vec<RotationGate> = rank_gates(circuit)
        .into_iter()
        .map(|r| r.gate)
        .take_while(|g| {
            if toffoli <= budget {
                return false;
            }
            if g.theta != 0.0 {
                toffoli -= toffoli_cost(g.controls.len());
            }
            true
        })
        .collect();
    split(circuit, omitted)
}

pub fn truncate_to_error_budget(circuit: &RotationCircuit, eps: f64) -> Result<ApproximationResult> {
    truncate_to_error_budget_by(circuit, eps, RankKey::Ratio)
}

/// Omits ranked gates while the running sum of omitted `|theta|` stays within
/// `eps`, stopping at the first gate that would exceed it.
pub fn truncate_to_error_budget_by(
    circuit: &RotationCircuit,
    eps: f64,
    key: RankKey,
) -> Result<ApproximationResult> {
    if !(eps >= 0.0) {
        return Err(Error::InvalidBudget(format!("error budget must be non-negative, got {eps}")));
    }
    let mut spent = 0.0;
    let omitted: Vec<RotationGate> = rank_gates_by(circuit, key)
        .into_iter()
        .map(|r| r.gate)
        .take_while(|g| {
            let next = spent + g.theta.abs();
            if next <= eps {
                spent = next;
                true
            } else {
                false
            }
        })
        .collect();
    Ok(split(circuit, omitted))
}

fn split(circuit: &RotationCircuit, omitted: Vec<RotationGate>) -> ApproximationResult {
    let mut dropped: Vec<_> = omitted.iter().map(|g| g.controls).collect();
    dropped.sort_unstable();
    let kept_gates: Vec<RotationGate> = circuit
        .gates()
        .iter()
        .copied()
        .filter(|g| dropped.binary_search(&g.controls).is_err())
        .collect();
    let kept = RotationCircuit::from_sorted_unchecked(circuit.register().clone(), kept_gates);
    let cost = kept.cost_report();
    ApproximationResult { bound: worst_case_bound(&omitted), kept, omitted, cost }
}
