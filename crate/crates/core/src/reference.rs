//! Slow reference implementations used to certify the fast kernels.
//!
//! Compiled for unit tests and with the `reference` feature.

use crate::circuit::{ControlSet, RotationCircuit};

/// Lookup-table correction by cardinality-ordered subtraction: for each
/// level `i`, every gate with `i` controls is subtracted from every proper
/// superset. `O(n 4^n)`.
pub fn literal_lut_transform(angles: &[f64]) -> Vec<f64> {
    assert!(angles.len().is_power_of_two());
    let n = angles.len().trailing_zeros();
    let mut circuit = angles.to_vec();
    for level in 0..n {
        for s1 in 0..angles.len() as u32 {
            if s1.count_ones() != level {
                continue;
            }
            for s2 in 0..angles.len() as u32 {
                if s2.count_ones() > level && s1 & !s2 == 0 {
                    circuit[s2 as usize] -= circuit[s1 as usize];
                }
            }
        }
    }
    circuit
}

/// Accumulated angle on every basis input, one input at a time.
pub fn brute_force_evaluate_all(circuit: &RotationCircuit) -> Vec<f64> {
    (0..circuit.register().size() as u32)
        .map(|m| {
            let input = ControlSet::new(m);
            circuit
                .gates()
                .iter()
                .filter(|g| g.controls.is_subset_of(input))
                .fold(0.0, |acc, g| acc + g.theta)
        })
        .collect()
}
