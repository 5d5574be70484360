//! Polynomial rotation circuits by exhaustive control-tuple enumeration.
//!
//! Expanding `a_k x^k` over the bits of `x` gives one term per tuple
//! `(i_1, ..., i_k)` of qubit indices, with angle `a_k w_{i_1} ... w_{i_k}`
//! and controls `{i_1, ..., i_k}`. Since every qubit is idempotent on basis
//! inputs, terms are merged per control *set*, so no gate ever has more than
//! `k` controls.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{ControlSet, RegisterSpec, RotationCircuit, RotationGate};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Strategy};

/// Upper bound on `n^d`, the number of control tuples visited.
pub const ENUMERATION_LIMIT: u64 = 1_000_000_000;

/// Partial accumulators switch from dense tables to hash maps above this size.
const DENSE_ACCUMULATOR_MAX_QUBITS: usize = 16;

/// Real polynomial `a_0 + a_1 x + ... + a_d x^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped so that `a_d != 0` unless `d = 0`.
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if let Some((index, &value)) = coefficients.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index, value });
        }
        while coefficients.len() > 1 && coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        Ok(Self { coefficients })
    }

    /// `x^d`.
    pub fn monomial(degree: usize) -> Self {
        let mut coefficients = vec![0.0; degree + 1];
        coefficients[degree] = 1.0;
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }
}

pub fn compile_polynomial(p: &Polynomial, register: &RegisterSpec) -> Result<RotationCircuit> {
    compile_polynomial_with(p, register, Strategy::default())
}

/// Compiles `p` into a subset-firing circuit, dropping gates whose angle
/// accumulates to exactly zero.
///
/// Tuples of each degree are split by their first index; the partial sums
/// are merged in ascending degree, then ascending first index, so the result
/// does not depend on `strategy`.
pub fn compile_polynomial_with(
    p: &Polynomial,
    register: &RegisterSpec,
    strategy: Strategy,
) -> Result<RotationCircuit> {
    let n = register.n();
    let d = p.degree();
    if (n as u128).saturating_pow(d as u32) > ENUMERATION_LIMIT as u128 {
        return Err(Error::EnumerationGuard { n, degree: d, limit: ENUMERATION_LIMIT });
    }

    let weights = register.weights();
    let mut total = Accumulator::new(n);
    for (k, &a_k) in p.coefficients().iter().enumerate() {
        if a_k == 0.0 {
            continue;
        }
        if k == 0 {
            total.add(0, a_k);
            continue;
        }
        let partials = map_indexed(strategy, n, |first| {
            let mut acc = Accumulator::new(n);
            enumerate_tuples(weights, k, first, a_k, &mut acc);
            acc
        });
        for partial in partials {
            total.absorb(partial);
        }
    }

    let gates = total.into_sorted_nonzero();
    Ok(RotationCircuit::from_sorted_unchecked(register.clone(), gates))
}

/// Visits every `k`-tuple starting with `first` in lexicographic order and
/// accumulates `a_k * w[i_1] * ... * w[i_k]` (multiplied left to right) on the
/// tuple's control set.
fn enumerate_tuples(weights: &[f64], k: usize, first: usize, a_k: f64, acc: &mut Accumulator) {
    let n = weights.len();
    let mut idx = vec![0usize; k];
    let mut prod = vec![0.0f64; k + 1];
    let mut mask = vec![0u32; k + 1];
    idx[0] = first;
    prod[0] = a_k;
    let mut from = 0;
    loop {
        for j in from..k {
            prod[j + 1] = prod[j] * weights[idx[j]];
            mask[j + 1] = mask[j] | (1 << idx[j]);
        }
        acc.add(mask[k], prod[k]);

        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos -= 1;
        }
        from = pos;
    }
}

enum Accumulator {
    Dense(Vec<f64>),
    Sparse(HashMap<u32, f64>),
}

impl Accumulator {
    fn new(n: usize) -> Self {
        if n <= DENSE_ACCUMULATOR_MAX_QUBITS {
            Accumulator::Dense(vec![0.0; 1 << n])
        } else {
            Accumulator::Sparse(HashMap::new())
        }
    }

    fn add(&mut self, mask: u32, value: f64) {
        match self {
            Accumulator::Dense(v) => v[mask as usize] += value,
            Accumulator::Sparse(m) => *m.entry(mask).or_insert(0.0) += value,
        }
    }

    fn absorb(&mut self, other: Accumulator) {
        match (self, other) {
            (Accumulator::Dense(a), Accumulator::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            (Accumulator::Sparse(a), Accumulator::Sparse(b)) => {
                for (k, v) in b {
                    *a.entry(k).or_insert(0.0) += v;
                }
            }
            _ => unreachable!("accumulators of one compilation share a layout"),
        }
    }

    fn into_sorted_nonzero(self) -> Vec<RotationGate> {
        match self {
            Accumulator::Dense(v) => v
                .into_iter()
                .enumerate()
                .filter(|&(_, t)| t != 0.0)
                .map(|(m, t)| RotationGate::new(ControlSet::new(m as u32), t))
                .collect(),
            Accumulator::Sparse(map) => {
                let mut gates: Vec<RotationGate> = map
                    .into_iter()
                    .filter(|&(_, t)| t != 0.0)
                    .map(|(m, t)| RotationGate::new(ControlSet::new(m), t))
                    .collect();
                gates.sort_by_key(|g| g.controls);
                gates
            }
        }
    }
}

/// Circuit dimensions of a generic degree-`d` polynomial on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedCounts {
    pub rotation_gates: u64,
    pub ancilla: u64,
    pub toffoli: u64,
}

/// Closed-form gate, ancilla and Toffoli counts for a fully populated
/// degree-`d` circuit on `n` qubits (`n <= 62`).
pub fn predict_counts(n: usize, d: usize) -> PredictedCounts {
    assert!((1..=62).contains(&n), "register size {n} outside 1..=62");
    let top = n.min(d);
    let n64 = n as u64;
    let rotation_gates = (0..=top as u64).map(|k| binomial(n64, k)).sum();
    let toffoli = (1..=top as u64).map(|k| binomial(n64, k) * 2 * (k - 1)).sum();
    PredictedCounts { rotation_gates, ancilla: (top as u64).saturating_sub(1), toffoli }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
