//! Registers, control sets, rotation circuits and their cost model.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the argument register size.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Absolute ceiling, even with the environment override: masks are `u32` and
/// dense tables hold `2^n` doubles.
pub const HARD_MAX_QUBITS: usize = 30;

/// Environment variable that raises (or lowers) the register size guard.
pub const MAX_QUBITS_ENV: &str = "ROTCC_MAX_N";

/// The register size guard currently in effect.
pub fn max_qubits() -> usize {
    std::env::var(MAX_QUBITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.clamp(1, HARD_MAX_QUBITS))
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

/// Fixed-point binary encoding of the rotation argument.
///
/// Qubit `i` contributes `weights[i]` to the encoded value when it is `|1⟩`.
/// Weights need not be equidistant powers of two.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterSpec {
    weights: Vec<f64>,
    label: String,
}

impl RegisterSpec {
    pub fn new(weights: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        let n = weights.len();
        let limit = max_qubits();
        if n == 0 {
            return Err(Error::InvalidRegister("register has no qubits".into()));
        }
        if n > limit {
            return Err(Error::QubitLimit { n, limit });
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_finite() || **w == 0.0) {
            return Err(Error::InvalidRegister(format!(
                "weight {i} is {w}; weights must be finite and nonzero"
            )));
        }
        Ok(Self { weights, label: label.into() })
    }

    /// Two's-complement register representing `2^n` equidistant values in
    /// `[-half_range, half_range)`: weights `[-a, a/2, a/4, ...]`.
    pub fn twos_complement(n: usize, half_range: f64) -> Result<Self> {
        if !(half_range.is_finite() && half_range > 0.0) {
            return Err(Error::InvalidRegister(format!(
                "half range must be positive and finite, got {half_range}"
            )));
        }
        let weights = (0..n)
            .map(|i| {
                let w = half_range * (-(i as f64)).exp2();
                if i == 0 {
                    -w
                } else {
                    w
                }
            })
            .collect();
        Self::new(weights, format!("twos-complement[-{half_range},{half_range})"))
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Number of quasi-classical inputs, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Encoded value of a basis input: the sum of the weights of its set bits,
    /// accumulated in ascending qubit order.
    pub fn value_of(&self, mask: ControlSet) -> f64 {
        mask.indices().fold(0.0, |acc, i| acc + self.weights[i])
    }

    pub fn check_mask(&self, mask: ControlSet) -> Result<()> {
        if (mask.bits() as u64) >> self.n() != 0 {
            return Err(Error::InvalidMask { mask: mask.bits(), n: self.n() });
        }
        Ok(())
    }

    /// True when both registers encode the same values (labels are ignored).
    pub fn same_encoding(&self, other: &RegisterSpec) -> bool {
        self.weights.len() == other.weights.len()
            && self.weights.iter().zip(&other.weights).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

/// Set of control qubits, stored as a bitmask (bit `i` = qubit `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ControlSet(u32);

impl ControlSet {
    pub const EMPTY: ControlSet = ControlSet(0);

    pub const fn new(mask: u32) -> Self {
        ControlSet(mask)
    }

    /// Panics if an index does not fit in a 32-bit mask.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        ControlSet(indices.into_iter().fold(0u32, |m, i| {
            assert!(i < 32, "qubit index {i} does not fit in a control mask");
            m | (1 << i)
        }))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, qubit: usize) -> bool {
        qubit < 32 && self.0 & (1 << qubit) != 0
    }

    pub fn is_subset_of(self, other: ControlSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ControlSet) -> ControlSet {
        ControlSet(self.0 | other.0)
    }

    /// Qubit indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Display for ControlSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A rotation on the target qubit conditioned on every qubit in `controls`
/// being `|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationGate {
    pub controls: ControlSet,
    pub theta: f64,
}

impl RotationGate {
    pub fn new(controls: ControlSet, theta: f64) -> Self {
        Self { controls, theta }
    }
}

/// Toffoli gates needed by the ancilla-ladder decomposition of a `k`-fold
/// controlled rotation: `2(k-1)` for `k >= 2`, nothing otherwise.
pub fn toffoli_cost(k: usize) -> u64 {
    if k >= 2 {
        2 * (k as u64 - 1)
    } else {
        0
    }
}

/// Resource summary of a circuit. Zero-angle gates are not counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CostReport {
    pub gate_count: usize,
    pub toffoli_count: u64,
    pub ancilla_count: usize,
    pub max_controls: usize,
}

/// Subset-firing rotation circuit: on basis input `m` the target is rotated by
/// the sum of every gate whose control set is a subset of `m`.
///
/// Gates are unique per control set and kept in ascending bitmask order.
/// Zero-angle gates may be present until [`RotationCircuit::canonicalize`]
/// removes them.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationCircuit {
    register: RegisterSpec,
    gates: Vec<RotationGate>,
}

impl RotationCircuit {
    pub fn empty(register: RegisterSpec) -> Self {
        Self { register, gates: Vec::new() }
    }

    /// Builds a circuit from a gate multiset. Gates sharing a control set are
    /// merged by adding their angles in input order; zero angles are kept.
    pub fn from_gates<I>(register: RegisterSpec, gates: I) -> Result<Self>
    where
        I: IntoIterator<Item = RotationGate>,
    {
        let mut gates: Vec<RotationGate> = gates.into_iter().collect();
        for g in &gates {
            register.check_mask(g.controls)?;
            if !g.theta.is_finite() {
                return Err(Error::NonFiniteAngle { mask: g.controls.bits(), theta: g.theta });
            }
        }
        // stable: equal keys keep input order, so merging is reproducible
        gates.sort_by_key(|g| g.controls);
        let mut merged: Vec<RotationGate> = Vec::with_capacity(gates.len());
        for g in gates {
            match merged.last_mut() {
                Some(last) if last.controls == g.controls => last.theta += g.theta,
                _ => merged.push(g),
            }
        }
        if let Some(g) = merged.iter().find(|g| !g.theta.is_finite()) {
            return Err(Error::NonFiniteAngle { mask: g.controls.bits(), theta: g.theta });
        }
        Ok(Self { register, gates: merged })
    }

    /// One gate per mask, `angles[m]` on control set `m`. `angles` must have
    /// `2^n` entries.
    pub fn from_dense(register: RegisterSpec, angles: &[f64]) -> Result<Self> {
        if angles.len() != register.size() {
            return Err(Error::RegisterMismatch(format!(
                "{} angles for a register with {} inputs",
                angles.len(),
                register.size()
            )));
        }
        let mut gates = Vec::with_capacity(angles.len());
        for (m, &theta) in angles.iter().enumerate() {
            if !theta.is_finite() {
                return Err(Error::NonFiniteAngle { mask: m as u32, theta });
            }
            gates.push(RotationGate::new(ControlSet::new(m as u32), theta));
        }
        Ok(Self { register, gates })
    }

    pub fn register(&self) -> &RegisterSpec {
        &self.register
    }

    /// Gates in ascending bitmask order.
    pub fn gates(&self) -> &[RotationGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn angle(&self, controls: ControlSet) -> Option<f64> {
        self.gates
            .binary_search_by_key(&controls, |g| g.controls)
            .ok()
            .map(|i| self.gates[i].theta)
    }

    /// Drops every gate with `|theta| <= zero_tol`. Idempotent.
    pub fn canonicalize(&self, zero_tol: f64) -> RotationCircuit {
        RotationCircuit {
            register: self.register.clone(),
            gates: self.gates.iter().copied().filter(|g| g.theta.abs() > zero_tol).collect(),
        }
    }

    /// Angles scattered into a dense `2^n` table (missing gates are 0).
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.register.size()];
        for g in &self.gates {
            dense[g.controls.bits() as usize] = g.theta;
        }
        dense
    }

    pub fn cost_report(&self) -> CostReport {
        let mut report = CostReport::default();
        for g in self.gates.iter().filter(|g| g.theta != 0.0) {
            let k = g.controls.len();
            report.gate_count += 1;
            report.toffoli_count += toffoli_cost(k);
            report.max_controls = report.max_controls.max(k);
        }
        report.ancilla_count = report.max_controls.saturating_sub(1);
        report
    }

    pub(crate) fn from_sorted_unchecked(register: RegisterSpec, gates: Vec<RotationGate>) -> Self {
        debug_assert!(gates.windows(2).all(|w| w[0].controls < w[1].controls));
        Self { register, gates }
    }
}

/// Dense exact-match lookup table: on basis input `m` only `angles[m]` fires.
#[derive(Debug, Clone, PartialEq)]
pub struct LookupTable {
    pub register: RegisterSpec,
    pub angles: Vec<f64>,
    /// Inputs where the tabulated function is undefined; their angle is 0.
    pub excluded: Vec<ControlSet>,
}
