//! Versioned JSON document for rotation circuits.

use serde::{Deserialize, Serialize};

use super::hexfloat;
use crate::circuit::{ControlSet, CostReport, RegisterSpec, RotationCircuit, RotationGate};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub schema_version: u32,
    pub register: RegisterDocument,
    pub gates: Vec<GateDocument>,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterDocument {
    pub n: usize,
    pub weights: Vec<f64>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateDocument {
    /// Strictly increasing qubit indices.
    pub controls: Vec<usize>,
    pub theta: f64,
    /// Bit-exact copy of `theta`; authoritative when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_hex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub source_function: Option<String>,
    #[serde(default)]
    pub approximation: Option<ApproximationMetadata>,
    pub cost: CostReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationMetadata {
    /// `toffoli` or `error`.
    pub budget_kind: String,
    pub budget: f64,
    pub bound: f64,
    #[serde(default)]
    pub omitted: usize,
}

impl CircuitDocument {
    /// Gates are ordered by control count, then by bitmask. The cost entry
    /// is recomputed from the circuit.
    pub fn new(
        circuit: &RotationCircuit,
        source_function: Option<String>,
        approximation: Option<ApproximationMetadata>,
    ) -> Self {
        let mut gates: Vec<RotationGate> = circuit.gates().to_vec();
        gates.sort_by_key(|g| (g.controls.len(), g.controls));
        let register = circuit.register();
        CircuitDocument {
            schema_version: SCHEMA_VERSION,
            register: RegisterDocument {
                n: register.n(),
                weights: register.weights().to_vec(),
                label: register.label().to_string(),
            },
            gates: gates
                .iter()
                .map(|g| GateDocument {
                    controls: g.controls.indices().collect(),
                    theta: g.theta,
                    theta_hex: Some(hexfloat::format(g.theta)),
                })
                .collect(),
            metadata: Metadata { source_function, approximation, cost: circuit.cost_report() },
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("circuit documents always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CircuitDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Document(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn to_circuit(&self) -> Result<RotationCircuit> {
        if self.register.n != self.register.weights.len() {
            return Err(Error::Document(format!(
                "register declares n = {} but lists {} weights",
                self.register.n,
                self.register.weights.len()
            )));
        }
        let register = RegisterSpec::new(self.register.weights.clone(), self.register.label.clone())?;
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            if g.controls.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Document(format!("controls {:?} are not strictly increasing", g.controls)));
            }
            if let Some(&q) = g.controls.iter().find(|&&q| q >= register.n()) {
                return Err(Error::Document(format!("control qubit {q} outside the {}-qubit register", register.n())));
            }
            let theta = match &g.theta_hex {
                Some(hex) => {
                    let exact = hexfloat::parse(hex)
                        .ok_or_else(|| Error::Document(format!("malformed hex float `{hex}`")))?;
                    if exact.to_bits() != g.theta.to_bits() {
                        return Err(Error::Document(format!(
                            "theta {} disagrees with theta_hex {hex}",
                            g.theta
                        )));
                    }
                    exact
                }
                None => g.theta,
            };
            gates.push(RotationGate::new(ControlSet::from_indices(g.controls.iter().copied()), theta));
        }
        let circuit = RotationCircuit::from_gates(register, gates)?;
        if circuit.len() != self.gates.len() {
            return Err(Error::Document("duplicate control sets".into()));
        }
        Ok(circuit)
    }
}

/// Canonical JSON text of a circuit.
pub fn serialize_circuit(
    circuit: &RotationCircuit,
    source_function: Option<String>,
    approximation: Option<ApproximationMetadata>,
) -> String {
    CircuitDocument::new(circuit, source_function, approximation).to_json()
}

/// Parses circuit JSON, returning the circuit and its metadata.
pub fn parse_circuit(text: &str) -> Result<(RotationCircuit, Metadata)> {
    let doc = CircuitDocument::from_json(text)?;
    let circuit = doc.to_circuit()?;
    Ok((circuit, doc.metadata))
}
