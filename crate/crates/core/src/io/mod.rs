//! Circuit JSON, OpenQASM 3 and sweep CSV.

pub mod csv;
pub mod hexfloat;
pub mod json;
pub mod qasm;

pub use self::csv::{export_sweep_csv, parse_sweep_csv, SweepRow, SWEEP_HEADER};
pub use self::json::{
    parse_circuit, serialize_circuit, ApproximationMetadata, CircuitDocument, Metadata, SCHEMA_VERSION,
};
pub use self::qasm::export_qasm;
