//! CSV tables of budget sweeps.

use serde::{Deserialize, Serialize};

pub const SWEEP_HEADER: [&str; 9] =
    ["function", "n", "budget", "toffoli", "ancilla", "gate_count", "bound", "max_error", "avg_error"];

/// One compiled approximation in a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub function: String,
    pub n: usize,
    pub budget: f64,
    pub toffoli: u64,
    pub ancilla: usize,
    pub gate_count: usize,
    pub bound: f64,
    pub max_error: f64,
    pub avg_error: f64,
}

/// Renders rows under [`SWEEP_HEADER`], ordered by function, `n`, then
/// ascending budget. LF line endings.
pub fn export_sweep_csv(rows: &[SweepRow]) -> String {
    let mut rows: Vec<&SweepRow> = rows.iter().collect();
    rows.sort_by(|a, b| {
        a.function
            .cmp(&b.function)
            .then(a.n.cmp(&b.n))
            .then(a.budget.total_cmp(&b.budget))
    });
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(SWEEP_HEADER).expect("writing to memory");
    for r in rows {
        writer
            .write_record([
                r.function.clone(),
                r.n.to_string(),
                format_number(r.budget),
                r.toffoli.to_string(),
                r.ancilla.to_string(),
                r.gate_count.to_string(),
                format_number(r.bound),
                format_number(r.max_error),
                format_number(r.avg_error),
            ])
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("csv output is UTF-8")
}

/// Integers print without a fraction; everything else uses the shortest
/// round-trip form.
fn format_number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:?}")
    }
}

/// Parses a table written by [`export_sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}
