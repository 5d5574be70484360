//! OpenQASM 3 emission with the ancilla-ladder decomposition of
//! multi-controlled rotations.

use std::fmt::Write;

use crate::circuit::RotationCircuit;

/// Emits `circuit` as an OpenQASM 3 program acting on registers `x`
/// (argument), `anc` (shared ancillas, only when needed) and `target`.
///
/// A gate with `k >= 2` controls becomes `k - 1` `ccx` gates computing the
/// AND of its controls into `anc[k-2]`, one `ctrl @ ry` from that ancilla,
/// then the mirrored `ccx` chain. Every ancilla returns to `|0⟩`, so all
/// gates share the same ancillas. Zero-angle gates are skipped.
pub fn export_qasm(circuit: &RotationCircuit) -> String {
    let n = circuit.register().n();
    let cost = circuit.cost_report();
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    let _ = writeln!(out, "qubit[{n}] x;");
    if cost.ancilla_count > 0 {
        let _ = writeln!(out, "qubit[{}] anc;", cost.ancilla_count);
    }
    out.push_str("qubit target;\n");

    for g in circuit.gates().iter().filter(|g| g.theta != 0.0) {
        let controls: Vec<usize> = g.controls.indices().collect();
        let theta = format!("{:?}", g.theta);
        match controls.as_slice() {
            [] => {
                let _ = writeln!(out, "ry({theta}) target;");
            }
            [c] => {
                let _ = writeln!(out, "ctrl @ ry({theta}) x[{c}], target;");
            }
            [first, second, rest @ ..] => {
                let mut ladder = Vec::with_capacity(controls.len() - 1);
                ladder.push(format!("ccx x[{first}], x[{second}], anc[0];"));
                for (j, c) in rest.iter().enumerate() {
                    ladder.push(format!("ccx x[{c}], anc[{j}], anc[{}];", j + 1));
                }
                for line in &ladder {
                    out.push_str(line);
                    out.push('\n');
                }
                let _ = writeln!(out, "ctrl @ ry({theta}) anc[{}], target;", controls.len() - 2);
                for line in ladder.iter().rev() {
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{ControlSet, RegisterSpec, RotationGate};

    fn circuit(n: usize, gates: &[(u32, f64)]) -> RotationCircuit {
        let r = RegisterSpec::twos_complement(n, 0.5).unwrap();
        RotationCircuit::from_gates(r, gates.iter().map(|&(m, t)| RotationGate::new(ControlSet::new(m), t))).unwrap()
    }

    fn count(text: &str, prefix: &str) -> usize {
        text.lines().filter(|l| l.starts_with(prefix)).count()
    }

    #[test]
    fn four_control_ladder() {
        let q = export_qasm(&circuit(4, &[(0b1111, 0.25)]));
        assert_eq!(count(&q, "ccx "), 6);
        assert_eq!(count(&q, "ctrl @ ry("), 1);
        assert!(q.contains("qubit[3] anc;"));
        assert!(q.contains("ctrl @ ry(0.25) anc[2], target;"));
        let body: Vec<&str> = q.lines().skip(5).collect();
        assert_eq!(
            body,
            vec![
                "ccx x[0], x[1], anc[0];",
                "ccx x[2], anc[0], anc[1];",
                "ccx x[3], anc[1], anc[2];",
                "ctrl @ ry(0.25) anc[2], target;",
                "ccx x[3], anc[1], anc[2];",
                "ccx x[2], anc[0], anc[1];",
                "ccx x[0], x[1], anc[0];",
            ]
        );
    }

    #[test]
    fn uncontrolled_and_single_control() {
        let q = export_qasm(&circuit(2, &[(0, -1.5), (0b10, 0.125), (0b11, 0.0)]));
        assert!(q.contains("\nry(-1.5) target;\n"));
        assert!(q.contains("\nctrl @ ry(0.125) x[1], target;\n"));
        assert!(!q.contains("anc"));
        assert_eq!(count(&q, "ccx"), 0);
    }

    #[test]
    fn toffoli_lines_match_cost() {
        let angles: Vec<f64> = (0..64).map(|m| (m as f64 * 0.37).sin()).collect();
        let r = RegisterSpec::twos_complement(6, 0.5).unwrap();
        let c = RotationCircuit::from_dense(r, &angles).unwrap();
        let q = export_qasm(&c);
        assert_eq!(count(&q, "ccx ") as u64, c.cost_report().toffoli_count);
        assert!(q.contains(&format!("qubit[{}] anc;", c.cost_report().ancilla_count)));
    }
}
