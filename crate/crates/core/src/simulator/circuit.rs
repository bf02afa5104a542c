use crate::error::{Error, Result};

use super::gate::{Control, Gate};

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends `other`, which must not use more qubits than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.num_qubits > self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    /// The same gates on a register of `num_qubits >= self.num_qubits()`.
    pub fn widened(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: num_qubits,
            });
        }
        Ok(Circuit {
            num_qubits,
            gates: self.gates.clone(),
        })
    }

    /// Relabels qubit `q` as `mapping[q]` on a register of `num_qubits`.
    pub fn remapped(&self, mapping: &[usize], num_qubits: usize) -> Result<Circuit> {
        if mapping.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: mapping.len(),
            });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| Gate {
                kind: g.kind,
                targets: g.targets.iter().map(|&q| mapping[q]).collect(),
                controls: g
                    .controls
                    .iter()
                    .map(|c| Control {
                        qubit: mapping[c.qubit],
                        on_one: c.on_one,
                    })
                    .collect(),
            })
            .collect();
        Circuit::from_gates(num_qubits, gates)
    }

    /// Gates reversed, each replaced by its adjoint.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    /// Every gate gains `control` as an extra `|1>` control. The register
    /// grows if `control` lies beyond it.
    pub fn controlled(&self, control: usize) -> Result<Circuit> {
        if self.gates.iter().any(|g| g.qubits().any(|q| q == control)) {
            return Err(Error::OverlappingQubits(control));
        }
        let num_qubits = self.num_qubits.max(control + 1);
        let gates = self
            .gates
            .iter()
            .map(|g| g.clone().with_controls([Control::one(control)]))
            .collect();
        Circuit::from_gates(num_qubits, gates)
    }

    /// Layer count under as-soon-as-possible scheduling; gates sharing no
    /// qubit share a layer and a multi-qubit gate occupies one layer.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let l = 1 + g.qubits().map(|q| level[q]).max().unwrap_or(0);
            for q in g.qubits() {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }
}

pub fn inverse_circuit(circuit: &Circuit) -> Circuit {
    circuit.inverse()
}

pub fn controlled_wrap(circuit: &Circuit, control: usize) -> Result<Circuit> {
    circuit.controlled(control)
}
