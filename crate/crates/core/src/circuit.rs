// Copyright 2026 The fockprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Gate-level circuit representation.
//!
//! Gates apply first-to-last to kets. Indices are 0-based with qubit 0 the
//! leftmost symbol of a configuration string.

use thiserror::Error;

/// Tolerance on `u² + v² = 1` for parameterized gates.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("gate {index}: qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange {
        index: usize,
        qubit: usize,
        n: usize,
    },
    #[error("gate {index}: control and target are both qubit {qubit}")]
    ControlIsTarget { index: usize, qubit: usize },
    #[error("gate {index}: parameters ({u}, {v}) are not a unit vector")]
    NotUnit { index: usize, u: f64, v: f64 },
    #[error("qubit count must be at least 1")]
    NoQubits,
}

/// One gate of the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X {
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// Real rotation `[[u, −v], [v, u]]`.
    Rotation {
        target: usize,
        u: f64,
        v: f64,
    },
    /// Controlled reflection `C†XC` with `C = [[u, −v], [v, u]]`.
    Ch {
        control: usize,
        target: usize,
        u: f64,
        v: f64,
    },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::X { target }
            | Gate::Cnot { target, .. }
            | Gate::Rotation { target, .. }
            | Gate::Ch { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cnot { control, .. } | Gate::Ch { control, .. } => Some(control),
            _ => None,
        }
    }

    /// The 2×2 matrix applied to the target (when the control, if any, is set).
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        match *self {
            Gate::X { .. } | Gate::Cnot { .. } => [[0.0, 1.0], [1.0, 0.0]],
            Gate::Rotation { u, v, .. } => rotation_matrix(u, v),
            Gate::Ch { u, v, .. } => reflection_matrix(u, v),
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rotation { target, u, v } => Gate::Rotation { target, u, v: -v },
            g => g,
        }
    }

    fn check(&self, index: usize, n: usize) -> Result<(), CircuitError> {
        let mut qubits = vec![self.target()];
        qubits.extend(self.control());
        for &q in &qubits {
            if q >= n {
                return Err(CircuitError::QubitOutOfRange { index, qubit: q, n });
            }
        }
        if self.control() == Some(self.target()) {
            return Err(CircuitError::ControlIsTarget {
                index,
                qubit: self.target(),
            });
        }
        match *self {
            Gate::Rotation { u, v, .. } | Gate::Ch { u, v, .. }
                if !(u * u + v * v - 1.0).abs().le(&UNIT_TOLERANCE) =>
            {
                Err(CircuitError::NotUnit { index, u, v })
            }
            _ => Ok(()),
        }
    }
}

/// `[[u, −v], [v, u]]`.
pub fn rotation_matrix(u: f64, v: f64) -> [[f64; 2]; 2] {
    [[u, -v], [v, u]]
}

/// `C†XC = [[2uv, u² − v²], [u² − v², −2uv]]`.
pub fn reflection_matrix(u: f64, v: f64) -> [[f64; 2]; 2] {
    let p = 2.0 * u * v;
    let q = u * u - v * v;
    [[p, q], [q, -p]]
}

/// An ordered gate list on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self, CircuitError> {
        if n == 0 {
            return Err(CircuitError::NoQubits);
        }
        Ok(Circuit {
            n,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(n)?;
        for (i, g) in gates.iter().enumerate() {
            g.check(i, n)?;
        }
        c.gates = gates;
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.check(self.gates.len(), self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }
}

/// Reverse the gate order and invert each gate.
pub fn invert(circuit: &Circuit) -> Circuit {
    Circuit {
        n: circuit.n,
        gates: circuit.gates.iter().rev().map(Gate::inverse).collect(),
    }
}

/// Replace every controlled reflection by rotation, CNOT, inverse rotation.
pub fn decompose_ch(circuit: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(circuit.gates.len());
    for &g in &circuit.gates {
        match g {
            Gate::Ch {
                control,
                target,
                u,
                v,
            } => {
                gates.push(Gate::Rotation { target, u, v });
                gates.push(Gate::Cnot { control, target });
                gates.push(Gate::Rotation { target, u, v: -v });
            }
            g => gates.push(g),
        }
    }
    Circuit {
        n: circuit.n,
        gates,
    }
}

/// Gate histogram.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub x: usize,
    pub cnot: usize,
    pub one_qubit: usize,
    pub ch: usize,
}

impl Counts {
    /// Each controlled reflection contains exactly one CNOT.
    pub fn cnot_total(&self) -> usize {
        self.cnot + self.ch
    }

    /// Each controlled reflection contributes two rotations.
    pub fn single_qubit_total(&self) -> usize {
        self.x + self.one_qubit + 2 * self.ch
    }

    pub fn grand_total(&self) -> usize {
        self.cnot_total() + self.single_qubit_total()
    }

    pub fn gates(&self) -> usize {
        self.x + self.cnot + self.one_qubit + self.ch
    }
}

pub fn count(circuit: &Circuit) -> Counts {
    let mut c = Counts::default();
    for g in &circuit.gates {
        match g {
            Gate::X { .. } => c.x += 1,
            Gate::Cnot { .. } => c.cnot += 1,
            Gate::Rotation { .. } => c.one_qubit += 1,
            Gate::Ch { .. } => c.ch += 1,
        }
    }
    c
}
