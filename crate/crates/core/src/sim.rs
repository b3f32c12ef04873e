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

//! Reference statevector simulation, dense and sparse.
//!
//! Basis index `i` of an `n`-qubit state is the configuration whose
//! [`bits`](crate::fock::Configuration::bits) equal `i`, so qubit 0 is the
//! most significant bit.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::fock::{Configuration, TargetState, MAX_QUBITS};

/// Largest register simulated densely.
pub const MAX_DENSE_QUBITS: usize = 24;

/// Sparse entries with smaller magnitude are discarded after each gate.
pub const SPARSE_DROP_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("dense simulation supports at most {MAX_DENSE_QUBITS} qubits, got {0}")]
    TooManyQubitsDense(usize),
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    InvalidQubitCount(usize),
    #[error("basis index {index:#x} out of range for {n} qubits")]
    IndexOutOfRange { n: usize, index: u64 },
}

/// Read access shared by both state kinds.
pub trait Amplitudes {
    fn n(&self) -> usize;
    fn amplitude(&self, index: u64) -> Complex64;
    /// Nonzero entries in ascending index order.
    fn nonzero(&self) -> Vec<(u64, Complex64)>;

    fn norm_sq(&self) -> f64 {
        self.nonzero().iter().map(|(_, a)| a.norm_sqr()).sum()
    }
}

fn check_n(n: usize) -> Result<(), SimError> {
    if n == 0 || n > MAX_QUBITS {
        Err(SimError::InvalidQubitCount(n))
    } else {
        Ok(())
    }
}

fn bit(n: usize, qubit: usize) -> u64 {
    1u64 << (n - 1 - qubit)
}

fn index_limit(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Full `2ⁿ` amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self, SimError> {
        check_n(n)?;
        if n > MAX_DENSE_QUBITS {
            return Err(SimError::TooManyQubitsDense(n));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(DenseState { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self, SimError> {
        check_n(n)?;
        if n > MAX_DENSE_QUBITS {
            return Err(SimError::TooManyQubitsDense(n));
        }
        if amps.len() != 1 << n {
            return Err(SimError::DimensionMismatch {
                left: n,
                right: amps.len().trailing_zeros() as usize,
            });
        }
        Ok(DenseState { n, amps })
    }

    pub fn from_target(state: &TargetState) -> Result<Self, SimError> {
        let mut s = Self::zero(state.n())?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        for &(c, a) in state.terms() {
            s.amps[c.bits() as usize] = Complex64::new(a, 0.0);
        }
        Ok(s)
    }

    pub fn from_sparse(state: &SparseState) -> Result<Self, SimError> {
        let mut s = Self::zero(state.n)?;
        s.amps[0] = Complex64::new(0.0, 0.0);
        for (&i, &a) in &state.amps {
            s.amps[i as usize] = a;
        }
        Ok(s)
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn apply(&mut self, gate: &Gate) {
        let t = bit(self.n, gate.target());
        let c = gate.control().map(|q| bit(self.n, q));
        let m = gate.matrix();
        for i in 0..self.amps.len() as u64 {
            if i & t != 0 || c.is_some_and(|c| i & c == 0) {
                continue;
            }
            let (i0, i1) = (i as usize, (i | t) as usize);
            let (a0, a1) = (self.amps[i0], self.amps[i1]);
            self.amps[i0] = a0 * m[0][0] + a1 * m[0][1];
            self.amps[i1] = a0 * m[1][0] + a1 * m[1][1];
        }
    }
}

impl Amplitudes for DenseState {
    fn n(&self) -> usize {
        self.n
    }

    fn amplitude(&self, index: u64) -> Complex64 {
        self.amps
            .get(index as usize)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn nonzero(&self) -> Vec<(u64, Complex64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() != 0.0)
            .map(|(i, &a)| (i as u64, a))
            .collect()
    }
}

/// Map from basis index to amplitude; no zero entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n: usize,
    amps: BTreeMap<u64, Complex64>,
}

impl SparseState {
    pub fn zero(n: usize) -> Result<Self, SimError> {
        check_n(n)?;
        let mut amps = BTreeMap::new();
        amps.insert(0, Complex64::new(1.0, 0.0));
        Ok(SparseState { n, amps })
    }

    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self, SimError>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        check_n(n)?;
        let mut amps = BTreeMap::new();
        for (i, a) in entries {
            if i > index_limit(n) {
                return Err(SimError::IndexOutOfRange { n, index: i });
            }
            if a.norm_sqr() != 0.0 {
                amps.insert(i, a);
            }
        }
        Ok(SparseState { n, amps })
    }

    pub fn from_target(state: &TargetState) -> Self {
        SparseState {
            n: state.n(),
            amps: state
                .terms()
                .iter()
                .map(|&(c, a)| (c.bits(), Complex64::new(a, 0.0)))
                .collect(),
        }
    }

    pub fn from_dense(state: &DenseState) -> Self {
        SparseState {
            n: state.n,
            amps: state.nonzero().into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Entries as configurations, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (Configuration, Complex64)> + '_ {
        self.amps
            .iter()
            .map(|(&i, &a)| (Configuration::new(self.n, i).expect("index in range"), a))
    }

    fn apply(&mut self, gate: &Gate) {
        let t = bit(self.n, gate.target());
        let c = gate.control().map(|q| bit(self.n, q));
        let inactive = |i: u64| c.is_some_and(|c| i & c == 0);
        let old: HashMap<u64, Complex64> = std::mem::take(&mut self.amps).into_iter().collect();
        let mut new = BTreeMap::new();
        let mut put = |i: u64, a: Complex64| {
            if a.norm() >= SPARSE_DROP_THRESHOLD {
                new.insert(i, a);
            }
        };
        match gate {
            Gate::X { .. } | Gate::Cnot { .. } => {
                for (&i, &a) in &old {
                    put(if inactive(i) { i } else { i ^ t }, a);
                }
            }
            _ => {
                let m = gate.matrix();
                let zero = Complex64::new(0.0, 0.0);
                for (&i, &a) in &old {
                    if inactive(i) {
                        put(i, a);
                    } else if i & t == 0 {
                        let b = old.get(&(i | t)).copied().unwrap_or(zero);
                        put(i, a * m[0][0] + b * m[0][1]);
                        put(i | t, a * m[1][0] + b * m[1][1]);
                    } else if !old.contains_key(&(i & !t)) {
                        put(i & !t, a * m[0][1]);
                        put(i, a * m[1][1]);
                    }
                }
            }
        }
        self.amps = new;
    }
}

impl Amplitudes for SparseState {
    fn n(&self) -> usize {
        self.n
    }

    fn amplitude(&self, index: u64) -> Complex64 {
        self.amps
            .get(&index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn nonzero(&self) -> Vec<(u64, Complex64)> {
        self.amps.iter().map(|(&i, &a)| (i, a)).collect()
    }
}

/// States that a circuit can act on.
pub trait Simulate: Amplitudes + Sized {
    fn apply_gate(&mut self, gate: &Gate);
}

impl Simulate for DenseState {
    fn apply_gate(&mut self, gate: &Gate) {
        self.apply(gate)
    }
}

impl Simulate for SparseState {
    fn apply_gate(&mut self, gate: &Gate) {
        self.apply(gate)
    }
}

/// Apply every gate of `circuit` in order.
pub fn run<S: Simulate>(circuit: &Circuit, mut state: S) -> Result<S, SimError> {
    if circuit.n() != state.n() {
        return Err(SimError::DimensionMismatch {
            left: circuit.n(),
            right: state.n(),
        });
    }
    for g in circuit.gates() {
        state.apply_gate(g);
    }
    Ok(state)
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &dyn Amplitudes, b: &dyn Amplitudes) -> Result<f64, SimError> {
    Ok(overlap(a, b)?.norm_sqr().clamp(0.0, 1.0))
}

/// `⟨a|b⟩`.
pub fn overlap(a: &dyn Amplitudes, b: &dyn Amplitudes) -> Result<Complex64, SimError> {
    if a.n() != b.n() {
        return Err(SimError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(a.nonzero()
        .into_iter()
        .map(|(i, x)| x.conj() * b.amplitude(i))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn cnot_example() {
        let circ = Circuit::from_gates(
            2,
            vec![Gate::Cnot {
                control: 0,
                target: 1,
            }],
        )
        .unwrap();
        let s = SparseState::from_entries(2, [(0b10, c(1.0))]).unwrap();
        let out = run(&circ, s).unwrap();
        assert_eq!(out.nonzero(), vec![(0b11, c(1.0))]);

        let d = DenseState::from_sparse(&SparseState::from_entries(2, [(0b10, c(1.0))]).unwrap())
            .unwrap();
        let out = run(&circ, d).unwrap();
        assert_eq!(out.amplitude(0b11), c(1.0));
    }

    #[test]
    fn rotation_then_inverse() {
        let (u, v) = (0.6, 0.8);
        let circ = Circuit::from_gates(
            1,
            vec![
                Gate::Rotation { target: 0, u, v },
                Gate::Rotation {
                    target: 0,
                    u,
                    v: -v,
                },
            ],
        )
        .unwrap();
        let psi = SparseState::from_entries(1, [(0, c(0.28f64.sqrt())), (1, c(-0.72f64.sqrt()))])
            .unwrap();
        let out = run(&circ, psi.clone()).unwrap();
        assert!((fidelity(&out, &psi).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let z = SparseState::from_entries(2, [(0b00, c(1.0))]).unwrap();
        let o = SparseState::from_entries(2, [(0b11, c(1.0))]).unwrap();
        assert_eq!(fidelity(&z, &z).unwrap(), 1.0);
        assert_eq!(fidelity(&z, &o).unwrap(), 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DenseState::from_amplitudes(1, vec![c(h), c(h)]).unwrap();
        let zero = SparseState::zero(1).unwrap();
        assert!((fidelity(&plus, &zero).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            fidelity(&plus, &z),
            Err(SimError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn controlled_reflection_native() {
        // control off: untouched; control on: flip for u=1, v=0
        let circ = Circuit::from_gates(
            2,
            vec![Gate::Ch {
                control: 0,
                target: 1,
                u: 1.0,
                v: 0.0,
            }],
        )
        .unwrap();
        let out = run(&circ, SparseState::zero(2).unwrap()).unwrap();
        assert_eq!(out.nonzero(), vec![(0, c(1.0))]);
        let s = SparseState::from_entries(2, [(0b10, c(1.0))]).unwrap();
        assert_eq!(run(&circ, s).unwrap().nonzero(), vec![(0b11, c(1.0))]);
    }

    #[test]
    fn limits() {
        assert_eq!(DenseState::zero(25), Err(SimError::TooManyQubitsDense(25)));
        assert!(SparseState::zero(64).is_ok());
        let circ = Circuit::new(3).unwrap();
        assert!(matches!(
            run(&circ, SparseState::zero(2).unwrap()),
            Err(SimError::DimensionMismatch { .. })
        ));
        let wide = Circuit::from_gates(64, vec![Gate::X { target: 0 }]).unwrap();
        let out = run(&wide, SparseState::zero(64).unwrap()).unwrap();
        assert_eq!(out.nonzero(), vec![(1u64 << 63, c(1.0))]);
    }
}
