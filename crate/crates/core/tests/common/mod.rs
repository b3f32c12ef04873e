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

//! Independent reference code for integration tests: a real dense
//! simulator written against the gate definitions, separate from the
//! library simulator.

#![allow(dead_code)]

use fockprep::circuit::{Circuit, Gate};
use fockprep::fock::TargetState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 2×2 block acting on the target, spelled out from the gate definitions.
fn block(g: &Gate) -> [[f64; 2]; 2] {
    match *g {
        Gate::X { .. } | Gate::Cnot { .. } => [[0.0, 1.0], [1.0, 0.0]],
        Gate::Rotation { u, v, .. } => [[u, -v], [v, u]],
        Gate::Ch { u, v, .. } => {
            // C† X C with C = [[u, −v], [v, u]]
            let c = [[u, -v], [v, u]];
            let xc = [c[1], c[0]];
            let mut m = [[0.0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = c[0][i] * xc[0][j] + c[1][i] * xc[1][j];
                }
            }
            m
        }
    }
}

/// Apply `circuit` to a real amplitude vector indexed by configuration bits.
pub fn dense_run(circuit: &Circuit, mut psi: Vec<f64>) -> Vec<f64> {
    let n = circuit.n();
    assert_eq!(psi.len(), 1 << n);
    for g in circuit.gates() {
        let m = block(g);
        let tbit = 1usize << (n - 1 - g.target());
        let cbit = g.control().map(|c| 1usize << (n - 1 - c));
        let mut out = vec![0.0; psi.len()];
        for (i, o) in out.iter_mut().enumerate() {
            if cbit.is_some_and(|c| i & c == 0) {
                *o = psi[i];
                continue;
            }
            let row = usize::from(i & tbit != 0);
            let i0 = i & !tbit;
            *o = m[row][0] * psi[i0] + m[row][1] * psi[i0 | tbit];
        }
        psi = out;
    }
    psi
}

pub fn zero_vector(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; 1 << n];
    v[0] = 1.0;
    v
}

pub fn target_vector(state: &TargetState) -> Vec<f64> {
    let mut v = vec![0.0; 1 << state.n()];
    for &(c, a) in state.terms() {
        v[c.bits() as usize] = a;
    }
    v
}

/// `|⟨target|circuit|0…0⟩|²` by dense reference simulation.
pub fn oracle_fidelity(circuit: &Circuit, state: &TargetState) -> f64 {
    let out = dense_run(circuit, zero_vector(circuit.n()));
    let overlap: f64 = state
        .terms()
        .iter()
        .map(|&(c, a)| a * out[c.bits() as usize])
        .sum();
    overlap * overlap
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Short kind labels such as `CNOT01` or `U0`.
pub fn kinds(circuit: &Circuit) -> Vec<String> {
    circuit
        .gates()
        .iter()
        .map(|g| match *g {
            Gate::X { target } => format!("X{target}"),
            Gate::Cnot { control, target } => format!("CNOT{control}{target}"),
            Gate::Rotation { target, .. } => format!("U{target}"),
            Gate::Ch {
                control, target, ..
            } => format!("CH{control}{target}"),
        })
        .collect()
}

/// Random unit-norm real vector.
pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    use rand::Rng;
    let mut v: Vec<f64> = (0..1 << n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

/// Random circuit on `n` qubits with up to `max_gates` gates.
pub fn random_circuit(rng: &mut ChaCha8Rng, n: usize, max_gates: usize) -> Circuit {
    use rand::Rng;
    let len = rng.random_range(0..=max_gates);
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let t = rng.random_range(0..n);
        let theta: f64 = rng.random_range(-3.2..3.2);
        let (u, v) = (theta.cos(), theta.sin());
        let kind = if n == 1 {
            rng.random_range(0..2) * 2
        } else {
            rng.random_range(0..4)
        };
        let mut c = rng.random_range(0..n);
        while n > 1 && c == t {
            c = rng.random_range(0..n);
        }
        gates.push(match kind {
            0 => Gate::X { target: t },
            1 => Gate::Cnot {
                control: c,
                target: t,
            },
            2 => Gate::Rotation { target: t, u, v },
            _ => Gate::Ch {
                control: c,
                target: t,
                u,
                v,
            },
        });
    }
    Circuit::from_gates(n, gates).expect("valid random circuit")
}
