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

//! Recursive synthesis of fixed-electron-number state preparation circuits.
//!
//! The target is driven to `|0…0⟩` one leading qubit at a time and the
//! resulting circuit is inverted. For a split
//! `|ψ⟩ = c0·|0⟩|ψ0⟩ + c1·|1⟩|ψ1⟩` on qubits `q..` the block is
//!
//! ```text
//! X(q) · T(ψ1) · ctrl_q(T(ψ1)⁻¹) · ctrl_q(T(ψ0)) · H̃(q)
//! ```
//!
//! where `T(ψ)` maps `ψ` to `±|0…0⟩`. After `X(q)` the `c0` branch has
//! qubit `q` set, so the controlled parts only touch it. Under a control,
//! gates that already carry their own control are left as they are: on the
//! branch where the outer control is off the register stays at `|0…0⟩`,
//! so their inner control never fires there. No emitted gate has two
//! controls.

use thiserror::Error;

use crate::circuit::{count, invert, Circuit, CircuitError, Counts, Gate};
use crate::fock::{binomial, split_leading_qubit, FockError, TargetState};
use crate::sim::{fidelity, run, Amplitudes, SimError, SparseState};

/// Minimum accepted fidelity of a verified synthesis.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;

/// Largest placeholder branch materialized when pruning is disabled.
pub const MAX_PLACEHOLDER_SUPPORT: u64 = 1 << 20;

/// Operations scanned backwards when looking for a gate to cancel.
const CANCEL_WINDOW: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("cannot rotate the zero vector")]
    ZeroVector,
    #[error("zero threshold {0} outside (0, 1e-6)")]
    InvalidThreshold(f64),
    #[error(
        "without pruning a {n}-qubit, {m}-electron branch would need {size} placeholder terms"
    )]
    PlaceholderTooLarge { n: usize, m: usize, size: String },
    #[error("synthesized circuit reaches fidelity {fidelity}, below 1 - {FIDELITY_TOLERANCE}")]
    Diverged { fidelity: f64 },
    #[error(transparent)]
    State(#[from] FockError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Real symmetric involution `[[p, q], [q, −p]]` with `p = 2uv`,
/// `q = u² − v²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HTilde {
    pub u: f64,
    pub v: f64,
}

impl HTilde {
    pub fn p(&self) -> f64 {
        2.0 * self.u * self.v
    }

    pub fn q(&self) -> f64 {
        self.u * self.u - self.v * self.v
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        crate::circuit::reflection_matrix(self.u, self.v)
    }

    /// Application-order lowering to rotation, flip, inverse rotation.
    pub fn lower(&self, target: usize) -> [Gate; 3] {
        [
            Gate::Rotation {
                target,
                u: self.u,
                v: self.v,
            },
            Gate::X { target },
            Gate::Rotation {
                target,
                u: self.u,
                v: -self.v,
            },
        ]
    }
}

/// The reflection sending `(a, b)` to `(√(a² + b²), 0)`.
pub fn solve_h_tilde(a: f64, b: f64) -> Result<HTilde, SynthError> {
    let r = a.hypot(b);
    if r == 0.0 || !r.is_finite() {
        return Err(SynthError::ZeroVector);
    }
    let theta = 0.5 * (a / r).atan2(b / r);
    Ok(HTilde {
        u: theta.cos(),
        v: theta.sin(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions {
    pub zero_threshold: f64,
    pub prune: bool,
    pub verify: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            zero_threshold: crate::fock::DEFAULT_ZERO_THRESHOLD,
            prune: true,
            verify: true,
        }
    }
}

impl SynthOptions {
    fn check(&self) -> Result<(), SynthError> {
        let e = self.zero_threshold;
        if e > 0.0 && e < 1e-6 {
            Ok(())
        } else {
            Err(SynthError::InvalidThreshold(e))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthReport {
    /// Preparation circuit: `|0…0⟩ → target`.
    pub circuit: Circuit,
    pub counts: Counts,
    /// Calls of the recursive transform, base cases included.
    pub recursion_nodes: u64,
    /// Branches skipped because their weight vanished.
    pub pruned_branches: u64,
    pub fidelity: Option<f64>,
}

/// Internal operation; every variant is its own inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    X(usize),
    Cx(usize, usize),
    Reflect(usize, HTilde),
    CReflect(usize, usize, HTilde),
}

impl Op {
    fn target(&self) -> usize {
        match *self {
            Op::X(t) | Op::Cx(_, t) | Op::Reflect(t, _) | Op::CReflect(_, t, _) => t,
        }
    }

    fn control(&self) -> Option<usize> {
        match *self {
            Op::Cx(c, _) | Op::CReflect(c, _, _) => Some(c),
            _ => None,
        }
    }

    fn is_flip(&self) -> bool {
        matches!(self, Op::X(_) | Op::Cx(..))
    }

    fn controlled_by(self, c: usize) -> Op {
        match self {
            Op::X(t) => Op::Cx(c, t),
            Op::Reflect(t, h) => Op::CReflect(c, t, h),
            op => op,
        }
    }

    fn commutes_with(&self, other: &Op) -> bool {
        if self.target() == other.target() {
            return self.is_flip() && other.is_flip();
        }
        self.control() != Some(other.target()) && other.control() != Some(self.target())
    }
}

/// Append `op`, cancelling it against an identical earlier op reachable
/// through commuting ones.
fn emit(ops: &mut Vec<Op>, op: Op) {
    for j in (ops.len().saturating_sub(CANCEL_WINDOW)..ops.len()).rev() {
        if ops[j] == op {
            ops.remove(j);
            return;
        }
        if !ops[j].commutes_with(&op) {
            break;
        }
    }
    ops.push(op);
}

enum Turn {
    Skip,
    Flip,
    Reflect(HTilde),
}

fn leading_turn(a: f64, b: f64, eps: f64) -> Result<Turn, SynthError> {
    let r = a.hypot(b);
    if r == 0.0 {
        return Err(SynthError::ZeroVector);
    }
    let (p, q) = (a / r, b / r);
    if q.abs() <= eps && p > 0.0 {
        Ok(Turn::Skip)
    } else if p.abs() <= eps && q > 0.0 {
        Ok(Turn::Flip)
    } else {
        solve_h_tilde(a, b).map(Turn::Reflect)
    }
}

struct Transformer {
    opts: SynthOptions,
    nodes: u64,
    pruned: u64,
}

impl Transformer {
    /// Ops sending `state` (on qubits `offset..`) to `sign·|0…0⟩`.
    fn transform(
        &mut self,
        state: &TargetState,
        offset: usize,
    ) -> Result<(Vec<Op>, f64), SynthError> {
        self.nodes += 1;
        let p = state.n();
        let m = state.m();
        let mut ops = Vec::new();

        if state.len() == 1 && (self.opts.prune || binomial(p, m) == Some(1)) {
            let (config, amp) = state.terms()[0];
            for q in config.occupied() {
                emit(&mut ops, Op::X(offset + q));
            }
            return Ok((ops, amp.signum()));
        }

        if p > 2 && m + 1 == p {
            // flip everything and continue with the one-electron state
            for q in (0..p).rev() {
                emit(&mut ops, Op::X(offset + q));
            }
            let (rest, sign) = self.transform(&state.complement(), offset)?;
            for op in rest {
                emit(&mut ops, op);
            }
            return Ok((ops, sign));
        }

        let split = split_leading_qubit(state)?;
        let eps = self.opts.zero_threshold;
        let (c0, sub0, c1, sub1) = if self.opts.prune {
            let sub0 = split.sub0.filter(|_| split.c0 > eps);
            let sub1 = split.sub1.filter(|_| split.c1 > eps);
            match (sub0, sub1) {
                (Some(s0), None) => {
                    self.pruned += 1;
                    return self.transform(&s0, offset + 1);
                }
                (None, Some(s1)) => {
                    self.pruned += 1;
                    emit(&mut ops, Op::X(offset));
                    let (rest, sign) = self.transform(&s1, offset + 1)?;
                    for op in rest {
                        emit(&mut ops, op);
                    }
                    return Ok((ops, sign));
                }
                (Some(s0), Some(s1)) => (split.c0, s0, split.c1, s1),
                (None, None) => return Err(FockError::Empty.into()),
            }
        } else {
            let s0 = match split.sub0 {
                Some(s) => s,
                None => placeholder(p - 1, m)?,
            };
            let s1 = match split.sub1 {
                Some(s) => s,
                None => placeholder(p - 1, m - 1)?,
            };
            (split.c0, s0, split.c1, s1)
        };

        let (t1, sign1) = self.transform(&sub1, offset + 1)?;
        let (t0, sign0) = self.transform(&sub0, offset + 1)?;
        emit(&mut ops, Op::X(offset));
        for &op in &t1 {
            emit(&mut ops, op);
        }
        for &op in t1.iter().rev() {
            emit(&mut ops, op.controlled_by(offset));
        }
        for &op in &t0 {
            emit(&mut ops, op.controlled_by(offset));
        }
        match leading_turn(c1 * sign1, c0 * sign0, eps)? {
            Turn::Skip => {}
            Turn::Flip => emit(&mut ops, Op::X(offset)),
            Turn::Reflect(h) => emit(&mut ops, Op::Reflect(offset, h)),
        }
        Ok((ops, 1.0))
    }
}

fn placeholder(n: usize, m: usize) -> Result<TargetState, SynthError> {
    match binomial(n, m) {
        Some(size) if size <= MAX_PLACEHOLDER_SUPPORT => Ok(TargetState::uniform(n, m)?),
        size => Err(SynthError::PlaceholderTooLarge {
            n,
            m,
            size: size.map_or_else(|| "more than 2^64".into(), |s| s.to_string()),
        }),
    }
}

struct Transform {
    circuit: Circuit,
    nodes: u64,
    pruned: u64,
}

fn build_transform(state: &TargetState, opts: &SynthOptions) -> Result<Transform, SynthError> {
    opts.check()?;
    let mut t = Transformer {
        opts: *opts,
        nodes: 0,
        pruned: 0,
    };
    let (ops, sign) = t.transform(state, 0)?;
    let mut gates = Vec::with_capacity(ops.len() + 2);
    for op in ops {
        match op {
            Op::X(target) => gates.push(Gate::X { target }),
            Op::Cx(control, target) => gates.push(Gate::Cnot { control, target }),
            Op::Reflect(target, h) => gates.extend(h.lower(target)),
            Op::CReflect(control, target, h) => gates.push(Gate::Ch {
                control,
                target,
                u: h.u,
                v: h.v,
            }),
        }
    }
    if sign < 0.0 {
        // A leftover −1 means the state reduced to one signed configuration
        // and the last gate is its final flip; make that flip carry the sign.
        // The vacuum has no flip to reuse and keeps its global phase.
        if let Some(Gate::X { target }) = gates.last().copied() {
            *gates.last_mut().expect("nonempty") = Gate::Rotation {
                target,
                u: 0.0,
                v: 1.0,
            };
        }
    }
    Ok(Transform {
        circuit: Circuit::from_gates(state.n(), gates)?,
        nodes: t.nodes,
        pruned: t.pruned,
    })
}

/// Circuit mapping `state` to `|0…0⟩` with amplitude `+1` (up to the
/// global sign of a vacuum input).
pub fn transform_to_zero(state: &TargetState, opts: &SynthOptions) -> Result<Circuit, SynthError> {
    let t = build_transform(state, opts)?;
    if opts.verify {
        let out = run(&t.circuit, SparseState::from_target(state))?;
        let amp = out.amplitude(0);
        let fid = amp.norm_sqr();
        let phase_ok = amp.re > 0.0 || state.m() == 0;
        if !phase_ok || fid < 1.0 - FIDELITY_TOLERANCE {
            return Err(SynthError::Diverged { fidelity: fid });
        }
    }
    Ok(t.circuit)
}

/// Preparation circuit for `state` plus counts and diagnostics.
pub fn synthesize(state: &TargetState, opts: &SynthOptions) -> Result<SynthReport, SynthError> {
    let t = build_transform(state, opts)?;
    let circuit = invert(&t.circuit);
    let fidelity = if opts.verify {
        let f = prepared_fidelity(&circuit, state)?;
        if f < 1.0 - FIDELITY_TOLERANCE {
            return Err(SynthError::Diverged { fidelity: f });
        }
        Some(f)
    } else {
        None
    };
    Ok(SynthReport {
        counts: count(&circuit),
        circuit,
        recursion_nodes: t.nodes,
        pruned_branches: t.pruned,
        fidelity,
    })
}

/// `|⟨target|circuit|0…0⟩|²`, simulated sparsely.
pub fn prepared_fidelity(circuit: &Circuit, target: &TargetState) -> Result<f64, SynthError> {
    let out = run(circuit, SparseState::zero(circuit.n())?)?;
    Ok(fidelity(&SparseState::from_target(target), &out)?)
}
