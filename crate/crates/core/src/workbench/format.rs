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

//! State and circuit file formats.
//!
//! State file (JSON):
//!
//! ```json
//! {"schema_version": 1, "n": 3, "m": 1,
//!  "terms": [{"bits": "001", "amp": 5.7735026918962584e-1}]}
//! ```
//!
//! `m` may be omitted for states that mix electron numbers (simulation
//! output); such files cannot be used as synthesis targets.
//!
//! Circuit file, JSON form:
//!
//! ```json
//! {"schema_version": 1, "n": 2,
//!  "gates": [{"kind": "X", "q": [0]}, {"kind": "CNOT", "q": [0, 1]},
//!            {"kind": "U", "q": [1], "u": 0.6, "v": 0.8},
//!            {"kind": "CH", "q": [0, 1], "u": 0.6, "v": 0.8}]}
//! ```
//!
//! and text form, one gate per line in application order:
//!
//! ```text
//! # n=2
//! X 0
//! CNOT 0 1
//! U 1 6.0000000000000000e-1 8.0000000000000004e-1
//! CH 0 1 6.0000000000000000e-1 8.0000000000000004e-1
//! ```
//!
//! Indices are 0-based, qubit 0 being the leftmost character of `bits`.
//! Reals are written with 17 significant digits and read back bit-exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate};
use crate::fock::{validate_target, Configuration, FockError, TargetState, ValidateOptions};
use crate::sim::{Amplitudes, SparseState};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("unsupported schema_version {0}, expected {SCHEMA_VERSION}")]
    Schema(u32),
    #[error("state: {0}")]
    State(#[from] FockError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn field(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(x: f64) -> Result<Box<RawValue>, FormatError> {
    if !x.is_finite() {
        return Err(field("amp", "value is not finite"));
    }
    RawValue::from_string(format_real(x)).map_err(FormatError::from)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateIn {
    schema_version: u32,
    n: usize,
    #[serde(default)]
    m: Option<usize>,
    terms: Vec<TermIn>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    bits: String,
    amp: f64,
}

#[derive(Serialize)]
struct StateOut {
    schema_version: u32,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct TermOut {
    bits: String,
    amp: Box<RawValue>,
}

/// Raw contents of a state file: width, declared electron number, terms.
pub struct StateDoc {
    pub n: usize,
    pub m: Option<usize>,
    pub terms: Vec<(Configuration, f64)>,
}

pub fn parse_state_doc(text: &str) -> Result<StateDoc, FormatError> {
    let doc: StateIn = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(FormatError::Schema(doc.schema_version));
    }
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.iter().enumerate() {
        let name = format!("terms[{i}].bits");
        if t.bits.len() != doc.n {
            return Err(field(
                name,
                format!("length {} does not match n={}", t.bits.len(), doc.n),
            ));
        }
        let c = t
            .bits
            .parse::<Configuration>()
            .map_err(|e| field(name, e.to_string()))?;
        terms.push((c, t.amp));
    }
    Ok(StateDoc {
        n: doc.n,
        m: doc.m,
        terms,
    })
}

/// Load a synthesis target.
pub fn parse_target(text: &str, opts: &ValidateOptions) -> Result<TargetState, FormatError> {
    let doc = parse_state_doc(text)?;
    let m = doc
        .m
        .ok_or_else(|| field("m", "missing; required for a target state"))?;
    Ok(validate_target(doc.terms, doc.n, m, opts)?.state)
}

/// Load any state file as a simulator state.
pub fn parse_sparse(text: &str) -> Result<SparseState, FormatError> {
    let doc = parse_state_doc(text)?;
    SparseState::from_entries(
        doc.n,
        doc.terms
            .into_iter()
            .map(|(c, a)| (c.bits(), Complex64::new(a, 0.0))),
    )
    .map_err(|e| field("n", e.to_string()))
}

pub fn target_to_json(state: &TargetState) -> Result<String, FormatError> {
    let terms = state
        .terms()
        .iter()
        .map(|&(c, a)| {
            Ok(TermOut {
                bits: c.to_string(),
                amp: raw(a)?,
            })
        })
        .collect::<Result<_, FormatError>>()?;
    write_state(StateOut {
        schema_version: SCHEMA_VERSION,
        n: state.n(),
        m: Some(state.m()),
        terms,
    })
}

/// Real parts of the entries with magnitude at least `threshold`.
pub fn sparse_to_json(state: &SparseState, threshold: f64) -> Result<String, FormatError> {
    let mut terms = Vec::new();
    let mut weights = std::collections::BTreeSet::new();
    for (c, a) in state.entries() {
        if a.norm() < threshold {
            continue;
        }
        if a.im.abs() > threshold {
            return Err(field(
                format!("terms[{}].amp", terms.len()),
                "complex amplitude cannot be stored",
            ));
        }
        weights.insert(c.weight());
        terms.push(TermOut {
            bits: c.to_string(),
            amp: raw(a.re)?,
        });
    }
    let m = if weights.len() == 1 {
        weights.first().copied()
    } else {
        None
    };
    write_state(StateOut {
        schema_version: SCHEMA_VERSION,
        n: state.n(),
        m,
        terms,
    })
}

fn write_state(doc: StateOut) -> Result<String, FormatError> {
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    schema_version: u32,
    n: usize,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateDoc {
    kind: String,
    q: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u: Option<Box<RawValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<Box<RawValue>>,
}

/// Output format for circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitFormat {
    Json,
    Text,
}

pub fn circuit_to_string(circuit: &Circuit, format: CircuitFormat) -> Result<String, FormatError> {
    match format {
        CircuitFormat::Json => circuit_to_json(circuit),
        CircuitFormat::Text => Ok(circuit_to_text(circuit)),
    }
}

pub fn circuit_to_json(circuit: &Circuit) -> Result<String, FormatError> {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| {
            let (kind, q, uv) = match *g {
                Gate::X { target } => ("X", vec![target], None),
                Gate::Cnot { control, target } => ("CNOT", vec![control, target], None),
                Gate::Rotation { target, u, v } => ("U", vec![target], Some((u, v))),
                Gate::Ch {
                    control,
                    target,
                    u,
                    v,
                } => ("CH", vec![control, target], Some((u, v))),
            };
            let (u, v) = match uv {
                Some((u, v)) => (Some(raw(u)?), Some(raw(v)?)),
                None => (None, None),
            };
            Ok(GateDoc {
                kind: kind.to_string(),
                q,
                u,
                v,
            })
        })
        .collect::<Result<_, FormatError>>()?;
    let doc = CircuitDoc {
        schema_version: SCHEMA_VERSION,
        n: circuit.n(),
        gates,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn circuit_to_text(circuit: &Circuit) -> String {
    let mut s = format!("# n={}\n", circuit.n());
    for g in circuit.gates() {
        let line = match *g {
            Gate::X { target } => format!("X {target}"),
            Gate::Cnot { control, target } => format!("CNOT {control} {target}"),
            Gate::Rotation { target, u, v } => {
                format!("U {target} {} {}", format_real(u), format_real(v))
            }
            Gate::Ch {
                control,
                target,
                u,
                v,
            } => format!(
                "CH {control} {target} {} {}",
                format_real(u),
                format_real(v)
            ),
        };
        s.push_str(&line);
        s.push('\n');
    }
    s
}

/// Parse either circuit form; JSON is recognized by a leading `{`.
pub fn parse_circuit(text: &str) -> Result<Circuit, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_circuit_json(text)
    } else {
        parse_circuit_text(text)
    }
}

fn gate_from_parts(kind: &str, q: &[usize], uv: Option<(f64, f64)>) -> Result<Gate, String> {
    let arity = match kind {
        "X" | "U" => 1,
        "CNOT" | "CH" => 2,
        _ => return Err(format!("unknown gate kind {kind:?}")),
    };
    if q.len() != arity {
        return Err(format!(
            "{kind} takes {arity} qubit indices, got {}",
            q.len()
        ));
    }
    let needs_uv = matches!(kind, "U" | "CH");
    match (needs_uv, uv) {
        (true, None) => return Err(format!("{kind} needs parameters u and v")),
        (false, Some(_)) => return Err(format!("{kind} takes no parameters")),
        _ => {}
    }
    let (u, v) = uv.unwrap_or((0.0, 0.0));
    Ok(match kind {
        "X" => Gate::X { target: q[0] },
        "CNOT" => Gate::Cnot {
            control: q[0],
            target: q[1],
        },
        "U" => Gate::Rotation { target: q[0], u, v },
        _ => Gate::Ch {
            control: q[0],
            target: q[1],
            u,
            v,
        },
    })
}

fn parse_raw_real(raw: &RawValue, name: &str) -> Result<f64, FormatError> {
    serde_json::from_str::<f64>(raw.get()).map_err(|_| field(name, "expected a number"))
}

fn parse_circuit_json(text: &str) -> Result<Circuit, FormatError> {
    let doc: CircuitDoc = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(FormatError::Schema(doc.schema_version));
    }
    let mut gates = Vec::with_capacity(doc.gates.len());
    for (i, g) in doc.gates.iter().enumerate() {
        let uv = match (&g.u, &g.v) {
            (Some(u), Some(v)) => Some((
                parse_raw_real(u, &format!("gates[{i}].u"))?,
                parse_raw_real(v, &format!("gates[{i}].v"))?,
            )),
            (None, None) => None,
            _ => return Err(field(format!("gates[{i}]"), "u and v must appear together")),
        };
        gates
            .push(gate_from_parts(&g.kind, &g.q, uv).map_err(|e| field(format!("gates[{i}]"), e))?);
    }
    Circuit::from_gates(doc.n, gates).map_err(|e| match e {
        CircuitError::NoQubits => field("n", e.to_string()),
        CircuitError::QubitOutOfRange { index, .. }
        | CircuitError::ControlIsTarget { index, .. }
        | CircuitError::NotUnit { index, .. } => field(format!("gates[{index}]"), e.to_string()),
    })
}

fn parse_circuit_text(text: &str) -> Result<Circuit, FormatError> {
    let mut n = None;
    let mut gates = Vec::new();
    let mut lines_of = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if n.is_none() {
                let value = comment
                    .trim()
                    .strip_prefix("n=")
                    .ok_or_else(|| FormatError::Line {
                        line: lineno,
                        message: "expected header `# n=<qubits>`".into(),
                    })?;
                n = Some(
                    value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| FormatError::Line {
                            line: lineno,
                            message: format!("bad qubit count {value:?}"),
                        })?,
                );
            }
            continue;
        }
        if n.is_none() {
            return Err(FormatError::Line {
                line: lineno,
                message: "gate before header `# n=<qubits>`".into(),
            });
        }
        let err = |message: String| FormatError::Line {
            line: lineno,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let kind = tokens[0];
        let arity = match kind {
            "X" | "U" => 1,
            "CNOT" | "CH" => 2,
            _ => return Err(err(format!("unknown gate kind {kind:?}"))),
        };
        let params = if matches!(kind, "U" | "CH") { 2 } else { 0 };
        if tokens.len() != 1 + arity + params {
            return Err(err(format!(
                "{kind} expects {} fields, got {}",
                arity + params,
                tokens.len() - 1
            )));
        }
        let q = tokens[1..=arity]
            .iter()
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("qubit index is not a non-negative integer".into()))?;
        let uv = if params == 2 {
            let u = tokens[arity + 1].parse::<f64>();
            let v = tokens[arity + 2].parse::<f64>();
            match (u, v) {
                (Ok(u), Ok(v)) => Some((u, v)),
                _ => return Err(err("parameter is not a number".into())),
            }
        } else {
            None
        };
        gates.push(gate_from_parts(kind, &q, uv).map_err(err)?);
        lines_of.push(lineno);
    }
    let n = n.ok_or(FormatError::Line {
        line: 1,
        message: "missing header `# n=<qubits>`".into(),
    })?;
    Circuit::from_gates(n, gates).map_err(|e| match e {
        CircuitError::NoQubits => FormatError::Line {
            line: 1,
            message: e.to_string(),
        },
        CircuitError::QubitOutOfRange { index, .. }
        | CircuitError::ControlIsTarget { index, .. }
        | CircuitError::NotUnit { index, .. } => FormatError::Line {
            line: lines_of[index],
            message: e.to_string(),
        },
    })
}

/// Norm of a simulated state, for reporting.
pub fn norm(state: &SparseState) -> f64 {
    state.norm_sq().sqrt()
}
