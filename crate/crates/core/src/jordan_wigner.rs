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

//! Fermionic ladder operators on occupation-number states.
//!
//! Orbitals are 1-based in this module's public API, matching the usual
//! `a†ⱼ` notation; orbital `j` is qubit `j − 1`. A ladder operator on orbital
//! `j` picks up the sign `(−1)^(occupied orbitals before j)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fock::{validate_target, Configuration, FockError, TargetState, ValidateOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JwError {
    #[error("orbital {orbital} outside 1..={n}")]
    OrbitalOutOfRange { orbital: usize, n: usize },
    #[error("terms mix electron numbers {0} and {1}")]
    MixedWeight(usize, usize),
    #[error("operator string {0:?} is not a product of distinct creation operators")]
    NotCreationProduct(String),
    #[error("cannot parse operator string {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    State(#[from] FockError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderKind {
    Create,
    Annihilate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub kind: LadderKind,
    /// 1-based orbital index.
    pub orbital: usize,
}

impl LadderOp {
    pub fn create(orbital: usize) -> Self {
        LadderOp {
            kind: LadderKind::Create,
            orbital,
        }
    }

    pub fn annihilate(orbital: usize) -> Self {
        LadderOp {
            kind: LadderKind::Annihilate,
            orbital,
        }
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LadderKind::Create => write!(f, "a+ {}", self.orbital),
            LadderKind::Annihilate => write!(f, "a {}", self.orbital),
        }
    }
}

/// Sparse real amplitudes keyed by configuration.
pub type FockVector = BTreeMap<Configuration, f64>;

/// The vacuum `|0…0⟩` on `n` orbitals.
pub fn vacuum(n: usize) -> Result<FockVector, JwError> {
    Ok(FockVector::from([(Configuration::vacuum(n)?, 1.0)]))
}

/// Apply one ladder operator to every term of `state`.
pub fn apply_ladder(op: LadderOp, state: &FockVector, n: usize) -> Result<FockVector, JwError> {
    if op.orbital == 0 || op.orbital > n {
        return Err(JwError::OrbitalOutOfRange {
            orbital: op.orbital,
            n,
        });
    }
    let q = op.orbital - 1;
    let mut out = FockVector::new();
    for (&c, &a) in state {
        if c.n() != n {
            return Err(FockError::LengthMismatch {
                config: c,
                expected: n,
                found: c.n(),
            }
            .into());
        }
        let wanted = op.kind == LadderKind::Annihilate;
        if c.is_occupied(q) != wanted || a == 0.0 {
            continue;
        }
        let sign = if c.occupied_before(q) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        *out.entry(c.flipped(q)).or_insert(0.0) += sign * a;
    }
    out.retain(|_, a| *a != 0.0);
    Ok(out)
}

/// A coefficient times a product of ladder operators, applied right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct OpString {
    pub coefficient: f64,
    pub ops: Vec<LadderOp>,
}

impl OpString {
    pub fn new(coefficient: f64, ops: Vec<LadderOp>) -> Self {
        OpString { coefficient, ops }
    }

    pub fn apply(&self, state: &FockVector, n: usize) -> Result<FockVector, JwError> {
        let mut s = state.clone();
        for &op in self.ops.iter().rev() {
            s = apply_ladder(op, &s, n)?;
        }
        for a in s.values_mut() {
            *a *= self.coefficient;
        }
        s.retain(|_, a| *a != 0.0);
        Ok(s)
    }

    fn is_creation_product(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.ops
            .iter()
            .all(|op| op.kind == LadderKind::Create && seen.insert(op.orbital))
    }
}

impl fmt::Display for OpString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.coefficient)?;
        for op in &self.ops {
            write!(f, " {op}")?;
        }
        Ok(())
    }
}

/// Parses `"[coef:] a+ 1 a 3 …"`; `a+`/`a†` create, `a`/`a-` annihilate.
impl FromStr for OpString {
    type Err = JwError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| JwError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (coefficient, body) = match s.split_once(':') {
            Some((c, rest)) => (
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| fail("coefficient is not a number"))?,
                rest,
            ),
            None => (1.0, s),
        };
        if !coefficient.is_finite() {
            return Err(fail("coefficient is not finite"));
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(fail("expected operator/orbital pairs"));
        }
        let mut ops = Vec::new();
        for pair in tokens.chunks(2) {
            let orbital = pair[1]
                .parse::<usize>()
                .map_err(|_| fail("orbital is not a positive integer"))?;
            let op = match pair[0] {
                "a+" | "a†" | "a^" => LadderOp::create(orbital),
                "a" | "a-" => LadderOp::annihilate(orbital),
                _ => return Err(fail("unknown operator, expected a+ or a")),
            };
            ops.push(op);
        }
        Ok(OpString { coefficient, ops })
    }
}

/// Sum of creation strings applied to the vacuum, validated as a target.
pub fn build_state(
    strings: &[OpString],
    n: usize,
    opts: &ValidateOptions,
) -> Result<TargetState, JwError> {
    let vac = vacuum(n)?;
    let mut total = FockVector::new();
    for s in strings {
        if !s.is_creation_product() {
            return Err(JwError::NotCreationProduct(s.to_string()));
        }
        for (c, a) in s.apply(&vac, n)? {
            *total.entry(c).or_insert(0.0) += a;
        }
    }
    total.retain(|_, a| *a != 0.0);
    let mut weights = total.keys().map(|c| c.weight());
    let m = weights.next().ok_or(FockError::Empty)?;
    if let Some(other) = weights.find(|&w| w != m) {
        return Err(JwError::MixedWeight(m, other));
    }
    Ok(validate_target(total, n, m, opts)?.state)
}
