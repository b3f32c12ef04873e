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

//! Gate-count bounds: the block recurrence, closed forms for one and two
//! electrons, leading-order asymptotics and crossover predicates.

use thiserror::Error;

use crate::fock::MAX_QUBITS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalingError {
    #[error("invalid arguments n={n}, m={m}: need 0 <= m <= n <= {MAX_QUBITS}")]
    InvalidArgs { n: usize, m: usize },
    #[error("no closed form for n={n}, m={m}: only m in {{1, 2}} with n >= 2")]
    Unsupported { n: usize, m: usize },
}

fn check(n: usize, m: usize) -> Result<(), ScalingError> {
    if m > n || n > MAX_QUBITS {
        Err(ScalingError::InvalidArgs { n, m })
    } else {
        Ok(())
    }
}

/// Total gate bound `N(n, m) = 2·N(n−1, m−1) + N(n−1, m) + 2` with
/// `N(p, 0) = 0`, `N(p, p) = p` and `N(p, 1) = 4p − 3`.
pub fn bound_recurrence(n: usize, m: usize) -> Result<u128, ScalingError> {
    check(n, m)?;
    // table[p][k] for p <= n, k <= m
    let mut table = vec![vec![0u128; m + 1]; n + 1];
    for p in 0..=n {
        for k in 0..=m.min(p) {
            table[p][k] = if k == 0 {
                0
            } else if k == p {
                p as u128
            } else if k == 1 {
                4 * p as u128 - 3
            } else {
                2 * table[p - 1][k - 1] + table[p - 1][k] + 2
            };
        }
    }
    Ok(table[n][m])
}

/// `(total, cnot)` closed forms for `m ∈ {1, 2}`.
pub fn closed_forms(n: usize, m: usize) -> Result<(u64, u64), ScalingError> {
    check(n, m)?;
    let k = n as u64;
    match m {
        1 if n >= 2 => Ok((4 * k - 3, 2 * k - 3)),
        2 if n >= 2 => Ok((4 * k * k + 6 - 10 * k, 2 * k * k + 4 - 6 * k)),
        _ => Err(ScalingError::Unsupported { n, m }),
    }
}

/// Leading-order `(total, cnot)` = `(2^(m+1)·nᵐ/m!, 2ᵐ·nᵐ/m!)`.
pub fn asymptotic(n: usize, m: usize) -> (f64, f64) {
    let cnot = (1..=m).fold(1.0, |acc, k| acc * (2 * n) as f64 / k as f64);
    (2.0 * cnot, cnot)
}

/// Upper bound used against measured totals: the larger of the
/// recurrence and the closed form where one exists.
pub fn total_bound(n: usize, m: usize) -> Result<u128, ScalingError> {
    let rec = bound_recurrence(n, m)?;
    Ok(match closed_forms(n, m) {
        Ok((total, _)) => rec.max(total as u128),
        Err(_) => rec,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossovers {
    /// `m·log₂ n < n`: fewer gates than generic `2ⁿ` preparation.
    pub beats_full_hilbert: bool,
    /// `n > 2m`: better than the `O(N²n²)` reference over the full space.
    pub beats_ortiz: bool,
    /// With a support size `N`: asymptotic CNOTs below `N²n²`.
    pub beats_ortiz_at_support: Option<bool>,
}

pub fn crossovers(n: usize, m: usize, support: Option<u64>) -> Crossovers {
    let (_, cnot) = asymptotic(n, m);
    Crossovers {
        beats_full_hilbert: (m as f64) * (n as f64).log2() < n as f64,
        beats_ortiz: n > 2 * m,
        beats_ortiz_at_support: support.map(|s| cnot < (s as f64 * n as f64).powi(2)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub recurrence_total: u128,
    pub closed_total: Option<u64>,
    pub closed_cnot: Option<u64>,
    pub asymptotic_total: f64,
    pub asymptotic_cnot: f64,
    pub full_hilbert: f64,
}

pub fn bound_report(n: usize, m: usize) -> Result<BoundReport, ScalingError> {
    let recurrence_total = bound_recurrence(n, m)?;
    let closed = closed_forms(n, m).ok();
    let (asymptotic_total, asymptotic_cnot) = asymptotic(n, m);
    Ok(BoundReport {
        n,
        m,
        recurrence_total,
        closed_total: closed.map(|c| c.0),
        closed_cnot: closed.map(|c| c.1),
        asymptotic_total,
        asymptotic_cnot,
        full_hilbert: 2f64.powi(n as i32),
    })
}
