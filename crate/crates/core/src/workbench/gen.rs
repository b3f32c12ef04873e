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

//! Seeded random target generators.
//!
//! Every generator draws from ChaCha8 seeded with the 64-bit seed through
//! `seed_from_u64`, and amplitudes are standard normal samples taken in
//! ascending configuration order before normalization, so a seed gives the
//! same state on every platform.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::fock::{
    binomial, configurations_of_weight, unrank, validate_target, Configuration, FockError,
    TargetState, ValidateOptions, MAX_QUBITS,
};

/// Largest support produced by the `Full` option.
pub const MAX_FULL_SUPPORT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("requested {requested} configurations but only {available} exist")]
    SupportTooLarge { requested: u64, available: String },
    #[error("invalid generator arguments: {0}")]
    InvalidArgs(String),
    #[error(transparent)]
    State(#[from] FockError),
}

/// How many configurations a random state covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Every weight-`m` configuration.
    Full,
    Count(u64),
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_size(n: usize, m: usize) -> Result<(), GenError> {
    if n == 0 || n > MAX_QUBITS || m > n {
        return Err(GenError::InvalidArgs(format!(
            "need 1 <= n <= {MAX_QUBITS} and m <= n, got n={n}, m={m}"
        )));
    }
    Ok(())
}

/// `k` distinct ranks out of `total`, ascending.
fn sample_ranks(rng: &mut ChaCha8Rng, total: Option<u64>, k: u64) -> Result<Vec<u64>, GenError> {
    let available = total.map_or_else(|| "more than 2^64".into(), |t| t.to_string());
    let total = match total {
        Some(t) if k <= t => t,
        _ => {
            return Err(GenError::SupportTooLarge {
                requested: k,
                available,
            })
        }
    };
    if k == 0 {
        return Err(GenError::InvalidArgs(
            "support size must be positive".into(),
        ));
    }
    let total =
        usize::try_from(total).map_err(|_| GenError::InvalidArgs("space too large".into()))?;
    let mut ranks: Vec<u64> = index::sample(rng, total, k as usize)
        .into_iter()
        .map(|r| r as u64)
        .collect();
    ranks.sort_unstable();
    Ok(ranks)
}

fn with_normal_amplitudes(
    rng: &mut ChaCha8Rng,
    mut configs: Vec<Configuration>,
    n: usize,
    m: usize,
) -> Result<TargetState, GenError> {
    configs.sort_unstable();
    let terms: Vec<_> = configs
        .into_iter()
        .map(|c| (c, rng.sample::<f64, _>(StandardNormal)))
        .collect();
    normalized(terms, n, m)
}

fn normalized(
    terms: Vec<(Configuration, f64)>,
    n: usize,
    m: usize,
) -> Result<TargetState, GenError> {
    let opts = ValidateOptions {
        auto_normalize: true,
        ..Default::default()
    };
    Ok(validate_target(terms, n, m, &opts)?.state)
}

/// Uniformly chosen support of weight-`m` configurations with normal
/// amplitudes.
pub fn gen_random(
    n: usize,
    m: usize,
    support: Support,
    seed: u64,
) -> Result<TargetState, GenError> {
    check_size(n, m)?;
    let mut rng = rng_for(seed);
    let configs = match support {
        Support::Full => {
            binomial(n, m)
                .filter(|&t| t <= MAX_FULL_SUPPORT)
                .ok_or_else(|| GenError::SupportTooLarge {
                    requested: binomial(n, m).unwrap_or(u64::MAX),
                    available: format!("{MAX_FULL_SUPPORT} (full-support limit)"),
                })?;
            configurations_of_weight(n, m)?
        }
        Support::Count(k) => sample_ranks(&mut rng, binomial(n, m), k)?
            .into_iter()
            .map(|r| unrank(n, m, r))
            .collect::<Result<_, _>>()?,
    };
    with_normal_amplitudes(&mut rng, configs, n, m)
}

/// Closed-shell configurations: each chosen spatial orbital `i` fills both
/// spin orbitals `2i` and `2i + 1`. The state has `2·n_spatial` qubits and
/// `2·n_pairs` electrons.
pub fn gen_paired(
    n_spatial: usize,
    n_pairs: usize,
    k: u64,
    seed: u64,
) -> Result<TargetState, GenError> {
    let (n, m) = (2 * n_spatial, 2 * n_pairs);
    check_size(n, m)?;
    let mut rng = rng_for(seed);
    let configs = sample_ranks(&mut rng, binomial(n_spatial, n_pairs), k)?
        .into_iter()
        .map(|r| {
            let spatial = unrank(n_spatial, n_pairs, r)?;
            let occ: Vec<usize> = spatial
                .occupied()
                .flat_map(|i| [2 * i, 2 * i + 1])
                .collect();
            Configuration::from_occupied(n, &occ)
        })
        .collect::<Result<_, _>>()?;
    with_normal_amplitudes(&mut rng, configs, n, m)
}

/// Two-electron singlet: a mix of closed shells `{2i, 2i+1}` and open-shell
/// pairs `{2i, 2j+1}`, `{2j, 2i+1}` sharing one amplitude, `k` configurations
/// in total on `2·n_spatial` qubits.
pub fn gen_singlet(n_spatial: usize, k: u64, seed: u64) -> Result<TargetState, GenError> {
    let n = 2 * n_spatial;
    check_size(n, 2)?;
    let ns = n_spatial as u64;
    let open_max = ns * (ns - 1) / 2;
    if k == 0 || k > ns + 2 * open_max {
        return Err(GenError::SupportTooLarge {
            requested: k,
            available: (ns + 2 * open_max).to_string(),
        });
    }
    let mut rng = rng_for(seed);
    // closed-shell counts c with c + 2·open = k
    let feasible: Vec<u64> = (0..=ns.min(k))
        .filter(|c| (k - c).is_multiple_of(2) && (k - c) / 2 <= open_max)
        .collect();
    let closed = feasible[rng.random_range(0..feasible.len())];
    let open = (k - closed) / 2;

    let mut terms = Vec::new();
    let mut push = |occ: [usize; 2], amp: f64| -> Result<(), GenError> {
        terms.push((Configuration::from_occupied(n, &occ)?, amp));
        Ok(())
    };
    if closed > 0 {
        for i in sample_ranks(&mut rng, Some(ns), closed)? {
            let i = i as usize;
            let amp = rng.sample::<f64, _>(StandardNormal);
            push([2 * i, 2 * i + 1], amp)?;
        }
    }
    if open > 0 {
        for r in sample_ranks(&mut rng, Some(open_max), open)? {
            let pair = unrank(n_spatial, 2, r)?;
            let mut orbs = pair.occupied();
            let (i, j) = (orbs.next().expect("two"), orbs.next().expect("two"));
            let amp = rng.sample::<f64, _>(StandardNormal) * std::f64::consts::FRAC_1_SQRT_2;
            push([2 * i, 2 * j + 1], amp)?;
            push([2 * j, 2 * i + 1], amp)?;
        }
    }
    normalized(terms, n, 2)
}
