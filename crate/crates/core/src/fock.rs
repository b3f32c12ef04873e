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

//! Occupation-number model: electron configurations, fixed-electron-number
//! superpositions and the leading-qubit branch decomposition.
//!
//! Qubit `0` is the leftmost symbol of a ket and the most significant bit of
//! [`Configuration::bits`], so `|100⟩` has qubit 0 occupied and the numeric
//! value of `bits` equals the dense state-vector index.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported register width.
pub const MAX_QUBITS: usize = 64;

/// Amplitudes below this magnitude are treated as exactly zero.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// Largest `|Σ amp² − 1|` accepted without auto-normalization.
pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("qubit count {0} outside 1..={MAX_QUBITS}")]
    InvalidQubitCount(usize),
    #[error("electron count {m} exceeds qubit count {n}")]
    TooManyElectrons { n: usize, m: usize },
    #[error("bit pattern {bits:#x} does not fit in {n} qubits")]
    BitsOutOfRange { n: usize, bits: u64 },
    #[error("invalid occupation string {0:?}: expected only '0' and '1'")]
    BadBitString(String),
    #[error("configuration {config} has {found} qubits, expected {expected}")]
    LengthMismatch {
        config: Configuration,
        expected: usize,
        found: usize,
    },
    #[error("configuration {config} has Hamming weight {found}, expected {expected}")]
    WrongWeight {
        config: Configuration,
        expected: usize,
        found: usize,
    },
    #[error("configuration {0} appears more than once")]
    Duplicate(Configuration),
    #[error("amplitude of {0} is not finite")]
    NonFinite(Configuration),
    #[error("sum of squared amplitudes is {norm_sq}, expected 1")]
    NotNormalized { norm_sq: f64 },
    #[error("state has no terms above the zero threshold")]
    Empty,
    #[error("operation needs at least {needed} qubits, state has {found}")]
    TooFewQubits { needed: usize, found: usize },
    #[error("C({n},{m}) configurations exceed the supported limit")]
    SupportTooLarge { n: usize, m: usize },
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// One electron configuration: an `n`-bit occupation string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: u8,
    bits: u64,
}

impl Configuration {
    pub fn new(n: usize, bits: u64) -> Result<Self, FockError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(FockError::InvalidQubitCount(n));
        }
        if bits & !mask(n) != 0 {
            return Err(FockError::BitsOutOfRange { n, bits });
        }
        Ok(Configuration { n: n as u8, bits })
    }

    /// The empty configuration `|0…0⟩`.
    pub fn vacuum(n: usize) -> Result<Self, FockError> {
        Self::new(n, 0)
    }

    /// Configuration with the listed (0-based) qubits occupied.
    pub fn from_occupied(n: usize, occupied: &[usize]) -> Result<Self, FockError> {
        let mut c = Self::vacuum(n)?;
        for &q in occupied {
            if q >= n {
                return Err(FockError::TooFewQubits {
                    needed: q + 1,
                    found: n,
                });
            }
            c.bits |= c.bit_mask(q);
        }
        Ok(c)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    fn bit_mask(&self, qubit: usize) -> u64 {
        debug_assert!(qubit < self.n());
        1u64 << (self.n() - 1 - qubit)
    }

    /// Number of occupied orbitals.
    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_occupied(&self, qubit: usize) -> bool {
        self.bits & self.bit_mask(qubit) != 0
    }

    /// Occupied orbitals strictly before `qubit`.
    pub fn occupied_before(&self, qubit: usize) -> usize {
        let above = !((self.bit_mask(qubit) << 1).wrapping_sub(1));
        (self.bits & above & mask(self.n())).count_ones() as usize
    }

    pub fn flipped(&self, qubit: usize) -> Self {
        Configuration {
            n: self.n,
            bits: self.bits ^ self.bit_mask(qubit),
        }
    }

    /// Every qubit flipped.
    pub fn complement(&self) -> Self {
        Configuration {
            n: self.n,
            bits: !self.bits & mask(self.n()),
        }
    }

    /// Value of qubit 0.
    pub fn leading(&self) -> bool {
        self.is_occupied(0)
    }

    /// The configuration with qubit 0 removed; `None` for a one-qubit string.
    pub fn tail(&self) -> Option<Self> {
        if self.n < 2 {
            return None;
        }
        let n = self.n() - 1;
        Some(Configuration {
            n: n as u8,
            bits: self.bits & mask(n),
        })
    }

    /// Prepend a new qubit 0 with the given occupation.
    pub fn with_leading(&self, occupied: bool) -> Result<Self, FockError> {
        let n = self.n() + 1;
        if n > MAX_QUBITS {
            return Err(FockError::InvalidQubitCount(n));
        }
        let lead = if occupied { 1u64 << (n - 1) } else { 0 };
        Ok(Configuration {
            n: n as u8,
            bits: self.bits | lead,
        })
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&q| self.is_occupied(q))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            f.write_str(if self.is_occupied(q) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}⟩")
    }
}

impl FromStr for Configuration {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(FockError::InvalidQubitCount(n));
        }
        let mut bits = 0u64;
        for ch in s.bytes() {
            bits <<= 1;
            match ch {
                b'0' => {}
                b'1' => bits |= 1,
                _ => return Err(FockError::BadBitString(s.to_string())),
            }
        }
        Configuration::new(n, bits)
    }
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The `rank`-th weight-`m` configuration on `n` qubits in ascending
/// numeric order.
pub fn unrank(n: usize, m: usize, mut rank: u64) -> Result<Configuration, FockError> {
    let total = binomial(n, m).ok_or(FockError::SupportTooLarge { n, m })?;
    if rank >= total {
        return Err(FockError::SupportTooLarge { n, m });
    }
    let mut c = Configuration::vacuum(n)?;
    let mut left = m;
    for q in 0..n {
        if left == 0 {
            break;
        }
        let rem = n - 1 - q;
        // configurations with a 0 here sort first
        let zeros = binomial(rem, left).unwrap_or(u64::MAX);
        if rank >= zeros {
            rank -= zeros;
            c = c.flipped(q);
            left -= 1;
        }
    }
    Ok(c)
}

/// All weight-`m` configurations on `n` qubits in ascending order.
pub fn configurations_of_weight(n: usize, m: usize) -> Result<Vec<Configuration>, FockError> {
    let total = binomial(n, m)
        .filter(|&t| t <= 1 << 26)
        .ok_or(FockError::SupportTooLarge { n, m })?;
    (0..total).map(|r| unrank(n, m, r)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    /// Rescale to unit norm instead of rejecting unnormalized input.
    pub auto_normalize: bool,
    pub zero_threshold: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            auto_normalize: false,
            zero_threshold: DEFAULT_ZERO_THRESHOLD,
        }
    }
}

/// Output of [`validate_target`]: the state plus the terms that fell below
/// the zero threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub state: TargetState,
    pub dropped: Vec<(Configuration, f64)>,
}

/// A normalized real superposition of weight-`m` configurations on `n`
/// qubits. Terms are kept sorted by configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetState {
    n: usize,
    m: usize,
    terms: Vec<(Configuration, f64)>,
}

/// Check and canonicalize a raw term list.
pub fn validate_target<I>(
    raw: I,
    n: usize,
    m: usize,
    opts: &ValidateOptions,
) -> Result<Validated, FockError>
where
    I: IntoIterator<Item = (Configuration, f64)>,
{
    if n == 0 || n > MAX_QUBITS {
        return Err(FockError::InvalidQubitCount(n));
    }
    if m > n {
        return Err(FockError::TooManyElectrons { n, m });
    }
    let mut terms: Vec<(Configuration, f64)> = raw.into_iter().collect();
    if terms.is_empty() {
        return Err(FockError::Empty);
    }
    for &(config, amp) in &terms {
        if config.n() != n {
            return Err(FockError::LengthMismatch {
                config,
                expected: n,
                found: config.n(),
            });
        }
        if config.weight() != m {
            return Err(FockError::WrongWeight {
                config,
                expected: m,
                found: config.weight(),
            });
        }
        if !amp.is_finite() {
            return Err(FockError::NonFinite(config));
        }
    }
    terms.sort_by_key(|a| a.0);
    if let Some(w) = terms.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(FockError::Duplicate(w[0].0));
    }

    let norm_sq = sum_sq(&terms);
    if !opts.auto_normalize && (norm_sq - 1.0).abs() > NORM_TOLERANCE {
        return Err(FockError::NotNormalized { norm_sq });
    }
    if norm_sq == 0.0 {
        return Err(FockError::Empty);
    }
    rescale(&mut terms, norm_sq);

    let (kept, dropped): (Vec<_>, Vec<_>) = terms
        .into_iter()
        .partition(|&(_, a)| a.abs() >= opts.zero_threshold);
    let mut terms = kept;
    if terms.is_empty() {
        return Err(FockError::Empty);
    }
    if !dropped.is_empty() {
        let s = sum_sq(&terms);
        rescale(&mut terms, s);
    }
    Ok(Validated {
        state: TargetState { n, m, terms },
        dropped,
    })
}

fn sum_sq(terms: &[(Configuration, f64)]) -> f64 {
    terms.iter().map(|&(_, a)| a * a).sum()
}

fn rescale(terms: &mut [(Configuration, f64)], norm_sq: f64) {
    // leave already-normalized input bit-identical
    if (norm_sq - 1.0).abs() > 1e-12 {
        let s = norm_sq.sqrt();
        for t in terms.iter_mut() {
            t.1 /= s;
        }
    }
}

impl TargetState {
    /// Strict construction with default options.
    pub fn new<I>(n: usize, m: usize, terms: I) -> Result<Self, FockError>
    where
        I: IntoIterator<Item = (Configuration, f64)>,
    {
        validate_target(terms, n, m, &ValidateOptions::default()).map(|v| v.state)
    }

    /// Parse `(bitstring, amplitude)` pairs; `n` is taken from the strings.
    pub fn from_bitstrings(m: usize, terms: &[(&str, f64)]) -> Result<Self, FockError> {
        let parsed = terms
            .iter()
            .map(|&(s, a)| s.parse::<Configuration>().map(|c| (c, a)))
            .collect::<Result<Vec<_>, _>>()?;
        let n = parsed.first().map(|t| t.0.n()).ok_or(FockError::Empty)?;
        Self::new(n, m, parsed)
    }

    /// Equal-amplitude superposition over every weight-`m` configuration.
    pub fn uniform(n: usize, m: usize) -> Result<Self, FockError> {
        let configs = configurations_of_weight(n, m)?;
        let a = 1.0 / (configs.len() as f64).sqrt();
        Ok(TargetState {
            n,
            m,
            terms: configs.into_iter().map(|c| (c, a)).collect(),
        })
    }

    pub fn single(config: Configuration) -> Self {
        TargetState {
            n: config.n(),
            m: config.weight(),
            terms: vec![(config, 1.0)],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[(Configuration, f64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, config: &Configuration) -> f64 {
        self.terms
            .binary_search_by(|t| t.0.cmp(config))
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    pub fn norm_sq(&self) -> f64 {
        sum_sq(&self.terms)
    }

    /// `X` on every qubit: weight `m` becomes `n − m`.
    pub fn complement(&self) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|&(c, a)| (c.complement(), a))
            .collect();
        terms.sort_by_key(|a| a.0);
        TargetState {
            n: self.n,
            m: self.n - self.m,
            terms,
        }
    }
}

/// `|ψ⟩ = c0·|0⟩⊗sub0 + c1·|1⟩⊗sub1` with `c0, c1 ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSplit {
    pub c0: f64,
    pub c1: f64,
    /// `n − 1` qubits, `m` electrons; `None` when no term has qubit 0 empty.
    pub sub0: Option<TargetState>,
    /// `n − 1` qubits, `m − 1` electrons; `None` when no term has qubit 0 occupied.
    pub sub1: Option<TargetState>,
}

impl BranchSplit {
    /// Rebuild the parent amplitudes from the two branches.
    pub fn recombine(&self) -> Vec<(Configuration, f64)> {
        let mut out = Vec::new();
        for (coef, sub, bit) in [(self.c0, &self.sub0, false), (self.c1, &self.sub1, true)] {
            if let Some(sub) = sub {
                for &(c, a) in sub.terms() {
                    // tails come from parents of at most 64 qubits
                    out.push((c.with_leading(bit).expect("width"), coef * a));
                }
            }
        }
        out.sort_by_key(|a| a.0);
        out
    }
}

/// Factor out qubit 0.
pub fn split_leading_qubit(state: &TargetState) -> Result<BranchSplit, FockError> {
    if state.n < 2 {
        return Err(FockError::TooFewQubits {
            needed: 2,
            found: state.n,
        });
    }
    let mut zero = Vec::new();
    let mut one = Vec::new();
    for &(c, a) in &state.terms {
        let tail = c.tail().expect("n >= 2");
        if c.leading() {
            one.push((tail, a));
        } else {
            zero.push((tail, a));
        }
    }
    let (c0, sub0) = branch(zero, state.n - 1, state.m);
    let (c1, sub1) = branch(one, state.n - 1, state.m.saturating_sub(1));
    Ok(BranchSplit { c0, c1, sub0, sub1 })
}

fn branch(mut terms: Vec<(Configuration, f64)>, n: usize, m: usize) -> (f64, Option<TargetState>) {
    if terms.is_empty() {
        return (0.0, None);
    }
    let c = sum_sq(&terms).sqrt();
    for t in terms.iter_mut() {
        t.1 /= c;
    }
    // tails of a sorted list stay sorted within one branch
    (c, Some(TargetState { n, m, terms }))
}
