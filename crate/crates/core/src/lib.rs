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

//! Synthesis of quantum circuits that prepare fixed-electron-number states.
//!
//! A target is a real superposition of `m`-electron configurations on `n`
//! spin orbitals, one qubit per orbital. [`synth::synthesize`] returns a
//! circuit of X, CNOT, single-qubit rotation and controlled-reflection gates
//! preparing it from `|0…0⟩`, checked by statevector simulation.
//!
//! ```
//! use fockprep::fock::TargetState;
//! use fockprep::synth::{synthesize, SynthOptions};
//!
//! let state = TargetState::from_bitstrings(
//!     1,
//!     &[("001", (1.0f64 / 3.0).sqrt()), ("010", (1.0f64 / 6.0).sqrt()), ("100", 0.5f64.sqrt())],
//! )
//! .unwrap();
//! let report = synthesize(&state, &SynthOptions::default()).unwrap();
//! assert_eq!(report.counts.cnot_total(), 3);
//! assert!(report.fidelity.unwrap() > 1.0 - 1e-12);
//! ```

pub mod circuit;
pub mod fock;
pub mod jordan_wigner;
pub mod scaling;
pub mod sim;
pub mod synth;
pub mod workbench;
