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

//! The `fockprep` command line.
//!
//! Exit codes: 0 success, 1 I/O failure or failed verification, 2 invalid
//! input (usage, malformed or invalid files), 3 synthesis diverged.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use super::format::{
    circuit_to_string, norm, parse_circuit, parse_sparse, parse_target, sparse_to_json,
    target_to_json, CircuitFormat,
};
use super::gen::{gen_paired, gen_random, gen_singlet, Support};
use crate::circuit::{count, Circuit, Counts};
use crate::fock::{TargetState, ValidateOptions, DEFAULT_ZERO_THRESHOLD};
use crate::jordan_wigner::{build_state, OpString};
use crate::scaling::{bound_report, crossovers};
use crate::sim::{run as simulate, SparseState};
use crate::synth::{prepared_fidelity, synthesize, SynthError, SynthOptions};

#[derive(Parser)]
#[command(
    name = "fockprep",
    version,
    about = "Synthesize and check circuits that prepare fixed-electron-number states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a preparation circuit for a state file.
    Synth(SynthArgs),
    /// Check that a circuit prepares a state from |0…0⟩.
    Verify(VerifyArgs),
    /// Run a circuit and write the final state.
    Simulate(SimulateArgs),
    /// Print the gate histogram of a circuit.
    Count(CountArgs),
    /// Print gate-count bounds for n qubits and m electrons.
    Bound(BoundArgs),
    /// Generate a seeded random target state.
    Gen(GenArgs),
    /// Build a state from fermionic creation strings.
    Jw(JwArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Amplitude and branch weight treated as zero.
    #[arg(long, default_value_t = DEFAULT_ZERO_THRESHOLD)]
    tol: f64,
    /// Keep empty branches (worst-case gate counts).
    #[arg(long)]
    no_prune: bool,
    /// Skip the simulated fidelity check.
    #[arg(long)]
    no_verify: bool,
    /// Rescale unnormalized input instead of rejecting it.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    state: PathBuf,
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// `zero` or a state file.
    #[arg(long, default_value = "zero")]
    initial: String,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    circuit: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Support size for the support-aware comparison.
    #[arg(long)]
    support: Option<u64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["full", "support", "paired", "singlet"])))]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Every weight-m configuration.
    #[arg(long)]
    full: bool,
    /// K uniformly chosen configurations.
    #[arg(long, value_name = "K")]
    support: Option<u64>,
    /// K closed-shell configurations (n and m even).
    #[arg(long, value_name = "K")]
    paired: Option<u64>,
    /// K-configuration two-electron singlet (n even, m = 2).
    #[arg(long, value_name = "K")]
    singlet: Option<u64>,
    #[arg(long, env = "FOCKPREP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct JwArgs {
    #[arg(long)]
    n: usize,
    /// `[coef:] a+ j a+ k …`; repeat for a linear combination.
    #[arg(long, required = true, allow_hyphen_values = true)]
    ops: Vec<String>,
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    output: PathBuf,
}

enum Failure {
    Io(String),
    Input(String),
    Diverged(String),
    /// Completed, but the answer is negative.
    Rejected,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(_) | Failure::Rejected => 1,
            Failure::Input(_) => 2,
            Failure::Diverged(_) => 3,
        }
    }
}

fn input(context: &Path, e: impl Display) -> Failure {
    Failure::Input(format!("{}: {e}", context.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_target(path: &Path, opts: &ValidateOptions) -> Result<TargetState, Failure> {
    parse_target(&read(path)?, opts).map_err(|e| input(path, e))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    parse_circuit(&read(path)?).map_err(|e| input(path, e))
}

struct Printer<'a>(&'a mut dyn Write);

impl Printer<'_> {
    fn kv(&mut self, key: &str, value: impl Display) {
        // stdout going away is not worth a failure code
        let _ = writeln!(self.0, "{key}={value}");
    }

    fn counts(&mut self, c: &Counts) {
        self.kv("x", c.x);
        self.kv("cnot", c.cnot);
        self.kv("one_qubit", c.one_qubit);
        self.kv("ch", c.ch);
        self.kv("gates", c.gates());
        self.kv("cnot_total", c.cnot_total());
        self.kv("single_qubit_total", c.single_qubit_total());
        self.kv("grand_total", c.grand_total());
    }
}

/// Run with process arguments; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut p = Printer(out);
    let result = match cli.command {
        Command::Synth(a) => cmd_synth(a, &mut p),
        Command::Verify(a) => cmd_verify(a, &mut p),
        Command::Simulate(a) => cmd_simulate(a, &mut p),
        Command::Count(a) => cmd_count(a, &mut p),
        Command::Bound(a) => cmd_bound(a, &mut p),
        Command::Gen(a) => cmd_gen(a, &mut p),
        Command::Jw(a) => cmd_jw(a, &mut p),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Io(m) | Failure::Input(m) | Failure::Diverged(m) => {
                    let _ = writeln!(err, "error: {m}");
                }
                Failure::Rejected => {}
            }
            f.code()
        }
    }
}

fn cmd_synth(a: SynthArgs, p: &mut Printer) -> Result<(), Failure> {
    let vopts = ValidateOptions {
        auto_normalize: a.normalize,
        ..Default::default()
    };
    let state = load_target(&a.input, &vopts)?;
    let opts = SynthOptions {
        zero_threshold: a.tol,
        prune: !a.no_prune,
        verify: !a.no_verify,
    };
    let report = synthesize(&state, &opts).map_err(|e| match e {
        SynthError::Diverged { .. } => Failure::Diverged(e.to_string()),
        e => input(&a.input, e),
    })?;
    let format = match a.format {
        FormatArg::Json => CircuitFormat::Json,
        FormatArg::Text => CircuitFormat::Text,
    };
    let text = circuit_to_string(&report.circuit, format).map_err(|e| input(&a.output, e))?;
    write(&a.output, &text)?;
    p.kv("n", state.n());
    p.kv("m", state.m());
    p.kv("terms", state.len());
    p.counts(&report.counts);
    p.kv("recursion_nodes", report.recursion_nodes);
    p.kv("pruned_branches", report.pruned_branches);
    if let Some(f) = report.fidelity {
        p.kv("fidelity", f);
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, p: &mut Printer) -> Result<(), Failure> {
    let opts = ValidateOptions {
        auto_normalize: true,
        ..Default::default()
    };
    let state = load_target(&a.state, &opts)?;
    let circuit = load_circuit(&a.circuit)?;
    if circuit.n() != state.n() {
        return Err(Failure::Input(format!(
            "circuit has {} qubits, state has {}",
            circuit.n(),
            state.n()
        )));
    }
    let f = prepared_fidelity(&circuit, &state).map_err(|e| input(&a.circuit, e))?;
    p.kv("fidelity", f);
    if f >= 1.0 - a.tol {
        p.kv("result", "pass");
        Ok(())
    } else {
        p.kv("result", "fail");
        Err(Failure::Rejected)
    }
}

fn cmd_simulate(a: SimulateArgs, p: &mut Printer) -> Result<(), Failure> {
    let circuit = load_circuit(&a.circuit)?;
    let initial = if a.initial == "zero" {
        SparseState::zero(circuit.n()).map_err(|e| input(&a.circuit, e))?
    } else {
        let path = Path::new(&a.initial);
        parse_sparse(&read(path)?).map_err(|e| input(path, e))?
    };
    let state = simulate(&circuit, initial).map_err(|e| input(&a.circuit, e))?;
    let text = sparse_to_json(&state, DEFAULT_ZERO_THRESHOLD).map_err(|e| input(&a.output, e))?;
    write(&a.output, &text)?;
    p.kv("n", circuit.n());
    p.kv("terms", state.len());
    p.kv("norm", norm(&state));
    Ok(())
}

fn cmd_count(a: CountArgs, p: &mut Printer) -> Result<(), Failure> {
    let circuit = load_circuit(&a.circuit)?;
    p.kv("n", circuit.n());
    p.counts(&count(&circuit));
    Ok(())
}

fn cmd_bound(a: BoundArgs, p: &mut Printer) -> Result<(), Failure> {
    let r = bound_report(a.n, a.m).map_err(|e| Failure::Input(e.to_string()))?;
    p.kv("n", r.n);
    p.kv("m", r.m);
    p.kv("recurrence_total", r.recurrence_total);
    if let (Some(t), Some(c)) = (r.closed_total, r.closed_cnot) {
        p.kv("closed_total", t);
        p.kv("closed_cnot", c);
    }
    p.kv("asymptotic_total", r.asymptotic_total);
    p.kv("asymptotic_cnot", r.asymptotic_cnot);
    p.kv("full_hilbert", r.full_hilbert);
    let c = crossovers(a.n, a.m, a.support);
    p.kv("beats_full_hilbert", c.beats_full_hilbert);
    p.kv("beats_ortiz", c.beats_ortiz);
    if let Some(b) = c.beats_ortiz_at_support {
        p.kv("beats_ortiz_at_support", b);
    }
    Ok(())
}

fn cmd_gen(a: GenArgs, p: &mut Printer) -> Result<(), Failure> {
    let halves = || {
        if a.n.is_multiple_of(2) && a.m.is_multiple_of(2) {
            Ok((a.n / 2, a.m / 2))
        } else {
            Err(Failure::Input("paired states need even n and m".into()))
        }
    };
    let state = if a.full {
        gen_random(a.n, a.m, Support::Full, a.seed)
    } else if let Some(k) = a.support {
        gen_random(a.n, a.m, Support::Count(k), a.seed)
    } else if let Some(k) = a.paired {
        let (ns, np) = halves()?;
        gen_paired(ns, np, k, a.seed)
    } else if let Some(k) = a.singlet {
        if a.m != 2 || !a.n.is_multiple_of(2) {
            return Err(Failure::Input(
                "singlet states need even n and m = 2".into(),
            ));
        }
        gen_singlet(a.n / 2, k, a.seed)
    } else {
        unreachable!("clap requires one shape flag")
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    let text = target_to_json(&state).map_err(|e| input(&a.output, e))?;
    write(&a.output, &text)?;
    p.kv("n", state.n());
    p.kv("m", state.m());
    p.kv("terms", state.len());
    p.kv("seed", a.seed);
    Ok(())
}

fn cmd_jw(a: JwArgs, p: &mut Printer) -> Result<(), Failure> {
    let strings = a
        .ops
        .iter()
        .map(|s| s.parse::<OpString>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let opts = ValidateOptions {
        auto_normalize: a.normalize,
        ..Default::default()
    };
    let state = build_state(&strings, a.n, &opts).map_err(|e| Failure::Input(e.to_string()))?;
    let text = target_to_json(&state).map_err(|e| input(&a.output, e))?;
    write(&a.output, &text)?;
    p.kv("n", state.n());
    p.kv("m", state.m());
    p.kv("terms", state.len());
    Ok(())
}
