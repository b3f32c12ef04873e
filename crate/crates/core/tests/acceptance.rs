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

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary (`harness = false`).

mod common;

use std::time::{Duration, Instant};

use common::{dense_run, kinds, max_abs_diff, oracle_fidelity, random_circuit, random_vector, rng};
use fockprep::circuit::{decompose_ch, invert, Gate};
use fockprep::fock::{binomial, Configuration, TargetState};
use fockprep::jordan_wigner::{apply_ladder, FockVector, LadderOp};
use fockprep::scaling::{asymptotic, closed_forms, crossovers, total_bound};
use fockprep::sim::{fidelity, run, DenseState, SparseState};
use fockprep::synth::{synthesize, SynthOptions};
use fockprep::workbench::gen::{gen_paired, gen_random, gen_singlet, Support};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_prune() -> SynthOptions {
    SynthOptions {
        prune: false,
        ..Default::default()
    }
}

fn bell_states() -> Outcome {
    let mut r = rng(1);
    for _ in 0..100 {
        let theta: f64 = r.random_range(0.0..std::f64::consts::TAU);
        let (a, b) = (theta.cos(), theta.sin());
        if a.abs() < 1e-3 || b.abs() < 1e-3 {
            continue;
        }
        let s =
            TargetState::from_bitstrings(1, &[("10", a), ("01", b)]).map_err(|e| e.to_string())?;
        let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
        let f = oracle_fidelity(&rep.circuit, &s);
        ensure(rep.counts.cnot_total() == 1 && f >= 1.0 - 1e-12, || {
            format!(
                "a={a}, b={b}: cnot_total={} fidelity={f}",
                rep.counts.cnot_total()
            )
        })?;
    }
    Ok("100 states, cnot_total=1".into())
}

fn worked_example() -> Outcome {
    let s = TargetState::from_bitstrings(
        1,
        &[
            ("001", (1.0f64 / 3.0).sqrt()),
            ("010", (1.0f64 / 6.0).sqrt()),
            ("100", 0.5f64.sqrt()),
        ],
    )
    .map_err(|e| e.to_string())?;
    let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
    let f = oracle_fidelity(&rep.circuit, &s);
    let forward = invert(&rep.circuit);
    let seq = kinds(&forward);
    // X(0) CNOT(0,1) CNOT(1,2) CH(0,1) then a Hadamard on qubit 0 as U X U
    let expected = ["X0", "CNOT01", "CNOT12", "CH01", "U0", "X0", "U0"];
    ensure(seq == expected, || format!("transform sequence {seq:?}"))?;
    let pi8 = std::f64::consts::FRAC_PI_8;
    let hadamard = matches!(forward.gates()[4], Gate::Rotation { u, v, .. }
        if (u - pi8.cos()).abs() < 1e-14 && (v - pi8.sin()).abs() < 1e-14);
    ensure(hadamard, || "final reflection is not a Hadamard".into())?;
    let c = rep.counts;
    ensure(
        c.cnot_total() == 3 && c.grand_total() <= 9 && f >= 1.0 - 1e-12,
        || {
            format!(
                "cnot_total={} grand_total={} fidelity={f}",
                c.cnot_total(),
                c.grand_total()
            )
        },
    )?;
    Ok(format!(
        "cnot_total=3 grand_total={} fidelity={f:.15}",
        c.grand_total()
    ))
}

fn one_electron_exact() -> Outcome {
    let mut seen = Vec::new();
    for n in 3..=12 {
        let s = gen_random(n, 1, Support::Full, 100 + n as u64).map_err(|e| e.to_string())?;
        let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
        let c = rep.counts;
        ensure(
            c.cnot_total() == 2 * n - 3 && c.grand_total() <= 4 * n - 3,
            || {
                format!(
                    "n={n}: cnot_total={} grand_total={}",
                    c.cnot_total(),
                    c.grand_total()
                )
            },
        )?;
        seen.push(format!("{n}:{}/{}", c.cnot_total(), c.grand_total()));
    }
    Ok(format!("n:cnot/total {}", seen.join(" ")))
}

fn two_electron_bound() -> Outcome {
    let mut seen = Vec::new();
    let mut bad = Vec::new();
    for n in 4..=10 {
        let s = gen_random(n, 2, Support::Full, 200 + n as u64).map_err(|e| e.to_string())?;
        let rep = synthesize(&s, &no_prune()).map_err(|e| e.to_string())?;
        let (_, bound) = closed_forms(n, 2).map_err(|e| e.to_string())?;
        let got = rep.counts.cnot_total() as u64;
        seen.push(format!("{n}:{got}<={bound}"));
        if got > bound {
            bad.push(format!("n={n}: cnot_total={got} > {bound}"));
        }
    }
    if bad.is_empty() {
        Ok(seen.join(" "))
    } else {
        Err(bad.join("; "))
    }
}

fn general_bound() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = r.random_range(1..=10usize);
        let m = r.random_range(1..=n.min(4));
        let total = binomial(n, m).expect("small");
        let k = r.random_range(1..=total);
        let s = gen_random(n, m, Support::Count(k), 500 + i).map_err(|e| e.to_string())?;
        let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
        let bound = total_bound(n, m).map_err(|e| e.to_string())?;
        let f = oracle_fidelity(&rep.circuit, &s);
        let g = rep.counts.grand_total() as u128;
        worst = worst.max(g as f64 / bound as f64);
        ensure(g <= bound && f >= 1.0 - 1e-9, || {
            format!("n={n} m={m} K={k}: grand_total={g} bound={bound} fidelity={f}")
        })?;
    }
    Ok(format!("200 states, max grand_total/bound={worst:.3}"))
}

fn asymptotic_values() -> Outcome {
    let a = asymptotic(20, 2).1;
    let b = asymptotic(14, 6).1;
    ensure(a == 800.0 && (669_000.0..=670_000.0).contains(&b), || {
        format!("cnot(20,2)={a} cnot(14,6)={b}")
    })?;
    Ok(format!("cnot(20,2)={a} cnot(14,6)={b:.2}"))
}

fn h2_shaped() -> Outcome {
    let mut notes = Vec::new();
    let states = [
        (
            "singlet16",
            gen_singlet(10, 16, 2024).map_err(|e| e.to_string())?,
        ),
        (
            "paired10",
            gen_paired(10, 1, 10, 2024).map_err(|e| e.to_string())?,
        ),
    ];
    for (name, s) in states {
        let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
        // dense check at n = 20 with the library simulator and the reference one
        let dense = run(
            &rep.circuit,
            DenseState::zero(20).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let f_lib = fidelity(&dense, &SparseState::from_target(&s)).map_err(|e| e.to_string())?;
        let f_ref = oracle_fidelity(&rep.circuit, &s);
        let c = rep.counts.cnot_total();
        ensure(
            c <= 100 && f_lib >= 1.0 - 1e-9 && f_ref >= 1.0 - 1e-9,
            || format!("{name}: cnot_total={c} fidelity={f_lib}/{f_ref}"),
        )?;
        notes.push(format!(
            "{name}: {} configs cnot_total={c} single_qubit_total={}",
            s.len(),
            rep.counts.single_qubit_total()
        ));
    }
    Ok(notes.join("; "))
}

fn h2o_shaped() -> Outcome {
    let s = gen_random(14, 6, Support::Count(152), 7).map_err(|e| e.to_string())?;
    let rep = synthesize(&s, &SynthOptions::default()).map_err(|e| e.to_string())?;
    let f = oracle_fidelity(&rep.circuit, &s);
    let c = rep.counts.cnot_total();
    ensure(c <= 15_000 && f >= 1.0 - 1e-9, || {
        format!("cnot_total={c} fidelity={f}")
    })?;
    Ok(format!(
        "cnot_total={c} vs asymptotic {:.0}, fidelity={f:.12}",
        asymptotic(14, 6).1
    ))
}

fn random_fock_vector(r: &mut impl Rng, n: usize) -> FockVector {
    let mut v = FockVector::new();
    for _ in 0..r.random_range(1..=8) {
        let bits = r.random_range(0..1u64 << n);
        v.insert(
            Configuration::new(n, bits).expect("in range"),
            r.random_range(-1.0..1.0),
        );
    }
    v
}

fn negated(v: &FockVector) -> FockVector {
    v.iter().map(|(&c, &a)| (c, -a)).collect()
}

fn jordan_wigner_algebra() -> Outcome {
    let mut r = rng(9);
    let ap = |op, s: &FockVector, n| apply_ladder(op, s, n).map_err(|e| e.to_string());
    for _ in 0..200 {
        let n = r.random_range(2..=10usize);
        let s = random_fock_vector(&mut r, n);
        let i = r.random_range(1..=n);
        let mut j = r.random_range(1..=n);
        while j == i {
            j = r.random_range(1..=n);
        }
        let (ci, cj) = (LadderOp::create(i), LadderOp::create(j));
        let ij = ap(ci, &ap(cj, &s, n)?, n)?;
        let ji = ap(cj, &ap(ci, &s, n)?, n)?;
        ensure(ij == negated(&ji), || {
            format!("a+{i} a+{j} on n={n} does not anticommute")
        })?;
        let (ai, aj) = (LadderOp::annihilate(i), LadderOp::annihilate(j));
        let ij = ap(ai, &ap(cj, &s, n)?, n)?;
        let ji = ap(cj, &ap(ai, &s, n)?, n)?;
        ensure(ij == negated(&ji), || {
            format!("a{i} a+{j} on n={n} does not anticommute")
        })?;
        let ij = ap(ai, &ap(aj, &s, n)?, n)?;
        let ji = ap(aj, &ap(ai, &s, n)?, n)?;
        ensure(ij == negated(&ji), || {
            format!("a{i} a{j} on n={n} does not anticommute")
        })?;
        ensure(ap(ci, &ap(ci, &s, n)?, n)?.is_empty(), || {
            format!("a+{i} squared is nonzero")
        })?;
        ensure(ap(ai, &ap(ai, &s, n)?, n)?.is_empty(), || {
            format!("a{i} squared is nonzero")
        })?;
    }
    Ok("200 cases".into())
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(10);
    let mut worst_inv = 0.0f64;
    let mut worst_dec = 0.0f64;
    for _ in 0..500 {
        let n = r.random_range(1..=10usize);
        let c = random_circuit(&mut r, n, 40);
        let psi = random_vector(&mut r, n);
        let there = DenseState::from_amplitudes(
            n,
            psi.iter()
                .map(|&x| num_complex::Complex64::new(x, 0.0))
                .collect(),
        )
        .map_err(|e| e.to_string())?;
        let back = run(&invert(&c), run(&c, there).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let back: Vec<f64> = back.amplitudes().iter().map(|a| a.re).collect();
        worst_inv = worst_inv.max(max_abs_diff(&back, &psi));
        let direct = dense_run(&c, psi.clone());
        let lowered = dense_run(&decompose_ch(&c), psi);
        worst_dec = worst_dec.max(max_abs_diff(&direct, &lowered));
    }
    ensure(worst_inv <= 1e-10 && worst_dec <= 1e-12, || {
        format!("invert error {worst_inv:e}, decompose error {worst_dec:e}")
    })?;
    Ok(format!(
        "500 circuits, invert error {worst_inv:.1e}, decompose error {worst_dec:.1e}"
    ))
}

fn crossover_predicates() -> Outcome {
    let c = crossovers(20, 2, None);
    ensure(c.beats_full_hilbert && c.beats_ortiz, || {
        format!("(20,2) gave {c:?}")
    })?;
    for n in 1..=64 {
        for m in 1..=n {
            let b = crossovers(n, m, None).beats_ortiz;
            ensure(b == (n > 2 * m), || format!("beats_ortiz({n},{m})={b}"))?;
        }
    }
    Ok("(20,2)=(true,true); beats_ortiz <=> n>2m for n<=64".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "Bell-type states",
            budget: Duration::from_secs(1),
            check: bell_states,
        },
        Criterion {
            id: 2,
            name: "three-qubit worked example",
            budget: Duration::from_secs(1),
            check: worked_example,
        },
        Criterion {
            id: 3,
            name: "one-electron scaling is exact",
            budget: Duration::from_secs(5),
            check: one_electron_exact,
        },
        Criterion {
            id: 4,
            name: "two-electron CNOT bound",
            budget: Duration::from_secs(30),
            check: two_electron_bound,
        },
        Criterion {
            id: 5,
            name: "general bound honor",
            budget: Duration::from_secs(120),
            check: general_bound,
        },
        Criterion {
            id: 6,
            name: "asymptotic spot values",
            budget: Duration::from_secs(1),
            check: asymptotic_values,
        },
        Criterion {
            id: 7,
            name: "H2-shaped pruning win",
            budget: Duration::from_secs(60),
            check: h2_shaped,
        },
        Criterion {
            id: 8,
            name: "H2O-shaped pruning win",
            budget: Duration::from_secs(60),
            check: h2o_shaped,
        },
        Criterion {
            id: 9,
            name: "Jordan-Wigner algebra",
            budget: Duration::from_secs(5),
            check: jordan_wigner_algebra,
        },
        Criterion {
            id: 10,
            name: "oracle equivalence",
            budget: Duration::from_secs(30),
            check: oracle_equivalence,
        },
        Criterion {
            id: 11,
            name: "crossover predicates",
            budget: Duration::from_secs(1),
            check: crossover_predicates,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.budget => Err(format!(
                "{detail}; took {:.2}s, budget {:.0}s",
                took.as_secs_f64(),
                c.budget.as_secs_f64()
            )),
            o => o,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {:>2} {} ({:.2}s): {detail}",
                c.id,
                c.name,
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL criterion {:>2} {} ({:.2}s): {why}",
                    c.id,
                    c.name,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
