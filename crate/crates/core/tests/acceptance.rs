//! One line per acceptance criterion; exits nonzero if any criterion fails.

#[path = "common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chevalley::decomposer::{forge_random, Decomposer};
use chevalley::group::{Character, ChevalleyGroup};
use chevalley::liealg::AdjointAlgebra;
use chevalley::matrix::Matrix;
use chevalley::rings::{FiniteRing, Integers, Ring};
use chevalley::verify::{parallel_map, run_suite, threads_from_env, Suite};
use num_bigint::BigInt;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pairs(systems: &[&str], rings: &[&str]) -> Vec<(String, String)> {
    systems.iter().flat_map(|s| rings.iter().map(move |r| (s.to_string(), r.to_string()))).collect()
}

fn suites(list: &[(Suite, Vec<(String, String)>)], seed: u64) -> Outcome {
    let threads = threads_from_env();
    let mut checks = 0;
    let mut bad = Vec::new();
    for (suite, cases) in list {
        match run_suite(*suite, cases, threads, seed) {
            Ok(rep) => {
                checks += rep.checks();
                for c in rep.cases.iter().filter(|c| c.failures > 0) {
                    bad.push(format!("{} {}/{}: {} failures", suite.name(), c.system, c.ring, c.failures));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", suite.name())),
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { format!("{checks} checks, 0 failures") } else { bad.join("; ") } }
}

fn anchors() -> Outcome {
    let mut bad = Vec::new();
    for (system, expected) in [("A2", vec![1, 1, -1, -1, -1, -1, 1, 1]), ("B2", vec![1, 1, -1, -1, -1, -1, 1, 1, 1, 1])] {
        let alg = AdjointAlgebra::parse(system).unwrap();
        let a1 = alg.sys().simple(0);
        let z = ChevalleyGroup::new(&alg, Integers);
        let h = z.torus_coroot(a1, &BigInt::from(-1)).unwrap();
        let want = Matrix::from_fn(expected.len(), expected.len(), |i, j| BigInt::from(if i == j { expected[i] } else { 0 }));
        if h.matrix != want {
            bad.push(format!("{system} over Z"));
        }
        let r = FiniteRing::parse("Z/5").unwrap();
        let g = ChevalleyGroup::new(&alg, r.clone());
        let h5 = g.torus(&Character::coroot(&alg, &r, a1, &r.from_i64(-1)).unwrap()).unwrap();
        if h5.matrix != want.map(|x| r.from_i64(i64::try_from(x.clone()).unwrap())) {
            bad.push(format!("{system} over Z/5"));
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "h_α1(-1) diagonals for A2 and B2 over Z and Z/5".into() } else { bad.join(", ") } }
}

const ROUND_TRIPS: [(&str, &str); 6] = [("A2", "Z/5"), ("B2", "Z/5"), ("G2", "Z/7"), ("A3", "Z/4"), ("A2", "F4"), ("A2", "Z/6")];

fn round_trips() -> Outcome {
    let mut bad = Vec::new();
    let mut frobenius = 0;
    let mut mixed = 0;
    let mut total = 0;
    for (system, ring) in ROUND_TRIPS {
        let alg = AdjointAlgebra::parse(system).unwrap();
        let r = FiniteRing::parse(ring).unwrap();
        let engine = Decomposer::new(&alg, &r).unwrap();
        let seeds: Vec<u64> = (0..100).collect();
        let results = parallel_map(&seeds, threads_from_env(), |&seed| {
            let (spec, _) = forge_random(&alg, &r, seed).unwrap();
            let cert = engine.certify(&spec).map_err(|e| format!("{system}/{ring} seed {seed}: {e}"))?;
            // independent replay of the certificate on every supplied image
            let auto = cert.automorphism();
            let grp = engine.group();
            for (&(a, t), img) in &spec.images {
                if auto.apply(grp, &grp.unipotent(a, &t)).matrix != img.matrix {
                    return Err(format!("{system}/{ring} seed {seed}: replay mismatch"));
                }
            }
            let syms: Vec<_> = cert.factors.iter().map(|f| f.symmetry.clone()).collect();
            Ok((!cert.ring_map.is_identity(), syms.windows(2).any(|w| w[0] != w[1])))
        });
        for res in results {
            total += 1;
            match res {
                Ok((nontrivial_rho, mixed_delta)) => {
                    frobenius += usize::from(ring == "F4" && nontrivial_rho);
                    mixed += usize::from(ring == "Z/6" && mixed_delta);
                }
                Err(e) => bad.push(e),
            }
        }
    }
    if frobenius == 0 {
        bad.push("no F4 run exercised the Frobenius".into());
    }
    if mixed == 0 {
        bad.push("no Z/6 run exercised a mixed graph".into());
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{total} certificates, all exact; {frobenius} with Frobenius over F4, {mixed} with mixed δ over Z/6")
        } else {
            bad.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    }
}

fn kernel_transport() -> Outcome {
    let alg = AdjointAlgebra::parse("A2").unwrap();
    let mut bad = Vec::new();
    let mut certified = 0;
    let mut checked = 0u64;
    for (ring, runs) in [("Z/6", 100u64), ("Z/12", 50)] {
        let r = FiniteRing::parse(ring).unwrap();
        let engine = Decomposer::new(&alg, &r).unwrap();
        let grp = engine.group();
        let ideals = r.maximal_ideals();
        for seed in 0..runs {
            let (spec, source) = forge_random(&alg, &r, seed).unwrap();
            let cert = match engine.certify(&spec) {
                Ok(c) => c,
                Err(e) => {
                    bad.push(format!("{ring} seed {seed}: {e}"));
                    continue;
                }
            };
            certified += 1;
            for (i, (ideal, _)) in ideals.iter().enumerate() {
                let (_, to_j) = &ideals[cert.transport[i]];
                let id = Matrix::identity(&to_j.target, alg.dim());
                for a in 0..alg.sys().num_roots() {
                    for &t in &ideal.members {
                        checked += 1;
                        let img = source.apply(grp, &grp.unipotent(a, &t));
                        if img.matrix.map(|&x| to_j.apply(x)) != id {
                            bad.push(format!("{ring} seed {seed}: generator of N_m{i} escapes N_m{}", cert.transport[i]));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { format!("{certified} certified instances, {checked} generator images in the matched kernel") } else { bad.into_iter().take(5).collect::<Vec<_>>().join("; ") },
    }
}

fn negative_controls() -> Outcome {
    let controls = common::negative_controls();
    let mut bad = Vec::new();
    let mut stages = std::collections::BTreeMap::new();
    for c in &controls {
        let alg = AdjointAlgebra::parse(c.system).unwrap();
        let engine = Decomposer::new(&alg, &c.spec.ring).unwrap();
        match engine.certify(&c.spec) {
            Ok(_) => bad.push(format!("false certificate: {}", c.name)),
            Err(e) => *stages.entry(e.stage.name()).or_insert(0) += 1,
        }
    }
    if controls.len() < 10 {
        bad.push(format!("only {} controls", controls.len()));
    }
    let tally: Vec<String> = stages.iter().map(|(s, n)| format!("{s} {n}")).collect();
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} controls refused ({})", controls.len(), tally.join(", ")) } else { bad.join("; ") },
    }
}

fn main() -> ExitCode {
    let laws_cases = pairs(&["A2", "B2", "A3", "G2"], &["Z/4", "Z/5", "Z/7", "F4"]);
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("explicit-matrix anchors", Duration::from_secs(1), Box::new(anchors)),
        (
            "generator laws: one-parameter, torus conjugation, Weyl conjugation",
            Duration::from_secs(60),
            Box::new(move || suites(&[(Suite::Laws, laws_cases.clone()), (Suite::Eq1, laws_cases.clone()), (Suite::Weyl, laws_cases.clone())], 0)),
        ),
        (
            "Lie algebra integrity: Jacobi, |N| = p+1, divided powers",
            Duration::from_secs(120),
            Box::new(|| suites(&[(Suite::Jacobi, pairs(&["A2", "B2", "A3", "G2", "C3", "D4", "F4"], &["Z"]))], 2024)),
        ),
        (
            "recovery of X_α matches the integer oracle",
            Duration::from_secs(60),
            Box::new(|| {
                let mut cases = pairs(&["A2", "B2", "F4", "G2"], &["Z/5", "Z/7"]);
                cases.extend(pairs(&["A3", "D4"], &["Z/2", "Z/4"]));
                suites(&[(Suite::Recover, cases)], 0)
            }),
        ),
        ("decomposer round trip, 100 seeds per configuration", Duration::from_secs(600), Box::new(round_trips)),
        ("kernel transport over Z/6 and Z/12", Duration::from_secs(600), Box::new(kernel_transport)),
        ("negative controls refused with a stage tag", Duration::from_secs(60), Box::new(negative_controls)),
    ];
    let mut all = true;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.ok && took <= *budget;
        all &= ok;
        let budget_note = if took > *budget { format!(" (over budget {:.0} s)", budget.as_secs_f64()) } else { String::new() };
        println!(
            "criterion {} {} {:<66} {:>8.2} s  {}{}",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            took.as_secs_f64(),
            out.detail,
            budget_note
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
