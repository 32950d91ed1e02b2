use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use chevalley::decomposer::{forge_random, Decomposer};
use chevalley::json;
use chevalley::liealg::AdjointAlgebra;
use chevalley::rings::FiniteRing;
use chevalley::roots::RootSystem;
use chevalley::verify::{run_suite, threads_from_env, Suite};

#[derive(Parser)]
#[command(name = "chev", about = "Adjoint Chevalley groups over finite rings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, Cartan matrix and diagram symmetries.
    Roots {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        output: Output,
    },
    /// Every X_α keyed by root.
    Adjoint {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run an invariant suite over every (system, ring) combination.
    Verify {
        suite: String,
        /// Comma-separated systems.
        #[arg(long)]
        system: String,
        /// Comma-separated rings.
        #[arg(long, default_value = "Z/5")]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock timings (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
    /// A seeded random standard automorphism, as a generator-image spec.
    ForgeRandom {
        #[arg(long)]
        system: String,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Decompose a spec into graph ∘ inner ∘ ring.
    Decompose {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

fn emit(output: &Output, v: &Value) -> Result<(), String> {
    let Format::Json = output.format;
    let text = json::render(v);
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let err = |e: chevalley::error::Error| e.to_string();
    match cli.command {
        Command::Roots { system, output } => {
            emit(&output, &json::roots_json(&RootSystem::parse(&system).map_err(err)?))?;
        }
        Command::Adjoint { system, output } => {
            emit(&output, &json::adjoint_json(&AdjointAlgebra::parse(&system).map_err(err)?))?;
        }
        Command::Verify { suite, system, ring, seed, timing, output } => {
            let suite: Suite = suite.parse().map_err(err)?;
            let split = |s: &str| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect::<Vec<_>>();
            let cases: Vec<(String, String)> =
                split(&system).iter().flat_map(|s| split(&ring).into_iter().map(move |r| (s.clone(), r))).collect();
            let report = run_suite(suite, &cases, threads_from_env(), seed).map_err(err)?;
            emit(&output, &report.to_json(timing))?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::ForgeRandom { system, ring, seed, output } => {
            let alg = AdjointAlgebra::parse(&system).map_err(err)?;
            let r = FiniteRing::parse(&ring).map_err(err)?;
            let (spec, auto) = forge_random(&alg, &r, seed).map_err(err)?;
            let mut v = json::spec_json(alg.sys(), &spec);
            v["source"] = json::automorphism_json(alg.sys(), &r, &auto);
            v["seed"] = seed.into();
            emit(&output, &v)?;
        }
        Command::Decompose { spec, output } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| format!("cannot read {}: {e}", spec.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| format!("spec is not JSON: {e}"))?;
            let spec = json::parse_spec(&v).map_err(err)?;
            let alg = AdjointAlgebra::parse(&spec.system).map_err(err)?;
            let engine = Decomposer::new(&alg, &spec.ring).map_err(err)?;
            match engine.certify(&spec) {
                Ok(cert) => emit(&output, &json::certificate_json(alg.sys(), &cert))?,
                Err(e) => {
                    emit(&output, &json::failure_json(&e))?;
                    eprintln!("refused: {e}");
                    return Ok(ExitCode::from(3));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("chev: {msg}");
            ExitCode::from(2)
        }
    }
}
