//! Forge a random standard automorphism, hand only its generator images to the
//! decomposer, and print the certificate as JSON.
//!
//! `cargo run --example decompose -- A2 F4 7`

use chevalley::decomposer::{forge_random, Decomposer};
use chevalley::json;
use chevalley::liealg::AdjointAlgebra;
use chevalley::rings::FiniteRing;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let system = args.first().map_or("A2", String::as_str);
    let ring = args.get(1).map_or("Z/6", String::as_str);
    let seed: u64 = args.get(2).map_or(Ok(3), |s| s.parse())?;

    let alg = AdjointAlgebra::parse(system)?;
    let r = FiniteRing::parse(ring)?;
    let (spec, source) = forge_random(&alg, &r, seed)?;
    eprintln!("forged {} with {} generator images", source.kind(), spec.images.len());

    let engine = Decomposer::new(&alg, &r)?;
    match engine.certify(&spec) {
        Ok(cert) => {
            for f in &cert.factors {
                eprintln!("factor {}: symmetry {:?}, {} via {} equations", f.ring, f.symmetry.permutation, f.method, f.equations);
            }
            print!("{}", json::render(&json::certificate_json(alg.sys(), &cert)));
        }
        Err(e) => {
            print!("{}", json::render(&json::failure_json(&e)));
            std::process::exit(3);
        }
    }
    Ok(())
}
