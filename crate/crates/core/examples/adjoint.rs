//! The Chevalley basis of the adjoint representation: structure constants,
//! integral adjoint matrices, Jacobi and divided powers.
//!
//! `cargo run --example adjoint -- G2`

use chevalley::liealg::AdjointAlgebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "G2".into());
    let alg = AdjointAlgebra::parse(&name)?;
    let sys = alg.sys();
    let m = sys.num_roots();
    println!("{} has dimension {}", sys.name(), alg.dim());

    for a in sys.simple_roots() {
        for b in sys.positive_roots() {
            if let Some(c) = sys.sum(a, b) {
                println!("N({:?}, {:?}) = {:+} -> {:?}", sys.root(a), sys.root(b), alg.structure_constant(a, b)?, sys.root(c));
            }
        }
    }

    let mut triples = 0;
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            for c in 0..alg.dim() {
                assert!(alg.jacobi_holds(a, b, c));
                triples += 1;
            }
        }
    }
    println!("Jacobi holds on all {triples} basis triples");

    // X_α^k / k! stays integral; its length is the nilpotency index
    for a in 0..m {
        let powers = alg.divided_powers(a);
        println!("{:?}: nilpotency {}, nonzero divided powers {}", sys.root(a), alg.nilpotency_index(a), powers.len() - 1);
    }
    Ok(())
}
