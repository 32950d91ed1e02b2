//! Recovering the Lie algebra elements `X_α` from the group elements `x_α(1)`
//! alone, in each of the three recovery regimes.
//!
//! `cargo run --example recover`

use chevalley::group::ChevalleyGroup;
use chevalley::liealg::AdjointAlgebra;
use chevalley::recover::Recoverer;
use chevalley::rings::{FiniteRing, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (system, ring) in [("B2", "Z/5"), ("G2", "Z/7"), ("A3", "Z/4"), ("D4", "Z/2")] {
        let alg = AdjointAlgebra::parse(system)?;
        let r = FiniteRing::parse(ring)?;
        let g = ChevalleyGroup::new(&alg, r.clone());
        let rec = Recoverer::new(&alg, r.clone())?;
        let m = alg.sys().num_roots();
        let family: Vec<_> = (0..m).map(|a| g.unipotent_matrix(a, &r.one())).collect();
        let recovered = rec.recover_all(&family)?;
        for (a, x) in recovered.iter().enumerate() {
            assert_eq!(*x, alg.adjoint_matrix(a).to_ring(&r), "{system}/{ring} root {a}");
        }
        let mut regimes: Vec<&str> = (0..m).map(|a| rec.regime(a).tag()).collect();
        regimes.sort_unstable();
        regimes.dedup();
        println!("{system} over {ring}: all {m} X_a recovered exactly, regimes {regimes:?}");
    }
    Ok(())
}
