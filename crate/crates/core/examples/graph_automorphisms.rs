//! Graph automorphisms from diagram symmetries, including a graph that uses
//! different symmetries on the two CRT factors of `Z/6`.
//!
//! `cargo run --example graph_automorphisms`

use chevalley::autos::{normalizes_lie_algebra, realize_graph, StandardAutomorphism};
use chevalley::group::{ChevalleyGroup, GroupElement};
use chevalley::liealg::AdjointAlgebra;
use chevalley::rings::FiniteRing;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = AdjointAlgebra::parse("D4")?;
    let r = FiniteRing::parse("Z/3")?;
    let g = ChevalleyGroup::new(&alg, r.clone());
    let syms = alg.sys().diagram_symmetries();
    println!("D4 has {} diagram symmetries", syms.len());
    for d in &syms {
        let data = realize_graph(&alg, &r, &[(d.clone(), 1)])?;
        let lambda = GroupElement { matrix: data.lambda.clone(), inverse: data.lambda_inv.clone(), word: None };
        assert!(normalizes_lie_algebra(&alg, &r, &lambda));
        // x_α(t) ↦ x_{δα}(±t)
        let auto = StandardAutomorphism::Graph(data);
        let a = alg.sys().simple(0);
        let img = auto.apply(&g, &g.unipotent(a, &1));
        let target = d.apply(alg.sys(), a);
        let sign = if img.matrix == g.unipotent(target, &1).matrix { "+" } else { "-" };
        println!("  {:?}: x_a1(1) -> x_{:?}({sign}1)", d.permutation, alg.sys().root(target));
    }

    // Z/6 = Z/2 x Z/3: identity on one factor, the swap on the other
    let a2 = AdjointAlgebra::parse("A2")?;
    let z6 = FiniteRing::parse("Z/6")?;
    let e = z6.crt_idempotents().elements;
    let s = a2.sys().diagram_symmetries();
    let mixed = realize_graph(&a2, &z6, &[(s[0].clone(), e[0]), (s[1].clone(), e[1])])?;
    let g6 = ChevalleyGroup::new(&a2, z6.clone());
    let lam = GroupElement { matrix: mixed.lambda.clone(), inverse: mixed.lambda_inv.clone(), word: None };
    println!("mixed graph over Z/6 is a group element: {}", g6.validate(&lam));
    Ok(())
}
