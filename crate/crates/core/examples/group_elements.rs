//! Elements of `E_ad(Φ, R)`: root unipotents, Weyl elements, torus elements
//! and the Chevalley commutator formula.
//!
//! `cargo run --example group_elements`

use chevalley::group::{commutator_coefficients, ChevalleyGroup, Token};
use chevalley::liealg::AdjointAlgebra;
use chevalley::rings::{FiniteRing, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = AdjointAlgebra::parse("B2")?;
    let sys = alg.sys();
    let r = FiniteRing::parse("Z/5")?;
    let g = ChevalleyGroup::new(&alg, r.clone());
    let (a, b) = (sys.simple(0), sys.simple(1));

    // one-parameter law: x_α(s) x_α(t) = x_α(s + t)
    let lhs = g.mul(&g.unipotent(a, &2), &g.unipotent(a, &4));
    assert_eq!(lhs.matrix, g.unipotent(a, &r.add(&2, &4)).matrix);
    println!("x_a(2) x_a(4) = x_a(1) over {}", r.name());

    // w_α(1) = x_α(1) x_{-α}(-1) x_α(1) sends X_β to ±X_{s_α β}
    let w = g.weyl(a, &1)?;
    let moved = g.conj(&w, &g.unipotent(b, &1));
    let target = sys.reflect(a, b);
    let sign = [1, r.from_i64(-1)].into_iter().find(|s| moved.matrix == g.unipotent(target, s).matrix);
    println!("w_a x_b(1) w_a^-1 = x_{:?}({})", sys.root(target), r.encode(sign.expect("Weyl image is a root element")));

    // h_α(u) x_β(t) h_α(u)^-1 = x_β(u^<β,α> t)
    let h = g.torus_coroot(a, &2)?;
    let conj = g.conj(&h, &g.unipotent(b, &1));
    let expected = r.pow(&2, sys.pairing(b, a).rem_euclid(4) as u64);
    assert_eq!(conj.matrix, g.unipotent(b, &expected).matrix);
    println!("h_a(2) scales x_b by 2^<b,a> = {expected}");

    // [x_α(s), x_β(t)] = Π x_{iα+jβ}(c_ij s^i t^j)
    let (s, t) = (3u32, 2u32);
    let terms = commutator_coefficients(&alg, a, b)?;
    let word: Vec<Token<u32>> = terms
        .iter()
        .map(|c| Token { root: c.root, param: r.mul(&r.from_i64(c.coefficient), &r.mul(&r.pow(&s, c.i as u64), &r.pow(&t, c.j as u64))) })
        .collect();
    let comm = g.commutator(&g.unipotent(a, &s), &g.unipotent(b, &t))?;
    assert_eq!(comm.matrix, g.evaluate_word(&word).matrix);
    for c in &terms {
        println!("  c({}, {}) = {:+} on {:?}", c.i, c.j, c.coefficient, sys.root(c.root));
    }
    println!("commutator formula checked at s = {s}, t = {t}");
    Ok(())
}
