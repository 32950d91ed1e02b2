//! Hand-built adversarial specs shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use chevalley::autos::{realize_graph, StandardAutomorphism};
use chevalley::decomposer::{AutomorphismSpec, SpecImage};
use chevalley::group::{ChevalleyGroup, GroupElement};
use chevalley::liealg::AdjointAlgebra;
use chevalley::linalg;
use chevalley::matrix::Matrix;
use chevalley::rings::FiniteRing;
use chevalley::roots::DiagramSymmetry;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Control {
    pub name: &'static str,
    pub system: &'static str,
    pub ring: &'static str,
    pub spec: AutomorphismSpec,
}

fn setup(system: &str, ring: &str) -> (&'static AdjointAlgebra, FiniteRing) {
    let alg: &'static AdjointAlgebra = Box::leak(Box::new(AdjointAlgebra::parse(system).unwrap()));
    (alg, FiniteRing::parse(ring).unwrap())
}

fn identity_spec(alg: &AdjointAlgebra, r: &FiniteRing) -> AutomorphismSpec {
    let g = ChevalleyGroup::new(alg, r.clone());
    AutomorphismSpec::from_automorphism(&g, &StandardAutomorphism::Compose(vec![]))
}

/// `x_α(t) ↦ x_α(σ(t))` for an arbitrary parameter map `σ`.
fn parameter_map_spec(alg: &AdjointAlgebra, r: &FiniteRing, sigma: impl Fn(u32) -> u32) -> AutomorphismSpec {
    let g = ChevalleyGroup::new(alg, r.clone());
    let mut spec = identity_spec(alg, r);
    for (&(a, t), img) in spec.images.iter_mut() {
        let y = g.unipotent(a, &sigma(t));
        *img = SpecImage { matrix: y.matrix, inverse: Some(y.inverse) };
    }
    spec
}

/// Conjugation by a random invertible matrix: every relation survives, but the
/// matrix does not normalize the Lie algebra.
fn conjugation_spec(alg: &AdjointAlgebra, r: &FiniteRing, seed: u64) -> AutomorphismSpec {
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, inv) = loop {
        let m = Matrix::from_fn(n, n, |_, _| rng.gen_range(0..r.size()));
        if let Some(inv) = linalg::invert(r, &m) {
            break (m, inv);
        }
    };
    let grp = ChevalleyGroup::new(alg, r.clone());
    AutomorphismSpec::from_automorphism(&grp, &StandardAutomorphism::Inner(GroupElement { matrix: m, inverse: inv, word: None }))
}

fn replace(spec: &mut AutomorphismSpec, key: (usize, u32), matrix: Matrix<u32>) {
    spec.images.insert(key, SpecImage { matrix, inverse: None });
}

pub fn negative_controls() -> Vec<Control> {
    let mut out = Vec::new();

    let (a2, z5) = setup("A2", "Z/5");
    let g = ChevalleyGroup::new(a2, z5.clone());
    let n = a2.dim();
    let s0 = a2.sys().simple(0);
    let s1 = a2.sys().simple(1);

    let mut spec = identity_spec(a2, &z5);
    replace(&mut spec, (s0, 1), Matrix::identity(&z5, n));
    out.push(Control { name: "one image replaced by the identity", system: "A2", ring: "Z/5", spec });

    let mut spec = identity_spec(a2, &z5);
    let (x0, x1) = (spec.images[&(s0, 1)].clone(), spec.images[&(s1, 1)].clone());
    spec.images.insert((s0, 1), x1);
    spec.images.insert((s1, 1), x0);
    out.push(Control { name: "images of two simple roots swapped", system: "A2", ring: "Z/5", spec });

    out.push(Control { name: "non-normalizing conjugator over Z/5", system: "A2", ring: "Z/5", spec: conjugation_spec(a2, &z5, 11) });

    let mut spec = identity_spec(a2, &z5);
    let h = g.torus_coroot(s1, &2).unwrap();
    replace(&mut spec, (s0, 1), g.mul(&h, &g.unipotent(s0, &1)).matrix);
    out.push(Control { name: "one image multiplied by a torus element", system: "A2", ring: "Z/5", spec });

    let mut spec = identity_spec(a2, &z5);
    replace(&mut spec, (s0, 1), g.unipotent_matrix(s0, &1).transpose());
    out.push(Control { name: "one image transposed", system: "A2", ring: "Z/5", spec });

    out.push(Control {
        name: "additive but not multiplicative: t maps to 2t over Z/5",
        system: "A2",
        ring: "Z/5",
        spec: parameter_map_spec(a2, &z5, |t| z5.mul_raw(2, t)),
    });

    let mut spec = identity_spec(a2, &z5);
    replace(&mut spec, (s0, 1), Matrix::zero(&z5, n, n));
    out.push(Control { name: "singular image", system: "A2", ring: "Z/5", spec });

    let mut spec = identity_spec(a2, &z5);
    replace(&mut spec, (s0, 1), Matrix::identity(&z5, n - 1));
    out.push(Control { name: "image of the wrong dimension", system: "A2", ring: "Z/5", spec });

    let mut spec = identity_spec(a2, &z5);
    spec.images.remove(&(s1, 1));
    out.push(Control { name: "missing image", system: "A2", ring: "Z/5", spec });

    let mut spec = identity_spec(a2, &z5);
    let img = spec.images.get_mut(&(s0, 1)).unwrap();
    img.inverse = Some(Matrix::identity(&z5, n));
    out.push(Control { name: "wrong stored inverse", system: "A2", ring: "Z/5", spec });

    // plain permutation of root lines without the graph signs
    let swap = DiagramSymmetry { permutation: vec![1, 0] };
    let signed = realize_graph(a2, &z5, &[(swap, 1)]).unwrap();
    let unsigned = signed.lambda.map(|&x| u32::from(x != 0));
    let grp = ChevalleyGroup::new(a2, z5.clone());
    let spec = AutomorphismSpec::from_automorphism(
        &grp,
        &StandardAutomorphism::Inner(GroupElement { matrix: unsigned.clone(), inverse: unsigned.transpose(), word: None }),
    );
    out.push(Control { name: "diagram permutation without signs", system: "A2", ring: "Z/5", spec });

    let (_, z4) = setup("A2", "Z/4");
    out.push(Control {
        name: "non-injective parameter map t maps to 2t over Z/4",
        system: "A2",
        ring: "Z/4",
        spec: parameter_map_spec(a2, &z4, |t| z4.mul_raw(2, t)),
    });

    let (_, f4) = setup("A2", "F4");
    out.push(Control { name: "non-normalizing conjugator over F4", system: "A2", ring: "F4", spec: conjugation_spec(a2, &f4, 5) });

    // (x, y) ↦ (2x + 2y, y) fixes 1 = (1, 1) and is additive, but not multiplicative
    let (_, z33) = setup("A2", "Z/3xZ/3");
    let sigma = |t: u32| {
        let c = z33.components(t);
        z33.from_components(&[(2 * c[0] + 2 * c[1]) % 3, c[1]])
    };
    out.push(Control {
        name: "additive bijection fixing 1 that is not multiplicative over Z/3xZ/3",
        system: "A2",
        ring: "Z/3xZ/3",
        spec: parameter_map_spec(a2, &z33, sigma),
    });

    out
}
