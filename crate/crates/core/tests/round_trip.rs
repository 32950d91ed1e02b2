use chevalley::autos::{realize_graph, StandardAutomorphism};
use chevalley::decomposer::{forge_random, AutomorphismSpec, Decomposer};
use chevalley::liealg::AdjointAlgebra;
use chevalley::rings::{ring_automorphisms, FiniteRing, Ring};
use chevalley::roots::DiagramSymmetry;

#[test]
fn recomposing_a_certificate_with_standard_pieces_still_certifies() {
    let alg = AdjointAlgebra::parse("A2").unwrap();
    let r = FiniteRing::parse("F4").unwrap();
    let d = Decomposer::new(&alg, &r).unwrap();
    let grp = d.group();
    for seed in 0..6 {
        let (spec, _) = forge_random(&alg, &r, seed).unwrap();
        let cert = d.certify(&spec).unwrap();
        let (_, extra) = forge_random(&alg, &r, 1000 + seed).unwrap();
        let again = AutomorphismSpec::from_automorphism(grp, &StandardAutomorphism::compose(extra, cert.automorphism()));
        d.certify(&again).unwrap();
    }
}

#[test]
fn kernel_transport_on_z12_and_z6() {
    let alg = AdjointAlgebra::parse("A2").unwrap();
    for ring in ["Z/6", "Z/12"] {
        let r = FiniteRing::parse(ring).unwrap();
        let d = Decomposer::new(&alg, &r).unwrap();
        for seed in 0..10 {
            let (spec, _) = forge_random(&alg, &r, seed).unwrap();
            let cert = d.certify(&spec).unwrap();
            assert_eq!(cert.transport, vec![0, 1], "{ring} seed {seed}");
        }
    }
}

#[test]
fn factor_swapping_ring_automorphism_is_transported() {
    let alg = AdjointAlgebra::parse("A2").unwrap();
    let r = FiniteRing::parse("Z/3xZ/3").unwrap();
    let d = Decomposer::new(&alg, &r).unwrap();
    let swap = ring_automorphisms(&r).into_iter().find(|m| !m.is_identity()).unwrap();
    let e = r.crt_idempotents().elements;
    let graph = realize_graph(&alg, &r, &[(DiagramSymmetry::identity(2), e[0]), (DiagramSymmetry { permutation: vec![1, 0] }, e[1])]).unwrap();
    let auto = StandardAutomorphism::compose(StandardAutomorphism::Graph(graph), StandardAutomorphism::ring(swap.clone()).unwrap());
    let cert = d.certify(&AutomorphismSpec::from_automorphism(d.group(), &auto)).unwrap();
    assert_eq!(cert.transport, vec![1, 0]);
    assert_eq!(cert.ring_map.table, swap.table);
    assert_eq!(r.one(), cert.ring_map.apply(r.one()));
}

#[test]
fn d4_triality_round_trip() {
    let alg = AdjointAlgebra::parse("D4").unwrap();
    let r = FiniteRing::parse("Z/3").unwrap();
    let d = Decomposer::new(&alg, &r).unwrap();
    for delta in alg.sys().diagram_symmetries() {
        let graph = realize_graph(&alg, &r, &[(delta.clone(), r.one())]).unwrap();
        let cert = d.certify(&AutomorphismSpec::from_automorphism(d.group(), &StandardAutomorphism::Graph(graph))).unwrap();
        assert_eq!(cert.factors[0].symmetry, delta);
    }
}
