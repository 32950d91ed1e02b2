mod common;

use chevalley::decomposer::Decomposer;
use chevalley::liealg::AdjointAlgebra;

#[test]
fn every_negative_control_is_refused_with_a_stage() {
    let controls = common::negative_controls();
    assert!(controls.len() >= 10);
    for c in controls {
        let alg = AdjointAlgebra::parse(c.system).unwrap();
        let engine = Decomposer::new(&alg, &c.spec.ring).unwrap();
        match engine.certify(&c.spec) {
            Ok(_) => panic!("{}: false certificate", c.name),
            Err(e) => {
                assert!(!e.message.is_empty(), "{}", c.name);
                println!("{:<70} {:<11} {}", c.name, e.stage.name(), e.message);
            }
        }
    }
}
