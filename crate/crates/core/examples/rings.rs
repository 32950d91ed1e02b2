//! Finite rings: CRT splitting into local factors, residue fields, maximal
//! ideals and the ring automorphism group.
//!
//! `cargo run --example rings -- Z/12`

use chevalley::rings::{ring_automorphisms, FiniteRing, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names = if names.is_empty() { vec!["Z/12".into(), "F4".into(), "Z/3xZ/3".into(), "Z/9".into()] } else { names };
    for name in names {
        let r = FiniteRing::parse(&name)?;
        println!("{} (order {}, characteristic {})", r.name(), r.size(), r.characteristic());
        for f in r.local_factors() {
            let (k, _) = f.ring.residue_field()?;
            println!("  local factor {} with residue field {}, chain length {}", f.ring.name(), k.name(), f.ring.chain_length());
        }
        let e = r.crt_idempotents();
        println!("  idempotents [{}]", e.elements.iter().map(|&x| r.encode(x).to_string()).collect::<Vec<_>>().join(", "));
        for (ideal, quotient) in r.maximal_ideals() {
            println!("  {} = {{{}}} with quotient {}", ideal.label, ideal.members.iter().map(|&x| r.encode(x).to_string()).collect::<Vec<_>>().join(", "), quotient.target.name());
        }
        let units = r.elements().filter(|x| r.is_unit(x)).count();
        println!("  {units} units, {} ring automorphisms", ring_automorphisms(&r).len());
        // a round trip through the factors
        let x = r.size() - 1;
        assert_eq!(r.from_factors(&r.to_factors(x)), x);
    }
    Ok(())
}
