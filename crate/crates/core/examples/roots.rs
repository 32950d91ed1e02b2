//! Root systems: positive roots by height, the Cartan matrix, root strings and
//! diagram symmetries.
//!
//! `cargo run --example roots -- D4`

use chevalley::roots::RootSystem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let sys = RootSystem::parse(&name)?;
    println!("{}: rank {}, {} roots", sys.name(), sys.rank(), sys.num_roots());
    println!("cartan {:?}", sys.cartan());
    for a in sys.positive_roots() {
        let long = if sys.is_simply_laced() { "" } else if sys.is_long(a) { " long" } else { " short" };
        println!("  height {} {:?}{long}", sys.height(a), sys.root(a));
    }
    let top = sys.highest_root();
    println!("highest root {:?}", sys.root(top));

    // α-strings through β: β − pα, ..., β + qα
    let (a, b) = (sys.simple(0), sys.simple(1));
    let (p, q) = sys.root_chain(b, a)?;
    println!("string of {:?} through {:?}: p = {p}, q = {q}", sys.root(a), sys.root(b));
    println!("s_α1 sends {:?} to {:?}", sys.root(b), sys.root(sys.reflect(a, b)));

    for d in sys.diagram_symmetries() {
        println!("diagram symmetry {:?}", d.permutation);
    }
    Ok(())
}
