//! The lattice of admissible ideal pairs, its generators and quotient descriptors.
//!
//! Pass `--dot` to print the Hasse diagram instead.

use lga::accommodating::build_e;
use lga::graph::parse;
use lga::ideals::{ideal_generators, join, meet, quotient_rgbds, recognize_quotient, PairLattice};

const G1: &str = "vertex v\nvertex w\nedge a v v\nedge a w w\nfamily c infinite\nfarc c v w\n";

fn main() -> lga::Result<()> {
    let sys = build_e(&parse(G1)?);
    let g = sys.graph();
    let lattice = PairLattice::new(&sys);
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", lattice.to_dot(&sys));
        return Ok(());
    }
    lattice.verify(&sys)?;
    for (i, p) in lattice.pairs.iter().enumerate() {
        let kind = recognize_quotient(&quotient_rgbds(&sys, p)?);
        println!("[{i}] W = {:?}, T = {:?}, quotient {}", g.set_names(p.w()), g.set_names(p.t()), kind.as_str());
        for gen in ideal_generators(&sys, p) {
            let trivial = if gen.trivial { ", vanishes" } else { "" };
            println!("     generator at {:?}{trivial}", g.set_names(gen.atom));
        }
    }
    let (first, last) = (&lattice.pairs[1], &lattice.pairs[2]);
    println!("meet(1, 2) = pair {:?}", lattice.index_of(&meet(&sys, first, last)));
    println!("join(1, 2) = pair {:?}", lattice.index_of(&join(&sys, first, last)));
    println!("chain: {}", lattice.is_chain());
    Ok(())
}
