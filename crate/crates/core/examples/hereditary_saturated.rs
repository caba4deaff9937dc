//! Hereditary closures, saturations and the full list of hereditary saturated sets.

use lga::accommodating::build_e;
use lga::graph::parse;
use lga::structure::{enumerate_hs, hereditary_closure, saturate, saturation_by_steps};

const G2T: &str = "vertex v2\nvertex v1\nvertex w1\nvertex w2\nedge 1 v2 v1\nfamily b infinite\nfarc b v1 w1\nedge a w1 w2\nedge a w2 w1\n";
const G4: &str = "vertex u\nvertex v\nvertex w\nedge 2 u v\nedge 1 v w\nfamily f infinite\nfarc f w w\n";

fn main() -> lga::Result<()> {
    for (name, text, seed) in [("G2t", G2T, vec!["w1", "w2"]), ("G4", G4, vec!["w"])] {
        let sys = build_e(&parse(text)?);
        let g = sys.graph();
        let a = g.set(&seed)?;
        let h = hereditary_closure(&sys, a)?;
        let s = saturate(&sys, &h);
        let names = |v: &[lga::boolean::VertexSet]| {
            v.iter().map(|&x| format!("{:?}", g.set_names(x))).collect::<Vec<_>>().join(" ")
        };
        println!("{name}: A = {seed:?}");
        println!("  H(A)         = {}", names(h.members()));
        println!("  S(H(A))      = {}", names(s.members()));
        println!("  by n steps   = {}", names(&saturation_by_steps(&sys, &h)));
        let hs: Vec<_> = enumerate_hs(&sys).iter().map(|h| h.generator()).collect();
        println!("  all HS sets  = {}", names(&hs));
    }
    Ok(())
}
