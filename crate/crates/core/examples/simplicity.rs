//! Simplicity through its four structural characterizations.

use lga::accommodating::build_e;
use lga::conditions::all_verdicts;
use lga::graph::parse;

const G4: &str = "vertex u\nvertex v\nvertex w\nedge 2 u v\nedge 1 v w\nfamily f infinite\nfarc f w w\n";
const G1: &str = "vertex v\nvertex w\nedge a v v\nedge a w w\nfamily c infinite\nfarc c v w\n";

fn main() -> lga::Result<()> {
    for (name, text) in [("G4", G4), ("G1", G1)] {
        let v = all_verdicts(&build_e(&parse(text)?))?;
        println!("{name}: simple = {}", v.simple.value);
        for r in &v.simple.routes {
            println!("  {:<38}{}", r.id, r.value);
        }
    }
    Ok(())
}
