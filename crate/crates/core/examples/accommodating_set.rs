//! Build the smallest accommodating set, test weak left-resolution and list regular sets.

use lga::accommodating::build_e;
use lga::graph::parse;

const G1: &str = "vertex v\nvertex w\nedge a v v\nedge a w w\nfamily c infinite\nfarc c v w\n";
const W1: &str = "vertex p\nvertex q\nvertex u\nvertex v\nvertex w\nedge b p u\nedge c q v\nedge a u w\nedge a v w\n";

fn main() -> lga::Result<()> {
    for (name, text) in [("G1", G1), ("W1", W1)] {
        let sys = build_e(&parse(text)?);
        let g = sys.graph();
        let show = |s| format!("{:?}", g.set_names(s));
        println!("{name}");
        println!("  E     = {}", sys.algebra().elements().iter().map(|&s| show(s)).collect::<Vec<_>>().join(" "));
        println!("  atoms = {}", sys.algebra().atoms().iter().map(|&s| show(s)).collect::<Vec<_>>().join(" "));
        println!("  E_reg = {}", sys.regular_sets().iter().map(|&s| show(s)).collect::<Vec<_>>().join(" "));
        match sys.check_wlr() {
            Ok(()) => println!("  weakly left-resolving"),
            Err(v) => println!(
                "  not weakly left-resolving at ({}, {}, {})",
                show(v.a),
                show(v.b),
                g.letters()[v.letter].display()
            ),
        }
    }
    Ok(())
}
