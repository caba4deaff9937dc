//! Each structural condition with its witness, on a few small graphs.

use lga::accommodating::build_e;
use lga::conditions::{verdict, Property};
use lga::graph::parse;
use lga::report::{show_witness, WitnessReport};

fn main() -> lga::Result<()> {
    let graphs = [
        ("one loop", "vertex v\nedge a v v\n"),
        ("two loops", "vertex u\nvertex v\nedge a u u\nedge b v v\n"),
        ("loop with a back edge", "vertex u\nvertex v\nedge a u v\nedge a v u\nedge b v v\n"),
    ];
    for (name, text) in graphs {
        let sys = build_e(&parse(text)?);
        println!("{name}");
        for p in Property::ALL.into_iter().filter(|&p| p != Property::Simple) {
            let v = verdict(&sys, p)?;
            let why = v.witness.as_ref().map(|w| show_witness(&WitnessReport::new(sys.graph(), w)));
            println!("  {:<17}{:<6} {}", p.as_str(), v.value, why.unwrap_or_default());
        }
    }
    Ok(())
}
