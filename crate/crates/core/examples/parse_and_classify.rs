//! Parse a labeled graph and list sinks, sources and infinite emitters.
//!
//! `cargo run --example parse_and_classify [FILE]`

use lga::graph::{classify_vertices, parse, GraphBuilder};

fn main() -> lga::Result<()> {
    let graph = match std::env::args().nth(1) {
        Some(path) => parse(&std::fs::read_to_string(path)?)?,
        None => GraphBuilder::new()
            .vertex("u")
            .vertex("v")
            .vertex("w")
            .edge("2", "u", "v")
            .edge("1", "v", "w")
            .family("f")
            .farc("f", "w", "w")
            .build()?,
    };
    print!("{}", graph.serialize());
    let c = classify_vertices(&graph);
    let letters: Vec<String> = graph.letters().iter().map(|s| s.display()).collect();
    println!("letters:           {}", letters.join(" "));
    println!("sinks:             {:?}", graph.set_names(c.sinks));
    println!("sources:           {:?}", graph.set_names(c.sources));
    println!("infinite emitters: {:?}", graph.set_names(c.infinite_emitters));
    Ok(())
}
