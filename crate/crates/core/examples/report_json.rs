//! Full analysis report as JSON, as printed by `lga analyze --format json`.

use lga::accommodating::build_e;
use lga::graph::parse;
use lga::report::analysis_report;

const T1: &str = "vertex v\nedge a v v\n";

fn main() -> lga::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => T1.to_string(),
    };
    let sys = build_e(&parse(&text)?);
    if let Err(v) = sys.check_wlr() {
        return Err(lga::Error::NotWeaklyLeftResolving(format!(
            "letter {}",
            sys.graph().letters()[v.letter].display()
        )));
    }
    let report = analysis_report(&text, &sys)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}
