//! Cross-check every procedure against its oracle on a seeded random corpus.
//!
//! `cargo run --release --example oracle_corpus [COUNT] [SEED]`

use std::collections::BTreeMap;

use lga::accommodating::build_e;
use lga::agreement::all_checks;
use lga::oracle::{random_corpus, OracleConfig};

fn main() -> lga::Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let cfg = OracleConfig { seed, ..OracleConfig::default() };
    let corpus = random_corpus(&cfg, count);
    println!("{count} instances, {} discarded as not weakly left-resolving", corpus.discarded);
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut checked: BTreeMap<&str, usize> = BTreeMap::new();
    for g in &corpus.graphs {
        for row in all_checks(&build_e(g), &cfg)? {
            *checked.entry(row.name).or_default() += 1;
            if !row.holds {
                *failures.entry(row.name).or_default() += 1;
            }
        }
    }
    for (name, n) in checked {
        println!("  {name:<28}{n:>5} checked {:>4} failed", failures.get(name).copied().unwrap_or(0));
    }
    Ok(())
}
