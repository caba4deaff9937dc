//! One `[PASS]`/`[FAIL]` line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use lga::accommodating::{build_e, ActionSystem};
use lga::agreement::{oracle_agreement, structural_checks};
use lga::boolean::VertexSet;
use lga::conditions::{all_verdicts, Witness};
use lga::graph::parse;
use lga::ideals::{enumerate_pairs, quotient_rgbds, recognize_quotient, PairLattice};
use lga::oracle::{random_corpus, OracleConfig};
use lga::structure::{hereditary_closure, quotient_bds, saturate};

const CORPUS_SIZE: usize = 500;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.lg"))
}

fn load(name: &str) -> ActionSystem {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    build_e(&parse(&text).expect("fixture parses"))
}

/// Collects failed expectations for one criterion.
#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.expect(took < limit, format!("took {took:?}, limit {limit:?}"));
    }
}

fn sets(sys: &ActionSystem, names: &[&[&str]]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = names.iter().map(|n| sys.graph().set(n).unwrap()).collect();
    out.sort();
    out
}

fn ac1(c: &mut Criterion) {
    let start = Instant::now();
    let sys = load("G1");
    let v = sys.graph().set(&["v"]).unwrap();
    let w = sys.graph().set(&["w"]).unwrap();
    c.expect(sys.algebra().elements() == sets(&sys, &[&[], &["v"], &["w"], &["v", "w"]]), "E");
    c.expect(sys.regular_sets() == sets(&sys, &[&[], &["w"]]), "E_reg");
    let h = saturate(&sys, &hereditary_closure(&sys, w).unwrap());
    c.expect(h.members() == sets(&sys, &[&[], &["w"]]), "S(H({w}))");
    let q = quotient_bds(&sys, &h).unwrap();
    c.expect(q.b_h() == sys.algebra().elements(), "B_H = E");
    c.expect(q.classes() == [VertexSet::EMPTY, v], "classes {[∅], [{v}]}");
    let pair = enumerate_pairs(&sys).into_iter().find(|p| p.w() == w && p.t() == (v | w));
    match pair {
        Some(p) => {
            let kind = recognize_quotient(&quotient_rgbds(&sys, &p).unwrap());
            c.expect(kind.as_str() == "circle-algebra pattern", format!("recognizer gave {}", kind.as_str()));
        }
        None => c.expect(false, "pair ({∅,{w}}, E) missing"),
    }
    c.within(start, Duration::from_secs(1));
}

fn ac2(c: &mut Criterion) {
    let start = Instant::now();
    let sys = load("G4");
    let w = sys.graph().set(&["w"]).unwrap();
    let vw = sys.graph().set(&["v", "w"]).unwrap();
    c.expect(sys.regular_sets() == sets(&sys, &[&[], &["v"]]), "E_reg");
    let h = hereditary_closure(&sys, w).unwrap();
    c.expect(h.members() == sets(&sys, &[&[], &["w"]]), "H({w})");
    c.expect(!h.contains(vw), "{v,w} not in H({w})");
    c.expect(saturate(&sys, &h).members() == sys.algebra().elements(), "S(H({w})) = E");
    match all_verdicts(&sys) {
        Ok(v) => {
            c.expect(v.minimal.value, "minimal");
            c.expect(v.strongly_cofinal.value, "strongly cofinal");
            c.expect(v.simple.value && v.simple.routes.len() == 4, "simple");
            c.expect(v.simple.routes.iter().all(|r| r.value), "all four routes true");
        }
        Err(e) => c.expect(false, e.to_string()),
    }
    c.within(start, Duration::from_secs(1));
}

fn ac3(c: &mut Criterion) {
    let start = Instant::now();
    let sys = load("G2t");
    let g = sys.graph();
    let ra = sys.range_of(g.letter_index("a").unwrap());
    let h = hereditary_closure(&sys, ra).unwrap();
    c.expect(h.members() == sets(&sys, &[&[], &["w1"], &["w2"], &["w1", "w2"]]), "H(r(a))");
    let s = saturate(&sys, &h);
    c.expect(!s.contains(g.set(&["v1"]).unwrap()), "{v1} not in S(H(r(a)))");
    c.expect(s.members() == h.members(), "S(H(r(a))) = H(r(a))");
    c.within(start, Duration::from_secs(1));
}

fn ac4(c: &mut Criterion) {
    let start = Instant::now();
    let sys = load("T1");
    let v = sys.graph().set(&["v"]).unwrap();
    let a = sys.graph().word(&["a"]).unwrap();
    match all_verdicts(&sys) {
        Ok(r) => {
            c.expect(r.minimal.value, "minimal");
            c.expect(!r.condition_l.value, "condition (L) false");
            let witness_ok = matches!(&r.condition_l.witness, Some(Witness::Cycle(cw)) if cw.word == a && cw.base == v);
            c.expect(witness_ok, "(L) witness (a, {v})");
            c.expect(!r.disagreeable.value, "not disagreeable");
            c.expect(!r.simple.value, "not simple");
        }
        Err(e) => c.expect(false, e.to_string()),
    }
    c.within(start, Duration::from_secs(1));
}

fn fixtures() -> Vec<(String, ActionSystem)> {
    ["T1", "T2", "G1", "G2t", "G4", "G6"].iter().map(|n| (n.to_string(), load(n))).collect()
}

fn corpus() -> Vec<(String, ActionSystem)> {
    random_corpus(&OracleConfig::default(), CORPUS_SIZE)
        .graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("random #{i}"), build_e(g)))
        .collect()
}

/// Tallies failing check names, keeping the first instance for each.
fn tally(c: &mut Criterion, failed: BTreeMap<&'static str, (usize, String)>) {
    for (name, (count, first)) in failed {
        c.expect(false, format!("{name}: {count} instances, first {first}"));
    }
}

fn ac5(c: &mut Criterion, instances: &[(String, ActionSystem)]) {
    let start = Instant::now();
    let mut failed: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
    for (name, sys) in instances {
        let rows = all_verdicts(sys).and_then(|v| structural_checks(sys, &v));
        match rows {
            Ok(rows) => {
                for r in rows.into_iter().filter(|r| !r.holds && r.name != "ideal-lattice") {
                    failed.entry(r.name).or_insert((0, name.clone())).0 += 1;
                }
            }
            Err(e) => c.expect(false, format!("{name}: {e}")),
        }
    }
    tally(c, failed);
    c.within(start, Duration::from_secs(60));
}

fn ac6(c: &mut Criterion, instances: &[(String, ActionSystem)]) {
    let cfg = OracleConfig::default();
    let mut failed: BTreeMap<&'static str, (usize, String)> = BTreeMap::new();
    for (name, sys) in instances {
        match all_verdicts(sys).and_then(|v| oracle_agreement(sys, &v, &cfg)) {
            Ok(rows) => {
                for r in rows.into_iter().filter(|r| !r.holds) {
                    failed.entry(r.name).or_insert((0, name.clone())).0 += 1;
                }
            }
            Err(e) => c.expect(false, format!("{name}: {e}")),
        }
    }
    tally(c, failed);
}

fn ac7(c: &mut Criterion, instances: &[(String, ActionSystem)]) {
    let g1 = load("G1");
    let lattice = PairLattice::new(&g1);
    c.expect(lattice.len() == 4 && lattice.is_chain(), "G1 gives a 4-pair chain");
    for (name, sys) in instances {
        if let Err(e) = PairLattice::new(sys).verify(sys) {
            c.expect(false, format!("{name}: {e}"));
        }
    }
}

fn ac8(c: &mut Criterion) {
    let lga = |args: &[&str]| lga::cli::run(std::iter::once("lga").chain(args.iter().copied()));
    let w1 = fixture_path("W1");
    let o = lga(&["analyze", w1.to_str().unwrap()]);
    c.expect(o.code == 2, format!("W1 exit code {}", o.code));
    c.expect(o.stderr.contains("r({u}, a) ∩ r({v}, a)"), "W1 witness triple ({u}, {v}, a)");
    let dir = std::env::temp_dir().join(format!("lga-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (i, (text, line)) in [
        ("vertex v\nedge a v\n", 2),
        ("vertex v\nvertex v\n", 2),
        ("vertex v\nedge a v x\n", 2),
        ("vertex v\n\nfarc f v v\n", 3),
        ("bogus\n", 1),
    ]
    .iter()
    .enumerate()
    {
        let path = dir.join(format!("bad{i}.lg"));
        std::fs::write(&path, text).unwrap();
        let p = path.to_str().unwrap();
        let o = lga(&["analyze", p]);
        c.expect(o.code == 2, format!("{text:?} exit code {}", o.code));
        c.expect(
            o.stderr.contains(&format!("{p}:{line}:")),
            format!("{text:?} diagnostic names line {line}: {}", o.stderr.trim()),
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
}

fn main() {
    let mut instances = fixtures();
    instances.extend(corpus());
    type Run<'a> = Box<dyn Fn(&mut Criterion) + 'a>;
    let criteria: Vec<(&str, &str, Run)> = vec![
        ("AC-1", "G1 worked example", Box::new(ac1)),
        ("AC-2", "G4 minimal and simple", Box::new(ac2)),
        ("AC-3", "G2t hereditary and saturated closures", Box::new(ac3)),
        ("AC-4", "T1 minimal without condition (L)", Box::new(ac4)),
        (
            "AC-5",
            "equivalence suite on fixtures and 500 random instances",
            Box::new(|c: &mut Criterion| ac5(c, &instances)),
        ),
        ("AC-6", "oracle agreement", Box::new(|c: &mut Criterion| ac6(c, &instances))),
        ("AC-7", "ideal-pair lattice", Box::new(|c: &mut Criterion| ac7(c, &instances))),
        ("AC-8", "input rejection", Box::new(ac8)),
    ];
    let mut failed = 0;
    for (id, title, run) in &criteria {
        let mut c = Criterion::default();
        let start = Instant::now();
        run(&mut c);
        let took = start.elapsed();
        if c.failures.is_empty() {
            println!("[PASS] {id} {title} ({took:.2?})");
        } else {
            failed += 1;
            println!("[FAIL] {id} {title} ({took:.2?})");
            for f in &c.failures {
                println!("       {f}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
