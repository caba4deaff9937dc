//! Serializable reports and their text rendering.
//!
//! Sets are vertex-name arrays in declaration order and words are letter
//! arrays, with family members written `stem[*]`.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::accommodating::{ActionSystem, WlrViolation};
use crate::agreement::Check;
use crate::boolean::VertexSet;
use crate::conditions::{all_verdicts, CycleKind, Exit, Verdict, Verdicts, Witness};
use crate::error::{Error, Result};
use crate::graph::{classify_vertices, LabeledGraph, Word};
use crate::ideals::{ideal_generators, quotient_rgbds, recognize_quotient, PairLattice};
use crate::oracle::OracleConfig;
use crate::structure::enumerate_hs;

pub type SetNames = Vec<String>;

pub fn set_names(g: &LabeledGraph, s: VertexSet) -> SetNames {
    g.set_names(s)
}

pub fn word_names(g: &LabeledGraph, w: &Word) -> Vec<String> {
    g.word_names(w)
}

fn sets(g: &LabeledGraph, s: &[VertexSet]) -> Vec<SetNames> {
    s.iter().map(|&x| set_names(g, x)).collect()
}

fn letter_names(g: &LabeledGraph, mask: u64) -> Vec<String> {
    (0..g.letter_count()).filter(|l| mask & (1 << l) != 0).map(|l| g.letters()[l].display()).collect()
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl Input {
    pub fn hashed(text: &str) -> Self {
        Input { sha256: sha256_hex(text), text: None }
    }

    pub fn echoed(text: &str) -> Self {
        Input { sha256: sha256_hex(text), text: Some(text.to_string()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub letters: Vec<String>,
    pub sinks: SetNames,
    pub sources: SetNames,
    pub infinite_emitters: SetNames,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub elements: Vec<SetNames>,
    pub atoms: Vec<SetNames>,
    pub regular: Vec<SetNames>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub atom: SetNames,
    pub delta: Vec<String>,
    pub trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub classes: Vec<SetNames>,
    pub regular_classes: Vec<SetNames>,
    pub b_h: Vec<SetNames>,
    pub active_letters: Vec<String>,
    pub kind: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub index: usize,
    pub hereditary: SetNames,
    pub ideal: SetNames,
    pub generators: Vec<GeneratorReport>,
    pub quotient: QuotientReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub pairs: Vec<PairReport>,
    /// `[lower, upper]` index pairs of the Hasse diagram.
    pub covers: Vec<[usize; 2]>,
    pub chain: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExitReport {
    Branch { position: usize, set: SetNames },
    Grows,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessReport {
    Cycle { word: Vec<String>, base: SetNames, cycle: &'static str, exit: Option<ExitReport> },
    QuotientCycle { modulus: SetNames, word: Vec<String>, base: SetNames },
    Agreeable { base: SetNames, word: Vec<String>, root: Vec<String> },
    Lasso { atom: SetNames, prefix: Vec<String>, cycle: Vec<String>, state: SetNames },
    RegComplement { a: SetNames, b: SetNames },
    ProperHs { generator: SetNames },
}

fn cycle_kind(k: CycleKind) -> &'static str {
    match k {
        CycleKind::Cycle => "cycle",
        CycleKind::NoExitCycle => "no-exit-cycle",
        CycleKind::Loop => "loop",
        CycleKind::NoExitLoop => "no-exit-loop",
    }
}

impl WitnessReport {
    pub fn new(g: &LabeledGraph, w: &Witness) -> Self {
        match w {
            Witness::Cycle(c) => WitnessReport::Cycle {
                word: word_names(g, &c.word),
                base: set_names(g, c.base),
                cycle: cycle_kind(c.kind),
                exit: c.exit.as_ref().map(|e| match e {
                    Exit::Branch { position, set } => {
                        ExitReport::Branch { position: *position, set: set_names(g, *set) }
                    }
                    Exit::Grows => ExitReport::Grows,
                }),
            },
            Witness::QuotientCycle { modulus, cycle } => WitnessReport::QuotientCycle {
                modulus: set_names(g, *modulus),
                word: word_names(g, &cycle.word),
                base: set_names(g, cycle.base),
            },
            Witness::Agreeable { base, word, root } => WitnessReport::Agreeable {
                base: set_names(g, *base),
                word: word_names(g, word),
                root: word_names(g, root),
            },
            Witness::Lasso { atom, prefix, cycle, state } => WitnessReport::Lasso {
                atom: set_names(g, *atom),
                prefix: word_names(g, prefix),
                cycle: word_names(g, cycle),
                state: set_names(g, *state),
            },
            Witness::RegComplement { a, b } => {
                WitnessReport::RegComplement { a: set_names(g, *a), b: set_names(g, *b) }
            }
            Witness::ProperHs { generator } => WitnessReport::ProperHs { generator: set_names(g, *generator) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteReport {
    pub id: &'static str,
    pub value: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub property: &'static str,
    pub value: bool,
    pub witness: Option<WitnessReport>,
    pub routes: Vec<RouteReport>,
}

impl VerdictReport {
    pub fn new(g: &LabeledGraph, v: &Verdict) -> Self {
        VerdictReport {
            property: v.property,
            value: v.value,
            witness: v.witness.as_ref().map(|w| WitnessReport::new(g, w)),
            routes: v.routes.iter().map(|r| RouteReport { id: r.id, value: r.value }).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictsReport {
    pub simple: VerdictReport,
    pub minimal: VerdictReport,
    pub condition_l: VerdictReport,
    pub condition_k: VerdictReport,
    pub strongly_cofinal: VerdictReport,
    pub disagreeable: VerdictReport,
    pub reg_complement: VerdictReport,
}

impl VerdictsReport {
    pub fn new(g: &LabeledGraph, v: &Verdicts) -> Self {
        VerdictsReport {
            simple: VerdictReport::new(g, &v.simple),
            minimal: VerdictReport::new(g, &v.minimal),
            condition_l: VerdictReport::new(g, &v.condition_l),
            condition_k: VerdictReport::new(g, &v.condition_k),
            strongly_cofinal: VerdictReport::new(g, &v.strongly_cofinal),
            disagreeable: VerdictReport::new(g, &v.disagreeable),
            reg_complement: VerdictReport::new(g, &v.reg_complement),
        }
    }

    fn all(&self) -> [&VerdictReport; 7] {
        [
            &self.simple,
            &self.minimal,
            &self.condition_l,
            &self.condition_k,
            &self.strongly_cofinal,
            &self.disagreeable,
            &self.reg_complement,
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub report: &'static str,
    pub input: Input,
    pub graph: GraphSummary,
    pub algebra: AlgebraSummary,
    pub hereditary_saturated: Vec<SetNames>,
    pub lattice: LatticeReport,
    pub verdicts: VerdictsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub report: &'static str,
    pub input: Input,
    pub verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealsReport {
    pub report: &'static str,
    pub input: Input,
    pub lattice: LatticeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        CheckRow { name: c.name, holds: c.holds, detail: c.detail.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigReport {
    pub max_word_length: usize,
    pub max_unroll: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusFailure {
    pub instance: usize,
    pub check: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub instances: usize,
    pub discarded: usize,
    pub failures: Vec<CorpusFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub report: &'static str,
    pub input: Input,
    pub config: ConfigReport,
    pub checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WlrReport {
    pub a: SetNames,
    pub b: SetNames,
    pub letter: String,
}

impl WlrReport {
    pub fn new(g: &LabeledGraph, v: &WlrViolation) -> Self {
        WlrReport { a: set_names(g, v.a), b: set_names(g, v.b), letter: g.letters()[v.letter].display() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WlrReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub report: &'static str,
    pub error: ErrorBody,
}

impl ErrorReport {
    pub fn from_error(e: &Error) -> Self {
        let (kind, line, column) = match e {
            Error::Parse { line, column, .. } => ("parse", Some(*line), Some(*column)),
            Error::Io(_) => ("io", None, None),
            Error::InvalidInput(_) => ("invalid-input", None, None),
            Error::InternalInconsistency { .. } => ("internal-inconsistency", None, None),
            _ => ("error", None, None),
        };
        ErrorReport { report: "error", error: ErrorBody { kind, message: e.to_string(), line, column, witness: None } }
    }

    pub fn wlr(g: &LabeledGraph, v: &WlrViolation) -> Self {
        let w = WlrReport::new(g, v);
        ErrorReport {
            report: "error",
            error: ErrorBody {
                kind: "not-weakly-left-resolving",
                message: wlr_message(&w),
                line: None,
                column: None,
                witness: Some(w),
            },
        }
    }
}

pub fn wlr_message(w: &WlrReport) -> String {
    format!(
        "not weakly left-resolving: r({}, {l}) ∩ r({}, {l}) ≠ r({} ∩ {}, {l})",
        show_set(&w.a),
        show_set(&w.b),
        show_set(&w.a),
        show_set(&w.b),
        l = w.letter
    )
}

pub fn lattice_report(system: &ActionSystem) -> Result<LatticeReport> {
    let g = system.graph();
    let lattice = PairLattice::new(system);
    let mut pairs = Vec::with_capacity(lattice.len());
    for (index, p) in lattice.pairs.iter().enumerate() {
        let r = quotient_rgbds(system, p)?;
        let generators = ideal_generators(system, p)
            .into_iter()
            .map(|gen| GeneratorReport {
                atom: set_names(g, gen.atom),
                delta: letter_names(g, gen.delta),
                trivial: gen.trivial,
            })
            .collect();
        let quotient = QuotientReport {
            classes: sets(g, r.base.classes()),
            regular_classes: sets(g, r.base.regular_classes()),
            b_h: sets(g, r.base.b_h()),
            active_letters: r.active_letters().into_iter().map(|l| g.letters()[l].display()).collect(),
            kind: recognize_quotient(&r).as_str(),
        };
        pairs.push(PairReport {
            index,
            hereditary: set_names(g, p.w()),
            ideal: set_names(g, p.t()),
            generators,
            quotient,
        });
    }
    Ok(LatticeReport {
        pairs,
        covers: lattice.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        chain: lattice.is_chain(),
    })
}

pub fn analysis_report(text: &str, system: &ActionSystem) -> Result<AnalysisReport> {
    let g = system.graph();
    let classes = classify_vertices(g);
    let verdicts = all_verdicts(system)?;
    Ok(AnalysisReport {
        report: "analysis",
        input: Input::echoed(text),
        graph: GraphSummary {
            vertices: g.vertex_names().to_vec(),
            letters: g.letters().iter().map(|s| s.display()).collect(),
            sinks: set_names(g, classes.sinks),
            sources: set_names(g, classes.sources),
            infinite_emitters: set_names(g, classes.infinite_emitters),
        },
        algebra: AlgebraSummary {
            elements: sets(g, system.algebra().elements()),
            atoms: sets(g, system.algebra().atoms()),
            regular: sets(g, system.regular_sets()),
        },
        hereditary_saturated: enumerate_hs(system).iter().map(|h| set_names(g, h.generator())).collect(),
        lattice: lattice_report(system)?,
        verdicts: VerdictsReport::new(g, &verdicts),
        timing: None,
    })
}

pub fn config_report(system: &ActionSystem, cfg: &OracleConfig) -> ConfigReport {
    ConfigReport { max_word_length: cfg.max_word_length, max_unroll: cfg.unroll(system), seed: cfg.seed }
}

pub fn show_set(s: &[String]) -> String {
    format!("{{{}}}", s.join(", "))
}

pub fn show_word(w: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.join(" ")
    }
}

fn show_sets(s: &[SetNames]) -> String {
    s.iter().map(|x| show_set(x)).collect::<Vec<_>>().join(" ")
}

pub fn show_witness(w: &WitnessReport) -> String {
    match w {
        WitnessReport::Cycle { word, base, cycle, exit } => {
            let mut s = format!("{cycle} ({}, {})", show_word(word), show_set(base));
            match exit {
                Some(ExitReport::Branch { position, set }) => {
                    let _ = write!(s, ", exit after {position} letters at {}", show_set(set));
                }
                Some(ExitReport::Grows) => s.push_str(", base grows"),
                None => {}
            }
            s
        }
        WitnessReport::QuotientCycle { modulus, word, base } => {
            format!("no-exit cycle ({}, [{}]) modulo {}", show_word(word), show_set(base), show_set(modulus))
        }
        WitnessReport::Agreeable { base, word, root } => {
            format!("agreeable ({}, {}) with root {}", show_set(base), show_word(word), show_word(root))
        }
        WitnessReport::Lasso { atom, prefix, cycle, state } => format!(
            "path {} ({})^∞ avoids the hereditary closure of {} through {}",
            show_word(prefix),
            show_word(cycle),
            show_set(atom),
            show_set(state)
        ),
        WitnessReport::RegComplement { a, b } => {
            format!("no regular C with {} ∖ C in the hereditary closure of {}", show_set(b), show_set(a))
        }
        WitnessReport::ProperHs { generator } => format!("proper hereditary saturated set {}", show_set(generator)),
    }
}

/// ANSI styling for text output.
#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn bool(&self, v: bool) -> String {
        match (self.color, v) {
            (false, _) => v.to_string(),
            (true, true) => format!("\x1b[32m{v}\x1b[0m"),
            (true, false) => format!("\x1b[31m{v}\x1b[0m"),
        }
    }

    pub fn heading(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

pub fn render_verdict(out: &mut String, v: &VerdictReport, style: Style) {
    let _ = writeln!(out, "  {:<17}{}", v.property, style.bool(v.value));
    let routes: Vec<String> = v.routes.iter().map(|r| format!("{}={}", r.id, r.value)).collect();
    let _ = writeln!(out, "    routes: {}", routes.join(", "));
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "    witness: {}", show_witness(w));
    }
}

pub fn render_lattice(out: &mut String, l: &LatticeReport, style: Style) {
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!("ideal pairs ({}, {})", l.pairs.len(), if l.chain { "chain" } else { "not a chain" }))
    );
    for p in &l.pairs {
        let _ = writeln!(out, "  [{}] H = I{}  S = I{}", p.index, show_set(&p.hereditary), show_set(&p.ideal));
        for gen in &p.generators {
            let _ = writeln!(
                out,
                "      generator {} delta {}{}",
                show_set(&gen.atom),
                show_set(&gen.delta),
                if gen.trivial { " (trivial)" } else { "" }
            );
        }
        let q = &p.quotient;
        let _ = writeln!(out, "      classes {}", show_sets(&q.classes));
        let _ = writeln!(out, "      B_H {}", show_sets(&q.b_h));
        let _ = writeln!(out, "      quotient: {}", q.kind);
    }
    let covers: Vec<String> = l.covers.iter().map(|[a, b]| format!("{a} < {b}")).collect();
    let _ = writeln!(out, "  covers: {}", if covers.is_empty() { "none".into() } else { covers.join(", ") });
}

fn render_timing(out: &mut String, t: &Option<Timing>) {
    if let Some(t) = t {
        let _ = writeln!(out, "time: {:.3} ms", t.total_ms);
    }
}

pub fn render_analysis(r: &AnalysisReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input sha256 {}", r.input.sha256);
    let g = &r.graph;
    let _ = writeln!(out, "{}", style.heading("graph"));
    let _ = writeln!(out, "  vertices {}", show_set(&g.vertices));
    let _ = writeln!(out, "  letters {}", show_set(&g.letters));
    let _ = writeln!(
        out,
        "  sinks {}  sources {}  infinite emitters {}",
        show_set(&g.sinks),
        show_set(&g.sources),
        show_set(&g.infinite_emitters)
    );
    let _ = writeln!(out, "{}", style.heading(&format!("accommodating set ({} elements)", r.algebra.elements.len())));
    let _ = writeln!(out, "  E     {}", show_sets(&r.algebra.elements));
    let _ = writeln!(out, "  atoms {}", show_sets(&r.algebra.atoms));
    let _ = writeln!(out, "  E_reg {}", show_sets(&r.algebra.regular));
    let _ = writeln!(out, "{}", style.heading("hereditary saturated sets"));
    let _ = writeln!(out, "  {}", show_sets(&r.hereditary_saturated));
    render_lattice(&mut out, &r.lattice, style);
    let _ = writeln!(out, "{}", style.heading("conditions"));
    for v in r.verdicts.all() {
        render_verdict(&mut out, v, style);
    }
    render_timing(&mut out, &r.timing);
    out
}

pub fn render_check(r: &CheckReport, style: Style) -> String {
    let mut out = String::new();
    render_verdict(&mut out, &r.verdict, style);
    render_timing(&mut out, &r.timing);
    out
}

pub fn render_ideals(r: &IdealsReport, style: Style) -> String {
    let mut out = String::new();
    render_lattice(&mut out, &r.lattice, style);
    render_timing(&mut out, &r.timing);
    out
}

pub fn render_oracle(r: &OracleReport, style: Style) -> String {
    let mut out = String::new();
    let c = &r.config;
    let _ = writeln!(out, "max word length {}, unroll {}, seed {}", c.max_word_length, c.max_unroll, c.seed);
    let _ = writeln!(out, "{}", style.heading("agreement"));
    for row in &r.checks {
        let _ = writeln!(out, "  {:<28}{:<7} {}", row.name, style.bool(row.holds), row.detail);
    }
    if let Some(corpus) = &r.corpus {
        let _ = writeln!(
            out,
            "{}",
            style.heading(&format!(
                "corpus seed {}: {} instances, {} discarded, {} failures",
                corpus.seed,
                corpus.instances,
                corpus.discarded,
                corpus.failures.len()
            ))
        );
        for f in &corpus.failures {
            let _ = writeln!(out, "  #{} {}: {}", f.instance, f.check, f.detail);
            for line in f.graph.lines() {
                let _ = writeln!(out, "      {line}");
            }
        }
    }
    render_timing(&mut out, &r.timing);
    out
}
