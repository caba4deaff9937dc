//! Labeled graphs with finitely presented infinite families of parallel labels.
//!
//! A *family* is a stem `c` standing for countably many labels `c_1, c_2, ...`
//! that all sit on exactly the same arcs. Every member therefore has the same
//! range map, and the whole family is handled as one symbolic letter.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::boolean::{VertexSet, MAX_VERTICES};
use crate::error::{Error, ParseErrorKind, Result};

pub const MAX_LETTERS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Label,
    Stem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
}

impl Symbol {
    pub fn is_stem(&self) -> bool {
        self.kind == SymbolKind::Stem
    }

    /// `a` for a label, `c[*]` for a stem.
    pub fn display(&self) -> String {
        match self.kind {
            SymbolKind::Label => self.name.clone(),
            SymbolKind::Stem => format!("{}[*]", self.name),
        }
    }
}

/// One arc carrying the letter with index `letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub letter: usize,
    pub src: usize,
    pub dst: usize,
}

/// A finite word over the alphabet, letters given by index. The empty word is ε.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: usize) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, l: usize) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    pub fn power(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Shortest `r` with `self = r^k`.
    pub fn primitive_root(&self) -> Word {
        let n = self.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return Word(self.0[..p].to_vec());
            }
        }
        self.clone()
    }

    /// Not a power of a proper initial subword.
    pub fn is_irreducible(&self) -> bool {
        !self.is_empty() && self.primitive_root().len() == self.len()
    }

    /// `Some(k)` when `self = root^k` with `k ≥ 1`.
    pub fn power_of(&self, root: &Word) -> Option<usize> {
        if root.is_empty() || self.is_empty() || !self.len().is_multiple_of(root.len()) {
            return None;
        }
        let k = self.len() / root.len();
        (root.power(k) == *self).then_some(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    letters: Vec<Symbol>,
    edges: Vec<Arc>,
    /// Arcs of every family, letter index equal to the stem's.
    farcs: Vec<Arc>,
    /// Stems in declaration order.
    stems: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub sinks: VertexSet,
    pub sources: VertexSet,
    pub infinite_emitters: VertexSet,
}

impl LabeledGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertices.len())
    }

    /// Explicit labels in order of first appearance, then stems.
    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        let bare = name.strip_suffix("[*]").unwrap_or(name);
        self.letters.iter().position(|s| s.name == bare && (s.is_stem() || bare.len() == name.len()))
    }

    pub fn edges(&self) -> &[Arc] {
        &self.edges
    }

    pub fn family_arcs(&self) -> &[Arc] {
        &self.farcs
    }

    pub fn family_count(&self) -> usize {
        self.stems.len()
    }

    /// Explicit edges followed by family arcs.
    pub fn all_arcs(&self) -> impl Iterator<Item = &Arc> {
        self.edges.iter().chain(self.farcs.iter())
    }

    /// Bit mask of the letters that are stems.
    pub fn stem_mask(&self) -> u64 {
        self.stems.iter().fold(0, |m, &s| m | (1 << s))
    }

    pub fn word(&self, names: &[&str]) -> Result<Word> {
        names
            .iter()
            .map(|n| self.letter_index(n).ok_or_else(|| Error::UnknownLabel(n.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn word_names(&self, w: &Word) -> Vec<String> {
        w.0.iter().map(|&l| self.letters[l].display()).collect()
    }

    pub fn set(&self, names: &[&str]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| self.vertex_index(n).ok_or_else(|| Error::InvalidInput(format!("unknown vertex `{n}`"))))
            .collect()
    }

    /// Member names in declaration order.
    pub fn set_names(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.vertices[v].clone()).collect()
    }

    /// Canonical text form; parsing it yields an equal graph.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for e in &self.edges {
            let _ =
                writeln!(out, "edge {} {} {}", self.letters[e.letter].name, self.vertices[e.src], self.vertices[e.dst]);
        }
        for &s in &self.stems {
            let _ = writeln!(out, "family {} infinite", self.letters[s].name);
            for a in self.farcs.iter().filter(|a| a.letter == s) {
                let _ =
                    writeln!(out, "farc {} {} {}", self.letters[s].name, self.vertices[a.src], self.vertices[a.dst]);
            }
        }
        out
    }
}

/// Vertices with no outgoing arc, with no incoming arc, and with a family arc out.
pub fn classify_vertices(graph: &LabeledGraph) -> VertexClasses {
    let mut emits = VertexSet::EMPTY;
    let mut receives = VertexSet::EMPTY;
    let mut infinite = VertexSet::EMPTY;
    for a in graph.all_arcs() {
        emits.insert(a.src);
        receives.insert(a.dst);
    }
    for a in &graph.farcs {
        infinite.insert(a.src);
    }
    let all = graph.all_vertices();
    VertexClasses { sinks: all - emits, sources: all - receives, infinite_emitters: infinite }
}

/// `r(A, w)`, by scanning arcs letter by letter; `r(A, ε) = A`.
pub fn relative_range(graph: &LabeledGraph, a: VertexSet, w: &Word) -> Result<VertexSet> {
    let mut cur = a;
    for &l in w.letters() {
        if l >= graph.letters.len() {
            return Err(Error::UnknownLabel(format!("letter #{l}")));
        }
        cur = graph.all_arcs().filter(|e| e.letter == l && cur.contains(e.src)).map(|e| e.dst).collect();
    }
    Ok(cur)
}

/// `r(α)`, the targets of all arcs carrying the letter.
pub fn range(graph: &LabeledGraph, letter: usize) -> VertexSet {
    graph.all_arcs().filter(|e| e.letter == letter).map(|e| e.dst).collect()
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &content[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &content[s..]));
        }
        if !tokens.is_empty() {
            lines.push(Line { number: i + 1, tokens });
        }
    }
    lines
}

fn column(text_line: &(usize, &str)) -> usize {
    text_line.0 + 1
}

/// Parses the line format
///
/// ```text
/// vertex <id>
/// edge <label> <src> <dst>
/// family <stem> infinite
/// farc <stem> <src> <dst>
/// ```
///
/// Vertex and family declarations may appear after their first use.
pub fn parse(text: &str) -> Result<LabeledGraph> {
    let lines = tokenize(text);

    let mut vertices: Vec<String> = Vec::new();
    let mut vindex: HashMap<&str, usize> = HashMap::new();
    let mut stem_names: Vec<&str> = Vec::new();
    let mut stem_line: HashMap<&str, (usize, usize)> = HashMap::new();

    let arity = |line: &Line, n: usize, usage: &str| -> Result<()> {
        if line.tokens.len() != n {
            let col = line.tokens.get(n).map_or(column(&line.tokens[0]), column);
            return Err(Error::parse(line.number, col, ParseErrorKind::Syntax(format!("expected `{usage}`"))));
        }
        Ok(())
    };

    for line in &lines {
        match line.tokens[0].1 {
            "vertex" => {
                arity(line, 2, "vertex <id>")?;
                let tok = line.tokens[1];
                if vindex.contains_key(tok.1) {
                    return Err(Error::parse(line.number, column(&tok), ParseErrorKind::DuplicateVertex(tok.1.into())));
                }
                vindex.insert(tok.1, vertices.len());
                vertices.push(tok.1.to_string());
            }
            "family" => {
                arity(line, 3, "family <stem> infinite")?;
                let tok = line.tokens[1];
                if line.tokens[2].1 != "infinite" {
                    return Err(Error::parse(
                        line.number,
                        column(&line.tokens[2]),
                        ParseErrorKind::Syntax("only `infinite` families are supported".into()),
                    ));
                }
                if stem_line.contains_key(tok.1) {
                    return Err(Error::parse(line.number, column(&tok), ParseErrorKind::DuplicateFamily(tok.1.into())));
                }
                stem_line.insert(tok.1, (line.number, column(&tok)));
                stem_names.push(tok.1);
            }
            "edge" => arity(line, 4, "edge <label> <src> <dst>")?,
            "farc" => arity(line, 4, "farc <stem> <src> <dst>")?,
            other => {
                return Err(Error::parse(
                    line.number,
                    column(&line.tokens[0]),
                    ParseErrorKind::Syntax(format!("unknown directive `{other}`")),
                ))
            }
        }
    }
    if vertices.len() > MAX_VERTICES {
        return Err(Error::parse(1, 1, ParseErrorKind::TooManyVertices(vertices.len())));
    }

    let lookup = |line: &Line, i: usize| -> Result<usize> {
        let tok = line.tokens[i];
        vindex
            .get(tok.1)
            .copied()
            .ok_or_else(|| Error::parse(line.number, column(&tok), ParseErrorKind::UnknownVertex(tok.1.into())))
    };

    let mut label_names: Vec<&str> = Vec::new();
    let mut raw_edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut raw_farcs: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen: HashSet<(bool, &str, usize, usize)> = HashSet::new();
    for line in &lines {
        let is_edge = match line.tokens[0].1 {
            "edge" => true,
            "farc" => false,
            _ => continue,
        };
        let name_tok = line.tokens[1];
        let src = lookup(line, 2)?;
        let dst = lookup(line, 3)?;
        if !seen.insert((is_edge, name_tok.1, src, dst)) {
            return Err(Error::parse(line.number, column(&line.tokens[0]), ParseErrorKind::DuplicateEdge));
        }
        if is_edge {
            if stem_line.contains_key(name_tok.1) {
                return Err(Error::parse(line.number, column(&name_tok), ParseErrorKind::NameClash(name_tok.1.into())));
            }
            let l = match label_names.iter().position(|&n| n == name_tok.1) {
                Some(l) => l,
                None => {
                    label_names.push(name_tok.1);
                    label_names.len() - 1
                }
            };
            raw_edges.push((l, src, dst));
        } else {
            let s = stem_names.iter().position(|&n| n == name_tok.1).ok_or_else(|| {
                Error::parse(line.number, column(&name_tok), ParseErrorKind::UnknownFamily(name_tok.1.into()))
            })?;
            raw_farcs.push((s, src, dst));
        }
    }
    if vertices.is_empty() {
        let l = lines.first().map_or(1, |l| l.number);
        return Err(Error::parse(l, 1, ParseErrorKind::NoVertices));
    }
    for (i, name) in stem_names.iter().enumerate() {
        if !raw_farcs.iter().any(|f| f.0 == i) {
            let (l, c) = stem_line[name];
            return Err(Error::parse(l, c, ParseErrorKind::EmptyFamily(name.to_string())));
        }
    }
    let letter_total = label_names.len() + stem_names.len();
    if letter_total > MAX_LETTERS {
        return Err(Error::parse(1, 1, ParseErrorKind::TooManyLetters(letter_total)));
    }

    let nl = label_names.len();
    let letters = label_names
        .iter()
        .map(|n| Symbol { name: n.to_string(), kind: SymbolKind::Label })
        .chain(stem_names.iter().map(|n| Symbol { name: n.to_string(), kind: SymbolKind::Stem }))
        .collect();
    Ok(LabeledGraph {
        vertices,
        letters,
        edges: raw_edges.into_iter().map(|(letter, src, dst)| Arc { letter, src, dst }).collect(),
        farcs: raw_farcs.into_iter().map(|(s, src, dst)| Arc { letter: nl + s, src, dst }).collect(),
        stems: (nl..nl + stem_names.len()).collect(),
    })
}

/// Programmatic construction; `build` runs the same validation as [`parse`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    text: String,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str) -> Self {
        let _ = writeln!(self.text, "vertex {id}");
        self
    }

    pub fn edge(mut self, label: &str, src: &str, dst: &str) -> Self {
        let _ = writeln!(self.text, "edge {label} {src} {dst}");
        self
    }

    pub fn family(mut self, stem: &str) -> Self {
        let _ = writeln!(self.text, "family {stem} infinite");
        self
    }

    pub fn farc(mut self, stem: &str, src: &str, dst: &str) -> Self {
        let _ = writeln!(self.text, "farc {stem} {src} {dst}");
        self
    }

    pub fn build(self) -> Result<LabeledGraph> {
        if self.text.contains('#') {
            return Err(Error::InvalidInput("identifiers may not contain `#`".into()));
        }
        parse(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T1: &str = include_str!("../fixtures/T1.lg");
    const G1: &str = include_str!("../fixtures/G1.lg");
    const G2T: &str = include_str!("../fixtures/G2t.lg");
    const G4: &str = include_str!("../fixtures/G4.lg");

    fn kind(r: Result<LabeledGraph>) -> (usize, usize, ParseErrorKind) {
        match r {
            Err(Error::Parse { line, column, kind }) => (line, column, kind),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_fixtures() {
        let t1 = parse(T1).unwrap();
        assert_eq!((t1.vertex_count(), t1.edges().len(), t1.family_count()), (1, 1, 0));
        let g1 = parse(G1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edges().len(), g1.family_count()), (2, 2, 1));
        assert_eq!(g1.family_arcs().len(), 1);
        assert_eq!(g1.letters()[1], Symbol { name: "c".into(), kind: SymbolKind::Stem });
    }

    #[test]
    fn unknown_vertex_is_reported_with_position() {
        let (line, col, k) = kind(parse("edge v w a\n"));
        assert_eq!((line, col), (1, 8));
        assert_eq!(k, ParseErrorKind::UnknownVertex("w".into()));
        let (line, _, k) = kind(parse("vertex v\n\nedge a v x\n"));
        assert_eq!(line, 3);
        assert_eq!(k, ParseErrorKind::UnknownVertex("x".into()));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(kind(parse("vertex v\nvertex v\n")).2, ParseErrorKind::DuplicateVertex("v".into()));
        assert_eq!(kind(parse("vertex v\nfamily c infinite\n")).2, ParseErrorKind::EmptyFamily("c".into()));
        assert!(matches!(kind(parse("vertex v\nedge a v\n")).2, ParseErrorKind::Syntax(_)));
        assert!(matches!(kind(parse("vertex v\nloop a v\n")).2, ParseErrorKind::Syntax(_)));
        assert!(matches!(kind(parse("vertex v\nfamily c finite\n")).2, ParseErrorKind::Syntax(_)));
        assert_eq!(kind(parse("vertex v\nfarc c v v\n")).2, ParseErrorKind::UnknownFamily("c".into()));
        assert_eq!(kind(parse("vertex v\nedge a v v\nedge a v v\n")).2, ParseErrorKind::DuplicateEdge);
        assert_eq!(
            kind(parse("vertex v\nfamily c infinite\nfarc c v v\nedge c v v\n")).2,
            ParseErrorKind::NameClash("c".into())
        );
        assert_eq!(kind(parse("# nothing\n")).2, ParseErrorKind::NoVertices);
    }

    #[test]
    fn comments_and_forward_references() {
        let g = parse("edge a v v # loop\nvertex v\n").unwrap();
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn classification() {
        let c = classify_vertices(&parse(T1).unwrap());
        assert!(c.sinks.is_empty() && c.sources.is_empty() && c.infinite_emitters.is_empty());
        let g1 = parse(G1).unwrap();
        assert_eq!(classify_vertices(&g1).infinite_emitters, g1.set(&["v"]).unwrap());
        let g4 = parse(G4).unwrap();
        let c = classify_vertices(&g4);
        assert_eq!(c.infinite_emitters, g4.set(&["w"]).unwrap());
        assert_eq!(c.sources, g4.set(&["u"]).unwrap());
        assert!(c.sinks.is_empty());
    }

    #[test]
    fn relative_ranges() {
        let g1 = parse(G1).unwrap();
        let v = g1.set(&["v"]).unwrap();
        assert_eq!(relative_range(&g1, v, &g1.word(&["a"]).unwrap()).unwrap(), v);
        assert_eq!(relative_range(&g1, v, &Word::empty()).unwrap(), v);
        assert_eq!(relative_range(&g1, v, &g1.word(&["c[*]"]).unwrap()).unwrap(), g1.set(&["w"]).unwrap());
        let g2 = parse(G2T).unwrap();
        let w1 = g2.set(&["w1"]).unwrap();
        assert_eq!(relative_range(&g2, w1, &g2.word(&["a", "a"]).unwrap()).unwrap(), w1);
        assert!(matches!(g2.word(&["z"]), Err(Error::UnknownLabel(_))));
        assert!(relative_range(&g2, w1, &Word(vec![9])).is_err());
    }

    #[test]
    fn range_composes_letterwise() {
        let g2 = parse(G2T).unwrap();
        let all = g2.all_vertices();
        let n = g2.letter_count();
        for x in 0..n {
            for y in 0..n {
                let xy = Word(vec![x, y]);
                let step = relative_range(&g2, all, &Word::letter(x)).unwrap();
                assert_eq!(
                    relative_range(&g2, all, &xy).unwrap(),
                    relative_range(&g2, step, &Word::letter(y)).unwrap()
                );
            }
        }
    }

    #[test]
    fn serialize_round_trips() {
        for text in [T1, G1, G2T, G4] {
            let g = parse(text).unwrap();
            let s = g.serialize();
            assert_eq!(parse(&s).unwrap(), g);
            assert_eq!(parse(&s).unwrap().serialize(), s);
        }
    }

    #[test]
    fn builder_matches_parser() {
        let g = GraphBuilder::new()
            .vertex("v")
            .vertex("w")
            .edge("a", "v", "v")
            .edge("a", "w", "w")
            .family("c")
            .farc("c", "v", "w")
            .build()
            .unwrap();
        assert_eq!(g, parse(G1).unwrap());
    }

    #[test]
    fn words() {
        let w = Word(vec![0, 1, 0, 1]);
        assert_eq!(w.primitive_root(), Word(vec![0, 1]));
        assert!(!w.is_irreducible());
        assert!(Word(vec![0, 1, 1]).is_irreducible());
        assert_eq!(w.power_of(&Word(vec![0, 1])), Some(2));
        assert_eq!(w.power_of(&Word(vec![0])), None);
    }
}
