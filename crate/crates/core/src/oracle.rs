//! Brute-force reimplementations used to cross-check the optimized procedures.
//!
//! Nothing here calls into `structure`, `ideals` or `conditions`. Letter
//! actions are recomputed from the edge list with [`relative_range`].

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::accommodating::{build_e, ActionSystem};
use crate::boolean::{enumerate_ideals, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{relative_range, GraphBuilder, LabeledGraph, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_word_length: usize,
    /// Unrolling depth for strong cofinality; `None` means `2·|ℰ|`.
    pub max_unroll: Option<usize>,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_word_length: 12, max_unroll: None, seed: 0 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_length == 0 || self.max_unroll == Some(0) {
            return Err(Error::InvalidInput("oracle bounds must be positive".into()));
        }
        Ok(())
    }

    pub fn unroll(&self, system: &ActionSystem) -> usize {
        self.max_unroll.unwrap_or(2 * system.algebra().len())
    }
}

/// Letter action by edge scan.
struct Scan<'a> {
    graph: &'a LabeledGraph,
    letters: usize,
    elements: Vec<VertexSet>,
}

impl<'a> Scan<'a> {
    fn new(system: &'a ActionSystem) -> Self {
        Scan {
            graph: system.graph(),
            letters: system.graph().letter_count(),
            elements: system.algebra().elements().to_vec(),
        }
    }

    fn act(&self, l: usize, a: VertexSet) -> VertexSet {
        relative_range(self.graph, a, &Word::letter(l)).expect("letter in range")
    }

    fn act_word(&self, a: VertexSet, w: &Word) -> VertexSet {
        relative_range(self.graph, a, w).expect("letters in range")
    }

    fn range(&self, l: usize) -> VertexSet {
        self.act(l, self.graph.all_vertices())
    }

    fn is_stem(&self, l: usize) -> bool {
        self.graph.letters()[l].is_stem()
    }

    /// Out-labels of `b`; `None` stands for infinitely many.
    fn out_labels(&self, b: VertexSet) -> Option<Vec<usize>> {
        let labels: Vec<usize> = (0..self.letters).filter(|&l| !self.act(l, b).is_empty()).collect();
        if labels.iter().any(|&l| self.is_stem(l)) {
            None
        } else {
            Some(labels)
        }
    }

    fn nonempty_below(&self, a: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.elements.iter().copied().filter(move |b| !b.is_empty() && b.is_subset(a))
    }

    fn is_regular(&self, a: VertexSet) -> bool {
        self.nonempty_below(a).all(|b| matches!(self.out_labels(b), Some(ref l) if !l.is_empty()))
    }

    fn is_hereditary(&self, members: &[VertexSet]) -> bool {
        let set: HashSet<VertexSet> = members.iter().copied().collect();
        members.iter().all(|&a| (0..self.letters).all(|l| set.contains(&self.act(l, a))))
    }

    fn is_saturated(&self, members: &[VertexSet]) -> bool {
        let set: HashSet<VertexSet> = members.iter().copied().collect();
        self.elements.iter().all(|&a| {
            set.contains(&a) || !self.is_regular(a) || !(0..self.letters).all(|l| set.contains(&self.act(l, a)))
        })
    }

    /// ℋ(A) as the intersection of every hereditary ideal containing `a`.
    fn hereditary_hull(&self, a: VertexSet) -> VertexSet {
        let mut hull = self.elements.iter().fold(VertexSet::EMPTY, |acc, &e| acc | e);
        for &g in &self.elements {
            let members: Vec<VertexSet> = self.elements.iter().copied().filter(|e| e.is_subset(g)).collect();
            if a.is_subset(g) && self.is_hereditary(&members) {
                hull = hull & g;
            }
        }
        hull
    }

    /// Union of all successors of `y`.
    fn step_all(&self, y: VertexSet) -> VertexSet {
        self.graph.all_arcs().filter(|e| y.contains(e.src)).map(|e| e.dst).collect()
    }
}

/// ℰ for a weakly left-resolving graph, as all unions of the vertex classes that
/// share membership in every range `r(w)`.
pub fn brute_e(system: &ActionSystem) -> Vec<VertexSet> {
    let scan = Scan::new(system);
    let mut ranges: BTreeSet<VertexSet> = BTreeSet::new();
    let mut todo: Vec<VertexSet> = (0..scan.letters).map(|l| scan.range(l)).collect();
    while let Some(x) = todo.pop() {
        if ranges.insert(x) {
            todo.extend((0..scan.letters).map(|l| scan.act(l, x)));
        }
    }
    let top = ranges.iter().fold(VertexSet::EMPTY, |acc, &r| acc | r);
    let mut classes: Vec<VertexSet> = Vec::new();
    for v in top.iter() {
        let sig = |u: usize| ranges.iter().map(|r| r.contains(u)).collect::<Vec<bool>>();
        match classes.iter_mut().find(|c| sig(c.iter().next().unwrap()) == sig(v)) {
            Some(c) => c.insert(v),
            None => classes.push(VertexSet::singleton(v)),
        }
    }
    let mut out: Vec<VertexSet> = (0u64..(1 << classes.len()))
        .map(|mask| {
            classes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(VertexSet::EMPTY, |acc, (_, &c)| acc | c)
        })
        .collect();
    out.sort();
    out
}

/// Generators of the hereditary saturated sets, by literal filtering of every ideal.
pub fn brute_hs(system: &ActionSystem) -> Vec<VertexSet> {
    let scan = Scan::new(system);
    enumerate_ideals(system.algebra())
        .into_iter()
        .filter(|i| scan.is_hereditary(i.members()) && scan.is_saturated(i.members()))
        .map(|i| i.generator())
        .collect()
}

/// Generator of ℋ(A), as the intersection of all hereditary ideals containing it.
pub fn brute_hereditary(system: &ActionSystem, a: VertexSet) -> VertexSet {
    Scan::new(system).hereditary_hull(a)
}

/// Members of 𝒮(ℋ(A)) by the n-step criterion, with `r(B, β)` tracked as a
/// family of sets and `ℋ(A) ⊕ ℰ_reg` built as a literal set of unions.
pub fn brute_saturation(system: &ActionSystem, a: VertexSet) -> Vec<VertexSet> {
    let scan = Scan::new(system);
    let g = scan.hereditary_hull(a);
    let h: Vec<VertexSet> = scan.elements.iter().copied().filter(|e| e.is_subset(g)).collect();
    let reg: Vec<VertexSet> = scan.elements.iter().copied().filter(|&e| scan.is_regular(e)).collect();
    let hset: HashSet<VertexSet> = h.iter().copied().collect();
    let oplus: HashSet<VertexSet> = h.iter().flat_map(|&c| reg.iter().map(move |&d| c | d)).collect();
    let bound = scan.elements.len();
    scan.elements
        .iter()
        .copied()
        .filter(|&b| {
            let mut layer: BTreeSet<VertexSet> = BTreeSet::from([b]);
            for _ in 0..=bound {
                if layer.iter().all(|x| hset.contains(x)) {
                    return true;
                }
                if !layer.iter().all(|x| oplus.contains(x)) {
                    return false;
                }
                layer = layer
                    .iter()
                    .flat_map(|&x| (0..scan.letters).map(move |l| (x, l)))
                    .map(|(x, l)| scan.act(l, x))
                    .collect();
            }
            false
        })
        .collect()
}

/// Every exit-free cycle `(α, A)` with `|α| ≤ max_word_length`, powers included.
pub fn brute_cycles(system: &ActionSystem, cfg: &OracleConfig) -> Vec<(Word, VertexSet)> {
    let scan = Scan::new(system);
    let mut out = Vec::new();
    for &a in scan.elements.iter().filter(|e| !e.is_empty()) {
        let mut word = Word::empty();
        let mut cur = a;
        while word.len() < cfg.max_word_length {
            // every nonempty B below the current set must be regular with the same single label
            let mut next: Option<usize> = None;
            let mut ok = true;
            for b in scan.nonempty_below(cur) {
                match (scan.is_regular(b), scan.out_labels(b)) {
                    (true, Some(l)) if l.len() == 1 && next.is_none_or(|n| n == l[0]) => next = Some(l[0]),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            let Some(l) = next.filter(|_| ok) else { break };
            word = word.pushed(l);
            cur = scan.act(l, cur);
            if scan.nonempty_below(a).all(|b| scan.act_word(b, &word) == b) {
                out.push((word.clone(), a));
            }
        }
    }
    out
}

/// Every optimized cycle within the bound is found by brute force, and every
/// brute-force cycle is a power of the optimized word at the same base.
pub fn cycles_consistent(optimized: &[(Word, VertexSet)], brute: &[(Word, VertexSet)], max_len: usize) -> bool {
    let covered = optimized.iter().filter(|(w, _)| w.len() <= max_len).all(|c| brute.contains(c));
    let explained = brute.iter().all(|(w, a)| optimized.iter().any(|(ow, oa)| oa == a && w.power_of(ow).is_some()));
    covered && explained
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedVerdict {
    pub value: bool,
    /// The bound was large enough to decide.
    pub certified: bool,
}

/// Strong cofinality by unrolling `r(B, x_{[1,N]}) ∈ ℋ(A)` over every nonempty
/// `A`, every `B`, and every realizable label sequence.
pub fn brute_strong_cofinality(system: &ActionSystem, cfg: &OracleConfig) -> BoundedVerdict {
    let scan = Scan::new(system);
    let depth = cfg.unroll(system);
    let certified = depth >= scan.elements.len();
    for &a in scan.elements.iter().filter(|e| !e.is_empty()) {
        let w = scan.hereditary_hull(a);
        for &b in &scan.elements {
            // pairs (r(x_{[1,n]}), r(B, x_{[1,n]}))
            let mut layer: BTreeSet<(VertexSet, VertexSet)> = (0..scan.letters)
                .map(|l| (scan.range(l), scan.act(l, b)))
                .filter(|(r, q)| !r.is_empty() && !q.is_subset(w))
                .collect();
            for _ in 1..depth {
                layer = layer
                    .iter()
                    .flat_map(|&(r, q)| (0..scan.letters).map(move |l| (l, r, q)))
                    .map(|(l, r, q)| (scan.act(l, r), scan.act(l, q)))
                    .filter(|(r, q)| !r.is_empty() && !q.is_subset(w))
                    .collect();
                if layer.is_empty() {
                    break;
                }
            }
            if !layer.is_empty() {
                return BoundedVerdict { value: false, certified };
            }
        }
    }
    BoundedVerdict { value: true, certified }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KOracle {
    /// The atom's return words are exactly the powers of `word`.
    Violated {
        atom: VertexSet,
        word: Word,
    },
    NoViolationWithinBound {
        inconclusive: Vec<VertexSet>,
    },
}

const K_NODE_CAP: usize = 200_000;

/// Direct search for a pair `((α, η_a), a)`: an atom whose every return word
/// `β` (`a ⊆ r(a, β)`) is a power of the shortest one.
///
/// A violation is reported only when the word bound reaches the size of the
/// product of the set dynamics with an automaton for `α⁺`.
pub fn brute_condition_k(system: &ActionSystem, cfg: &OracleConfig) -> KOracle {
    let scan = Scan::new(system);
    let mut inconclusive = Vec::new();
    for &a in system.algebra().atoms() {
        // sets from which a return to a cover of `a` is still possible
        let mut can_return: HashSet<VertexSet> = HashSet::new();
        loop {
            let before = can_return.len();
            for &x in &scan.elements {
                if (0..scan.letters).any(|l| {
                    let y = scan.act(l, x);
                    a.is_subset(y) || can_return.contains(&y)
                }) {
                    can_return.insert(x);
                }
            }
            if can_return.len() == before {
                break;
            }
        }
        let mut alpha: Option<Word> = None;
        let mut refuted = false;
        let mut frontier = vec![(Word::empty(), a)];
        let mut nodes = 0usize;
        'search: for _ in 0..cfg.max_word_length {
            let mut next = Vec::new();
            for (w, x) in &frontier {
                for l in 0..scan.letters {
                    let y = scan.act(l, *x);
                    if y.is_empty() {
                        continue;
                    }
                    let w2 = w.pushed(l);
                    if a.is_subset(y) {
                        // another member of the family gives a second return word of the same length
                        if w2.letters().iter().any(|&m| scan.is_stem(m)) {
                            refuted = true;
                            break 'search;
                        }
                        match &alpha {
                            None => alpha = Some(w2.clone()),
                            Some(al) if w2.power_of(al).is_none() => {
                                refuted = true;
                                break 'search;
                            }
                            _ => {}
                        }
                    }
                    if can_return.contains(&y) {
                        nodes += 1;
                        next.push((w2, y));
                    }
                }
            }
            if nodes > K_NODE_CAP {
                inconclusive.push(a);
                break;
            }
            frontier = next;
        }
        if refuted || inconclusive.last() == Some(&a) {
            continue;
        }
        if let Some(word) = alpha {
            let bound = (scan.elements.len() - 1) * (word.len() + 2);
            if cfg.max_word_length >= bound {
                return KOracle::Violated { atom: a, word };
            }
            inconclusive.push(a);
        }
    }
    KOracle::NoViolationWithinBound { inconclusive }
}

/// Longest word length realizable from `y`; `None` when unbounded.
fn reach_length(scan: &Scan, memo: &mut HashMap<VertexSet, Option<usize>>, y: VertexSet) -> Option<usize> {
    if let Some(&m) = memo.get(&y) {
        return m;
    }
    let mut seen = HashSet::new();
    let mut cur = y;
    let mut len = 0;
    let out = loop {
        if cur.is_empty() {
            break Some(len - 1);
        }
        if !seen.insert(cur) {
            break None;
        }
        cur = scan.step_all(cur);
        len += 1;
    };
    memo.insert(y, out);
    out
}

/// Whether `ℒ(A E^{|β|n}) = {βⁿ}` for every `n` with `|β|n ≤ max_len`.
fn agrees_up_to(
    scan: &Scan,
    memo: &mut HashMap<VertexSet, Option<usize>>,
    a: VertexSet,
    beta: &Word,
    max_len: usize,
) -> bool {
    let m = beta.len();
    let mut cur = a;
    // windows [lo, hi] of lengths realized by words leaving β^∞
    let mut windows: Vec<(usize, Option<usize>)> = Vec::new();
    for j in 0..max_len {
        let x = beta.letters()[j % m];
        for l in 0..scan.letters {
            if l == x && !scan.is_stem(l) {
                continue;
            }
            let y = scan.act(l, cur);
            if !y.is_empty() {
                let r = reach_length(scan, memo, y);
                windows.push((j + 1, r.map(|r| j + 1 + r)));
            }
        }
        cur = scan.act(x, cur);
        if cur.is_empty() {
            return false;
        }
    }
    (1..=max_len / m).all(|n| {
        let len = n * m;
        !windows.iter().any(|&(lo, hi)| lo <= len && hi.is_none_or(|h| len <= h))
    })
}

/// Bounded search for an agreeable pair `(A, β)` with `|β| ≤ max_beta`.
pub fn brute_disagreeable(system: &ActionSystem, max_beta: usize) -> Option<(VertexSet, Word)> {
    let scan = Scan::new(system);
    let mut memo = HashMap::new();
    let mut words = vec![Word::empty()];
    let mut all = Vec::new();
    for _ in 0..max_beta {
        words = words.iter().flat_map(|w| (0..scan.letters).map(move |l| w.pushed(l))).collect();
        all.extend(words.iter().cloned());
    }
    for &a in scan.elements.iter().filter(|e| !e.is_empty()) {
        for beta in &all {
            let max_len = agreement_horizon(&scan, beta.len());
            if agrees_up_to(&scan, &mut memo, a, beta, max_len) {
                return Some((a, beta.clone()));
            }
        }
    }
    None
}

fn agreement_horizon(scan: &Scan, m: usize) -> usize {
    (scan.elements.len() + 2) * (m + 1) + scan.graph.vertex_count()
}

/// Checks an agreeable witness `(A, β)` out to a horizon that certifies it.
pub fn check_agreeable(system: &ActionSystem, a: VertexSet, beta: &Word) -> bool {
    let scan = Scan::new(system);
    let max_len = agreement_horizon(&scan, beta.len());
    agrees_up_to(&scan, &mut HashMap::new(), a, beta, max_len)
}

pub const CORPUS_MAX_VERTICES: usize = 5;
pub const CORPUS_MAX_LABELS: usize = 3;

#[derive(Clone, Debug)]
pub struct Corpus {
    pub graphs: Vec<LabeledGraph>,
    /// Generated instances that were not weakly left-resolving.
    pub discarded: usize,
}

/// One random graph: up to five vertices, three labels and one family, at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng) -> LabeledGraph {
    let nv = rng.gen_range(1..=CORPUS_MAX_VERTICES);
    let nl = rng.gen_range(1..=CORPUS_MAX_LABELS);
    let density = rng.gen_range(0.1..0.45);
    let labels = ["a", "b", "c"];
    let mut b = GraphBuilder::new();
    for v in 0..nv {
        b = b.vertex(&format!("v{v}"));
    }
    let mut edges = Vec::new();
    for l in labels.iter().take(nl) {
        for s in 0..nv {
            for d in 0..nv {
                if rng.gen_bool(density) {
                    edges.push((l, s, d));
                }
            }
        }
    }
    if edges.is_empty() {
        edges.push((&labels[0], rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    for (l, s, d) in edges {
        b = b.edge(l, &format!("v{s}"), &format!("v{d}"));
    }
    if rng.gen_bool(0.4) {
        let mut arcs = Vec::new();
        for s in 0..nv {
            for d in 0..nv {
                if rng.gen_bool(0.15) {
                    arcs.push((s, d));
                }
            }
        }
        if arcs.is_empty() {
            arcs.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
        }
        b = b.family("f");
        for (s, d) in arcs {
            b = b.farc("f", &format!("v{s}"), &format!("v{d}"));
        }
    }
    b.build().expect("generated graphs are well formed")
}

/// `count` weakly left-resolving instances, deterministic per seed.
pub fn random_corpus(cfg: &OracleConfig, count: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut graphs = Vec::with_capacity(count);
    let mut discarded = 0;
    while graphs.len() < count {
        let g = random_graph(&mut rng);
        if build_e(&g).check_wlr().is_ok() {
            graphs.push(g);
        } else {
            discarded += 1;
        }
    }
    Corpus { graphs, discarded }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse;

    const T1: &str = include_str!("../fixtures/T1.lg");
    const T2: &str = include_str!("../fixtures/T2.lg");
    const G1: &str = include_str!("../fixtures/G1.lg");
    const G4: &str = include_str!("../fixtures/G4.lg");
    const G6: &str = include_str!("../fixtures/G6.lg");

    fn sys(text: &str) -> ActionSystem {
        build_e(&parse(text).unwrap())
    }

    #[test]
    fn hs_counts() {
        assert_eq!(brute_hs(&sys(G1)).len(), 3);
        assert_eq!(brute_hs(&sys(T2)).len(), 4);
        assert_eq!(brute_hs(&sys(T1)).len(), 2);
    }

    #[test]
    fn cycle_examples() {
        let cfg = OracleConfig::default();
        let t1 = sys(T1);
        let v = t1.graph().set(&["v"]).unwrap();
        assert!(brute_cycles(&t1, &cfg).contains(&(t1.graph().word(&["a"]).unwrap(), v)));
        let g1 = sys(G1);
        let w = g1.graph().set(&["w"]).unwrap();
        assert!(brute_cycles(&g1, &cfg).contains(&(g1.graph().word(&["a"]).unwrap(), w)));
        assert!(brute_cycles(&sys(G6), &cfg).is_empty());
        // all powers up to the bound
        assert_eq!(brute_cycles(&t1, &cfg).len(), 12);
    }

    #[test]
    fn strong_cofinality_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(brute_strong_cofinality(&sys(T2), &cfg), BoundedVerdict { value: false, certified: true });
        assert!(brute_strong_cofinality(&sys(G4), &cfg).value);
        assert!(brute_strong_cofinality(&sys(T1), &cfg).value);
    }

    #[test]
    fn condition_k_examples() {
        let cfg = OracleConfig::default();
        let t1 = sys(T1);
        assert_eq!(
            brute_condition_k(&t1, &cfg),
            KOracle::Violated { atom: t1.graph().set(&["v"]).unwrap(), word: t1.graph().word(&["a"]).unwrap() }
        );
        assert!(matches!(brute_condition_k(&sys(G6), &cfg), KOracle::NoViolationWithinBound { .. }));
        assert!(matches!(brute_condition_k(&sys(G1), &cfg), KOracle::Violated { .. }));
    }

    #[test]
    fn e_matches_closure_on_fixtures() {
        for text in [T1, T2, G1, G4, G6, include_str!("../fixtures/G2t.lg")] {
            let s = sys(text);
            assert_eq!(brute_e(&s), s.algebra().elements());
        }
    }

    #[test]
    fn disagreeable_examples() {
        let t1 = sys(T1);
        assert!(brute_disagreeable(&t1, 3).is_some());
        assert!(brute_disagreeable(&sys(G6), 3).is_none());
        let g1 = sys(G1);
        let (a, _) = brute_disagreeable(&g1, 3).unwrap();
        assert_eq!(a, g1.graph().set(&["w"]).unwrap());
    }

    #[test]
    fn corpus_is_deterministic() {
        let cfg = OracleConfig { seed: 7, ..OracleConfig::default() };
        let a: Vec<String> = random_corpus(&cfg, 20).graphs.iter().map(|g| g.serialize()).collect();
        let b: Vec<String> = random_corpus(&cfg, 20).graphs.iter().map(|g| g.serialize()).collect();
        assert_eq!(a, b);
        for g in random_corpus(&cfg, 50).graphs {
            assert!(g.vertex_count() <= CORPUS_MAX_VERTICES);
            assert!(g.letter_count() - g.family_count() <= CORPUS_MAX_LABELS);
            assert!(g.family_count() <= 1);
            assert!(!g.edges().is_empty() || !g.family_arcs().is_empty());
        }
    }

    #[test]
    fn config_bounds_must_be_positive() {
        assert!(OracleConfig { max_word_length: 0, ..Default::default() }.validate().is_err());
        assert!(OracleConfig { max_unroll: Some(0), ..Default::default() }.validate().is_err());
        assert!(OracleConfig::default().validate().is_ok());
    }
}
