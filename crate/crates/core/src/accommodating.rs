//! The accommodating family ℰ, the letter action θ on it, and derived automata.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::boolean::{close_under, SetAlgebra, VertexSet};
use crate::graph::{range, LabeledGraph, Word};

pub const DEFAULT_WORD_CAP: usize = 10_000;
pub const DEFAULT_MONOID_CAP: usize = 50_000;

/// ℰ together with the maps `θ_α = r(·, α)`.
#[derive(Clone, Debug)]
pub struct ActionSystem {
    graph: LabeledGraph,
    /// `step[letter][vertex]` is `r({vertex}, letter)`.
    step: Vec<Vec<VertexSet>>,
    algebra: SetAlgebra,
    stems: u64,
    regular: Vec<VertexSet>,
    regular_top: VertexSet,
}

/// Witness that `r(A∩B, α) ≠ r(A,α) ∩ r(B,α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlrViolation {
    pub a: VertexSet,
    pub b: VertexSet,
    pub letter: usize,
}

impl ActionSystem {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn algebra(&self) -> &SetAlgebra {
        &self.algebra
    }

    pub fn letter_count(&self) -> usize {
        self.step.len()
    }

    pub fn letters(&self) -> std::ops::Range<usize> {
        0..self.step.len()
    }

    pub fn is_stem(&self, letter: usize) -> bool {
        self.stems & (1 << letter) != 0
    }

    pub fn stem_mask(&self) -> u64 {
        self.stems
    }

    /// `θ_α(A)`.
    pub fn act(&self, letter: usize, a: VertexSet) -> VertexSet {
        let row = &self.step[letter];
        a.iter().fold(VertexSet::EMPTY, |acc, v| acc | row[v])
    }

    pub fn act_word(&self, a: VertexSet, w: &Word) -> VertexSet {
        w.letters().iter().fold(a, |acc, &l| self.act(l, acc))
    }

    /// Letters `α` with `θ_α(A) ≠ ∅`, as a bit mask.
    pub fn out_mask(&self, a: VertexSet) -> u64 {
        self.letters().filter(|&l| !self.act(l, a).is_empty()).fold(0, |m, l| m | (1 << l))
    }

    pub fn out_letters(&self, a: VertexSet) -> Vec<usize> {
        let m = self.out_mask(a);
        self.letters().filter(|l| m & (1 << l) != 0).collect()
    }

    /// `r(α)`.
    pub fn range_of(&self, letter: usize) -> VertexSet {
        self.step[letter].iter().fold(VertexSet::EMPTY, |acc, &s| acc | s)
    }

    /// ℰ_reg in canonical order.
    pub fn regular_sets(&self) -> &[VertexSet] {
        &self.regular
    }

    /// Largest regular element; ℰ_reg is the ideal it generates.
    pub fn regular_top(&self) -> VertexSet {
        self.regular_top
    }

    pub fn is_regular(&self, a: VertexSet) -> bool {
        self.algebra.contains(a) && a.is_subset(self.regular_top)
    }

    pub fn check_wlr(&self) -> Result<(), WlrViolation> {
        let el: Vec<VertexSet> = self.algebra.nonempty().collect();
        for (i, &a) in el.iter().enumerate() {
            for &b in &el[i + 1..] {
                for l in self.letters() {
                    if self.act(l, a & b) != self.act(l, a) & self.act(l, b) {
                        return Err(WlrViolation { a, b, letter: l });
                    }
                }
            }
        }
        Ok(())
    }

    /// ℒ(AEⁿ): every word of length `n` with `r(A, word) ≠ ∅`.
    pub fn word_labels(&self, a: VertexSet, n: usize, cap: usize) -> WordSet {
        let mut out = WordSet { words: Vec::new(), truncated: false };
        let mut stack = vec![(a, Word::empty())];
        while let Some((x, w)) = stack.pop() {
            if w.len() == n {
                if out.words.len() >= cap {
                    out.truncated = true;
                    break;
                }
                out.words.push(w);
                continue;
            }
            for l in self.letters().rev() {
                let y = self.act(l, x);
                if !y.is_empty() {
                    stack.push((y, w.pushed(l)));
                }
            }
        }
        out.words.sort();
        out
    }

    /// Every distinct map `θ_w` (w nonempty), with a shortest witness `w`.
    ///
    /// Breadth-first in alphabet order, so the witness is also the
    /// lexicographically least among the shortest.
    pub fn transition_monoid(&self, cap: usize) -> TransitionMonoid {
        let atoms = self.algebra.atoms().to_vec();
        let mut seen: HashMap<Vec<VertexSet>, usize> = HashMap::new();
        let mut elements: Vec<MonoidElement> = Vec::new();
        let mut queue = VecDeque::new();
        let mut truncated = false;
        let identity = MonoidElement { images: atoms.clone(), witness: Word::empty() };
        queue.push_back(identity);
        'bfs: while let Some(m) = queue.pop_front() {
            for l in self.letters() {
                let images: Vec<VertexSet> = m.images.iter().map(|&x| self.act(l, x)).collect();
                if seen.contains_key(&images) {
                    continue;
                }
                if elements.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                let next = MonoidElement { images: images.clone(), witness: m.witness.pushed(l) };
                seen.insert(images, elements.len());
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
        TransitionMonoid { atoms, elements, index: seen, truncated }
    }

    /// States `r(β)` for nonempty β, with letter transitions between nonempty states.
    pub fn range_automaton(&self) -> RangeAutomaton {
        let mut states: BTreeSet<VertexSet> = BTreeSet::new();
        let mut queue: VecDeque<VertexSet> = VecDeque::new();
        for l in self.letters() {
            let r = self.range_of(l);
            if !r.is_empty() && states.insert(r) {
                queue.push_back(r);
            }
        }
        while let Some(x) = queue.pop_front() {
            for l in self.letters() {
                let y = self.act(l, x);
                if !y.is_empty() && states.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let states: Vec<VertexSet> = states.into_iter().collect();
        let index: HashMap<VertexSet, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut transitions = Vec::new();
        for (i, &x) in states.iter().enumerate() {
            for l in self.letters() {
                let y = self.act(l, x);
                if !y.is_empty() {
                    transitions.push((i, l, index[&y]));
                }
            }
        }
        let initial = self.letters().filter_map(|l| index.get(&self.range_of(l)).map(|&s| (l, s))).collect();
        RangeAutomaton { states, initial, transitions }
    }
}

/// Builds ℰ: the least family holding every `r(α)`, closed under each θ_α and
/// under ∪, ∩ and ∖.
pub fn build_e(graph: &LabeledGraph) -> ActionSystem {
    let n = graph.vertex_count();
    let letters = graph.letter_count();
    let mut step = vec![vec![VertexSet::EMPTY; n]; letters];
    for arc in graph.all_arcs() {
        step[arc.letter][arc.src].insert(arc.dst);
    }
    let seeds: Vec<VertexSet> = (0..letters).map(|l| range(graph, l)).collect();
    let act = |l: usize, a: VertexSet| a.iter().fold(VertexSet::EMPTY, |acc, v| acc | step[l][v]);
    let algebra = close_under(graph.all_vertices(), &seeds, |x, out| {
        out.extend((0..letters).map(|l| act(l, x)));
    });
    let stems = graph.stem_mask();
    let mut system =
        ActionSystem { graph: graph.clone(), step, algebra, stems, regular: Vec::new(), regular_top: VertexSet::EMPTY };
    // positivity and finiteness on atoms extend to every element below by monotonicity
    let top = system
        .algebra
        .atoms()
        .iter()
        .copied()
        .filter(|&a| {
            let m = system.out_mask(a);
            m != 0 && m & stems == 0
        })
        .fold(VertexSet::EMPTY, |acc, a| acc | a);
    system.regular = system.algebra.below(top).collect();
    system.regular_top = top;
    system
}

pub fn check_wlr(system: &ActionSystem) -> Result<(), WlrViolation> {
    system.check_wlr()
}

pub fn regular_sets(system: &ActionSystem) -> &[VertexSet] {
    system.regular_sets()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    pub words: Vec<Word>,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElement {
    /// Image of each atom of ℰ, in atom order.
    pub images: Vec<VertexSet>,
    pub witness: Word,
}

#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    atoms: Vec<VertexSet>,
    elements: Vec<MonoidElement>,
    index: HashMap<Vec<VertexSet>, usize>,
    pub truncated: bool,
}

impl TransitionMonoid {
    pub fn elements(&self) -> &[MonoidElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn apply(&self, m: &MonoidElement, a: VertexSet) -> VertexSet {
        self.atoms
            .iter()
            .zip(&m.images)
            .filter(|(at, _)| at.is_subset(a))
            .fold(VertexSet::EMPTY, |acc, (_, &img)| acc | img)
    }

    /// `m1` followed by `m2`.
    pub fn compose(&self, m1: &MonoidElement, m2: &MonoidElement) -> Option<&MonoidElement> {
        let images: Vec<VertexSet> = m1.images.iter().map(|&x| self.apply(m2, x)).collect();
        self.index.get(&images).map(|&i| &self.elements[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeAutomaton {
    pub states: Vec<VertexSet>,
    /// `(α, state of r(α))`.
    pub initial: Vec<(usize, usize)>,
    pub transitions: Vec<(usize, usize, usize)>,
}

impl RangeAutomaton {
    pub fn to_dot(&self, graph: &LabeledGraph) -> String {
        let name = |s: VertexSet| format!("{{{}}}", graph.set_names(s).join(","));
        let mut out = String::from("digraph range_automaton {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  init [shape=point];");
        for (i, &s) in self.states.iter().enumerate() {
            let _ = writeln!(out, "  s{i} [label=\"{}\"];", name(s));
        }
        for &(l, s) in &self.initial {
            let _ = writeln!(out, "  init -> s{s} [label=\"{}\"];", graph.letters()[l].display());
        }
        for &(a, l, b) in &self.transitions {
            let _ = writeln!(out, "  s{a} -> s{b} [label=\"{}\"];", graph.letters()[l].display());
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse, relative_range};

    fn sys(text: &str) -> ActionSystem {
        build_e(&parse(text).unwrap())
    }

    const T1: &str = include_str!("../fixtures/T1.lg");
    const G1: &str = include_str!("../fixtures/G1.lg");
    const G2T: &str = include_str!("../fixtures/G2t.lg");
    const G4: &str = include_str!("../fixtures/G4.lg");
    const G6: &str = include_str!("../fixtures/G6.lg");
    const W1: &str = include_str!("../fixtures/W1.lg");

    fn names(s: &ActionSystem, sets: &[VertexSet]) -> Vec<Vec<String>> {
        sets.iter().map(|&x| s.graph().set_names(x)).collect()
    }

    #[test]
    fn builds_e_on_fixtures() {
        let g1 = sys(G1);
        assert_eq!(names(&g1, g1.algebra().elements()), vec![vec![], vec!["v"], vec!["w"], vec!["v", "w"]]);
        let g4 = sys(G4);
        assert_eq!(names(&g4, g4.algebra().elements()), vec![vec![], vec!["v"], vec!["w"], vec!["v", "w"]]);
        let t1 = sys(T1);
        assert_eq!(t1.algebra().len(), 2);
        assert_eq!(sys(G2T).algebra().len(), 8);
    }

    #[test]
    fn regular_sets_on_fixtures() {
        let g1 = sys(G1);
        assert_eq!(names(&g1, g1.regular_sets()), vec![vec![], vec!["w"]]);
        let g4 = sys(G4);
        assert_eq!(names(&g4, g4.regular_sets()), vec![vec![], vec!["v"]]);
        let t1 = sys(T1);
        assert_eq!(t1.regular_sets().len(), 2);
    }

    #[test]
    fn wlr_checks() {
        assert!(sys(G6).check_wlr().is_ok());
        assert!(sys(T1).check_wlr().is_ok());
        let w1 = sys(W1);
        let g = w1.graph();
        assert_eq!(
            w1.check_wlr(),
            Err(WlrViolation {
                a: g.set(&["u"]).unwrap(),
                b: g.set(&["v"]).unwrap(),
                letter: g.letter_index("a").unwrap()
            })
        );
    }

    #[test]
    fn act_agrees_with_edge_scan() {
        for text in [T1, G1, G2T, G4, G6] {
            let s = sys(text);
            for &a in s.algebra().elements() {
                for l in s.letters() {
                    let w = Word::letter(l);
                    assert_eq!(s.act(l, a), relative_range(s.graph(), a, &w).unwrap());
                    assert!(s.algebra().contains(s.act(l, a)), "ℰ must be closed under θ");
                }
                for x in s.algebra().elements() {
                    for l in s.letters() {
                        assert_eq!(s.act(l, a | *x), s.act(l, a) | s.act(l, *x));
                    }
                }
            }
            for l in s.letters() {
                assert!(s.algebra().contains(s.range_of(l)));
                assert!(s.act(l, VertexSet::EMPTY).is_empty());
            }
        }
    }

    #[test]
    fn word_label_sets() {
        let t1 = sys(T1);
        let v = t1.graph().set(&["v"]).unwrap();
        let ws = t1.word_labels(v, 3, DEFAULT_WORD_CAP);
        assert_eq!(ws.words, vec![t1.graph().word(&["a", "a", "a"]).unwrap()]);

        let g1 = sys(G1);
        let g = g1.graph();
        let w = g.set(&["w"]).unwrap();
        assert_eq!(g1.word_labels(w, 2, DEFAULT_WORD_CAP).words, vec![g.word(&["a", "a"]).unwrap()]);
        let v = g.set(&["v"]).unwrap();
        let ws = g1.word_labels(v, 1, DEFAULT_WORD_CAP);
        let shown: Vec<Vec<String>> = ws.words.iter().map(|w| g.word_names(w)).collect();
        assert_eq!(shown, vec![vec!["a".to_string()], vec!["c[*]".to_string()]]);

        let g6 = sys(G6);
        let ws = g6.word_labels(g6.algebra().top(), 12, 100);
        assert!(ws.truncated);
        assert_eq!(ws.words.len(), 100);
    }

    #[test]
    fn monoid_examples() {
        let t1 = sys(T1);
        let m = t1.transition_monoid(DEFAULT_MONOID_CAP);
        assert_eq!(m.len(), 1);
        assert_eq!(m.elements()[0].images, t1.algebra().atoms().to_vec());

        let g1 = sys(G1);
        let g = g1.graph();
        let m = g1.transition_monoid(DEFAULT_MONOID_CAP);
        let theta_a = &m.elements()[0];
        assert_eq!(theta_a.images, g1.algebra().atoms().to_vec());
        let theta_c = &m.elements()[1];
        let w = g.set(&["w"]).unwrap();
        for &x in g1.algebra().elements() {
            let expect = if x.contains(0) { w } else { VertexSet::EMPTY };
            assert_eq!(m.apply(theta_c, x), expect);
        }
    }

    #[test]
    fn monoid_witnesses_are_sound() {
        for text in [T1, G1, G2T, G4, G6] {
            let s = sys(text);
            let m = s.transition_monoid(DEFAULT_MONOID_CAP);
            assert!(!m.truncated);
            for e in m.elements() {
                for &a in s.algebra().elements() {
                    assert_eq!(m.apply(e, a), s.act_word(a, &e.witness));
                }
                for f in m.elements() {
                    let c = m.compose(e, f).expect("monoid is closed");
                    let w = e.witness.concat(&f.witness);
                    for &a in s.algebra().atoms() {
                        assert_eq!(m.apply(c, a), s.act_word(a, &w));
                    }
                }
            }
        }
    }

    /// Independent G6 check: composition closure over all words up to length 6.
    #[test]
    fn g6_monoid_matches_word_enumeration() {
        let s = sys(G6);
        let m = s.transition_monoid(DEFAULT_MONOID_CAP);
        let atoms = s.algebra().atoms().to_vec();
        let mut maps = std::collections::HashSet::new();
        let mut frontier = vec![Word::empty()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &frontier {
                for l in s.letters() {
                    let w2 = w.pushed(l);
                    maps.insert(atoms.iter().map(|&a| s.act_word(a, &w2)).collect::<Vec<_>>());
                    next.push(w2);
                }
            }
            frontier = next;
        }
        assert_eq!(maps.len(), m.len());
        let g = s.graph();
        let (u, v) = (g.set(&["u"]).unwrap(), g.set(&["v"]).unwrap());
        let theta_a = &m.elements()[0];
        assert_eq!(m.apply(theta_a, u), v);
        assert_eq!(m.apply(theta_a, v), u);
    }

    #[test]
    fn automaton_states_are_ranges() {
        for text in [T1, G1, G2T, G4, G6] {
            let s = sys(text);
            let aut = s.range_automaton();
            for &st in &aut.states {
                assert!(s.algebra().contains(st));
            }
            // every state is r(β) for some nonempty β of length at most |ℰ|
            let mut ranges = std::collections::BTreeSet::new();
            let mut frontier: Vec<VertexSet> = s.letters().map(|l| s.range_of(l)).collect();
            for _ in 0..s.algebra().len() {
                ranges.extend(frontier.iter().copied().filter(|x| !x.is_empty()));
                frontier = frontier
                    .iter()
                    .flat_map(|&x| s.letters().map(move |l| (x, l)))
                    .map(|(x, l)| s.act(l, x))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
            }
            assert_eq!(aut.states, ranges.into_iter().collect::<Vec<_>>());
            assert!(aut.to_dot(s.graph()).starts_with("digraph"));
        }
    }
}
