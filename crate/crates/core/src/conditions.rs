//! Decision procedures for the structural conditions and the simplicity verdict.
//!
//! Every verdict carries the list of routes that computed it. Routes must
//! agree; a disagreement is reported as [`Error::InternalInconsistency`].

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::accommodating::{ActionSystem, DEFAULT_MONOID_CAP};
use crate::boolean::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Word;
use crate::structure::{
    enumerate_hs, hereditary_closure, hs_closure, orbit_union, quotient_bds, HereditarySet, QuotientBds,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Simple,
    Minimal,
    ConditionL,
    ConditionK,
    StronglyCofinal,
    Disagreeable,
}

impl Property {
    pub const ALL: [Property; 6] = [
        Property::Simple,
        Property::Minimal,
        Property::ConditionL,
        Property::ConditionK,
        Property::StronglyCofinal,
        Property::Disagreeable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Simple => "simple",
            Property::Minimal => "minimal",
            Property::ConditionL => "cond-l",
            Property::ConditionK => "cond-k",
            Property::StronglyCofinal => "strongly-cofinal",
            Property::Disagreeable => "disagreeable",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown property `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleKind {
    Cycle,
    NoExitCycle,
    Loop,
    NoExitLoop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exit {
    /// After `position` letters the set `set` admits a label other than the next letter.
    Branch { position: usize, set: VertexSet },
    /// `A ⊊ r(A, α)`.
    Grows,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub word: Word,
    pub base: VertexSet,
    pub kind: CycleKind,
    pub exit: Option<Exit>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Cycle(CycleWitness),
    /// No-exit cycle in the quotient by the hereditary saturated set generated by `modulus`.
    QuotientCycle {
        modulus: VertexSet,
        cycle: CycleWitness,
    },
    /// Nonempty `base` with `ℒ(base E^{|word|n}) = {wordⁿ}` for all n.
    Agreeable {
        base: VertexSet,
        word: Word,
        root: Word,
    },
    /// Infinite label sequence `prefix · cycle^∞` whose ranges never enter ℋ(atom).
    Lasso {
        atom: VertexSet,
        prefix: Word,
        cycle: Word,
        state: VertexSet,
    },
    /// No regular `C` has `b ∖ C ∈ ℋ(a)`.
    RegComplement {
        a: VertexSet,
        b: VertexSet,
    },
    /// Proper nontrivial hereditary saturated set.
    ProperHs {
        generator: VertexSet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub id: &'static str,
    pub value: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: &'static str,
    pub value: bool,
    pub witness: Option<Witness>,
    pub routes: Vec<Route>,
}

impl Verdict {
    fn from_routes(property: &'static str, routes: Vec<Route>, witness: Option<Witness>) -> Result<Self> {
        let value = routes[0].value;
        if let Some(r) = routes.iter().find(|r| r.value != value) {
            return Err(Error::inconsistency(
                property,
                format!("route `{}` gives {} but `{}` gives {}", routes[0].id, value, r.id, r.value),
            ));
        }
        Ok(Verdict { property, value, witness: if value { None } else { witness }, routes })
    }
}

fn zero_hs(system: &ActionSystem) -> HereditarySet {
    hereditary_closure(system, VertexSet::EMPTY).expect("∅ ∈ ℰ")
}

fn single_explicit(system: &ActionSystem, mask: u64) -> Option<usize> {
    (mask.count_ones() == 1 && mask & system.stem_mask() == 0).then(|| mask.trailing_zeros() as usize)
}

/// The common letter when every quotient atom below `x` has Δ equal to one explicit letter.
fn forced_letter(q: &QuotientBds, x: VertexSet) -> Option<usize> {
    let mut letter = None;
    for atom in q.atoms_below(x) {
        let l = single_explicit(q.system(), q.delta(atom))?;
        if letter.is_some_and(|m| m != l) {
            return None;
        }
        letter = Some(l);
    }
    letter
}

/// No-exit cycles of the quotient dynamics, one canonical word per base.
///
/// Exit-freeness forces the next letter at every step, so each base has a single
/// candidate chain. On a return to the base, the word permutes the atoms below
/// it; the canonical word is the first return raised to the order of that permutation.
pub fn no_exit_cycles_in(q: &QuotientBds) -> Vec<CycleWitness> {
    let bound = q.classes().len();
    let mut out = Vec::new();
    for &x in q.classes().iter().filter(|c| !c.is_empty()) {
        let mut cur = x;
        let mut word = Word::empty();
        let mut returned = false;
        for _ in 0..bound {
            let Some(l) = forced_letter(q, cur) else { break };
            word = word.pushed(l);
            cur = q.act(l, cur);
            if cur == x {
                returned = true;
                break;
            }
        }
        if !returned {
            continue;
        }
        let atoms: Vec<VertexSet> = q.atoms_below(x).collect();
        let image = |a: VertexSet, w: &Word| w.letters().iter().fold(a, |acc, &l| q.act(l, acc));
        let perm: Option<Vec<usize>> =
            atoms.iter().map(|&a| atoms.iter().position(|&b| b == image(a, &word))).collect();
        let Some(perm) = perm else { continue };
        let k = permutation_order(&perm);
        let alpha = word.power(k);
        if q.classes().iter().filter(|c| c.is_subset(x)).all(|&b| image(b, &alpha) == b) {
            out.push(CycleWitness { word: alpha, base: x, kind: CycleKind::NoExitCycle, exit: None });
        }
    }
    out
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut order = 1;
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        if len > 0 {
            order = lcm(order, len);
        }
    }
    order
}

/// Whether the quotient dynamics has a no-exit cycle, by looking for a cycle of
/// atoms each sent onto the next atom by its single explicit letter.
pub fn has_atom_cycle(q: &QuotientBds) -> bool {
    let atoms: Vec<VertexSet> = q.atoms().collect();
    let next: Vec<Option<usize>> = atoms
        .iter()
        .map(|&a| single_explicit(q.system(), q.delta(a)).and_then(|l| atoms.iter().position(|&b| b == q.act(l, a))))
        .collect();
    (0..atoms.len()).any(|start| {
        let mut cur = start;
        for _ in 0..atoms.len() {
            match next[cur] {
                Some(n) if n == start => return true,
                Some(n) => cur = n,
                None => return false,
            }
        }
        false
    })
}

pub fn find_no_exit_cycles(system: &ActionSystem) -> Vec<CycleWitness> {
    no_exit_cycles_in(&quotient_bds(system, &zero_hs(system)).expect("{∅} is hereditary saturated"))
}

pub fn condition_l(system: &ActionSystem) -> Result<Verdict> {
    let q = quotient_bds(system, &zero_hs(system))?;
    let cycles = no_exit_cycles_in(&q);
    let routes = vec![
        Route { id: "deterministic-chain", value: cycles.is_empty() },
        Route { id: "atom-cycle", value: !has_atom_cycle(&q) },
    ];
    Verdict::from_routes(Property::ConditionL.as_str(), routes, cycles.into_iter().next().map(Witness::Cycle))
}

/// Loops `(w, A)` over the shortest monoid witnesses, with exit data.
pub fn loops(system: &ActionSystem) -> Vec<CycleWitness> {
    let monoid = system.transition_monoid(DEFAULT_MONOID_CAP);
    let mut out = Vec::new();
    for &a in system.algebra().elements().iter().filter(|e| !e.is_empty()) {
        for m in monoid.elements() {
            let image = monoid.apply(m, a);
            if a.is_subset(image) {
                out.push(loop_with_exit(system, &m.witness, a));
            }
        }
    }
    out
}

fn loop_with_exit(system: &ActionSystem, w: &Word, a: VertexSet) -> CycleWitness {
    let mut cur = a;
    for (t, &l) in w.letters().iter().enumerate() {
        let mask = system.out_mask(cur);
        if mask != 1 << l || system.is_stem(l) {
            return CycleWitness {
                word: w.clone(),
                base: a,
                kind: CycleKind::Loop,
                exit: Some(Exit::Branch { position: t, set: cur }),
            };
        }
        cur = system.act(l, cur);
    }
    if cur != a {
        return CycleWitness { word: w.clone(), base: a, kind: CycleKind::Loop, exit: Some(Exit::Grows) };
    }
    CycleWitness { word: w.clone(), base: a, kind: CycleKind::NoExitLoop, exit: None }
}

/// A loop with no exit, if any: a set whose whole out-label set is one explicit
/// letter at every step and which comes back to exactly itself.
pub fn find_loop_without_exit(system: &ActionSystem) -> Option<CycleWitness> {
    let bound = system.algebra().len();
    for &a in system.algebra().elements().iter().filter(|e| !e.is_empty()) {
        let mut cur = a;
        let mut word = Word::empty();
        for _ in 0..bound {
            let Some(l) = single_explicit(system, system.out_mask(cur)) else { break };
            word = word.pushed(l);
            cur = system.act(l, cur);
            if cur == a {
                return Some(CycleWitness { word, base: a, kind: CycleKind::NoExitLoop, exit: None });
            }
        }
    }
    None
}

pub fn every_loop_has_exit(system: &ActionSystem) -> bool {
    find_loop_without_exit(system).is_none()
}

/// Vertices from which arbitrarily long paths start, and for the others the
/// length of the longest path.
struct PathLengths {
    live: VertexSet,
    longest: Vec<usize>,
}

fn path_lengths(system: &ActionSystem) -> PathLengths {
    let g = system.graph();
    let n = g.vertex_count();
    let mut succ = vec![Vec::new(); n];
    for arc in g.all_arcs() {
        succ[arc.src].push(arc.dst);
    }
    let mut dead = VertexSet::EMPTY;
    let mut longest = vec![0usize; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if !dead.contains(v) && succ[v].iter().all(|&t| dead.contains(t)) {
                longest[v] = succ[v].iter().map(|&t| longest[t] + 1).max().unwrap_or(0);
                dead.insert(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    PathLengths { live: g.all_vertices() - dead, longest }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Some `β` with `ℒ(A E^{|β|n}) = {βⁿ}` for every n, with its primitive root.
///
/// An infinite path out of `A` runs through live vertices, and live-to-live arcs
/// must all carry the next letter of `β^∞`; that pins down the sequence. Arcs
/// leaving the sequence reach only dead vertices, so they realize a bounded
/// window of word lengths; `β` qualifies when no window holds a multiple of `|β|`.
fn agreeable_word(system: &ActionSystem, lengths: &PathLengths, a: VertexSet) -> Option<(Word, Word)> {
    if a.is_disjoint(lengths.live) {
        return None;
    }
    let g = system.graph();
    let mut states: Vec<VertexSet> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut seen: HashMap<VertexSet, usize> = HashMap::new();
    let mut x = a;
    let (s, q) = loop {
        let live_mask = g
            .all_arcs()
            .filter(|e| x.contains(e.src) && lengths.live.contains(e.src) && lengths.live.contains(e.dst))
            .fold(0u64, |m, e| m | (1 << e.letter));
        let l = single_explicit(system, live_mask)?;
        seen.insert(x, states.len());
        states.push(x);
        labels.push(l);
        x = system.act(l, x);
        if let Some(&s) = seen.get(&x) {
            break (s, states.len() - s);
        }
    };
    let idx = |j: usize| if j < s { j } else { s + (j - s) % q };
    let label = |j: usize| labels[idx(j)];
    let p = (1..=q).find(|&p| q % p == 0 && (0..q).all(|i| label(s + i) == label(s + i + p))).unwrap_or(q);
    if (0..s).any(|j| label(j) != label(j + p)) {
        return None;
    }
    let window: Vec<usize> = states
        .iter()
        .zip(&labels)
        .map(|(&st, &l)| {
            g.all_arcs()
                .filter(|e| st.contains(e.src) && (e.letter != l || system.is_stem(e.letter)))
                .map(|e| 1 + lengths.longest[e.dst])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let longest_window = window.iter().copied().max().unwrap_or(0);
    let period = lcm(p, q);
    let stable = period * (s + longest_window + 1).div_ceil(period);
    for m in (p..=stable).step_by(p) {
        let horizon = s + lcm(q, m);
        let blocked = (0..horizon).any(|b| {
            let first_multiple = (b / m + 1) * m;
            first_multiple <= b + window[idx(b)]
        });
        if !blocked {
            let beta = Word((0..m).map(label).collect());
            let root = Word((0..p).map(label).collect());
            return Some((beta, root));
        }
    }
    None
}

pub fn disagreeable(system: &ActionSystem) -> Result<Verdict> {
    let lengths = path_lengths(system);
    let found = system.algebra().nonempty().find_map(|a| {
        agreeable_word(system, &lengths, a).map(|(word, root)| Witness::Agreeable { base: a, word, root })
    });
    let routes = vec![Route { id: "periodic-chain", value: found.is_none() }];
    Verdict::from_routes(Property::Disagreeable.as_str(), routes, found)
}

/// Lasso in the range automaton avoiding ℋ(atom), if any.
fn cofinality_lasso(system: &ActionSystem, atom: VertexSet) -> Option<Witness> {
    let w = orbit_union(system, atom);
    let aut = system.range_automaton();
    let n = aut.states.len();
    let allowed: Vec<bool> = aut.states.iter().map(|s| !s.is_subset(w)).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(a, l, b) in &aut.transitions {
        if allowed[a] && allowed[b] {
            adj[a].push((l, b));
        }
    }
    // breadth-first from the initial letters, remembering how each state was reached
    let mut parent: Vec<Option<(Option<usize>, usize)>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &(l, s) in &aut.initial {
        if allowed[s] && parent[s].is_none() {
            parent[s] = Some((None, l));
            queue.push_back(s);
        }
    }
    let mut order = Vec::new();
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &(l, y) in &adj[x] {
            if parent[y].is_none() {
                parent[y] = Some((Some(x), l));
                queue.push_back(y);
            }
        }
    }
    order.sort();
    for &x in &order {
        if let Some(cycle) = shortest_return(&adj, x) {
            let mut prefix = Vec::new();
            let mut cur = x;
            loop {
                let (from, l) = parent[cur].unwrap();
                prefix.push(l);
                match from {
                    Some(f) => cur = f,
                    None => break,
                }
            }
            prefix.reverse();
            return Some(Witness::Lasso { atom, prefix: Word(prefix), cycle, state: aut.states[x] });
        }
    }
    None
}

fn shortest_return(adj: &[Vec<(usize, usize)>], start: usize) -> Option<Word> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut queue = VecDeque::from([start]);
    let mut visited = vec![false; adj.len()];
    while let Some(x) = queue.pop_front() {
        for &(l, y) in &adj[x] {
            if y == start {
                let mut word = vec![l];
                let mut cur = x;
                while cur != start {
                    let (p, pl) = parent[cur].unwrap();
                    word.push(pl);
                    cur = p;
                }
                word.reverse();
                return Some(Word(word));
            }
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some((x, l));
                queue.push_back(y);
            }
        }
    }
    None
}

pub fn strongly_cofinal(system: &ActionSystem) -> Result<Verdict> {
    let found = system.algebra().atoms().iter().find_map(|&a| cofinality_lasso(system, a));
    let routes = vec![Route { id: "automaton-lasso", value: found.is_none() }];
    Verdict::from_routes(Property::StronglyCofinal.as_str(), routes, found)
}

/// `∀A ≠ ∅ ∀B ∃C ∈ ℰ_reg : B ∖ C ∈ ℋ(A)`.
pub fn reg_complement_condition(system: &ActionSystem) -> Result<Verdict> {
    let mut found = None;
    'outer: for a in system.algebra().nonempty() {
        let h = hereditary_closure(system, a)?;
        for &b in system.algebra().elements() {
            if !system.regular_sets().iter().any(|&c| h.contains(b - c)) {
                found = Some(Witness::RegComplement { a, b });
                break 'outer;
            }
        }
    }
    let routes = vec![Route { id: "direct-search", value: found.is_none() }];
    Verdict::from_routes("reg-complement", routes, found)
}

pub fn minimal(system: &ActionSystem) -> Result<Verdict> {
    let top = system.algebra().top();
    let hs = enumerate_hs(system);
    let proper = hs.iter().map(|h| h.generator()).find(|&g| !g.is_empty() && g != top);
    let by_closure =
        system.algebra().nonempty().all(|a| hs_closure(system, a).map(|h| h.generator() == top).unwrap_or(false));
    let sc = strongly_cofinal(system)?.value;
    let rc = reg_complement_condition(system)?.value;
    let routes = vec![
        Route { id: "hs-enumeration", value: proper.is_none() },
        Route { id: "saturated-closure", value: by_closure },
        Route { id: "cofinal-and-reg-complement", value: sc && rc },
    ];
    Verdict::from_routes(Property::Minimal.as_str(), routes, proper.map(|generator| Witness::ProperHs { generator }))
}

pub fn condition_k(system: &ActionSystem) -> Result<Verdict> {
    let mut chain_witness = None;
    let mut atom_route = true;
    for h in enumerate_hs(system) {
        let q = quotient_bds(system, &h)?;
        if chain_witness.is_none() {
            if let Some(c) = no_exit_cycles_in(&q).into_iter().next() {
                chain_witness = Some(Witness::QuotientCycle { modulus: h.generator(), cycle: c });
            }
        }
        atom_route &= !has_atom_cycle(&q);
    }
    let routes = vec![
        Route { id: "quotient-chain", value: chain_witness.is_none() },
        Route { id: "quotient-atom-cycle", value: atom_route },
    ];
    Verdict::from_routes(Property::ConditionK.as_str(), routes, chain_witness)
}

/// `(w, a)` with `a ⊆ r(a, w)`, over the shortest monoid witnesses.
pub fn ultrafilter_cycles(system: &ActionSystem) -> Vec<(Word, VertexSet)> {
    let monoid = system.transition_monoid(DEFAULT_MONOID_CAP);
    let mut out = Vec::new();
    for &a in system.algebra().atoms() {
        for m in monoid.elements() {
            if a.is_subset(monoid.apply(m, a)) {
                out.push((m.witness.clone(), a));
            }
        }
    }
    out
}

/// `A ∩ B ∈ {A, ∅}` for every `B ∈ ℰ`; false for `A = ∅`.
pub fn is_minimal_set(system: &ActionSystem, a: VertexSet) -> bool {
    !a.is_empty()
        && system.algebra().contains(a)
        && system.algebra().elements().iter().all(|&b| {
            let c = a & b;
            c == a || c.is_empty()
        })
}

/// Verdicts for every property, each cross-checked.
#[derive(Clone, Debug)]
pub struct Verdicts {
    pub simple: Verdict,
    pub minimal: Verdict,
    pub condition_l: Verdict,
    pub condition_k: Verdict,
    pub strongly_cofinal: Verdict,
    pub disagreeable: Verdict,
    pub reg_complement: Verdict,
}

impl Verdicts {
    pub fn get(&self, p: Property) -> &Verdict {
        match p {
            Property::Simple => &self.simple,
            Property::Minimal => &self.minimal,
            Property::ConditionL => &self.condition_l,
            Property::ConditionK => &self.condition_k,
            Property::StronglyCofinal => &self.strongly_cofinal,
            Property::Disagreeable => &self.disagreeable,
        }
    }
}

pub fn all_verdicts(system: &ActionSystem) -> Result<Verdicts> {
    let minimal = minimal(system)?;
    let condition_l = condition_l(system)?;
    let condition_k = condition_k(system)?;
    let strongly_cofinal = strongly_cofinal(system)?;
    let disagreeable = disagreeable(system)?;
    let reg_complement = reg_complement_condition(system)?;
    let (m, l, k, sc, d, rc) = (
        minimal.value,
        condition_l.value,
        condition_k.value,
        strongly_cofinal.value,
        disagreeable.value,
        reg_complement.value,
    );
    let routes = vec![
        Route { id: "minimal-and-L", value: m && l },
        Route { id: "minimal-and-K", value: m && k },
        Route { id: "cofinal-L-reg-complement", value: sc && l && rc },
        Route { id: "cofinal-disagreeable-reg-complement", value: sc && d && rc },
    ];
    let witness = if !m { minimal.witness.clone() } else { condition_l.witness.clone() };
    let simple = Verdict::from_routes(Property::Simple.as_str(), routes, witness)?;
    Ok(Verdicts { simple, minimal, condition_l, condition_k, strongly_cofinal, disagreeable, reg_complement })
}

pub fn simple(system: &ActionSystem) -> Result<Verdict> {
    Ok(all_verdicts(system)?.simple)
}

pub fn verdict(system: &ActionSystem, p: Property) -> Result<Verdict> {
    match p {
        Property::Simple => simple(system),
        Property::Minimal => minimal(system),
        Property::ConditionL => condition_l(system),
        Property::ConditionK => condition_k(system),
        Property::StronglyCofinal => strongly_cofinal(system),
        Property::Disagreeable => disagreeable(system),
    }
}
