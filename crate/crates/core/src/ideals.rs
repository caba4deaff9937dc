//! Admissible pairs `(H, S)` and the quotient data attached to each.

use std::fmt::Write as _;

use crate::accommodating::ActionSystem;
use crate::boolean::{ideal_generated, AlgebraIdeal, VertexSet};
use crate::error::{Error, Result};
use crate::structure::{enumerate_hs, orbit_union, quotient_bds, saturate, HereditarySet, QuotientBds};

/// `H` hereditary saturated with generator `W`, `S = I_T` with `W ∪ R ⊆ T ⊆ B`, where
/// `R` generates ℰ_reg and `B` generates ℬ_H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPair {
    pub h: HereditarySet,
    pub s: AlgebraIdeal,
}

impl IdealPair {
    pub fn w(&self) -> VertexSet {
        self.h.generator()
    }

    pub fn t(&self) -> VertexSet {
        self.s.generator()
    }

    pub fn leq(&self, other: &IdealPair) -> bool {
        self.w().is_subset(other.w()) && self.t().is_subset(other.t())
    }
}

pub fn is_admissible(system: &ActionSystem, w: VertexSet, t: VertexSet) -> bool {
    let alg = system.algebra();
    if !alg.contains(w) || !alg.contains(t) {
        return false;
    }
    let Ok(h) = ideal_generated(alg, w) else { return false };
    let Ok(h) = HereditarySet::from_ideal(system, h) else { return false };
    let Ok(q) = quotient_bds(system, &h) else { return false };
    (w | system.regular_top()).is_subset(t) && t.is_subset(q.b_h_top())
}

fn pair(system: &ActionSystem, w: VertexSet, t: VertexSet) -> IdealPair {
    let alg = system.algebra();
    IdealPair {
        h: HereditarySet::from_ideal(system, ideal_generated(alg, w).expect("w ∈ ℰ")).expect("hereditary"),
        s: ideal_generated(alg, t).expect("t ∈ ℰ"),
    }
}

/// Every admissible pair, by `H` and then by `S` in canonical generator order.
pub fn enumerate_pairs(system: &ActionSystem) -> Vec<IdealPair> {
    let mut out = Vec::new();
    for h in enumerate_hs(system) {
        let q = quotient_bds(system, &h).expect("enumerated sets are hereditary saturated");
        let lower = h.generator() | system.regular_top();
        let upper = q.b_h_top();
        for &t in system.algebra().elements() {
            if lower.is_subset(t) && t.is_subset(upper) {
                out.push(IdealPair { h: h.clone(), s: ideal_generated(system.algebra(), t).unwrap() });
            }
        }
    }
    out
}

/// Componentwise meet; always admissible.
pub fn meet(system: &ActionSystem, p: &IdealPair, q: &IdealPair) -> IdealPair {
    pair(system, p.w() & q.w(), p.t() & q.t())
}

/// Least admissible upper bound, generated directly.
///
/// Starting from the saturation of `W₁ ∪ W₂` and `T = T₁ ∪ T₂ ∪ W ∪ R`, any atom
/// of `T` outside `W` whose letter ranges all fall into `W` has an empty Δ in the
/// quotient, so every upper bound must absorb it into `H`.
pub fn join(system: &ActionSystem, p: &IdealPair, q: &IdealPair) -> IdealPair {
    let sat = |g: VertexSet| {
        let base =
            HereditarySet::from_ideal(system, ideal_generated(system.algebra(), orbit_union(system, g)).unwrap())
                .unwrap();
        saturate(system, &base).generator()
    };
    let mut w = sat(p.w() | q.w());
    let mut t = p.t() | q.t() | w | system.regular_top();
    loop {
        let v = system
            .algebra()
            .atoms_below(t)
            .filter(|b| b.is_disjoint(w) && system.letters().all(|l| system.act(l, *b).is_subset(w)))
            .fold(VertexSet::EMPTY, |acc, b| acc | b);
        if v.is_empty() {
            return pair(system, w, t);
        }
        w = sat(w | v);
        t = t | w;
    }
}

/// The enumerated pairs with the componentwise order.
#[derive(Clone, Debug)]
pub struct PairLattice {
    pub pairs: Vec<IdealPair>,
}

impl PairLattice {
    pub fn new(system: &ActionSystem) -> Self {
        PairLattice { pairs: enumerate_pairs(system) }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, p: &IdealPair) -> Option<usize> {
        self.pairs.iter().position(|x| x.w() == p.w() && x.t() == p.t())
    }

    /// Least upper bound in the enumerated poset.
    pub fn lub(&self, i: usize, j: usize) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&k| self.pairs[i].leq(&self.pairs[k]) && self.pairs[j].leq(&self.pairs[k]))
            .collect();
        ubs.iter().copied().find(|&k| ubs.iter().all(|&m| self.pairs[k].leq(&self.pairs[m])))
    }

    /// Greatest lower bound in the enumerated poset.
    pub fn glb(&self, i: usize, j: usize) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.len())
            .filter(|&k| self.pairs[k].leq(&self.pairs[i]) && self.pairs[k].leq(&self.pairs[j]))
            .collect();
        lbs.iter().copied().find(|&k| lbs.iter().all(|&m| self.pairs[m].leq(&self.pairs[k])))
    }

    /// `(i, j)` with `i < j` covered by `j`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.pairs[a].leq(&self.pairs[b]);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len())
            .all(|i| (0..self.len()).all(|j| self.pairs[i].leq(&self.pairs[j]) || self.pairs[j].leq(&self.pairs[i])))
    }

    /// Meets and joins exist, stay admissible, match the generated forms, and
    /// satisfy the lattice laws.
    pub fn verify(&self, system: &ActionSystem) -> Result<()> {
        let n = self.len();
        let fail = |d: String| Err(Error::inconsistency("pair lattice", d));
        let mut m = vec![vec![0usize; n]; n];
        let mut j = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let (p, q) = (&self.pairs[a], &self.pairs[b]);
                let gm = meet(system, p, q);
                let gj = join(system, p, q);
                let (Some(im), Some(ij)) = (self.index_of(&gm), self.index_of(&gj)) else {
                    return fail(format!("meet or join of #{a} and #{b} is not admissible"));
                };
                if self.glb(a, b) != Some(im) {
                    return fail(format!("meet of #{a} and #{b} is not the greatest lower bound"));
                }
                if self.lub(a, b) != Some(ij) {
                    return fail(format!("join of #{a} and #{b} is not the least upper bound"));
                }
                m[a][b] = im;
                j[a][b] = ij;
            }
        }
        for a in 0..n {
            if m[a][a] != a || j[a][a] != a {
                return fail(format!("idempotence fails at #{a}"));
            }
            for b in 0..n {
                if m[a][b] != m[b][a] || j[a][b] != j[b][a] {
                    return fail(format!("commutativity fails at #{a}, #{b}"));
                }
                if m[a][j[a][b]] != a || j[a][m[a][b]] != a {
                    return fail(format!("absorption fails at #{a}, #{b}"));
                }
                for c in 0..n {
                    if m[m[a][b]][c] != m[a][m[b][c]] || j[j[a][b]][c] != j[a][j[b][c]] {
                        return fail(format!("associativity fails at #{a}, #{b}, #{c}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Hasse diagram.
    pub fn to_dot(&self, system: &ActionSystem) -> String {
        let g = system.graph();
        let name = |s: VertexSet| format!("{{{}}}", g.set_names(s).join(","));
        let mut out = String::from("digraph ideal_pairs {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, p) in self.pairs.iter().enumerate() {
            let _ = writeln!(out, "  p{i} [label=\"H=I{} S=I{}\"];", name(p.w()), name(p.t()));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  p{a} -> p{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// `(A, Δ_[A])` for an atom `A` of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub atom: VertexSet,
    pub delta: u64,
    /// `A` is regular and no letter dropped out modulo `H`, so the generator vanishes.
    pub trivial: bool,
}

pub fn ideal_generators(system: &ActionSystem, p: &IdealPair) -> Vec<Generator> {
    let q = quotient_bds(system, &p.h).expect("pair is admissible");
    system
        .algebra()
        .atoms_below(p.t())
        .map(|atom| {
            let delta = q.delta(q.class_of(atom));
            let full = system.out_mask(atom);
            Generator { atom, delta, trivial: system.is_regular(atom) && delta == full }
        })
        .collect()
}

/// ℰ/H with range ideals `[ℐ_{r(α)}]` and relative set `[S]`.
#[derive(Clone, Debug)]
pub struct RelativeGbds<'a> {
    pub base: QuotientBds<'a>,
    /// Generator `r(α) ∖ W` of `[ℐ_{r(α)}]`, per letter.
    pub range_ideals: Vec<VertexSet>,
    /// Generator `T ∖ W` of `[S]`.
    pub relative: VertexSet,
}

impl RelativeGbds<'_> {
    /// Letters acting nontrivially on some class.
    pub fn active_letters(&self) -> Vec<usize> {
        let sys = self.base.system();
        sys.letters().filter(|&l| self.base.classes().iter().any(|&c| !self.base.act(l, c).is_empty())).collect()
    }

    /// `ℛ_α ⊆ [ℐ_{r(α)}]` for every letter, and `[S]` an ideal of the regular classes.
    pub fn check_axioms(&self) -> bool {
        let base = &self.base;
        let sys = base.system();
        let ranges_ok =
            sys.letters().all(|l| base.classes().iter().all(|&c| base.act(l, c).is_subset(self.range_ideals[l])));
        let relative_ok = base.is_regular_class(self.relative)
            && base.classes().iter().filter(|c| c.is_subset(self.relative)).all(|&c| base.is_regular_class(c));
        ranges_ok && relative_ok
    }
}

pub fn quotient_rgbds<'a>(system: &'a ActionSystem, p: &IdealPair) -> Result<RelativeGbds<'a>> {
    let base = quotient_bds(system, &p.h)?;
    let w = p.w();
    let range_ideals = system.letters().map(|l| system.range_of(l) - w).collect();
    Ok(RelativeGbds { relative: p.t() - w, range_ideals, base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    Zero,
    CirclePattern,
    Unclassified,
}

impl QuotientKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QuotientKind::Zero => "zero",
            QuotientKind::CirclePattern => "circle-algebra pattern",
            QuotientKind::Unclassified => "unclassified",
        }
    }
}

/// Conservative recognizer: one nonzero class fixed by a single explicit
/// letter, inside that letter's range ideal, with the relative set full.
pub fn recognize_quotient(r: &RelativeGbds) -> QuotientKind {
    let classes = r.base.classes();
    if classes.len() == 1 {
        return QuotientKind::Zero;
    }
    let sys = r.base.system();
    let active = r.active_letters();
    if classes.len() == 2 && active.len() == 1 {
        let x = classes[1];
        let l = active[0];
        if !sys.is_stem(l) && r.base.act(l, x) == x && x.is_subset(r.range_ideals[l]) && r.relative == x {
            return QuotientKind::CirclePattern;
        }
    }
    QuotientKind::Unclassified
}
