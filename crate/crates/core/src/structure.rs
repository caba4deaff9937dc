//! Hereditary and saturated subsets of ℰ, and quotient dynamics modulo them.
//!
//! In a finite algebra each hereditary set is a principal ideal `I_W`, so it
//! is carried around by its generator `W`.

use std::collections::HashSet;

use crate::accommodating::ActionSystem;
use crate::boolean::{ideal_generated, quotient, AlgebraIdeal, QuotientAlgebra, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditarySet {
    ideal: AlgebraIdeal,
}

impl HereditarySet {
    fn new(system: &ActionSystem, generator: VertexSet) -> Self {
        HereditarySet { ideal: ideal_generated(system.algebra(), generator).expect("generator lies in ℰ") }
    }

    /// Wraps an ideal after checking that it is hereditary.
    pub fn from_ideal(system: &ActionSystem, ideal: AlgebraIdeal) -> Result<Self> {
        if !is_hereditary(system, ideal.members()) {
            return Err(Error::InvalidInput("ideal is not hereditary".into()));
        }
        Ok(HereditarySet { ideal })
    }

    pub fn generator(&self) -> VertexSet {
        self.ideal.generator()
    }

    pub fn members(&self) -> &[VertexSet] {
        self.ideal.members()
    }

    pub fn ideal(&self) -> &AlgebraIdeal {
        &self.ideal
    }

    pub fn contains(&self, a: VertexSet) -> bool {
        self.ideal.contains(a)
    }

    pub fn is_subset(&self, other: &HereditarySet) -> bool {
        self.generator().is_subset(other.generator())
    }
}

/// Union of the orbit `{r(A, β)}` with ε included.
pub fn orbit_union(system: &ActionSystem, a: VertexSet) -> VertexSet {
    let mut w = a;
    loop {
        let next = system.letters().fold(w, |acc, l| acc | system.act(l, w));
        if next == w {
            return w;
        }
        w = next;
    }
}

/// ℋ(A).
pub fn hereditary_closure(system: &ActionSystem, a: VertexSet) -> Result<HereditarySet> {
    if !system.algebra().contains(a) {
        return Err(Error::UnknownElement);
    }
    Ok(HereditarySet::new(system, orbit_union(system, a)))
}

/// Literal check: closed under unions, subelements and every θ_α.
pub fn is_hereditary(system: &ActionSystem, set: &[VertexSet]) -> bool {
    let members: HashSet<VertexSet> = set.iter().copied().collect();
    set.iter().all(|&a| {
        system.algebra().contains(a)
            && set.iter().all(|&b| members.contains(&(a | b)))
            && system.algebra().below(a).all(|b| members.contains(&b))
            && system.letters().all(|l| members.contains(&system.act(l, a)))
    })
}

/// Literal check: any regular `A` whose letter ranges all lie in the set is in the set.
pub fn is_saturated(system: &ActionSystem, set: &[VertexSet]) -> bool {
    let members: HashSet<VertexSet> = set.iter().copied().collect();
    system
        .regular_sets()
        .iter()
        .all(|&a| members.contains(&a) || !system.letters().all(|l| members.contains(&system.act(l, a))))
}

/// `{C ∪ D : C ∈ h, D ∈ reg}`, canonical order.
pub fn oplus(h: &[VertexSet], reg: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = h.iter().flat_map(|&c| reg.iter().map(move |&d| c | d)).collect();
    out.sort();
    out.dedup();
    out
}

/// Least saturated hereditary superset, by adding saturable regular elements until stable.
pub fn saturate(system: &ActionSystem, h: &HereditarySet) -> HereditarySet {
    let mut g = h.generator();
    loop {
        let mut grown = g;
        for &a in system.regular_sets() {
            if !a.is_subset(grown) && system.letters().all(|l| system.act(l, a).is_subset(grown)) {
                grown = grown | a;
            }
        }
        let grown = orbit_union(system, grown);
        if grown == g {
            return HereditarySet::new(system, g);
        }
        g = grown;
    }
}

/// 𝒮(ℋ(A)).
pub fn hs_closure(system: &ActionSystem, a: VertexSet) -> Result<HereditarySet> {
    Ok(saturate(system, &hereditary_closure(system, a)?))
}

/// Members of the saturation, by the n-step criterion: some `n` with every
/// `r(B, β)`, `|β| = n`, in `h`, and every `r(B, γ)`, `|γ| < n`, in `h ⊕ ℰ_reg`.
///
/// Both conditions are ideal conditions, so it is enough to track the union
/// `U_n` of all `r(B, β)` with `|β| = n`.
pub fn saturation_by_steps(system: &ActionSystem, h: &HereditarySet) -> Vec<VertexSet> {
    let g = h.generator();
    let reg = system.regular_top();
    let bound = system.algebra().len();
    system
        .algebra()
        .elements()
        .iter()
        .copied()
        .filter(|&b| {
            let mut u = b;
            for _ in 0..=bound {
                if u.is_subset(g) {
                    return true;
                }
                if !(u - g).is_subset(reg) {
                    return false;
                }
                u = system.letters().fold(VertexSet::EMPTY, |acc, l| acc | system.act(l, u));
            }
            false
        })
        .collect()
}

/// Every hereditary saturated subset, by filtering the ideals of ℰ.
pub fn enumerate_hs(system: &ActionSystem) -> Vec<HereditarySet> {
    crate::boolean::enumerate_ideals(system.algebra())
        .into_iter()
        .filter(|i| is_hereditary(system, i.members()) && is_saturated(system, i.members()))
        .map(|ideal| HereditarySet { ideal })
        .collect()
}

/// `{𝒮(ℋ(A)) : A ∈ ℰ}`, sorted by generator; equal to [`enumerate_hs`].
pub fn hs_by_closure(system: &ActionSystem) -> Vec<HereditarySet> {
    let mut gens: Vec<VertexSet> = system
        .algebra()
        .elements()
        .iter()
        .map(|&a| orbit_union(system, a))
        .map(|w| saturate(system, &HereditarySet::new(system, w)).generator())
        .collect();
    gens.sort();
    gens.dedup();
    gens.into_iter().map(|g| HereditarySet::new(system, g)).collect()
}

pub fn is_hereditary_saturated(system: &ActionSystem, h: &HereditarySet) -> bool {
    is_hereditary(system, h.members()) && is_saturated(system, h.members())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lambda {
    Finite(usize),
    Infinite,
}

/// ℰ/H with the induced action `θ_α([A]) = [r(A, α)]`.
#[derive(Clone, Debug)]
pub struct QuotientBds<'a> {
    system: &'a ActionSystem,
    h: HereditarySet,
    quotient: QuotientAlgebra,
    regular_classes: Vec<VertexSet>,
    b_h: Vec<VertexSet>,
    b_h_top: VertexSet,
}

impl<'a> QuotientBds<'a> {
    pub fn system(&self) -> &'a ActionSystem {
        self.system
    }

    pub fn modulus(&self) -> &HereditarySet {
        &self.h
    }

    pub fn quotient(&self) -> &QuotientAlgebra {
        &self.quotient
    }

    /// Representatives `A ∖ W`, `[∅]` first.
    pub fn classes(&self) -> &[VertexSet] {
        self.quotient.classes()
    }

    pub fn class_of(&self, a: VertexSet) -> VertexSet {
        a - self.h.generator()
    }

    /// Atoms of ℰ outside `W`; these represent the atoms of ℰ/H.
    pub fn atoms(&self) -> impl Iterator<Item = VertexSet> + '_ {
        let w = self.h.generator();
        self.system.algebra().atoms().iter().copied().filter(move |a| !a.is_subset(w))
    }

    pub fn atoms_below(&self, class: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.atoms().filter(move |a| a.is_subset(class))
    }

    pub fn act(&self, letter: usize, class: VertexSet) -> VertexSet {
        self.class_of(self.system.act(letter, class))
    }

    /// Δ_[A] as a letter mask.
    pub fn delta(&self, class: VertexSet) -> u64 {
        self.system.letters().filter(|&l| !self.act(l, class).is_empty()).fold(0, |m, l| m | (1 << l))
    }

    pub fn lambda(&self, class: VertexSet) -> Lambda {
        let d = self.delta(class);
        if d & self.system.stem_mask() != 0 {
            Lambda::Infinite
        } else {
            Lambda::Finite(d.count_ones() as usize)
        }
    }

    pub fn regular_classes(&self) -> &[VertexSet] {
        &self.regular_classes
    }

    pub fn is_regular_class(&self, class: VertexSet) -> bool {
        self.regular_classes.binary_search(&self.class_of(class)).is_ok()
    }

    /// ℬ_H in canonical order.
    pub fn b_h(&self) -> &[VertexSet] {
        &self.b_h
    }

    /// Generator of ℬ_H.
    pub fn b_h_top(&self) -> VertexSet {
        self.b_h_top
    }
}

pub fn quotient_bds<'a>(system: &'a ActionSystem, h: &HereditarySet) -> Result<QuotientBds<'a>> {
    if !is_hereditary_saturated(system, h) {
        return Err(Error::InvalidInput("quotient requires a hereditary saturated set".into()));
    }
    let quotient = quotient(system.algebra(), h.ideal())?;
    let mut q = QuotientBds {
        system,
        h: h.clone(),
        quotient,
        regular_classes: Vec::new(),
        b_h: Vec::new(),
        b_h_top: VertexSet::EMPTY,
    };
    let stems = system.stem_mask();
    let class_ok = |q: &QuotientBds, y: VertexSet| {
        let d = q.delta(y);
        d != 0 && d & stems == 0
    };
    // regular classes straight from the definition: every nonzero class below has 0 < λ < ∞
    q.regular_classes = q
        .classes()
        .iter()
        .copied()
        .filter(|&x| q.classes().iter().filter(|y| !y.is_empty() && y.is_subset(x)).all(|&y| class_ok(&q, y)))
        .collect();
    let by_class: Vec<VertexSet> = system
        .algebra()
        .elements()
        .iter()
        .copied()
        .filter(|&a| q.regular_classes.binary_search(&q.class_of(a)).is_ok())
        .collect();
    let top = q.atoms().filter(|&a| class_ok(&q, a)).fold(h.generator(), |acc, a| acc | a);
    let by_atoms: Vec<VertexSet> = system.algebra().below(top).collect();
    if by_class != by_atoms {
        return Err(Error::inconsistency(
            "B_H",
            format!("class route {by_class:?} differs from atom route {by_atoms:?}"),
        ));
    }
    q.b_h = by_atoms;
    q.b_h_top = top;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accommodating::build_e;
    use crate::graph::parse;

    const T1: &str = include_str!("../fixtures/T1.lg");
    const T2: &str = include_str!("../fixtures/T2.lg");
    const G1: &str = include_str!("../fixtures/G1.lg");
    const G2T: &str = include_str!("../fixtures/G2t.lg");
    const G4: &str = include_str!("../fixtures/G4.lg");
    const G6: &str = include_str!("../fixtures/G6.lg");

    fn sys(text: &str) -> ActionSystem {
        build_e(&parse(text).unwrap())
    }

    fn s(sys: &ActionSystem, names: &[&str]) -> VertexSet {
        sys.graph().set(names).unwrap()
    }

    #[test]
    fn hereditary_closure_examples() {
        let g2 = sys(G2T);
        let ra = g2.range_of(g2.graph().letter_index("a").unwrap());
        let h = hereditary_closure(&g2, ra).unwrap();
        assert_eq!(h.members(), &[VertexSet::EMPTY, s(&g2, &["w1"]), s(&g2, &["w2"]), s(&g2, &["w1", "w2"])]);
        let g4 = sys(G4);
        let h = hereditary_closure(&g4, s(&g4, &["w"])).unwrap();
        assert_eq!(h.members(), &[VertexSet::EMPTY, s(&g4, &["w"])]);
        assert!(!h.contains(s(&g4, &["v", "w"])));
        let t1 = sys(T1);
        assert_eq!(hereditary_closure(&t1, s(&t1, &["v"])).unwrap().members(), t1.algebra().elements());
        assert!(matches!(hereditary_closure(&g4, s(&g4, &["u"])), Err(Error::UnknownElement)));
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(&[VertexSet::EMPTY], &[VertexSet::EMPTY]), vec![VertexSet::EMPTY]);
        let g2 = sys(G2T);
        let ra = g2.range_of(g2.graph().letter_index("a").unwrap());
        let h = hereditary_closure(&g2, ra).unwrap();
        assert!(!oplus(h.members(), g2.regular_sets()).contains(&s(&g2, &["v1"])));
        let g4 = sys(G4);
        let h = hereditary_closure(&g4, s(&g4, &["w"])).unwrap();
        assert!(oplus(h.members(), g4.regular_sets()).contains(&s(&g4, &["v", "w"])));
    }

    #[test]
    fn saturation_examples() {
        let g1 = sys(G1);
        let h = hereditary_closure(&g1, s(&g1, &["w"])).unwrap();
        assert_eq!(saturate(&g1, &h).members(), &[VertexSet::EMPTY, s(&g1, &["w"])]);
        let g4 = sys(G4);
        let h = hereditary_closure(&g4, s(&g4, &["w"])).unwrap();
        assert_eq!(saturate(&g4, &h).members(), g4.algebra().elements());
        let g2 = sys(G2T);
        let ra = g2.range_of(g2.graph().letter_index("a").unwrap());
        let h = hereditary_closure(&g2, ra).unwrap();
        let sat = saturate(&g2, &h);
        assert_eq!(sat, h);
        assert!(!sat.contains(s(&g2, &["v1"])));
    }

    #[test]
    fn predicates() {
        for text in [T1, G1, G4, G6] {
            let x = sys(text);
            assert!(is_hereditary(&x, &[VertexSet::EMPTY]));
            assert!(is_saturated(&x, &[VertexSet::EMPTY]));
        }
        let g1 = sys(G1);
        let w = [VertexSet::EMPTY, s(&g1, &["w"])];
        assert!(is_hereditary(&g1, &w) && is_saturated(&g1, &w));
        assert!(!is_hereditary(&g1, &[VertexSet::EMPTY, s(&g1, &["v"])]));
    }

    fn gens(list: &[HereditarySet]) -> Vec<VertexSet> {
        list.iter().map(|h| h.generator()).collect()
    }

    #[test]
    fn hs_enumeration_examples() {
        let g1 = sys(G1);
        assert_eq!(gens(&enumerate_hs(&g1)), vec![VertexSet::EMPTY, s(&g1, &["w"]), s(&g1, &["v", "w"])]);
        let g4 = sys(G4);
        assert_eq!(gens(&enumerate_hs(&g4)), vec![VertexSet::EMPTY, s(&g4, &["v", "w"])]);
        let t2 = sys(T2);
        assert_eq!(
            gens(&enumerate_hs(&t2)),
            vec![VertexSet::EMPTY, s(&t2, &["u"]), s(&t2, &["v"]), s(&t2, &["u", "v"])]
        );
        for text in [T1, T2, G1, G2T, G4, G6] {
            let x = sys(text);
            assert_eq!(enumerate_hs(&x), hs_by_closure(&x));
        }
    }

    #[test]
    fn step_criterion_matches_fixpoint() {
        for text in [T1, T2, G1, G2T, G4, G6] {
            let x = sys(text);
            for &a in x.algebra().elements() {
                let h = hereditary_closure(&x, a).unwrap();
                assert_eq!(saturation_by_steps(&x, &h), saturate(&x, &h).members());
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let g1 = sys(G1);
        let h = hereditary_closure(&g1, s(&g1, &["w"])).unwrap();
        let q = quotient_bds(&g1, &h).unwrap();
        assert_eq!(q.classes(), &[VertexSet::EMPTY, s(&g1, &["v"])]);
        assert_eq!(q.regular_classes(), q.classes());
        assert_eq!(q.b_h(), g1.algebra().elements());
        let a = g1.graph().letter_index("a").unwrap();
        assert_eq!(q.delta(s(&g1, &["v"])), 1 << a);
        assert_eq!(q.lambda(s(&g1, &["v"])), Lambda::Finite(1));

        let zero = hereditary_closure(&g1, VertexSet::EMPTY).unwrap();
        let q0 = quotient_bds(&g1, &zero).unwrap();
        assert_eq!(q0.classes(), g1.algebra().elements());
        assert_eq!(q0.b_h(), g1.regular_sets());
        assert_eq!(q0.lambda(s(&g1, &["v"])), Lambda::Infinite);

        let not_sat = HereditarySet::new(&sys(G4), s(&sys(G4), &["w"]));
        let g4 = sys(G4);
        assert!(matches!(quotient_bds(&g4, &not_sat), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn class_action_is_well_defined() {
        for text in [T1, T2, G1, G2T, G4, G6] {
            let x = sys(text);
            for h in enumerate_hs(&x) {
                let q = quotient_bds(&x, &h).unwrap();
                for &a in x.algebra().elements() {
                    for &b in x.algebra().elements() {
                        if q.class_of(a) == q.class_of(b) {
                            for l in x.letters() {
                                assert_eq!(q.class_of(x.act(l, a)), q.class_of(x.act(l, b)));
                            }
                        }
                    }
                }
                for &r in x.regular_sets() {
                    assert!(q.b_h().contains(&r), "ℰ_reg ⊆ ℬ_H");
                }
                for &m in h.members() {
                    assert!(q.b_h().contains(&m), "H ⊆ ℬ_H");
                }
            }
        }
    }

    #[test]
    fn closures_are_monotone() {
        for text in [T2, G1, G2T, G4, G6] {
            let x = sys(text);
            for &a in x.algebra().elements() {
                for &b in x.algebra().elements() {
                    if a.is_subset(b) {
                        let (ha, hb) = (hereditary_closure(&x, a).unwrap(), hereditary_closure(&x, b).unwrap());
                        assert!(ha.is_subset(&hb));
                        assert!(saturate(&x, &ha).is_subset(&saturate(&x, &hb)));
                    }
                }
            }
        }
    }
}
