//! Finite fields of vertex sets: closure, atoms, ideals and quotients.
//!
//! Every algebra in this crate lives inside the power set of a finite,
//! ordered vertex universe. Sets are characteristic bit vectors over that
//! universe, which caps the universe at [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A subset of the vertex universe.
///
/// The ordering is the canonical report ordering: first by cardinality, then
/// lexicographically on the ascending list of member indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_VERTICES, "vertex index {index} out of range");
        VertexSet(1 << index)
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_VERTICES && self.0 & (1 << index) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn insert(&mut self, index: usize) {
        *self = *self | VertexSet::singleton(index);
    }

    /// Member indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, |acc, i| acc | VertexSet::singleton(i))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The lowest index where the two member lists part ways belongs to the smaller list.
        if self.0 & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite family of vertex sets closed under union, intersection and
/// relative complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetAlgebra {
    universe: VertexSet,
    elements: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    atoms: Vec<VertexSet>,
}

impl SetAlgebra {
    /// Builds the algebra from an already closed family. The caller guarantees closure.
    fn from_closed(universe: VertexSet, family: impl IntoIterator<Item = VertexSet>) -> Self {
        let mut elements: Vec<VertexSet> = family.into_iter().collect();
        elements.push(VertexSet::EMPTY);
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let atoms = elements
            .iter()
            .copied()
            .filter(|&a| !a.is_empty() && !elements.iter().any(|&b| !b.is_empty() && b != a && b.is_subset(a)))
            .collect();
        SetAlgebra { universe, elements, index, atoms }
    }

    pub fn universe(&self) -> VertexSet {
        self.universe
    }

    /// Elements in canonical order; the first one is always the empty set.
    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.elements.iter().copied().filter(|e| !e.is_empty())
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.index.contains_key(&set)
    }

    pub fn index_of(&self, set: VertexSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn atoms(&self) -> &[VertexSet] {
        &self.atoms
    }

    /// The largest element, the union of every element.
    pub fn top(&self) -> VertexSet {
        self.atoms.iter().fold(VertexSet::EMPTY, |acc, &a| acc | a)
    }

    pub fn atoms_below(&self, set: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.atoms.iter().copied().filter(move |a| a.is_subset(set))
    }

    /// Elements contained in `set`, in canonical order.
    pub fn below(&self, set: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.elements.iter().copied().filter(move |e| e.is_subset(set))
    }
}

/// Smallest family containing `seeds` and the empty set, closed under the
/// Boolean operations and under every map supplied by `unary`.
///
/// `unary` receives a newly discovered element and pushes its images.
pub(crate) fn close_under<F>(universe: VertexSet, seeds: &[VertexSet], mut unary: F) -> SetAlgebra
where
    F: FnMut(VertexSet, &mut Vec<VertexSet>),
{
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut list: Vec<VertexSet> = Vec::new();
    for &s in std::iter::once(&VertexSet::EMPTY).chain(seeds) {
        if seen.insert(s) {
            list.push(s);
        }
    }
    let mut images = Vec::new();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        images.clear();
        unary(x, &mut images);
        for &y in &list[..=i] {
            images.extend([x | y, x & y, x - y, y - x]);
        }
        for &z in &images {
            if seen.insert(z) {
                list.push(z);
            }
        }
        i += 1;
    }
    SetAlgebra::from_closed(universe, list)
}

/// Smallest field of sets over `universe` containing the seeds.
pub fn boolean_closure(universe: VertexSet, seeds: &[VertexSet]) -> Result<SetAlgebra> {
    if universe.is_empty() {
        return Err(Error::InvalidInput("empty universe".into()));
    }
    if let Some(bad) = seeds.iter().find(|s| !s.is_subset(universe)) {
        return Err(Error::InvalidInput(format!("seed {bad:?} is not a subset of the universe")));
    }
    Ok(close_under(universe, seeds, |_, _| {}))
}

pub fn atoms(algebra: &SetAlgebra) -> Vec<VertexSet> {
    algebra.atoms.clone()
}

/// An ideal of a finite set algebra. Every such ideal is principal, so the
/// generator (the union of all members) determines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraIdeal {
    generator: VertexSet,
    members: Vec<VertexSet>,
}

impl AlgebraIdeal {
    /// Validates an arbitrary family of elements as an ideal of `algebra`.
    pub fn from_members(algebra: &SetAlgebra, members: &[VertexSet]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidIdeal("an ideal is nonempty".into()));
        }
        if let Some(m) = members.iter().find(|m| !algebra.contains(**m)) {
            return Err(Error::InvalidIdeal(format!("{m:?} is not an element")));
        }
        let set: HashSet<VertexSet> = members.iter().copied().collect();
        for &a in members {
            for &b in members {
                if !set.contains(&(a | b)) {
                    return Err(Error::InvalidIdeal(format!("not closed under union: {a:?} and {b:?}")));
                }
            }
            if let Some(b) = algebra.below(a).find(|b| !set.contains(b)) {
                return Err(Error::InvalidIdeal(format!("not closed downward: {b:?} lies below {a:?}")));
            }
        }
        let generator = members.iter().fold(VertexSet::EMPTY, |acc, &m| acc | m);
        Ok(AlgebraIdeal { generator, members: algebra.below(generator).collect() })
    }

    pub fn generator(&self) -> VertexSet {
        self.generator
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership for elements of the parent algebra.
    pub fn contains(&self, set: VertexSet) -> bool {
        set.is_subset(self.generator) && self.members.binary_search(&set).is_ok()
    }

    pub fn is_subset(&self, other: &AlgebraIdeal) -> bool {
        self.generator.is_subset(other.generator)
    }
}

/// The principal ideal `{B : B ⊆ A}`.
pub fn ideal_generated(algebra: &SetAlgebra, a: VertexSet) -> Result<AlgebraIdeal> {
    if !algebra.contains(a) {
        return Err(Error::UnknownElement);
    }
    Ok(AlgebraIdeal { generator: a, members: algebra.below(a).collect() })
}

/// One ideal per element, sorted by generator.
pub fn enumerate_ideals(algebra: &SetAlgebra) -> Vec<AlgebraIdeal> {
    algebra.elements().iter().map(|&g| AlgebraIdeal { generator: g, members: algebra.below(g).collect() }).collect()
}

/// `base` modulo an ideal: classes are represented by `A ∖ W*` where `W*`
/// generates the ideal.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    base: SetAlgebra,
    modulus: AlgebraIdeal,
    classes: Vec<VertexSet>,
}

impl QuotientAlgebra {
    pub fn base(&self) -> &SetAlgebra {
        &self.base
    }

    pub fn modulus(&self) -> &AlgebraIdeal {
        &self.modulus
    }

    /// Canonical representatives, `[∅]` first.
    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn class_of(&self, set: VertexSet) -> VertexSet {
        set - self.modulus.generator
    }

    pub fn equivalent(&self, a: VertexSet, b: VertexSet) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    pub fn union(&self, a: VertexSet, b: VertexSet) -> VertexSet {
        self.class_of(a | b)
    }

    pub fn intersection(&self, a: VertexSet, b: VertexSet) -> VertexSet {
        self.class_of(a & b)
    }

    pub fn difference(&self, a: VertexSet, b: VertexSet) -> VertexSet {
        self.class_of(a - b)
    }

    /// The classes viewed as a field of sets over `universe ∖ W*`.
    pub fn as_algebra(&self) -> SetAlgebra {
        SetAlgebra::from_closed(self.base.universe - self.modulus.generator, self.classes.iter().copied())
    }
}

pub fn quotient(algebra: &SetAlgebra, ideal: &AlgebraIdeal) -> Result<QuotientAlgebra> {
    let expected = ideal_generated(algebra, ideal.generator())
        .map_err(|_| Error::InvalidIdeal("generator is not an element".into()))?;
    if &expected != ideal {
        return Err(Error::InvalidIdeal("members do not match the generator".into()));
    }
    let mut classes: Vec<VertexSet> = algebra.elements().iter().map(|&e| e - ideal.generator()).collect();
    classes.sort();
    classes.dedup();
    Ok(QuotientAlgebra { base: algebra.clone(), modulus: ideal.clone(), classes })
}
