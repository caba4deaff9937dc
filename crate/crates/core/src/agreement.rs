//! Cross-checks between the optimized procedures, the brute-force oracles and
//! the implications between the conditions.

use crate::accommodating::ActionSystem;
use crate::boolean::VertexSet;
use crate::conditions::{all_verdicts, every_loop_has_exit, find_no_exit_cycles, is_minimal_set, Verdicts, Witness};
use crate::error::Result;
use crate::graph::{classify_vertices, Word};
use crate::ideals::PairLattice;
use crate::oracle::{self, BoundedVerdict, KOracle, OracleConfig};
use crate::structure::{enumerate_hs, hereditary_closure, saturate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, holds: bool, detail: impl Into<String>) -> Self {
        Check { name, holds, detail: detail.into() }
    }
}

fn show(system: &ActionSystem, sets: &[VertexSet]) -> String {
    let g = system.graph();
    let items: Vec<String> = sets.iter().map(|&s| format!("{{{}}}", g.set_names(s).join(","))).collect();
    format!("[{}]", items.join(" "))
}

/// Optimized procedure against its oracle, one row per pairing.
pub fn oracle_agreement(system: &ActionSystem, verdicts: &Verdicts, cfg: &OracleConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    let elements = system.algebra().elements();

    let brute_e = oracle::brute_e(system);
    rows.push(Check::new("boolean-closure", brute_e == elements, format!("{} elements", elements.len())));

    let hs: Vec<VertexSet> = enumerate_hs(system).iter().map(|h| h.generator()).collect();
    let brute_hs = oracle::brute_hs(system);
    rows.push(Check::new("hereditary-saturated", hs == brute_hs, show(system, &hs)));

    let mut hull_ok = true;
    let mut sat_ok = true;
    for &a in elements {
        let h = hereditary_closure(system, a)?;
        hull_ok &= h.generator() == oracle::brute_hereditary(system, a);
        sat_ok &= saturate(system, &h).members() == oracle::brute_saturation(system, a).as_slice();
    }
    rows.push(Check::new("hereditary-closure", hull_ok, "every A in E"));
    rows.push(Check::new("saturation", sat_ok, "every A in E"));

    let optimized: Vec<(Word, VertexSet)> = find_no_exit_cycles(system).into_iter().map(|c| (c.word, c.base)).collect();
    let brute = oracle::brute_cycles(system, cfg);
    rows.push(Check::new(
        "no-exit-cycles",
        oracle::cycles_consistent(&optimized, &brute, cfg.max_word_length),
        format!("{} canonical, {} within length {}", optimized.len(), brute.len(), cfg.max_word_length),
    ));

    let sc = verdicts.strongly_cofinal.value;
    let BoundedVerdict { value, certified } = oracle::brute_strong_cofinality(system, cfg);
    rows.push(Check::new(
        "strong-cofinality",
        !certified || value == sc,
        format!("lasso {sc}, unrolled {value}{}", if certified { "" } else { " (uncertified)" }),
    ));

    let k = verdicts.condition_k.value;
    let (holds, detail) = match oracle::brute_condition_k(system, cfg) {
        KOracle::Violated { atom, word } => {
            (!k, format!("violation at {} with {}", show(system, &[atom]), system.graph().word_names(&word).join("")))
        }
        KOracle::NoViolationWithinBound { inconclusive } => {
            (true, format!("no violation found, {} atoms inconclusive", inconclusive.len()))
        }
    };
    rows.push(Check::new("condition-k-violation", holds, detail));

    let d = verdicts.disagreeable.value;
    let brute = oracle::brute_disagreeable(system, 3);
    let witness_ok = match &verdicts.disagreeable.witness {
        Some(Witness::Agreeable { base, word, .. }) => oracle::check_agreeable(system, *base, word),
        _ => d,
    };
    rows.push(Check::new(
        "disagreeable",
        witness_ok && (brute.is_none() || !d),
        format!("periodic chain {d}, short agreeable pair {}", if brute.is_some() { "found" } else { "absent" }),
    ));

    Ok(rows)
}

/// The implications and equivalences that tie the conditions together.
pub fn structural_checks(system: &ActionSystem, v: &Verdicts) -> Result<Vec<Check>> {
    let mut rows = Vec::new();
    let m = v.minimal.value;
    let l = v.condition_l.value;
    let d = v.disagreeable.value;
    let e = every_loop_has_exit(system);

    rows.push(Check::new("minimal-routes", true, format!("{m}")));
    rows.push(Check::new("simple-routes", true, format!("{}", v.simple.value)));
    rows.push(Check::new(
        "disagreeable-loops-L",
        (!d || e) && (!e || l) && (!m || (d == e && e == l)),
        format!("disagreeable {d}, loops exit {e}, L {l}"),
    ));

    let elements = system.algebra().elements();
    let regular = system.regular_sets();
    let mut singular_absorbed = true;
    for &a in elements.iter().filter(|a| !a.is_empty()) {
        let w = hereditary_closure(system, a)?.generator();
        singular_absorbed &= elements.iter().filter(|b| !regular.contains(b)).all(|b| b.is_subset(w));
    }
    let sc = v.strongly_cofinal.value;
    rows.push(Check::new(
        "cofinal-singular-minimal",
        !(sc && singular_absorbed) || m,
        format!("cofinal {sc}, singular sets absorbed {singular_absorbed}, minimal {m}"),
    ));

    let cycles = find_no_exit_cycles(system);
    let bases_minimal = cycles.iter().all(|c| is_minimal_set(system, c.base));
    rows.push(Check::new(
        "no-exit-cycle-base-minimal",
        !m || bases_minimal,
        format!("{} no-exit cycles", cycles.len()),
    ));

    let classes = classify_vertices(system.graph());
    if classes.sinks.is_empty() && system.graph().family_count() == 0 {
        rows.push(Check::new("minimal-iff-cofinal", m == sc, format!("minimal {m}, cofinal {sc}")));
    }

    if let (true, Some(Witness::Agreeable { base, root, .. })) = (m, &v.disagreeable.witness) {
        let (holds, detail) = agreeable_loop_closure(system, *base, root);
        rows.push(Check::new("agreeable-loop", holds, detail));
    }

    let lattice = PairLattice::new(system);
    let verified = lattice.verify(system);
    rows.push(Check::new(
        "ideal-lattice",
        verified.is_ok(),
        match verified {
            Ok(()) => format!("{} pairs", lattice.len()),
            Err(e) => e.to_string(),
        },
    ));
    Ok(rows)
}

/// From an agreeable `(A₀, β)`, the union `A` of the first `N` ranges
/// `r(A₀, βʲ)` absorbs every later one and satisfies `A = r(A, β)`.
fn agreeable_loop_closure(system: &ActionSystem, a0: VertexSet, beta: &Word) -> (bool, String) {
    if !beta.is_irreducible() {
        return (false, "root is reducible".into());
    }
    let n = system.algebra().len();
    let ranges: Vec<VertexSet> = (0..=2 * n + 1).map(|j| system.act_word(a0, &beta.power(j))).collect();
    let union = |lo: usize, hi: usize| ranges[lo..=hi].iter().fold(VertexSet::EMPTY, |acc, &r| acc | r);
    for big_n in 1..=n {
        let u = union(1, big_n);
        if (0..=n).all(|k| ranges[big_n + k].is_subset(u)) {
            let fixed = system.act_word(u, beta) == u;
            return (fixed, format!("N = {big_n}"));
        }
    }
    (false, "ranges never stabilize".into())
}

/// Every check on one instance.
pub fn all_checks(system: &ActionSystem, cfg: &OracleConfig) -> Result<Vec<Check>> {
    let v = all_verdicts(system)?;
    let mut rows = structural_checks(system, &v)?;
    rows.extend(oracle_agreement(system, &v, cfg)?);
    Ok(rows)
}
