use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::logic::{conjunction_of, BeliefBase, Formula, Reasoner};

/// Side condition a redundancy witness `Z` must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedundancyMode {
    /// Every member of `Z` implies some member of `A`.
    Package,
    /// Every member of `Z` implies all members of `A`.
    Choice,
    /// Every member of `Z` implies the negation of every member of `A`.
    Internal,
}

/// Literals over `atoms` plus their pairwise conjunctions and disjunctions.
pub fn shallow_pool(atoms: &[String]) -> Vec<Formula> {
    let literals: Vec<Formula> = atoms
        .iter()
        .flat_map(|a| [Formula::atom(a.as_str()), Formula::not(Formula::atom(a.as_str()))])
        .collect();
    let mut out = literals.clone();
    for (i, x) in literals.iter().enumerate() {
        for y in &literals[i + 1..] {
            out.push(Formula::and(x.clone(), y.clone()));
            out.push(Formula::or(x.clone(), y.clone()));
        }
    }
    out
}

fn literals_of(pool: &[Formula]) -> Vec<Formula> {
    pool.iter()
        .filter(|f| f.is_atom() || matches!(f.node(), crate::logic::Node::Not(inner) if inner.is_atom()))
        .cloned()
        .collect()
}

/// Small sets `Z` drawn from `pool` (and conjunctions built from `A`) that
/// satisfy the side condition of `mode`. Every candidate is verified by
/// entailment. Returns nothing for an empty `A`.
pub fn redundancy_candidates(
    reasoner: &Reasoner,
    a: &BeliefBase,
    mode: RedundancyMode,
    pool: &[Formula],
) -> Result<Vec<BeliefBase>> {
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let literals = literals_of(pool);
    let mut formulas: BTreeSet<Formula> = pool.iter().cloned().collect();
    let seeds: Vec<Formula> = match mode {
        RedundancyMode::Package => a.to_vec(),
        RedundancyMode::Choice => vec![conjunction_of(a)?],
        RedundancyMode::Internal => {
            let negated: BeliefBase = a.iter().map(|f| Formula::not(f.clone())).collect();
            vec![conjunction_of(&negated)?]
        }
    };
    for seed in &seeds {
        formulas.insert(seed.clone());
        for l in &literals {
            formulas.insert(Formula::and(seed.clone(), l.clone()));
        }
    }

    let pool_base: BeliefBase = formulas.iter().cloned().collect();
    let sem = reasoner.semantics(&[&pool_base, a])?;
    let qualifies = |z: &Formula| {
        let single = BeliefBase::from_iter([z.clone()]);
        match mode {
            RedundancyMode::Package => sem.implies_some(&single, a),
            RedundancyMode::Choice => sem.implies_all(&single, a),
            RedundancyMode::Internal => a.iter().all(|psi| !sem.consistent([z, psi])),
        }
    };
    let good: Vec<Formula> = formulas.into_iter().filter(|z| qualifies(z)).collect();

    let mut out: BTreeSet<BeliefBase> = good.iter().map(|z| BeliefBase::from_iter([z.clone()])).collect();
    for pair in good.chunks(2).filter(|c| c.len() == 2) {
        out.insert(pair.iter().cloned().collect());
    }
    Ok(out.into_iter().collect())
}

/// Sets equivalent to `{⊥}`: `{⊥}`, each `l ∧ ¬l`, and one pair.
pub fn falsum_candidates(atoms: &[String]) -> Vec<BeliefBase> {
    let mut out = vec![BeliefBase::from_iter([Formula::bottom()])];
    for a in atoms {
        let l = Formula::atom(a.as_str());
        out.push(BeliefBase::from_iter([Formula::and(l.clone(), Formula::not(l))]));
    }
    if let Some(a) = atoms.first() {
        let l = Formula::atom(a.as_str());
        out.push(BeliefBase::from_iter([
            Formula::bottom(),
            Formula::not(Formula::or(l.clone(), Formula::not(l))),
        ]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base;

    fn pool() -> Vec<Formula> {
        shallow_pool(&["p".into(), "q".into(), "r".into()])
    }

    #[test]
    fn package_candidates_imply_some_input() {
        let r = Reasoner::default();
        let a = base!["p", "q"];
        let cands = redundancy_candidates(&r, &a, RedundancyMode::Package, &pool()).unwrap();
        assert!(cands.contains(&base!["p & r"]));
        for z in &cands {
            for f in z {
                assert!(r.implies_some(&BeliefBase::from_iter([f.clone()]), &a).unwrap());
            }
        }
    }

    #[test]
    fn choice_candidates_imply_every_input() {
        let r = Reasoner::default();
        let cands = redundancy_candidates(&r, &base!["p"], RedundancyMode::Choice, &pool()).unwrap();
        assert!(cands.contains(&base!["p & q"]));
        let two = redundancy_candidates(&r, &base!["p", "q"], RedundancyMode::Choice, &pool()).unwrap();
        assert!(!two.contains(&base!["p & r"]));
        assert!(two.contains(&base!["p & q"]));
    }

    #[test]
    fn internal_candidates_contradict_every_input() {
        let r = Reasoner::default();
        let cands = redundancy_candidates(&r, &base!["p"], RedundancyMode::Internal, &pool()).unwrap();
        assert!(cands.contains(&base!["~p & q"]));
        assert!(!cands.contains(&base!["q"]));
    }

    #[test]
    fn empty_input_has_no_candidates() {
        let r = Reasoner::default();
        assert!(redundancy_candidates(&r, &base![], RedundancyMode::Package, &pool())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn falsum_candidates_are_contradictions() {
        let r = Reasoner::default();
        for z in falsum_candidates(&["p".into(), "q".into()]) {
            assert!(r.equivalent_to_falsum(&z).unwrap(), "{z}");
        }
    }
}
