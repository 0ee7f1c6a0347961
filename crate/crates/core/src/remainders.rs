//! Remainder families, partial sums and negation sets.
//!
//! Package and choice remainders are the maximal subsets of a base that
//! satisfy a downward-closed condition ("implies no member of A", "does not
//! imply all of A"). Both are computed by one enumeration over subsets that
//! abandons a branch as soon as the condition fails, since every superset of a
//! failing set fails too.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::semantics::Rows;
use crate::logic::{BeliefBase, Formula, Reasoner, Semantics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `K ⊥ A`
    Package,
    /// `K ∠ A`
    Choice,
    /// `K ⋈ A`
    PartialSum,
}

/// A finite family of belief bases computed from an anchor base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    anchor: BeliefBase,
    kind: FamilyKind,
    members: BTreeSet<BeliefBase>,
}

impl SubsetFamily {
    pub fn new(anchor: BeliefBase, kind: FamilyKind, members: impl IntoIterator<Item = BeliefBase>) -> Self {
        SubsetFamily {
            anchor,
            kind,
            members: members.into_iter().collect(),
        }
    }

    pub fn anchor(&self) -> &BeliefBase {
        &self.anchor
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn members(&self) -> impl Iterator<Item = &BeliefBase> + Clone {
        self.members.iter()
    }

    pub fn member_set(&self) -> &BTreeSet<BeliefBase> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, member: &BeliefBase) -> bool {
        self.members.contains(member)
    }

    /// Same members, regardless of anchor or kind.
    pub fn same_members(&self, other: &SubsetFamily) -> bool {
        self.members == other.members
    }

    /// Intersection of all members; `None` for the empty family.
    pub fn core(&self) -> Option<BeliefBase> {
        let mut iter = self.members.iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, m| acc.intersection(m)))
    }

    /// Sorted arrays of sorted formula strings.
    pub fn to_texts(&self) -> Vec<Vec<String>> {
        self.members.iter().map(BeliefBase::texts).collect()
    }
}

impl Serialize for SubsetFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.iter())
    }
}

/// The negation set `n(A)`: one disjunction of negations per nonempty subset
/// of `A`, or the single clause `true` when `A` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationSet {
    source: BeliefBase,
    clauses: BeliefBase,
}

impl NegationSet {
    pub fn source(&self) -> &BeliefBase {
        &self.source
    }

    pub fn clauses(&self) -> &BeliefBase {
        &self.clauses
    }
}

/// Clause `¬φ₁ ∨ … ∨ ¬φₖ`, left-nested, disjuncts in the order given.
pub fn negation_clause<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Option<Formula> {
    formulas
        .into_iter()
        .map(|f| Formula::not(f.clone()))
        .reduce(Formula::or)
}

/// Marks every subset of `items` satisfying a downward-closed predicate and
/// returns the maximal ones.
fn maximal_subsets(sem: &Semantics, items: &[Formula], keep: &dyn Fn(&Rows) -> bool) -> Vec<u64> {
    let n = items.len();
    let mut good = vec![false; 1 << n];
    let tables: Vec<&Rows> = items.iter().map(|f| sem.rows(f)).collect();

    fn walk(i: usize, mask: u64, models: Rows, tables: &[&Rows], keep: &dyn Fn(&Rows) -> bool, good: &mut [bool]) {
        if !keep(&models) {
            return;
        }
        if i == tables.len() {
            good[mask as usize] = true;
            return;
        }
        walk(i + 1, mask, models.clone(), tables, keep, good);
        let with = models.and(tables[i]);
        walk(i + 1, mask | 1 << i, with, tables, keep, good);
    }
    walk(0, 0, sem.full().clone(), &tables, keep, &mut good);

    (0..1u64 << n)
        .filter(|&mask| good[mask as usize])
        .filter(|&mask| (0..n).all(|i| mask >> i & 1 == 1 || !good[(mask | 1 << i) as usize]))
        .collect()
}

impl Reasoner {
    fn remainder_family(
        &self,
        k: &BeliefBase,
        kind: FamilyKind,
        sem: &Semantics,
        keep: &dyn Fn(&Rows) -> bool,
    ) -> Result<SubsetFamily> {
        self.limits()
            .check("base for remainder enumeration", k.len(), self.limits().enumeration)?;
        let items = k.to_vec();
        let members = maximal_subsets(sem, &items, keep)
            .into_iter()
            .map(|mask| k.subset_by_mask(mask));
        Ok(SubsetFamily::new(k.clone(), kind, members))
    }

    /// `K ⊥ A`: maximal subsets of `k` implying no member of `a`.
    pub fn package_remainders(&self, k: &BeliefBase, a: &BeliefBase) -> Result<SubsetFamily> {
        let sem = self.semantics(&[k, a])?;
        let targets: Vec<&Rows> = a.iter().map(|f| sem.rows(f)).collect();
        let keep = |m: &Rows| targets.iter().all(|t| !m.within(t));
        self.remainder_family(k, FamilyKind::Package, &sem, &keep)
    }

    /// `K ∠ A`: maximal subsets of `k` not implying every member of `a`.
    pub fn choice_remainders(&self, k: &BeliefBase, a: &BeliefBase) -> Result<SubsetFamily> {
        let sem = self.semantics(&[k, a])?;
        let targets: Vec<&Rows> = a.iter().map(|f| sem.rows(f)).collect();
        let keep = |m: &Rows| targets.iter().any(|t| !m.within(t));
        self.remainder_family(k, FamilyKind::Choice, &sem, &keep)
    }

    /// `K ⋈ A`: every `X` with `K ⊆ X ⊆ K ∪ A` and `X ∩ A ≠ ∅`.
    pub fn partial_sums(&self, k: &BeliefBase, a: &BeliefBase) -> Result<SubsetFamily> {
        let fresh = a.difference(k);
        self.limits().check(
            "new part of a partial-sum input",
            fresh.len(),
            self.limits().partial_sums,
        )?;
        let overlap = k.overlaps(a);
        let members = (0..1u64 << fresh.len())
            .filter(|&mask| mask != 0 || overlap)
            .map(|mask| k.union(&fresh.subset_by_mask(mask)));
        Ok(SubsetFamily::new(k.clone(), FamilyKind::PartialSum, members))
    }

    /// Explicit `n(A)`.
    pub fn negation_set(&self, a: &BeliefBase) -> Result<NegationSet> {
        self.limits()
            .check("negation-set source", a.len(), self.limits().negation)?;
        let clauses = if a.is_empty() {
            BeliefBase::from_iter([Formula::top()])
        } else {
            (1..1u64 << a.len())
                .filter_map(|mask| negation_clause(a.subset_by_mask(mask).iter()))
                .collect()
        };
        Ok(NegationSet {
            source: a.clone(),
            clauses,
        })
    }

    /// `K ∠ n(A)` without building `n(A)`: a subset avoids implying all of
    /// `n(A)` exactly when it is consistent with some single member of `A`.
    pub fn choice_remainders_vs_negation(&self, k: &BeliefBase, a: &BeliefBase) -> Result<SubsetFamily> {
        if a.is_empty() {
            return self.choice_remainders(k, &BeliefBase::from_iter([Formula::top()]));
        }
        let sem = self.semantics(&[k, a])?;
        let inputs: Vec<&Rows> = a.iter().map(|f| sem.rows(f)).collect();
        let keep = |m: &Rows| inputs.iter().any(|t| !m.and(t).is_empty());
        self.remainder_family(k, FamilyKind::Choice, &sem, &keep)
    }

    /// `K ⊥ n(A′)` without building `n(A′)`: a subset implies no clause of
    /// `n(A′)` exactly when it is consistent with all of `A′` together.
    pub fn package_remainders_vs_negation(&self, k: &BeliefBase, added: &BeliefBase) -> Result<SubsetFamily> {
        if added.is_empty() {
            return self.package_remainders(k, &BeliefBase::from_iter([Formula::top()]));
        }
        let sem = self.semantics(&[k, added])?;
        let joint = sem.models(added);
        let keep = |m: &Rows| !m.and(&joint).is_empty();
        self.remainder_family(k, FamilyKind::Package, &sem, &keep)
    }

    /// Extends `start ⊆ k` greedily, in canonical order, to a member of
    /// `K ⊥ A` (`Package`) or `K ∠ A` (`Choice`) containing it.
    pub fn upper_bound_witness(
        &self,
        k: &BeliefBase,
        start: &BeliefBase,
        a: &BeliefBase,
        kind: FamilyKind,
    ) -> Result<BeliefBase> {
        if !start.is_subset(k) {
            return Err(Error::Precondition(format!("{start} is not a subset of {k}")));
        }
        let sem = self.semantics(&[k, a])?;
        let admissible = |x: &BeliefBase| match kind {
            FamilyKind::Package => Ok(!sem.implies_some(x, a)),
            FamilyKind::Choice => Ok(!sem.implies_all(x, a)),
            FamilyKind::PartialSum => Err(Error::Precondition(
                "upper bounds are defined for remainder families only".into(),
            )),
        };
        if !admissible(start)? {
            return Err(Error::Precondition(format!(
                "{start} already implies {} {a}",
                if kind == FamilyKind::Package {
                    "some of"
                } else {
                    "all of"
                }
            )));
        }
        let mut x = start.clone();
        for f in k.difference(start).iter() {
            let candidate = x.with(f.clone());
            if admissible(&candidate)? {
                x = candidate;
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base;

    fn r() -> Reasoner {
        Reasoner::default()
    }

    fn family(members: &[BeliefBase]) -> BTreeSet<BeliefBase> {
        members.iter().cloned().collect()
    }

    #[test]
    fn package_remainder_examples() {
        let r = r();
        let k = base!["p", "p -> q", "q"];
        let fam = r.package_remainders(&k, &base!["q"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p"], base!["p -> q"]]));
        assert!(r.package_remainders(&k, &base!["true"]).unwrap().is_empty());
        let fam = r.package_remainders(&k, &base![]).unwrap();
        assert_eq!(fam.member_set(), &family(std::slice::from_ref(&k)));
    }

    #[test]
    fn choice_remainder_examples() {
        let r = r();
        assert!(r.choice_remainders(&base!["p", "q"], &base![]).unwrap().is_empty());
        let fam = r.choice_remainders(&base!["p", "q"], &base!["p", "q"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p"], base!["q"]]));
        let k = base!["p", "~q", "~r"];
        let n = r.negation_set(&base!["q", "r"]).unwrap();
        let fam = r.choice_remainders(&k, n.clauses()).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p", "~q"], base!["p", "~r"]]));
    }

    #[test]
    fn partial_sum_examples() {
        let r = r();
        let fam = r.partial_sums(&base![], &base!["p"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p"]]));
        let fam = r.partial_sums(&base!["p"], &base!["p"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p"]]));
        let fam = r.partial_sums(&base!["k"], &base!["a", "b"]).unwrap();
        assert_eq!(
            fam.member_set(),
            &family(&[base!["k", "a"], base!["k", "b"], base!["k", "a", "b"]])
        );
        assert!(r.partial_sums(&base!["k"], &base![]).unwrap().is_empty());
    }

    #[test]
    fn negation_set_examples() {
        let r = r();
        assert_eq!(r.negation_set(&base![]).unwrap().clauses(), &base!["true"]);
        assert_eq!(r.negation_set(&base!["p"]).unwrap().clauses(), &base!["~p"]);
        assert_eq!(
            r.negation_set(&base!["p", "q"]).unwrap().clauses(),
            &base!["~p", "~q", "~p | ~q"]
        );
        let n = r.negation_set(&base!["a", "b", "c"]).unwrap();
        assert_eq!(n.clauses().len(), 7);
        assert!(n.clauses().contains(&crate::parse_formula("~a | ~b | ~c").unwrap()));
    }

    #[test]
    fn negation_cap() {
        let r = Reasoner::new(crate::Limits {
            negation: 2,
            ..Default::default()
        });
        assert!(r.negation_set(&base!["a", "b", "c"]).unwrap_err().is_capacity());
    }

    #[test]
    fn enumeration_cap() {
        let r = Reasoner::new(crate::Limits {
            enumeration: 2,
            ..Default::default()
        });
        let err = r.package_remainders(&base!["a", "b", "c"], &base!["a"]).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn choice_vs_negation_examples() {
        let r = r();
        let fam = r
            .choice_remainders_vs_negation(&base!["p", "~q", "~r"], &base!["q", "r"])
            .unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p", "~q"], base!["p", "~r"]]));
        let fam = r.choice_remainders_vs_negation(&base!["p"], &base!["p"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p"]]));
        let fam = r.choice_remainders_vs_negation(&base!["q"], &base!["~q"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base![]]));
        assert!(r
            .choice_remainders_vs_negation(&base!["q"], &base![])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn package_vs_negation_examples() {
        let r = r();
        let fam = r
            .package_remainders_vs_negation(&base!["q", "p", "p -> ~q"], &base!["p", "p -> ~q"])
            .unwrap();
        assert_eq!(fam.member_set(), &family(&[base!["p", "p -> ~q"]]));
        let fam = r.package_remainders_vs_negation(&base![], &base!["p"]).unwrap();
        assert_eq!(fam.member_set(), &family(&[base![]]));
        let fam = r
            .package_remainders_vs_negation(&base!["~p"], &base!["p", "q"])
            .unwrap();
        assert_eq!(fam.member_set(), &family(&[base![]]));
    }

    #[test]
    fn upper_bound_examples() {
        let r = r();
        let x = r
            .upper_bound_witness(&base!["p", "q"], &base![], &base!["p & q"], FamilyKind::Package)
            .unwrap();
        assert_eq!(x, base!["p"]);
        let k = base!["p", "q"];
        let x = r.upper_bound_witness(&k, &k, &base!["r"], FamilyKind::Package).unwrap();
        assert_eq!(x, k);
        let x = r
            .upper_bound_witness(
                &base!["p1", "p1 & p2"],
                &base!["p1"],
                &base!["p1", "p2"],
                FamilyKind::Choice,
            )
            .unwrap();
        assert_eq!(x, base!["p1"]);
    }

    #[test]
    fn upper_bound_rejects_bad_starts() {
        let r = r();
        let k = base!["p", "q"];
        assert!(matches!(
            r.upper_bound_witness(&k, &base!["p"], &base!["p"], FamilyKind::Package),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            r.upper_bound_witness(&k, &base!["r"], &base!["p"], FamilyKind::Package),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn family_json_is_sorted_arrays() {
        let r = r();
        let fam = r
            .choice_remainders_vs_negation(&base!["p", "~q", "~r"], &base!["q", "r"])
            .unwrap();
        assert_eq!(serde_json::to_string(&fam).unwrap(), r#"[["p","~q"],["p","~r"]]"#);
    }
}
