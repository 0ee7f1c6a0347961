//! Classical consequence by truth-table enumeration.
//!
//! Every formula is compiled to a packed bitset with one bit per row of the
//! truth table over the relevant atom universe. A set of formulas is then the
//! conjunction of its rows, and entailment is bitset inclusion.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::base::BeliefBase;
use super::formula::{Formula, Node};
use crate::error::{Error, Result};

/// Size limits applied before any exponential enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of distinct atoms in one truth table.
    pub atoms: usize,
    /// Maximum base size for remainder enumeration.
    pub enumeration: usize,
    /// Maximum `|A \ K|` for partial-sum enumeration.
    pub partial_sums: usize,
    /// Maximum input size for explicit negation sets.
    pub negation: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            atoms: 16,
            enumeration: 14,
            partial_sums: 12,
            negation: 10,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::Capacity { what, size, limit })
        } else {
            Ok(())
        }
    }
}

/// Rows of a truth table, 64 per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rows(Vec<u64>);

impl Rows {
    fn map2(&self, other: &Rows, op: impl Fn(u64, u64) -> u64) -> Rows {
        Rows(self.0.iter().zip(&other.0).map(|(a, b)| op(*a, *b)).collect())
    }

    pub(crate) fn and(&self, other: &Rows) -> Rows {
        self.map2(other, |a, b| a & b)
    }

    pub(crate) fn and_assign(&mut self, other: &Rows) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    /// Every row of `self` is a row of `other`.
    pub(crate) fn within(&self, other: &Rows) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Truth tables for the formulas of a fixed atom universe.
pub struct Semantics {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
    full: Rows,
    cache: HashMap<Formula, Rows>,
}

impl Semantics {
    fn new(limits: &Limits, atoms: Vec<String>) -> Result<Self> {
        limits.check("atom universe", atoms.len(), limits.atoms)?;
        let rows = 1usize << atoms.len();
        let words = rows.div_ceil(64);
        let mut full = vec![u64::MAX; words];
        if rows < 64 {
            full[0] = (1u64 << rows) - 1;
        }
        let index = atoms.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Ok(Semantics {
            atoms,
            index,
            full: Rows(full),
            cache: HashMap::new(),
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    fn atom_rows(&self, i: usize) -> Rows {
        let mut words = vec![0u64; self.full.0.len()];
        for row in 0..(1usize << self.atoms.len()) {
            if row >> i & 1 == 1 {
                words[row / 64] |= 1u64 << (row % 64);
            }
        }
        Rows(words)
    }

    fn compute(&mut self, formula: &Formula) -> Rows {
        if let Some(rows) = self.cache.get(formula) {
            return rows.clone();
        }
        let rows = match formula.node() {
            Node::Atom(name) => {
                let i = *self
                    .index
                    .get(name)
                    .unwrap_or_else(|| panic!("atom `{name}` outside the universe"));
                self.atom_rows(i)
            }
            Node::Top => self.full.clone(),
            Node::Bottom => Rows(vec![0; self.full.0.len()]),
            Node::Not(inner) => {
                let inner = self.compute(inner);
                inner.map2(&self.full, |a, f| !a & f)
            }
            Node::And(l, r) => {
                let (l, r) = (self.compute(l), self.compute(r));
                l.and(&r)
            }
            Node::Or(l, r) => {
                let (l, r) = (self.compute(l), self.compute(r));
                l.map2(&r, |a, b| a | b)
            }
            Node::Implies(l, r) => {
                let (l, r) = (self.compute(l), self.compute(r));
                let nl = l.map2(&self.full, |a, f| !a & f);
                nl.map2(&r, |a, b| a | b)
            }
            Node::Iff(l, r) => {
                let (l, r) = (self.compute(l), self.compute(r));
                l.map2(&r, |a, b| !(a ^ b)).and(&self.full)
            }
        };
        self.cache.insert(formula.clone(), rows.clone());
        rows
    }

    /// Compiles every formula up front so later queries can borrow immutably.
    pub(crate) fn prime<'a>(&mut self, formulas: impl IntoIterator<Item = &'a Formula>) {
        for f in formulas {
            self.compute(f);
        }
    }

    pub(crate) fn rows(&self, formula: &Formula) -> &Rows {
        self.cache
            .get(formula)
            .unwrap_or_else(|| panic!("formula `{formula}` was not primed"))
    }

    /// Models of a set of primed formulas.
    pub(crate) fn models<'a>(&self, set: impl IntoIterator<Item = &'a Formula>) -> Rows {
        let mut acc = self.full.clone();
        for f in set {
            acc.and_assign(self.rows(f));
        }
        acc
    }

    pub(crate) fn full(&self) -> &Rows {
        &self.full
    }

    pub fn consistent<'a>(&self, set: impl IntoIterator<Item = &'a Formula>) -> bool {
        !self.models(set).is_empty()
    }

    pub fn entails<'a>(&self, set: impl IntoIterator<Item = &'a Formula>, formula: &Formula) -> bool {
        self.models(set).within(self.rows(formula))
    }

    pub fn implies_some(&self, set: &BeliefBase, targets: &BeliefBase) -> bool {
        let models = self.models(set);
        targets.iter().any(|t| models.within(self.rows(t)))
    }

    pub fn implies_all(&self, set: &BeliefBase, targets: &BeliefBase) -> bool {
        let models = self.models(set);
        targets.iter().all(|t| models.within(self.rows(t)))
    }

    pub fn equivalent(&self, a: &Formula, b: &Formula) -> bool {
        self.rows(a) == self.rows(b)
    }
}

/// Entry point for all logical queries; carries the enumeration limits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Reasoner {
    limits: Limits,
}

impl Reasoner {
    pub fn new(limits: Limits) -> Self {
        Reasoner { limits }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Sorted union of the atoms occurring in any of the bases.
    pub fn atom_universe(&self, bases: &[&BeliefBase]) -> Result<Vec<String>> {
        let mut atoms = Vec::new();
        for base in bases {
            for f in base.iter() {
                f.collect_atoms(&mut atoms);
            }
        }
        atoms.sort_unstable();
        atoms.dedup();
        self.limits.check("atom universe", atoms.len(), self.limits.atoms)?;
        Ok(atoms.into_iter().map(str::to_owned).collect())
    }

    /// Truth tables covering every formula of the given bases.
    pub fn semantics(&self, bases: &[&BeliefBase]) -> Result<Semantics> {
        let atoms = self.atom_universe(bases)?;
        let mut sem = Semantics::new(&self.limits, atoms)?;
        for base in bases {
            sem.prime(base.iter());
        }
        Ok(sem)
    }

    pub fn is_consistent(&self, set: &BeliefBase) -> Result<bool> {
        Ok(self.semantics(&[set])?.consistent(set))
    }

    /// `formula ∈ Cn(set)`.
    pub fn entails(&self, set: &BeliefBase, formula: &Formula) -> Result<bool> {
        let single = BeliefBase::from_iter([formula.clone()]);
        Ok(self.semantics(&[set, &single])?.entails(set, formula))
    }

    /// Some member of `targets` follows from `set`; false for empty targets.
    pub fn implies_some(&self, set: &BeliefBase, targets: &BeliefBase) -> Result<bool> {
        Ok(self.semantics(&[set, targets])?.implies_some(set, targets))
    }

    /// Every member of `targets` follows from `set`; true for empty targets.
    pub fn implies_all(&self, set: &BeliefBase, targets: &BeliefBase) -> Result<bool> {
        Ok(self.semantics(&[set, targets])?.implies_all(set, targets))
    }

    pub fn equivalent(&self, a: &Formula, b: &Formula) -> Result<bool> {
        let pair = BeliefBase::from_iter([a.clone(), b.clone()]);
        Ok(self.semantics(&[&pair])?.equivalent(a, b))
    }

    /// Each member of `a` is equivalent to some member of `b`, and vice versa.
    pub fn equivalent_sets(&self, a: &BeliefBase, b: &BeliefBase) -> Result<bool> {
        let sem = self.semantics(&[a, b])?;
        let covered = |x: &BeliefBase, y: &BeliefBase| x.iter().all(|f| y.iter().any(|g| sem.equivalent(f, g)));
        Ok(covered(a, b) && covered(b, a))
    }

    pub fn is_contradiction(&self, formula: &Formula) -> Result<bool> {
        Ok(!self.is_consistent(&BeliefBase::from_iter([formula.clone()]))?)
    }

    /// `set ≡ {⊥}`: nonempty and every member is unsatisfiable.
    pub fn equivalent_to_falsum(&self, set: &BeliefBase) -> Result<bool> {
        let sem = self.semantics(&[set])?;
        Ok(!set.is_empty() && set.iter().all(|f| !sem.consistent([f])))
    }
}

/// Right-nested conjunction of the members in canonical order.
pub fn conjunction_of(set: &BeliefBase) -> Result<Formula> {
    let mut members = set.to_vec();
    let mut acc = members.pop().ok_or(Error::EmptyConjunction)?;
    while let Some(f) = members.pop() {
        acc = Formula::and(f, acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base;
    use crate::logic::parse_formula;

    fn r() -> Reasoner {
        Reasoner::default()
    }

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    #[test]
    fn atom_universe_examples() {
        let r = r();
        assert_eq!(
            r.atom_universe(&[&base!["p & q"], &base!["r"]]).unwrap(),
            vec!["p", "q", "r"]
        );
        assert!(r.atom_universe(&[&base![]]).unwrap().is_empty());
        assert!(r.atom_universe(&[&base!["true"]]).unwrap().is_empty());
    }

    #[test]
    fn atom_cap_is_enforced() {
        let r = Reasoner::new(Limits {
            atoms: 2,
            ..Limits::default()
        });
        let err = r.is_consistent(&base!["a", "b", "c"]).unwrap_err();
        assert!(err.is_capacity());
        // a 17-atom universe trips the default cap
        let wide: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
        let big = BeliefBase::parse_all(wide.iter().map(String::as_str)).unwrap();
        assert!(Reasoner::default().is_consistent(&big).unwrap_err().is_capacity());
    }

    #[test]
    fn consistency_examples() {
        let r = r();
        assert!(!r.is_consistent(&base!["p", "~p"]).unwrap());
        assert!(r.is_consistent(&base![]).unwrap());
        assert!(!r.is_consistent(&base!["p", "p -> ~q", "q"]).unwrap());
    }

    #[test]
    fn entailment_examples() {
        let r = r();
        assert!(r.entails(&base!["p", "p -> q"], &f("q")).unwrap());
        assert!(r.entails(&base![], &f("true")).unwrap());
        assert!(r.entails(&base!["p1", "p1 & p2"], &f("p2")).unwrap());
    }

    #[test]
    fn implies_some_and_all() {
        let r = r();
        assert!(r.implies_some(&base!["p"], &base!["q", "p | r"]).unwrap());
        assert!(!r.implies_some(&base!["p"], &base![]).unwrap());
        assert!(!r.implies_some(&base!["p"], &base!["q", "r"]).unwrap());
        assert!(r.implies_all(&base!["p"], &base![]).unwrap());
        assert!(r.implies_all(&base!["p & q"], &base!["p", "q"]).unwrap());
        assert!(!r.implies_all(&base!["p"], &base!["p", "q"]).unwrap());
    }

    #[test]
    fn set_equivalence() {
        let r = r();
        assert!(r.equivalent_sets(&base!["p & q"], &base!["q & p"]).unwrap());
        assert!(r.equivalent_sets(&base![], &base![]).unwrap());
        assert!(r.equivalent_sets(&base!["p & ~p"], &base!["false"]).unwrap());
        assert!(!r.equivalent_sets(&base!["p"], &base!["p", "q"]).unwrap());
    }

    #[test]
    fn conjunction_nesting() {
        assert_eq!(conjunction_of(&base!["p"]).unwrap().text(), "p");
        assert_eq!(conjunction_of(&base!["p", "q"]).unwrap().text(), "p & q");
        assert_eq!(conjunction_of(&base!["p", "q", "r"]).unwrap().text(), "p & (q & r)");
        assert_eq!(conjunction_of(&base![]).unwrap_err(), Error::EmptyConjunction);
    }

    #[test]
    fn wide_universe_uses_multiple_words() {
        let r = r();
        let atoms: Vec<String> = (0..8).map(|i| format!("a{i}")).collect();
        let mut k = BeliefBase::parse_all(atoms.iter().map(String::as_str)).unwrap();
        assert!(r.is_consistent(&k).unwrap());
        assert!(r.entails(&k, &f("a7 & a0")).unwrap());
        k = k.with(f("~a7"));
        assert!(!r.is_consistent(&k).unwrap());
    }
}
