use std::collections::BTreeSet;
use std::fmt;

use super::formula::Formula;
use super::parse::parse_formula;
use crate::error::{Error, Result};

/// A finite set of formulas under syntactic identity.
///
/// Iteration follows canonical formula order. Bases are ordered
/// lexicographically by their sorted members, which gives families of bases a
/// canonical order too.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeliefBase {
    formulas: BTreeSet<Formula>,
}

impl BeliefBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses each string as a formula.
    pub fn parse_all<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        texts.into_iter().map(parse_formula).collect()
    }

    /// Parses the belief-base text format: one formula per line, `#` starts a
    /// comment, blank lines are skipped.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let mut formulas = BTreeSet::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let formula = parse_formula(line).map_err(|e| Error::Line {
                line: index + 1,
                source: Box::new(e),
            })?;
            formulas.insert(formula);
        }
        Ok(BeliefBase { formulas })
    }

    /// Parses a comma-separated list of formulas. Empty text yields the empty base.
    pub fn parse_inline(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::new());
        }
        text.split(',').map(|part| parse_formula(part.trim())).collect()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, formula: &Formula) -> bool {
        self.formulas.contains(formula)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + Clone {
        self.formulas.iter()
    }

    /// The same base with `formula` added.
    pub fn with(&self, formula: Formula) -> Self {
        let mut formulas = self.formulas.clone();
        formulas.insert(formula);
        BeliefBase { formulas }
    }

    pub fn union(&self, other: &BeliefBase) -> Self {
        self.formulas.union(&other.formulas).cloned().collect()
    }

    pub fn intersection(&self, other: &BeliefBase) -> Self {
        self.formulas.intersection(&other.formulas).cloned().collect()
    }

    pub fn difference(&self, other: &BeliefBase) -> Self {
        self.formulas.difference(&other.formulas).cloned().collect()
    }

    pub fn is_subset(&self, other: &BeliefBase) -> bool {
        self.formulas.is_subset(&other.formulas)
    }

    pub fn is_disjoint(&self, other: &BeliefBase) -> bool {
        self.formulas.is_disjoint(&other.formulas)
    }

    pub fn overlaps(&self, other: &BeliefBase) -> bool {
        !self.is_disjoint(other)
    }

    /// Members as a vector in canonical order.
    pub fn to_vec(&self) -> Vec<Formula> {
        self.formulas.iter().cloned().collect()
    }

    /// Subset selected by the bits of `mask` over the canonical order.
    pub fn subset_by_mask(&self, mask: u64) -> Self {
        self.formulas
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect()
    }

    /// All `2^n` subsets, smallest mask first. Callers are responsible for
    /// keeping `n` small.
    pub fn subsets(&self) -> impl Iterator<Item = BeliefBase> + '_ {
        assert!(self.len() < 64, "subset enumeration over {} formulas", self.len());
        (0..1u64 << self.len()).map(move |mask| self.subset_by_mask(mask))
    }

    /// Rendered members, canonical order.
    pub fn texts(&self) -> Vec<String> {
        self.formulas.iter().map(|f| f.text().to_owned()).collect()
    }
}

impl FromIterator<Formula> for BeliefBase {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        BeliefBase {
            formulas: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a BeliefBase {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

impl fmt::Display for BeliefBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, formula) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{formula}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BeliefBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for BeliefBase {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.formulas.iter())
    }
}

impl<'de> serde::Deserialize<'de> for BeliefBase {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let formulas = Vec::<Formula>::deserialize(deserializer)?;
        Ok(formulas.into_iter().collect())
    }
}

/// Builds a base from formula literals, panicking on syntax errors.
///
/// ```
/// use choice_revision::base;
/// let k = base!["p", "p -> q", "q"];
/// assert_eq!(k.len(), 3);
/// ```
#[macro_export]
macro_rules! base {
    () => { $crate::BeliefBase::new() };
    ($($text:expr),+ $(,)?) => {
        $crate::BeliefBase::parse_all([$($text),+]).expect("formula literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_duplicates_collapse() {
        let k = BeliefBase::parse_all(["p & q", "p&q", "q & p"]).unwrap();
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn line_format_skips_comments_and_blanks() {
        let k = BeliefBase::parse_lines("# header\np\n\n  ~q  # trailing\n~r\n").unwrap();
        assert_eq!(k.texts(), vec!["p", "~q", "~r"]);
        let err = BeliefBase::parse_lines("p\nq &\n").unwrap_err();
        assert!(matches!(err, Error::Line { line: 2, .. }));
        assert!(err.is_syntax());
    }

    #[test]
    fn inline_format_splits_on_commas() {
        let a = BeliefBase::parse_inline("p, p->~q").unwrap();
        assert_eq!(a.texts(), vec!["p", "p -> ~q"]);
        assert!(BeliefBase::parse_inline("  ").unwrap().is_empty());
    }

    #[test]
    fn set_algebra() {
        let a = base!["p", "q"];
        let b = base!["q", "r"];
        assert_eq!(a.union(&b), base!["p", "q", "r"]);
        assert_eq!(a.intersection(&b), base!["q"]);
        assert_eq!(a.difference(&b), base!["p"]);
        assert!(base!["q"].is_subset(&a));
        assert_eq!(a.subsets().count(), 4);
    }
}
