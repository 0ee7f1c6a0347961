//! Selection functions over families of bases.
//!
//! A strategy picks a nonempty subfamily of a nonempty family and falls back
//! to the anchor base when the family is empty. None of the shipped
//! strategies look at the anchor of a nonempty family, so equal families
//! always aggregate to equal results.

use std::collections::BTreeMap;
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{BeliefBase, Formula, Reasoner};
use crate::remainders::SubsetFamily;

/// Ranks formulas; lower ranks are more entrenched. Unranked formulas come
/// after all ranked ones, ties broken by canonical text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PriorityOrder {
    ranks: BTreeMap<Formula, i64>,
}

/// Sort key induced by a [`PriorityOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RankKey {
    unranked: bool,
    rank: i64,
    formula: Formula,
}

impl PriorityOrder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ranks(ranks: impl IntoIterator<Item = (i64, Formula)>) -> Self {
        PriorityOrder {
            ranks: ranks.into_iter().map(|(r, f)| (f, r)).collect(),
        }
    }

    /// Ranks the given formulas 0, 1, 2, … in order.
    pub fn preferring(formulas: impl IntoIterator<Item = Formula>) -> Self {
        Self::from_ranks(formulas.into_iter().zip(0..).map(|(f, r)| (r, f)))
    }

    /// Parses the priority-file format: `rank formula` per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ranks = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let wrap = |e: Error| Error::Line {
                line: index + 1,
                source: Box::new(e),
            };
            let (rank, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
                wrap(Error::Syntax {
                    offset: line.len(),
                    expected: "a rank followed by a formula".into(),
                    found: "end of line".into(),
                })
            })?;
            let rank: i64 = rank.parse().map_err(|_| {
                wrap(Error::Syntax {
                    offset: 0,
                    expected: "an integer rank".into(),
                    found: format!("`{rank}`"),
                })
            })?;
            let formula = crate::parse_formula(rest.trim()).map_err(|e| match e {
                Error::Syntax {
                    offset,
                    expected,
                    found,
                } => wrap(Error::Syntax {
                    offset: offset + (line.len() - rest.trim_start().len()),
                    expected,
                    found,
                }),
                other => wrap(other),
            })?;
            ranks.push((rank, formula));
        }
        Ok(Self::from_ranks(ranks))
    }

    pub fn rank(&self, formula: &Formula) -> Option<i64> {
        self.ranks.get(formula).copied()
    }

    pub fn key(&self, formula: &Formula) -> RankKey {
        let rank = self.rank(formula);
        RankKey {
            unranked: rank.is_none(),
            rank: rank.unwrap_or(0),
            formula: formula.clone(),
        }
    }

    /// Members of `set`, most entrenched first.
    pub fn sorted(&self, set: &BeliefBase) -> Vec<Formula> {
        let mut keys: Vec<RankKey> = set.iter().map(|f| self.key(f)).collect();
        keys.sort();
        keys.into_iter().map(|k| k.formula).collect()
    }

    /// Score of a family member relative to the family core: the ascending
    /// keys of its non-core formulas. Smaller scores are better.
    pub fn score(&self, member: &BeliefBase, core: &BeliefBase) -> Vec<RankKey> {
        let mut keys: Vec<RankKey> = member.difference(core).iter().map(|f| self.key(f)).collect();
        keys.sort();
        keys
    }

    pub fn ranked(&self) -> impl Iterator<Item = (i64, &Formula)> {
        self.ranks.iter().map(|(f, r)| (*r, f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Select every member.
    Full,
    /// Select the single best member.
    Maxichoice,
    /// Select the `k` best members.
    TopK(NonZeroUsize),
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::Full => f.write_str("full"),
            StrategyKind::Maxichoice => f.write_str("maxichoice"),
            StrategyKind::TopK(k) => write!(f, "top-{k}"),
        }
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "full" | "full-meet" => return Ok(StrategyKind::Full),
            "maxichoice" | "max" => return Ok(StrategyKind::Maxichoice),
            _ => {}
        }
        let digits = ["top-", "topk:", "topk-", "top", "topk"]
            .iter()
            .find_map(|p| lower.strip_prefix(p))
            .ok_or_else(|| format!("unknown strategy `{s}` (expected full, maxichoice or top-K)"))?;
        digits
            .parse::<NonZeroUsize>()
            .map(StrategyKind::TopK)
            .map_err(|_| format!("bad K in strategy `{s}`"))
    }
}

impl Serialize for StrategyKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StrategyKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A deterministic selection function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub kind: StrategyKind,
    pub priority: PriorityOrder,
}

impl Strategy {
    pub fn new(kind: StrategyKind, priority: PriorityOrder) -> Self {
        Strategy { kind, priority }
    }

    pub fn full() -> Self {
        Self::new(StrategyKind::Full, PriorityOrder::default())
    }

    pub fn maxichoice(priority: PriorityOrder) -> Self {
        Self::new(StrategyKind::Maxichoice, priority)
    }

    pub fn top_k(k: usize, priority: PriorityOrder) -> Self {
        let k = NonZeroUsize::new(k).expect("top-k needs k > 0");
        Self::new(StrategyKind::TopK(k), priority)
    }

    fn best(&self, members: Vec<BeliefBase>, core: &BeliefBase, count: usize) -> Vec<BeliefBase> {
        let mut scored: Vec<(Vec<RankKey>, BeliefBase)> = members
            .into_iter()
            .map(|m| (self.priority.score(&m, core), m))
            .collect();
        scored.sort();
        scored.into_iter().take(count).map(|(_, m)| m).collect()
    }

    /// Selected members, or `[anchor]` when the family is empty.
    pub fn select(&self, anchor: &BeliefBase, family: &SubsetFamily) -> Vec<BeliefBase> {
        let Some(core) = family.core() else {
            return vec![anchor.clone()];
        };
        let members: Vec<BeliefBase> = family.members().cloned().collect();
        match self.kind {
            StrategyKind::Full => members,
            StrategyKind::Maxichoice => self.best(members, &core, 1),
            StrategyKind::TopK(k) => self.best(members, &core, k.get()),
        }
    }

    /// `⋂ γ(anchor, family)`
    pub fn meet_select(&self, anchor: &BeliefBase, family: &SubsetFamily) -> BeliefBase {
        let selected = self.select(anchor, family);
        let mut iter = selected.into_iter();
        let first = iter.next().expect("selection is never empty");
        iter.fold(first, |acc, m| acc.intersection(&m))
    }

    /// `⋃ γ(anchor, family)`
    pub fn union_select(&self, anchor: &BeliefBase, family: &SubsetFamily) -> BeliefBase {
        self.select(anchor, family)
            .iter()
            .fold(BeliefBase::new(), |acc, m| acc.union(m))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

/// Consistency-preserving selection from `K ⋈ A`, returned as the union of
/// the selected members.
///
/// Whenever some member of `K ⋈ A` is consistent the result is consistent.
/// `Full` adds the members of `A \ K` greedily in priority order while the
/// result stays consistent; `Maxichoice` takes the best consistent member;
/// `TopK` unions the best consistent members as long as the union stays
/// consistent. With no consistent member the result is `K` itself when it
/// meets `A`, and otherwise `K` plus the most entrenched member of `A`.
pub fn select_expansion_consistent(
    reasoner: &Reasoner,
    strategy: &Strategy,
    k: &BeliefBase,
    a: &BeliefBase,
) -> Result<BeliefBase> {
    if a.is_empty() {
        return Ok(k.clone());
    }
    let limits = reasoner.limits();
    let fresh = strategy.priority.sorted(&a.difference(k));
    limits.check("new part of a partial-sum input", fresh.len(), limits.partial_sums)?;
    let overlap = k.overlaps(a);
    let sem = reasoner.semantics(&[k, a])?;
    let base_models = sem.models(k);
    let fits = |models: &crate::logic::semantics::Rows, f: &Formula| !models.and(sem.rows(f)).is_empty();

    let k_consistent = !base_models.is_empty();
    let any_consistent = (overlap && k_consistent) || fresh.iter().any(|f| fits(&base_models, f));
    if !any_consistent {
        return Ok(if overlap { k.clone() } else { k.with(fresh[0].clone()) });
    }

    match strategy.kind {
        StrategyKind::Full => {
            let mut result = k.clone();
            let mut models = base_models;
            for f in &fresh {
                if fits(&models, f) {
                    models.and_assign(sem.rows(f));
                    result = result.with(f.clone());
                }
            }
            Ok(result)
        }
        StrategyKind::Maxichoice | StrategyKind::TopK(_) => {
            let fresh_set: BeliefBase = fresh.iter().cloned().collect();
            let consistent: Vec<BeliefBase> = (0..1u64 << fresh_set.len())
                .filter(|&mask| mask != 0 || overlap)
                .map(|mask| fresh_set.subset_by_mask(mask))
                .filter(|added| !base_models.and(&sem.models(added)).is_empty())
                .collect();
            let ranked = strategy.best(consistent, &BeliefBase::new(), usize::MAX);
            let limit = match strategy.kind {
                StrategyKind::TopK(n) => n.get(),
                _ => 1,
            };
            let mut added = BeliefBase::new();
            let mut taken = 0;
            for candidate in ranked {
                if taken == limit {
                    break;
                }
                let union = added.union(&candidate);
                if taken == 0 || !base_models.and(&sem.models(&union)).is_empty() {
                    added = union;
                    taken += 1;
                }
            }
            Ok(k.union(&added))
        }
    }
}
