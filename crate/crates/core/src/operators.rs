//! Contraction, partial expansion, choice revision and making up one's mind.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::logic::{BeliefBase, Formula, Reasoner};
use crate::selection::{select_expansion_consistent, Strategy};

/// Strategies for the two stages of a revision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyPair {
    pub contraction: Strategy,
    pub expansion: Strategy,
}

impl StrategyPair {
    pub fn new(contraction: Strategy, expansion: Strategy) -> Self {
        StrategyPair { contraction, expansion }
    }

    /// One strategy driving both stages.
    pub fn uniform(strategy: &Strategy) -> Self {
        Self::new(strategy.clone(), strategy.clone())
    }
}

impl From<Strategy> for StrategyPair {
    fn from(strategy: Strategy) -> Self {
        Self::uniform(&strategy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RevisionMode {
    Internal,
    External,
}

/// Intermediate stages of a choice revision.
///
/// For internal revision `stage1` is the contraction of `K` by `n(A)` and
/// `aux` is `A`. For external revision `stage1` is the partial expansion of
/// `K` by `A` and `aux` is the part of it that was not already in `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionTrace {
    pub mode: RevisionMode,
    pub stage1: BeliefBase,
    pub aux: BeliefBase,
    pub result: BeliefBase,
}

/// `{φ, ¬φ}` with syntactic negation.
pub fn mum_input(phi: &Formula) -> BeliefBase {
    BeliefBase::from_iter([phi.clone(), Formula::not(phi.clone())])
}

impl Reasoner {
    /// `K ÷p A = ⋂ γ(K, K ⊥ A)`
    pub fn package_contract(&self, k: &BeliefBase, a: &BeliefBase, strategy: &Strategy) -> Result<BeliefBase> {
        let family = self.package_remainders(k, a)?;
        Ok(strategy.meet_select(k, &family))
    }

    /// `K ÷c A = ⋂ γ(K, K ∠ A)`
    pub fn choice_contract(&self, k: &BeliefBase, a: &BeliefBase, strategy: &Strategy) -> Result<BeliefBase> {
        let family = self.choice_remainders(k, a)?;
        Ok(strategy.meet_select(k, &family))
    }

    /// `K ∔ A = ⋃ γ(K, K ⋈ A)`
    pub fn partial_expand(&self, k: &BeliefBase, a: &BeliefBase, strategy: &Strategy) -> Result<BeliefBase> {
        let family = self.partial_sums(k, a)?;
        Ok(strategy.union_select(k, &family))
    }

    /// Partial expansion whose result is consistent whenever `K ⋈ A` has a
    /// consistent member.
    pub fn consistent_expand(&self, k: &BeliefBase, a: &BeliefBase, strategy: &Strategy) -> Result<BeliefBase> {
        select_expansion_consistent(self, strategy, k, a)
    }

    /// Contract by the negation set of `A`, then expand consistently by `A`.
    pub fn internal_choice_revise(
        &self,
        k: &BeliefBase,
        a: &BeliefBase,
        strategies: &StrategyPair,
    ) -> Result<RevisionTrace> {
        let family = self.choice_remainders_vs_negation(k, a)?;
        let stage1 = strategies.contraction.meet_select(k, &family);
        let result = select_expansion_consistent(self, &strategies.expansion, &stage1, a)?;
        Ok(RevisionTrace {
            mode: RevisionMode::Internal,
            stage1,
            aux: a.clone(),
            result,
        })
    }

    /// Expand partially by `A`, then package-contract the expanded base by the
    /// negation set of what was added.
    pub fn external_choice_revise(
        &self,
        k: &BeliefBase,
        a: &BeliefBase,
        strategies: &StrategyPair,
    ) -> Result<RevisionTrace> {
        let stage1 = self.partial_expand(k, a, &strategies.expansion)?;
        let added = stage1.difference(k);
        let family = self.package_remainders_vs_negation(&stage1, &added)?;
        let result = strategies.contraction.meet_select(&stage1, &family);
        Ok(RevisionTrace {
            mode: RevisionMode::External,
            stage1,
            aux: added,
            result,
        })
    }

    pub fn mum_internal(&self, k: &BeliefBase, phi: &Formula, strategies: &StrategyPair) -> Result<BeliefBase> {
        Ok(self.internal_choice_revise(k, &mum_input(phi), strategies)?.result)
    }

    pub fn mum_external(&self, k: &BeliefBase, phi: &Formula, strategies: &StrategyPair) -> Result<BeliefBase> {
        Ok(self.external_choice_revise(k, &mum_input(phi), strategies)?.result)
    }
}
