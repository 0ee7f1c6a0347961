//! Executable postulates, an instance generator and a suite runner.
//!
//! Every postulate is a predicate over the outputs of an operator on one
//! [`Instance`]. Operator outputs are recorded while a predicate runs, so a
//! violation carries the exact outputs that falsified it and can be judged
//! again without calling the operator.

mod candidates;
mod checks;
mod generate;
mod suite;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{BeliefBase, Formula, Reasoner, Semantics};
use crate::operators::StrategyPair;
use crate::remainders::SubsetFamily;

pub use candidates::{falsum_candidates, redundancy_candidates, shallow_pool, RedundancyMode};
pub use checks::{strong_uniformity_condition, Polarity};
pub use generate::{atom_names, generate_instances, FormulaPool, GeneratorConfig, Instance};
pub use suite::{run_suite, PostulateTally, SuiteSummary, WitnessEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    L1,
    #[serde(rename = "OBS")]
    Obs,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::T5,
        Theorem::T6,
        Theorem::T7,
        Theorem::L1,
        Theorem::Obs,
    ];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
            Theorem::T5 => "T5",
            Theorem::T6 => "T6",
            Theorem::T7 => "T7",
            Theorem::L1 => "L1",
            Theorem::Obs => "OBS",
        };
        f.write_str(s)
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown theorem `{s}` (expected T1..T7, L1 or OBS)"))
    }
}

/// The operators shipped by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    PackageContraction,
    ChoiceContraction,
    PartialExpansion,
    ConsistentExpansion,
    InternalRevision,
    ExternalRevision,
    MumInternal,
    MumExternal,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::PackageContraction => "package-contraction",
            OperatorKind::ChoiceContraction => "choice-contraction",
            OperatorKind::PartialExpansion => "partial-expansion",
            OperatorKind::ConsistentExpansion => "consistent-expansion",
            OperatorKind::InternalRevision => "internal-revision",
            OperatorKind::ExternalRevision => "external-revision",
            OperatorKind::MumInternal => "mum-internal",
            OperatorKind::MumExternal => "mum-external",
        }
    }

    pub fn shape(self) -> Shape {
        match self {
            OperatorKind::MumInternal | OperatorKind::MumExternal => Shape::Formula,
            _ => Shape::Sets,
        }
    }

    /// The operator as a closure over `reasoner` and `strategies`.
    pub fn build<'a>(self, reasoner: &'a Reasoner, strategies: &'a StrategyPair) -> Operator<'a> {
        let contraction = &strategies.contraction;
        let expansion = &strategies.expansion;
        match self {
            OperatorKind::PackageContraction => {
                Operator::sets(move |k, a| reasoner.package_contract(k, a, contraction))
            }
            OperatorKind::ChoiceContraction => Operator::sets(move |k, a| reasoner.choice_contract(k, a, contraction)),
            OperatorKind::PartialExpansion => Operator::sets(move |k, a| reasoner.partial_expand(k, a, expansion)),
            OperatorKind::ConsistentExpansion => {
                Operator::sets(move |k, a| reasoner.consistent_expand(k, a, expansion))
            }
            OperatorKind::InternalRevision => {
                Operator::sets(move |k, a| Ok(reasoner.internal_choice_revise(k, a, strategies)?.result))
            }
            OperatorKind::ExternalRevision => {
                Operator::sets(move |k, a| Ok(reasoner.external_choice_revise(k, a, strategies)?.result))
            }
            OperatorKind::MumInternal => Operator::formula(move |k, phi| reasoner.mum_internal(k, phi, strategies)),
            OperatorKind::MumExternal => Operator::formula(move |k, phi| reasoner.mum_external(k, phi, strategies)),
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Operand shape of an operator: `(K, A)` or `(K, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Sets,
    Formula,
}

type SetsFn<'a> = dyn Fn(&BeliefBase, &BeliefBase) -> Result<BeliefBase> + 'a;
type FormulaFn<'a> = dyn Fn(&BeliefBase, &Formula) -> Result<BeliefBase> + 'a;

/// An operator under test.
pub enum Operator<'a> {
    Sets(Box<SetsFn<'a>>),
    Formula(Box<FormulaFn<'a>>),
}

impl<'a> Operator<'a> {
    pub fn sets(f: impl Fn(&BeliefBase, &BeliefBase) -> Result<BeliefBase> + 'a) -> Self {
        Operator::Sets(Box::new(f))
    }

    pub fn formula(f: impl Fn(&BeliefBase, &Formula) -> Result<BeliefBase> + 'a) -> Self {
        Operator::Formula(Box::new(f))
    }

    pub fn shape(&self) -> Shape {
        match self {
            Operator::Sets(_) => Shape::Sets,
            Operator::Formula(_) => Shape::Formula,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

/// A value produced while evaluating a postulate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Recorded {
    Base(BeliefBase),
    Family(BTreeSet<BeliefBase>),
}

/// The outputs that falsified a postulate, plus the formula it failed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub outputs: BTreeMap<String, Recorded>,
    pub formula: Option<Formula>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulateReport {
    pub postulate: String,
    pub operator: Option<OperatorKind>,
    pub instance: Instance,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

pub(crate) enum Outcome {
    Holds(Option<String>),
    Violated { formula: Option<Formula>, note: String },
    Inapplicable(String),
}

impl Outcome {
    pub(crate) fn holds() -> Self {
        Outcome::Holds(None)
    }

    pub(crate) fn violated(note: impl Into<String>) -> Self {
        Outcome::Violated {
            formula: None,
            note: note.into(),
        }
    }

    pub(crate) fn violated_at(formula: &Formula, note: impl Into<String>) -> Self {
        Outcome::Violated {
            formula: Some(formula.clone()),
            note: note.into(),
        }
    }

    pub(crate) fn inapplicable(reason: impl Into<String>) -> Self {
        Outcome::Inapplicable(reason.into())
    }

    pub(crate) fn check(ok: bool, note: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::holds()
        } else {
            Outcome::violated(note())
        }
    }
}

type CheckFn = fn(&mut Ctx) -> Result<Outcome>;

/// One named postulate.
#[derive(Clone)]
pub struct Postulate {
    pub theorem: Theorem,
    pub name: &'static str,
    pub label: &'static str,
    /// Operators the suite runs this postulate against. Empty for structural
    /// checks on families, which do not take an operator.
    pub targets: &'static [OperatorKind],
    pub shape: Shape,
    /// Expected to fail; tallied apart from real violations.
    pub known_discrepancy: bool,
    pub(crate) check: CheckFn,
}

impl Postulate {
    pub fn id(&self) -> String {
        format!("{}/{}", self.theorem, self.name)
    }

    pub fn is_structural(&self) -> bool {
        self.targets.is_empty()
    }
}

impl fmt::Debug for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Postulate")
            .field("id", &self.id())
            .field("label", &self.label)
            .field("targets", &self.targets)
            .field("known_discrepancy", &self.known_discrepancy)
            .finish()
    }
}

/// Every postulate, in theorem order.
pub fn catalogue() -> &'static [Postulate] {
    checks::CATALOGUE
}

pub fn postulates_of(theorem: Theorem) -> impl Iterator<Item = &'static Postulate> {
    catalogue().iter().filter(move |p| p.theorem == theorem)
}

/// Looks a postulate up by id (`T5/relevance`) or by its unique label
/// (`∗c-Relevance`).
pub fn find_postulate(name: &str) -> Result<&'static Postulate> {
    let name = name.trim();
    if let Some(p) = catalogue().iter().find(|p| p.id().eq_ignore_ascii_case(name)) {
        return Ok(p);
    }
    let mut by_label = catalogue().iter().filter(|p| p.label == name);
    match (by_label.next(), by_label.next()) {
        (Some(p), None) => Ok(p),
        _ => Err(Error::UnknownPostulate(name.to_owned())),
    }
}

enum Source<'a> {
    Live {
        operator: Option<&'a Operator<'a>>,
        strategies: StrategyPair,
    },
    Replay(&'a BTreeMap<String, Recorded>),
}

/// Evaluation state for one postulate on one instance.
pub(crate) struct Ctx<'a> {
    pub(crate) inst: &'a Instance,
    pub(crate) reasoner: &'a Reasoner,
    source: Source<'a>,
    recorded: BTreeMap<String, Recorded>,
    sem: Semantics,
}

fn missing(key: &str) -> Error {
    Error::Precondition(format!("no recorded output for `{key}`"))
}

impl<'a> Ctx<'a> {
    fn new(reasoner: &'a Reasoner, inst: &'a Instance, source: Source<'a>) -> Result<Self> {
        let extra: BeliefBase = [
            inst.phi.clone(),
            Formula::not(inst.phi.clone()),
            inst.psi.clone(),
            Formula::not(inst.psi.clone()),
            Formula::top(),
            Formula::not(Formula::top()),
        ]
        .into_iter()
        .collect();
        let mut bases = inst.bases();
        bases.push(&extra);
        let sem = reasoner.semantics(&bases)?;
        Ok(Ctx {
            inst,
            reasoner,
            source,
            recorded: BTreeMap::new(),
            sem,
        })
    }

    pub(crate) fn atoms(&self) -> Vec<String> {
        self.sem.atoms().to_vec()
    }

    fn record(&mut self, key: String, compute: impl FnOnce(&Self) -> Result<Recorded>) -> Result<Recorded> {
        let value = match &self.source {
            Source::Replay(map) => map.get(&key).cloned().ok_or_else(|| missing(&key))?,
            Source::Live { .. } => match self.recorded.get(&key) {
                Some(v) => v.clone(),
                None => compute(self)?,
            },
        };
        self.recorded.insert(key, value.clone());
        Ok(value)
    }

    fn record_base(&mut self, key: String, compute: impl FnOnce(&Self) -> Result<BeliefBase>) -> Result<BeliefBase> {
        match self.record(key.clone(), |ctx| compute(ctx).map(Recorded::Base))? {
            Recorded::Base(b) => Ok(b),
            Recorded::Family(_) => Err(missing(&key)),
        }
    }

    fn operator(&self, shape: Shape) -> Result<&'a Operator<'a>> {
        match &self.source {
            Source::Live { operator: Some(op), .. } if op.shape() == shape => Ok(op),
            _ => Err(Error::OperatorMismatch {
                postulate: "operator call".into(),
                operator: match shape {
                    Shape::Sets => "(K, A)",
                    Shape::Formula => "(K, φ)",
                },
            }),
        }
    }

    /// `K ∘ A` for the operator under test.
    pub(crate) fn apply(&mut self, k: &BeliefBase, a: &BeliefBase) -> Result<BeliefBase> {
        self.record_base(format!("{k} ∘ {a}"), |ctx| match ctx.operator(Shape::Sets)? {
            Operator::Sets(f) => f(k, a),
            Operator::Formula(_) => unreachable!(),
        })
    }

    /// `K ∘ φ` for a single-formula operator under test.
    pub(crate) fn apply_formula(&mut self, k: &BeliefBase, phi: &Formula) -> Result<BeliefBase> {
        self.record_base(format!("{k} ∘ {phi}"), |ctx| match ctx.operator(Shape::Formula)? {
            Operator::Formula(f) => f(k, phi),
            Operator::Sets(_) => unreachable!(),
        })
    }

    fn strategies(&self) -> Result<&StrategyPair> {
        match &self.source {
            Source::Live { strategies, .. } => Ok(strategies),
            Source::Replay(_) => Err(Error::Precondition("strategies are unavailable during replay".into())),
        }
    }

    /// A base computed by the shipped operators, recorded under `key`.
    pub(crate) fn derived(
        &mut self,
        key: impl Into<String>,
        compute: impl FnOnce(&Reasoner, &StrategyPair) -> Result<BeliefBase>,
    ) -> Result<BeliefBase> {
        self.record_base(key.into(), |ctx| compute(ctx.reasoner, ctx.strategies()?))
    }

    /// A family, recorded under `key`.
    pub(crate) fn family(
        &mut self,
        key: impl Into<String>,
        compute: impl FnOnce(&Reasoner) -> Result<SubsetFamily>,
    ) -> Result<BTreeSet<BeliefBase>> {
        let key = key.into();
        match self.record(key.clone(), |ctx| {
            compute(ctx.reasoner).map(|f| Recorded::Family(f.member_set().clone()))
        })? {
            Recorded::Family(f) => Ok(f),
            Recorded::Base(_) => Err(missing(&key)),
        }
    }

    fn prime(&mut self, set: &BeliefBase) {
        self.sem.prime(set.iter());
    }

    pub(crate) fn consistent(&mut self, set: &BeliefBase) -> bool {
        self.prime(set);
        self.sem.consistent(set.iter())
    }

    pub(crate) fn implies_some(&mut self, set: &BeliefBase, targets: &BeliefBase) -> bool {
        self.prime(set);
        self.prime(targets);
        self.sem.implies_some(set, targets)
    }

    pub(crate) fn implies_all(&mut self, set: &BeliefBase, targets: &BeliefBase) -> bool {
        self.prime(set);
        self.prime(targets);
        self.sem.implies_all(set, targets)
    }

    /// `set ≡ {⊥}`
    pub(crate) fn equivalent_to_falsum(&mut self, set: &BeliefBase) -> bool {
        !set.is_empty()
            && set
                .iter()
                .all(|f| !self.consistent(&BeliefBase::from_iter([f.clone()])))
    }
}

fn finish(
    postulate: &Postulate,
    operator: Option<OperatorKind>,
    instance: &Instance,
    outcome: Outcome,
    recorded: BTreeMap<String, Recorded>,
) -> PostulateReport {
    let (verdict, witness, note) = match outcome {
        Outcome::Holds(note) => (Verdict::Holds, None, note),
        Outcome::Inapplicable(reason) => (Verdict::Inapplicable, None, Some(reason)),
        Outcome::Violated { formula, note } => (
            Verdict::Violated,
            Some(Witness {
                outputs: recorded,
                formula,
                note,
            }),
            None,
        ),
    };
    PostulateReport {
        postulate: postulate.id(),
        operator,
        instance: instance.clone(),
        verdict,
        witness,
        note,
    }
}

fn scope_excludes(postulate: &Postulate, operator: Option<OperatorKind>, ctx: &mut Ctx) -> bool {
    let internal_scope = postulate.theorem == Theorem::T4 || operator == Some(OperatorKind::InternalRevision);
    internal_scope && !ctx.consistent(&ctx.inst.k.clone())
}

fn evaluate(
    postulate: &Postulate,
    reasoner: &Reasoner,
    instance: &Instance,
    operator: Option<(&Operator, Option<OperatorKind>)>,
) -> Result<PostulateReport> {
    let kind = operator.and_then(|(_, k)| k);
    let source = Source::Live {
        operator: operator.map(|(op, _)| op),
        strategies: StrategyPair::uniform(&instance.strategy),
    };
    let mut ctx = Ctx::new(reasoner, instance, source)?;
    let outcome = if scope_excludes(postulate, kind, &mut ctx) {
        Outcome::inapplicable("base is inconsistent")
    } else {
        (postulate.check)(&mut ctx)?
    };
    Ok(finish(postulate, kind, instance, outcome, ctx.recorded))
}

/// Checks one postulate of an operator on one instance.
pub fn check_postulate(
    name: &str,
    operator: &Operator,
    reasoner: &Reasoner,
    instance: &Instance,
) -> Result<PostulateReport> {
    let postulate = find_postulate(name)?;
    if postulate.is_structural() || postulate.shape != operator.shape() {
        return Err(Error::OperatorMismatch {
            postulate: postulate.id(),
            operator: match operator.shape() {
                Shape::Sets => "(K, A)",
                Shape::Formula => "(K, φ)",
            },
        });
    }
    evaluate(postulate, reasoner, instance, Some((operator, None)))
}

/// Runs a postulate against one of the shipped operators.
pub fn check_shipped(
    postulate: &Postulate,
    kind: OperatorKind,
    reasoner: &Reasoner,
    instance: &Instance,
) -> Result<PostulateReport> {
    if postulate.is_structural() {
        return evaluate(postulate, reasoner, instance, None);
    }
    let strategies = StrategyPair::uniform(&instance.strategy);
    let operator = kind.build(reasoner, &strategies);
    evaluate(postulate, reasoner, instance, Some((&operator, Some(kind))))
}

/// Checks a structural observation on one instance.
pub fn check_observation(name: &str, reasoner: &Reasoner, instance: &Instance) -> Result<PostulateReport> {
    let postulate = find_postulate(name)?;
    if !postulate.is_structural() {
        return Err(Error::OperatorMismatch {
            postulate: postulate.id(),
            operator: "structural",
        });
    }
    evaluate(postulate, reasoner, instance, None)
}

/// Judges a violated report again from its recorded outputs alone. Returns
/// true when the witness still falsifies the postulate.
pub fn recheck(report: &PostulateReport, reasoner: &Reasoner) -> Result<bool> {
    let Some(witness) = &report.witness else {
        return Ok(false);
    };
    let postulate = find_postulate(&report.postulate)?;
    let mut ctx = Ctx::new(reasoner, &report.instance, Source::Replay(&witness.outputs))?;
    if scope_excludes(postulate, report.operator, &mut ctx) {
        return Ok(false);
    }
    Ok(matches!((postulate.check)(&mut ctx)?, Outcome::Violated { .. }))
}
