use serde::{Deserialize, Serialize};

use super::generate::{generate_instances, GeneratorConfig, Instance};
use super::{check_shipped, postulates_of, recheck, OperatorKind, Postulate, Theorem, Verdict, Witness};
use crate::error::{Error, Result};
use crate::logic::Reasoner;
use crate::selection::StrategyKind;

/// Witnesses kept per postulate and operator.
const WITNESS_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulateTally {
    pub postulate: String,
    pub label: String,
    pub operator: Option<OperatorKind>,
    pub known_discrepancy: bool,
    pub holds: usize,
    pub violated: usize,
    pub inapplicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub postulate: String,
    pub operator: Option<OperatorKind>,
    pub known_discrepancy: bool,
    pub instance: Instance,
    pub witness: Witness,
}

/// Tallies of one suite run. `violated` excludes postulates flagged as
/// known discrepancies, which are counted in `known_discrepancies`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub theorem: Theorem,
    pub strategy: StrategyKind,
    pub seed: u64,
    pub instances: usize,
    pub holds: usize,
    pub violated: usize,
    pub inapplicable: usize,
    pub known_discrepancies: usize,
    pub postulates: Vec<PostulateTally>,
    pub witnesses: Vec<WitnessEntry>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.violated == 0
    }

    pub fn tally(&self, postulate: &str) -> impl Iterator<Item = &PostulateTally> {
        let postulate = postulate.to_owned();
        self.postulates.iter().filter(move |t| t.postulate == postulate)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

fn selected(theorem: Theorem, filter: Option<&str>) -> Result<Vec<&'static Postulate>> {
    let all: Vec<&Postulate> = postulates_of(theorem).collect();
    let Some(name) = filter else {
        return Ok(all);
    };
    let picked: Vec<&Postulate> = all
        .into_iter()
        .filter(|p| p.name.eq_ignore_ascii_case(name) || p.id().eq_ignore_ascii_case(name) || p.label == name)
        .collect();
    if picked.is_empty() {
        return Err(Error::UnknownPostulate(format!("{theorem}/{name}")));
    }
    Ok(picked)
}

/// Generates `config.num` instances and checks every postulate of
/// `theorem` (or only `postulate`) on each, against every target operator.
/// Each violation is judged again from its witness before it is reported.
pub fn run_suite(
    reasoner: &Reasoner,
    theorem: Theorem,
    config: &GeneratorConfig,
    postulate: Option<&str>,
) -> Result<SuiteSummary> {
    let postulates = selected(theorem, postulate)?;
    let mut slots: Vec<(&Postulate, Option<OperatorKind>)> = Vec::new();
    for p in postulates {
        if p.is_structural() {
            slots.push((p, None));
        } else {
            slots.extend(p.targets.iter().map(|&op| (p, Some(op))));
        }
    }
    let mut tallies: Vec<PostulateTally> = slots
        .iter()
        .map(|(p, op)| PostulateTally {
            postulate: p.id(),
            label: p.label.to_owned(),
            operator: *op,
            known_discrepancy: p.known_discrepancy,
            holds: 0,
            violated: 0,
            inapplicable: 0,
        })
        .collect();
    let mut witnesses = Vec::new();

    let mut instances = 0;
    for inst in generate_instances(config) {
        instances += 1;
        for ((p, op), tally) in slots.iter().zip(tallies.iter_mut()) {
            let report = check_shipped(p, op.unwrap_or(OperatorKind::InternalRevision), reasoner, &inst)?;
            match report.verdict {
                Verdict::Holds => tally.holds += 1,
                Verdict::Inapplicable => tally.inapplicable += 1,
                Verdict::Violated => {
                    if !recheck(&report, reasoner)? {
                        return Err(Error::Precondition(format!(
                            "witness for {} on instance {} did not re-check",
                            report.postulate, inst.index
                        )));
                    }
                    tally.violated += 1;
                    if tally.violated <= WITNESS_CAP {
                        witnesses.push(WitnessEntry {
                            postulate: report.postulate,
                            operator: *op,
                            known_discrepancy: p.known_discrepancy,
                            instance: report.instance,
                            witness: report.witness.expect("violations carry a witness"),
                        });
                    }
                }
            }
        }
    }

    let sum = |f: fn(&PostulateTally) -> usize, known: bool| -> usize {
        tallies.iter().filter(|t| t.known_discrepancy == known).map(f).sum()
    };
    let holds = sum(|t| t.holds, false) + sum(|t| t.holds, true);
    let inapplicable = sum(|t| t.inapplicable, false) + sum(|t| t.inapplicable, true);
    Ok(SuiteSummary {
        theorem,
        strategy: config.strategy,
        seed: config.seed,
        instances,
        holds,
        violated: sum(|t| t.violated, false),
        inapplicable,
        known_discrepancies: sum(|t| t.violated, true),
        postulates: tallies,
        witnesses,
    })
}
