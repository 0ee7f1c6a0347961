use choice_revision::postulates::{
    check_postulate, check_shipped, find_postulate, generate_instances, recheck, run_suite,
    strong_uniformity_condition, GeneratorConfig, Instance, Operator, OperatorKind, Polarity, Recorded, Theorem,
    Verdict,
};
use choice_revision::{
    base, parse_formula, BeliefBase, Error, PriorityOrder, Reasoner, Strategy, StrategyKind, StrategyPair,
};

fn prefer(texts: &[&str]) -> PriorityOrder {
    PriorityOrder::preferring(texts.iter().map(|t| parse_formula(t).unwrap()))
}

fn shipped(id: &str, kind: OperatorKind, inst: &Instance) -> choice_revision::postulates::PostulateReport {
    check_shipped(find_postulate(id).unwrap(), kind, &Reasoner::default(), inst).unwrap()
}

#[test]
fn package_success_holds_on_singleton() {
    let inst = Instance::simple(base!["p"], base!["p"], Strategy::full());
    let report = shipped("÷p-success", OperatorKind::PackageContraction, &inst);
    assert_eq!(report.verdict, Verdict::Holds);
}

#[test]
fn preservation_holds_for_maxichoice_expansion() {
    let r = Reasoner::default();
    let config = GeneratorConfig {
        num: 100,
        seed: 3,
        strategy: StrategyKind::Maxichoice,
        ..GeneratorConfig::default()
    };
    for inst in generate_instances(&config) {
        let report = check_shipped(
            find_postulate("∔-preservation").unwrap(),
            OperatorKind::PartialExpansion,
            &r,
            &inst,
        )
        .unwrap();
        assert_ne!(report.verdict, Verdict::Violated, "instance {}", inst.index);
    }
}

#[test]
fn external_mum_breaks_consistency() {
    let mut inst = Instance::simple(base!["p1", "p2"], base![], Strategy::full());
    inst.phi = parse_formula("p3").unwrap();
    let report = shipped("T6/consistency", OperatorKind::MumExternal, &inst);
    assert_eq!(report.verdict, Verdict::Violated);
    let witness = report.witness.as_ref().unwrap();
    assert!(witness
        .outputs
        .values()
        .any(|v| *v == Recorded::Base(base!["p1", "p2", "p3", "~p3"])));
    assert!(recheck(&report, &Reasoner::default()).unwrap());
}

#[test]
fn internal_revision_skips_inconsistent_bases() {
    let inst = Instance::simple(base!["p", "~p"], base!["q"], Strategy::full());
    for p in choice_revision::postulates::postulates_of(Theorem::T4) {
        let report = check_shipped(p, OperatorKind::InternalRevision, &Reasoner::default(), &inst).unwrap();
        assert_eq!(report.verdict, Verdict::Inapplicable, "{}", p.id());
    }
}

#[test]
fn internal_result_fails_external_relevance() {
    let r = Reasoner::default();
    let pair = StrategyPair::new(Strategy::full(), Strategy::maxichoice(prefer(&["q"])));
    let internal = OperatorKind::InternalRevision.build(&r, &pair);
    let inst = Instance::simple(base!["p", "~q", "~r"], base!["q", "r"], Strategy::full());
    let report = check_postulate("∗c-Relevance", &internal, &r, &inst).unwrap();
    assert_eq!(report.postulate, "T5/relevance");
    assert_eq!(report.verdict, Verdict::Violated);
    assert!(recheck(&report, &r).unwrap());
}

#[test]
fn external_result_fails_internal_relevance() {
    let r = Reasoner::default();
    let pair = StrategyPair::uniform(&Strategy::full());
    let external = OperatorKind::ExternalRevision.build(&r, &pair);
    let inst = Instance::simple(base!["q"], base!["p", "p -> ~q"], Strategy::full());
    let report = check_postulate("∗c-relevance", &external, &r, &inst).unwrap();
    assert_eq!(report.postulate, "T4/relevance");
    assert_eq!(report.verdict, Verdict::Violated);
    assert!(recheck(&report, &r).unwrap());

    let own = check_postulate("T5/relevance", &external, &r, &inst).unwrap();
    assert_eq!(own.verdict, Verdict::Holds);
}

#[test]
fn tampered_witness_does_not_recheck() {
    let r = Reasoner::default();
    let mut inst = Instance::simple(base!["p1", "p2"], base![], Strategy::full());
    inst.phi = parse_formula("p3").unwrap();
    let mut report = shipped("T6/consistency", OperatorKind::MumExternal, &inst);
    let witness = report.witness.as_mut().unwrap();
    for v in witness.outputs.values_mut() {
        *v = Recorded::Base(base!["p1", "p3"]);
    }
    assert!(!recheck(&report, &r).unwrap());
}

#[test]
fn custom_operator_is_checked() {
    let r = Reasoner::default();
    let identity = Operator::sets(|k, _| Ok(k.clone()));
    let inst = Instance::simple(base!["p"], base!["p"], Strategy::full());
    let report = check_postulate("T1/success", &identity, &r, &inst).unwrap();
    assert_eq!(report.verdict, Verdict::Violated);
    assert!(report.operator.is_none());
}

#[test]
fn unknown_or_mismatched_postulates_are_errors() {
    let r = Reasoner::default();
    let identity = Operator::sets(|k, _| Ok(k.clone()));
    let inst = Instance::simple(base!["p"], base!["q"], Strategy::full());
    assert!(matches!(
        check_postulate("T1/no-such", &identity, &r, &inst),
        Err(Error::UnknownPostulate(_))
    ));
    assert!(matches!(
        check_postulate("T6/success", &identity, &r, &inst),
        Err(Error::OperatorMismatch { .. })
    ));
    assert!(matches!(
        check_postulate("OBS/upper-bound", &identity, &r, &inst),
        Err(Error::OperatorMismatch { .. })
    ));
    let config = GeneratorConfig {
        num: 1,
        ..GeneratorConfig::default()
    };
    assert!(run_suite(&r, Theorem::T2, &config, Some("bogus")).is_err());
}

#[test]
fn strong_uniformity_reduction_matches_wider_carrier() {
    let r = Reasoner::default();
    let pair = StrategyPair::uniform(&Strategy::full());
    let config = GeneratorConfig {
        num: 60,
        seed: 11,
        max_base: 3,
        max_input: 2,
        ..GeneratorConfig::default()
    };
    let literals = base!["p", "~q"];
    for inst in generate_instances(&config) {
        let r1 = r.external_choice_revise(&inst.k, &inst.a, &pair).unwrap().result;
        let r2 = r.external_choice_revise(&inst.k2, &inst.b2, &pair).unwrap().result;
        let (s1, d1) = (inst.k.union(&r1), r1.difference(&inst.k));
        let (s2, d2) = (inst.k2.union(&r2), r2.difference(&inst.k2));
        let carrier = s1.union(&s2).union(&literals);
        for polarity in [Polarity::Consistent, Polarity::Inconsistent] {
            let exact = strong_uniformity_condition(&r, (&s1, &d1), (&s2, &d2), polarity, None).unwrap();
            let wide = strong_uniformity_condition(&r, (&s1, &d1), (&s2, &d2), polarity, Some(&carrier)).unwrap();
            assert_eq!(exact, wide, "instance {}", inst.index);
        }
    }
}

#[test]
fn consistency_of_expansion_conflicts_with_success() {
    let inst = Instance::simple(base!["p"], base!["~p"], Strategy::full());
    let report = shipped("T3/consistency", OperatorKind::ConsistentExpansion, &inst);
    assert_eq!(report.verdict, Verdict::Violated);
    let within = shipped(
        "T3/consistency-within-partial-sums",
        OperatorKind::ConsistentExpansion,
        &inst,
    );
    assert_eq!(within.verdict, Verdict::Inapplicable);
}

#[test]
fn strong_uniformity_fails_when_one_side_adds_nothing() {
    let r = Reasoner::default();
    let mut inst = Instance::simple(base!["p", "~p"], base!["q"], Strategy::full());
    inst.k2 = base!["p", "~p", "q"];
    inst.b2 = base!["q"];
    let pair = StrategyPair::uniform(&Strategy::full());
    assert_eq!(
        r.external_choice_revise(&inst.k, &inst.a, &pair).unwrap().result,
        base!["q"]
    );
    assert_eq!(
        r.external_choice_revise(&inst.k2, &inst.b2, &pair).unwrap().result,
        inst.k2
    );
    let report = shipped("T5/strong-uniformity", OperatorKind::ExternalRevision, &inst);
    assert_eq!(report.verdict, Verdict::Violated);
    assert!(recheck(&report, &r).unwrap());
}

#[test]
fn suite_json_is_deterministic() {
    let r = Reasoner::default();
    let config = GeneratorConfig {
        num: 40,
        seed: 42,
        strategy: StrategyKind::TopK(2.try_into().unwrap()),
        ..GeneratorConfig::default()
    };
    let once = run_suite(&r, Theorem::T4, &config, None).unwrap().to_json();
    let twice = run_suite(&r, Theorem::T4, &config, None).unwrap().to_json();
    assert_eq!(once, twice);
}

#[test]
fn suite_witnesses_recheck() {
    let r = Reasoner::default();
    let config = GeneratorConfig {
        num: 60,
        seed: 5,
        ..GeneratorConfig::default()
    };
    let summary = run_suite(&r, Theorem::T7, &config, Some("relevance-as-printed")).unwrap();
    assert!(summary.known_discrepancies > 0);
    assert_eq!(summary.violated, 0);
    assert!(!summary.witnesses.is_empty());
    assert!(summary.witnesses.iter().all(|w| w.known_discrepancy));
}

#[test]
fn empty_base_is_unchanged_by_empty_input() {
    let r = Reasoner::default();
    let pair = StrategyPair::uniform(&Strategy::full());
    for kind in [OperatorKind::InternalRevision, OperatorKind::ExternalRevision] {
        let Operator::Sets(op) = kind.build(&r, &pair) else {
            unreachable!()
        };
        assert_eq!(op(&base!["p"], &BeliefBase::new()).unwrap(), base!["p"]);
    }
}
