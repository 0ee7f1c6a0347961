use std::collections::BTreeSet;

use choice_revision::{BeliefBase, Formula, Reasoner, Valuation};
use proptest::prelude::*;

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(&ATOMS[..]).prop_map(Formula::atom);
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

fn base(max: usize) -> impl Strategy<Value = BeliefBase> {
    prop::collection::vec(formula(), 0..=max).prop_map(BeliefBase::from_iter)
}

fn rows() -> Vec<Valuation> {
    let atoms: Vec<String> = ATOMS.iter().map(|a| a.to_string()).collect();
    (0..1 << atoms.len()).map(|i| Valuation::from_row(&atoms, i)).collect()
}

fn entails(set: &BeliefBase, phi: &Formula) -> bool {
    rows().iter().all(|v| !set.iter().all(|f| f.eval(v)) || phi.eval(v))
}

/// Maximal subsets of `k` passing `keep`, by plain enumeration.
fn maximal(k: &BeliefBase, keep: impl Fn(&BeliefBase) -> bool) -> BTreeSet<BeliefBase> {
    let good: Vec<BeliefBase> = k.subsets().filter(|x| keep(x)).collect();
    good.iter()
        .filter(|x| !good.iter().any(|y| y != *x && x.is_subset(y)))
        .cloned()
        .collect()
}

proptest! {
    #[test]
    fn package_remainders_match_enumeration(k in base(4), a in base(2)) {
        let r = Reasoner::default();
        let got = r.package_remainders(&k, &a).unwrap().member_set().clone();
        let want = maximal(&k, |x| a.iter().all(|f| !entails(x, f)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn choice_remainders_match_enumeration(k in base(4), a in base(2)) {
        let r = Reasoner::default();
        let got = r.choice_remainders(&k, &a).unwrap().member_set().clone();
        let want = maximal(&k, |x| !a.iter().all(|f| entails(x, f)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn negation_shortcuts_match_explicit_sets(k in base(4), a in base(3)) {
        let r = Reasoner::default();
        let n = r.negation_set(&a).unwrap();
        prop_assert!(r
            .choice_remainders_vs_negation(&k, &a)
            .unwrap()
            .same_members(&r.choice_remainders(&k, n.clauses()).unwrap()));
        prop_assert!(r
            .package_remainders_vs_negation(&k, &a)
            .unwrap()
            .same_members(&r.package_remainders(&k, n.clauses()).unwrap()));
    }

    #[test]
    fn partial_sums_lie_between_base_and_union(k in base(3), a in base(3)) {
        let r = Reasoner::default();
        let family = r.partial_sums(&k, &a).unwrap();
        let top = k.union(&a);
        for x in family.members() {
            prop_assert!(k.is_subset(x) && x.is_subset(&top) && x.overlaps(&a));
        }
        let expected = top.subsets().filter(|x| k.is_subset(x) && x.overlaps(&a)).count();
        prop_assert_eq!(family.len(), expected);
    }
}
