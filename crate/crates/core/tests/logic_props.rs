use choice_revision::{parse_formula, BeliefBase, Formula, Reasoner, Valuation};
use proptest::prelude::*;

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(&ATOMS[..]).prop_map(Formula::atom),
        Just(Formula::top()),
        Just(Formula::bottom()),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn base() -> impl Strategy<Value = BeliefBase> {
    prop::collection::vec(formula(), 0..4).prop_map(BeliefBase::from_iter)
}

/// Entailment decided row by row, independently of the packed tables.
fn brute_entails(set: &BeliefBase, phi: &Formula) -> bool {
    let atoms: Vec<String> = ATOMS.iter().map(|a| a.to_string()).collect();
    (0..1 << atoms.len()).all(|row| {
        let v = Valuation::from_row(&atoms, row);
        !set.iter().all(|f| f.eval(&v)) || phi.eval(&v)
    })
}

proptest! {
    #[test]
    fn rendered_formulas_parse_back(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn entailment_agrees_with_valuations(set in base(), phi in formula()) {
        let r = Reasoner::default();
        prop_assert_eq!(r.entails(&set, &phi).unwrap(), brute_entails(&set, &phi));
    }

    #[test]
    fn members_are_entailed(set in base()) {
        let r = Reasoner::default();
        for f in set.iter() {
            prop_assert!(r.entails(&set, f).unwrap());
        }
    }

    #[test]
    fn entailment_is_monotone(set in base(), extra in formula(), phi in formula()) {
        let r = Reasoner::default();
        if r.entails(&set, &phi).unwrap() {
            prop_assert!(r.entails(&set.with(extra), &phi).unwrap());
        }
    }

    #[test]
    fn deduction(set in base(), psi in formula(), phi in formula()) {
        let r = Reasoner::default();
        let left = r.entails(&set.with(psi.clone()), &phi).unwrap();
        let right = r.entails(&set, &Formula::implies(psi, phi)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn consistency_is_non_entailment_of_falsum(set in base()) {
        let r = Reasoner::default();
        prop_assert_eq!(r.is_consistent(&set).unwrap(), !r.entails(&set, &Formula::bottom()).unwrap());
    }

    #[test]
    fn implies_all_implies_some(set in base(), targets in base()) {
        let r = Reasoner::default();
        if !targets.is_empty() && r.implies_all(&set, &targets).unwrap() {
            prop_assert!(r.implies_some(&set, &targets).unwrap());
        }
    }

    #[test]
    fn set_equivalence_is_an_equivalence(a in base(), b in base(), c in base()) {
        let r = Reasoner::default();
        let eq = |x: &BeliefBase, y: &BeliefBase| r.equivalent_sets(x, y).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }
}
