//! Choice revision on finite propositional belief bases.
//!
//! The crate provides package and choice contraction, partial expansion,
//! internal and external choice revision, and the derived "making up one's
//! mind" operators, together with executable postulates and a randomized
//! suite runner that checks the operators against them.

pub mod error;
pub mod logic;
pub mod operators;
pub mod postulates;
pub mod remainders;
pub mod selection;

pub use error::{Error, Result};
pub use logic::{conjunction_of, parse_formula, BeliefBase, Formula, Limits, Reasoner, Valuation};
pub use operators::{mum_input, RevisionMode, RevisionTrace, StrategyPair};
pub use remainders::{FamilyKind, NegationSet, SubsetFamily};
pub use selection::{select_expansion_consistent, PriorityOrder, Strategy, StrategyKind};

// The guide's listings run as doctests, one module per chapter so a failure
// points at its chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/remainders.md")]
    mod remainders {}
    #[doc = include_str!("../../../book/src/selection.md")]
    mod selection {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/postulates.md")]
    mod postulates {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
