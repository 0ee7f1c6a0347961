//! Formulas, belief bases and classical consequence.

mod base;
mod formula;
mod parse;
pub(crate) mod semantics;

pub use base::BeliefBase;
pub use formula::{Formula, Node, Valuation};
pub use parse::parse_formula;
pub use semantics::{conjunction_of, Limits, Reasoner, Semantics};
