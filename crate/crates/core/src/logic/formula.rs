use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Syntax tree of a propositional formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Atom(String),
    Top,
    Bottom,
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Implies(Formula, Formula),
    Iff(Formula, Formula),
}

/// A propositional formula.
///
/// Formulas are cheap to clone and carry their canonical rendering. Equality,
/// ordering and hashing all go through that rendering, which is injective, so
/// two formulas compare equal exactly when they are structurally identical.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

struct Inner {
    node: Node,
    text: String,
}

/// Binding strength, tightest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Prec {
    Iff = 0,
    Implies = 1,
    Or = 2,
    And = 3,
    Unary = 4,
}

impl Formula {
    fn from_node(node: Node) -> Self {
        let text = render(&node);
        Formula(Arc::new(Inner { node, text }))
    }

    /// Builds an atom. The name is not validated here; use the parser for untrusted text.
    pub fn atom(name: impl Into<String>) -> Self {
        Self::from_node(Node::Atom(name.into()))
    }

    pub fn top() -> Self {
        Self::from_node(Node::Top)
    }

    pub fn bottom() -> Self {
        Self::from_node(Node::Bottom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Self {
        Self::from_node(Node::Not(inner))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Self::from_node(Node::And(left, right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Self::from_node(Node::Or(left, right))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Self::from_node(Node::Implies(left, right))
    }

    pub fn iff(left: Formula, right: Formula) -> Self {
        Self::from_node(Node::Iff(left, right))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Canonical text; re-parses to a structurally equal formula.
    pub fn text(&self) -> &str {
        &self.0.text
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.node(), Node::Atom(_))
    }

    /// Atom names occurring in the formula, appended to `out`.
    pub fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self.node() {
            Node::Atom(name) => out.push(name),
            Node::Top | Node::Bottom => {}
            Node::Not(inner) => inner.collect_atoms(out),
            Node::And(l, r) | Node::Or(l, r) | Node::Implies(l, r) | Node::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluates the formula under a valuation. Atoms missing from the
    /// valuation are read as false.
    pub fn eval(&self, valuation: &Valuation) -> bool {
        match self.node() {
            Node::Atom(name) => valuation.get(name),
            Node::Top => true,
            Node::Bottom => false,
            Node::Not(inner) => !inner.eval(valuation),
            Node::And(l, r) => l.eval(valuation) && r.eval(valuation),
            Node::Or(l, r) => l.eval(valuation) || r.eval(valuation),
            Node::Implies(l, r) => !l.eval(valuation) || r.eval(valuation),
            Node::Iff(l, r) => l.eval(valuation) == r.eval(valuation),
        }
    }

    pub(crate) fn prec(&self) -> Prec {
        match self.node() {
            Node::Atom(_) | Node::Top | Node::Bottom | Node::Not(_) => Prec::Unary,
            Node::And(..) => Prec::And,
            Node::Or(..) => Prec::Or,
            Node::Implies(..) => Prec::Implies,
            Node::Iff(..) => Prec::Iff,
        }
    }
}

fn render(node: &Node) -> String {
    match node {
        Node::Atom(name) => name.clone(),
        Node::Top => "true".to_owned(),
        Node::Bottom => "false".to_owned(),
        Node::Not(inner) => {
            if inner.prec() == Prec::Unary {
                format!("~{}", inner.text())
            } else {
                format!("~({})", inner.text())
            }
        }
        Node::And(l, r) => binary(l, r, "&", Prec::And, Assoc::Left),
        Node::Or(l, r) => binary(l, r, "|", Prec::Or, Assoc::Left),
        Node::Implies(l, r) => binary(l, r, "->", Prec::Implies, Assoc::Right),
        Node::Iff(l, r) => binary(l, r, "<->", Prec::Iff, Assoc::Right),
    }
}

enum Assoc {
    Left,
    Right,
}

fn binary(l: &Formula, r: &Formula, op: &str, prec: Prec, assoc: Assoc) -> String {
    let wrap_left = match assoc {
        Assoc::Left => l.prec() < prec,
        Assoc::Right => l.prec() <= prec,
    };
    let wrap_right = match assoc {
        Assoc::Left => r.prec() <= prec,
        Assoc::Right => r.prec() < prec,
    };
    let side = |f: &Formula, wrap: bool| {
        if wrap {
            format!("({})", f.text())
        } else {
            f.text().to_owned()
        }
    };
    format!("{} {} {}", side(l, wrap_left), op, side(r, wrap_right))
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.text() == other.text()
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text().hash(state)
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.text().cmp(other.text())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self.text())
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.text())
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        crate::logic::parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

/// Truth assignment over a fixed atom universe.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Valuation {
    assignment: BTreeMap<String, bool>,
}

impl Valuation {
    /// The `index`-th row of the truth table over `atoms`: bit `i` of `index`
    /// is the value of `atoms[i]`.
    pub fn from_row(atoms: &[String], index: usize) -> Self {
        let assignment = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), index >> i & 1 == 1))
            .collect();
        Valuation { assignment }
    }

    pub fn get(&self, atom: &str) -> bool {
        self.assignment.get(atom).copied().unwrap_or(false)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.assignment.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn renders_with_minimal_parentheses() {
        let f = Formula::implies(p(), Formula::implies(q(), r()));
        assert_eq!(f.text(), "p -> q -> r");
        let g = Formula::implies(Formula::implies(p(), q()), r());
        assert_eq!(g.text(), "(p -> q) -> r");
        let h = Formula::and(p(), Formula::and(q(), r()));
        assert_eq!(h.text(), "p & (q & r)");
        let i = Formula::and(Formula::and(p(), q()), r());
        assert_eq!(i.text(), "p & q & r");
        let j = Formula::not(Formula::or(p(), q()));
        assert_eq!(j.text(), "~(p | q)");
        assert_eq!(Formula::not(Formula::not(p())).text(), "~~p");
        let k = Formula::or(p(), Formula::and(q(), r()));
        assert_eq!(k.text(), "p | q & r");
    }

    #[test]
    fn equality_is_structural() {
        assert_eq!(Formula::and(p(), q()), Formula::and(p(), q()));
        assert_ne!(Formula::and(p(), q()), Formula::and(q(), p()));
        assert_ne!(Formula::not(Formula::not(p())), p());
    }

    #[test]
    fn eval_follows_truth_tables() {
        let atoms = vec!["p".to_owned(), "q".to_owned()];
        let imp = Formula::implies(p(), q());
        let rows: Vec<bool> = (0..4).map(|i| imp.eval(&Valuation::from_row(&atoms, i))).collect();
        // rows: p=0 q=0, p=1 q=0, p=0 q=1, p=1 q=1
        assert_eq!(rows, vec![true, false, true, true]);
    }
}
