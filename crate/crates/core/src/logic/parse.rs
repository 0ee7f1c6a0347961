//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! iff     := implies ( ("<->" | "↔") iff )?
//! implies := or ( ("->" | "→") implies )?
//! or      := and ( ("|" | "∨") and )*
//! and     := unary ( ("&" | "∧") unary )*
//! unary   := ("~" | "¬" | "!") unary | atom | "(" iff ")"
//! atom    := [a-zA-Z_][a-zA-Z0-9_]* | "true" | "⊤" | "false" | "⊥"
//! ```

use super::formula::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Top => "`true`".into(),
            Tok::Bottom => "`false`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' | '¬' | '!' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '→' => Tok::Implies,
            '↔' => Tok::Iff,
            '⊤' => Tok::Top,
            '⊥' => Tok::Bottom,
            '-' => {
                if text[at..].starts_with("->") {
                    chars.next();
                    Tok::Implies
                } else {
                    return Err(syntax(at, "`->`", "`-`"));
                }
            }
            '<' => {
                if text[at..].starts_with("<->") {
                    chars.next();
                    chars.next();
                    Tok::Iff
                } else {
                    return Err(syntax(at, "`<->`", "`<`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = at;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[at..end];
                out.push((
                    at,
                    match word {
                        "true" => Tok::Top,
                        "false" => Tok::Bottom,
                        _ => Tok::Ident(word.to_owned()),
                    },
                ));
                continue;
            }
            other => return Err(syntax(at, "a formula", &format!("`{other}`"))),
        };
        chars.next();
        out.push((at, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

fn syntax(offset: usize, expected: &str, found: &str) -> Error {
    Error::Syntax {
        offset,
        expected: expected.to_owned(),
        found: found.to_owned(),
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> Error {
        syntax(self.offset(), expected, &self.peek().describe())
    }

    fn iff(&mut self) -> Result<Formula> {
        let left = self.implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let right = self.iff()?;
            return Ok(Formula::iff(left, right));
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let right = self.implies()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            left = Formula::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::atom(name))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::bottom())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("an atom, constant, `~` or `(`")),
        }
    }
}

/// Parses a single formula.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let formula = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str) -> Formula {
        Formula::atom(name)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_formula("p1 & ~q").unwrap(),
            Formula::and(atom("p1"), Formula::not(atom("q")))
        );
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::implies(atom("p"), Formula::implies(atom("q"), atom("r")))
        );
        assert_eq!(
            parse_formula("p | q & r").unwrap(),
            Formula::or(atom("p"), Formula::and(atom("q"), atom("r")))
        );
    }

    #[test]
    fn unicode_and_ascii_agree() {
        let a = parse_formula("¬p ∧ q → r ↔ ⊥ ∨ ⊤").unwrap();
        let b = parse_formula("!p & q -> r <-> false | true").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.text(), "~p & q -> r <-> false | true");
    }

    #[test]
    fn left_associative_conjunction() {
        assert_eq!(
            parse_formula("a & b & c").unwrap(),
            Formula::and(Formula::and(atom("a"), atom("b")), atom("c"))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_formula("p & ").unwrap_err() {
            Error::Syntax { offset, .. } => assert_eq!(offset, 4),
            e => panic!("unexpected {e:?}"),
        }
        match parse_formula("(p | q").unwrap_err() {
            Error::Syntax { offset, expected, .. } => {
                assert_eq!(offset, 6);
                assert_eq!(expected, "`)`");
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse_formula("p q").unwrap_err().is_syntax());
        assert!(parse_formula("p - q").unwrap_err().is_syntax());
        assert!(parse_formula("").unwrap_err().is_syntax());
        assert!(parse_formula("p, q").unwrap_err().is_syntax());
        assert!(parse_formula("1p").unwrap_err().is_syntax());
    }
}
