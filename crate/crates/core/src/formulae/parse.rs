//! Formula grammar, loosest binding first:
//!
//! ```text
//! formula := or ('->' formula)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | quant | primary
//! quant   := ('exists' | 'forall') ident (',' ident)* (':' formula | quant)
//! primary := word ('=' | '!=') word | '(' formula ')'
//! ```
//!
//! A quantifier body extends as far right as possible. A variable bound again
//! inside the scope of the same name is renamed to `name_1`, `name_2`, …,
//! choosing the first suffix not used anywhere in the input.

use std::collections::BTreeSet;

use super::{fresh_name, Atom, Formula, Node, Quantifier, Relation};
use crate::error::Result;
use crate::syntax::{Cursor, Tok};
use crate::words::{parse_product, Word};

struct Parser {
    cursor: Cursor,
    /// Original name and the name it is bound as, innermost last.
    scope: Vec<(String, String)>,
    taken: BTreeSet<String>,
    free: BTreeSet<String>,
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let cursor = Cursor::new(text)?;
    let taken = crate::syntax::tokenize(text)?
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(name) => Some(name),
            _ => None,
        })
        .collect();
    let mut p = Parser { cursor, scope: Vec::new(), taken, free: BTreeSet::new() };
    let node = p.formula()?;
    p.cursor.finish()?;
    let mut free: Vec<String> = p.free.into_iter().collect();
    if free.is_empty() {
        free.push(super::DEFAULT_FREE.to_string());
    }
    Ok(Formula { node, free })
}

fn quantifier(tok: &Tok) -> Option<Quantifier> {
    match tok {
        Tok::Ident(k) if k == "exists" => Some(Quantifier::Exists),
        Tok::Ident(k) if k == "forall" => Some(Quantifier::Forall),
        _ => None,
    }
}

impl Parser {
    fn formula(&mut self) -> Result<Node> {
        let lhs = self.or()?;
        if self.cursor.eat(&Tok::Arrow) {
            Ok(lhs.implies(self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Node> {
        let mut acc = self.and()?;
        while self.cursor.eat(&Tok::Pipe) {
            acc = acc.or(self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Node> {
        let mut acc = self.unary()?;
        while self.cursor.eat(&Tok::Amp) {
            acc = acc.and(self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.cursor.eat(&Tok::Bang) {
            return Ok(self.unary()?.not());
        }
        if let Some(q) = quantifier(self.cursor.peek()) {
            return self.quant(q);
        }
        self.primary()
    }

    fn quant(&mut self, q: Quantifier) -> Result<Node> {
        self.cursor.bump();
        let mut vars = Vec::new();
        loop {
            match self.cursor.peek().clone() {
                Tok::Ident(name) if quantifier(&Tok::Ident(name.clone())).is_none() => {
                    self.cursor.bump();
                    vars.push(self.bind(name));
                }
                other => {
                    return Err(self.cursor.error(format!("expected variable, found {}", other.describe())))
                }
            }
            if !self.cursor.eat(&Tok::Comma) {
                break;
            }
        }
        let body = if let Some(inner) = quantifier(self.cursor.peek()) {
            self.quant(inner)?
        } else {
            self.cursor.expect(&Tok::Colon)?;
            self.formula()?
        };
        for _ in &vars {
            self.scope.pop();
        }
        Ok(Node::quant_all(q, &vars, body))
    }

    fn bind(&mut self, name: String) -> String {
        let bound_as = if self.scope.iter().any(|(orig, _)| *orig == name) {
            let fresh = fresh_name(&name, &self.taken);
            self.taken.insert(fresh.clone());
            fresh
        } else {
            name.clone()
        };
        self.scope.push((name, bound_as.clone()));
        bound_as
    }

    fn primary(&mut self) -> Result<Node> {
        let mark = self.cursor.mark();
        let free = self.free.clone();
        let atom_error = match self.atom() {
            Ok(atom) => return Ok(atom),
            Err(e) => e,
        };
        self.cursor.reset(mark);
        self.free = free;
        if self.cursor.eat(&Tok::LParen) {
            let inner = self.formula()?;
            self.cursor.expect(&Tok::RParen)?;
            Ok(inner)
        } else {
            Err(atom_error)
        }
    }

    fn atom(&mut self) -> Result<Node> {
        let lhs = self.word()?;
        let relation = match self.cursor.peek() {
            Tok::Eq => Relation::Eq,
            Tok::Neq => Relation::Neq,
            other => {
                let message = format!("expected '=' or '!=', found {}", other.describe());
                return Err(self.cursor.error(message));
            }
        };
        self.cursor.bump();
        let rhs = self.word()?;
        Ok(Node::Atom(Atom::new(&lhs, relation, &rhs)))
    }

    /// Reads a word and resolves its letters through the current scope.
    fn word(&mut self) -> Result<Word> {
        let raw = parse_product(&mut self.cursor)?;
        let mut renames = std::collections::BTreeMap::new();
        for letter in raw.support().iter() {
            match self.scope.iter().rev().find(|(orig, _)| orig == letter) {
                Some((_, bound_as)) => {
                    renames.insert(letter.clone(), bound_as.clone());
                }
                None => {
                    self.free.insert(letter.clone());
                }
            }
        }
        Ok(raw.rename(&renames))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let centre = parse_formula("forall x: x*y = y*x").unwrap();
        assert_eq!(centre.free, vec!["y"]);
        let expected = Node::quant(
            Quantifier::Forall,
            "x",
            Node::Atom(Atom::new(&w("x y"), Relation::Eq, &w("y x"))),
        );
        assert_eq!(centre.node, expected);

        let torsion = parse_formula("y^2 = 1").unwrap();
        assert_eq!(torsion.node, Node::Atom(Atom { word: w("y^2"), relation: Relation::Eq }));

        let ena = parse_formula("exists x1: [x1,y] != 1").unwrap();
        assert_eq!(ena.as_ena().unwrap(), (&w("[x1,y]"), vec!["x1"]));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = |s: &str| parse_formula(s).unwrap().node;
        assert_eq!(p("a = 1 | b = 1 & c = 1"), p("a = 1 | (b = 1 & c = 1)"));
        assert_eq!(p("a = 1 -> b = 1 -> c = 1"), p("a = 1 -> (b = 1 -> c = 1)"));
        assert_eq!(p("!a = 1 & b = 1"), p("(!a = 1) & b = 1"));
        assert_eq!(p("exists x: x = y & y = 1"), p("exists x: (x = y & y = 1)"));
        assert_eq!(p("forall x exists z: [x,z,y] != 1"), p("forall x: exists z: [x,z,y] != 1"));
        assert_eq!(p("exists a, b: [a,b] = y"), p("exists a: exists b: [a,b] = y"));
        assert_eq!(p("(x y)^2 = 1"), p("x y x y = 1"));
    }

    #[test]
    fn free_variables() {
        assert_eq!(parse_formula("y1*y2 = 1").unwrap().free, vec!["y1", "y2"]);
        assert_eq!(parse_formula("exists x: x = 1").unwrap().free, vec!["y"]);
        assert_eq!(parse_formula("x = x").unwrap().free, vec!["x"]);
        assert_eq!(parse_formula("(x = 1) & exists x: x = y").unwrap().free, vec!["x", "y"]);
    }

    #[test]
    fn nested_rebinding_is_renamed() {
        let phi = parse_formula("exists x: (x = y & forall x: [x,y] = 1)").unwrap();
        let expected = Node::quant(
            Quantifier::Exists,
            "x",
            Node::Atom(Atom::new(&w("x"), Relation::Eq, &w("y"))).and(Node::quant(
                Quantifier::Forall,
                "x_1",
                Node::Atom(Atom::new(&w("[x_1,y]"), Relation::Eq, &Word::identity())),
            )),
        );
        assert_eq!(phi.node, expected);
        // a suffix already present in the text is skipped
        let phi = parse_formula("exists x: forall x: x = x_1").unwrap();
        assert_eq!(phi.free, vec!["x_1"]);
        assert_eq!(phi.node.to_string(), "exists x: forall x_2: x_2*x_1^-1 = 1");
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "forall x: x*y = y*x",
            "!(exists x: [x,y] = 1)",
            "(exists x: x = y) & (forall z: z*y = y*z)",
            "a = 1 -> b = 1 -> c = 1",
            "(a = 1 -> b = 1) -> c = 1",
            "!!(y = 1) | y^2 != 1 & y^3 = 1",
            "forall x exists z: [x,z,y] != 1",
            "y = y",
            "exists x: (x = y & forall x: [x,y] = 1)",
            "(a = 1 | b = 1) | c = 1",
            "a = 1 | (b = 1 | c = 1)",
        ] {
            let phi = parse_formula(text).unwrap();
            let again = parse_formula(&phi.to_string()).unwrap();
            assert_eq!(again, phi, "{text} printed as {phi}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_formula("x = "), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_formula("exists : x = 1"), Err(Error::Syntax { pos: 7, .. })));
        assert!(matches!(parse_formula("x & y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("(x = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("x^0 = 1"), Err(Error::ZeroExponent { pos: 2 })));
    }
}
