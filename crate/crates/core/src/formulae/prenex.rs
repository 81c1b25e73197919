//! Prenex normal form and syntactic classification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{fresh_name, Atom, Formula, Node, Quantifier, Relation};
use crate::boolcomb::BoolComb;

/// Quantifier prefix over a quantifier-free matrix with negations pushed
/// into the atoms, so the matrix never contains `Not`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrenexFormula {
    pub prefix: Vec<(Quantifier, String)>,
    pub matrix: BoolComb<Atom>,
    pub free: Vec<String>,
}

impl PrenexFormula {
    pub fn to_formula(&self) -> Formula {
        let mut node = matrix_node(&self.matrix);
        for (q, v) in self.prefix.iter().rev() {
            node = Node::quant(*q, v.clone(), node);
        }
        Formula { node, free: self.free.clone() }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        self.matrix.generators()
    }
}

impl fmt::Display for PrenexFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

fn matrix_node(b: &BoolComb<Atom>) -> Node {
    match b {
        BoolComb::Gen(a) => Node::Atom(a.clone()),
        BoolComb::Not(a) => matrix_node(a).not(),
        BoolComb::And(a, c) => matrix_node(a).and(matrix_node(c)),
        BoolComb::Or(a, c) => matrix_node(a).or(matrix_node(c)),
    }
}

/// Renames bound variables apart, removes implications, pushes negations to
/// the atoms and pulls quantifiers to the front in pre-order.
///
/// A bound variable keeps its name unless that name is free or already
/// bound elsewhere, in which case the first unused `name_k` is taken.
pub fn to_prenex(phi: &Formula) -> PrenexFormula {
    let mut taken = BTreeSet::new();
    phi.node.names(&mut taken);
    taken.extend(phi.free.iter().cloned());
    let mut used: BTreeSet<String> = phi.free.iter().cloned().collect();
    let renamed = rename_apart(&phi.node, &BTreeMap::new(), &mut used, &mut taken);
    let nnf = push_negations(&renamed, false);
    let mut prefix = Vec::new();
    let matrix = pull(&nnf, &mut prefix);
    PrenexFormula { prefix, matrix, free: phi.free.clone() }
}

fn rename_apart(
    node: &Node,
    scope: &BTreeMap<String, String>,
    used: &mut BTreeSet<String>,
    taken: &mut BTreeSet<String>,
) -> Node {
    match node {
        Node::Atom(a) => Node::Atom(Atom { word: a.word.rename(scope), relation: a.relation }),
        Node::Not(a) => rename_apart(a, scope, used, taken).not(),
        Node::And(a, b) => {
            let a = rename_apart(a, scope, used, taken);
            a.and(rename_apart(b, scope, used, taken))
        }
        Node::Or(a, b) => {
            let a = rename_apart(a, scope, used, taken);
            a.or(rename_apart(b, scope, used, taken))
        }
        Node::Implies(a, b) => {
            let a = rename_apart(a, scope, used, taken);
            a.implies(rename_apart(b, scope, used, taken))
        }
        Node::Quant(q, v, body) => {
            let name = if used.contains(v) {
                let fresh = fresh_name(v, taken);
                taken.insert(fresh.clone());
                fresh
            } else {
                v.clone()
            };
            used.insert(name.clone());
            let mut inner = scope.clone();
            inner.insert(v.clone(), name.clone());
            Node::quant(*q, name, rename_apart(body, &inner, used, taken))
        }
    }
}

/// Negation normal form without implications; `negated` tracks parity.
fn push_negations(node: &Node, negated: bool) -> Node {
    match node {
        Node::Atom(a) => Node::Atom(if negated { a.negate() } else { a.clone() }),
        Node::Not(a) => push_negations(a, !negated),
        Node::And(a, b) if negated => push_negations(a, true).or(push_negations(b, true)),
        Node::And(a, b) => push_negations(a, false).and(push_negations(b, false)),
        Node::Or(a, b) if negated => push_negations(a, true).and(push_negations(b, true)),
        Node::Or(a, b) => push_negations(a, false).or(push_negations(b, false)),
        Node::Implies(a, b) if negated => push_negations(a, false).and(push_negations(b, true)),
        Node::Implies(a, b) => push_negations(a, true).or(push_negations(b, false)),
        Node::Quant(q, v, body) => {
            let q = if negated { q.dual() } else { *q };
            Node::quant(q, v.clone(), push_negations(body, negated))
        }
    }
}

fn pull(node: &Node, prefix: &mut Vec<(Quantifier, String)>) -> BoolComb<Atom> {
    match node {
        Node::Atom(a) => BoolComb::Gen(a.clone()),
        Node::And(a, b) => {
            let a = pull(a, prefix);
            a.and(pull(b, prefix))
        }
        Node::Or(a, b) => {
            let a = pull(a, prefix);
            a.or(pull(b, prefix))
        }
        Node::Quant(q, v, body) => {
            prefix.push((*q, v.clone()));
            pull(body, prefix)
        }
        Node::Not(_) | Node::Implies(..) => unreachable!("input is in negation normal form"),
    }
}

/// Syntactic classification of the prenex form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Only existential quantifiers (vacuously true without quantifiers).
    pub existential: bool,
    /// Only universal quantifiers.
    pub universal: bool,
    /// Every atom is an equation.
    pub positive: bool,
    /// Every atom is an inequation.
    pub negative: bool,
    /// Number of maximal blocks of equal quantifiers in the prefix.
    pub q_length: usize,
}

pub fn classify(phi: &Formula) -> Classification {
    let p = to_prenex(phi);
    let kinds: Vec<Quantifier> = p.prefix.iter().map(|(q, _)| *q).collect();
    let atoms = p.atoms();
    Classification {
        existential: kinds.iter().all(|q| *q == Quantifier::Exists),
        universal: kinds.iter().all(|q| *q == Quantifier::Forall),
        positive: atoms.iter().all(|a| a.relation == Relation::Eq),
        negative: atoms.iter().all(|a| a.relation == Relation::Neq),
        q_length: kinds.iter().enumerate().filter(|(i, q)| *i == 0 || kinds[i - 1] != **q).count(),
    }
}
