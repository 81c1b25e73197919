//! First-order formulae in the language of groups and their brute-force
//! semantics over finite groups.

mod abelian;
mod parse;
mod prenex;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementSubset, FiniteGroup, GroupElement};
use crate::words::{advance, eval_compiled, Word};
use crate::Budget;

pub use abelian::{
    divisibility_form, multiples_lemma_check, non_commutator_check, torsion_form, MultiplesReport,
    NonCommutatorReport,
};
pub use parse::parse_formula;
pub use prenex::{classify, to_prenex, Classification, PrenexFormula};

/// Name of the free variable when a formula mentions none.
pub const DEFAULT_FREE: &str = "y";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Neq,
}

impl Relation {
    pub fn negate(self) -> Relation {
        match self {
            Relation::Eq => Relation::Neq,
            Relation::Neq => Relation::Eq,
        }
    }
}

/// `word = 1` or `word != 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub word: Word,
    pub relation: Relation,
}

impl Atom {
    /// Normalizes `lhs R rhs` to `lhs·rhs⁻¹ R 1`.
    pub fn new(lhs: &Word, relation: Relation, rhs: &Word) -> Atom {
        Atom { word: lhs.mul(&rhs.inverse()), relation }
    }

    pub fn negate(&self) -> Atom {
        Atom { word: self.word.clone(), relation: self.relation.negate() }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::Eq => write!(f, "{} = 1", self.word),
            Relation::Neq => write!(f, "{} != 1", self.word),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    Atom(Atom),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Quant(Quantifier, String, Box<Node>),
}

impl Node {
    pub fn not(self) -> Node {
        Node::Not(Box::new(self))
    }

    pub fn and(self, other: Node) -> Node {
        Node::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Node) -> Node {
        Node::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Node) -> Node {
        Node::Implies(Box::new(self), Box::new(other))
    }

    pub fn quant(q: Quantifier, var: impl Into<String>, body: Node) -> Node {
        Node::Quant(q, var.into(), Box::new(body))
    }

    /// Quantifies `vars` in order, outermost first.
    pub fn quant_all(q: Quantifier, vars: &[String], body: Node) -> Node {
        vars.iter().rev().fold(body, |acc, v| Node::quant(q, v.clone(), acc))
    }

    /// Maximal nesting of quantifiers.
    pub fn depth(&self) -> usize {
        match self {
            Node::Atom(_) => 0,
            Node::Not(a) => a.depth(),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => a.depth().max(b.depth()),
            Node::Quant(_, _, body) => 1 + body.depth(),
        }
    }

    /// Letters occurring in atoms outside the scope of a binder for them.
    pub fn unbound(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_unbound(&mut Vec::new(), &mut out);
        out
    }

    fn collect_unbound(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Node::Atom(a) => {
                out.extend(a.word.support().0.into_iter().filter(|l| !bound.contains(l)));
            }
            Node::Not(a) => a.collect_unbound(bound, out),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => {
                a.collect_unbound(bound, out);
                b.collect_unbound(bound, out);
            }
            Node::Quant(_, v, body) => {
                bound.push(v.clone());
                body.collect_unbound(bound, out);
                bound.pop();
            }
        }
    }

    /// Every identifier used, bound or not.
    pub(crate) fn names(&self, out: &mut BTreeSet<String>) {
        match self {
            Node::Atom(a) => out.extend(a.word.support().0),
            Node::Not(a) => a.names(out),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => {
                a.names(out);
                b.names(out);
            }
            Node::Quant(_, v, body) => {
                out.insert(v.clone());
                body.names(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Node::Quant(..) => 0,
            Node::Implies(..) => 1,
            Node::Or(..) => 2,
            Node::And(..) => 3,
            Node::Not(_) => 4,
            Node::Atom(_) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Node::Atom(a) => write!(f, "{a}"),
            Node::Not(a) => {
                write!(f, "!")?;
                a.write(f, 4)
            }
            Node::And(a, b) => {
                a.write(f, 3)?;
                write!(f, " & ")?;
                b.write(f, 4)
            }
            Node::Or(a, b) => {
                a.write(f, 2)?;
                write!(f, " | ")?;
                b.write(f, 3)
            }
            Node::Implies(a, b) => {
                a.write(f, 2)?;
                write!(f, " -> ")?;
                b.write(f, 1)
            }
            Node::Quant(q, v, body) => {
                write!(f, "{} {v}: ", q.keyword())?;
                body.write(f, 0)
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// A formula together with its ordered list of free variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub node: Node,
    pub free: Vec<String>,
}

impl Formula {
    /// Declares `free` explicitly; every unbound letter must be listed.
    pub fn new(node: Node, free: Vec<String>) -> Result<Formula> {
        if let Some(missing) = node.unbound().into_iter().find(|l| !free.contains(l)) {
            return Err(Error::UnassignedLetter(missing));
        }
        Ok(Formula { node, free })
    }

    /// Free variables are the sorted unbound letters, or `y` when there are none.
    pub fn with_inferred_free(node: Node) -> Formula {
        let mut free: Vec<String> = node.unbound().into_iter().collect();
        if free.is_empty() {
            free.push(DEFAULT_FREE.to_string());
        }
        Formula { node, free }
    }

    /// `∃ x̄: w(x̄) = y` with the letters of `w` quantified in sorted order and
    /// `y` a fresh variable.
    pub fn word_formula(w: &Word) -> Formula {
        Formula::word_formula_in(w, &fresh_variable(&[w]))
    }

    fn word_formula_in(w: &Word, free: &str) -> Formula {
        let vars: Vec<String> = w.support().0.into_iter().collect();
        let atom = Atom::new(w, Relation::Eq, &Word::letter(free));
        Formula { node: Node::quant_all(Quantifier::Exists, &vars, Node::Atom(atom)), free: vec![free.into()] }
    }

    /// Conjunction of the word formulae of `words`, sharing one fresh free variable.
    pub fn word_formula_conjunction(words: &[Word]) -> Formula {
        let refs: Vec<&Word> = words.iter().collect();
        let free = fresh_variable(&refs);
        let node = words
            .iter()
            .map(|w| Formula::word_formula_in(w, &free).node)
            .reduce(Node::and)
            .unwrap_or_else(|| Node::Atom(Atom::new(&Word::identity(), Relation::Eq, &Word::identity())));
        Formula { node, free: vec![free] }
    }

    /// `∃ x̄: w(x̄, y) != 1`, quantifying every letter of `w` except `y`.
    pub fn ena_formula(w: &Word, y: &str) -> Formula {
        let vars: Vec<String> = w.support().0.into_iter().filter(|l| l != y).collect();
        let atom = Atom { word: w.clone(), relation: Relation::Neq };
        Formula { node: Node::quant_all(Quantifier::Exists, &vars, Node::Atom(atom)), free: vec![y.into()] }
    }

    /// Splits an ena formula into its word, bound letters and free letter.
    pub fn as_ena(&self) -> Option<(&Word, Vec<&str>)> {
        if self.free.len() != 1 {
            return None;
        }
        let mut vars = Vec::new();
        let mut node = &self.node;
        while let Node::Quant(Quantifier::Exists, v, body) = node {
            vars.push(v.as_str());
            node = body;
        }
        match node {
            Node::Atom(Atom { word, relation: Relation::Neq }) => Some((word, vars)),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.node.depth()
    }

    pub fn single_free(&self) -> Result<&str> {
        match self.free.as_slice() {
            [y] => Ok(y),
            other => Err(Error::FreeVariables(other.to_vec())),
        }
    }

    pub fn negate(&self) -> Formula {
        Formula { node: self.node.clone().not(), free: self.free.clone() }
    }

    /// Combines two formulae with the union of their free variables.
    pub fn combine(&self, other: &Formula, op: fn(Node, Node) -> Node) -> Formula {
        let free: BTreeSet<String> = self.free.iter().chain(&other.free).cloned().collect();
        Formula { node: op(self.node.clone(), other.node.clone()), free: free.into_iter().collect() }
    }

    /// Truth of the formula at `g`; the formula must have one free variable.
    pub fn evaluate(&self, group: &FiniteGroup, g: &GroupElement, budget: Budget) -> Result<bool> {
        self.single_free()?;
        let x = group.check_element(g)?;
        let compiled = Compiled::new(self);
        budget.check(pow_u128(group.order(), compiled.depth))?;
        let mut values = vec![0; compiled.slots];
        values[0] = x;
        Ok(compiled.root.eval(group, &mut values))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.node)
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

/// `y`, or `y_1`, `y_2`, … avoiding every letter of `words`.
pub(crate) fn fresh_variable(words: &[&Word]) -> String {
    let taken: BTreeSet<String> = words.iter().flat_map(|w| w.support().0).collect();
    fresh_name(DEFAULT_FREE, &taken)
}

/// `base` if unused, else the first `base_k` not in `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}_{k}")).find(|n| !taken.contains(n)).expect("unbounded suffixes")
}

fn pow_u128(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

/// A formula with variables resolved to value slots; free variables occupy
/// the first slots in declaration order.
struct Compiled {
    root: CNode,
    slots: usize,
    depth: usize,
}

enum CNode {
    Atom(Vec<(usize, i64)>, Relation),
    Not(Box<CNode>),
    And(Box<CNode>, Box<CNode>),
    Or(Box<CNode>, Box<CNode>),
    Implies(Box<CNode>, Box<CNode>),
    Exists(usize, Box<CNode>),
    Forall(usize, Box<CNode>),
}

impl Compiled {
    fn new(formula: &Formula) -> Compiled {
        let mut scope: Vec<(String, usize)> =
            formula.free.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut slots = scope.len();
        let root = compile(&formula.node, &mut scope, &mut slots);
        Compiled { root, slots, depth: formula.node.depth() }
    }
}

fn compile(node: &Node, scope: &mut Vec<(String, usize)>, slots: &mut usize) -> CNode {
    match node {
        Node::Atom(a) => {
            let slot_of = |l: &str| {
                let found = scope.iter().rev().find(|(n, _)| n == l);
                found.expect("formula letters are bound or free").1
            };
            let compiled = a.word.syllables().iter().map(|(l, e)| (slot_of(l), *e)).collect();
            CNode::Atom(compiled, a.relation)
        }
        Node::Not(a) => CNode::Not(Box::new(compile(a, scope, slots))),
        Node::And(a, b) => CNode::And(Box::new(compile(a, scope, slots)), Box::new(compile(b, scope, slots))),
        Node::Or(a, b) => CNode::Or(Box::new(compile(a, scope, slots)), Box::new(compile(b, scope, slots))),
        Node::Implies(a, b) => {
            CNode::Implies(Box::new(compile(a, scope, slots)), Box::new(compile(b, scope, slots)))
        }
        Node::Quant(q, v, body) => {
            let slot = *slots;
            *slots += 1;
            scope.push((v.clone(), slot));
            let body = Box::new(compile(body, scope, slots));
            scope.pop();
            match q {
                Quantifier::Exists => CNode::Exists(slot, body),
                Quantifier::Forall => CNode::Forall(slot, body),
            }
        }
    }
}

impl CNode {
    fn eval(&self, g: &FiniteGroup, values: &mut [usize]) -> bool {
        match self {
            CNode::Atom(syllables, rel) => {
                let trivial = eval_compiled(g, syllables, values) == g.identity();
                trivial == (*rel == Relation::Eq)
            }
            CNode::Not(a) => !a.eval(g, values),
            CNode::And(a, b) => a.eval(g, values) && b.eval(g, values),
            CNode::Or(a, b) => a.eval(g, values) || b.eval(g, values),
            CNode::Implies(a, b) => !a.eval(g, values) || b.eval(g, values),
            CNode::Exists(slot, body) => (0..g.order()).any(|x| {
                values[*slot] = x;
                body.eval(g, values)
            }),
            CNode::Forall(slot, body) => (0..g.order()).all(|x| {
                values[*slot] = x;
                body.eval(g, values)
            }),
        }
    }
}

/// `G_φ` for a formula with one free variable.
pub fn definable_set(group: &FiniteGroup, phi: &Formula, budget: Budget) -> Result<ElementSubset> {
    phi.single_free()?;
    let compiled = Compiled::new(phi);
    budget.check(pow_u128(group.order(), 1 + compiled.depth))?;
    let mut values = vec![0; compiled.slots];
    let members = (0..group.order())
        .filter(|&x| {
            values[0] = x;
            compiled.root.eval(group, &mut values)
        })
        .collect();
    Ok(group.subset_unchecked(members))
}

/// All tuples of element indices, ordered as `phi.free`, satisfying `phi`;
/// returned in lexicographic order.
pub fn definable_set_multi(group: &FiniteGroup, phi: &Formula, budget: Budget) -> Result<Vec<Vec<usize>>> {
    let k = phi.free.len();
    let compiled = Compiled::new(phi);
    budget.check(pow_u128(group.order(), k + compiled.depth))?;
    let mut values = vec![0; compiled.slots];
    let mut tuple = vec![0usize; k];
    let mut out = Vec::new();
    loop {
        values[..k].copy_from_slice(&tuple);
        if compiled.root.eval(group, &mut values) {
            out.push(tuple.clone());
        }
        if !advance(&mut tuple, group.order()) {
            break;
        }
    }
    Ok(out)
}

/// `φ_i(y_i) = ∃ (other free variables): φ`.
pub fn projection_formula(phi: &Formula, i: usize) -> Result<Formula> {
    let keep = phi
        .free
        .get(i)
        .ok_or_else(|| Error::OutOfRange(format!("component {i} of {} free variables", phi.free.len())))?;
    let others: Vec<String> = phi.free.iter().filter(|v| *v != keep).cloned().collect();
    Ok(Formula { node: Node::quant_all(Quantifier::Exists, &others, phi.node.clone()), free: vec![keep.clone()] })
}

/// Checks that projecting the tuple set on component `i` gives `G_{φ_i}`.
pub fn check_projection(group: &FiniteGroup, phi: &Formula, i: usize, budget: Budget) -> Result<bool> {
    let projected = projection_formula(phi, i)?;
    let via_formula = definable_set(group, &projected, budget)?;
    let tuples = definable_set_multi(group, phi, budget)?;
    let via_tuples = group.subset_unchecked(tuples.iter().map(|t| t[i]).collect());
    Ok(via_formula == via_tuples)
}
