//! Elementary formulae of abelian groups and the power-set arguments built on them.

use num_integer::Integer;
use serde::Serialize;

use super::{definable_set, Atom, Formula, Node, Quantifier, Relation};
use crate::error::{Error, Result};
use crate::groups::{ElementSubset, FiniteGroup};
use crate::words::Word;
use crate::Budget;

/// `y^m = 1`, written additively `m·y = 0`.
pub fn torsion_form(m: u32) -> Formula {
    let word = Word::from_syllables([("y", m as i64)]);
    Formula { node: Node::Atom(Atom { word, relation: Relation::Eq }), free: vec!["y".into()] }
}

/// `∃x: x^n = y`, written additively `∃x: y = n·x`.
pub fn divisibility_form(n: u32) -> Formula {
    let lhs = Word::from_syllables([("x", n as i64)]);
    let atom = Atom::new(&lhs, Relation::Eq, &Word::letter("y"));
    Formula { node: Node::quant(Quantifier::Exists, "x", Node::Atom(atom)), free: vec!["y".into()] }
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplesReport {
    pub n: u32,
    /// The `n`-divisible elements.
    pub divisible: Vec<usize>,
    /// Members `g` of the divisible set whose cyclic subgroup leaves it.
    pub closure_failures: Vec<usize>,
    /// For each element outside, the least `k > 1` with every non-multiple
    /// of `k` keeping the power outside, or `None` if none exists.
    pub outside: Vec<(usize, Option<usize>)>,
}

impl MultiplesReport {
    pub fn passed(&self) -> bool {
        self.closure_failures.is_empty() && self.outside.iter().all(|(_, k)| k.is_some())
    }
}

/// Checks both halves of the multiples lemma for the divisibility formula on
/// an abelian group.
pub fn multiples_lemma_check(g: &FiniteGroup, n: u32, budget: Budget) -> Result<MultiplesReport> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let set = definable_set(g, &divisibility_form(n), budget)?;
    let closure_failures =
        set.iter().filter(|&x| !cyclic_subgroup(g, x).iter().all(|&p| set.contains(p))).collect();
    let outside = (0..g.order())
        .filter(|&x| !set.contains(x))
        .map(|x| (x, least_avoiding_modulus(g, &set, x)))
        .collect();
    Ok(MultiplesReport { n, divisible: set.members().to_vec(), closure_failures, outside })
}

fn cyclic_subgroup(g: &FiniteGroup, x: usize) -> Vec<usize> {
    (0..g.order_of(x) as i64).map(|m| g.pow(x, m)).collect()
}

fn least_avoiding_modulus(g: &FiniteGroup, set: &ElementSubset, x: usize) -> Option<usize> {
    let ord = g.order_of(x);
    (2..=ord.max(2)).find(|&k| (1..=k * ord).filter(|m| m % k != 0).all(|m| !set.contains(g.pow(x, m as i64))))
}

#[derive(Clone, Debug, Serialize)]
pub struct NonCommutatorReport {
    /// Per word, the chosen letter and its exponent sum.
    pub chosen: Vec<(String, i64)>,
    pub a: u64,
    pub powers: Vec<usize>,
    pub definable: Vec<usize>,
    pub contained: bool,
}

/// For non-commutator words, checks that the `a`-th powers lie in the set
/// defined by the conjunction of the word formulae, where `a` is the lcm of
/// one nonzero exponent sum per word (the first letter in sorted order).
pub fn non_commutator_check(g: &FiniteGroup, words: &[Word], budget: Budget) -> Result<NonCommutatorReport> {
    let mut chosen = Vec::new();
    for w in words {
        let pick = w
            .support()
            .iter()
            .map(|l| (l.clone(), w.exponent_sum(l)))
            .find(|(_, s)| *s != 0)
            .ok_or_else(|| Error::InvalidSpec(format!("{w} is a commutator word")))?;
        chosen.push(pick);
    }
    let a = chosen.iter().fold(1u64, |acc, (_, s)| acc.lcm(&s.unsigned_abs()));
    let mut powers: Vec<usize> = (0..g.order()).map(|x| g.pow(x, a as i64)).collect();
    powers.sort_unstable();
    powers.dedup();
    let definable = definable_set(g, &Formula::word_formula_conjunction(words), budget)?;
    let contained = powers.iter().all(|&p| definable.contains(p));
    Ok(NonCommutatorReport { chosen, a, powers, definable: definable.members().to_vec(), contained })
}
