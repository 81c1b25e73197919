//! Elements of the free boolean algebra over a set of generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{Cursor, Tok};

/// Supports at or below this size are checked over all assignments.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolComb<G> {
    Gen(G),
    Not(Box<BoolComb<G>>),
    And(Box<BoolComb<G>>, Box<BoolComb<G>>),
    Or(Box<BoolComb<G>>, Box<BoolComb<G>>),
}

impl<G> BoolComb<G> {
    pub fn gen(g: G) -> Self {
        BoolComb::Gen(g)
    }

    pub fn not(self) -> Self {
        BoolComb::Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        BoolComb::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        BoolComb::Or(Box::new(self), Box::new(other))
    }

    /// Syntactic positivity: no negation anywhere.
    pub fn is_positive(&self) -> bool {
        match self {
            BoolComb::Gen(_) => true,
            BoolComb::Not(_) => false,
            BoolComb::And(a, b) | BoolComb::Or(a, b) => a.is_positive() && b.is_positive(),
        }
    }

    /// Generators in left-to-right order, with repetitions.
    pub fn generators(&self) -> Vec<&G> {
        let mut out = Vec::new();
        self.visit(&mut |g| out.push(g));
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a G)) {
        match self {
            BoolComb::Gen(g) => f(g),
            BoolComb::Not(a) => a.visit(f),
            BoolComb::And(a, b) | BoolComb::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn map<H>(&self, f: &mut impl FnMut(&G) -> H) -> BoolComb<H> {
        match self {
            BoolComb::Gen(g) => BoolComb::Gen(f(g)),
            BoolComb::Not(a) => a.map(f).not(),
            BoolComb::And(a, b) => {
                let a = a.map(f);
                a.and(b.map(f))
            }
            BoolComb::Or(a, b) => {
                let a = a.map(f);
                a.or(b.map(f))
            }
        }
    }

    /// Evaluates with a caller-supplied truth function for generators.
    pub fn eval_with(&self, f: &mut impl FnMut(&G) -> bool) -> bool {
        match self {
            BoolComb::Gen(g) => f(g),
            BoolComb::Not(a) => !a.eval_with(f),
            BoolComb::And(a, b) => a.eval_with(f) && b.eval_with(f),
            BoolComb::Or(a, b) => a.eval_with(f) || b.eval_with(f),
        }
    }
}

impl<G: Ord + Clone> BoolComb<G> {
    pub fn support(&self) -> BTreeSet<G> {
        self.generators().into_iter().cloned().collect()
    }
}

impl<G: Ord + Clone + fmt::Display> BoolComb<G> {
    /// Truth-value evaluation in the two-element algebra.
    pub fn evaluate_truth(&self, assignment: &BTreeMap<G, bool>) -> Result<bool> {
        self.check_covered(|g| assignment.contains_key(g))?;
        Ok(self.eval_with(&mut |g| assignment[g]))
    }

    /// Evaluation in the power set of `universe`; negation is complement in `universe`.
    pub fn evaluate_sets<T: Ord + Clone>(
        &self,
        universe: &BTreeSet<T>,
        assignment: &BTreeMap<G, BTreeSet<T>>,
    ) -> Result<BTreeSet<T>> {
        self.check_covered(|g| assignment.contains_key(g))?;
        Ok(self.sets(universe, assignment))
    }

    fn sets<T: Ord + Clone>(
        &self,
        universe: &BTreeSet<T>,
        assignment: &BTreeMap<G, BTreeSet<T>>,
    ) -> BTreeSet<T> {
        match self {
            BoolComb::Gen(g) => assignment[g].clone(),
            BoolComb::Not(a) => universe.difference(&a.sets(universe, assignment)).cloned().collect(),
            BoolComb::And(a, b) => {
                a.sets(universe, assignment).intersection(&b.sets(universe, assignment)).cloned().collect()
            }
            BoolComb::Or(a, b) => {
                a.sets(universe, assignment).union(&b.sets(universe, assignment)).cloned().collect()
            }
        }
    }

    fn check_covered(&self, covered: impl Fn(&G) -> bool) -> Result<()> {
        match self.generators().into_iter().find(|g| !covered(g)) {
            Some(g) => Err(Error::UnassignedGenerator(g.to_string())),
            None => Ok(()),
        }
    }

    /// Searches for an assignment where `p` holds, some generator is false,
    /// and switching it to true makes `p` fail. Exhaustive when the support
    /// has at most [`EXHAUSTIVE_LIMIT`] generators, otherwise `trials`
    /// random assignments. Returns `true` when no such flip exists.
    pub fn check_monotonicity(&self, trials: usize, seed: u64) -> Result<bool> {
        if !self.is_positive() {
            return Err(Error::NotPositive);
        }
        let support: Vec<G> = self.support().into_iter().collect();
        let index: BTreeMap<&G, usize> = support.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let k = support.len();
        let holds = |bits: u64| self.eval_with(&mut |g| bits >> index[g] & 1 == 1);
        let monotone_at = |bits: u64| {
            !holds(bits) || (0..k).all(|i| bits >> i & 1 == 1 || holds(bits | 1 << i))
        };
        if k <= EXHAUSTIVE_LIMIT {
            Ok((0..1u64 << k).all(monotone_at))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mask = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
            Ok((0..trials).all(|_| monotone_at(rng.gen::<u64>() & mask)))
        }
    }
}

impl<G: fmt::Display> fmt::Display for BoolComb<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Fully parenthesized below the top level; reparses unambiguously.
        match self {
            BoolComb::Gen(g) => write!(f, "{g}"),
            BoolComb::Not(a) => match **a {
                BoolComb::Gen(_) | BoolComb::Not(_) => write!(f, "!{a}"),
                _ => write!(f, "!({a})"),
            },
            BoolComb::And(a, b) => write!(f, "{} & {}", Paren(a), Paren(b)),
            BoolComb::Or(a, b) => write!(f, "{} | {}", Paren(a), Paren(b)),
        }
    }
}

struct Paren<'a, G>(&'a BoolComb<G>);

impl<G: fmt::Display> fmt::Display for Paren<'_, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            BoolComb::And(..) | BoolComb::Or(..) => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}

/// Parses `&`, `|`, `!` and parentheses over identifier generators; `|` binds loosest.
pub fn parse_boolcomb(text: &str) -> Result<BoolComb<String>> {
    let mut c = Cursor::new(text)?;
    let b = parse_or(&mut c)?;
    c.finish()?;
    Ok(b)
}

fn parse_or(c: &mut Cursor) -> Result<BoolComb<String>> {
    let mut acc = parse_and(c)?;
    while c.eat(&Tok::Pipe) {
        acc = acc.or(parse_and(c)?);
    }
    Ok(acc)
}

fn parse_and(c: &mut Cursor) -> Result<BoolComb<String>> {
    let mut acc = parse_not(c)?;
    while c.eat(&Tok::Amp) {
        acc = acc.and(parse_not(c)?);
    }
    Ok(acc)
}

fn parse_not(c: &mut Cursor) -> Result<BoolComb<String>> {
    if c.eat(&Tok::Bang) {
        return Ok(parse_not(c)?.not());
    }
    match c.bump() {
        Tok::Ident(name) => Ok(BoolComb::Gen(name)),
        Tok::LParen => {
            let b = parse_or(c)?;
            c.expect(&Tok::RParen)?;
            Ok(b)
        }
        other => Err(Error::Syntax {
            pos: c.offset(),
            message: format!("expected generator, found {}", other.describe()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BoolComb<String> {
        parse_boolcomb(s).unwrap()
    }

    fn truth(pairs: &[(&str, bool)]) -> BTreeMap<String, bool> {
        pairs.iter().map(|(g, v)| (g.to_string(), *v)).collect()
    }

    #[test]
    fn truth_examples() {
        assert!(!b("g1 & g2").evaluate_truth(&truth(&[("g1", true), ("g2", false)])).unwrap());
        assert!(b("!g1").evaluate_truth(&truth(&[("g1", false)])).unwrap());
        let t = truth(&[("g1", false), ("g2", true), ("g3", false)]);
        assert!(b("g1 | (g2 & !g3)").evaluate_truth(&t).unwrap());
        assert_eq!(
            b("g1 & g2").evaluate_truth(&truth(&[("g1", true)])).unwrap_err(),
            Error::UnassignedGenerator("g2".into())
        );
    }

    #[test]
    fn set_examples() {
        let universe: BTreeSet<u32> = (1..=4).collect();
        let sets = |pairs: &[(&str, &[u32])]| -> BTreeMap<String, BTreeSet<u32>> {
            pairs.iter().map(|(g, s)| (g.to_string(), s.iter().copied().collect())).collect()
        };
        let a = sets(&[("g1", &[1]), ("g2", &[2])]);
        assert!(b("g1 & g2").evaluate_sets(&universe, &a).unwrap().is_empty());
        assert_eq!(b("g1 | g2").evaluate_sets(&universe, &a).unwrap(), [1, 2].into());
        assert_eq!(b("!g1").evaluate_sets(&universe, &sets(&[("g1", &[])])).unwrap(), universe);
    }

    #[test]
    fn positivity() {
        assert!(b("g1 & (g2 | g3)").is_positive());
        assert!(!b("!g1").is_positive());
        assert!(b("g1").is_positive());
    }

    #[test]
    fn monotonicity() {
        assert!(b("g1 | g2").check_monotonicity(0, 0).unwrap());
        assert!(b("g1 & g2").check_monotonicity(0, 0).unwrap());
        assert_eq!(b("!g1").check_monotonicity(0, 0).unwrap_err(), Error::NotPositive);
        let wide = (0..20).map(|i| format!("g{i}")).collect::<Vec<_>>().join(" & ");
        assert!(b(&format!("({wide}) | h")).check_monotonicity(500, 1).unwrap());
    }

    #[test]
    fn display_round_trip() {
        for text in ["a", "!a", "a & b | c", "a & (b | c)", "!(a | b) & !!c", "a | b | c"] {
            let parsed = b(text);
            assert_eq!(b(&parsed.to_string()), parsed, "{text}");
        }
        assert_eq!(b("a & b | c"), b("(a & b) | c"));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_boolcomb("a &"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_boolcomb("(a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_boolcomb("a b"), Err(Error::Syntax { .. })));
    }
}
