//! Free-group words, word maps on finite groups and the outer commutator ideal.

mod ideal;
mod parse;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElementSubset, FiniteGroup, GroupElement};
use crate::Budget;

pub use ideal::{ideal_membership, is_outer_commutator, IdealMembership};
pub(crate) use parse::parse_product;

/// A sorted set of letter names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LetterSet(pub BTreeSet<String>);

impl LetterSet {
    pub fn new() -> Self {
        LetterSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, letter: &str) -> bool {
        self.0.contains(letter)
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }

    pub fn is_disjoint(&self, other: &LetterSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &LetterSet) -> LetterSet {
        LetterSet(self.0.union(&other.0).cloned().collect())
    }
}

impl<S: Into<String>> FromIterator<S> for LetterSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        LetterSet(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<&str> = self.0.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// A freely reduced word: syllables `(letter, exponent)` with nonzero
/// exponents and no two adjacent syllables on the same letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "Vec<(String, i64)>")]
pub struct Word {
    syllables: Vec<(String, i64)>,
}

/// Accepted JSON forms: syllable pairs or word syntax text.
#[derive(Deserialize)]
#[serde(untagged)]
enum WordRepr {
    Pairs(Vec<(String, i64)>),
    Text(String),
}

impl TryFrom<WordRepr> for Word {
    type Error = Error;

    fn try_from(repr: WordRepr) -> Result<Self> {
        match repr {
            WordRepr::Pairs(p) => Word::try_from(p),
            WordRepr::Text(t) => parse_word(&t),
        }
    }
}

impl TryFrom<Vec<(String, i64)>> for Word {
    type Error = Error;

    fn try_from(syllables: Vec<(String, i64)>) -> Result<Self> {
        if let Some(pos) = syllables.iter().position(|(_, e)| *e == 0) {
            return Err(Error::ZeroExponent { pos });
        }
        Ok(Word::from_syllables(syllables))
    }
}

impl From<Word> for Vec<(String, i64)> {
    fn from(w: Word) -> Self {
        w.syllables
    }
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(name: impl Into<String>) -> Word {
        Word { syllables: vec![(name.into(), 1)] }
    }

    /// Freely reduces an arbitrary syllable list.
    pub fn from_syllables<S: Into<String>>(syllables: impl IntoIterator<Item = (S, i64)>) -> Word {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (letter, e) in syllables {
            let letter = letter.into();
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, exp)) if *last == letter => {
                    *exp += e;
                    if *exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push((letter, e)),
            }
        }
        Word { syllables: out }
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a reduced word in the letters and their inverses.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn support(&self) -> LetterSet {
        self.syllables.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn is_disjoint(&self, other: &Word) -> bool {
        self.support().is_disjoint(&other.support())
    }

    /// Total signed exponent of `letter`.
    pub fn exponent_sum(&self, letter: &str) -> i64 {
        self.syllables.iter().filter(|(l, _)| l == letter).map(|(_, e)| e).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|(l, e)| (l.clone(), -e)).collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_syllables(self.syllables.iter().chain(other.syllables.iter()).cloned())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `by⁻¹ · self · by`
    pub fn conjugate(&self, by: &Word) -> Word {
        by.inverse().mul(self).mul(by)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Renames letters; letters missing from the map are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Word {
        Word::from_syllables(
            self.syllables
                .iter()
                .map(|(l, e)| (map.get(l).cloned().unwrap_or_else(|| l.clone()), *e)),
        )
    }

    /// A single letter with exponent `+1`.
    pub fn as_letter(&self) -> Option<&str> {
        match self.syllables.as_slice() {
            [(l, 1)] => Some(l),
            _ => None,
        }
    }

    pub(crate) fn compile(&self, slots: &HashMap<&str, usize>) -> Vec<(usize, i64)> {
        self.syllables.iter().map(|(l, e)| (slots[l.as_str()], *e)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, (l, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

/// Parses word syntax: identifiers, `*` or juxtaposition, `^n` powers,
/// `^w` conjugation, `[u, v, …]` left-normed commutators, parentheses and
/// `1` for the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut cursor = crate::syntax::Cursor::new(text)?;
    let w = parse_product(&mut cursor)?;
    cursor.finish()?;
    Ok(w)
}

/// Evaluates a syllable list over slot values.
#[inline]
pub(crate) fn eval_compiled(g: &FiniteGroup, syllables: &[(usize, i64)], values: &[usize]) -> usize {
    syllables
        .iter()
        .fold(g.identity(), |acc, &(slot, e)| g.mul(acc, g.pow(values[slot], e)))
}

/// The value of `w` under an assignment of its letters.
pub fn evaluate(
    g: &FiniteGroup,
    w: &Word,
    assignment: &BTreeMap<String, GroupElement>,
) -> Result<GroupElement> {
    let mut acc = g.identity();
    for (letter, e) in &w.syllables {
        let value = assignment
            .get(letter)
            .ok_or_else(|| Error::UnassignedLetter(letter.clone()))?;
        let x = g.check_element(value)?;
        acc = g.mul(acc, g.pow(x, *e));
    }
    g.element(acc)
}

/// Value set of a word map, tagged exact or sampled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordValues {
    pub set: ElementSubset,
    /// `false` when the set came from random sampling and may be a proper subset.
    pub exact: bool,
}

/// The exact image `G_w` of the word map.
///
/// Syllables are processed left to right while tracking the partial product
/// together with the values of letters that occur again later; letters whose
/// last occurrence has passed are forgotten. The budget bounds the total
/// number of state transitions.
pub fn word_values(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<WordValues> {
    let letters: Vec<String> = w.support().0.into_iter().collect();
    let slots: HashMap<&str, usize> =
        letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let syllables = w.compile(&slots);
    let mut last = vec![0usize; letters.len()];
    for (p, &(s, _)) in syllables.iter().enumerate() {
        last[s] = p;
    }

    let n = g.order();
    let mut live: Vec<usize> = Vec::new();
    let mut states: HashSet<Vec<u32>> = HashSet::from([vec![g.identity() as u32]]);
    let mut work: u128 = 0;

    for (p, &(slot, e)) in syllables.iter().enumerate() {
        let known = live.iter().position(|&s| s == slot);
        let stays = last[slot] > p;
        let step = states.len() as u128 * if known.is_some() { 1 } else { n as u128 };
        work += step;
        budget.check(work)?;

        let mut next: HashSet<Vec<u32>> = HashSet::with_capacity(states.len());
        match known {
            Some(k) => {
                for state in &states {
                    let value = state[1 + k] as usize;
                    let product = g.mul(state[0] as usize, g.pow(value, e));
                    let mut s = state.clone();
                    s[0] = product as u32;
                    if !stays {
                        s.remove(1 + k);
                    }
                    next.insert(s);
                }
                if !stays {
                    live.remove(k);
                }
            }
            None if stays => {
                for state in &states {
                    for x in 0..n {
                        let mut s = state.clone();
                        s[0] = g.mul(state[0] as usize, g.pow(x, e)) as u32;
                        s.push(x as u32);
                        next.insert(s);
                    }
                }
                live.push(slot);
            }
            None => {
                let mut powers: Vec<usize> = (0..n).map(|x| g.pow(x, e)).collect();
                powers.sort_unstable();
                powers.dedup();
                for state in &states {
                    for &y in &powers {
                        let mut s = state.clone();
                        s[0] = g.mul(state[0] as usize, y) as u32;
                        next.insert(s);
                    }
                }
            }
        }
        states = next;
    }

    let values = states.iter().map(|s| s[0] as usize).collect();
    Ok(WordValues { set: g.subset_unchecked(values), exact: true })
}

/// Random-assignment approximation of `G_w`; always tagged inexact.
pub fn word_values_sampled(g: &FiniteGroup, w: &Word, samples: usize, seed: u64) -> WordValues {
    let letters: Vec<String> = w.support().0.into_iter().collect();
    let slots: HashMap<&str, usize> =
        letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let syllables = w.compile(&slots);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0; letters.len()];
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = letters.is_empty();
    for _ in 0..samples {
        for v in values.iter_mut() {
            *v = rng.gen_range(0..g.order());
        }
        seen[eval_compiled(g, &syllables, &values)] = true;
    }
    WordValues { set: g.subset_from_mask(&seen), exact: false }
}

/// Brute-force image over all assignments; used to cross-check [`word_values`].
pub fn word_values_naive(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<ElementSubset> {
    let letters: Vec<String> = w.support().0.into_iter().collect();
    let total = (g.order() as u128).checked_pow(letters.len() as u32).unwrap_or(u128::MAX);
    budget.check(total)?;
    let slots: HashMap<&str, usize> =
        letters.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let syllables = w.compile(&slots);
    let mut seen = vec![false; g.order()];
    let mut values = vec![0usize; letters.len()];
    loop {
        seen[eval_compiled(g, &syllables, &values)] = true;
        if !advance(&mut values, g.order()) {
            break;
        }
    }
    Ok(g.subset_from_mask(&seen))
}

/// Odometer increment over `0..base` in every position; `false` on wrap-around.
pub(crate) fn advance(values: &mut [usize], base: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("[x,y]").syllables(), &[
            ("x".to_string(), -1),
            ("y".to_string(), -1),
            ("x".to_string(), 1),
            ("y".to_string(), 1)
        ]);
        assert!(w("x*x^-1").is_identity());
        assert_eq!(w("x^y"), Word::from_syllables([("y", -1), ("x", 1), ("y", 1)]));
        assert_eq!(w("x^2 y^-1 x"), Word::from_syllables([("x", 2), ("y", -1), ("x", 1)]));
        assert_eq!(w("[x,y,z]"), w("[[x,y],z]"));
        assert_eq!(w("(x y)^-2"), w("y^-1 x^-1 y^-1 x^-1"));
        assert_eq!(w("x^(-3)"), w("x^-3"));
        assert_eq!(w("1"), Word::identity());
        assert_eq!(w("x^[y,z]"), w("[y,z]^-1 x [y,z]"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_word("x^0").unwrap_err(), Error::ZeroExponent { pos: 2 });
        assert!(matches!(parse_word("[x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x +"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_word("2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("[x]"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_reparses() {
        for text in ["[x,y]", "x^2*y^-1*x", "1", "[[a,b],[c,d]]^e", "x^-7"] {
            let word = w(text);
            assert_eq!(w(&word.to_string()), word, "{text}");
        }
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(w("x^2 y^-1 x").exponent_sum("x"), 3);
        assert_eq!(w("[x,y]").exponent_sum("x"), 0);
        assert_eq!(Word::identity().exponent_sum("x"), 0);
    }

    #[test]
    fn evaluation_examples() {
        let s3 = catalog("S3").unwrap();
        let el = |name: &str| s3.element(s3.index_of_name(name).unwrap()).unwrap();
        let assign = |pairs: &[(&str, GroupElement)]| -> BTreeMap<String, GroupElement> {
            pairs.iter().map(|(l, g)| (l.to_string(), *g)).collect()
        };
        let c = w("[x,y]");
        let commuting = assign(&[("x", el("(1 2 3)")), ("y", el("(1 3 2)"))]);
        assert_eq!(evaluate(&s3, &c, &commuting).unwrap(), s3.identity_element());
        let a = assign(&[("x", el("(1 2)")), ("y", el("(1 3)"))]);
        let v = evaluate(&s3, &c, &a).unwrap();
        assert_eq!(s3.element_order(&v).unwrap(), 3);
        let cube = assign(&[("x", el("(1 2 3)"))]);
        assert_eq!(evaluate(&s3, &w("x^3"), &cube).unwrap(), s3.identity_element());
        assert_eq!(
            evaluate(&s3, &c, &assign(&[("x", el("(1 2)"))])).unwrap_err(),
            Error::UnassignedLetter("y".into())
        );
    }

    #[test]
    fn word_value_examples() {
        let s4 = catalog("S4").unwrap();
        let values = word_values(&s4, &w("[x,y]"), Budget::DEFAULT).unwrap();
        assert!(values.exact);
        assert_eq!(values.set.len(), 12);
        assert!(values.set.iter().all(|i| s4.name(i) == "e" || s4.order_of(i) != 2 || {
            // even involutions are products of two transpositions
            s4.name(i).matches('(').count() == 2
        }));
        let trivial = catalog("C1").unwrap();
        assert_eq!(word_values(&trivial, &w("[x,y]^z"), Budget::DEFAULT).unwrap().set.len(), 1);
        let c5 = catalog("C5").unwrap();
        assert_eq!(word_values(&c5, &w("x^2"), Budget::DEFAULT).unwrap().set.len(), 5);
        assert_eq!(
            word_values(&c5, &Word::identity(), Budget::DEFAULT).unwrap().set.members(),
            &[c5.identity()]
        );
    }

    #[test]
    fn word_values_agrees_with_naive_enumeration() {
        for name in ["S3", "Q8", "D4", "A4"] {
            let g = catalog(name).unwrap();
            for text in ["[x,y]", "x^2 y^2", "[x,y]^z", "[x,y][z,x]", "x y x^-1 y^2", "[x,y,x]", "x^3"] {
                let word = w(text);
                let fast = word_values(&g, &word, Budget::DEFAULT).unwrap().set;
                let slow = word_values_naive(&g, &word, Budget::DEFAULT).unwrap();
                assert_eq!(fast, slow, "{name} {text}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s4 = catalog("S4").unwrap();
        assert!(matches!(
            word_values(&s4, &w("[x,y]"), Budget(100)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampling_is_flagged_and_contained() {
        let s4 = catalog("S4").unwrap();
        let sampled = word_values_sampled(&s4, &w("[x,y]"), 50, 7);
        assert!(!sampled.exact);
        let exact = word_values(&s4, &w("[x,y]"), Budget::DEFAULT).unwrap().set;
        assert!(sampled.set.is_subset_of(&exact).unwrap());
    }

    #[test]
    fn json_form_is_pairs() {
        let word = w("x^2 y^-1");
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, r#"[["x",2],["y",-1]]"#);
        let back: Word = serde_json::from_str(r#"[["x",1],["x",-1],["y",3]]"#).unwrap();
        assert_eq!(back, w("y^3"));
        assert!(serde_json::from_str::<Word>(r#"[["x",0]]"#).is_err());
        assert_eq!(serde_json::from_str::<Word>(r#""[x,y]""#).unwrap(), w("[x,y]"));
    }

    #[test]
    fn homomorphism_on_disjoint_products() {
        let s3 = catalog("S3").unwrap();
        let (w1, w2) = (w("x^2 y"), w("z^-1 u z"));
        let product = w1.mul(&w2);
        let letters = ["x", "y", "z", "u"];
        let mut values = vec![0usize; 4];
        loop {
            let a: BTreeMap<String, GroupElement> = letters
                .iter()
                .zip(&values)
                .map(|(l, &v)| (l.to_string(), s3.element(v).unwrap()))
                .collect();
            let lhs = evaluate(&s3, &product, &a).unwrap();
            let rhs = s3
                .multiply(&evaluate(&s3, &w1, &a).unwrap(), &evaluate(&s3, &w2, &a).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            if !advance(&mut values, 6) {
                break;
            }
        }
    }
}
