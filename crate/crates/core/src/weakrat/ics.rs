//! Systems of independent choice and the constructive solver for products of letters.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupElement};
use crate::words::{evaluate, Word};

/// A collection of subsets of a ground set, optionally with a linear order
/// given as a permutation of collection indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentChoiceSystem<T: Ord> {
    pub ground: BTreeSet<T>,
    pub collection: Vec<BTreeSet<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

impl<T: Ord + Clone> IndependentChoiceSystem<T> {
    pub fn new(ground: BTreeSet<T>, collection: Vec<BTreeSet<T>>) -> Result<Self> {
        let sys = IndependentChoiceSystem { ground, collection, order: None };
        sys.check_members()?;
        Ok(sys)
    }

    fn check_members(&self) -> Result<()> {
        if let Some(i) = self.collection.iter().position(|x| !x.is_subset(&self.ground)) {
            return Err(Error::InvalidSpec(format!("member {i} is not contained in the ground set")));
        }
        Ok(())
    }

    fn check_nonempty(&self) -> Result<()> {
        if self.collection.iter().any(BTreeSet::is_empty) {
            return Err(Error::EmptyMember);
        }
        Ok(())
    }

    /// Each member, taken in `order`, has an element outside all earlier members.
    pub fn is_valid_order(&self, order: &[usize]) -> bool {
        let mut seen = vec![false; self.collection.len()];
        let is_perm = order.len() == self.collection.len()
            && order.iter().all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true));
        if !is_perm {
            return false;
        }
        let mut covered: BTreeSet<&T> = BTreeSet::new();
        for &i in order {
            if self.collection[i].iter().all(|e| covered.contains(e)) {
                return false;
            }
            covered.extend(self.collection[i].iter());
        }
        true
    }

    /// Builds an order from the back: repeatedly the lowest-index remaining
    /// member with an element outside every other remaining member is placed last.
    pub fn find_order(&self) -> Result<Option<Vec<usize>>> {
        self.check_nonempty()?;
        let mut remaining: Vec<usize> = (0..self.collection.len()).collect();
        let mut reversed = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let pick = remaining.iter().position(|&i| {
                self.collection[i]
                    .iter()
                    .any(|e| remaining.iter().all(|&j| j == i || !self.collection[j].contains(e)))
            });
            match pick {
                Some(p) => reversed.push(remaining.remove(p)),
                None => return Ok(None),
            }
        }
        reversed.reverse();
        Ok(Some(reversed))
    }

    /// Every valid order, in lexicographic order of index sequences.
    pub fn all_orders(&self) -> Result<Vec<Vec<usize>>> {
        self.check_nonempty()?;
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut used = vec![false; self.collection.len()];
        self.extend_orders(&mut current, &mut used, &mut BTreeMap::new(), &mut out);
        Ok(out)
    }

    fn extend_orders(
        &self,
        current: &mut Vec<usize>,
        used: &mut [bool],
        covered: &mut BTreeMap<T, usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == self.collection.len() {
            out.push(current.clone());
            return;
        }
        for i in 0..self.collection.len() {
            if used[i] || self.collection[i].iter().all(|e| covered.contains_key(e)) {
                continue;
            }
            used[i] = true;
            current.push(i);
            for e in &self.collection[i] {
                *covered.entry(e.clone()).or_default() += 1;
            }
            self.extend_orders(current, used, covered, out);
            for e in &self.collection[i] {
                let c = covered.get_mut(e).expect("counted above");
                *c -= 1;
                if *c == 0 {
                    covered.remove(e);
                }
            }
            current.pop();
            used[i] = false;
        }
    }

    /// The stored order if valid, otherwise one found greedily.
    pub fn resolved_order(&self) -> Result<Vec<usize>> {
        match &self.order {
            Some(order) if self.is_valid_order(order) => Ok(order.clone()),
            Some(_) => Err(Error::NoValidOrder),
            None => self.find_order()?.ok_or(Error::NoValidOrder),
        }
    }

    /// For each position of `order`, the least element of that member not in
    /// any earlier member.
    pub fn pivots(&self, order: &[usize]) -> Vec<T> {
        let mut covered: BTreeSet<&T> = BTreeSet::new();
        let mut out = Vec::new();
        for &i in order {
            let p = self.collection[i].iter().find(|e| !covered.contains(e)).expect("order is valid");
            out.push(p.clone());
            covered.extend(self.collection[i].iter());
        }
        out
    }
}

/// Finds letter values with `d[i]` evaluating to `gamma[i]` for every member.
///
/// Members are processed in the system's order. Letters that are not pivots
/// take the identity; each pivot is then solved from its member's equation,
/// algebraically when it occurs once with exponent ±1 and by search over the
/// group otherwise. The result is re-evaluated before it is returned.
pub fn ics_solve(
    g: &FiniteGroup,
    sys: &IndependentChoiceSystem<String>,
    d: &[Word],
    gamma: &[GroupElement],
) -> Result<BTreeMap<String, GroupElement>> {
    let k = sys.collection.len();
    if d.len() != k || gamma.len() != k {
        return Err(Error::InvalidSpec(format!(
            "{k} members but {} words and {} targets",
            d.len(),
            gamma.len()
        )));
    }
    for (i, w) in d.iter().enumerate() {
        if !w.support().0.is_subset(&sys.collection[i]) {
            return Err(Error::InvalidSpec(format!("word {i} uses letters outside member {i}")));
        }
    }
    let targets = gamma.iter().map(|x| g.check_element(x)).collect::<Result<Vec<_>>>()?;
    let order = sys.resolved_order()?;
    let pivots = sys.pivots(&order);

    let mut values: BTreeMap<String, usize> = sys.ground.iter().map(|e| (e.clone(), g.identity())).collect();
    for (&member, pivot) in order.iter().zip(&pivots) {
        let w = &d[member];
        let target = targets[member];
        let occurrences: Vec<usize> =
            (0..w.len()).filter(|&p| w.syllables()[p].0 == *pivot).collect();
        let solved = match occurrences.as_slice() {
            [p] if w.syllables()[*p].1.abs() == 1 => {
                let before = eval_slice(g, &w.syllables()[..*p], &values);
                let after = eval_slice(g, &w.syllables()[p + 1..], &values);
                let x = g.mul(g.mul(g.inv(before), target), g.inv(after));
                Some(if w.syllables()[*p].1 == 1 { x } else { g.inv(x) })
            }
            _ => (0..g.order()).find(|&x| {
                values.insert(pivot.clone(), x);
                eval_slice(g, w.syllables(), &values) == target
            }),
        };
        let x = solved.ok_or_else(|| {
            Error::Verification(format!("no value of {pivot} solves member {member}"))
        })?;
        values.insert(pivot.clone(), x);
    }

    let assignment: BTreeMap<String, GroupElement> =
        values.into_iter().map(|(l, x)| (l, g.element(x).expect("index in range"))).collect();
    for (i, w) in d.iter().enumerate() {
        if g.check_element(&evaluate(g, w, &assignment)?)? != targets[i] {
            return Err(Error::Verification(format!("member {i} does not evaluate to its target")));
        }
    }
    Ok(assignment)
}

fn eval_slice(g: &FiniteGroup, syllables: &[(String, i64)], values: &BTreeMap<String, usize>) -> usize {
    syllables.iter().fold(g.identity(), |acc, (l, e)| g.mul(acc, g.pow(values[l], *e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;
    use crate::words::parse_word;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn worked_example() -> IndependentChoiceSystem<String> {
        IndependentChoiceSystem::new(
            set(&["x1", "x2", "x3", "x4"]),
            vec![set(&["x1"]), set(&["x1", "x2", "x3"]), set(&["x1", "x3", "x4"])],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_orders() {
        let sys = worked_example();
        assert!(sys.is_valid_order(&[0, 1, 2]));
        // a second valid order also exists
        assert_eq!(sys.all_orders().unwrap(), vec![vec![0, 1, 2], vec![0, 2, 1]]);
        assert_eq!(sys.pivots(&[0, 1, 2]), vec!["x1", "x2", "x4"]);
        assert!(sys.find_order().unwrap().is_some());
    }

    #[test]
    fn small_examples() {
        let single = IndependentChoiceSystem::new(set(&["a"]), vec![set(&["a"])]).unwrap();
        assert_eq!(single.all_orders().unwrap(), vec![vec![0]]);
        let cyclic =
            IndependentChoiceSystem::new(set(&["a", "b"]), vec![set(&["a"]), set(&["a", "b"]), set(&["b"])])
                .unwrap();
        assert!(cyclic.all_orders().unwrap().is_empty());
        assert_eq!(cyclic.find_order().unwrap(), None);
        let empty = IndependentChoiceSystem::new(set(&["a"]), vec![set(&[])]).unwrap();
        assert_eq!(empty.find_order().unwrap_err(), Error::EmptyMember);
        assert!(IndependentChoiceSystem::new(set(&["a"]), vec![set(&["b"])]).is_err());
    }

    #[test]
    fn solve_worked_example() {
        let s4 = catalog("S4").unwrap();
        let sys = worked_example();
        let d: Vec<Word> = ["x1", "x1 x2 x3", "x1 x3 x4"].iter().map(|t| parse_word(t).unwrap()).collect();
        let gamma: Vec<GroupElement> = [5, 17, 9].iter().map(|&i| s4.element(i).unwrap()).collect();
        let a = ics_solve(&s4, &sys, &d, &gamma).unwrap();
        assert_eq!(a["x1"], gamma[0]);
        let pivots = sys.pivots(&sys.resolved_order().unwrap());
        for (letter, value) in &a {
            if !pivots.contains(letter) {
                assert_eq!(*value, s4.identity_element(), "{letter}");
            }
        }
    }

    #[test]
    fn solve_single_member_and_powers() {
        let s3 = catalog("S3").unwrap();
        let sys = IndependentChoiceSystem::new(set(&["x"]), vec![set(&["x"])]).unwrap();
        let g = s3.element(4).unwrap();
        let a = ics_solve(&s3, &sys, &[parse_word("x").unwrap()], &[g]).unwrap();
        assert_eq!(a["x"], g);
        let a = ics_solve(&s3, &sys, &[parse_word("x^-1").unwrap()], &[g]).unwrap();
        assert_eq!(a["x"], s3.invert(&g).unwrap());
        // pivots occurring with higher powers are found by search
        let c5 = catalog("C5").unwrap();
        let sys = IndependentChoiceSystem::new(set(&["x", "y"]), vec![set(&["x"]), set(&["x", "y"])]).unwrap();
        let d = [parse_word("x^2").unwrap(), parse_word("y^3 x").unwrap()];
        for (a, b) in [(1, 2), (3, 0), (4, 4)] {
            let gamma = [c5.element(a).unwrap(), c5.element(b).unwrap()];
            let sol = ics_solve(&c5, &sys, &d, &gamma).unwrap();
            assert_eq!(evaluate(&c5, &d[1], &sol).unwrap(), gamma[1]);
        }
        // squaring is not surjective on C2
        let c2 = catalog("C2").unwrap();
        let sys = IndependentChoiceSystem::new(set(&["x"]), vec![set(&["x"])]).unwrap();
        let err = ics_solve(&c2, &sys, &[parse_word("x^2").unwrap()], &[c2.element(1).unwrap()]);
        assert!(matches!(err, Err(Error::Verification(_))));
    }
}
