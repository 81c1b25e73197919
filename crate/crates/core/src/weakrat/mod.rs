//! Weak rationality of subsets, words and formulae, with the bounds and
//! constructions that preserve it.

mod ics;
mod witness;
mod zword;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::formulae::{definable_set, Formula};
use crate::groups::{ElementSubset, FiniteGroup};
use crate::words::{word_values, Word};
use crate::Budget;

pub use ics::{ics_solve, IndependentChoiceSystem};
pub use witness::{
    check_residuality, separates, star_factorization, star_identity_holds, witness_set_ena, Residuality,
    SetRelation, StarFactor, WitnessChoice, WitnessSet,
};
pub use zword::{build_z, BuiltZ, ZWordSpec};

/// Outcome of a weak rationality check with the first violation, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WrCheck {
    pub rational: bool,
    /// `(element, m)` with `gcd(m, |G|) = 1` and `element^m` outside the set.
    pub counterexample: Option<(usize, u64)>,
}

/// Checks `g^m ∈ X` for every `g ∈ X` and every `m ∈ [1, |G|]` coprime to `|G|`.
/// The first violation in (element index, m) order is reported.
pub fn is_weakly_rational_set(g: &FiniteGroup, x: &ElementSubset) -> Result<WrCheck> {
    g.check_subset(x)?;
    let n = g.order() as u64;
    let units: Vec<u64> = (1..=n).filter(|m| m.gcd(&n) == 1).collect();
    for el in x.iter() {
        if let Some(&m) = units.iter().find(|&&m| !x.contains(g.pow(el, m as i64))) {
            return Ok(WrCheck { rational: false, counterexample: Some((el, m)) });
        }
    }
    Ok(WrCheck { rational: true, counterexample: None })
}

/// The same property with `m` ranging over residues coprime to the order of each element.
pub fn is_weakly_rational_by_element_order(g: &FiniteGroup, x: &ElementSubset) -> Result<WrCheck> {
    g.check_subset(x)?;
    for el in x.iter() {
        let ord = g.order_of(el) as u64;
        let bad = (1..=ord).filter(|m| m.gcd(&ord) == 1).find(|&m| !x.contains(g.pow(el, m as i64)));
        if let Some(m) = bad {
            return Ok(WrCheck { rational: false, counterexample: Some((el, m)) });
        }
    }
    Ok(WrCheck { rational: true, counterexample: None })
}

/// Whether the two formulations of weak rationality agree on `x`.
pub fn check_wr_equivalence(g: &FiniteGroup, x: &ElementSubset) -> Result<bool> {
    Ok(is_weakly_rational_set(g, x)?.rational == is_weakly_rational_by_element_order(g, x)?.rational)
}

/// Weak rationality of the exact value set of `w`.
pub fn is_weakly_rational_word(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<WrCheck> {
    is_weakly_rational_set(g, &word_values(g, w, budget)?.set)
}

/// Weak rationality of `G_φ`.
pub fn is_weakly_rational_formula(g: &FiniteGroup, phi: &Formula, budget: Budget) -> Result<WrCheck> {
    is_weakly_rational_set(g, &definable_set(g, phi, budget)?)
}

/// Surjectivity of the word map.
pub fn is_ore_word_on(g: &FiniteGroup, w: &Word, budget: Budget) -> Result<bool> {
    Ok(word_values(g, w, budget)?.set.len() == g.order())
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Totients for `0..=limit` by sieve; entry 0 is 0.
pub fn euler_phi_table(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            for k in (p..=limit).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

/// Largest element order compatible with a weakly rational set of the given size: `2·n²`.
pub fn phi_order_bound(n: u64) -> BigUint {
    BigUint::from(2u32) * BigUint::from(n) * BigUint::from(n)
}

/// `(s!)²·s^k`, bounding a group generated by a normal set of size `s`
/// whose elements have order at most `k`.
pub fn schur_bound(s: u64, k: u64) -> BigUint {
    let fact = (1..=s).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    let k = u32::try_from(k).expect("exponent fits in u32");
    &fact * &fact * BigUint::from(s).pow(k)
}

/// `schur_bound(n, 2n²)`, the bound on `|⟨N⟩|` for a normal weakly
/// rational subset of size `n` in its usual closed form. It fails already for
/// `N = {g}` in `C2`; see `f_bound_corrected`.
pub fn f_bound(n: u64) -> BigUint {
    schur_bound(n, 2 * n * n)
}

/// `(s!)²·k^s`: an abelian group generated by `s` elements of order at most
/// `k` has order at most `k^s`, not `s^k`.
pub fn schur_bound_corrected(s: u64, k: u64) -> BigUint {
    let fact = (1..=s).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    let s = u32::try_from(s).expect("exponent fits in u32");
    &fact * &fact * BigUint::from(k).pow(s)
}

pub fn f_bound_corrected(n: u64) -> BigUint {
    schur_bound_corrected(n, 2 * n * n)
}

/// Classes of the equivalence generated by conjugation and coprime powers;
/// every normal weakly rational subset is a union of these.
pub fn rational_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let units: Vec<i64> = (1..=n as i64).filter(|m| m.gcd(&(n as i64)) == 1).collect();
    let mut label = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        label[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            let powers = units.iter().map(|&m| g.pow(x, m));
            let conjugates = (0..n).map(|h| g.conj(x, h));
            for y in powers.chain(conjugates).collect::<Vec<_>>() {
                if label[y] == usize::MAX {
                    label[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

/// A random nonempty union of rational classes.
pub fn random_wr_normal_subset<R: Rng>(g: &FiniteGroup, rng: &mut R) -> ElementSubset {
    let classes = rational_classes(g);
    let mut picked: Vec<usize> = Vec::new();
    for class in &classes {
        if rng.gen_bool(0.5) {
            picked.extend(class);
        }
    }
    if picked.is_empty() {
        picked.extend(classes.choose(rng).expect("a group has at least one class"));
    }
    g.subset_unchecked(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;
    use crate::words::parse_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn set_examples() {
        let s4 = catalog("S4").unwrap();
        let commutators = word_values(&s4, &parse_word("[x,y]").unwrap(), Budget::DEFAULT).unwrap().set;
        assert!(is_weakly_rational_set(&s4, &commutators).unwrap().rational);
        assert!(is_weakly_rational_set(&s4, &s4.subset([s4.identity()]).unwrap()).unwrap().rational);
        let c5 = catalog("C5").unwrap();
        let check = is_weakly_rational_set(&c5, &c5.subset([1]).unwrap()).unwrap();
        assert_eq!(check, WrCheck { rational: false, counterexample: Some((1, 2)) });
    }

    #[test]
    fn equivalence_examples() {
        let s4 = catalog("S4").unwrap();
        let a4 = word_values(&s4, &parse_word("[x,y]").unwrap(), Budget::DEFAULT).unwrap().set;
        assert!(check_wr_equivalence(&s4, &a4).unwrap());
        assert!(check_wr_equivalence(&s4, &s4.empty_subset()).unwrap());
        let c8 = catalog("C8").unwrap();
        let squares: Vec<usize> = (0..8).map(|x| c8.pow(x, 2)).filter(|&x| x != c8.identity()).collect();
        assert!(check_wr_equivalence(&c8, &c8.subset(squares).unwrap()).unwrap());
        for x in 0..8 {
            let single = c8.subset([x]).unwrap();
            assert!(check_wr_equivalence(&c8, &single).unwrap());
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(phi_order_bound(3), BigUint::from(18u32));
        assert_eq!(schur_bound(2, 2), BigUint::from(16u32));
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(97), 96);
        let table = euler_phi_table(1000);
        assert!((1..=1000).all(|n| table[n] == euler_phi(n as u64)));
        assert_eq!(f_bound(1), schur_bound(1, 2));
        assert_eq!(schur_bound_corrected(2, 2), schur_bound(2, 2));
        assert_eq!(schur_bound_corrected(1, 2), BigUint::from(2u32));
        assert_eq!(f_bound_corrected(2), BigUint::from(4u32 * 64));
    }

    #[test]
    fn closed_form_f_bound_is_too_small_on_c2() {
        let c2 = catalog("C2").unwrap();
        let n = c2.subset([c2.index_of_name("g").unwrap()]).unwrap();
        assert!(is_weakly_rational_set(&c2, &n).unwrap().rational);
        let generated = BigUint::from(c2.subgroup_closure(&n).unwrap().len());
        assert!(generated > f_bound(1));
        assert!(generated <= f_bound_corrected(1));
    }

    #[test]
    fn ore_examples() {
        let s3 = catalog("S3").unwrap();
        assert!(is_ore_word_on(&s3, &parse_word("x").unwrap(), Budget::DEFAULT).unwrap());
        let c2 = catalog("C2").unwrap();
        assert!(!is_ore_word_on(&c2, &parse_word("x^2").unwrap(), Budget::DEFAULT).unwrap());
        let a5 = catalog("A5").unwrap();
        assert!(is_ore_word_on(&a5, &parse_word("[x,y]").unwrap(), Budget::DEFAULT).unwrap());
    }

    #[test]
    fn rational_classes_give_wr_normal_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["S4", "C12", "Q8", "D5"] {
            let g = catalog(name).unwrap();
            let classes = rational_classes(&g);
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            for _ in 0..5 {
                let n = random_wr_normal_subset(&g, &mut rng);
                assert!(is_weakly_rational_set(&g, &n).unwrap().rational);
                assert!(g.is_normal_set(&n).unwrap());
            }
        }
    }

    #[test]
    fn boolean_closure_of_wr_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = catalog("S4").unwrap();
        for _ in 0..20 {
            let x = random_wr_normal_subset(&g, &mut rng);
            let y = random_wr_normal_subset(&g, &mut rng);
            for s in [x.union(&y).unwrap(), x.intersection(&y).unwrap(), g.complement(&x).unwrap()] {
                assert!(is_weakly_rational_set(&g, &s).unwrap().rational);
            }
        }
    }
}
