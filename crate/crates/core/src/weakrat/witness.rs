//! Witness sets of ena formulae, comparison of definable sets under quotients,
//! and the factorization property used for ena formulae of outer commutators.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulae::{definable_set, Formula};
use crate::groups::{ElementSubset, FiniteGroup};
use crate::words::{advance, eval_compiled, Word};
use crate::Budget;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChoice {
    pub value: usize,
    /// Values of the bound letters, in quantifier order.
    pub tuple: Vec<usize>,
    /// `w(tuple, value)`, never the identity.
    pub word_value: usize,
}

/// `G_ψ` together with one nontrivial word value per element of `G_ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub members: ElementSubset,
    pub choices: Vec<WitnessChoice>,
}

impl WitnessSet {
    pub fn separated_by(&self, g: &FiniteGroup, projection: &[usize]) -> bool {
        separates(g, projection, &self.members)
    }
}

/// For each `g ∈ G_ψ`, takes the lexicographically first tuple of bound
/// values with `w(tuple, g) != 1`.
pub fn witness_set_ena(g: &FiniteGroup, psi: &Formula, budget: Budget) -> Result<WitnessSet> {
    let (word, vars) = psi.as_ena().ok_or(Error::NotEna)?;
    let y = psi.single_free()?;
    budget.check((g.order() as u128).saturating_pow(1 + vars.len() as u32))?;
    let mut slots: HashMap<&str, usize> = HashMap::from([(y, 0)]);
    for (i, v) in vars.iter().enumerate() {
        slots.insert(v, i + 1);
    }
    let compiled = word.compile(&slots);
    let mut members = Vec::new();
    let mut choices = Vec::new();
    let mut values = vec![0; 1 + vars.len()];
    for x in 0..g.order() {
        values[0] = x;
        values[1..].fill(0);
        loop {
            let val = eval_compiled(g, &compiled, &values);
            if val != g.identity() {
                members.push(x);
                members.push(val);
                choices.push(WitnessChoice { value: x, tuple: values[1..].to_vec(), word_value: val });
                break;
            }
            if !advance(&mut values[1..], g.order()) {
                break;
            }
        }
    }
    Ok(WitnessSet { members: g.subset(members)?, choices })
}

/// Whether the map `projection` on element indices is injective on `W ∪ {e}`,
/// so in particular no member of `W` other than `e` is sent to the identity.
pub fn separates(g: &FiniteGroup, projection: &[usize], w: &ElementSubset) -> bool {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    w.iter()
        .chain([g.identity()])
        .all(|x| *seen.entry(projection[x]).or_insert(x) == x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetRelation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

/// `(G_φ)^π` against `(G/N)_φ`, both given as element indices of `G/N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residuality {
    pub relation: SetRelation,
    pub image: Vec<usize>,
    pub quotient_set: Vec<usize>,
}

pub fn check_residuality(g: &FiniteGroup, n: &ElementSubset, phi: &Formula, budget: Budget) -> Result<Residuality> {
    if !g.is_subgroup(n)? || !g.is_normal_set(n)? {
        return Err(Error::NotNormal);
    }
    let (q, projection) = g.quotient(n)?;
    let image = q.subset_unchecked(definable_set(g, phi, budget)?.iter().map(|x| projection[x]).collect());
    let quotient_set = definable_set(&q, phi, budget)?;
    let sub = image.is_subset_of(&quotient_set)?;
    let sup = quotient_set.is_subset_of(&image)?;
    let relation = match (sub, sup) {
        (true, true) => SetRelation::Equal,
        (true, false) => SetRelation::StrictSubset,
        (false, true) => SetRelation::StrictSuperset,
        (false, false) => SetRelation::Incomparable,
    };
    Ok(Residuality { relation, image: image.members().to_vec(), quotient_set: quotient_set.members().to_vec() })
}

/// One factor `v(ḡ_i, h^m)^{c_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarFactor {
    /// Values of the letters of `v` other than the distinguished one, sorted by name.
    pub tuple: Vec<usize>,
    pub conjugator: usize,
}

/// Searches a product of exactly `k` factors `v(ḡ_i, h^m)^{c_i}` equal to
/// `v(ḡ, h)`, where `k` is the inverse of `m` modulo the order of `h` and `y`
/// is the distinguished letter. `others` holds `ḡ` in sorted letter order.
pub fn star_factorization(
    g: &FiniteGroup,
    v: &Word,
    y: &str,
    others: &[usize],
    h: usize,
    m: i64,
    budget: Budget,
) -> Result<Option<Vec<StarFactor>>> {
    let letters: Vec<String> = v.support().0.into_iter().filter(|l| l != y).collect();
    if others.len() != letters.len() {
        return Err(Error::InvalidSpec(format!("{} values for {} letters", others.len(), letters.len())));
    }
    if let Some(&bad) = others.iter().chain([&h]).find(|&&x| x >= g.order()) {
        return Err(Error::InvalidElement { index: bad, order: g.order() });
    }
    let ord = g.order_of(h) as i64;
    if m.gcd(&ord) != 1 {
        return Err(Error::NotCoprime { m, order: ord as usize });
    }
    let k = if ord == 1 { 1 } else { (1..ord).find(|k| (k * m).rem_euclid(ord) == 1).expect("m is a unit") as usize };
    budget.check((g.order() as u128).saturating_pow(1 + letters.len() as u32))?;

    let mut slots: HashMap<&str, usize> = HashMap::from([(y, 0)]);
    for (i, l) in letters.iter().enumerate() {
        slots.insert(l, i + 1);
    }
    let compiled = v.compile(&slots);
    let mut values = vec![0; 1 + letters.len()];
    values[0] = h;
    values[1..].copy_from_slice(others);
    let target = eval_compiled(g, &compiled, &values);

    // first (tuple, conjugator) producing each factor value
    let hm = g.pow(h, m);
    let mut factors: BTreeMap<usize, StarFactor> = BTreeMap::new();
    values[0] = hm;
    values[1..].fill(0);
    loop {
        let base = eval_compiled(g, &compiled, &values);
        for c in 0..g.order() {
            factors
                .entry(g.conj(base, c))
                .or_insert_with(|| StarFactor { tuple: values[1..].to_vec(), conjugator: c });
        }
        if !advance(&mut values[1..], g.order()) {
            break;
        }
    }

    // layer[i][x] = factor value used to reach x as a product of i + 1 factors
    let mut layers: Vec<Vec<Option<usize>>> = Vec::with_capacity(k);
    let mut first = vec![None; g.order()];
    for &f in factors.keys() {
        first[f] = Some(f);
    }
    layers.push(first);
    for _ in 1..k {
        let prev = layers.last().expect("nonempty");
        let mut next = vec![None; g.order()];
        for (x, reached) in prev.iter().enumerate() {
            if reached.is_none() {
                continue;
            }
            for &f in factors.keys() {
                next[g.mul(x, f)].get_or_insert(f);
            }
        }
        layers.push(next);
    }
    if layers[k - 1][target].is_none() {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(k);
    let mut x = target;
    for layer in layers.iter().rev() {
        let f = layer[x].expect("reachable");
        chosen.push(f);
        x = g.mul(x, g.inv(f));
    }
    chosen.reverse();
    let product = chosen.iter().fold(g.identity(), |acc, &f| g.mul(acc, f));
    if product != target {
        return Err(Error::Verification("factorization does not multiply to the target".into()));
    }
    Ok(Some(chosen.into_iter().map(|f| factors[&f].clone()).collect()))
}

/// Checks `[∏ a_i^{c_i}, b] = ∏ [a_i, b^{c_i⁻¹}]^{c_i d_i}` with
/// `d_i = ∏_{s>i} a_s^{c_s}`, the expansion that lifts the factorization
/// property from `v` to `[v, w]`. `factors` holds the pairs `(a_i, c_i)`.
pub fn star_identity_holds(g: &FiniteGroup, factors: &[(usize, usize)], b: usize) -> bool {
    let terms: Vec<usize> = factors.iter().map(|&(a, c)| g.conj(a, c)).collect();
    let lhs = g.commutator(terms.iter().fold(g.identity(), |acc, &t| g.mul(acc, t)), b);
    let mut rhs = g.identity();
    for (i, &(a, c)) in factors.iter().enumerate() {
        let d = terms[i + 1..].iter().fold(g.identity(), |acc, &t| g.mul(acc, t));
        let inner = g.commutator(a, g.conj(b, g.inv(c)));
        rhs = g.mul(rhs, g.conj(inner, g.mul(c, d)));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulae::parse_formula;
    use crate::groups::catalog;
    use crate::words::parse_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s3_mod_a3() {
        let s3 = catalog("S3").unwrap();
        let psi = parse_formula("exists x: [y,x] != 1").unwrap();
        let w = witness_set_ena(&s3, &psi, Budget::DEFAULT).unwrap();
        // G_ψ is everything but the identity
        assert_eq!(w.choices.len(), 5);
        assert!(w.choices.iter().all(|c| c.word_value != s3.identity()));
        let a3 = s3.normal_subgroups().into_iter().find(|n| n.len() == 3).unwrap();
        let (_, proj) = s3.quotient(&a3).unwrap();
        let r = check_residuality(&s3, &a3, &psi, Budget::DEFAULT).unwrap();
        // rotations become trivial in the quotient, which is abelian
        assert_eq!(r.image.len(), 2);
        assert!(r.quotient_set.is_empty());
        assert_eq!(r.relation, SetRelation::StrictSuperset);
        assert!(!w.separated_by(&s3, &proj));
    }

    #[test]
    fn trivial_kernel_is_equal() {
        for name in ["S3", "Q8", "D4"] {
            let g = catalog(name).unwrap();
            let e = g.subset([g.identity()]).unwrap();
            for text in ["exists x: [y,x] != 1", "exists x: x^2 = y", "forall x: [x,y] = 1"] {
                let r = check_residuality(&g, &e, &parse_formula(text).unwrap(), Budget::DEFAULT).unwrap();
                assert_eq!(r.relation, SetRelation::Equal, "{name} {text}");
            }
        }
    }

    #[test]
    fn word_formulae_commute_with_quotients() {
        let phi = Formula::word_formula(&parse_word("[x,z]").unwrap());
        for name in ["S4", "D6", "Q8"] {
            let g = catalog(name).unwrap();
            for n in g.normal_subgroups() {
                let r = check_residuality(&g, &n, &phi, Budget::DEFAULT).unwrap();
                assert_eq!(r.relation, SetRelation::Equal);
            }
        }
    }

    #[test]
    fn rejects_non_ena_and_non_normal() {
        let s3 = catalog("S3").unwrap();
        let phi = parse_formula("exists x: [y,x] = 1").unwrap();
        assert!(matches!(witness_set_ena(&s3, &phi, Budget::DEFAULT), Err(Error::NotEna)));
        let t = (0..6).find(|&x| s3.order_of(x) == 2).unwrap();
        let s = s3.subset([s3.identity(), t]).unwrap();
        assert!(check_residuality(&s3, &s, &phi, Budget::DEFAULT).is_err());
    }

    #[test]
    fn separation_needs_identity() {
        let c4 = catalog("C4").unwrap();
        let two = c4.subgroup_closure(&c4.subset([c4.index_of_name("g^2").unwrap()]).unwrap()).unwrap();
        let (_, proj) = c4.quotient(&two).unwrap();
        let g = c4.index_of_name("g").unwrap();
        assert!(separates(&c4, &proj, &c4.subset([g]).unwrap()));
        assert!(!separates(&c4, &proj, &c4.subset([c4.pow(g, 2)]).unwrap()));
    }

    #[test]
    fn commutator_factorizations() {
        let v = parse_word("[x,y]").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["S3", "S4"] {
            let g = catalog(name).unwrap();
            for _ in 0..30 {
                let x = rng.gen_range(0..g.order());
                let h = rng.gen_range(0..g.order());
                let ord = g.order_of(h) as i64;
                let m = loop {
                    let m = rng.gen_range(1..=2 * ord.max(2));
                    if m.gcd(&ord) == 1 {
                        break m;
                    }
                };
                let f = star_factorization(&g, &v, "y", &[x], h, m, Budget::DEFAULT).unwrap().unwrap();
                let product = f.iter().fold(g.identity(), |acc, s| {
                    g.mul(acc, g.conj(g.commutator(s.tuple[0], g.pow(h, m)), s.conjugator))
                });
                assert_eq!(product, g.commutator(x, h));
            }
        }
    }

    #[test]
    fn factorization_rejects_non_units() {
        let c4 = catalog("C4").unwrap();
        let v = parse_word("y").unwrap();
        let g = c4.index_of_name("g").unwrap();
        assert!(matches!(
            star_factorization(&c4, &v, "y", &[], g, 2, Budget::DEFAULT),
            Err(Error::NotCoprime { .. })
        ));
        let f = star_factorization(&c4, &v, "y", &[], g, 3, Budget::DEFAULT).unwrap().unwrap();
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn expansion_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = catalog("S4").unwrap();
        for _ in 0..200 {
            let k = rng.gen_range(1..5);
            let factors: Vec<(usize, usize)> =
                (0..k).map(|_| (rng.gen_range(0..24), rng.gen_range(0..24))).collect();
            assert!(star_identity_holds(&g, &factors, rng.gen_range(0..24)));
        }
        // with the conjugators starting at the i-th term the identity breaks
        let h = (0..24).find(|&x| g.order_of(x) == 4).unwrap();
        let b = (0..24).find(|&x| g.commutator(h, x) != g.identity()).unwrap();
        let hm = g.pow(h, 3);
        let lhs = g.commutator(h, b);
        let n = 3;
        let shifted = (1..=n).fold(g.identity(), |acc, i| {
            g.mul(acc, g.conj(g.commutator(hm, b), g.pow(hm, (n - i + 1) as i64)))
        });
        assert_eq!(shifted, g.conj(lhs, hm));
    }
}
