//! The centre of the integral group ring in the class-sum basis.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupId};
use crate::Budget;

/// An integer combination of class sums, indexed like `conjugacy_classes`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterElement {
    #[serde(skip)]
    group: GroupId,
    pub coefficients: Vec<BigInt>,
}

impl CenterElement {
    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }
}

/// Class sums of a group with their multiplication constants.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    group: FiniteGroup,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// `structure[c][d][e]` is the number of pairs in `C × D` whose product
    /// is the representative of `E`.
    structure: Vec<Vec<Vec<u64>>>,
}

impl ClassAlgebra {
    pub fn new(group: &FiniteGroup) -> ClassAlgebra {
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                class_of[x] = i;
            }
        }
        let k = classes.len();
        let mut structure = vec![vec![vec![0u64; k]; k]; k];
        for c in 0..k {
            for d in 0..k {
                let row = &mut structure[c][d];
                for &x in &classes[c] {
                    for &y in &classes[d] {
                        row[class_of[group.mul(x, y)]] += 1;
                    }
                }
                for (e, count) in row.iter_mut().enumerate() {
                    *count /= classes[e].len() as u64;
                }
            }
        }
        ClassAlgebra { group: group.clone(), classes, class_of, structure }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// The least element of a class.
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    /// Resolves a class given by index or by the name of any member.
    pub fn class_index(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if let Ok(i) = text.parse::<usize>() {
            return if i < self.classes.len() {
                Ok(i)
            } else {
                Err(Error::OutOfRange(format!("class {i} of {}", self.classes.len())))
            };
        }
        self.group
            .index_of_name(text)
            .map(|x| self.class_of[x])
            .ok_or_else(|| Error::OutOfRange(format!("no element named {text}")))
    }

    pub fn from_coefficients(&self, coefficients: Vec<BigInt>) -> Result<CenterElement> {
        if coefficients.len() != self.classes.len() {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for {} classes",
                coefficients.len(),
                self.classes.len()
            )));
        }
        Ok(CenterElement { group: self.group.id(), coefficients })
    }

    pub fn zero(&self) -> CenterElement {
        CenterElement { group: self.group.id(), coefficients: vec![BigInt::zero(); self.classes.len()] }
    }

    pub fn class_sum(&self, class: usize) -> CenterElement {
        let mut out = self.zero();
        out.coefficients[class] = BigInt::one();
        out
    }

    /// The identity of the ring, `Σ({e})`.
    pub fn one(&self) -> CenterElement {
        self.class_sum(self.class_of[self.group.identity()])
    }

    fn check(&self, a: &CenterElement) -> Result<()> {
        if a.group != self.group.id() || a.coefficients.len() != self.classes.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &CenterElement, b: &CenterElement) -> Result<CenterElement> {
        self.check(a)?;
        self.check(b)?;
        let coefficients = a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| x + y).collect();
        Ok(CenterElement { group: a.group, coefficients })
    }

    pub fn multiply_center(&self, a: &CenterElement, b: &CenterElement) -> Result<CenterElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (c, x) in a.coefficients.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (d, y) in b.coefficients.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (e, &n) in self.structure[c][d].iter().enumerate() {
                    if n != 0 {
                        out.coefficients[e] += &xy * BigInt::from(n);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_classes(&self, classes: &[usize]) -> Result<()> {
        match classes.iter().find(|&&c| c >= self.classes.len()) {
            Some(c) => Err(Error::OutOfRange(format!("class {c} of {}", self.classes.len()))),
            None => Ok(()),
        }
    }

    /// Number of tuples in `C_1 × … × C_ℓ` with product `x`, for every `x`.
    /// Computed by successive convolution, one class at a time.
    fn product_counts(&self, classes: &[usize], budget: Budget) -> Result<Vec<BigUint>> {
        self.check_classes(classes)?;
        let step: u128 = classes.iter().map(|&c| (self.group.order() * self.classes[c].len()) as u128).sum();
        budget.check(step)?;
        let mut counts = vec![BigUint::zero(); self.group.order()];
        counts[self.group.identity()] = BigUint::one();
        for &c in classes {
            let mut next = vec![BigUint::zero(); self.group.order()];
            for (x, n) in counts.iter().enumerate().filter(|(_, n)| !n.is_zero()) {
                for &y in &self.classes[c] {
                    next[self.group.mul(x, y)] += n;
                }
            }
            counts = next;
        }
        Ok(counts)
    }

    /// `λ(C_1, …, C_ℓ; C)`: tuples of the given classes whose product is the
    /// representative of `target`.
    pub fn lambda(&self, classes: &[usize], target: usize, budget: Budget) -> Result<BigUint> {
        self.lambda_at(classes, self.representative_checked(target)?, budget)
    }

    /// The same count with an arbitrary element in place of the representative.
    pub fn lambda_at(&self, classes: &[usize], x: usize, budget: Budget) -> Result<BigUint> {
        if x >= self.group.order() {
            return Err(Error::InvalidElement { index: x, order: self.group.order() });
        }
        Ok(self.product_counts(classes, budget)?.swap_remove(x))
    }

    fn representative_checked(&self, class: usize) -> Result<usize> {
        self.check_classes(&[class])?;
        Ok(self.representative(class))
    }

    /// `λ` by enumerating every tuple.
    pub fn lambda_naive(&self, classes: &[usize], target: usize, budget: Budget) -> Result<BigUint> {
        let rep = self.representative_checked(target)?;
        self.check_classes(classes)?;
        budget.check(classes.iter().map(|&c| self.classes[c].len() as u128).product())?;
        let mut index = vec![0usize; classes.len()];
        let mut count = 0u64;
        loop {
            let product = classes
                .iter()
                .zip(&index)
                .fold(self.group.identity(), |acc, (&c, &i)| self.group.mul(acc, self.classes[c][i]));
            if product == rep {
                count += 1;
            }
            // odometer with a per-position base
            let mut pos = classes.len();
            loop {
                if pos == 0 {
                    return Ok(BigUint::from(count));
                }
                pos -= 1;
                index[pos] += 1;
                if index[pos] < self.classes[classes[pos]].len() {
                    break;
                }
                index[pos] = 0;
            }
        }
    }

    fn check_coprime(&self, m: i64) -> Result<()> {
        if m.gcd(&(self.group.order() as i64)) != 1 {
            return Err(Error::NotCoprime { m, order: self.group.order() });
        }
        Ok(())
    }

    /// The class `C^m`, checked to be a single class.
    pub fn power_class(&self, class: usize, m: i64) -> Result<usize> {
        self.check_coprime(m)?;
        self.check_classes(&[class])?;
        let images: Vec<usize> = self.classes[class].iter().map(|&x| self.class_of[self.group.pow(x, m)]).collect();
        if images.iter().any(|&i| i != images[0]) {
            return Err(Error::Verification(format!("class {class} does not power into one class")));
        }
        Ok(images[0])
    }

    /// Burnside's map `Σ n_g g ↦ Σ n_g g^m` restricted to the centre.
    pub fn psi_power_map(&self, m: i64, a: &CenterElement) -> Result<CenterElement> {
        self.check(a)?;
        let mut out = self.zero();
        for (c, x) in a.coefficients.iter().enumerate() {
            out.coefficients[self.power_class(c, m)?] += x;
        }
        Ok(out)
    }

    /// Checks that the power map permutes the class sums and is
    /// multiplicative on every pair of them.
    pub fn verify_burnside(&self, m: i64) -> Result<bool> {
        let k = self.classes.len();
        let images = (0..k).map(|c| self.power_class(c, m)).collect::<Result<Vec<_>>>()?;
        let mut hit = vec![false; k];
        for &i in &images {
            if std::mem::replace(&mut hit[i], true) {
                return Ok(false);
            }
        }
        for c in 0..k {
            for d in 0..k {
                let product = self.multiply_center(&self.class_sum(c), &self.class_sum(d))?;
                let lhs = self.psi_power_map(m, &product)?;
                let rhs = self.multiply_center(&self.class_sum(images[c]), &self.class_sum(images[d]))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `λ(C̄; C) = λ(C̄^m; C^m)` for every class tuple of length `1..=max_len`
    /// and every target class.
    pub fn verify_lambda_invariance(&self, m: i64, max_len: usize, budget: Budget) -> Result<bool> {
        let k = self.classes.len();
        let images = (0..k).map(|c| self.power_class(c, m)).collect::<Result<Vec<_>>>()?;
        let tuples: u128 = (1..=max_len as u32).map(|l| (k as u128).pow(l)).sum();
        let per_tuple = max_len as u128 * (self.group.order() as u128).pow(2);
        budget.check(tuples.saturating_mul(per_tuple))?;
        for len in 1..=max_len {
            let mut tuple = vec![0usize; len];
            loop {
                let counts = self.product_counts(&tuple, budget)?;
                let mapped: Vec<usize> = tuple.iter().map(|&c| images[c]).collect();
                let mapped_counts = self.product_counts(&mapped, budget)?;
                for e in 0..k {
                    if counts[self.representative(e)] != mapped_counts[self.representative(images[e])] {
                        return Ok(false);
                    }
                }
                if !crate::words::advance(&mut tuple, k) {
                    break;
                }
            }
        }
        Ok(true)
    }

    /// The element as a coefficient vector over all group elements.
    pub fn to_group_ring(&self, a: &CenterElement) -> Result<Vec<BigInt>> {
        self.check(a)?;
        Ok((0..self.group.order()).map(|x| a.coefficients[self.class_of[x]].clone()).collect())
    }

    /// Class-sum coordinates of a group ring element, if it is central.
    pub fn from_group_ring(&self, v: &[BigInt]) -> Option<CenterElement> {
        if v.len() != self.group.order() {
            return None;
        }
        let coefficients: Vec<BigInt> = self.classes.iter().map(|c| v[c[0]].clone()).collect();
        let central = self.classes.iter().zip(&coefficients).all(|(c, x)| c.iter().all(|&g| v[g] == *x));
        central.then_some(CenterElement { group: self.group.id(), coefficients })
    }
}

/// Product in the full group ring by direct convolution.
pub fn group_ring_product(g: &FiniteGroup, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); g.order()];
    for (x, p) in a.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
        for (y, q) in b.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            out[g.mul(x, y)] += p * q;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn by_size(alg: &ClassAlgebra, size: usize, order: usize) -> usize {
        (0..alg.classes().len())
            .find(|&c| alg.classes()[c].len() == size && alg.group().order_of(alg.representative(c)) == order)
            .unwrap()
    }

    #[test]
    fn s3_transpositions() {
        let s3 = catalog("S3").unwrap();
        let alg = ClassAlgebra::new(&s3);
        let t = by_size(&alg, 3, 2);
        let r = by_size(&alg, 2, 3);
        let square = alg.multiply_center(&alg.class_sum(t), &alg.class_sum(t)).unwrap();
        let mut expected = alg.zero();
        expected.coefficients[0] = 3.into();
        expected.coefficients[r] = 3.into();
        assert_eq!(square, expected);
        assert_eq!(alg.lambda(&[t, t], 0, Budget::DEFAULT).unwrap(), BigUint::from(3u32));
        assert_eq!(alg.lambda(&[t, t], r, Budget::DEFAULT).unwrap(), BigUint::from(3u32));
        assert_eq!(alg.lambda_naive(&[t, t], r, Budget::DEFAULT).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn single_class_lambda() {
        let g = catalog("D4").unwrap();
        let alg = ClassAlgebra::new(&g);
        for c in 0..alg.classes().len() {
            for d in 0..alg.classes().len() {
                let expected = u32::from(c == d);
                assert_eq!(alg.lambda(&[c], d, Budget::DEFAULT).unwrap(), BigUint::from(expected));
            }
        }
    }

    #[test]
    fn identity_and_zero() {
        let g = catalog("Q8").unwrap();
        let alg = ClassAlgebra::new(&g);
        let x = alg.from_coefficients((0..alg.classes().len() as i64).map(|i| BigInt::from(i * 7 - 3)).collect()).unwrap();
        assert_eq!(alg.multiply_center(&alg.one(), &x).unwrap(), x);
        assert!(alg.multiply_center(&alg.zero(), &x).unwrap().is_zero());
    }

    #[test]
    fn power_maps() {
        let s3 = catalog("S3").unwrap();
        let alg = ClassAlgebra::new(&s3);
        for c in 0..3 {
            assert_eq!(alg.power_class(c, 5).unwrap(), c);
            assert_eq!(alg.power_class(c, 1).unwrap(), c);
        }
        assert!(matches!(alg.power_class(0, 3), Err(Error::NotCoprime { .. })));
        let c5 = catalog("C5").unwrap();
        let alg = ClassAlgebra::new(&c5);
        let g = alg.class_of(c5.index_of_name("g").unwrap());
        assert_eq!(alg.power_class(g, 2).unwrap(), alg.class_of(c5.index_of_name("g^2").unwrap()));
    }

    #[test]
    fn burnside_examples() {
        let s3 = ClassAlgebra::new(&catalog("S3").unwrap());
        assert!(s3.verify_burnside(5).unwrap());
        assert!(s3.verify_burnside(1).unwrap());
        let s4 = ClassAlgebra::new(&catalog("S4").unwrap());
        for m in [5, 7, 11] {
            assert!(s4.verify_burnside(m).unwrap());
        }
        let c7 = ClassAlgebra::new(&catalog("C7").unwrap());
        assert!(c7.verify_burnside(3).unwrap());
    }

    #[test]
    fn lambda_invariance_examples() {
        let s3 = ClassAlgebra::new(&catalog("S3").unwrap());
        assert!(s3.verify_lambda_invariance(5, 2, Budget::DEFAULT).unwrap());
        let q8 = ClassAlgebra::new(&catalog("Q8").unwrap());
        assert!(q8.verify_lambda_invariance(3, 2, Budget::DEFAULT).unwrap());
        let c5 = ClassAlgebra::new(&catalog("C5").unwrap());
        assert!(c5.verify_lambda_invariance(2, 3, Budget::DEFAULT).unwrap());
    }

    #[test]
    fn convolution_agrees() {
        for name in ["S3", "D4", "A4"] {
            let g = catalog(name).unwrap();
            let alg = ClassAlgebra::new(&g);
            for c in 0..alg.classes().len() {
                for d in 0..alg.classes().len() {
                    let a = alg.class_sum(c);
                    let b = alg.class_sum(d);
                    let direct = group_ring_product(
                        &g,
                        &alg.to_group_ring(&a).unwrap(),
                        &alg.to_group_ring(&b).unwrap(),
                    );
                    assert_eq!(alg.from_group_ring(&direct).unwrap(), alg.multiply_center(&a, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn class_lookup() {
        let c6 = catalog("C6").unwrap();
        let alg = ClassAlgebra::new(&c6);
        assert_eq!(alg.class_index("g^2").unwrap(), alg.class_of(c6.index_of_name("g^2").unwrap()));
        assert_eq!(alg.class_index("3").unwrap(), 3);
        assert!(alg.class_index("17").is_err());
        assert!(alg.class_index("zz").is_err());
    }
}
