//! Symbolic arithmetic in class-2 nilpotent groups through Mal'cev
//! coordinates, and the Hall polynomials of words.
//!
//! An element is `u(J, K) = b_1^{j_1} ⋯ b_s^{j_s} c_1^{k_1} ⋯ c_r^{k_r}` with
//! central `c_l` and `[b_k, b_k'] = ∏_l c_l^{κ((k,k'),l)}` for `k < k'`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Word;

/// Exponents of named variables; zero exponents are never stored.
pub type Monomial = BTreeMap<String, u32>;

/// A polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> IntPolynomial {
        IntPolynomial::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        p.add_term(Monomial::new(), c.into());
        p
    }

    pub fn var(name: impl Into<String>) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        p.add_term(Monomial::from([(name.into(), 1)]), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::constant(1), |acc, _| &acc * self)
    }

    /// Replaces each variable present in `values` by the given polynomial.
    pub fn substitute(&self, values: &BTreeMap<String, IntPolynomial>) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m, c) in &self.terms {
            let mut term = IntPolynomial::constant(c.clone());
            for (v, &e) in m {
                let factor = match values.get(v) {
                    Some(p) => p.pow(e),
                    None => IntPolynomial { terms: BTreeMap::from([(Monomial::from([(v.clone(), e)]), BigInt::one())]) },
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Value at an integer point; variables missing from `values` count as zero.
    pub fn eval(&self, values: &BTreeMap<String, BigInt>) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter().fold(c.clone(), |acc, (v, &e)| acc * values.get(v).cloned().unwrap_or_default().pow(e))
            })
            .sum()
    }

    /// Whether every monomial has total degree `d` (vacuous for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.values().sum::<u32>() == d)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        self + &(-other)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_default() += e;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher degree first, then variable order
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.values().sum::<u32>()));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            let vars: Vec<String> =
                m.iter().map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
            match (abs.is_one(), vars.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Structure constants of a class-2 group. `kappa` has one row per pair
/// `k < k'` in lexicographic order and one column per central generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Class2Presentation {
    pub s: usize,
    pub r: usize,
    pub kappa: Vec<Vec<i64>>,
}

impl Class2Presentation {
    pub fn new(s: usize, r: usize, kappa: Vec<Vec<i64>>) -> Result<Class2Presentation> {
        let p = Class2Presentation { s, r, kappa };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pairs = self.s * self.s.saturating_sub(1) / 2;
        if self.kappa.len() != pairs || self.kappa.iter().any(|row| row.len() != self.r) {
            return Err(Error::InvalidSpec(format!("kappa must be {pairs} x {}", self.r)));
        }
        Ok(())
    }

    /// `[b_1, b_2] = c_1`.
    pub fn heisenberg() -> Class2Presentation {
        Class2Presentation { s: 2, r: 1, kappa: vec![vec![1]] }
    }

    /// Free class-2 nilpotent group on `s` generators: one central generator per pair.
    pub fn free2(s: usize) -> Class2Presentation {
        let pairs = s * s.saturating_sub(1) / 2;
        let kappa = (0..pairs).map(|p| (0..pairs).map(|l| i64::from(p == l)).collect()).collect();
        Class2Presentation { s, r: pairs, kappa }
    }

    /// `heisenberg` or `free2:<s>`.
    pub fn preset(name: &str) -> Result<Class2Presentation> {
        match name.split_once(':') {
            None if name == "heisenberg" => Ok(Class2Presentation::heisenberg()),
            Some(("free2", s)) => {
                let s: usize = s.trim().parse().map_err(|_| Error::InvalidSpec(format!("bad rank in {name}")))?;
                Ok(Class2Presentation::free2(s))
            }
            _ => Err(Error::InvalidSpec(format!("unknown preset {name}"))),
        }
    }

    fn pair_index(&self, k: usize, k2: usize) -> usize {
        debug_assert!(k < k2);
        k * (2 * self.s - k - 1) / 2 + (k2 - k - 1)
    }

    pub fn n(&self) -> usize {
        self.s + self.r
    }

    pub fn identity(&self) -> SymbolicElement {
        SymbolicElement { j: vec![IntPolynomial::zero(); self.s], k: vec![IntPolynomial::zero(); self.r] }
    }

    /// Input `i` with a fresh variable per coordinate: `a{i}`, `b{i}`, … for the
    /// non-central ones and `z{i}` (or `z{l}_{i}` when `r > 1`) for the central ones.
    pub fn generic(&self, i: usize) -> SymbolicElement {
        let j = (0..self.s).map(|k| IntPolynomial::var(noncentral_name(self.s, k, i))).collect();
        let k = (0..self.r)
            .map(|l| IntPolynomial::var(if self.r == 1 { format!("z{i}") } else { format!("z{}_{i}", l + 1) }))
            .collect();
        SymbolicElement { j, k }
    }

    fn check(&self, e: &SymbolicElement) -> Result<()> {
        if e.j.len() != self.s || e.k.len() != self.r {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }
}

fn noncentral_name(s: usize, k: usize, i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxy";
    if s <= LETTERS.len() {
        format!("{}{i}", LETTERS[k] as char)
    } else {
        format!("b{}_{i}", k + 1)
    }
}

/// `u(J, K)` with polynomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicElement {
    pub j: Vec<IntPolynomial>,
    pub k: Vec<IntPolynomial>,
}

impl SymbolicElement {
    pub fn coordinates(&self) -> Vec<IntPolynomial> {
        self.j.iter().chain(&self.k).cloned().collect()
    }
}

/// `(J1, K1)·(J2, K2) = (J1 + J2, K1 + K2 + Δ)`. Collecting `b_k'^{J2_k'}`
/// to the left past `b_k^{J1_k}` for `k > k'` contributes
/// `[b_k, b_k']^{J1_k J2_k'}`, so `Δ_l = -Σ_{k'<k} κ((k',k),l)·J1_k·J2_k'`.
pub fn class2_multiply(p: &Class2Presentation, e1: &SymbolicElement, e2: &SymbolicElement) -> Result<SymbolicElement> {
    p.check(e1)?;
    p.check(e2)?;
    let j = e1.j.iter().zip(&e2.j).map(|(a, b)| a + b).collect();
    let mut k: Vec<IntPolynomial> = e1.k.iter().zip(&e2.k).map(|(a, b)| a + b).collect();
    for hi in 0..p.s {
        for lo in 0..hi {
            let cross = &e1.j[hi] * &e2.j[lo];
            if cross.is_zero() {
                continue;
            }
            let row = &p.kappa[p.pair_index(lo, hi)];
            for (l, &kap) in row.iter().enumerate() {
                if kap != 0 {
                    k[l] = &k[l] - &cross.scale(&BigInt::from(kap));
                }
            }
        }
    }
    Ok(SymbolicElement { j, k })
}

pub fn class2_inverse(p: &Class2Presentation, e: &SymbolicElement) -> Result<SymbolicElement> {
    p.check(e)?;
    let neg_j: Vec<IntPolynomial> = e.j.iter().map(|x| -x).collect();
    // (J, K)(-J, K') = (0, K + K' + Δ(J, -J)) fixes K'
    let probe = class2_multiply(p, e, &SymbolicElement { j: neg_j.clone(), k: vec![IntPolynomial::zero(); p.r] })?;
    Ok(SymbolicElement { j: neg_j, k: probe.k.iter().map(|x| -x).collect() })
}

/// Evaluates `w` with letter `i` (sorted, 1-based) sent to `inputs[i-1]`.
pub fn evaluate_symbolic(p: &Class2Presentation, w: &Word, inputs: &[SymbolicElement]) -> Result<SymbolicElement> {
    let letters: Vec<String> = w.support().0.into_iter().collect();
    if inputs.len() != letters.len() {
        return Err(Error::InvalidSpec(format!("{} inputs for {} letters", inputs.len(), letters.len())));
    }
    let mut acc = p.identity();
    for (l, e) in w.syllables() {
        let x = &inputs[letters.iter().position(|x| x == l).expect("letter in support")];
        let base = if *e < 0 { class2_inverse(p, x)? } else { x.clone() };
        for _ in 0..e.unsigned_abs() {
            acc = class2_multiply(p, &acc, &base)?;
        }
    }
    Ok(acc)
}

/// The `s + r` coordinate polynomials of the word map on generic inputs;
/// the `i`-th sorted letter of `w` gets the variables of `generic(i)`.
pub fn hall_w_polynomials(p: &Class2Presentation, w: &Word) -> Result<Vec<IntPolynomial>> {
    p.validate()?;
    let inputs: Vec<SymbolicElement> = (1..=w.support().len()).map(|i| p.generic(i)).collect();
    Ok(evaluate_symbolic(p, w, &inputs)?.coordinates())
}

/// Central output coordinates of `hall_w_polynomials` with every central
/// input coordinate set to zero.
pub fn central_partial(p: &Class2Presentation, w: &Word) -> Result<Vec<IntPolynomial>> {
    p.validate()?;
    let inputs: Vec<SymbolicElement> = (1..=w.support().len())
        .map(|i| SymbolicElement { k: vec![IntPolynomial::zero(); p.r], ..p.generic(i) })
        .collect();
    Ok(evaluate_symbolic(p, w, &inputs)?.k)
}

/// Substitutes `v ↦ q·v` for a fresh `q` and compares with `q²·p`.
/// The zero polynomial passes.
pub fn verify_homogeneity_degree2(p: &Class2Presentation, w: &Word) -> Result<bool> {
    let partials = central_partial(p, w)?;
    let vars: BTreeSet<String> = partials.iter().flat_map(IntPolynomial::variables).collect();
    let q_name = crate::formulae::fresh_name("q", &vars);
    let q = IntPolynomial::var(q_name);
    let scaling: BTreeMap<String, IntPolynomial> = vars.iter().map(|v| (v.clone(), &q * &IntPolynomial::var(v.clone()))).collect();
    let q2 = &q * &q;
    Ok(partials.iter().all(|poly| poly.substitute(&scaling) == &q2 * poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int(x: i64) -> IntPolynomial {
        IntPolynomial::constant(x)
    }

    fn element(j: &[i64], k: &[i64]) -> SymbolicElement {
        SymbolicElement { j: j.iter().map(|&x| int(x)).collect(), k: k.iter().map(|&x| int(x)).collect() }
    }

    fn as_ints(e: &SymbolicElement) -> Vec<i64> {
        e.coordinates()
            .iter()
            .map(|p| i64::try_from(p.eval(&BTreeMap::new())).unwrap())
            .collect()
    }

    /// Unitriangular (a, b, c) is `x^a y^b z^(c - ab)`.
    fn to_malcev(m: [i64; 3]) -> SymbolicElement {
        element(&m[..2], &[m[2] - m[0] * m[1]])
    }

    #[test]
    fn heisenberg_matrix_oracle() {
        let h = Class2Presentation::heisenberg();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-5..=5));
            let b: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-5..=5));
            let matrix = [a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]];
            let product = class2_multiply(&h, &to_malcev(a), &to_malcev(b)).unwrap();
            assert_eq!(product, to_malcev(matrix));
        }
    }

    #[test]
    fn identity_and_central() {
        let h = Class2Presentation::free2(3);
        let e = h.generic(1);
        assert_eq!(class2_multiply(&h, &e, &h.identity()).unwrap(), e);
        let a = element(&[0, 0, 0], &[1, 2, 3]);
        let b = element(&[0, 0, 0], &[4, -2, 0]);
        assert_eq!(as_ints(&class2_multiply(&h, &a, &b).unwrap()), vec![0, 0, 0, 5, 0, 3]);
        let inv = class2_inverse(&h, &e).unwrap();
        assert_eq!(class2_multiply(&h, &e, &inv).unwrap(), h.identity());
        assert_eq!(class2_multiply(&h, &inv, &e).unwrap(), h.identity());
    }

    #[test]
    fn associativity_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for s in 1..=3 {
            for r in 1..=3 {
                let pairs = s * (s - 1) / 2;
                let kappa = (0..pairs).map(|_| (0..r).map(|_| rng.gen_range(-2..=2)).collect()).collect();
                let p = Class2Presentation::new(s, r, kappa).unwrap();
                let (x, y, z) = (p.generic(1), p.generic(2), p.generic(3));
                let left = class2_multiply(&p, &class2_multiply(&p, &x, &y).unwrap(), &z).unwrap();
                let right = class2_multiply(&p, &x, &class2_multiply(&p, &y, &z).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn hall_polynomials_examples() {
        let h = Class2Presentation::heisenberg();
        let x = hall_w_polynomials(&h, &parse_word("x").unwrap()).unwrap();
        assert_eq!(x, h.generic(1).coordinates());
        let prod = hall_w_polynomials(&h, &parse_word("x1 x2").unwrap()).unwrap();
        assert_eq!(prod, class2_multiply(&h, &h.generic(1), &h.generic(2)).unwrap().coordinates());
        let comm = hall_w_polynomials(&h, &parse_word("[x1,x2]").unwrap()).unwrap();
        assert!(comm[0].is_zero() && comm[1].is_zero());
        assert_eq!(comm[2].to_string(), "a1*b2 - a2*b1");
    }

    #[test]
    fn central_partials() {
        let f = Class2Presentation::free2(2);
        let p = central_partial(&f, &parse_word("[x1,x2]").unwrap()).unwrap();
        let det = &(&IntPolynomial::var("a1") * &IntPolynomial::var("b2"))
            - &(&IntPolynomial::var("a2") * &IntPolynomial::var("b1"));
        assert_eq!(p, vec![det]);
        let single = central_partial(&f, &parse_word("x1").unwrap()).unwrap();
        assert!(single.iter().all(IntPolynomial::is_zero));
        let h = Class2Presentation::heisenberg();
        let sq = central_partial(&h, &parse_word("x1^2 x2^2").unwrap()).unwrap();
        // matrix oracle: (a1, b1, 0)^2 (a2, b2, 0)^2 over integer points
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-5..=5));
            let mul = |a: [i64; 3], b: [i64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]];
            let x = to_matrix(v[0], v[1]);
            let y = to_matrix(v[2], v[3]);
            let m = mul(mul(mul(x, x), y), y);
            let point = BTreeMap::from([
                ("a1".to_string(), BigInt::from(v[0])),
                ("b1".to_string(), BigInt::from(v[1])),
                ("a2".to_string(), BigInt::from(v[2])),
                ("b2".to_string(), BigInt::from(v[3])),
            ]);
            assert_eq!(sq[0].eval(&point), BigInt::from(m[2] - m[0] * m[1]));
        }
    }

    /// Unitriangular matrix of `x^a y^b`.
    fn to_matrix(a: i64, b: i64) -> [i64; 3] {
        [a, b, a * b]
    }

    #[test]
    fn homogeneity() {
        let h = Class2Presentation::heisenberg();
        assert!(verify_homogeneity_degree2(&h, &parse_word("[x1,x2]").unwrap()).unwrap());
        assert!(verify_homogeneity_degree2(&h, &parse_word("x1").unwrap()).unwrap());
        let f4 = Class2Presentation::free2(4);
        assert!(verify_homogeneity_degree2(&f4, &parse_word("[x1,x2][x3,x4]").unwrap()).unwrap());
        // the full Hall polynomial of a product is not homogeneous
        let prod = hall_w_polynomials(&h, &parse_word("x1 x2").unwrap()).unwrap();
        assert!(!prod[2].is_homogeneous(2));
    }

    #[test]
    fn mod_97_consistency() {
        // Heisenberg group over Z/97 as unitriangular matrices
        const P: i64 = 97;
        let mul = |a: [i64; 3], b: [i64; 3]| {
            [(a[0] + b[0]) % P, (a[1] + b[1]) % P, (a[2] + b[2] + a[0] * b[1]) % P]
        };
        let inv = |a: [i64; 3]| {
            let (x, y) = ((P - a[0]) % P, (P - a[1]) % P);
            [x, y, ((a[0] * a[1] - a[2]) % P + P) % P]
        };
        let h = Class2Presentation::heisenberg();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for text in ["[x1,x2]", "x1^2 x2^-3 x1", "[x1,x2]^x3 x3^2", "x1^3 [x2,x3^-1]"] {
            let w = parse_word(text).unwrap();
            let f = hall_w_polynomials(&h, &w).unwrap();
            let m = w.support().len();
            for _ in 0..20 {
                let inputs: Vec<[i64; 3]> = (0..m).map(|_| std::array::from_fn(|_| rng.gen_range(0..P))).collect();
                let mut point = BTreeMap::new();
                for (i, x) in inputs.iter().enumerate() {
                    let mal = to_malcev(*x);
                    point.insert(format!("a{}", i + 1), BigInt::from(x[0]));
                    point.insert(format!("b{}", i + 1), BigInt::from(x[1]));
                    point.insert(format!("z{}", i + 1), mal.k[0].eval(&BTreeMap::new()));
                }
                let letters: Vec<String> = w.support().0.into_iter().collect();
                let direct = w.syllables().iter().fold([0, 0, 0], |acc, (l, e)| {
                    let x = inputs[letters.iter().position(|y| y == l).unwrap()];
                    let base = if *e < 0 { inv(x) } else { x };
                    (0..e.unsigned_abs()).fold(acc, |acc, _| mul(acc, base))
                });
                let coords: Vec<i64> = f
                    .iter()
                    .map(|p| i64::try_from(p.eval(&point) % BigInt::from(P)).unwrap().rem_euclid(P))
                    .collect();
                let expected_k = (direct[2] - direct[0] * direct[1]).rem_euclid(P);
                assert_eq!(coords, vec![direct[0], direct[1], expected_k], "{text}");
            }
        }
    }

    #[test]
    fn presets_and_display() {
        assert_eq!(Class2Presentation::preset("heisenberg").unwrap(), Class2Presentation::heisenberg());
        assert_eq!(Class2Presentation::preset("free2:3").unwrap().r, 3);
        assert!(Class2Presentation::preset("free3:2").is_err());
        assert!(Class2Presentation::new(3, 1, vec![vec![1]]).is_err());
        let p = &(&IntPolynomial::var("x").pow(2) - &int(3)) + &IntPolynomial::var("y").scale(&BigInt::from(-2));
        assert_eq!(p.to_string(), "x^2 - 2*y - 3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
