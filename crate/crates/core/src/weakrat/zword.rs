//! Products of conjugated powers of weakly rational words by products of Ore words.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::IndependentChoiceSystem;
use crate::error::{Error, Result};
use crate::words::Word;

/// Input of the z-word construction. Indices are 0-based: `t[k]` selects a
/// weakly rational word, `j[k]` lists the Ore words whose product is `d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZWordSpec {
    pub wr_words: Vec<Word>,
    pub ore_words: Vec<Word>,
    pub n: usize,
    pub t: Vec<usize>,
    pub mu: Vec<i64>,
    pub s: Vec<usize>,
    pub j: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuiltZ {
    pub z: Word,
    /// Equivalent spec in which no `d_k` is empty.
    pub normalized: ZWordSpec,
    /// Letters introduced by the normalization.
    pub fresh: Vec<String>,
}

impl ZWordSpec {
    /// Checks lengths, index ranges, disjoint supports, disjoint images across
    /// different `t` values, and that each `t`-fibre of images is an
    /// independent choice system (counting repeated images separately, and
    /// allowing at most one empty image).
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidSpec(msg));
        for (name, len) in [("t", self.t.len()), ("mu", self.mu.len()), ("s", self.s.len()), ("j", self.j.len())] {
            if len != self.n {
                return invalid(format!("{name} has length {len}, expected n = {}", self.n));
            }
        }
        for k in 0..self.n {
            if self.t[k] >= self.wr_words.len() {
                return invalid(format!("t[{k}] = {} is not a wr word index", self.t[k]));
            }
            if self.j[k].len() != self.s[k] {
                return invalid(format!("j[{k}] has length {}, expected s[{k}] = {}", self.j[k].len(), self.s[k]));
            }
            if let Some(bad) = self.j[k].iter().find(|&&q| q >= self.ore_words.len()) {
                return invalid(format!("j[{k}] contains {bad}, not an ore word index"));
            }
        }
        let labelled: Vec<(String, &Word)> = self
            .wr_words
            .iter()
            .enumerate()
            .map(|(i, w)| (format!("wr_words[{i}]"), w))
            .chain(self.ore_words.iter().enumerate().map(|(i, w)| (format!("ore_words[{i}]"), w)))
            .collect();
        for (a, (name_a, wa)) in labelled.iter().enumerate() {
            for (name_b, wb) in &labelled[a + 1..] {
                if !wa.is_disjoint(wb) {
                    return invalid(format!("supports not disjoint: {name_a} and {name_b}"));
                }
            }
        }
        let images: Vec<BTreeSet<usize>> = self.j.iter().map(|js| js.iter().copied().collect()).collect();
        for k in 0..self.n {
            for k2 in k + 1..self.n {
                if self.t[k] != self.t[k2] && !images[k].is_disjoint(&images[k2]) {
                    return invalid(format!(
                        "disjoint-images condition fails: j[{k}] and j[{k2}] overlap while t differs"
                    ));
                }
            }
        }
        for i in 0..self.wr_words.len() {
            let fibre: Vec<&BTreeSet<usize>> = (0..self.n).filter(|&k| self.t[k] == i).map(|k| &images[k]).collect();
            let empties = fibre.iter().filter(|x| x.is_empty()).count();
            let members: Vec<BTreeSet<usize>> = fibre.into_iter().filter(|x| !x.is_empty()).cloned().collect();
            let ground = members.iter().flatten().copied().collect();
            let sys = IndependentChoiceSystem::new(ground, members)?;
            if empties > 1 || sys.find_order()?.is_none() {
                return invalid(format!(
                    "independent-choice condition fails for wr_words[{i}]: its images admit no valid order"
                ));
            }
        }
        Ok(())
    }

    pub fn d(&self, k: usize) -> Word {
        self.j[k].iter().fold(Word::identity(), |acc, &q| acc.mul(&self.ore_words[q]))
    }

    /// `∏_k (w_{t(k)}^{μ(k)})^{d_k}` without validation.
    pub fn product(&self) -> Word {
        (0..self.n).fold(Word::identity(), |acc, k| {
            acc.mul(&self.wr_words[self.t[k]].pow(self.mu[k]).conjugate(&self.d(k)))
        })
    }

    fn letters(&self) -> BTreeSet<String> {
        self.wr_words.iter().chain(&self.ore_words).flat_map(|w| w.support().0).collect()
    }
}

/// Validates the spec and builds `z`.
///
/// When some `d_k` is empty, the returned normalized spec conjugates the
/// affected `w_i` by a fresh letter `a1`, `a2`, … and prefixes the matching
/// `d_k` with its inverse. This leaves `z` itself unchanged, which is checked.
pub fn build_z(spec: &ZWordSpec) -> Result<BuiltZ> {
    spec.validate()?;
    let z = spec.product();
    let mut normalized = spec.clone();
    let mut taken = spec.letters();
    let mut fresh = Vec::new();
    let mut counter = 0;
    for i in 0..spec.wr_words.len() {
        let fibre: Vec<usize> = (0..spec.n).filter(|&k| spec.t[k] == i).collect();
        if !fibre.iter().any(|&k| spec.s[k] == 0) {
            continue;
        }
        let letter = loop {
            counter += 1;
            let candidate = format!("a{counter}");
            if taken.insert(candidate.clone()) {
                break candidate;
            }
        };
        let x = Word::letter(letter.clone());
        normalized.wr_words[i] = spec.wr_words[i].conjugate(&x);
        normalized.ore_words.push(x.inverse());
        let index = normalized.ore_words.len() - 1;
        for k in fibre {
            normalized.j[k].insert(0, index);
            normalized.s[k] += 1;
        }
        fresh.push(letter);
    }
    if normalized.product() != z {
        return Err(Error::Verification("normalization changed z".into()));
    }
    Ok(BuiltZ { z, normalized, fresh })
}
