//! Membership in the outer commutator ideal and the letter set `P`.
//!
//! A word `[v, u] = v⁻¹u⁻¹vu` with disjoint `v`, `u` has no cancellation
//! between the four blocks, so its syllables split as `v⁻¹ | u⁻¹ | v | u`.
//! Candidate splits are tried with `v` as short as possible; the first split
//! that satisfies the recursion decides.

use super::{LetterSet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealMembership {
    pub member: bool,
    /// `P(w)` when `w` is a member.
    pub p: Option<LetterSet>,
}

/// All `(v, u)` with `w = [v, u]`, `v` and `u` nontrivial and disjoint, shortest `v` first.
fn commutator_splits(w: &Word) -> impl Iterator<Item = (Word, Word)> + '_ {
    let s = w.syllables();
    let half = if s.len().is_multiple_of(2) { s.len() / 2 } else { 0 };
    (1..half).filter_map(move |p| {
        let q = half - p;
        let v = Word { syllables: s[p + q..2 * p + q].to_vec() };
        let u = Word { syllables: s[2 * p + q..].to_vec() };
        let shape = s[..p] == v.inverse().syllables[..] && s[p..p + q] == u.inverse().syllables[..];
        (shape && v.is_disjoint(&u)).then_some((v, u))
    })
}

fn p_set(w: &Word) -> Option<LetterSet> {
    if let Some(x) = w.as_letter() {
        return Some([x].into_iter().collect());
    }
    commutator_splits(w).find_map(|(v, u)| {
        let pv = p_set(&v)?;
        Some(match p_set(&u) {
            Some(pu) => pv.union(&pu),
            None => pv,
        })
    })
}

/// Decides `w ∈ I` and returns `P(w)` for members.
pub fn ideal_membership(w: &Word) -> IdealMembership {
    let p = p_set(w);
    IdealMembership { member: p.is_some(), p }
}

/// Letters, and `[v, u]` for disjoint outer commutator words `v`, `u`.
pub fn is_outer_commutator(w: &Word) -> bool {
    w.as_letter().is_some()
        || commutator_splits(w).any(|(v, u)| is_outer_commutator(&v) && is_outer_commutator(&u))
}
