use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// A permutation of `0..degree` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }
}

/// Parses cycle notation such as `(1 2)(3 4 5)` over points `1..=degree`.
///
/// Points inside a cycle may be separated by spaces or commas. The empty
/// string and `()` denote the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let bad = |reason: &str| Error::CycleNotation { text: text.to_string(), reason: reason.into() };
    let mut image: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(bad("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = &rest[1..close];
        rest = rest[close + 1..].trim_start();
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let p: usize = s.parse().map_err(|_| bad("point is not a positive integer"))?;
                if p == 0 || p > degree {
                    return Err(bad("point outside 1..=degree"));
                }
                Ok(p - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        for &p in &points {
            if moved[p] {
                return Err(bad("point occurs in more than one place"));
            }
            moved[p] = true;
        }
        for (k, &p) in points.iter().enumerate() {
            image[p] = points[(k + 1) % points.len()];
        }
    }
    Ok(Permutation(image))
}

/// Cycle notation with 1-based points; `()` for the identity.
pub fn format_cycles(p: &Permutation) -> String {
    let n = p.0.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p.0[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p.0[x];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Breadth-first closure of the generators, identity first.
pub(crate) fn closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, HashMap<Permutation, usize>)> {
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let p = elements[i].then(g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    Ok((elements, index))
}

pub(crate) fn table(elements: &[Permutation]) -> Vec<u32> {
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut table = Vec::with_capacity(elements.len() * elements.len());
    for a in elements {
        for b in elements {
            table.push(index[&a.then(b)] as u32);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let p = parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.0, vec![1, 2, 0, 4, 3]);
        assert_eq!(format_cycles(&p), "(1 2 3)(4 5)");
        assert!(parse_cycles("()", 3).unwrap().is_identity());
        assert!(parse_cycles("", 3).unwrap().is_identity());
        assert_eq!(parse_cycles("(1,3)", 3).unwrap().0, vec![2, 1, 0]);
    }

    #[test]
    fn malformed_cycles() {
        for bad in ["(1 2", "1 2)", "(1 4)", "(0 1)", "(1 1)", "(1 2)(2 3)", "(a b)"] {
            assert!(
                matches!(parse_cycles(bad, 3), Err(Error::CycleNotation { .. })),
                "{bad} should be rejected"
            );
        }
    }
}
