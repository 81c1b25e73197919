//! Named groups.
//!
//! Grammar: `C<n>` cyclic, `D<n>` dihedral of order `2n`, `S<n>` and `A<n>`
//! for `n ≤ 5`, `Q8`, and direct products `X x Y` (also `X × Y`).
//!
//! Canonical generators: `C<n>` has generator `g` at index 1; `D<n>` has the
//! rotation `r` at index 1 and the reflection `s` at index `n`; `S<n>` is
//! generated by `(1 2 … n)` and `(1 2)`; `A<n>` by the 3-cycles `(1 2 k)`.

use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// The fixed list of named groups used by batch checks, ordered by size.
pub const CATALOG: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2 x C2", "C5", "C6", "S3", "C7", "C8", "D4", "Q8", "C2 x C4",
    "C2 x C2 x C2", "C9", "C3 x C3", "C10", "D5", "C11", "C12", "D6", "A4", "S3 x C2", "D8",
    "Q8 x C2", "S4", "D12", "S4 x C2", "A5", "S5",
];

/// Catalog names whose group has order at most `max_order`.
pub fn catalog_names(max_order: usize) -> Vec<&'static str> {
    CATALOG
        .iter()
        .copied()
        .filter(|name| catalog(name).map(|g| g.order() <= max_order).unwrap_or(false))
        .collect()
}

/// Looks up a group by name.
pub fn catalog(name: &str) -> Result<FiniteGroup> {
    let factors: Vec<&str> = name
        .split('×')
        .flat_map(|part| part.split(" x "))
        .map(str::trim)
        .collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    let mut groups = factors.iter().map(|f| atom(f));
    let mut acc = groups.next().ok_or_else(|| Error::UnknownGroup(name.to_string()))??;
    for g in groups {
        let g = g?;
        if acc.order().saturating_mul(g.order()) > DEFAULT_ORDER_CAP {
            return Err(Error::GroupTooLarge { cap: DEFAULT_ORDER_CAP });
        }
        acc = acc.direct_product(&g);
    }
    Ok(acc)
}

fn atom(name: &str) -> Result<FiniteGroup> {
    if name == "Q8" {
        return Ok(quaternion());
    }
    let unknown = || Error::UnknownGroup(name.to_string());
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    match family {
        'C' => {
            if n == 0 || n > DEFAULT_ORDER_CAP {
                return Err(Error::OutOfRange(format!("C{n}: n must be in 1..={DEFAULT_ORDER_CAP}")));
            }
            Ok(cyclic(n))
        }
        'D' => {
            if n == 0 || 2 * n > DEFAULT_ORDER_CAP {
                return Err(Error::OutOfRange(format!("D{n}: 2n must be in 2..={DEFAULT_ORDER_CAP}")));
            }
            Ok(dihedral(n))
        }
        'S' => {
            if n == 0 || n > 5 {
                return Err(Error::OutOfRange(format!("S{n}: n must be in 1..=5")));
            }
            symmetric(n)
        }
        'A' => {
            if n == 0 || n > 5 {
                return Err(Error::OutOfRange(format!("A{n}: n must be in 1..=5")));
            }
            alternating(n)
        }
        _ => Err(unknown()),
    }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
    let names = (0..n).map(|k| power_name("g", k)).collect();
    FiniteGroup::from_flat(n, table, Some(names)).expect("cyclic table is a group")
}

fn dihedral(n: usize) -> FiniteGroup {
    // index i + n*e stands for r^i s^e, and s r s = r^-1.
    let order = 2 * n;
    let mul = |x: usize, y: usize| {
        let (a, e) = (x % n, x / n);
        let (b, f) = (y % n, y / n);
        let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
        rot + n * ((e + f) % 2)
    };
    let table = (0..order * order).map(|z| mul(z / order, z % order) as u32).collect();
    let names = (0..order)
        .map(|x| {
            let (a, e) = (x % n, x / n);
            match (a, e) {
                (_, 0) => power_name("r", a),
                (0, _) => "s".to_string(),
                _ => format!("{} s", power_name("r", a)),
            }
        })
        .collect();
    FiniteGroup::from_flat(order, table, Some(names)).expect("dihedral table is a group")
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 1 {
        return FiniteGroup::from_permutation_generators(1, &[]);
    }
    let long = format!(
        "({})",
        (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    );
    FiniteGroup::from_permutation_generators(n, &[&long, "(1 2)"])
}

fn alternating(n: usize) -> Result<FiniteGroup> {
    let gens: Vec<String> = (3..=n).map(|k| format!("(1 2 {k})")).collect();
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    FiniteGroup::from_permutation_generators(n, &gens)
}

fn quaternion() -> FiniteGroup {
    // Units ±1, ±i, ±j, ±k encoded as (sign, unit) with index 2*unit + sign.
    const UNITS: [&str; 4] = ["1", "i", "j", "k"];
    // unit products: (unit, sign flip)
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 3) => (1, 0),
            (3, 1) => (2, 0),
            (2, 1) => (3, 1),
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mul = |x: usize, y: usize| {
        let (u, flip) = unit_mul(x / 2, y / 2);
        2 * u + ((x % 2 + y % 2 + flip) % 2)
    };
    let table = (0..64).map(|z| mul(z / 8, z % 8) as u32).collect();
    let names = (0..8)
        .map(|x| match (x / 2, x % 2) {
            (0, 0) => "e".to_string(),
            (0, _) => "-1".to_string(),
            (u, 0) => UNITS[u].to_string(),
            (u, _) => format!("-{}", UNITS[u]),
        })
        .collect();
    FiniteGroup::from_flat(8, table, Some(names)).expect("quaternion table is a group")
}
