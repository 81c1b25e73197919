//! Fixed inputs shared by the benchmarks.

use concise_core::{catalog, FiniteGroup, Word};

/// Named groups of increasing size used across benchmarks.
pub const GROUPS: &[&str] = &["S3", "Q8", "A4", "S4", "A5"];

pub fn group(name: &str) -> FiniteGroup {
    catalog(name).expect("benchmark group is in the catalog")
}

pub fn word(text: &str) -> Word {
    text.parse().expect("benchmark word parses")
}
