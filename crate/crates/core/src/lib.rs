//! Executable group theory and finite model theory at desk scale.
//!
//! The crate evaluates first-order formulae in the language of groups over
//! finite groups given by Cayley tables, checks weak rationality of definable
//! sets, computes in the centre of integral group rings, and derives Hall
//! polynomials for class-2 nilpotent presentations.
//!
//! Conventions shared by every module:
//!
//! * group products read left to right: `table[i][j]` is "`i` then `j`";
//! * conjugation is `x^y = y⁻¹xy` and the commutator is `[x, y] = x⁻¹y⁻¹xy`;
//! * longer commutators are left-normed: `[x, y, z] = [[x, y], z]`.

pub mod boolcomb;
pub mod classring;
pub mod error;
pub mod formulae;
pub mod groups;
pub mod nilpotent;
pub mod suite;
mod syntax;
pub mod weakrat;
pub mod words;

pub use boolcomb::BoolComb;
pub use classring::{CenterElement, ClassAlgebra};
pub use error::{Error, Result};
pub use formulae::{Classification, Formula, PrenexFormula};
pub use groups::{catalog, ElementSubset, FiniteGroup, GroupElement};
pub use nilpotent::{Class2Presentation, IntPolynomial, SymbolicElement};
pub use weakrat::{IndependentChoiceSystem, WitnessSet, ZWordSpec};
pub use words::{LetterSet, Word};

/// Environment variable that overrides the default evaluation budget.
pub const BUDGET_ENV: &str = "CONCISE_BUDGET";

/// Upper bound on the number of elementary evaluations a brute-force
/// routine may perform before it refuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    /// The default budget, overridden by `CONCISE_BUDGET` when it parses.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Budget::DEFAULT)
    }

    pub(crate) fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
