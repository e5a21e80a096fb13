//! The (−β, l) transformation, its expansions, and the positive-base
//! baseline.

mod cylinder;
mod expansion;
mod renyi;
mod system;
mod word;

pub use cylinder::{cylinder, Cylinder, Interval};
pub use expansion::{
    digits_prefix, expand, expand_real, is_finite_expansion, value, value_in, ExpansionOutcome,
    ExpansionStatus, Finiteness, RealExpansion, DEFAULT_MAX_ITERS,
};
pub(crate) use expansion::run_orbit;
pub use renyi::{lex_compare, parry_admissible, renyi_dstar1, renyi_dstar1_outcome, renyi_expand};
pub use system::{make_system, NumerationSystem, Predicates, Preset};
pub use word::{comparison_bound, first_difference, DigitWord, WordKind};
