//! Which digit strings occur as expansions: the alternate order, the
//! suffix criterion, the automaton of admissible prefixes, and a check of
//! claimed reference strings.

mod automaton;
mod order;
mod refute;

pub use automaton::{build_automaton, ShiftAutomaton};
pub use order::{alt_cmp, alt_compare, gora_conditions, is_admissible, AltOrdering};
pub use refute::{refute_reference_claim_is, value_equation, ReferenceClaim};
