//! Exact arithmetic for negative-base numeration systems with a shifted
//! domain `[l, l + 1)`.

pub mod admissibility;
pub mod algebraic;
pub mod error;
pub mod format;
pub mod numeration;
pub mod oracle;
pub mod reference;

pub use error::{Error, Result};
