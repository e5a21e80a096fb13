//! Exact arithmetic over Q and Q(β).

mod classify;
mod complex;
mod field;
mod poly;
mod root;

pub use classify::{classify_base, roots_inside_unit_disk, BaseClass, Classification};
pub use complex::{complex_roots, conjugate_values};
pub use field::{field_arith, FieldElement, FieldOp, NumberField, Operand};
pub use poly::IntPolynomial;
pub use root::{irreducibility, AlgebraicReal, Irreducibility};

pub(crate) use complex::factor_with_root;
#[cfg(test)]
pub(crate) use poly::q_divrem;
pub(crate) use root::isolate_real_roots;

/// Arbitrary-precision rationals in canonical (reduced, positive
/// denominator) form.
pub type Rational = num_rational::BigRational;
