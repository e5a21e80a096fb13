use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebraic::{factor_with_root, isolate_real_roots, AlgebraicReal, IntPolynomial, NumberField};
use crate::error::{Error, Result};
use crate::numeration::{DigitWord, NumerationSystem, Preset};
use crate::reference::{reference, Reference};

/// Verdict on a claimed left reference string of the Ito-Sadahiro system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReferenceClaim {
    /// Some base solving the value equation really has this `d(l)`.
    IsReference { beta: String },
    /// The equation forces `beta`, whose actual `d(l)` differs.
    NotReference {
        #[serde(skip)]
        beta: AlgebraicReal,
        beta_text: String,
        actual_dl: DigitWord,
    },
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

/// Integer polynomial in β whose roots include every β with
/// `•w = −β/(β+1)` in base `−β`.
///
/// With `y = −β`, `w = u v^ω`, `U = Σ uᵢ y^{n−i}` and `V = Σ vⱼ y^{m−j}`, the
/// value is `(U (y^m − 1) + V) / (y^n (y^m − 1))` and the target is
/// `y/(1 − y)`.
pub fn value_equation(w: &DigitWord) -> Vec<BigInt> {
    let w = w.to_infinite();
    let (n, m) = (w.pre().len(), w.per().len());
    let horner = |d: &[i64]| -> Vec<BigInt> { d.iter().rev().map(|&x| BigInt::from(x)).collect() };
    let u = if n == 0 { vec![BigInt::zero()] } else { horner(w.pre()) };
    let v = horner(w.per());
    let mut ym1 = vec![BigInt::zero(); m + 1];
    ym1[0] = -BigInt::one();
    ym1[m] = BigInt::one();
    let one_minus_y = vec![BigInt::one(), -BigInt::one()];
    let lhs = poly_mul(&poly_add(&poly_mul(&u, &ym1), &v), &one_minus_y);
    let mut shift = vec![BigInt::zero(); n + 1];
    shift.push(BigInt::one());
    let rhs = poly_mul(&shift, &ym1);
    let p_y: Vec<BigInt> = poly_add(&lhs, &rhs.iter().map(|c| -c).collect::<Vec<_>>());
    // substitute y = −β
    p_y.into_iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c })
        .collect()
}

/// Solves `•lcand = −β/(β+1)` for real `β > 1` and recomputes `d(l)` of the
/// Ito-Sadahiro system for each solution.
pub fn refute_reference_claim_is(lcand: &DigitWord, max_iters: usize) -> Result<ReferenceClaim> {
    let p = IntPolynomial::new(value_equation(lcand))?;
    let one = BigRational::one();
    let bound = p.root_bound();
    let roots = isolate_real_roots(&p, &one, &bound);
    let mut first = None;
    let mut fallback = None;
    let target = lcand.to_infinite();
    for (lo, hi) in roots {
        let factor = factor_with_root(&p, &lo, &hi);
        let beta = AlgebraicReal::new(factor, lo, hi)?;
        let field = match NumberField::new(beta.clone()) {
            Ok(f) => f,
            Err(Error::Reducible(_)) => continue,
            Err(e) => return Err(e),
        };
        let s = NumerationSystem::preset(&field, Preset::ItoSadahiro)?;
        let dl = reference(&s, Reference::DL, max_iters);
        if !dl.is_periodic() {
            continue;
        }
        if dl.digits == target {
            return Ok(ReferenceClaim::IsReference { beta: beta.to_string() });
        }
        let verdict = ReferenceClaim::NotReference { beta_text: beta.to_string(), beta, actual_dl: dl.digits };
        // a root whose alphabet cannot even spell the claim is a last resort
        if target.digits().all(|d| s.in_alphabet(d)) {
            first.get_or_insert(verdict);
        } else {
            fallback.get_or_insert(verdict);
        }
    }
    first.or(fallback).ok_or(Error::NoRealBase)
}
