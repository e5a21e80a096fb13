//! Pisot / Salem classification of real algebraic integers greater than one.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{int_to_q, IntPolynomial, Sturm};
use super::root::{AlgebraicReal, Irreducibility};

/// Graeffe squarings attempted before giving up.
pub const GRAEFFE_ROUNDS: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseClass {
    Pisot,
    Salem,
    Neither,
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseClass::Pisot => "Pisot",
            BaseClass::Salem => "Salem",
            BaseClass::Neither => "Neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: BaseClass,
    /// Set when irreducibility of the polynomial could not be established;
    /// the verdict then refers to the polynomial as given.
    pub irreducibility_unverified: bool,
    pub notes: Vec<String>,
}

pub fn classify_base(beta: &AlgebraicReal) -> Classification {
    let p = beta.minpoly();
    let mut out = Classification {
        class: BaseClass::Neither,
        irreducibility_unverified: false,
        notes: Vec::new(),
    };
    if !p.is_monic() {
        out.notes.push("not an algebraic integer".into());
        return out;
    }
    if p.degree() == 1 {
        out.class = BaseClass::Pisot;
        return out;
    }
    match beta.irreducibility() {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(why) => {
            out.notes.push(format!("reducible polynomial: {why}"));
            return out;
        }
        Irreducibility::Unverified => out.irreducibility_unverified = true,
    }
    if p.degree() >= 4 && p.is_self_reciprocal() {
        out.class = salem_by_trace(p);
        if out.class == BaseClass::Neither {
            out.notes.push("self-reciprocal with conjugates off the unit circle".into());
        }
        return out;
    }
    match roots_inside_unit_disk(p) {
        Some(m) if m == p.degree() - 1 => out.class = BaseClass::Pisot,
        Some(m) => out.notes.push(format!("{m} of {} roots inside the unit disk", p.degree())),
        None => out.notes.push("undecided: conjugate moduli too close to 1".into()),
    }
    out
}

/// For a self-reciprocal `p` of even degree `2m`, writes `p(x) = x^m h(x + 1/x)`
/// and counts roots of `h` in `(-2, 2)`; each such root is a conjugate pair on
/// the unit circle.
fn salem_by_trace(p: &IntPolynomial) -> BaseClass {
    let d = p.degree();
    if d % 2 == 1 {
        return BaseClass::Neither;
    }
    let m = d / 2;
    let a = p.coeffs();
    // Dickson polynomials: x^k + x^-k = D_k(x + 1/x)
    let mut dickson: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 2..=m {
        let prev = &dickson[k - 1];
        let prev2 = &dickson[k - 2];
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev2.iter().enumerate() {
            next[i] -= c;
        }
        dickson.push(next);
    }
    let mut h = vec![BigInt::zero(); m + 1];
    h[0] += &a[m];
    for k in 1..=m {
        for (i, c) in dickson[k].iter().enumerate() {
            h[i] += &a[m + k] * c;
        }
    }
    let sturm = Sturm::new(&int_to_q(&h));
    let two = BigRational::from_integer(2.into());
    let inside = sturm.count_roots(&-&two, &two);
    if inside == m - 1 {
        BaseClass::Salem
    } else {
        BaseClass::Neither
    }
}

/// Number of roots strictly inside the unit circle, when Graeffe squaring
/// plus Pellet's criterion can separate all roots from the circle.
pub fn roots_inside_unit_disk(p: &IntPolynomial) -> Option<usize> {
    let mut q: Vec<BigInt> = p.coeffs().to_vec();
    for _ in 0..=GRAEFFE_ROUNDS {
        if let Some(m) = pellet_unit(&q) {
            return Some(m);
        }
        q = graeffe(&q);
    }
    None
}

/// `m` such that `|a_m| > Σ_{j≠m} |a_j|`, which forces exactly `m` roots in
/// the open unit disk and none on its boundary.
fn pellet_unit(q: &[BigInt]) -> Option<usize> {
    let total: BigInt = q.iter().map(|c| c.abs()).sum();
    q.iter().position(|c| {
        let c = c.abs();
        &c + &c > total
    })
}

/// Coefficients of the polynomial whose roots are the squares of the roots
/// of `p`.
fn graeffe(p: &[BigInt]) -> Vec<BigInt> {
    let d = p.len() - 1;
    let even: Vec<BigInt> = p.iter().step_by(2).cloned().collect();
    let odd: Vec<BigInt> = p.iter().skip(1).step_by(2).cloned().collect();
    let sq = |v: &[BigInt]| {
        let mut out = vec![BigInt::zero(); (2 * v.len()).saturating_sub(1)];
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let e2 = sq(&even);
    let o2 = sq(&odd);
    let mut out = vec![BigInt::zero(); d + 1];
    for (i, c) in e2.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in o2.into_iter().enumerate() {
        out[i + 1] -= c;
    }
    if d % 2 == 1 {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(c: &[i64], lo: i64, hi: i64) -> AlgebraicReal {
        AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()
    }

    #[test]
    fn known_pisot_numbers() {
        assert_eq!(classify_base(&base(&[-1, -1, 1], 1, 2)).class, BaseClass::Pisot);
        assert_eq!(classify_base(&base(&[-1, -1, 0, 1], 1, 2)).class, BaseClass::Pisot);
        assert_eq!(classify_base(&base(&[1, -3, 1], 2, 3)).class, BaseClass::Pisot);
        assert_eq!(classify_base(&base(&[-1, -2, 1], 2, 3)).class, BaseClass::Pisot);
        assert_eq!(classify_base(&base(&[-2, 1], 2, 2)).class, BaseClass::Pisot);
    }

    #[test]
    fn sqrt_three_is_neither() {
        assert_eq!(classify_base(&base(&[-3, 0, 1], 1, 2)).class, BaseClass::Neither);
    }

    #[test]
    fn lehmer_number_is_salem() {
        // Lehmer's polynomial, degree 10
        let c = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];
        let r = AlgebraicReal::from_i64(&c, (117, 100), (118, 100)).unwrap();
        let cls = classify_base(&r);
        assert_eq!(cls.class, BaseClass::Salem);
    }

    #[test]
    fn smallest_quartic_salem() {
        // x^4 - x^3 - x^2 - x + 1
        let r = AlgebraicReal::from_i64(&[1, -1, -1, -1, 1], (17, 10), (19, 10)).unwrap();
        assert_eq!(classify_base(&r).class, BaseClass::Salem);
    }

    #[test]
    fn non_monic_is_neither() {
        let r = AlgebraicReal::rational(BigRational::new(19.into(), 10.into()));
        assert_eq!(classify_base(&r).class, BaseClass::Neither);
    }

    #[test]
    fn graeffe_squares_roots() {
        // (x-2)(x+3) -> (y-4)(y-9)
        let q = graeffe(&[BigInt::from(-6), BigInt::from(1), BigInt::from(1)]);
        assert_eq!(q, vec![BigInt::from(36), BigInt::from(-13), BigInt::from(1)]);
    }
}
