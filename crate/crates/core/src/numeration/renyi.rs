//! The positive-base greedy expansions `T(x) = βx − ⌊βx⌋` on `[0, 1)` and
//! Parry's lexicographic admissibility test.

use std::cmp::Ordering;

use super::expansion::{run_orbit, ExpansionOutcome};
use super::word::{first_difference, DigitWord};
use crate::algebraic::{classify_base, BaseClass, FieldElement, NumberField};
use crate::error::{Error, Result};

fn digit_of(n: num_bigint::BigInt) -> i64 {
    i64::try_from(n).expect("digit fits in i64")
}

pub fn renyi_expand(field: &NumberField, x: &FieldElement, max_iters: usize) -> Result<ExpansionOutcome> {
    x.check_field(&field.zero())?;
    if x.sign() < 0 || !x.lt(&field.one()) {
        return Err(Error::OutOfDomain);
    }
    let beta = field.beta();
    let pisot = classify_base(field.generator()).class == BaseClass::Pisot;
    Ok(run_orbit(
        x.clone(),
        max_iters,
        pisot,
        |y| {
            let by = y.mul_beta_of(&beta);
            let d = digit_of(by.floor());
            (d, by.add_int(-d))
        },
        |y| y.is_zero(),
    ))
}

/// `d*(1) = lim_{ε→0+} d(1 − ε)`, followed exactly: the orbit of 1 from
/// below, taking the left limit of the floor whenever `βy` is an integer.
pub fn renyi_dstar1_outcome(field: &NumberField, max_iters: usize) -> ExpansionOutcome {
    let beta = field.beta();
    let pisot = classify_base(field.generator()).class == BaseClass::Pisot;
    run_orbit(
        field.one(),
        max_iters,
        pisot,
        |y| {
            let by = y.mul_beta_of(&beta);
            let d = match by.as_integer() {
                Some(n) => digit_of(n) - 1,
                None => digit_of(by.floor()),
            };
            (d, by.add_int(-d))
        },
        |_| false,
    )
}

pub fn renyi_dstar1(field: &NumberField, max_iters: usize) -> Option<DigitWord> {
    let out = renyi_dstar1_outcome(field, max_iters);
    out.is_periodic().then_some(out.digits)
}

pub fn lex_compare(a: &DigitWord, b: &DigitWord) -> Ordering {
    match first_difference(a, b) {
        None => Ordering::Equal,
        Some(i) => a.digit(i).cmp(&b.digit(i)),
    }
}

/// Every suffix `t` satisfies `0^ω ⪯ t ≺ d*(1)` lexicographically. Finite
/// words are read as `w 0^ω`.
pub fn parry_admissible(w: &DigitWord, dstar1: &DigitWord) -> bool {
    let w = w.to_infinite();
    if w.digits().any(|d| d < 0) {
        return false;
    }
    w.suffixes().iter().all(|t| lex_compare(t, dstar1) == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicReal;

    fn field(c: &[i64], lo: i64, hi: i64) -> NumberField {
        NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap()
    }

    #[test]
    fn limit_expansions_of_one() {
        assert_eq!(renyi_dstar1(&field(&[-2, 1], 2, 2), 100).unwrap().to_string(), "(1)");
        assert_eq!(renyi_dstar1(&field(&[-1, -1, 1], 1, 2), 100).unwrap().to_string(), "(1 0)");
        // β² = 3β − 1: d(1) = 2 (2)^ω ... limit from below is 2 (1)^ω
        assert_eq!(renyi_dstar1(&field(&[1, -3, 1], 2, 3), 100).unwrap().to_string(), "2 (1)");
    }

    #[test]
    fn greedy_expansion_of_zero_and_half() {
        let f = field(&[-2, 1], 2, 2);
        assert_eq!(renyi_expand(&f, &f.zero(), 10).unwrap().digits.to_string(), "(0)");
        let half = f.from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(renyi_expand(&f, &half, 10).unwrap().digits.to_string(), "1 (0)");
        assert!(renyi_expand(&f, &f.one(), 10).is_err());
    }

    #[test]
    fn golden_parry_condition() {
        let f = field(&[-1, -1, 1], 1, 2);
        let d = renyi_dstar1(&f, 100).unwrap();
        assert!(parry_admissible(&"1 0 1".parse().unwrap(), &d));
        assert!(!parry_admissible(&"1 1".parse().unwrap(), &d));
        assert!(!parry_admissible(&"(1 0)".parse().unwrap(), &d));
    }
}
