use std::cmp::Ordering;

use crate::numeration::{first_difference, DigitWord, NumerationSystem};
use crate::reference::References;

/// Outcome of an alternate-order comparison with the 1-based position of the
/// first differing digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AltOrdering {
    pub outcome: Ordering,
    pub witness: Option<usize>,
}

/// `a ≺ b` iff `(−1)^i (b_i − a_i) > 0` at the first difference `i`.
/// Finite words are compared as `w 0^ω`.
pub fn alt_compare(a: &DigitWord, b: &DigitWord) -> AltOrdering {
    match first_difference(a, b) {
        None => AltOrdering { outcome: Ordering::Equal, witness: None },
        Some(k) => {
            let i = k + 1;
            let diff = b.digit(k) - a.digit(k);
            let signed = if i % 2 == 0 { diff } else { -diff };
            let outcome = if signed > 0 { Ordering::Less } else { Ordering::Greater };
            AltOrdering { outcome, witness: Some(i) }
        }
    }
}

pub fn alt_cmp(a: &DigitWord, b: &DigitWord) -> Ordering {
    alt_compare(a, b).outcome
}

/// `d(l) ⪯ t ≺ d*(r)` for every suffix `t` of `w`, plus an alphabet check.
pub fn is_admissible(s: &NumerationSystem, w: &DigitWord, refs: &References) -> bool {
    let w = w.to_infinite();
    if !w.digits().all(|d| s.in_alphabet(d)) {
        return false;
    }
    w.suffixes().iter().all(|t| {
        alt_cmp(&refs.dl, t) != Ordering::Greater && alt_cmp(t, &refs.dstar_r) == Ordering::Less
    })
}

/// Every suffix `t` of `lcand` has `lcand ⪯ t ≺ rcand`, and every suffix of
/// `rcand` has `lcand ⪯ t ⪯ rcand`.
pub fn gora_conditions(lcand: &DigitWord, rcand: &DigitWord) -> bool {
    let left_ok = lcand.suffixes().iter().all(|t| {
        alt_cmp(lcand, t) != Ordering::Greater && alt_cmp(t, rcand) == Ordering::Less
    });
    left_ok
        && rcand.suffixes().iter().all(|t| {
            alt_cmp(lcand, t) != Ordering::Greater && alt_cmp(t, rcand) != Ordering::Greater
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    #[test]
    fn worked_comparisons() {
        assert_eq!(alt_compare(&w("(0)"), &w("(0)")).outcome, Ordering::Equal);
        assert_eq!(alt_cmp(&w("2 1 0 (2)"), &w("0 2 1 0 (2)")), Ordering::Less);
        let c = alt_compare(&w("(2 1)"), &w("2 0 0 (2 1)"));
        assert_eq!(c, AltOrdering { outcome: Ordering::Greater, witness: Some(2) });
    }

    #[test]
    fn gora_examples() {
        assert!(gora_conditions(&w("2 1 0 (2)"), &w("0 2 1 0 (2)")));
        assert!(gora_conditions(&w("2 0 0 (2 1)"), &w("0 2 0 0 (2 1)")));
        assert!(!gora_conditions(&w("(2)"), &w("(2)")));
    }

    fn arb_word() -> impl Strategy<Value = DigitWord> {
        (proptest::collection::vec(0i64..3, 0..4), proptest::collection::vec(0i64..3, 1..4))
            .prop_map(|(p, q)| DigitWord::new(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn total_order(a in arb_word(), b in arb_word(), c in arb_word()) {
            let ab = alt_cmp(&a, &b);
            prop_assert_eq!(ab, alt_cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab != Ordering::Greater && alt_cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(alt_cmp(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn witness_within_bound_and_agrees_with_long_scan(a in arb_word(), b in arb_word()) {
            let r = alt_compare(&a, &b);
            let bound = crate::numeration::comparison_bound(&a, &b);
            let scan = (0..60).find(|&i| a.digit(i) != b.digit(i)).map(|k| k + 1);
            prop_assert_eq!(r.witness, scan);
            if let Some(i) = r.witness {
                prop_assert!(i <= bound);
            }
        }
    }
}
