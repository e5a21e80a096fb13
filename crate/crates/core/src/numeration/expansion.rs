use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use super::system::NumerationSystem;
use super::word::DigitWord;
use crate::algebraic::{FieldElement, NumberField};
use crate::error::{Error, Result};

/// Iteration budget shared by every orbit computation.
pub const DEFAULT_MAX_ITERS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExpansionStatus {
    /// An orbit state repeated exactly.
    ExactPeriodic,
    /// The orbit reached 0.
    FiniteZeroTail,
    /// Budget exhausted for a Pisot base (a period exists but was not reached).
    TruncatedAfterN,
    /// Budget exhausted and periodicity is not guaranteed.
    MaybeAperiodic,
}

impl ExpansionStatus {
    pub fn is_periodic(self) -> bool {
        matches!(self, ExpansionStatus::ExactPeriodic | ExpansionStatus::FiniteZeroTail)
    }
}

/// Result of iterating the transformation. For truncated runs `digits` is the
/// finite prefix computed so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionOutcome {
    pub digits: DigitWord,
    pub status: ExpansionStatus,
    pub iterations: usize,
    /// Orbit-state preperiod and period, when a repetition was found. These
    /// can exceed the digit-level lengths of `digits`.
    pub state_preperiod: Option<usize>,
    pub state_period: Option<usize>,
}

impl ExpansionOutcome {
    pub fn is_periodic(&self) -> bool {
        self.status.is_periodic()
    }

    pub fn periodic_word(&self) -> Option<&DigitWord> {
        self.is_periodic().then_some(&self.digits)
    }
}

/// Drives any deterministic digit-emitting orbit until a state repeats, a
/// designated absorbing state is hit, or the budget runs out.
pub(crate) fn run_orbit<S, F, Z>(
    start: S,
    max_iters: usize,
    pisot: bool,
    mut next: F,
    is_zero: Z,
) -> ExpansionOutcome
where
    S: Hash + Eq + Clone,
    F: FnMut(&S) -> (i64, S),
    Z: Fn(&S) -> bool,
{
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut state = start;
    for i in 0..=max_iters {
        if is_zero(&state) {
            return ExpansionOutcome {
                digits: DigitWord::new(digits, vec![0]),
                status: ExpansionStatus::FiniteZeroTail,
                iterations: i,
                state_preperiod: Some(i),
                state_period: Some(1),
            };
        }
        if let Some(&j) = seen.get(&state) {
            let per = digits.split_off(j);
            return ExpansionOutcome {
                digits: DigitWord::new(digits, per),
                status: ExpansionStatus::ExactPeriodic,
                iterations: i,
                state_preperiod: Some(j),
                state_period: Some(i - j),
            };
        }
        if i == max_iters {
            break;
        }
        let (d, s) = next(&state);
        seen.insert(std::mem::replace(&mut state, s), i);
        digits.push(d);
    }
    ExpansionOutcome {
        digits: DigitWord::finite(digits),
        status: if pisot { ExpansionStatus::TruncatedAfterN } else { ExpansionStatus::MaybeAperiodic },
        iterations: max_iters,
        state_preperiod: None,
        state_period: None,
    }
}

/// The expansion `d(x)` of a point of the domain.
pub fn expand(s: &NumerationSystem, x: &FieldElement, max_iters: usize) -> Result<ExpansionOutcome> {
    s.check_domain(x)?;
    Ok(run_orbit(
        x.clone(),
        max_iters,
        s.is_pisot(),
        |y| s.step_unchecked(y),
        |y| y.is_zero(),
    ))
}

/// The first `n` digits of `d(x)` together with the orbit point after them.
pub fn digits_prefix(s: &NumerationSystem, x: &FieldElement, n: usize) -> Result<(Vec<i64>, FieldElement)> {
    s.check_domain(x)?;
    let mut y = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (d, next) = s.step_unchecked(&y);
        out.push(d);
        y = next;
    }
    Ok((out, y))
}

/// Representation `x = (−β)^k · •d₁d₂…` of an arbitrary element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealExpansion {
    pub exponent: i64,
    pub outcome: ExpansionOutcome,
    /// Set when the system does not give unique representations, so other
    /// exponents may yield different digit strings.
    pub non_unique: bool,
}

pub fn expand_real(s: &NumerationSystem, x: &FieldElement, max_iters: usize) -> Result<RealExpansion> {
    x.check_field(s.l())?;
    let preds = s.predicates();
    if !preds.zero_in_domain {
        return Err(Error::NoZeroInDomain);
    }
    let non_unique = !preds.shift_unique;
    if x.is_zero() {
        return Ok(RealExpansion { exponent: 0, outcome: expand(s, x, max_iters)?, non_unique });
    }
    let field = s.field();
    let beta = s.beta();
    let ax = if x.sign() < 0 { -x } else { x.clone() };
    // smallest k with |x| < β^k
    let mut k: i64 = 0;
    let mut bk = field.one();
    if ax.lt(&bk) {
        let inv = beta.inv()?;
        loop {
            let smaller = &bk * &inv;
            if ax.lt(&smaller) {
                bk = smaller;
                k -= 1;
            } else {
                break;
            }
        }
    } else {
        while !ax.lt(&bk) {
            bk = &bk * beta;
            k += 1;
        }
    }
    let neg_inv = (-beta).inv()?;
    let factor = if k < 0 { -beta } else { neg_inv.clone() };
    let mut y = x.clone();
    for _ in 0..k.unsigned_abs() {
        y = &y * &factor;
    }
    loop {
        if s.contains(&y) {
            return Ok(RealExpansion { exponent: k, outcome: expand(s, &y, max_iters)?, non_unique });
        }
        y = &y * &neg_inv;
        k += 1;
    }
}

/// Exact value `Σ wᵢ (−β)^{-i}` of a digit word over the given field; digits
/// need not lie in any alphabet.
pub fn value_in(field: &NumberField, w: &DigitWord) -> FieldElement {
    let y_inv = (-field.beta()).inv().expect("β ≠ 0");
    let horner = |digits: &[i64]| {
        // Σ dᵢ y^{-i} for i = 1..n
        let mut acc = field.zero();
        for &d in digits.iter().rev() {
            acc = &acc.add_int(d) * &y_inv;
        }
        acc
    };
    let pow = |n: usize| {
        let mut acc = field.one();
        for _ in 0..n {
            acc = &acc * &y_inv;
        }
        acc
    };
    let head = horner(w.pre());
    if w.per().is_empty() {
        return head;
    }
    let m = w.per().len();
    let tail = horner(w.per());
    let denom = (&field.one() - &pow(m)).inv().expect("|−β| > 1");
    &head + &(&(&pow(w.pre().len()) * &tail) * &denom)
}

pub fn value(s: &NumerationSystem, w: &DigitWord) -> FieldElement {
    value_in(s.field(), w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    Yes(usize),
    No,
    Unknown,
}

/// Does the orbit of `x` reach 0, and after how many steps?
pub fn is_finite_expansion(s: &NumerationSystem, x: &FieldElement, max_iters: usize) -> Result<Finiteness> {
    let out = expand(s, x, max_iters)?;
    Ok(match out.status {
        ExpansionStatus::FiniteZeroTail => Finiteness::Yes(out.iterations),
        ExpansionStatus::ExactPeriodic => Finiteness::No,
        _ => Finiteness::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicReal;
    use crate::numeration::Preset;

    fn field(c: &[i64], lo: i64, hi: i64) -> NumberField {
        NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap()
    }

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    #[test]
    fn zero_expands_to_zeros() {
        let f = field(&[-1, -1, 0, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::Balanced).unwrap();
        let out = expand(&s, &f.zero(), 100).unwrap();
        assert_eq!(out.digits, w("(0)"));
        assert_eq!(out.status, ExpansionStatus::FiniteZeroTail);
    }

    #[test]
    fn golden_mean_square_left_endpoint() {
        let f = field(&[1, -3, 1], 2, 3);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        let out = expand(&s, s.l(), 1000).unwrap();
        assert_eq!(out.digits, w("(2 1)"));
        assert_eq!(out.status, ExpansionStatus::ExactPeriodic);
        assert_eq!(value(&s, &w("2 0 0 (2 1)")), s.l().clone());
    }

    #[test]
    fn integer_base_left_endpoint() {
        for a in 2..6 {
            let f = field(&[-a, 1], a, a);
            let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
            assert_eq!(expand(&s, s.l(), 100).unwrap().digits, DigitWord::periodic(vec![a]));
        }
    }

    #[test]
    fn fixed_point_words() {
        let f = field(&[-1, -1, 0, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::Balanced).unwrap();
        for a in s.alphabet() {
            let fa = s.fixed_point(a);
            assert_eq!(value(&s, &DigitWord::periodic(vec![a])), fa);
            if s.contains(&fa) {
                assert_eq!(expand(&s, &fa, 10).unwrap().digits, DigitWord::periodic(vec![a]));
            }
        }
    }

    #[test]
    fn ito_sadahiro_shift_anomaly() {
        let f = field(&[-1, -1, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        let dl = expand(&s, s.l(), 100).unwrap().digits;
        let b2 = &f.beta() * &f.beta();
        let x = s.l() * &b2.inv().unwrap();
        let dx = expand(&s, &x, 100).unwrap().digits;
        assert_eq!(dx, dl.prepend(&[1]));
        assert_ne!(dx, dl.prepend(&[0, 0]));
        let re = expand_real(&s, &x, 100).unwrap();
        assert!(re.non_unique);
        assert_eq!(re.exponent, -2);
        assert_eq!(re.outcome.digits, dl);
    }

    #[test]
    fn expand_real_round_trips() {
        let f = field(&[-1, -1, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::Balanced).unwrap();
        for n in [-7i64, -1, 1, 5, 12] {
            let x = f.from_int(n);
            let re = expand_real(&s, &x, 1000).unwrap();
            assert!(re.outcome.is_periodic());
            assert!(!re.non_unique);
            let mut v = value(&s, &re.outcome.digits);
            for _ in 0..re.exponent {
                v = -v.mul_beta();
            }
            assert_eq!(v, x, "n = {n}");
        }
    }

    #[test]
    fn finite_expansions() {
        let f = field(&[-1, -1, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        assert_eq!(is_finite_expansion(&s, &f.zero(), 10).unwrap(), Finiteness::Yes(0));
        let b3 = &(&f.beta() * &f.beta()) * &f.beta();
        let x = -b3.inv().unwrap();
        assert_eq!(is_finite_expansion(&s, &x, 10).unwrap(), Finiteness::Yes(2));
        let b2 = &f.beta() * &f.beta();
        assert_eq!(is_finite_expansion(&s, &b2.inv().unwrap(), 10).unwrap_err(), Error::OutOfDomain);
    }
}
