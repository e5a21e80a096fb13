//! The reference strings `d(l)`, `d*(l)` and `d*(r)`.
//!
//! One-sided limits are tracked by tagging each orbit point with the side it
//! is approached from. Multiplying by `−β` reverses the side; at an integer
//! value of `−βx − l` the floor is right-continuous, so a left approach lands
//! on the previous digit and wraps to `r`.

use std::fmt;

use serde::Serialize;

use crate::algebraic::FieldElement;
use crate::error::{Error, Result};
use crate::numeration::{run_orbit, DigitWord, ExpansionOutcome, NumerationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Exact,
    /// Approached from below.
    FromLeft,
    /// Approached from above.
    FromRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SidedPoint {
    pub value: FieldElement,
    pub side: Side,
}

impl SidedPoint {
    pub fn new(value: FieldElement, side: Side) -> Self {
        SidedPoint { value, side }
    }
}

impl fmt::Display for SidedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::Exact => "",
            Side::FromLeft => "⁻",
            Side::FromRight => "⁺",
        };
        write!(f, "({}){tag}", self.value)
    }
}

fn validate(s: &NumerationSystem, p: &SidedPoint) -> Result<()> {
    p.value.check_field(s.l())?;
    let bad = |m: &str| Err(Error::InvalidSidedPoint(format!("{p}: {m}")));
    let lo = p.value.cmp_exact(s.l());
    let hi = p.value.cmp_exact(s.r());
    if lo.is_lt() || hi.is_gt() {
        return bad("outside [l, r]");
    }
    if hi.is_eq() && p.side != Side::FromLeft {
        return bad("r is only reachable from the left");
    }
    if lo.is_eq() && p.side == Side::FromLeft {
        return bad("l cannot be approached from the left");
    }
    Ok(())
}

pub fn sided_step(s: &NumerationSystem, p: &SidedPoint) -> Result<(i64, SidedPoint)> {
    validate(s, p)?;
    Ok(sided_step_unchecked(s, p))
}

fn sided_step_unchecked(s: &NumerationSystem, p: &SidedPoint) -> (i64, SidedPoint) {
    let bx = -p.value.mul_beta_of(s.beta());
    let c = &bx - s.l();
    let (digit, side) = match p.side {
        Side::Exact => (c.floor(), Side::Exact),
        Side::FromLeft => (c.floor(), Side::FromRight),
        Side::FromRight => match c.as_integer() {
            Some(n) => (n - 1, Side::FromLeft),
            None => (c.floor(), Side::FromLeft),
        },
    };
    let digit = i64::try_from(digit).expect("digit fits in i64");
    (digit, SidedPoint { value: bx.add_int(-digit), side })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Reference {
    /// `d(l)`
    DL,
    /// `d*(l)`, the limit from the right at `l`.
    DStarL,
    /// `d*(r)`, the limit from the left at `r`.
    DStarR,
}

impl Reference {
    pub const ALL: [Reference; 3] = [Reference::DL, Reference::DStarL, Reference::DStarR];

    pub fn name(self) -> &'static str {
        match self {
            Reference::DL => "d(l)",
            Reference::DStarL => "d*(l)",
            Reference::DStarR => "d*(r)",
        }
    }
}

pub fn reference(s: &NumerationSystem, which: Reference, max_iters: usize) -> ExpansionOutcome {
    let start = match which {
        Reference::DL => SidedPoint::new(s.l().clone(), Side::Exact),
        Reference::DStarL => SidedPoint::new(s.l().clone(), Side::FromRight),
        Reference::DStarR => SidedPoint::new(s.r().clone(), Side::FromLeft),
    };
    run_orbit(
        start,
        max_iters,
        s.is_pisot(),
        |p| sided_step_unchecked(s, p),
        |p| p.side == Side::Exact && p.value.is_zero(),
    )
}

/// All three reference words, when each is eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct References {
    pub dl: DigitWord,
    pub dstar_l: DigitWord,
    pub dstar_r: DigitWord,
}

impl References {
    pub fn compute(s: &NumerationSystem, max_iters: usize) -> Result<Self> {
        let get = |w| {
            let out = reference(s, w, max_iters);
            out.is_periodic().then_some(out.digits).ok_or(Error::ReferencesNotPeriodic)
        };
        Ok(References { dl: get(Reference::DL)?, dstar_l: get(Reference::DStarL)?, dstar_r: get(Reference::DStarR)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LimitCheck {
    /// `d*(l) = d(l)`, since `l` is not periodic with odd period.
    ConfirmedEqual,
    /// `T^q(l) = l` with `q` odd and `d*(l) = l₁…l_{q−1}(l_q − 1) d*(r)`.
    ConfirmedOddPeriodRewrite { q: usize },
    /// A reference word did not become periodic within the budget.
    Inconclusive,
    /// The computed words contradict the expected relation.
    Refuted { expected: DigitWord, found: DigitWord },
}

impl LimitCheck {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, LimitCheck::ConfirmedEqual | LimitCheck::ConfirmedOddPeriodRewrite { .. })
    }
}

pub fn check_limit_theorem(s: &NumerationSystem, max_iters: usize) -> LimitCheck {
    let dl = reference(s, Reference::DL, max_iters);
    let dsl = reference(s, Reference::DStarL, max_iters);
    let dsr = reference(s, Reference::DStarR, max_iters);
    if !(dl.is_periodic() && dsl.is_periodic() && dsr.is_periodic()) {
        return LimitCheck::Inconclusive;
    }
    // minimal q with T^q(l) = l, when the orbit of l is purely periodic
    let q = match (dl.state_preperiod, dl.state_period) {
        _ if s.l().is_zero() => Some(1),
        (Some(0), Some(q)) if dl.status == crate::numeration::ExpansionStatus::ExactPeriodic => Some(q),
        _ => None,
    };
    let (expected, verdict) = match q {
        Some(q) if q % 2 == 1 => {
            let mut head = dl.digits.prefix(q);
            head[q - 1] -= 1;
            (dsr.digits.prepend(&head), LimitCheck::ConfirmedOddPeriodRewrite { q })
        }
        _ => (dl.digits.clone(), LimitCheck::ConfirmedEqual),
    };
    if expected == dsl.digits {
        verdict
    } else {
        LimitCheck::Refuted { expected, found: dsl.digits }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Soficity {
    Sofic,
    NotShownSofic,
}

pub fn is_sofic(s: &NumerationSystem, max_iters: usize) -> Soficity {
    let dl = reference(s, Reference::DL, max_iters);
    if !dl.is_periodic() {
        return Soficity::NotShownSofic;
    }
    if reference(s, Reference::DStarR, max_iters).is_periodic() {
        Soficity::Sofic
    } else {
        Soficity::NotShownSofic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{AlgebraicReal, NumberField};
    use crate::numeration::{expand, Preset};

    fn field(c: &[i64], lo: i64, hi: i64) -> NumberField {
        NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap()
    }

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_beta_left_endpoint() {
        for f in [field(&[-1, -1, 1], 1, 2), field(&[-1, -1, 0, 1], 1, 2), field(&[-2, 1], 2, 2)] {
            let s = NumerationSystem::preset(&f, Preset::InvBeta).unwrap();
            let dl = reference(&s, Reference::DL, 1000);
            assert_eq!(dl.digits, w("1 (0)"));
            assert_eq!(reference(&s, Reference::DStarL, 1000).digits, dl.digits);
            assert_eq!(check_limit_theorem(&s, 1000), LimitCheck::ConfirmedEqual);
        }
    }

    #[test]
    fn ito_sadahiro_right_limit_starts_with_zero() {
        let f = field(&[1, -3, 1], 2, 3);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        let (d, next) = sided_step(&s, &SidedPoint::new(s.r().clone(), Side::FromLeft)).unwrap();
        assert_eq!(d, 0);
        assert_eq!(next, SidedPoint::new(s.l().clone(), Side::FromRight));
        let dsl = reference(&s, Reference::DStarL, 1000).digits;
        let dsr = reference(&s, Reference::DStarR, 1000).digits;
        assert_eq!(dsr, dsl.prepend(&[0]));
        assert_eq!(reference(&s, Reference::DL, 1000).digits, w("(2 1)"));
        assert_eq!(is_sofic(&s, 1000), Soficity::Sofic);
    }

    #[test]
    fn integer_base_odd_rewrite() {
        let f = field(&[-3, 1], 3, 3);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        assert_eq!(check_limit_theorem(&s, 100), LimitCheck::ConfirmedOddPeriodRewrite { q: 1 });
        assert_eq!(reference(&s, Reference::DStarL, 100).digits, w("(2 0)"));
    }

    #[test]
    fn balanced_references_are_mirror_images() {
        for f in [field(&[-1, -1, 1], 1, 2), field(&[-1, -1, 0, 1], 1, 2), field(&[-1, -2, 1], 2, 3)] {
            let s = NumerationSystem::preset(&f, Preset::Balanced).unwrap();
            let dsl = reference(&s, Reference::DStarL, 5000).digits;
            let dsr = reference(&s, Reference::DStarR, 5000).digits;
            assert_eq!(dsr, dsl.negated());
        }
    }

    #[test]
    fn zero_left_endpoint_is_a_fixed_point() {
        let f = field(&[-1, -1, 1], 1, 2);
        let s = NumerationSystem::new(f.zero()).unwrap();
        assert_eq!(check_limit_theorem(&s, 1000), LimitCheck::ConfirmedOddPeriodRewrite { q: 1 });
    }

    #[test]
    fn invalid_points_rejected() {
        let f = field(&[-1, -1, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::Balanced).unwrap();
        for (v, side) in [
            (s.l().clone(), Side::FromLeft),
            (s.r().clone(), Side::Exact),
            (s.r().clone(), Side::FromRight),
            (f.from_int(2), Side::Exact),
        ] {
            assert!(matches!(
                sided_step(&s, &SidedPoint::new(v, side)),
                Err(Error::InvalidSidedPoint(_))
            ));
        }
    }

    #[test]
    fn exact_side_matches_plain_expansion() {
        let f = field(&[-1, -1, 0, 1], 1, 2);
        let s = NumerationSystem::preset(&f, Preset::ItoSadahiro).unwrap();
        assert_eq!(reference(&s, Reference::DL, 20_000).digits, expand(&s, s.l(), 20_000).unwrap().digits);
    }
}
