use std::cmp::Ordering;
use std::fmt;

use super::system::NumerationSystem;
use crate::algebraic::FieldElement;

/// An interval of Q(β) with open or closed ends. A closed interval with
/// equal ends is a single point, which is not the same as empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: FieldElement,
    pub hi: FieldElement,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cylinder {
    Empty,
    Interval(Interval),
}

impl Interval {
    pub fn length(&self) -> FieldElement {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let lo_ok = match self.lo.cmp_exact(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        lo_ok
            && match x.cmp_exact(&self.hi) {
                Ordering::Less => true,
                Ordering::Equal => self.hi_closed,
                Ordering::Greater => false,
            }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `Empty` when the ends cross or meet without both being closed.
    fn normalize(self) -> Cylinder {
        match self.lo.cmp_exact(&self.hi) {
            Ordering::Less => Cylinder::Interval(self),
            Ordering::Equal if self.lo_closed && self.hi_closed => Cylinder::Interval(self),
            _ => Cylinder::Empty,
        }
    }

    fn intersect(&self, other: &Interval) -> Cylinder {
        let (lo, lo_closed) = match self.lo.cmp_exact(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp_exact(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }.normalize()
    }
}

impl Cylinder {
    pub fn is_empty(&self) -> bool {
        matches!(self, Cylinder::Empty)
    }

    pub fn interval(&self) -> Option<&Interval> {
        match self {
            Cylinder::Empty => None,
            Cylinder::Interval(i) => Some(i),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cylinder::Empty => f.write_str("empty"),
            Cylinder::Interval(i) => i.fmt(f),
        }
    }
}

impl NumerationSystem {
    pub fn domain(&self) -> Interval {
        Interval { lo: self.l().clone(), hi: self.r().clone(), lo_closed: true, hi_closed: false }
    }
}

/// The set of points of `[l, r)` whose expansion begins with `w`.
///
/// Built from the back: `C(ε) = [l, r)` and `C(aw) = [l, r) ∩ φ_a(C(w))`
/// where `φ_a(y) = −(y + a)/β` inverts the branch with digit `a`.
pub fn cylinder(s: &NumerationSystem, w: &[i64]) -> Cylinder {
    let domain = s.domain();
    let inv = s.beta().inv().expect("β ≠ 0");
    let mut cur = Cylinder::Interval(domain.clone());
    for &a in w.iter().rev() {
        let iv = match cur {
            Cylinder::Empty => return Cylinder::Empty,
            Cylinder::Interval(iv) => iv,
        };
        // φ_a is decreasing, so the ends swap
        let phi = |y: &FieldElement| -(&y.add_int(a) * &inv);
        let image = Interval {
            lo: phi(&iv.hi),
            hi: phi(&iv.lo),
            lo_closed: iv.hi_closed,
            hi_closed: iv.lo_closed,
        };
        cur = domain.intersect(&image);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{AlgebraicReal, NumberField};
    use crate::numeration::{digits_prefix, Preset};

    fn field(c: &[i64], lo: i64, hi: i64) -> NumberField {
        NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap()
    }

    fn systems() -> Vec<NumerationSystem> {
        let mut out = Vec::new();
        for f in [field(&[-1, -1, 1], 1, 2), field(&[-1, -1, 0, 1], 1, 2), field(&[-2, 1], 2, 2)] {
            for p in Preset::ALL {
                out.push(NumerationSystem::preset(&f, p).unwrap());
            }
        }
        out
    }

    #[test]
    fn empty_word_is_domain() {
        for s in systems() {
            assert_eq!(cylinder(&s, &[]), Cylinder::Interval(s.domain()));
        }
    }

    #[test]
    fn first_digit_partition() {
        for s in systems() {
            let parts: Vec<Interval> =
                s.alphabet().iter().filter_map(|&a| cylinder(&s, &[a]).interval().cloned()).collect();
            let total = parts.iter().fold(s.field().zero(), |acc, i| &acc + &i.length());
            assert_eq!(total, s.field().one());
            for (i, a) in parts.iter().enumerate() {
                for b in &parts[i + 1..] {
                    assert!(a.hi.le(&b.lo) || b.hi.le(&a.lo));
                }
            }
        }
    }

    #[test]
    fn cylinder_membership_matches_expansion() {
        for s in systems() {
            let f = s.field();
            for k in 1..40 {
                let t = f.from_rational(num_rational::BigRational::new(k.into(), 40.into()));
                let x = s.l() + &t;
                if !s.contains(&x) {
                    continue;
                }
                let (w, _) = digits_prefix(&s, &x, 4).unwrap();
                let c = cylinder(&s, &w);
                assert!(c.interval().unwrap().contains(&x), "{s:?} x = {x} w = {w:?}");
            }
        }
    }

    #[test]
    fn degenerate_branch_is_a_point() {
        // balanced system for the minimal Pisot number: β < 3/2 and the
        // branch for digit 1 is a single point
        let f = field(&[-1, -1, 0, 1], 1, 2);
        let l = -(&f.beta().add_int(1)).inv().unwrap();
        let s = NumerationSystem::new(l).unwrap();
        let c1 = cylinder(&s, &[1]);
        assert!(c1.interval().unwrap().is_point());
        assert_eq!(&c1.interval().unwrap().lo, s.l());
    }
}
