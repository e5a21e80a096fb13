//! Real algebraic numbers given by a defining polynomial and an isolating
//! rational interval.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{q_derivative, q_gcd, IntPolynomial, Sturm};
use crate::error::{Error, Result};

/// A real algebraic number: the unique real root of `minpoly` inside the
/// closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

/// Outcome of the best-effort irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(String),
    /// Degree too high (or coefficients too large) for the heuristics.
    Unverified,
}

impl AlgebraicReal {
    /// Validates that `minpoly` is squarefree and has exactly one real root in
    /// `[lo, hi]`.
    pub fn new(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::NotIsolating(format!("empty interval [{lo}, {hi}]")));
        }
        if minpoly.degree() == 0 {
            return Err(Error::InvalidPolynomial("constant polynomial has no roots".into()));
        }
        let p = minpoly.to_rational();
        if q_gcd(&p, &q_derivative(&p)).len() > 1 {
            return Err(Error::InvalidPolynomial(format!("{minpoly} is not squarefree")));
        }
        let at_lo = usize::from(minpoly.sign_at(&lo) == 0);
        let inside = Sturm::new(&p).count_roots(&lo, &hi);
        if at_lo + inside != 1 {
            return Err(Error::NotIsolating(format!(
                "{minpoly} has {} roots in [{lo}, {hi}]",
                at_lo + inside
            )));
        }
        Ok(AlgebraicReal { minpoly, lo, hi })
    }

    /// Like [`AlgebraicReal::new`], additionally requiring the root to exceed 1
    /// (checked through `lo >= 1`).
    pub fn new_base(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo < BigRational::one() {
            return Err(Error::NotIsolating(format!(
                "base interval must satisfy lo >= 1, got lo = {lo}"
            )));
        }
        let a = Self::new(minpoly, lo, hi)?;
        if a.lo.is_one() && a.minpoly.sign_at(&a.lo) == 0 {
            return Err(Error::NotIsolating("base must be greater than 1".into()));
        }
        Ok(a)
    }

    /// Convenience constructor from small integer data.
    pub fn from_i64(coeffs: &[i64], lo: (i64, i64), hi: (i64, i64)) -> Result<Self> {
        Self::new(
            IntPolynomial::from_i64(coeffs)?,
            BigRational::new(lo.0.into(), lo.1.into()),
            BigRational::new(hi.0.into(), hi.1.into()),
        )
    }

    pub fn rational(q: BigRational) -> Self {
        let poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()])
            .expect("denominator is nonzero")
            .primitive();
        AlgebraicReal { minpoly: poly, lo: q.clone(), hi: q }
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Is the number an algebraic integer (monic defining polynomial)?
    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.is_monic()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.minpoly.degree() == 1 {
            let c = self.minpoly.coeffs();
            Some(BigRational::new(-c[0].clone(), c[1].clone()))
        } else if self.lo == self.hi {
            Some(self.lo.clone())
        } else {
            None
        }
    }

    /// Bisects the isolating interval until its width is at most `width`.
    /// Returns the narrowed interval; `self` is left untouched.
    pub fn refine_root(&self, width: &BigRational) -> (BigRational, BigRational) {
        assert!(width.is_positive(), "refinement width must be positive");
        refine_between(&self.minpoly, self.lo.clone(), self.hi.clone(), width)
    }

    /// Copy of `self` with the isolating interval narrowed to `width`.
    pub fn refined(&self, width: &BigRational) -> Self {
        let (lo, hi) = self.refine_root(width);
        AlgebraicReal { minpoly: self.minpoly.clone(), lo, hi }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.refine_root(&BigRational::new(BigInt::one(), BigInt::one() << 60));
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn irreducibility(&self) -> Irreducibility {
        irreducibility(&self.minpoly)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        write!(f, "root of {} in [{}, {}]", self.minpoly, self.lo, self.hi)
    }
}

pub(crate) fn refine_between(
    p: &IntPolynomial,
    mut lo: BigRational,
    mut hi: BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    if lo == hi {
        return (lo, hi);
    }
    if p.sign_at(&lo) == 0 {
        return (lo.clone(), lo);
    }
    if p.sign_at(&hi) == 0 {
        return (hi.clone(), hi);
    }
    let slo = p.sign_at(&lo);
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            0 => return (mid.clone(), mid),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// Isolates the distinct real roots of `p` lying in the open interval
/// `(a, b)`, returned in increasing order as intervals each containing one
/// root.
pub(crate) fn isolate_real_roots(
    p: &IntPolynomial,
    a: &BigRational,
    b: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let sturm = Sturm::new(&super::poly::q_squarefree(&p.to_rational()));
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    let two = BigRational::from_integer(2.into());
    while let Some((lo, hi)) = stack.pop() {
        // roots in (lo, hi), excluding hi itself
        let mut n = sturm.count_roots(&lo, &hi);
        let hi_root = p.sign_at(&hi) == 0;
        if hi_root {
            n -= 1;
            if &hi < b {
                out.push((hi.clone(), hi.clone()));
            }
        }
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Best-effort irreducibility test: rational roots for every degree and
/// quadratic-factor search for monic quartics.
pub fn irreducibility(p: &IntPolynomial) -> Irreducibility {
    let d = p.degree();
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    let q = p.to_rational();
    if q_gcd(&q, &q_derivative(&q)).len() > 1 {
        return Irreducibility::Reducible("repeated factor".into());
    }
    let Some(roots) = p.rational_roots() else {
        return Irreducibility::Unverified;
    };
    if let Some(r) = roots.first() {
        return Irreducibility::Reducible(format!("rational root {r}"));
    }
    match d {
        2 | 3 => Irreducibility::Irreducible,
        4 if p.is_monic() => match quartic_quadratic_split(p) {
            Some(Some(msg)) => Irreducibility::Reducible(msg),
            Some(None) => Irreducibility::Irreducible,
            None => Irreducibility::Unverified,
        },
        _ => Irreducibility::Unverified,
    }
}

/// Searches for `x^4 + a x^3 + b x^2 + c x + d = (x^2 + p x + q)(x^2 + r x + s)`
/// over the integers. `None` when `d` is too large to enumerate.
fn quartic_quadratic_split(poly: &IntPolynomial) -> Option<Option<String>> {
    let c = poly.coeffs();
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let dabs = u64::try_from(&d.abs()).ok()?;
    if dabs == 0 || dabs > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut i = 1u64;
    while i * i <= dabs {
        if dabs % i == 0 {
            divs.push(i);
            divs.push(dabs / i);
        }
        i += 1;
    }
    for &m in &divs {
        for sign in [1i64, -1] {
            let q = BigInt::from(m) * sign;
            let s = d / &q;
            let mut candidates = Vec::new();
            if s != q {
                let num = cc - &q * a;
                let den = &s - &q;
                if (&num % &den).is_zero() {
                    candidates.push(num / den);
                }
            } else if cc == &(&q * a) {
                // p + r = a, p r = b - 2q
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &q);
                if !disc.is_negative() {
                    let root = disc.sqrt();
                    if &root * &root == disc {
                        for cand in [(a + &root), (a - &root)] {
                            if (&cand % BigInt::from(2)).is_zero() {
                                candidates.push(cand / 2);
                            }
                        }
                    }
                }
            }
            for p in candidates {
                let r = a - &p;
                if &(&q + &s + &p * &r) == b && &(&p * &s + &q * &r) == cc {
                    return Some(Some(format!(
                        "(x^2 + {p}x + {q})(x^2 + {r}x + {s})"
                    )));
                }
            }
        }
    }
    Some(None)
}
