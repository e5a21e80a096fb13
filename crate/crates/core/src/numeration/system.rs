use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebraic::{classify_base, AlgebraicReal, BaseClass, Classification, FieldElement, NumberField};
use crate::error::{Error, Result};

/// The three named choices of the left endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `l = -β/(β+1)`
    ItoSadahiro,
    /// `l = -1/2`
    Balanced,
    /// `l = -1/β`
    InvBeta,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::ItoSadahiro, Preset::Balanced, Preset::InvBeta];

    pub fn name(self) -> &'static str {
        match self {
            Preset::ItoSadahiro => "ito-sadahiro",
            Preset::Balanced => "balanced",
            Preset::InvBeta => "inv-beta",
        }
    }

    pub fn left_endpoint(self, field: &NumberField) -> FieldElement {
        let beta = field.beta();
        match self {
            Preset::ItoSadahiro => {
                let inv = beta.add_int(1).inv().expect("β + 1 > 0");
                -(&beta * &inv)
            }
            Preset::Balanced => field.from_rational(num_rational::BigRational::new((-1).into(), 2.into())),
            Preset::InvBeta => -beta.inv().expect("β > 1"),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown preset {s:?}")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A (−β, l) numeration system on the domain `[l, r)`, `r = l + 1`.
#[derive(Clone)]
pub struct NumerationSystem {
    field: NumberField,
    beta: FieldElement,
    l: FieldElement,
    r: FieldElement,
    alphabet: (i64, i64),
    class: OnceLock<Classification>,
}

/// Structural properties of a system, each decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    /// The digit set is exactly `{0, …, ⌊β⌋}`.
    pub digit_range_ok: bool,
    /// `x/(−β)` stays in the domain for every `x` in it.
    pub shift_unique: bool,
    /// Some nonzero number has a finite expansion.
    pub fin_nontrivial: bool,
    pub zero_in_domain: bool,
}

pub fn make_system(beta: &AlgebraicReal, l: FieldElement) -> Result<NumerationSystem> {
    if l.field().generator() != beta {
        return Err(Error::BaseMismatch);
    }
    NumerationSystem::new(l)
}

impl NumerationSystem {
    /// System over the field of `l`, whose generator is the base.
    pub fn new(l: FieldElement) -> Result<Self> {
        let field = l.field().clone();
        let beta = field.beta();
        if beta.cmp_exact(&field.one()).is_le() {
            return Err(Error::DomainViolation(format!("base {} is not > 1", field.generator())));
        }
        if !(l.sign() <= 0 && l.add_int(1).sign() > 0) {
            return Err(Error::DomainViolation(format!("l = {l}")));
        }
        let r = l.add_int(1);
        let lb = &l * &beta.add_int(1);
        let hi = (-&lb).floor();
        let lo = (&(-&lb) - &beta).floor();
        let alphabet = (to_digit(&lo)?, to_digit(&hi)?);
        Ok(NumerationSystem { field, beta, l, r, alphabet, class: OnceLock::new() })
    }

    pub fn preset(field: &NumberField, preset: Preset) -> Result<Self> {
        Self::new(preset.left_endpoint(field))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn l(&self) -> &FieldElement {
        &self.l
    }

    pub fn r(&self) -> &FieldElement {
        &self.r
    }

    /// Smallest and largest digit.
    pub fn alphabet_bounds(&self) -> (i64, i64) {
        self.alphabet
    }

    pub fn alphabet(&self) -> Vec<i64> {
        (self.alphabet.0..=self.alphabet.1).collect()
    }

    pub fn in_alphabet(&self, d: i64) -> bool {
        self.alphabet.0 <= d && d <= self.alphabet.1
    }

    pub fn classification(&self) -> &Classification {
        self.class.get_or_init(|| classify_base(self.field.generator()))
    }

    pub fn is_pisot(&self) -> bool {
        self.classification().class == BaseClass::Pisot
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.l.le(x) && x.lt(&self.r)
    }

    pub fn check_domain(&self, x: &FieldElement) -> Result<()> {
        x.check_field(&self.l)?;
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain)
        }
    }

    /// One application of the transformation: the digit `⌊−βx − l⌋` and
    /// `T(x) = −βx − digit`.
    pub fn step(&self, x: &FieldElement) -> Result<(i64, FieldElement)> {
        self.check_domain(x)?;
        Ok(self.step_unchecked(x))
    }

    pub(crate) fn step_unchecked(&self, x: &FieldElement) -> (i64, FieldElement) {
        let bx = -x.mul_beta_of(&self.beta);
        let d = (&bx - &self.l).floor();
        let digit = to_digit(&d).expect("digit fits in i64");
        (digit, bx.add_int(-digit))
    }

    /// The fixed point `−a/(β+1)` of the branch with digit `a`.
    pub fn fixed_point(&self, a: i64) -> FieldElement {
        let inv = self.beta.add_int(1).inv().expect("β + 1 > 0");
        &self.field.from_int(-a) * &inv
    }

    /// The discontinuity points `(a + l)/(−β)` lying in `[l, r)`, i.e. the
    /// points with `T(x) = l`, in increasing order.
    pub fn discontinuities(&self) -> Vec<FieldElement> {
        let inv = (-&self.beta).inv().expect("β ≠ 0");
        let mut out: Vec<FieldElement> = (self.alphabet.0 - 1..=self.alphabet.1 + 1)
            .map(|a| &self.l.add_int(a) * &inv)
            .filter(|x| self.contains(x))
            .collect();
        out.sort_by(|a, b| a.cmp_exact(b));
        out
    }

    pub fn predicates(&self) -> Predicates {
        let one = self.field.one();
        let b1 = self.beta.add_int(1);
        let inv_b1 = b1.inv().expect("β + 1 > 0");
        let floor_beta = self.beta.floor();
        let beta_frac = -(&self.beta * &inv_b1);
        let floor_frac = &self.field.from_bigint(-(floor_beta + BigInt::from(1))) * &inv_b1;
        let inv_beta = self.beta.inv().expect("β ≠ 0");
        Predicates {
            digit_range_ok: floor_frac.lt(&self.l) && self.l.le(&beta_frac),
            shift_unique: beta_frac.lt(&self.l) && self.l.le(&-&inv_b1),
            fin_nontrivial: self.contains(&inv_beta) || self.contains(&-&inv_beta),
            zero_in_domain: self.contains(&(&one - &one)),
        }
    }
}

fn to_digit(n: &BigInt) -> Result<i64> {
    n.to_i64().ok_or_else(|| Error::DomainViolation(format!("digit {n} out of range")))
}

impl FieldElement {
    /// `self * beta`, using the cheap basis shift when `beta` is the
    /// generator itself.
    pub(crate) fn mul_beta_of(&self, beta: &FieldElement) -> FieldElement {
        if self.field().degree() > 1 {
            self.mul_beta()
        } else {
            self * beta
        }
    }
}

impl fmt::Debug for NumerationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(−β, l) system: β = {}, l = {}", self.field.generator(), self.l)
    }
}
