//! Arithmetic in Q(β) for a real algebraic β, with exact sign and floor
//! decisions.
//!
//! Elements are coordinate vectors in the power basis `1, β, …, β^(d-1)`.
//! Signs of nonzero elements are decided by evaluating the coordinates on a
//! dyadic enclosure of β; enclosures are computed lazily at doubling
//! precisions and memoized per field. Zero is decided symbolically.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{q_divrem, q_gcd, sign_of_rat, trimmed, Sturm};
use super::root::{refine_between, AlgebraicReal, Irreducibility};
use crate::error::{Error, Result};

const BASE_BITS: u64 = 64;

/// The number field Q(β). Cheap to clone; clones share precision caches.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

struct FieldData {
    generator: AlgebraicReal,
    degree: usize,
    /// `β^(d+k)` in the power basis, for `k = 0..d-1`.
    reduction: Vec<Vec<BigRational>>,
    irreducibility: Irreducibility,
    levels: RwLock<Vec<Arc<Level>>>,
}

/// Enclosure of β and its powers at a fixed dyadic precision: for each `i`,
/// `pow_lo[i] <= β^i * 2^bits <= pow_hi[i]`.
struct Level {
    bits: u64,
    lo: BigRational,
    hi: BigRational,
    pow_lo: Vec<BigInt>,
    pow_hi: Vec<BigInt>,
}

impl NumberField {
    /// Builds Q(β). Fails if the defining polynomial is detectably reducible.
    pub fn new(generator: AlgebraicReal) -> Result<Self> {
        let irr = generator.irreducibility();
        if let Irreducibility::Reducible(why) = &irr {
            return Err(Error::Reducible(format!("{}: {why}", generator.minpoly())));
        }
        let d = generator.degree();
        let p = generator.minpoly().to_rational();
        let lead = p[d].clone();
        // β^d = -(a_0 + … + a_{d-1} β^{d-1}) / a_d
        let top: Vec<BigRational> = p[..d].iter().map(|c| -c / &lead).collect();
        let mut reduction = vec![top.clone()];
        for _ in 1..d {
            let prev = reduction.last().unwrap();
            let mut next = vec![BigRational::zero(); d];
            let carry = prev[d - 1].clone();
            for i in (1..d).rev() {
                next[i] = prev[i - 1].clone() + &carry * &top[i];
            }
            next[0] = &carry * &top[0];
            reduction.push(next);
        }
        Ok(NumberField(Arc::new(FieldData {
            generator,
            degree: d,
            reduction,
            irreducibility: irr,
            levels: RwLock::new(Vec::new()),
        })))
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.0.generator
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn irreducibility(&self) -> &Irreducibility {
        &self.0.irreducibility
    }

    /// Two fields are the same when they were built from the same defining
    /// polynomial and isolating interval.
    pub fn same_as(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.generator == other.0.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(&self, n: BigInt) -> FieldElement {
        self.from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    /// β itself.
    pub fn beta(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.coords[0] = self.0.reduction[0][0].clone();
        } else {
            e.coords[1] = BigRational::one();
        }
        e
    }

    /// Element from power-basis coordinates; missing trailing coordinates are
    /// zero.
    pub fn element(&self, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() > self.degree() {
            return Err(Error::Parse(format!(
                "{} coordinates given for a degree-{} field",
                coords.len(),
                self.degree()
            )));
        }
        let mut e = self.zero();
        for (slot, c) in e.coords.iter_mut().zip(coords) {
            *slot = c;
        }
        Ok(e)
    }

    /// Element from an arbitrary-degree polynomial in β, reduced modulo the
    /// defining polynomial.
    pub fn from_poly(&self, poly: &[BigRational]) -> FieldElement {
        let d = self.degree();
        let mut coords = vec![BigRational::zero(); d];
        for (i, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < d {
                coords[i] += c;
            } else {
                let red = self.reduction_of(i);
                for (slot, r) in coords.iter_mut().zip(red.iter()) {
                    *slot += c * r;
                }
            }
        }
        FieldElement { field: self.clone(), coords }
    }

    fn reduction_of(&self, power: usize) -> Vec<BigRational> {
        let d = self.degree();
        if power < 2 * d - 1 {
            return self.0.reduction[power - d].clone();
        }
        let mut e = FieldElement { field: self.clone(), coords: self.0.reduction[d - 1].clone() };
        for _ in (2 * d - 1)..=power {
            e = e.mul_beta();
        }
        e.coords
    }

    /// Dyadic enclosure of β of width at most `2^-bits`.
    pub fn generator_enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        let lvl = self.level_for_bits(bits);
        (lvl.lo.clone(), lvl.hi.clone())
    }

    fn level_for_bits(&self, bits: u64) -> Arc<Level> {
        let mut k = 0;
        while (BASE_BITS << k) < bits {
            k += 1;
        }
        self.level(k)
    }

    fn level(&self, k: usize) -> Arc<Level> {
        if let Some(l) = self.0.levels.read().unwrap().get(k) {
            return l.clone();
        }
        let mut levels = self.0.levels.write().unwrap();
        while levels.len() <= k {
            let bits = BASE_BITS << levels.len();
            let (lo, hi) = match levels.last() {
                Some(prev) => (prev.lo.clone(), prev.hi.clone()),
                None => {
                    let (lo, hi) = self.0.generator.interval();
                    (lo.clone(), hi.clone())
                }
            };
            let width = BigRational::new(BigInt::one(), BigInt::one() << (bits + 8));
            let (lo, hi) = refine_between(self.0.generator.minpoly(), lo, hi, &width);
            levels.push(Arc::new(Level::new(bits, lo, hi, self.degree())));
        }
        levels[k].clone()
    }
}

impl Level {
    fn new(bits: u64, lo: BigRational, hi: BigRational, d: usize) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        let mut pow_lo = Vec::with_capacity(d);
        let mut pow_hi = Vec::with_capacity(d);
        for _ in 0..d {
            pow_lo.push((&plo * &scale).floor().to_integer());
            pow_hi.push((&phi * &scale).ceil().to_integer());
            let cands = [&plo * &lo, &plo * &hi, &phi * &lo, &phi * &hi];
            plo = cands.iter().min().unwrap().clone();
            phi = cands.iter().max().unwrap().clone();
        }
        Level { bits, lo, hi, pow_lo, pow_hi }
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.0.generator)
    }
}

/// An element of Q(β).
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<BigRational>,
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

/// Second operand of [`field_arith`].
pub enum Operand<'a> {
    Element(&'a FieldElement),
    Scalar(&'a BigRational),
    None,
}

/// Checked dispatcher over the field operations. `Neg` and `Inv` ignore the
/// second operand; a `Scalar` operand is only meaningful for `Mul`.
pub fn field_arith(op: FieldOp, a: &FieldElement, b: Operand<'_>) -> Result<FieldElement> {
    match (op, b) {
        (FieldOp::Neg, _) => Ok(-a),
        (FieldOp::Inv, _) => a.inv(),
        (FieldOp::Mul, Operand::Scalar(q)) => Ok(a.scalar_mul(q)),
        (FieldOp::Add, Operand::Scalar(q)) => Ok(a + &a.field.from_rational(q.clone())),
        (FieldOp::Sub, Operand::Scalar(q)) => Ok(a - &a.field.from_rational(q.clone())),
        (op, Operand::Element(b)) => {
            a.check_field(b)?;
            Ok(match op {
                FieldOp::Add => a + b,
                FieldOp::Sub => a - b,
                FieldOp::Mul => a * b,
                FieldOp::Neg | FieldOp::Inv => unreachable!(),
            })
        }
        (_, Operand::None) => Err(Error::Parse("missing second operand".into())),
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The element as a rational, when it has no irrational part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn check_field(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_field(other)?;
        Ok(self * other)
    }

    pub fn scalar_mul(&self, q: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn add_int(&self, n: i64) -> FieldElement {
        let mut e = self.clone();
        e.coords[0] += BigRational::from_integer(n.into());
        e
    }

    /// `β * self`, computed by a basis shift plus one reduction.
    pub fn mul_beta(&self) -> FieldElement {
        let d = self.coords.len();
        let top = &self.field.0.reduction[0];
        let carry = &self.coords[d - 1];
        let mut coords = Vec::with_capacity(d);
        if carry.is_zero() {
            coords.push(BigRational::zero());
            coords.extend(self.coords[..d - 1].iter().cloned());
        } else {
            coords.push(carry * &top[0]);
            for i in 1..d {
                coords.push(&self.coords[i - 1] + carry * &top[i]);
            }
        }
        FieldElement { field: self.field.clone(), coords }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo
    /// the defining polynomial.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coords.len();
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let p = self.field.0.generator.minpoly().to_rational();
        let a = trimmed(self.coords.clone());
        // invariant: s_i * a ≡ r_i (mod p)
        let (mut r0, mut r1) = (p, a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = q_divrem(&r0, &r1);
            let s2 = super::poly::q_sub(&s0, &super::poly::q_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() > 1 {
            // nontrivial common factor: either self vanishes at β or the
            // defining polynomial was reducible after all
            if self.sign() == 0 {
                return Err(Error::DivisionByZero);
            }
            return Err(Error::Reducible(format!(
                "{} shares a factor with an element",
                self.field.0.generator.minpoly()
            )));
        }
        let g = r0[0].clone();
        let s: Vec<BigRational> = s0.into_iter().map(|c| c / &g).collect();
        let mut out = self.field.from_poly(&s);
        out.coords.truncate(d);
        Ok(out)
    }

    /// Common denominator form: `self = (Σ nums[i] β^i) / den`, `den > 0`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    /// `(a, b, s)` with `a/s <= self <= b/s` at precision level `k`.
    fn scaled_enclosure(&self, nums: &[BigInt], den: &BigInt, k: usize) -> (BigInt, BigInt, BigInt) {
        let lvl = self.field.level(k);
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        for (i, n) in nums.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            if n.is_positive() {
                a += n * &lvl.pow_lo[i];
                b += n * &lvl.pow_hi[i];
            } else {
                a += n * &lvl.pow_hi[i];
                b += n * &lvl.pow_lo[i];
            }
        }
        (a, b, den << lvl.bits)
    }

    /// Rational interval containing `self`, of width roughly `2^-bits`
    /// relative to the coordinate sizes.
    pub fn enclosure(&self, bits: u64) -> (BigRational, BigRational) {
        if let Some(q) = self.as_rational() {
            return (q.clone(), q.clone());
        }
        let (nums, den) = self.integer_form();
        let mut k = 0;
        while (BASE_BITS << k) < bits {
            k += 1;
        }
        let (a, b, s) = self.scaled_enclosure(&nums, &den, k);
        (BigRational::new(a, s.clone()), BigRational::new(b, s))
    }

    /// Does the element vanish at β despite having nonzero coordinates?
    /// Only possible when the defining polynomial is reducible.
    fn vanishes_at_generator(&self) -> bool {
        let p = self.field.0.generator.minpoly().to_rational();
        let g = q_gcd(&p, &trimmed(self.coords.clone()));
        if g.len() <= 1 {
            return false;
        }
        let (lo, hi) = self.field.0.generator.interval();
        let g_int = super::poly::IntPolynomial::primitive_from_rational(&g)
            .expect("gcd is nonzero");
        g_int.sign_at(lo) == 0 || Sturm::new(&g).count_roots(lo, hi) > 0
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        if let Some(q) = self.as_rational() {
            return sign_of_rat(q);
        }
        let (nums, den) = self.integer_form();
        for k in 0.. {
            let (a, b, _) = self.scaled_enclosure(&nums, &den, k);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            if k == 1 && self.vanishes_at_generator() {
                return 0;
            }
        }
        unreachable!()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let (nums, den) = self.integer_form();
        for k in 0.. {
            let (a, b, s) = self.scaled_enclosure(&nums, &den, k);
            let n: BigInt = a.div_floor(&s);
            let next: BigInt = &n + 1;
            if b < &next * &s {
                return n;
            }
            if b < (&n + 2) * &s {
                // exactly one integer candidate inside the enclosure
                let diff = self - &self.field.from_bigint(next.clone());
                return if diff.sign() >= 0 { next } else { n };
            }
        }
        unreachable!()
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &FieldElement) -> std::cmp::Ordering {
        match (self - other).sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn lt(&self, other: &FieldElement) -> bool {
        self.cmp_exact(other).is_lt()
    }

    pub fn le(&self, other: &FieldElement) -> bool {
        self.cmp_exact(other).is_le()
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Largest absolute numerator/denominator over all coordinates, a rough
    /// height measure for diagnostics.
    pub fn height_bits(&self) -> u64 {
        self.coords
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "b")?;
                    } else {
                        write!(f, "b^{i}")?;
                    }
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operators assume both operands share a field and panic otherwise; use the
// `checked_*` methods or `field_arith` on untrusted input.

fn assert_same(a: &FieldElement, b: &FieldElement) {
    assert!(a.field.same_as(&b.field), "field elements over different bases");
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        let d = self.coords.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<BigRational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, r) in coords.iter_mut().zip(&self.field.0.reduction[k]) {
                *slot += c * r;
            }
        }
        FieldElement { field: self.field.clone(), coords }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
