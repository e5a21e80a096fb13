//! Integer polynomials and the handful of rational-polynomial routines the
//! rest of the crate needs (Euclidean division, gcd, Sturm sequences).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients in ascending
/// degree order. The leading coefficient is always nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidPolynomial("zero polynomial".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses a comma-separated ascending coefficient list such as `-1,-1,0,1`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    /// Builds the primitive integer polynomial with positive leading
    /// coefficient that is a rational multiple of `q`.
    pub fn primitive_from_rational(q: &[BigRational]) -> Result<Self> {
        let q = trimmed(q.to_vec());
        if q.is_empty() {
            return Err(Error::InvalidPolynomial("zero polynomial".into()));
        }
        let den = q
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = q.iter().map(|c| (c * &den).to_integer()).collect();
        Ok(Self::new(ints)?.primitive())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Divides out the content and normalizes the leading coefficient to be
    /// positive.
    pub fn primitive(&self) -> Self {
        let content = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        let div = content * sign;
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c / &div).collect() }
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().cloned().map(BigRational::from_integer).collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of the polynomial at a rational point, computed on the
    /// homogenized integer form to avoid rational normalization.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // sum a_i n^i d^(deg - i), evaluated Horner-style from the top
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        sign_of_int(&acc)
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect()
    }

    /// `x^d p(1/x) == p(x)`, i.e. the coefficient list is a palindrome.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// All rational roots, or `None` when the constant or leading
    /// coefficient is too large for divisor enumeration.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        let mut roots = Vec::new();
        // strip factors of x first
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let a0 = self.coeffs[low].abs();
        let an = self.leading().abs();
        let limit = BigInt::from(1_000_000_000_000u64);
        if a0 > limit || an > limit {
            return None;
        }
        let p_divs = divisors(u64::try_from(&a0).ok()?);
        let q_divs = divisors(u64::try_from(&an).ok()?);
        for p in &p_divs {
            for q in &q_divs {
                for s in [1i64, -1] {
                    let cand = BigRational::new(BigInt::from(*p) * s, BigInt::from(*q));
                    if cand.denom() != &BigInt::from(*q) && q != &1 {
                        // non-reduced duplicate
                        continue;
                    }
                    if self.sign_at(&cand) == 0 && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }

    /// Cauchy bound: every complex root has modulus below the returned value.
    pub fn root_bound(&self) -> BigRational {
        let lead = BigRational::from_integer(self.leading().abs());
        let max = self.coeffs[..self.degree()]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn sign_of_int(n: &BigInt) -> i8 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn sign_of_rat(n: &BigRational) -> i8 {
    sign_of_int(n.numer())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------------------
// Rational polynomial helpers. Coefficients ascending; the zero polynomial is
// the empty vector.

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trimmed(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn int_to_q(p: &[BigInt]) -> QPoly {
    trimmed(p.iter().cloned().map(BigRational::from_integer).collect())
}

pub(crate) fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub(crate) fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Euclidean division `a = q*b + r`, `deg r < deg b`. Panics on `b == 0`.
pub(crate) fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trimmed(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trimmed(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        r = trimmed(r);
    }
    (trimmed(q), r)
}

pub(crate) fn q_rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    q_divrem(a, b).1
}

pub(crate) fn q_monic(p: QPoly) -> QPoly {
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

/// Monic gcd.
pub(crate) fn q_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    while !b.is_empty() {
        let r = q_rem(&a, &b);
        a = b;
        b = r;
    }
    q_monic(a)
}

pub(crate) fn q_derivative(p: &[BigRational]) -> QPoly {
    trimmed(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub(crate) fn q_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Squarefree part `p / gcd(p, p')`, monic.
pub(crate) fn q_squarefree(p: &[BigRational]) -> QPoly {
    let g = q_gcd(p, &q_derivative(p));
    q_monic(q_divrem(p, &g).0)
}

/// Sturm sequence of `p` (which should be squarefree for root counting to be
/// meaningful at multiple roots, though distinct-root counts hold regardless).
#[derive(Clone, Debug)]
pub(crate) struct Sturm {
    seq: Vec<QPoly>,
}

impl Sturm {
    pub fn new(p: &[BigRational]) -> Self {
        let p0 = trimmed(p.to_vec());
        let p1 = q_derivative(&p0);
        let mut seq = vec![p0];
        if !p1.is_empty() {
            seq.push(p1);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = q_rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm { seq }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.seq {
            let s = sign_of_rat(&q_eval(p, x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }
}
