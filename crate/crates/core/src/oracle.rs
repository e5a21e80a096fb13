//! An independent digit engine on rational intervals.
//!
//! Every quantity is an interval with endpoints on the grid `2^-P`, rounded
//! outward after each operation. A digit is emitted only when the whole
//! interval for `−βx − l` has a single floor.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebraic::FieldElement;
use crate::numeration::{digits_prefix, NumerationSystem};

pub const DEFAULT_ORACLE_BITS: u32 = 128;
pub const MAX_ORACLE_BITS: u32 = 1024;
pub const DEFAULT_SAMPLE_SEED: u64 = 0x5eed_0fd1_6175;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    /// `None` when `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Option<Self> {
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        RatInterval { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        RatInterval::new(self.lo.clone().max(other.lo.clone()), self.hi.clone().min(other.hi.clone()))
    }

    fn round_out(self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let down = |q: &BigRational| (q * &scale).floor().to_integer();
        let up = |q: &BigRational| (q * &scale).ceil().to_integer();
        RatInterval {
            lo: BigRational::new(down(&self.lo), scale.clone()),
            hi: BigRational::new(up(&self.hi), scale),
        }
    }

    fn mul(&self, o: &RatInterval) -> RatInterval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    fn sub(&self, o: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn neg(&self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }

    fn shift(&self, k: &BigInt) -> RatInterval {
        let k = BigRational::from_integer(k.clone());
        RatInterval { lo: &self.lo + &k, hi: &self.hi + &k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AbortReason {
    None,
    /// The interval is narrower than 1 yet contains an integer.
    BoundaryUncertain,
    /// The interval has grown to width 1 or more.
    PrecisionExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedOrbit {
    pub digits: Vec<i64>,
    pub certified_count: usize,
    pub abort_reason: AbortReason,
}

pub fn oracle_expand(
    beta: &RatInterval,
    l: &RatInterval,
    x: &RatInterval,
    n: usize,
    precision_bits: u32,
) -> CertifiedOrbit {
    let beta = beta.clone().round_out(precision_bits);
    let l = l.clone().round_out(precision_bits);
    let mut x = x.clone().round_out(precision_bits);
    let mut digits = Vec::with_capacity(n);
    let mut abort_reason = AbortReason::None;
    for _ in 0..n {
        let bx = beta.mul(&x).neg().round_out(precision_bits);
        let c = bx.sub(&l);
        let lo = c.lo.floor().to_integer();
        let hi = c.hi.floor().to_integer();
        if lo != hi {
            abort_reason = if c.width() >= BigRational::one() {
                AbortReason::PrecisionExhausted
            } else {
                AbortReason::BoundaryUncertain
            };
            break;
        }
        let Some(d) = lo.to_i64() else {
            abort_reason = AbortReason::PrecisionExhausted;
            break;
        };
        digits.push(d);
        x = bx.shift(&-lo);
    }
    CertifiedOrbit { certified_count: digits.len(), digits, abort_reason }
}

/// Enclosures of `β`, `l` and `x`.
#[derive(Clone, Debug)]
pub struct OracleInputs {
    pub beta: RatInterval,
    pub l: RatInterval,
    pub x: RatInterval,
}

/// Runs the oracle at `start_bits`, then at twice that, and so on up to
/// `max_bits`, until `n` digits are certified. Each new set of enclosures is
/// intersected with the previous one.
pub fn oracle_expand_refining(
    mut enclose: impl FnMut(u32) -> OracleInputs,
    n: usize,
    start_bits: u32,
    max_bits: u32,
) -> (CertifiedOrbit, u32) {
    let mut bits = start_bits.max(1);
    let mut held: Option<OracleInputs> = None;
    loop {
        let fresh = enclose(bits);
        let inputs = match held {
            None => fresh,
            Some(prev) => OracleInputs {
                beta: prev.beta.intersect(&fresh.beta).unwrap_or(fresh.beta),
                l: prev.l.intersect(&fresh.l).unwrap_or(fresh.l),
                x: prev.x.intersect(&fresh.x).unwrap_or(fresh.x),
            },
        };
        let orbit = oracle_expand(&inputs.beta, &inputs.l, &inputs.x, n, bits);
        if orbit.certified_count == n || bits >= max_bits {
            return (orbit, bits);
        }
        held = Some(inputs);
        bits = (bits * 2).min(max_bits);
    }
}

fn enclosure(e: &FieldElement, bits: u32) -> RatInterval {
    let (lo, hi) = e.enclosure(u64::from(bits) + 16);
    RatInterval { lo, hi }
}

pub fn system_inputs(s: &NumerationSystem, x: &FieldElement, bits: u32) -> OracleInputs {
    OracleInputs { beta: enclosure(s.beta(), bits), l: enclosure(s.l(), bits), x: enclosure(x, bits) }
}

/// Certified digits of `x` in the system `s`, refining from `bits` upward.
pub fn oracle_expand_system(s: &NumerationSystem, x: &FieldElement, n: usize, bits: u32) -> CertifiedOrbit {
    oracle_expand_refining(|b| system_inputs(s, x, b), n, bits, MAX_ORACLE_BITS.max(bits)).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub x: String,
    pub position: usize,
    pub exact: i64,
    pub oracle: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub trials: usize,
    pub depth: usize,
    pub mismatches: Vec<Mismatch>,
}

/// `trials` random rationals in `[l, r)`, drawn from a generator seeded with
/// `seed`.
pub fn sample_rationals(s: &NumerationSystem, trials: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = s.l().to_f64();
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let den: i64 = rng.gen_range(1..=1000);
        let t: f64 = l + rng.gen::<f64>();
        let num = (t * den as f64).floor() as i64;
        let q = BigRational::new(num.into(), den.into());
        if s.contains(&s.field().from_rational(q.clone())) {
            out.push(q);
        }
    }
    out
}

pub fn oracle_sample_check(s: &NumerationSystem, trials: usize, depth: usize, seed: u64) -> OracleReport {
    oracle_sample_check_bits(s, trials, depth, seed, DEFAULT_ORACLE_BITS)
}

pub fn oracle_sample_check_bits(
    s: &NumerationSystem,
    trials: usize,
    depth: usize,
    seed: u64,
    bits: u32,
) -> OracleReport {
    let samples = sample_rationals(s, trials, seed);
    let mismatches = samples
        .par_iter()
        .flat_map_iter(|q| {
            let x = s.field().from_rational(q.clone());
            let (exact, _) = digits_prefix(s, &x, depth).expect("sample lies in the domain");
            let orbit = oracle_expand_system(s, &x, depth, bits);
            orbit
                .digits
                .iter()
                .zip(&exact)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(i, (&oracle, &exact))| Mismatch { x: q.to_string(), position: i + 1, exact, oracle })
                .collect::<Vec<_>>()
        })
        .collect();
    OracleReport { trials, depth, mismatches }
}

/// Reads `"a/b"` or `"a"` or a decimal like `"1.25"` as a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n.trim().parse().ok()?, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let whole: BigInt = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().ok()? };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let mag = whole.abs() * &scale + f;
        return Some(BigRational::new(if neg { -mag } else { mag }, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{AlgebraicReal, NumberField};
    use crate::numeration::Preset;
    use crate::reference::{reference, Reference};
    use proptest::prelude::*;

    fn system(c: &[i64], lo: i64, hi: i64, p: Preset) -> NumerationSystem {
        let f = NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap();
        NumerationSystem::preset(&f, p).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_is_certified() {
        let s = system(&[-1, -1, 1], 1, 2, Preset::ItoSadahiro);
        let inputs = system_inputs(&s, &s.field().zero(), 128);
        let orbit = oracle_expand(&inputs.beta, &inputs.l, &inputs.x, 40, 128);
        assert_eq!(orbit.digits, vec![0; 40]);
        assert_eq!(orbit.abort_reason, AbortReason::None);
    }

    #[test]
    fn left_endpoint_agrees_with_exact_engine() {
        let s = system(&[-1, -1, 1], 1, 2, Preset::ItoSadahiro);
        let exact = reference(&s, Reference::DL, 1000).digits.prefix(50);
        let orbit = oracle_expand_system(&s, s.l(), 50, 128);
        assert_eq!(orbit.certified_count, 50);
        assert_eq!(orbit.digits, exact);
    }

    #[test]
    fn discontinuity_is_uncertain() {
        let s = system(&[-1, -1, 1], 1, 2, Preset::Balanced);
        let x = s.discontinuities().into_iter().next().expect("a discontinuity");
        let orbit = oracle_expand_system(&s, &x, 5, 128);
        assert_eq!(orbit.certified_count, 0);
        assert_eq!(orbit.abort_reason, AbortReason::BoundaryUncertain);
    }

    #[test]
    fn wide_input_exhausts_precision() {
        let b = RatInterval::new(q(3, 2), q(5, 2)).unwrap();
        let l = RatInterval::point(q(-1, 2));
        let x = RatInterval::new(q(-1, 4), q(1, 4)).unwrap();
        let orbit = oracle_expand(&b, &l, &x, 3, 64);
        assert_eq!(orbit.abort_reason, AbortReason::PrecisionExhausted);
    }

    #[test]
    fn sample_check_finds_no_mismatch() {
        let s = system(&[-1, -1, 1], 1, 2, Preset::ItoSadahiro);
        let report = oracle_sample_check(&s, 20, 30, 7);
        assert!(report.mismatches.is_empty());
        assert_eq!(oracle_sample_check(&s, 0, 30, 7).mismatches, vec![]);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["trials"], 20);
        assert_eq!(json["depth"], 30);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rational("1.25"), Some(q(5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn doubling_precision_never_loses_digits(num in -600i64..400, den in 1i64..1000, bits in 16u32..200) {
            let s = system(&[-1, -1, 0, 1], 1, 2, Preset::Balanced);
            let x = q(num, 1000.max(den));
            prop_assume!(s.contains(&s.field().from_rational(x.clone())));
            let x = s.field().from_rational(x);
            let a = system_inputs(&s, &x, 2 * bits);
            let low = oracle_expand(&a.beta, &a.l, &a.x, 60, bits);
            let high = oracle_expand(&a.beta, &a.l, &a.x, 60, 2 * bits);
            prop_assert!(high.certified_count >= low.certified_count);
            prop_assert_eq!(&high.digits[..low.certified_count], &low.digits[..]);
        }
    }
}
