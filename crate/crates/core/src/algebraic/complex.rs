//! Floating-point approximations of all complex roots of an integer
//! polynomial (Aberth–Ehrlich iteration). Nothing here is certified; callers
//! that need exact answers must verify what they take from these values.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::FieldElement;
use super::poly::{q_divrem, q_squarefree, IntPolynomial, Sturm};
#[cfg(test)]
use super::poly::q_mul;

const MAX_ROUNDS: usize = 2000;

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Approximate roots of `p`, with multiplicity, in no particular order.
pub fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let lead = p.leading().to_f64().unwrap_or(f64::INFINITY);
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|a| Complex64::new(a.to_f64().unwrap_or(f64::NAN) / lead, 0.0))
        .collect();
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    let radius = 1.0 + c[..d].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..MAX_ROUNDS {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = horner(&c, z[i]);
            if v.is_zero() {
                continue;
            }
            let ratio = v / dv;
            let repulse: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// The images of `e` under every embedding of its field into C, the real
/// embedding first.
pub fn conjugate_values(e: &FieldElement) -> Vec<Complex64> {
    let field = e.field();
    let beta = field.generator().to_f64();
    let mut roots = complex_roots(field.generator().minpoly());
    roots.sort_by(|a, b| {
        let da = (a - Complex64::new(beta, 0.0)).norm();
        let db = (b - Complex64::new(beta, 0.0)).norm();
        da.total_cmp(&db)
    });
    roots
        .into_iter()
        .map(|z| {
            e.coords()
                .iter()
                .rev()
                .fold(Complex64::zero(), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
        })
        .collect()
}

/// The lowest-degree integer factor of `p` vanishing at the unique root of
/// `p` in `[lo, hi]`.
///
/// Candidates are products of linear factors over subsets of the numerical
/// roots, rounded to integer coefficients; a candidate is accepted only when
/// it divides `p` exactly and changes sign on `[lo, hi]`. Falls back to the
/// squarefree part of `p`.
pub(crate) fn factor_with_root(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> IntPolynomial {
    let sqf = IntPolynomial::primitive_from_rational(&q_squarefree(&p.to_rational()))
        .expect("nonzero polynomial");
    let holds_root = |c: &IntPolynomial| {
        let q = c.to_rational();
        c.sign_at(lo) == 0 || Sturm::new(&q).count_roots(lo, hi) > 0
    };
    let divides = |c: &IntPolynomial| q_divrem(&sqf.to_rational(), &c.to_rational()).1.is_empty();
    if let Some(roots) = sqf.rational_roots() {
        if let Some(r) = roots.iter().find(|r| *r >= lo && *r <= hi) {
            return IntPolynomial::primitive_from_rational(&[-r.clone(), BigRational::one()])
                .expect("linear");
        }
    }
    let n = sqf.degree();
    if n > MAX_SUBSET_DEGREE {
        return sqf;
    }
    let rho = ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN);
    let roots = complex_roots(&sqf);
    let Some(ri) = (0..n).min_by(|&a, &b| {
        (roots[a] - rho).norm().total_cmp(&(roots[b] - rho).norm())
    }) else {
        return sqf;
    };
    let others: Vec<Complex64> = (0..n).filter(|&i| i != ri).map(|i| roots[i]).collect();
    let lead = sqf.leading().to_f64().unwrap_or(1.0);
    for k in 1..n {
        for mask in 0u32..(1 << others.len()) {
            if mask.count_ones() as usize != k - 1 {
                continue;
            }
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            let chosen = std::iter::once(roots[ri])
                .chain((0..others.len()).filter(|i| mask & (1 << i) != 0).map(|i| others[i]));
            for z in chosen {
                let mut next = vec![Complex64::zero(); prod.len() + 1];
                for (i, c) in prod.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * z;
                }
                prod = next;
            }
            // try the monic product and its scaling by the leading coefficient
            for scale in [1.0, lead.abs()] {
                let mut ok = true;
                let coeffs: Vec<BigInt> = prod
                    .iter()
                    .map(|c| {
                        let v = c * scale;
                        let r = v.re.round();
                        if (v.re - r).abs() > 1e-6 * (1.0 + r.abs()) || v.im.abs() > 1e-6 * (1.0 + r.abs()) {
                            ok = false;
                        }
                        BigInt::from(r as i64)
                    })
                    .collect();
                if !ok {
                    continue;
                }
                if let Ok(c) = IntPolynomial::new(coeffs) {
                    if c.degree() == k && divides(&c) && holds_root(&c) {
                        return c.primitive();
                    }
                }
            }
        }
    }
    sqf
}

const MAX_SUBSET_DEGREE: usize = 18;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_factor() {
        // (x^2 - 3x + 1)(x^3 - x - 1)(x - 5)
        let a = IntPolynomial::from_i64(&[1, -3, 1]).unwrap().to_rational();
        let b = IntPolynomial::from_i64(&[-1, -1, 0, 1]).unwrap().to_rational();
        let c = IntPolynomial::from_i64(&[-5, 1]).unwrap().to_rational();
        let p = IntPolynomial::primitive_from_rational(&q_mul(&q_mul(&a, &b), &c)).unwrap();
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(factor_with_root(&p, &q(2, 1), &q(3, 1)).coeffs(), IntPolynomial::from_i64(&[1, -3, 1]).unwrap().coeffs());
        assert_eq!(factor_with_root(&p, &q(13, 10), &q(14, 10)).degree(), 3);
        assert_eq!(factor_with_root(&p, &q(4, 1), &q(6, 1)).degree(), 1);
    }

    #[test]
    fn roots_of_cubic() {
        let p = IntPolynomial::from_i64(&[-1, -1, 0, 1]).unwrap();
        let mut r = complex_roots(&p);
        r.sort_by(|a, b| b.re.total_cmp(&a.re));
        assert!((r[0].re - 1.324_717_957_244_746).abs() < 1e-12);
        assert!((r[1].norm() - 0.868_836_961).abs() < 1e-8);
    }

    #[test]
    fn roots_with_repeats_still_converge_roughly() {
        let p = IntPolynomial::from_i64(&[1, -2, 1]).unwrap();
        for z in complex_roots(&p) {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-6);
        }
    }
}
