#![allow(dead_code)]

use negabeta::algebraic::{AlgebraicReal, FieldElement, NumberField};
use negabeta::numeration::{NumerationSystem, Preset};
use num_rational::BigRational;
use rand::Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn field(coeffs: &[i64], lo: i64, hi: i64) -> NumberField {
    NumberField::new(AlgebraicReal::from_i64(coeffs, (lo, 1), (hi, 1)).unwrap()).unwrap()
}

pub fn tau() -> NumberField {
    field(&[-1, -1, 1], 1, 2)
}

/// Real root of x³ − x − 1.
pub fn plastic() -> NumberField {
    field(&[-1, -1, 0, 1], 1, 2)
}

pub fn two() -> NumberField {
    field(&[-2, 1], 2, 2)
}

/// (3 + √5)/2, root of x² − 3x + 1.
pub fn golden_square() -> NumberField {
    field(&[1, -3, 1], 2, 3)
}

/// 1 + √2.
pub fn silver() -> NumberField {
    field(&[-1, -2, 1], 2, 3)
}

pub fn preset(f: &NumberField, p: Preset) -> NumerationSystem {
    NumerationSystem::preset(f, p).unwrap()
}

/// The grid bases, each with a short label.
pub fn grid_bases() -> Vec<(&'static str, NumberField)> {
    vec![
        ("tau", tau()),
        ("plastic", plastic()),
        ("2", two()),
        ("(3+sqrt5)/2", golden_square()),
        ("1+sqrt2", silver()),
    ]
}

/// Left endpoints −β/(β+1), −1/2, −1/β, −1/(β+1) and 0, without repeats.
pub fn grid_endpoints(f: &NumberField) -> Vec<FieldElement> {
    let b = f.beta();
    let b1_inv = b.add_int(1).inv().unwrap();
    let candidates = vec![
        -(&b * &b1_inv),
        f.from_rational(q(-1, 2)),
        -b.inv().unwrap(),
        -b1_inv,
        f.zero(),
    ];
    let mut out: Vec<FieldElement> = Vec::new();
    for c in candidates {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

pub fn grid_systems() -> Vec<(String, NumerationSystem)> {
    let mut out = Vec::new();
    for (name, f) in grid_bases() {
        for l in grid_endpoints(&f) {
            let label = format!("beta={name} l={l}");
            out.push((label, NumerationSystem::new(l).unwrap()));
        }
    }
    out
}

/// A random element of the domain whose coordinates have numerators and
/// denominators bounded by `bound`.
pub fn random_element(s: &NumerationSystem, rng: &mut impl Rng, bound: i64) -> FieldElement {
    let f = s.field();
    loop {
        let coords = (0..f.degree())
            .map(|_| q(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound)))
            .collect();
        let x = f.element(coords).unwrap();
        if s.contains(&x) {
            return x;
        }
    }
}

/// A random rational in the domain with denominator at most `den`.
pub fn random_rational(s: &NumerationSystem, rng: &mut impl Rng, den: i64) -> FieldElement {
    let f = s.field();
    loop {
        let d = rng.gen_range(1..=den);
        let n = rng.gen_range(-d..=d);
        let x = f.from_rational(q(n, d));
        if s.contains(&x) {
            return x;
        }
    }
}
