use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a word stops or repeats forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordKind {
    Finite,
    EventuallyPeriodic,
}

/// A digit string `u v^ω` (or just `u` when finite).
///
/// Eventually periodic words are kept normalized: the period is primitive and
/// the preperiod is as short as possible, so equal infinite strings compare
/// equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitWord {
    pre: Vec<i64>,
    per: Vec<i64>,
}

impl DigitWord {
    pub fn new(pre: Vec<i64>, per: Vec<i64>) -> Self {
        let mut w = DigitWord { pre, per };
        w.normalize();
        w
    }

    pub fn finite(digits: Vec<i64>) -> Self {
        DigitWord { pre: digits, per: Vec::new() }
    }

    pub fn periodic(per: Vec<i64>) -> Self {
        Self::new(Vec::new(), per)
    }

    pub fn pre(&self) -> &[i64] {
        &self.pre
    }

    pub fn per(&self) -> &[i64] {
        &self.per
    }

    pub fn kind(&self) -> WordKind {
        if self.per.is_empty() {
            WordKind::Finite
        } else {
            WordKind::EventuallyPeriodic
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty() && !self.per.is_empty()
    }

    /// The infinite word a finite word stands for, `w 0^ω`.
    pub fn to_infinite(&self) -> DigitWord {
        if self.per.is_empty() {
            DigitWord::new(self.pre.clone(), vec![0])
        } else {
            self.clone()
        }
    }

    /// Digit at 0-based position `i`; finite words read as zero-padded.
    pub fn digit(&self, i: usize) -> i64 {
        if i < self.pre.len() {
            self.pre[i]
        } else if self.per.is_empty() {
            0
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// `σ^k` of the word, as an infinite word.
    pub fn shift(&self, k: usize) -> DigitWord {
        let w = self.to_infinite();
        if k <= w.pre.len() {
            return DigitWord::new(w.pre[k..].to_vec(), w.per.clone());
        }
        let r = (k - w.pre.len()) % w.per.len();
        let mut per = w.per[r..].to_vec();
        per.extend_from_slice(&w.per[..r]);
        DigitWord::new(Vec::new(), per)
    }

    /// All distinct suffixes `σ^0 … σ^(|pre|+|per|-1)` of the infinite word;
    /// every later shift repeats one of these.
    pub fn suffixes(&self) -> Vec<DigitWord> {
        let w = self.to_infinite();
        (0..w.pre.len() + w.per.len()).map(|k| w.shift(k)).collect()
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &[i64]) -> DigitWord {
        let w = self.to_infinite();
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&w.pre);
        DigitWord::new(pre, w.per)
    }

    pub fn negated(&self) -> DigitWord {
        DigitWord {
            pre: self.pre.iter().map(|d| -d).collect(),
            per: self.per.iter().map(|d| -d).collect(),
        }
    }

    /// Length of the preperiod plus one period, the number of positions that
    /// determine the word.
    pub fn span(&self) -> usize {
        let w = self.to_infinite();
        w.pre.len() + w.per.len()
    }

    pub fn digits(&self) -> impl Iterator<Item = i64> + '_ {
        self.pre.iter().chain(self.per.iter()).copied()
    }

    fn normalize(&mut self) {
        if self.per.is_empty() {
            return;
        }
        let p = primitive_period(&self.per);
        self.per.truncate(p);
        while let Some(&last) = self.pre.last() {
            if last != *self.per.last().unwrap() {
                break;
            }
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }
}

/// Length of the shortest `p` dividing `|w|` with `w` a power of `w[..p]`,
/// from the prefix function.
fn primitive_period(w: &[i64]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

/// First 0-based position where the two infinite words differ, scanning no
/// further than the point after which both are jointly periodic.
pub fn first_difference(a: &DigitWord, b: &DigitWord) -> Option<usize> {
    let a = a.to_infinite();
    let b = b.to_infinite();
    let bound = comparison_bound(&a, &b);
    (0..bound).find(|&i| a.digit(i) != b.digit(i))
}

/// `|u_a| + |u_b| + lcm(|p_a|, |p_b|)`.
pub fn comparison_bound(a: &DigitWord, b: &DigitWord) -> usize {
    let (a, b) = (a.to_infinite(), b.to_infinite());
    let (x, y) = (a.per.len(), b.per.len());
    a.pre.len() + b.pre.len() + num_integer::lcm(x, y)
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.pre {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        if !self.per.is_empty() {
            if !first {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (i, d) in self.per.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{d}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    /// Parses `"2 0 0 (2 1)"`; a word without parentheses is finite.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("digit word {s:?}: {m}"));
        let parse_digits = |t: &str| -> Result<Vec<i64>> {
            t.split_whitespace()
                .map(|d| d.parse::<i64>().map_err(|_| bad(&format!("bad digit {d:?}"))))
                .collect()
        };
        let s = s.trim();
        match s.find('(') {
            None => {
                if s.contains(')') {
                    return Err(bad("unbalanced parenthesis"));
                }
                Ok(DigitWord::finite(parse_digits(s)?))
            }
            Some(open) => {
                let rest = &s[open + 1..];
                let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
                if !rest[close + 1..].trim().is_empty() {
                    return Err(bad("text after the period"));
                }
                let per = parse_digits(&rest[..close])?;
                if per.is_empty() {
                    return Err(bad("empty period"));
                }
                Ok(DigitWord::new(parse_digits(&s[..open])?, per))
            }
        }
    }
}
