use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::order::alt_cmp;
use crate::numeration::DigitWord;
use crate::reference::References;

/// Deterministic automaton over digits; every state accepts. It recognizes
/// the finite words that can be extended to an admissible expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAutomaton {
    alphabet: Vec<i64>,
    initial: usize,
    transitions: Vec<BTreeMap<i64, usize>>,
}

#[derive(Serialize)]
struct AutomatonJson {
    states: usize,
    initial: usize,
    transitions: Vec<(usize, i64, usize)>,
}

/// Distinct suffixes of the two reference words, each with its first digit
/// and the index of its shift.
struct SuffixTable {
    words: Vec<DigitWord>,
    head: Vec<i64>,
    tail: Vec<usize>,
    dl: usize,
    dr: usize,
}

impl SuffixTable {
    fn new(dl: &DigitWord, dr: &DigitWord) -> Self {
        let mut index: HashMap<DigitWord, usize> = HashMap::new();
        let mut words = Vec::new();
        for s in dl.suffixes().into_iter().chain(dr.suffixes()) {
            index.entry(s.clone()).or_insert_with(|| {
                words.push(s);
                words.len() - 1
            });
        }
        let head = words.iter().map(|w| w.digit(0)).collect();
        // the suffix set is closed under the shift
        let tail = words.iter().map(|w| index[&w.shift(1)]).collect();
        let dl_id = index[&dl.to_infinite()];
        let dr_id = index[&dr.to_infinite()];
        SuffixTable { words, head, tail, dl: dl_id, dr: dr_id }
    }

    fn cmp(&self, a: usize, b: usize) -> Ordering {
        if a == b {
            Ordering::Equal
        } else {
            alt_cmp(&self.words[a], &self.words[b])
        }
    }
}

/// What reading a digit does to one bound.
enum Effect {
    Drop,
    Fatal,
    Flip(usize),
}

/// The state is the tightest pending lower bound and the tightest pending
/// upper bound on the unread remainder of the word, both suffixes of the
/// references. A bound `W` on a remainder starting with digit `c`: the first
/// position is odd, so `c` above `W`'s head makes the remainder smaller.
/// Matching the head passes `σW` on as a bound of the opposite kind.
pub fn build_automaton(refs: &References, alphabet: &[i64]) -> ShiftAutomaton {
    let table = SuffixTable::new(&refs.dl, &refs.dstar_r);
    let lower_effect = |w: usize, c: i64| match c.cmp(&table.head[w]) {
        Ordering::Less => Effect::Drop,
        Ordering::Greater => Effect::Fatal,
        Ordering::Equal => Effect::Flip(table.tail[w]),
    };
    let upper_effect = |w: usize, c: i64| match c.cmp(&table.head[w]) {
        Ordering::Greater => Effect::Drop,
        Ordering::Less => Effect::Fatal,
        Ordering::Equal => Effect::Flip(table.tail[w]),
    };
    let max_of = |a: usize, b: usize| if table.cmp(a, b) == Ordering::Less { b } else { a };
    let min_of = |a: usize, b: usize| if table.cmp(a, b) == Ordering::Greater { b } else { a };

    let start = (table.dl, table.dr);
    let mut ids: HashMap<(usize, usize), usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut edges: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let (lo, hi) = states[q];
        for &c in alphabet {
            let mut lower = table.dl;
            let mut upper = table.dr;
            let mut dead = false;
            for effect in [lower_effect(lo, c), upper_effect(hi, c)].into_iter().enumerate() {
                match effect {
                    (_, Effect::Drop) => {}
                    (_, Effect::Fatal) => dead = true,
                    // a matched lower bound becomes an upper bound and vice versa
                    (0, Effect::Flip(w)) => upper = min_of(upper, w),
                    (_, Effect::Flip(w)) => lower = max_of(lower, w),
                }
            }
            if dead || table.cmp(lower, upper) == Ordering::Greater {
                continue;
            }
            let next = *ids.entry((lower, upper)).or_insert_with(|| {
                states.push((lower, upper));
                edges.push(BTreeMap::new());
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            edges[q].insert(c, next);
        }
    }
    let mut a = ShiftAutomaton { alphabet: alphabet.to_vec(), initial: 0, transitions: edges };
    a.trim();
    a.canonical()
}

impl ShiftAutomaton {
    pub fn alphabet(&self) -> &[i64] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn next(&self, q: usize, d: i64) -> Option<usize> {
        self.transitions[q].get(&d).copied()
    }

    pub fn accepts(&self, w: &[i64]) -> bool {
        w.iter().try_fold(self.initial, |q, &d| self.next(q, d)).is_some()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .flat_map(|(q, m)| m.iter().map(move |(&d, &t)| (q, d, t)))
    }

    /// Removes states from which only finitely many words can be read.
    fn trim(&mut self) {
        let n = self.transitions.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for q in 0..n {
                if alive[q] && !self.transitions[q].values().any(|&t| alive[t]) {
                    alive[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for m in &mut self.transitions {
            m.retain(|_, t| alive[*t]);
        }
        if !alive[self.initial] {
            self.transitions = vec![BTreeMap::new()];
            self.initial = 0;
        }
    }

    /// Renumbers states in breadth-first order from the initial state,
    /// following digits in increasing order, and drops unreachable states.
    fn canonical(&self) -> ShiftAutomaton {
        let mut order = vec![usize::MAX; self.transitions.len()];
        let mut seq = vec![self.initial];
        order[self.initial] = 0;
        let mut i = 0;
        while i < seq.len() {
            for &t in self.transitions[seq[i]].values() {
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                }
            }
            i += 1;
        }
        let transitions = seq
            .iter()
            .map(|&q| self.transitions[q].iter().map(|(&d, &t)| (d, order[t])).collect())
            .collect();
        ShiftAutomaton { alphabet: self.alphabet.clone(), initial: 0, transitions }
    }

    /// Minimal equivalent automaton by partition refinement. Missing
    /// transitions go to an implicit rejecting sink.
    pub fn minimize(&self) -> ShiftAutomaton {
        let n = self.transitions.len();
        let sink = n;
        let target = |q: usize, d: i64| {
            if q == sink {
                sink
            } else {
                self.transitions[q].get(&d).copied().unwrap_or(sink)
            }
        };
        let mut class: Vec<usize> = (0..=n).map(|q| usize::from(q == sink)).collect();
        let mut count = if n > 0 { 2 } else { 1 };
        loop {
            let mut sig: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n + 1];
            for q in 0..=n {
                let key = (class[q], self.alphabet.iter().map(|&d| class[target(q, d)]).collect());
                let len = sig.len();
                next[q] = *sig.entry(key).or_insert(len);
            }
            let new_count = sig.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let sink_class = class[sink];
        let mut rep: HashMap<usize, usize> = HashMap::new();
        let mut transitions: Vec<BTreeMap<i64, usize>> = Vec::new();
        let mut id_of = |c: usize, transitions: &mut Vec<BTreeMap<i64, usize>>| {
            *rep.entry(c).or_insert_with(|| {
                transitions.push(BTreeMap::new());
                transitions.len() - 1
            })
        };
        let initial = id_of(class[self.initial], &mut transitions);
        for q in 0..n {
            let from = id_of(class[q], &mut transitions);
            for (&d, &t) in &self.transitions[q] {
                if class[t] != sink_class {
                    let to = id_of(class[t], &mut transitions);
                    transitions[from].insert(d, to);
                }
            }
        }
        ShiftAutomaton { alphabet: self.alphabet.clone(), initial, transitions }.canonical()
    }

    /// Number of accepted words of each length `0..=n`.
    pub fn count_words_upto(&self, n: usize) -> Vec<BigUint> {
        let mut ways = vec![BigUint::zero(); self.transitions.len()];
        ways[self.initial] = BigUint::one();
        let mut out = Vec::with_capacity(n + 1);
        for step in 0..=n {
            out.push(ways.iter().sum());
            if step == n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.transitions.len()];
            for (q, w) in ways.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &t in self.transitions[q].values() {
                    next[t] += w;
                }
            }
            ways = next;
        }
        out
    }

    pub fn count_words(&self, n: usize) -> BigUint {
        self.count_words_upto(n).pop().unwrap_or_default()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph shift {\n  rankdir=LR;\n  node [shape=circle];\n");
        let _ = writeln!(s, "  start [shape=point];\n  start -> q{};", self.initial);
        for (q, d, t) in self.transitions() {
            let _ = writeln!(s, "  q{q} -> q{t} [label=\"{d}\"];");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AutomatonJson {
            states: self.state_count(),
            initial: self.initial,
            transitions: self.transitions().collect(),
        })
        .expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{AlgebraicReal, NumberField};
    use crate::numeration::{cylinder, NumerationSystem, Preset};
    use crate::reference::References;

    fn system(c: &[i64], lo: i64, hi: i64, p: Preset) -> NumerationSystem {
        let f = NumberField::new(AlgebraicReal::from_i64(c, (lo, 1), (hi, 1)).unwrap()).unwrap();
        NumerationSystem::preset(&f, p).unwrap()
    }

    fn build(s: &NumerationSystem) -> ShiftAutomaton {
        build_automaton(&References::compute(s, 5000).unwrap(), &s.alphabet())
    }

    /// Words of length `n` with nonempty cylinders, grown one digit at a time
    /// from the right so every cylinder comes from its suffix's.
    fn oracle_count(s: &NumerationSystem, n: usize) -> usize {
        let mut live: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &live {
                for &a in &s.alphabet() {
                    let mut v = vec![a];
                    v.extend_from_slice(w);
                    if !cylinder(s, &v).is_empty() {
                        next.push(v);
                    }
                }
            }
            live = next;
        }
        live.len()
    }

    #[test]
    fn empty_word_accepted() {
        let s = system(&[-2, 1], 2, 2, Preset::ItoSadahiro);
        let a = build(&s);
        assert!(a.accepts(&[]));
        assert_eq!(a.count_words(0), BigUint::one());
    }

    #[test]
    fn counts_match_cylinders_small() {
        for s in [
            system(&[-2, 1], 2, 2, Preset::ItoSadahiro),
            system(&[1, -3, 1], 2, 3, Preset::ItoSadahiro),
            system(&[-1, -1, 1], 1, 2, Preset::Balanced),
        ] {
            let a = build(&s);
            let counts = a.count_words_upto(6);
            for (n, c) in counts.iter().enumerate() {
                assert_eq!(c, &BigUint::from(oracle_count(&s, n)), "{s:?} n = {n}");
            }
        }
    }

    #[test]
    fn minimization_is_idempotent_and_preserves_counts() {
        let s = system(&[1, -3, 1], 2, 3, Preset::ItoSadahiro);
        let a = build(&s);
        let m = a.minimize();
        assert_eq!(m.minimize().state_count(), m.state_count());
        assert!(m.state_count() <= a.state_count());
        assert_eq!(m.count_words_upto(10), a.count_words_upto(10));
    }

    #[test]
    fn brute_force_count() {
        let s = system(&[-1, -1, 1], 1, 2, Preset::ItoSadahiro);
        let a = build(&s);
        let k = s.alphabet().len();
        for n in 0..=8usize {
            let total = (0..k.pow(n as u32))
                .filter(|&code| {
                    let mut c = code;
                    let w: Vec<i64> = (0..n)
                        .map(|_| {
                            let d = s.alphabet()[c % k];
                            c /= k;
                            d
                        })
                        .collect();
                    a.accepts(&w)
                })
                .count();
            assert_eq!(a.count_words(n), BigUint::from(total));
        }
    }

    #[test]
    fn json_and_dot_are_deterministic() {
        let s = system(&[-2, 1], 2, 2, Preset::ItoSadahiro);
        let a = build(&s);
        let b = build(&s);
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_json(), b.to_json());
        let j = a.to_json();
        assert_eq!(j["initial"], 0);
        assert_eq!(j["states"], a.state_count());
    }
}
