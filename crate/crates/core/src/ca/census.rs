//! Exhaustive cycle structure of the transition map.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::low_mask;

use super::{step_word, CAState, CaError, RuleVector};

pub const MAX_CENSUS_CELLS: usize = 26;

/// Shape of a state of even length `L` with halves `h1 h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// Palindrome and `h1 == h2`.
    DoublySymmetric,
    /// Palindrome only.
    Symmetric,
    /// `h1 == h2` only.
    Repetitive,
    Other,
}

impl SymmetryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::DoublySymmetric => "doubly_symmetric",
            Self::Symmetric => "symmetric",
            Self::Repetitive => "repetitive",
            Self::Other => "other",
        }
    }
}

pub fn classify_state(s: &CAState) -> Result<SymmetryClass, CaError> {
    let l = s.len();
    if l == 0 || l % 2 == 1 {
        return Err(CaError::UnsupportedLength(l));
    }
    let bits = s.bits();
    let palindrome = bits.reversed() == *bits;
    let half = l / 2;
    let repeated = (0..half).all(|i| bits.get(i) == bits.get(i + half));
    Ok(class_of(palindrome, repeated))
}

fn class_of(palindrome: bool, repeated: bool) -> SymmetryClass {
    match (palindrome, repeated) {
        (true, true) => SymmetryClass::DoublySymmetric,
        (true, false) => SymmetryClass::Symmetric,
        (false, true) => SymmetryClass::Repetitive,
        (false, false) => SymmetryClass::Other,
    }
}

/// Word version of [`classify_state`]; odd lengths classify as `Other`.
fn classify_word(s: u64, l: usize) -> SymmetryClass {
    if l % 2 == 1 {
        return SymmetryClass::Other;
    }
    let palindrome = s.reverse_bits() >> (64 - l) == s;
    let half = l / 2;
    let repeated = s & low_mask(half) == s >> half;
    class_of(palindrome, repeated)
}

/// All cycles of one length, with the symmetry classes of their states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    pub length: u64,
    pub count: u64,
    pub symmetry: BTreeMap<SymmetryClass, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCensus {
    #[serde(rename = "L")]
    pub cells: usize,
    /// Sorted by cycle length.
    pub cycles: Vec<CycleClass>,
}

impl CycleCensus {
    pub fn total_states(&self) -> u64 {
        self.cycles.iter().map(|c| c.length * c.count).sum()
    }

    pub fn total_cycles(&self) -> u64 {
        self.cycles.iter().map(|c| c.count).sum()
    }

    pub fn class(&self, length: u64) -> Option<&CycleClass> {
        self.cycles.iter().find(|c| c.length == length)
    }

    /// Number of states of the given symmetry class over all cycles.
    pub fn states_of(&self, class: SymmetryClass) -> u64 {
        self.cycles
            .iter()
            .filter_map(|c| c.symmetry.get(&class))
            .sum()
    }
}

#[derive(Default)]
struct Tally(BTreeMap<u64, (u64, BTreeMap<SymmetryClass, u64>)>);

impl Tally {
    fn record(&mut self, length: u64, hist: BTreeMap<SymmetryClass, u64>) {
        let entry = self.0.entry(length).or_default();
        entry.0 += 1;
        for (k, v) in hist {
            *entry.1.entry(k).or_default() += v;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (length, (count, hist)) in other.0 {
            let entry = self.0.entry(length).or_default();
            entry.0 += count;
            for (k, v) in hist {
                *entry.1.entry(k).or_default() += v;
            }
        }
        self
    }

    fn finish(self, cells: usize) -> CycleCensus {
        CycleCensus {
            cells,
            cycles: self
                .0
                .into_iter()
                .map(|(length, (count, symmetry))| CycleClass {
                    length,
                    count,
                    symmetry,
                })
                .collect(),
        }
    }
}

fn check_bounds(rule: &RuleVector) -> Result<(u64, u64), CaError> {
    let l = rule.len();
    if l > MAX_CENSUS_CELLS {
        return Err(CaError::TooManyCells {
            len: l,
            max: MAX_CENSUS_CELLS,
        });
    }
    // det of the transition matrix is the constant term of its
    // characteristic polynomial
    if !rule.char_poly().coeff(0) {
        return Err(CaError::NotBijective(rule.to_string()));
    }
    Ok((rule.bits().to_word().expect("<= 26 cells"), low_mask(l)))
}

/// Partitions all `2^L` states into cycles of the transition map using a
/// visited bitmap.
pub fn cycle_census(rule: &RuleVector) -> Result<CycleCensus, CaError> {
    let (rules, mask) = check_bounds(rule)?;
    let l = rule.len();
    let n = 1u64 << l;
    let mut visited = vec![0u64; (n as usize).div_ceil(64)];
    let mut tally = Tally::default();
    for start in 0..n {
        if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        let mut hist = BTreeMap::new();
        let mut length = 0u64;
        let mut s = start;
        loop {
            let (w, b) = ((s / 64) as usize, s % 64);
            if visited[w] >> b & 1 == 1 {
                if s == start {
                    break;
                }
                // entered an earlier orbit without closing: not a permutation
                return Err(CaError::NotBijective(rule.to_string()));
            }
            visited[w] |= 1 << b;
            *hist.entry(classify_word(s, l)).or_default() += 1;
            length += 1;
            s = step_word(rules, s, mask);
        }
        tally.record(length, hist);
    }
    Ok(tally.finish(l))
}

/// Same result as [`cycle_census`], computed on `threads` workers. Each
/// worker owns a contiguous range of start states and records a cycle only
/// from its numerically smallest state.
pub fn cycle_census_parallel(rule: &RuleVector, threads: usize) -> Result<CycleCensus, CaError> {
    if threads <= 1 {
        return cycle_census(rule);
    }
    let (rules, mask) = check_bounds(rule)?;
    let l = rule.len();
    let n = 1u64 << l;
    let chunks = (threads as u64 * 8).min(n);
    let per = n.div_ceil(chunks);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let tally = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut tally = Tally::default();
                for start in c * per..((c + 1) * per).min(n) {
                    let mut s = step_word(rules, start, mask);
                    let mut length = 1u64;
                    while s > start {
                        s = step_word(rules, s, mask);
                        length += 1;
                    }
                    if s != start {
                        continue;
                    }
                    let mut hist = BTreeMap::new();
                    let mut t = start;
                    for _ in 0..length {
                        *hist.entry(classify_word(t, l)).or_default() += 1;
                        t = step_word(rules, t, mask);
                    }
                    tally.record(length, hist);
                }
                tally
            })
            .reduce(Tally::default, Tally::merge)
    });
    Ok(tally.finish(l))
}
