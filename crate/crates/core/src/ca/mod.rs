//! One-dimensional linear hybrid 90/150 cellular automata with null
//! boundaries.
//!
//! Cell `k` (1-based) obeys rule 90 (`b' = b[k-1] ^ b[k+1]`) when `d_k = 0`
//! and rule 150 (`b' = b[k-1] ^ b[k] ^ b[k+1]`) when `d_k = 1`. Neighbors
//! beyond either end read as zero. Rule vectors and states share the text
//! form: a bit string whose leftmost character is cell 1.

mod census;
mod synth;

pub use census::{
    classify_state, cycle_census, cycle_census_parallel, CycleCensus, CycleClass, SymmetryClass,
    MAX_CENSUS_CELLS,
};
pub use synth::{synthesize, MAX_SYNTH_DEGREE};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::{BitSequence, BitVec, ParseBitsError};
use crate::gf2::{BinaryPolynomial, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaError {
    #[error("rule vector must have at least one cell")]
    Empty,
    #[error("state has {state} cells but the rule vector has {rule}")]
    LengthMismatch { rule: usize, state: usize },
    #[error("cell index {index} out of range 1..={len}")]
    CellOutOfRange { index: usize, len: usize },
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("symmetry classes need an even number of cells, got {0}")]
    UnsupportedLength(usize),
    #[error("{len} cells exceeds the enumeration bound of {max}")]
    TooManyCells { len: usize, max: usize },
    #[error("degree {degree} exceeds the synthesis search bound of {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("no 90/150 automaton has characteristic polynomial {0}")]
    NoAutomaton(String),
    #[error("the transition map of {0} is not a bijection")]
    NotBijective(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Parse(#[from] ParseBitsError),
}

/// Rule vector `(d_1, ..., d_L)`: `false` is rule 90, `true` is rule 150.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RuleVector(BitVec);

impl RuleVector {
    pub fn new(bits: BitVec) -> Result<Self, CaError> {
        if bits.is_empty() {
            return Err(CaError::Empty);
        }
        Ok(Self(bits))
    }

    pub fn from_bools(rules: &[bool]) -> Result<Self, CaError> {
        Self::new(BitVec::from_bools(rules))
    }

    /// From 0/1 digits, e.g. `&[1, 0, 0]` for (150, 90, 90).
    pub fn from_digits(rules: &[u8]) -> Result<Self, CaError> {
        Self::new(BitVec::from_bools(
            &rules.iter().map(|&d| d != 0).collect::<Vec<_>>(),
        ))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    /// Rule of cell `k`, 1-based.
    pub fn is_rule150(&self, k: usize) -> bool {
        self.0.get(k - 1)
    }

    /// Reversal automaton `(d_L, ..., d_1)`.
    pub fn reverse(&self) -> Self {
        Self(self.0.reversed())
    }

    /// The length-2L automaton `(d_1, ..., !d_L, !d_L, ..., d_1)` whose
    /// characteristic polynomial is the square of this one's.
    pub fn concat_double(&self) -> Self {
        let mut head = self.0.clone();
        let last = self.len() - 1;
        head.set(last, !head.get(last));
        let tail = head.reversed();
        Self(head.concat(&tail))
    }

    /// Applies [`concat_double`](Self::concat_double) `ceil(log2 p)` times,
    /// giving an automaton for `P(x)^(2^q)` with `2^(q-1) < p <= 2^q`.
    pub fn concat_to_multiplicity(&self, p: u32) -> Result<Self, CaError> {
        if p == 0 {
            return Err(CaError::ZeroMultiplicity);
        }
        let q = p.next_power_of_two().trailing_zeros();
        let mut rule = self.clone();
        for _ in 0..q {
            rule = rule.concat_double();
        }
        Ok(rule)
    }

    /// Characteristic polynomial via the sub-automaton recurrence
    /// `P_k = (x + d_k) P_{k-1} + P_{k-2}`, `P_0 = 1`, `P_{-1} = 0`.
    pub fn char_poly(&self) -> BinaryPolynomial {
        let mut prev = BinaryPolynomial::zero();
        let mut cur = BinaryPolynomial::one();
        for d in self.0.iter() {
            let mut next = cur.shl(1).add(&prev);
            if d {
                next = next.add(&cur);
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    /// One synchronous update with null boundaries.
    pub fn step(&self, s: &CAState) -> Result<CAState, CaError> {
        self.check(s)?;
        Ok(self.step_unchecked(s))
    }

    fn step_unchecked(&self, s: &CAState) -> CAState {
        let b = &s.0;
        CAState(b.shifted_up().xor(&b.shifted_down()).xor(&b.and(&self.0)))
    }

    fn check(&self, s: &CAState) -> Result<(), CaError> {
        if self.len() != s.len() {
            return Err(CaError::LengthMismatch {
                rule: self.len(),
                state: s.len(),
            });
        }
        Ok(())
    }

    /// `len` successive states starting at `s0` (inclusive).
    pub fn evolve(&self, s0: &CAState, len: usize) -> Result<Vec<CAState>, CaError> {
        self.check(s0)?;
        let mut out = Vec::with_capacity(len);
        let mut s = s0.clone();
        for _ in 0..len {
            let next = self.step_unchecked(&s);
            out.push(s);
            s = next;
        }
        Ok(out)
    }

    /// Time sequence of cell `cell` (1-based) over `len` states from `s0`.
    pub fn run_column(
        &self,
        s0: &CAState,
        cell: usize,
        len: usize,
    ) -> Result<BitSequence, CaError> {
        self.check(s0)?;
        if cell == 0 || cell > self.len() {
            return Err(CaError::CellOutOfRange {
                index: cell,
                len: self.len(),
            });
        }
        let mut out = Vec::with_capacity(len);
        let mut s = s0.clone();
        for _ in 0..len {
            out.push(s.0.get(cell - 1));
            s = self.step_unchecked(&s);
        }
        Ok(BitSequence(out))
    }

    /// Length of the cycle through `s0`, or `None` if the orbit does not
    /// return to `s0` within `limit` steps.
    pub fn cycle_length(&self, s0: &CAState, limit: u64) -> Result<Option<u64>, CaError> {
        self.check(s0)?;
        if let (Some(rules), Some(start)) = (self.0.to_word(), s0.0.to_word()) {
            let mask = crate::bits::low_mask(self.len());
            let mut s = step_word(rules, start, mask);
            for n in 1..=limit {
                if s == start {
                    return Ok(Some(n));
                }
                s = step_word(rules, s, mask);
            }
            return Ok(None);
        }
        let mut s = self.step_unchecked(s0);
        for n in 1..=limit {
            if &s == s0 {
                return Ok(Some(n));
            }
            s = self.step_unchecked(&s);
        }
        Ok(None)
    }
}

/// Single-word update for automata of at most 64 cells.
#[inline]
pub(crate) fn step_word(rules: u64, s: u64, mask: u64) -> u64 {
    ((s << 1) ^ (s >> 1) ^ (s & rules)) & mask
}

impl fmt::Display for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for RuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RuleVector({})", self.0)
    }
}

impl FromStr for RuleVector {
    type Err = CaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.parse()?)
    }
}

/// Automaton content `b^1 .. b^L` at one time step.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CAState(BitVec);

impl CAState {
    pub fn new(bits: BitVec) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(BitVec::zeros(len))
    }

    pub fn from_digits(cells: &[u8]) -> Self {
        Self(BitVec::from_bools(
            &cells.iter().map(|&d| d != 0).collect::<Vec<_>>(),
        ))
    }

    /// The `L`-cell state whose cell `k` is bit `k - 1` of `word`.
    pub fn from_word(word: u64, len: usize) -> Self {
        Self(BitVec::from_word(word, len))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    /// Content of cell `k`, 1-based.
    pub fn cell(&self, k: usize) -> bool {
        self.0.get(k - 1)
    }

    pub fn xor(&self, other: &Self) -> Self {
        Self(self.0.xor(&other.0))
    }
}

impl fmt::Display for CAState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CAState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CAState({})", self.0)
    }
}

impl FromStr for CAState {
    type Err = ParseBitsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Self)
    }
}
