//! Linear complexity, minimal polynomials and periods of binary sequences.

use serde::Serialize;

use crate::bits::BitSequence;
use crate::gf2::{is_primitive, BinaryPolynomial, MAX_PRIMITIVE_DEGREE};

/// Shortest linear recurrence generating a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProfile {
    pub lc: usize,
    /// Characteristic polynomial `x^lc + c_1 x^(lc-1) + ... + c_lc`, so that
    /// `a_n = sum_j c_j a_{n-j}` for `n >= lc`.
    pub minimal_poly: BinaryPolynomial,
}

#[derive(Serialize)]
struct ProfileJson {
    lc: usize,
    poly: String,
}

impl LinearProfile {
    /// `{"lc": .., "poly": ".."}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ProfileJson {
            lc: self.lc,
            poly: self.minimal_poly.to_string(),
        })
        .expect("plain struct")
    }
}

/// Berlekamp-Massey over GF(2).
///
/// Exact whenever the window holds at least twice the true linear
/// complexity.
pub fn berlekamp_massey(bits: &BitSequence) -> LinearProfile {
    let s = bits.as_slice();
    // connection polynomials C(x) = 1 + c_1 x + ..., index = power of x
    let mut c = vec![true];
    let mut b = vec![true];
    let mut lc = 0usize;
    let mut m = 1usize;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=lc {
            d ^= c.get(i).copied().unwrap_or(false) && s[n - i];
        }
        if !d {
            m += 1;
            continue;
        }
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, false);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + m] ^= bi;
        }
        if 2 * lc <= n {
            lc = n + 1 - lc;
            b = prev;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(lc + 1, false);
    LinearProfile {
        lc,
        minimal_poly: BinaryPolynomial::from_coeffs(&c).reciprocal(lc),
    }
}

/// Smallest `d >= 1` with `bits[n] == bits[n + d]` over the whole window.
/// Only meaningful when the window covers at least two periods.
pub fn minimal_period(bits: &BitSequence) -> usize {
    let s = bits.as_slice();
    (1..=s.len().max(1))
        .find(|&d| (0..s.len().saturating_sub(d)).all(|n| s[n] == s[n + d]))
        .unwrap_or(1)
}

/// Finds `(Q, p)` with `Q` primitive and `Q^p == m`.
///
/// Candidates are tried for `p | deg(m)` in descending order: `p = 2^e * o`
/// with `o` odd, `Q^o` is recovered by `e` square roots and `Q` as
/// `R / gcd(R, R')`, then `Q^p == m` and primitivity are confirmed.
pub fn detect_primitive_power(m: &BinaryPolynomial) -> Option<(BinaryPolynomial, u32)> {
    let deg = m.deg()?;
    if deg == 0 {
        return None;
    }
    for p in (1..=deg).rev().filter(|p| deg % p == 0) {
        if deg / p > MAX_PRIMITIVE_DEGREE {
            continue;
        }
        let Some(q) = root_candidate(m, p) else {
            continue;
        };
        if q.deg() == Some(deg / p) && q.pow(p as u64) == *m && is_primitive(&q).unwrap_or(false) {
            return Some((q, p as u32));
        }
    }
    None
}

fn root_candidate(m: &BinaryPolynomial, p: usize) -> Option<BinaryPolynomial> {
    let mut r = m.clone();
    let mut odd = p;
    while odd.is_multiple_of(2) {
        r = r.sqrt()?;
        odd /= 2;
    }
    if odd == 1 {
        return Some(r);
    }
    let g = r.gcd(&r.derivative());
    let (q, rem) = r.div_rem(&g).ok()?;
    rem.is_zero().then_some(q)
}
