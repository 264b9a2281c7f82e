//! Dense polynomials over GF(2).
//!
//! Coefficients are packed little-endian into `u64` limbs: bit `i` of the
//! packed vector is the coefficient of `x^i`. The limb vector is kept
//! normalized (no trailing zero limbs), so equality is structural.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use super::Gf2Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    limbs: Vec<u64>,
}

/// Carry-less product of two 64-bit words, as (low, high).
fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        lo ^= a << i;
        if i > 0 {
            hi ^= a >> (64 - i);
        }
        b &= b - 1;
    }
    (lo, hi)
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// The monomial `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(n, true);
        p
    }

    /// Builds a polynomial from a coefficient mask (bit i = coefficient of x^i).
    pub fn from_mask(mask: u128) -> Self {
        Self::from_limbs(vec![mask as u64, (mask >> 64) as u64])
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Self { limbs };
        p.normalize();
        p
    }

    /// Builds a polynomial from exponents of its nonzero terms. Repeated
    /// exponents cancel pairwise.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.set_coeff(e, !p.coeff(e));
        }
        p
    }

    /// Builds a polynomial from a coefficient slice, index i = coefficient of x^i.
    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c {
                p.set_coeff(i, true);
            }
        }
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Coefficient mask if the polynomial fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        match self.limbs.last() {
            None => -1,
            Some(&top) => (self.limbs.len() as i64 - 1) * 64 + 63 - top.leading_zeros() as i64,
        }
    }

    /// Degree as `usize`, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        let d = self.degree();
        (d >= 0).then_some(d as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|&w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        let limb = i / 64;
        if value {
            if self.limbs.len() <= limb {
                self.limbs.resize(limb + 1, 0);
            }
            self.limbs[limb] |= 1 << (i % 64);
        } else if limb < self.limbs.len() {
            self.limbs[limb] &= !(1 << (i % 64));
            self.normalize();
        }
    }

    /// Exponents of the nonzero terms, highest first.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (li, &w) in self.limbs.iter().enumerate().rev() {
            let mut w = w;
            while w != 0 {
                let top = 63 - w.leading_zeros() as usize;
                out.push(li * 64 + top);
                w &= !(1 << top);
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        Self::from_limbs(limbs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.limbs.iter().enumerate() {
                let (lo, hi) = clmul64(a, b);
                limbs[i + j] ^= lo;
                limbs[i + j + 1] ^= hi;
            }
        }
        Self::from_limbs(limbs)
    }

    /// Multiplies by `x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &w) in self.limbs.iter().enumerate() {
            limbs[i + words] ^= w << bits;
            if bits > 0 {
                limbs[i + words + 1] ^= w >> (64 - bits);
            }
        }
        Self::from_limbs(limbs)
    }

    pub fn square(&self) -> Self {
        let mut p = Self::zero();
        for e in self.exponents() {
            p.set_coeff(2 * e, true);
        }
        p
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Quotient and remainder of division by `m`.
    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self), Gf2Error> {
        let dm = m.deg().ok_or(Gf2Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(dr) = rem.deg() {
            if dr < dm {
                break;
            }
            let shift = dr - dm;
            quot.set_coeff(shift, true);
            rem = rem.add(&m.shl(shift));
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, m: &Self) -> Result<Self, Gf2Error> {
        self.div_rem(m).map(|(_, r)| r)
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Result<Self, Gf2Error> {
        self.mul(other).rem(m)
    }

    /// `self^n mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut n: u128, m: &Self) -> Result<Self, Gf2Error> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one().rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut p = Self::zero();
        for e in self.exponents() {
            if e % 2 == 1 {
                p.set_coeff(e - 1, true);
            }
        }
        p
    }

    /// Square root if every odd-indexed coefficient is zero.
    pub fn sqrt(&self) -> Option<Self> {
        let exps = self.exponents();
        if exps.iter().any(|e| e % 2 == 1) {
            return None;
        }
        Some(Self::from_exponents(
            &exps.iter().map(|e| e / 2).collect::<Vec<_>>(),
        ))
    }

    /// `x^deg * self(1/x)` for the given degree bound.
    pub fn reciprocal(&self, degree: usize) -> Self {
        let mut p = Self::zero();
        for e in self.exponents() {
            debug_assert!(e <= degree);
            p.set_coeff(degree - e, true);
        }
        p
    }

    /// Lowercase hex coefficient mask, e.g. `0x37`.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let mut s = format!("{:x}", self.limbs.last().unwrap());
        for w in self.limbs.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        format!("0x{s}")
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl FromStr for BinaryPolynomial {
    type Err = Gf2Error;

    /// Accepts the sparse form `x^5+x^4+x^2+x+1` or a hex mask `0x37`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Gf2Error::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(bad());
            }
            let mut limbs = Vec::new();
            let digits: Vec<char> = hex.chars().collect();
            for chunk in digits.rchunks(16) {
                let word: String = chunk.iter().collect();
                limbs.push(u64::from_str_radix(&word, 16).map_err(|_| bad())?);
            }
            return Ok(Self::from_limbs(limbs));
        }
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in t.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            p.set_coeff(e, !p.coeff(e));
        }
        Ok(p)
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::add(self, rhs)
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::mul(self, rhs)
    }
}
