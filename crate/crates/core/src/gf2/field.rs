//! GF(2^r) in polynomial basis modulo a primitive polynomial.
//!
//! The generator `alpha` is the class of `x`, so `alpha^n` walks the whole
//! multiplicative group and `trace(A * alpha^n)` is a PN-sequence for any
//! nonzero `A`.

use std::fmt;

use super::{is_primitive, BinaryPolynomial, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    modulus: BinaryPolynomial,
    r: usize,
    // low r bits of the modulus; x^r == reduction (mod modulus)
    reduction: u64,
}

impl FieldContext {
    pub fn new(modulus: BinaryPolynomial) -> Result<Self, Gf2Error> {
        if !is_primitive(&modulus)? {
            return Err(Gf2Error::NotPrimitive(modulus.to_string()));
        }
        let r = modulus.deg().expect("primitive polynomial is nonzero");
        let mask = modulus.to_u64().expect("degree <= 32");
        Ok(Self {
            modulus,
            r,
            reduction: mask & !(1u64 << r),
        })
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    /// Number of nonzero elements, `2^r - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.r) - 1
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement { ctx: self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement { ctx: self, bits: 1 }
    }

    /// The primitive element, class of `x`. In GF(2) this is `1`.
    pub fn alpha(&self) -> FieldElement<'_> {
        FieldElement {
            ctx: self,
            bits: reduce(2, self.r, self.reduction),
        }
    }

    /// Element from polynomial-basis coordinates.
    pub fn element(&self, bits: u64) -> Result<FieldElement<'_>, Gf2Error> {
        if self.r < 64 && bits >> self.r != 0 {
            return Err(Gf2Error::ElementOutOfRange {
                value: bits,
                r: self.r,
            });
        }
        Ok(FieldElement { ctx: self, bits })
    }

    /// Iterates over all `2^r` elements in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..1u64 << self.r).map(move |bits| FieldElement { ctx: self, bits })
    }

    fn mul_bits(&self, a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        let mut b = b;
        while b != 0 {
            acc ^= a << b.trailing_zeros();
            b &= b - 1;
        }
        reduce(acc, self.r, self.reduction)
    }
}

/// Reduces a product of two reduced elements (degree < 2r - 1).
fn reduce(mut v: u64, r: usize, reduction: u64) -> u64 {
    let mut top = 2 * r;
    while top > r {
        top -= 1;
        if (v >> top) & 1 == 1 {
            v ^= (1u64 << top) | (reduction << (top - r));
        }
    }
    v
}

#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    ctx: &'a FieldContext,
    bits: u64,
}

impl<'a> FieldElement<'a> {
    pub fn context(&self) -> &'a FieldContext {
        self.ctx
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn check(&self, other: &Self) -> Result<(), Gf2Error> {
        if std::ptr::eq(self.ctx, other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Gf2Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check(other)?;
        Ok(Self {
            ctx: self.ctx,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check(other)?;
        Ok(Self {
            ctx: self.ctx,
            bits: self.ctx.mul_bits(self.bits, other.bits),
        })
    }

    pub fn square(&self) -> Self {
        Self {
            ctx: self.ctx,
            bits: self.ctx.mul_bits(self.bits, self.bits),
        }
    }

    /// `self^n` by square-and-multiply; `a^0 = 1` including `0^0`.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.bits;
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.ctx.mul_bits(acc, base);
            }
            n >>= 1;
            base = self.ctx.mul_bits(base, base);
        }
        Self {
            ctx: self.ctx,
            bits: acc,
        }
    }

    /// Absolute trace `sum_{j<r} a^(2^j)`, which lies in GF(2).
    pub fn trace(&self) -> bool {
        let mut conj = self.bits;
        let mut sum = 0u64;
        for _ in 0..self.ctx.r {
            sum ^= conj;
            conj = self.ctx.mul_bits(conj, conj);
        }
        debug_assert!(sum <= 1, "trace must land in the prime field");
        sum == 1
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.check(other).is_ok()
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x} mod {})", self.bits, self.ctx.modulus)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> FieldContext {
        FieldContext::new(s.parse().unwrap()).unwrap()
    }

    /// alpha^0 .. alpha^(2^r - 2) by repeated multiplication with the
    /// generic polynomial routines.
    fn power_table(m: &BinaryPolynomial) -> Vec<u64> {
        let x = BinaryPolynomial::monomial(1);
        let mut acc = BinaryPolynomial::one();
        let mut out = Vec::new();
        for _ in 0..(1u64 << m.deg().unwrap()) - 1 {
            out.push(acc.to_u64().unwrap());
            acc = acc.mul_mod(&x, m).unwrap();
        }
        out
    }

    #[test]
    fn rejects_non_primitive_modulus() {
        let e = FieldContext::new("x^4+x^3+x^2+x+1".parse().unwrap());
        assert!(matches!(e, Err(Gf2Error::NotPrimitive(_))));
    }

    #[test]
    fn gf8_multiplication() {
        let f = ctx("x^3+x^2+1");
        let table = power_table(f.modulus());
        let a = f.alpha();
        let a6 = f.element(table[6]).unwrap();
        assert_eq!(a.mul(&a6).unwrap(), f.one());
        assert_eq!(a.pow(6), a6);
        assert_eq!(a.pow(7), f.one());
        for e in f.elements() {
            assert_eq!(f.one().mul(&e).unwrap(), e);
            assert_eq!(f.zero().mul(&e).unwrap(), f.zero());
            assert_eq!(e.pow(1), e);
            assert_eq!(e.pow(0), f.one());
        }
    }

    #[test]
    fn powers_match_table() {
        for m in ["x^3+x^2+1", "x^5+x^4+x^2+x+1", "x^8+x^4+x^3+x^2+1"] {
            let f = ctx(m);
            let table = power_table(f.modulus());
            for (n, &bits) in table.iter().enumerate() {
                assert_eq!(f.alpha().pow(n as u64).bits(), bits);
            }
        }
    }

    #[test]
    fn context_mismatch() {
        let f = ctx("x^3+x^2+1");
        let g = ctx("x^3+x+1");
        assert_eq!(f.one().mul(&g.one()), Err(Gf2Error::ContextMismatch));
        assert_eq!(f.one().add(&g.one()), Err(Gf2Error::ContextMismatch));
        // equal moduli in distinct contexts are compatible
        let f2 = ctx("x^3+x^2+1");
        assert!(f.alpha().mul(&f2.alpha()).is_ok());
    }

    #[test]
    fn element_range() {
        let f = ctx("x^3+x^2+1");
        assert!(f.element(7).is_ok());
        assert_eq!(
            f.element(8),
            Err(Gf2Error::ElementOutOfRange { value: 8, r: 3 })
        );
    }

    #[test]
    fn trace_examples() {
        let f = ctx("x^3+x^2+1");
        assert!(!f.zero().trace());
        // 1 + 1 + 1
        assert!(f.one().trace());
        let seq: Vec<bool> = (0..7).map(|n| f.alpha().pow(n).trace()).collect();
        let table1 = [true, true, true, false, true, false, false];
        assert!((0..7).any(|s| (0..7).all(|n| seq[(n + s) % 7] == table1[n])));
    }

    #[test]
    fn frobenius_and_trace_linearity_exhaustive() {
        for r in 1..=8 {
            for m in crate::gf2::primitive_polynomials(r)
                .unwrap()
                .into_iter()
                .take(2)
            {
                let f = FieldContext::new(m).unwrap();
                let elems: Vec<_> = f.elements().collect();
                for a in &elems {
                    for b in &elems {
                        let s = a.add(b).unwrap();
                        assert_eq!(s.square(), a.square().add(&b.square()).unwrap());
                        assert_eq!(s.trace(), a.trace() ^ b.trace());
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_order_is_maximal() {
        for r in 1..=10 {
            for m in crate::gf2::primitive_polynomials(r).unwrap() {
                let f = FieldContext::new(m).unwrap();
                let n = f.order();
                assert_eq!(f.alpha().pow(n), f.one());
                for q in crate::gf2::prime_factors(n) {
                    assert_ne!(f.alpha().pow(n / q), f.one());
                }
            }
        }
    }
}
