//! Arithmetic over GF(2) and its extensions GF(2^r).

mod field;
mod poly;

pub use field::{FieldContext, FieldElement};
pub use poly::BinaryPolynomial;

use thiserror::Error;

/// Largest degree for which primitivity can be decided (2^r - 1 is factored
/// by trial division).
pub const MAX_PRIMITIVE_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {0} outside the supported range 1..=32")]
    UnsupportedDegree(i64),
    #[error("{0} is not a primitive polynomial")]
    NotPrimitive(String),
    #[error("field elements belong to different fields")]
    ContextMismatch,
    #[error("value {value:#x} does not fit in GF(2^{r})")]
    ElementOutOfRange { value: u64, r: usize },
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Ben-Or irreducibility test: `gcd(p, x^(2^k) - x) = 1` for every
/// `k <= deg/2`.
pub fn is_irreducible(p: &BinaryPolynomial) -> bool {
    let Some(d) = p.deg() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let x = BinaryPolynomial::monomial(1);
    let mut frob = x.rem(p).expect("p is nonzero");
    for _ in 0..d / 2 {
        frob = frob.mul_mod(&frob, p).expect("p is nonzero");
        if !p.gcd(&frob.add(&x)).is_one() {
            return false;
        }
    }
    true
}

/// True iff `p` is irreducible and `x` has multiplicative order exactly
/// `2^r - 1` modulo `p`. Degree one is accepted: `x + 1` is primitive since
/// the multiplicative group of GF(2) is trivial.
pub fn is_primitive(p: &BinaryPolynomial) -> Result<bool, Gf2Error> {
    let d = p.degree();
    if !(1..=MAX_PRIMITIVE_DEGREE as i64).contains(&d) {
        return Err(Gf2Error::UnsupportedDegree(d));
    }
    if !is_irreducible(p) {
        return Ok(false);
    }
    let order = (1u64 << d) - 1;
    let x = BinaryPolynomial::monomial(1);
    if !x.pow_mod(order as u128, p)?.is_one() {
        return Ok(false);
    }
    for q in prime_factors(order) {
        if x.pow_mod((order / q) as u128, p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All primitive polynomials of degree `r`, in ascending mask order.
pub fn primitive_polynomials(r: usize) -> Result<Vec<BinaryPolynomial>, Gf2Error> {
    if !(1..=MAX_PRIMITIVE_DEGREE).contains(&r) {
        return Err(Gf2Error::UnsupportedDegree(r as i64));
    }
    let mut out = Vec::new();
    for low in 0..(1u64 << r) {
        let p = BinaryPolynomial::from_mask(((1u128) << r) | low as u128);
        if is_primitive(&p)? {
            out.push(p);
        }
    }
    Ok(out)
}
