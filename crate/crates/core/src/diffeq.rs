//! Solutions of binary linear difference equations `P(E)^p a_n = 0` with
//! `P` primitive of degree `r`.
//!
//! Every solution has the closed form
//!
//! ```text
//! a_n = XOR_{i<p} C(n, i) * Tr(A_i * alpha^n),   A_i in GF(2^r)
//! ```
//!
//! where `C(n, i)` is taken mod 2 and `alpha` is the class of `x` modulo `P`.
//! A solution whose highest nonzero coefficient is `A_i` belongs to class
//! `i`: its minimal polynomial is `P^(i+1)` and its period is
//! `T_i * (2^r - 1)`.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{berlekamp_massey, minimal_period};
use crate::bits::BitSequence;
use crate::gf2::{BinaryPolynomial, FieldContext, FieldElement, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffEqError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("expected {expected} coefficients, got {got}")]
    CoeffCount { expected: usize, got: usize },
    #[error("seed has {got} bits but the recurrence has degree {expected}")]
    SeedLength { expected: usize, got: usize },
    #[error("the zero solution has no profile")]
    ZeroSolution,
    #[error("class index {index} out of range for multiplicity {multiplicity}")]
    ClassOutOfRange { index: usize, multiplicity: u32 },
    #[error("solution count does not fit in 128 bits")]
    Overflow,
}

/// `C(n, i) mod 2` by Lucas' theorem.
pub fn binomial_bit(n: u64, i: u64) -> bool {
    n & i == i
}

/// Period of `n -> C(n, i) mod 2`: the smallest power of two above `i`.
pub fn binomial_period(i: u64) -> u64 {
    (i + 1).next_power_of_two()
}

/// `P(E)^p a_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceEquation {
    field: FieldContext,
    multiplicity: u32,
}

impl DifferenceEquation {
    pub fn new(base: BinaryPolynomial, multiplicity: u32) -> Result<Self, DiffEqError> {
        if multiplicity == 0 {
            return Err(DiffEqError::ZeroMultiplicity);
        }
        Ok(Self {
            field: FieldContext::new(base)?,
            multiplicity,
        })
    }

    pub fn base(&self) -> &BinaryPolynomial {
        self.field.modulus()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// `P(x)^p`.
    pub fn char_poly(&self) -> BinaryPolynomial {
        self.base().pow(self.multiplicity as u64)
    }

    /// Coefficients `A_0 .. A_{p-1}` from polynomial-basis coordinates.
    pub fn coeffs(&self, values: &[u64]) -> Result<SolutionCoeffs<'_>, DiffEqError> {
        let coeffs = values
            .iter()
            .map(|&v| self.field.element(v))
            .collect::<Result<Vec<_>, _>>()?;
        SolutionCoeffs::new(self, coeffs)
    }
}

/// `A_0 .. A_{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCoeffs<'a> {
    coeffs: Vec<FieldElement<'a>>,
}

impl<'a> SolutionCoeffs<'a> {
    pub fn new(
        eq: &DifferenceEquation,
        coeffs: Vec<FieldElement<'a>>,
    ) -> Result<Self, DiffEqError> {
        if coeffs.len() != eq.multiplicity as usize {
            return Err(DiffEqError::CoeffCount {
                expected: eq.multiplicity as usize,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.context() != eq.field()) {
            return Err(Gf2Error::ContextMismatch.into());
        }
        Ok(Self { coeffs })
    }

    pub fn as_slice(&self) -> &[FieldElement<'a>] {
        &self.coeffs
    }

    /// Largest `i` with `A_i != 0`.
    pub fn class_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }
}

fn check(eq: &DifferenceEquation, a: &SolutionCoeffs<'_>) -> Result<(), DiffEqError> {
    if a.coeffs.len() != eq.multiplicity as usize {
        return Err(DiffEqError::CoeffCount {
            expected: eq.multiplicity as usize,
            got: a.coeffs.len(),
        });
    }
    if a.coeffs.iter().any(|c| c.context() != eq.field()) {
        return Err(Gf2Error::ContextMismatch.into());
    }
    Ok(())
}

fn term_with_power(a: &SolutionCoeffs<'_>, alpha_n: &FieldElement<'_>, n: u64) -> bool {
    a.coeffs
        .iter()
        .enumerate()
        .filter(|(i, c)| !c.is_zero() && binomial_bit(n, *i as u64))
        .fold(false, |acc, (_, c)| {
            acc ^ c.mul(alpha_n).expect("checked context").trace()
        })
}

/// `a_n` of the closed-form solution.
pub fn solution_term(
    eq: &DifferenceEquation,
    a: &SolutionCoeffs<'_>,
    n: u64,
) -> Result<bool, DiffEqError> {
    check(eq, a)?;
    let alpha_n = eq.field.alpha().pow(n % eq.field.order());
    Ok(term_with_power(a, &alpha_n, n))
}

/// `a_0 .. a_{len-1}` of the closed-form solution.
pub fn solution_sequence(
    eq: &DifferenceEquation,
    a: &SolutionCoeffs<'_>,
    len: usize,
) -> Result<BitSequence, DiffEqError> {
    check(eq, a)?;
    let alpha = eq.field.alpha();
    let mut power = eq.field.one();
    let mut out = Vec::with_capacity(len);
    for n in 0..len as u64 {
        out.push(term_with_power(a, &power, n));
        power = power.mul(&alpha).expect("same field");
    }
    Ok(BitSequence(out))
}

/// Runs `a_n = sum_j c_j a_{n-j}` for the coefficients of `charpoly` from
/// `deg(charpoly)` seed bits.
pub fn recurrence_sequence(
    charpoly: &BinaryPolynomial,
    seed: &BitSequence,
    len: usize,
) -> Result<BitSequence, DiffEqError> {
    let d = charpoly.deg().ok_or(Gf2Error::DivisionByZero)?;
    if seed.len() != d {
        return Err(DiffEqError::SeedLength {
            expected: d,
            got: seed.len(),
        });
    }
    // taps[k] set iff coefficient of x^k is one, k < d
    let taps: Vec<usize> = (0..d).filter(|&k| charpoly.coeff(k)).collect();
    let mut out = seed.as_slice().to_vec();
    out.reserve(len.saturating_sub(d));
    while out.len() < len {
        let n = out.len();
        out.push(taps.iter().fold(false, |acc, &k| acc ^ out[n - d + k]));
    }
    out.truncate(len);
    Ok(BitSequence(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionProfile {
    pub period: u64,
    #[serde(rename = "lc")]
    pub linear_complexity: usize,
    pub class_index: usize,
    #[serde(skip)]
    pub minimal_poly: BinaryPolynomial,
}

/// Measures the period and linear complexity of a nonzero solution from a
/// window of `4 * T_i * (2^r - 1)` terms.
pub fn profile(
    eq: &DifferenceEquation,
    a: &SolutionCoeffs<'_>,
) -> Result<SolutionProfile, DiffEqError> {
    check(eq, a)?;
    let class_index = a.class_index().ok_or(DiffEqError::ZeroSolution)?;
    let bound = binomial_period(class_index as u64) * eq.field.order();
    let window = solution_sequence(eq, a, 4 * bound as usize)?;
    let lin = berlekamp_massey(&window);
    Ok(SolutionProfile {
        period: minimal_period(&window) as u64,
        linear_complexity: lin.lc,
        class_index,
        minimal_poly: lin.minimal_poly,
    })
}

/// Number of shift-inequivalent solutions in class `i`:
/// `2^(r i) (2^r - 1) / (T_i (2^r - 1)) = 2^(r i) / T_i`.
pub fn count_solution_classes(eq: &DifferenceEquation, i: usize) -> Result<u128, DiffEqError> {
    if i >= eq.multiplicity as usize {
        return Err(DiffEqError::ClassOutOfRange {
            index: i,
            multiplicity: eq.multiplicity,
        });
    }
    let bits = eq.degree() * i;
    if bits >= 128 {
        return Err(DiffEqError::Overflow);
    }
    Ok((1u128 << bits) / binomial_period(i as u64) as u128)
}
