//! Linear hybrid 90/150 cellular automata as generators of the solutions of
//! binary linear difference equations `P(E)^p a_n = 0`, and as linear models
//! of keystream generators such as the shrinking generator.
//!
//! Modules, bottom-up:
//!
//! - [`gf2`]: polynomials over GF(2), primitivity, GF(2^r) and its trace.
//! - [`ca`]: rule-90/150 automata with null boundaries, characteristic
//!   polynomials, concatenation, synthesis and cycle census.
//! - [`analysis`]: Berlekamp-Massey, periods, primitive-power detection.
//! - [`diffeq`]: closed-form solutions and their period/complexity classes.
//! - [`generators`]: LFSRs, the shrinking generator and [`linearize`].
//! - [`cli`]: the `lhca` command-line front end.

pub mod analysis;
pub mod bits;
pub mod ca;
pub mod cli;
pub mod diffeq;
pub mod generators;
pub mod gf2;
pub mod selfcheck;

pub use analysis::{berlekamp_massey, detect_primitive_power, minimal_period, LinearProfile};
pub use bits::{BitSequence, BitVec};
pub use ca::{cycle_census, synthesize, CAState, CaError, CycleCensus, RuleVector, SymmetryClass};
pub use diffeq::{DiffEqError, DifferenceEquation, SolutionCoeffs};
pub use generators::{
    linearize, CAModel, GeneratorError, LfsrConfig, Linearization, ShrinkingConfig,
};
pub use gf2::{BinaryPolynomial, FieldContext, FieldElement, Gf2Error};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Ca(#[from] CaError),
    #[error(transparent)]
    DiffEq(#[from] DiffEqError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Bits(#[from] bits::ParseBitsError),
    #[error("{0}")]
    Invalid(String),
}
