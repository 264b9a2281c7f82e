//! LFSR keystream generators and their cellular-automaton models.
//!
//! [`linearize`] takes any keystream window whose minimal polynomial is a
//! power `Q^p` of a primitive polynomial and returns a concatenated 90/150
//! automaton, an initial state and a read cell whose time sequence is that
//! keystream.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{berlekamp_massey, detect_primitive_power};
use crate::bits::{BitSequence, BitVec};
use crate::ca::{synthesize, CAState, CaError, RuleVector};
use crate::diffeq::{recurrence_sequence, DiffEqError};
use crate::gf2::{is_primitive, BinaryPolynomial, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Ca(#[from] CaError),
    #[error("register state has {got} bits but the polynomial has degree {expected}")]
    StateLength { expected: usize, got: usize },
    #[error("control register is all zero and never emits")]
    ControlAllZero,
    #[error("keystream window is all zero")]
    ZeroSequence,
    #[error("window of {len} bits is shorter than twice the linear complexity {lc}")]
    InsufficientWindow { len: usize, lc: usize },
    #[error(
        "minimal polynomial {0} is not a power of a primitive polynomial; outside the model class"
    )]
    OutsideModelClass(String),
    #[error("no read cell of either automaton realizes the keystream")]
    NoRealization,
}

impl From<DiffEqError> for GeneratorError {
    fn from(e: DiffEqError) -> Self {
        match e {
            DiffEqError::Gf2(g) => Self::Gf2(g),
            DiffEqError::SeedLength { expected, got } => Self::StateLength { expected, got },
            other => unreachable!("recurrence cannot fail with {other}"),
        }
    }
}

/// Fibonacci LFSR: the output is the oldest stage and the feedback taps are
/// the coefficients of the characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrConfig {
    poly: BinaryPolynomial,
    state: BitSequence,
}

impl LfsrConfig {
    pub fn new(poly: BinaryPolynomial, state: BitSequence) -> Result<Self, GeneratorError> {
        if !is_primitive(&poly)? {
            return Err(Gf2Error::NotPrimitive(poly.to_string()).into());
        }
        let n = poly.deg().expect("primitive");
        if state.len() != n {
            return Err(GeneratorError::StateLength {
                expected: n,
                got: state.len(),
            });
        }
        Ok(Self { poly, state })
    }

    pub fn poly(&self) -> &BinaryPolynomial {
        &self.poly
    }

    pub fn state(&self) -> &BitSequence {
        &self.state
    }

    pub fn iter(&self) -> Lfsr {
        Lfsr {
            taps: (0..self.state.len()).map(|k| self.poly.coeff(k)).collect(),
            stages: self.state.as_slice().iter().copied().collect(),
        }
    }
}

/// Running register.
#[derive(Debug, Clone)]
pub struct Lfsr {
    taps: Vec<bool>,
    stages: std::collections::VecDeque<bool>,
}

impl Iterator for Lfsr {
    type Item = bool;
    fn next(&mut self) -> Option<bool> {
        let feedback = self
            .stages
            .iter()
            .zip(&self.taps)
            .fold(false, |acc, (&s, &t)| acc ^ (s && t));
        let out = self.stages.pop_front()?;
        self.stages.push_back(feedback);
        Some(out)
    }
}

/// Seed bits followed by the register output, `len` bits in total.
pub fn lfsr_sequence(cfg: &LfsrConfig, len: usize) -> BitSequence {
    BitSequence(cfg.iter().take(len).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkingConfig {
    pub control: LfsrConfig,
    pub data: LfsrConfig,
}

/// Keeps the data bits at positions where the control bit is one.
pub fn decimate(control: &BitSequence, data: &BitSequence) -> BitSequence {
    BitSequence(
        control
            .as_slice()
            .iter()
            .zip(data.as_slice())
            .filter_map(|(&c, &d)| c.then_some(d))
            .collect(),
    )
}

/// `len` bits of shrinking-generator output: both registers are clocked
/// together and the data bit is emitted whenever the control bit is one.
pub fn shrink_keystream(cfg: &ShrinkingConfig, len: usize) -> Result<BitSequence, GeneratorError> {
    if cfg.control.state.is_zero() {
        return Err(GeneratorError::ControlAllZero);
    }
    let out = cfg
        .control
        .iter()
        .zip(cfg.data.iter())
        .filter_map(|(c, d)| c.then_some(d))
        .take(len)
        .collect();
    Ok(BitSequence(out))
}

/// Automaton, starting state and observed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CAModel {
    pub rule: RuleVector,
    pub initial_state: CAState,
    /// 1-based.
    pub read_cell: usize,
}

impl CAModel {
    pub fn output(&self, len: usize) -> BitSequence {
        self.rule
            .run_column(&self.initial_state, self.read_cell, len)
            .expect("model is consistent")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    pub model: CAModel,
    /// Primitive `Q` with minimal polynomial `Q^multiplicity`.
    pub base: BinaryPolynomial,
    pub multiplicity: u32,
    pub linear_complexity: usize,
    /// Cycle length of the initial state, equal to the keystream period.
    pub period: u64,
    /// The input window covered at least one full period.
    pub full_period_verified: bool,
}

#[derive(Serialize)]
struct LinearizationJson {
    rule: String,
    initial_state: String,
    read_cell: usize,
    verified_period: Option<u64>,
}

impl Linearization {
    /// `{rule, initial_state, read_cell, verified_period}`; the period is
    /// null when the window was shorter than one period.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LinearizationJson {
            rule: self.model.rule.to_string(),
            initial_state: self.model.initial_state.to_string(),
            read_cell: self.model.read_cell,
            verified_period: self.full_period_verified.then_some(self.period),
        })
        .expect("plain struct")
    }
}

/// Builds a CA model reproducing `keystream`.
///
/// Pipeline: Berlekamp-Massey, primitive-power detection, synthesis of the
/// base automaton pair, concatenation up to the multiplicity, then a GF(2)
/// solve for the initial state. Cell 1 of the first automaton is tried
/// first, then the remaining cells, then the reversed automaton.
pub fn linearize(keystream: &BitSequence) -> Result<Linearization, GeneratorError> {
    let prof = berlekamp_massey(keystream);
    if prof.lc == 0 {
        return Err(GeneratorError::ZeroSequence);
    }
    if keystream.len() < 2 * prof.lc {
        return Err(GeneratorError::InsufficientWindow {
            len: keystream.len(),
            lc: prof.lc,
        });
    }
    let (base, multiplicity) = detect_primitive_power(&prof.minimal_poly)
        .ok_or_else(|| GeneratorError::OutsideModelClass(prof.minimal_poly.to_string()))?;
    let (first, second) = synthesize(&base)?;

    for base_rule in [first, second] {
        let rule = base_rule.concat_to_multiplicity(multiplicity)?;
        let l = rule.len();
        let target = extend(keystream, &prof.minimal_poly, l)?;
        let basis: Vec<CAState> = (0..l)
            .map(|j| {
                let mut b = BitVec::zeros(l);
                b.set(j, true);
                CAState::new(b)
            })
            .collect();
        for cell in 1..=l {
            // column j of the observation matrix is the response to e_j
            let responses: Vec<BitSequence> = basis
                .iter()
                .map(|e| rule.run_column(e, cell, l))
                .collect::<Result<_, _>>()?;
            let rows: Vec<BitVec> = (0..l)
                .map(|n| BitVec::from_bools(&responses.iter().map(|r| r[n]).collect::<Vec<_>>()))
                .collect();
            let Some(solution) = solve_gf2(rows, &target.as_slice()[..l]) else {
                continue;
            };
            let model = CAModel {
                rule: rule.clone(),
                initial_state: CAState::new(solution),
                read_cell: cell,
            };
            if model.output(keystream.len()) != *keystream {
                continue;
            }
            let bound = ((1u64 << base.deg().expect("primitive")) - 1)
                * (multiplicity as u64).next_power_of_two();
            let period = rule
                .cycle_length(&model.initial_state, bound)?
                .expect("state period divides the order of the transition map");
            return Ok(Linearization {
                model,
                base,
                multiplicity,
                linear_complexity: prof.lc,
                period,
                full_period_verified: keystream.len() as u64 >= period,
            });
        }
    }
    Err(GeneratorError::NoRealization)
}

/// The window continued by its minimal recurrence to at least `len` bits.
fn extend(
    window: &BitSequence,
    minimal_poly: &BinaryPolynomial,
    len: usize,
) -> Result<BitSequence, GeneratorError> {
    if window.len() >= len {
        return Ok(window.clone());
    }
    let d = minimal_poly.deg().expect("nonzero");
    let seed = BitSequence(window.as_slice()[..d].to_vec());
    Ok(recurrence_sequence(minimal_poly, &seed, len)?)
}

/// Solves `rows * x = rhs` over GF(2) by Gauss-Jordan elimination; free
/// variables are set to zero. `None` if inconsistent.
pub fn solve_gf2(mut rows: Vec<BitVec>, rhs: &[bool]) -> Option<BitVec> {
    let n = rows.first().map_or(0, BitVec::len);
    let mut rhs = rhs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].get(col) {
                rows[i] = rows[i].xor(&rows[r]);
                rhs[i] ^= rhs[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rhs[r..].iter().any(|&b| b) {
        return None;
    }
    let mut x = BitVec::zeros(n);
    for (i, &col) in pivots.iter().enumerate() {
        x.set(col, rhs[i]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::minimal_period;
    use crate::diffeq::{solution_sequence, DifferenceEquation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn lfsr(p: &str, seed: &str) -> LfsrConfig {
        LfsrConfig::new(poly(p), seq(seed)).unwrap()
    }

    #[test]
    fn lfsr_examples() {
        assert_eq!(lfsr_sequence(&lfsr("x^3+x^2+1", "111"), 7), seq("1110100"));
        assert!(lfsr_sequence(&lfsr("x^3+x^2+1", "000"), 20).is_zero());
        for w in 1u32..32 {
            let seed: String = (0..5)
                .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                .collect();
            let s = lfsr_sequence(&lfsr("x^5+x^4+x^2+x+1", &seed), 62);
            assert_eq!(minimal_period(&s), 31);
        }
        assert!(matches!(
            LfsrConfig::new(poly("x^3+x^2+1"), seq("11")),
            Err(GeneratorError::StateLength {
                expected: 3,
                got: 2
            })
        ));
        assert!(LfsrConfig::new(poly("x^4+x^3+x^2+x+1"), seq("1111")).is_err());
    }

    #[test]
    fn lfsr_matches_recurrence() {
        let cfg = lfsr("x^5+x^4+x^2+x+1", "10110");
        assert_eq!(
            lfsr_sequence(&cfg, 100),
            recurrence_sequence(cfg.poly(), cfg.state(), 100).unwrap()
        );
    }

    #[test]
    fn decimation_examples() {
        assert_eq!(decimate(&seq("1011"), &seq("0110")), seq("010"));
        assert_eq!(decimate(&seq("11111"), &seq("01101")), seq("01101"));
    }

    fn shrinker() -> ShrinkingConfig {
        ShrinkingConfig {
            control: lfsr("x^3+x^2+1", "111"),
            data: lfsr("x^5+x^4+x^2+x+1", "00001"),
        }
    }

    #[test]
    fn shrinking_generator_period() {
        let ks = shrink_keystream(&shrinker(), 4 * 124).unwrap();
        assert_eq!(ks.len(), 496);
        assert_eq!(minimal_period(&ks), 124);
        let zero_control = ShrinkingConfig {
            control: lfsr("x^3+x^2+1", "000"),
            data: lfsr("x^5+x^4+x^2+x+1", "00001"),
        };
        assert_eq!(
            shrink_keystream(&zero_control, 4),
            Err(GeneratorError::ControlAllZero)
        );
    }

    #[test]
    fn decimation_identity_on_random_configs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let polys = [
            "x^3+x^2+1",
            "x^3+x+1",
            "x^4+x^3+1",
            "x^5+x^2+1",
            "x^5+x^4+x^2+x+1",
        ];
        for _ in 0..40 {
            let cp = polys[rng.gen_range(0..polys.len())];
            let dp = polys[rng.gen_range(0..polys.len())];
            let cd = poly(cp).deg().unwrap();
            let dd = poly(dp).deg().unwrap();
            let mut cs: Vec<bool> = (0..cd).map(|_| rng.gen()).collect();
            cs[0] = true;
            let ds: Vec<bool> = (0..dd).map(|_| rng.gen()).collect();
            let cfg = ShrinkingConfig {
                control: LfsrConfig::new(poly(cp), BitSequence(cs)).unwrap(),
                data: LfsrConfig::new(poly(dp), BitSequence(ds)).unwrap(),
            };
            let control = lfsr_sequence(&cfg.control, 300);
            let data = lfsr_sequence(&cfg.data, 300);
            let expected = decimate(&control, &data);
            let got = shrink_keystream(&cfg, expected.len()).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn linearize_pn_sequence() {
        let lin = linearize(&seq("11101001110100")).unwrap();
        assert_eq!(lin.model.rule.to_string(), "100");
        assert_eq!(lin.model.read_cell, 1);
        assert_eq!(lin.model.initial_state.to_string(), "101");
        assert_eq!(lin.period, 7);
        assert!(lin.full_period_verified);
        assert_eq!(
            lin.to_json().to_string(),
            r#"{"rule":"100","initial_state":"101","read_cell":1,"verified_period":7}"#
        );
    }

    #[test]
    fn linearize_class_three_solution() {
        let eq = DifferenceEquation::new(poly("x^5+x^4+x^2+x+1"), 4).unwrap();
        let s = solution_sequence(&eq, &eq.coeffs(&[4, 0, 11, 19]).unwrap(), 248).unwrap();
        let lin = linearize(&s).unwrap();
        assert_eq!(lin.model.rule.to_string(), "10001100000000110001");
        assert_eq!(
            (lin.multiplicity, lin.linear_complexity, lin.period),
            (4, 20, 124)
        );
        assert_eq!(lin.model.output(248), s);
    }

    #[test]
    fn linearize_shrinking_generator() {
        let ks = shrink_keystream(&shrinker(), 124).unwrap();
        let lin = linearize(&ks).unwrap();
        assert_eq!(lin.base.deg(), Some(5));
        assert!(lin.multiplicity > 2 && lin.multiplicity <= 4);
        assert_eq!(lin.model.rule.len(), 20);
        assert_eq!(lin.period, 124);
        assert!(lin.full_period_verified);
        assert_eq!(lin.model.output(124), ks);
    }

    #[test]
    fn linearize_short_window_extends_by_recurrence() {
        // 30 bits of a class-2 solution: LC 15, window exactly 2 * LC
        let eq = DifferenceEquation::new(poly("x^5+x^4+x^2+x+1"), 3).unwrap();
        let full = solution_sequence(&eq, &eq.coeffs(&[1, 2, 3]).unwrap(), 124).unwrap();
        let window = BitSequence(full.as_slice()[..30].to_vec());
        let lin = linearize(&window).unwrap();
        assert_eq!(lin.model.rule.len(), 20);
        assert!(!lin.full_period_verified);
        assert_eq!(lin.model.output(124), full);
        assert_eq!(lin.to_json()["verified_period"], serde_json::Value::Null);
    }

    #[test]
    fn linearize_rejects_outside_model() {
        let a = lfsr_sequence(&lfsr("x^3+x^2+1", "100"), 100);
        let b = lfsr_sequence(&lfsr("x^4+x^3+1", "1000"), 100);
        assert!(matches!(
            linearize(&a.xor(&b)),
            Err(GeneratorError::OutsideModelClass(_))
        ));
        assert_eq!(
            linearize(&seq("00000000")),
            Err(GeneratorError::ZeroSequence)
        );
        assert!(matches!(
            linearize(&seq("11101")),
            Err(GeneratorError::InsufficientWindow { len: 5, lc: 3 })
        ));
    }

    #[test]
    fn every_cell_one_realization_for_random_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for base in ["x^3+x^2+1", "x^4+x^3+1", "x^5+x^2+1"] {
            for p in 1..=4u32 {
                let eq = DifferenceEquation::new(poly(base), p).unwrap();
                let r = eq.degree();
                let mut vals: Vec<u64> = (0..p).map(|_| rng.gen_range(0..1u64 << r)).collect();
                vals[0] |= 1;
                let len = 8 * r * p as usize;
                let s = solution_sequence(&eq, &eq.coeffs(&vals).unwrap(), len).unwrap();
                let lin = linearize(&s).unwrap();
                assert_eq!(lin.model.read_cell, 1);
                assert_eq!(lin.model.output(len), s);
            }
        }
    }

    #[test]
    fn gauss_solves_and_detects_inconsistency() {
        let rows = vec![
            BitVec::from_bools(&[true, true]),
            BitVec::from_bools(&[false, true]),
        ];
        let x = solve_gf2(rows.clone(), &[true, false]).unwrap();
        assert_eq!(x.to_bools(), vec![true, false]);
        let singular = vec![
            BitVec::from_bools(&[true, true]),
            BitVec::from_bools(&[true, true]),
        ];
        assert!(solve_gf2(singular, &[true, false]).is_none());
    }
}
