//! Reproduction checks for the reference examples (Table 1 automata, the
//! binomial table, the 20-cell census, the complexity ladder and the
//! shrinking-generator model). Run by `lhca verify-paper`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{berlekamp_massey, minimal_period};
use crate::bits::BitSequence;
use crate::ca::{cycle_census, synthesize, CAState, RuleVector, SymmetryClass};
use crate::diffeq::{
    binomial_bit, binomial_period, recurrence_sequence, solution_sequence, DifferenceEquation,
};
use crate::generators::{linearize, shrink_keystream, LfsrConfig, ShrinkingConfig};
use crate::gf2::{primitive_polynomials, BinaryPolynomial};

/// Seed for every randomized check.
pub const CHECK_SEED: u64 = 0x90_150;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

pub const CHECKS: [(&str, Check); 9] = [
    ("table1-automata", table1),
    ("characteristic-polynomials", char_polys),
    ("concatenation", concatenation),
    ("cycle-census-20", census),
    ("lc-ladder", lc_ladder),
    ("binomial-table", binomial_table),
    ("closed-form-vs-recurrence", closed_form),
    ("shrinking-linearization", shrinking),
    ("property-suites", properties),
];

pub fn run_all() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let t = Instant::now();
            let r = check();
            let seconds = t.elapsed().as_secs_f64();
            match r {
                Ok(detail) => CheckResult {
                    name,
                    passed: true,
                    detail,
                    seconds,
                },
                Err(detail) => CheckResult {
                    name,
                    passed: false,
                    detail,
                    seconds,
                },
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> BinaryPolynomial {
    s.parse().expect("literal polynomial")
}

fn rule(s: &str) -> RuleVector {
    s.parse().expect("literal rule")
}

const TABLE1_LEFT: [&str; 7] = ["101", "100", "110", "011", "111", "001", "010"];
const TABLE1_RIGHT: [&str; 7] = ["110", "111", "100", "010", "101", "001", "011"];
const PN7: &str = "1110100";
const D20: &str = "10001100000000110001";

fn table1() -> Result<String, String> {
    for (r, rows) in [("100", TABLE1_LEFT), ("001", TABLE1_RIGHT)] {
        let rv = rule(r);
        let s0: CAState = rows[0].parse().map_err(|e| format!("{e}"))?;
        let states = rv.evolve(&s0, 7).map_err(|e| e.to_string())?;
        let got: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        ensure(got == rows, || format!("rule {r}: rows {got:?}"))?;
        let col = rv.run_column(&s0, 1, 7).map_err(|e| e.to_string())?;
        ensure(col.to_string() == PN7, || format!("rule {r}: column {col}"))?;
    }
    Ok(format!("both automata reproduce 7 rows, cell 1 = {PN7}"))
}

fn char_polys() -> Result<String, String> {
    let a = rule("100").char_poly();
    let b = rule("10000").char_poly();
    ensure(a == poly("x^3+x^2+1"), || format!("(1,0,0) -> {a}"))?;
    ensure(b == poly("x^5+x^4+x^2+x+1"), || {
        format!("(1,0,0,0,0) -> {b}")
    })?;
    Ok(format!("{a}; {b}"))
}

fn concatenation() -> Result<String, String> {
    let d = rule("10000")
        .concat_to_multiplicity(4)
        .map_err(|e| e.to_string())?;
    ensure(d.to_string() == D20, || format!("got {d}"))?;
    let expected = poly("x^5+x^4+x^2+x+1").pow(4);
    ensure(d.char_poly() == expected, || {
        format!("char poly {}", d.char_poly())
    })?;
    Ok(format!("{d} has char poly {expected}"))
}

fn census() -> Result<String, String> {
    let c = cycle_census(&rule(D20)).map_err(|e| e.to_string())?;
    let shape: Vec<(u64, u64)> = c.cycles.iter().map(|k| (k.length, k.count)).collect();
    ensure(shape == [(1, 1), (31, 1), (62, 16), (124, 8448)], || {
        format!("cycle shape {shape:?}")
    })?;
    ensure(c.total_states() == 1 << 20, || {
        format!("total {}", c.total_states())
    })?;
    let ds = |len| {
        c.class(len)
            .and_then(|k| k.symmetry.get(&SymmetryClass::DoublySymmetric).copied())
    };
    let sym = |len| {
        c.class(len)
            .and_then(|k| k.symmetry.get(&SymmetryClass::Symmetric).copied())
    };
    ensure(ds(31) == Some(31), || {
        "31-cycle is not the doubly symmetric cycle".into()
    })?;
    ensure(
        sym(62) == Some(992) && c.states_of(SymmetryClass::Symmetric) == 992,
        || "symmetric states are not all on the 62-cycles".into(),
    )?;
    ensure(c.states_of(SymmetryClass::Repetitive) == 992, || {
        format!(
            "repetitive states {}",
            c.states_of(SymmetryClass::Repetitive)
        )
    })?;
    Ok("1x1 + 1x31 + 16x62 + 8448x124 = 1048576".into())
}

fn lc_ladder() -> Result<String, String> {
    let base = poly("x^5+x^4+x^2+x+1");
    let eq = DifferenceEquation::new(base.clone(), 4).map_err(|e| e.to_string())?;
    let reps: [[u64; 4]; 4] = [[1, 0, 0, 0], [5, 1, 0, 0], [0, 3, 1, 0], [9, 0, 2, 1]];
    let mut lcs = Vec::new();
    for (i, a) in reps.iter().enumerate() {
        let s = solution_sequence(&eq, &eq.coeffs(a).map_err(|e| e.to_string())?, 4 * 124)
            .map_err(|e| e.to_string())?;
        let prof = berlekamp_massey(&s);
        let want = base.pow(i as u64 + 1);
        ensure(prof.lc == 5 * (i + 1) && prof.minimal_poly == want, || {
            format!("class {i}: lc {} poly {}", prof.lc, prof.minimal_poly)
        })?;
        lcs.push(prof.lc);
    }
    Ok(format!("LC {lcs:?}"))
}

const TABLE2: [&str; 8] = [
    "11111111", "01010101", "00110011", "00010001", "00001111", "00000101", "00000011", "00000001",
];

fn binomial_table() -> Result<String, String> {
    for (i, row) in TABLE2.iter().enumerate() {
        let got: String = (0..8)
            .map(|n| if binomial_bit(n, i as u64) { '1' } else { '0' })
            .collect();
        ensure(got == *row, || format!("row {i}: {got}"))?;
    }
    let periods: Vec<u64> = (0..8).map(binomial_period).collect();
    ensure(periods == [1, 2, 4, 4, 8, 8, 8, 8], || {
        format!("periods {periods:?}")
    })?;
    Ok(format!("T = {periods:?}"))
}

fn closed_form() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let bases = ["x^3+x^2+1", "x^5+x^4+x^2+x+1"];
    for t in 0..100 {
        let eq = DifferenceEquation::new(poly(bases[t % 2]), rng.gen_range(2..=4))
            .map_err(|e| e.to_string())?;
        let r = eq.degree();
        let d = r * eq.multiplicity() as usize;
        let vals: Vec<u64> = (0..eq.multiplicity())
            .map(|_| rng.gen_range(0..1u64 << r))
            .collect();
        let a = eq.coeffs(&vals).map_err(|e| e.to_string())?;
        let sol = solution_sequence(&eq, &a, 5 * d).map_err(|e| e.to_string())?;
        let seed = BitSequence(sol.as_slice()[..d].to_vec());
        let rec = recurrence_sequence(&eq.char_poly(), &seed, 5 * d).map_err(|e| e.to_string())?;
        ensure(rec == sol, || format!("tuple {vals:?} over {}", eq.base()))?;
    }
    Ok("100 random tuples agree".into())
}

/// Control x^3+x^2+1 seeded 111, data x^5+x^4+x^2+x+1 seeded 00001.
pub fn reference_shrinker() -> ShrinkingConfig {
    ShrinkingConfig {
        control: LfsrConfig::new(poly("x^3+x^2+1"), "111".parse().expect("bits"))
            .expect("primitive"),
        data: LfsrConfig::new(poly("x^5+x^4+x^2+x+1"), "00001".parse().expect("bits"))
            .expect("primitive"),
    }
}

fn shrinking() -> Result<String, String> {
    let ks = shrink_keystream(&reference_shrinker(), 124).map_err(|e| e.to_string())?;
    let lin = linearize(&ks).map_err(|e| e.to_string())?;
    ensure(lin.base.deg() == Some(5), || format!("base {}", lin.base))?;
    ensure(lin.multiplicity > 2 && lin.multiplicity <= 4, || {
        format!("multiplicity {}", lin.multiplicity)
    })?;
    ensure(lin.model.rule.len() == 20, || {
        format!("rule {}", lin.model.rule)
    })?;
    ensure(lin.model.output(124) == ks && lin.period == 124, || {
        "model does not reproduce the 124-bit period".into()
    })?;
    Ok(format!(
        "({})^{} -> rule {} state {} cell {}",
        lin.base, lin.multiplicity, lin.model.rule, lin.model.initial_state, lin.model.read_cell
    ))
}

fn properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    for _ in 0..200 {
        let l = rng.gen_range(1..=12);
        let rv = RuleVector::from_bools(&(0..l).map(|_| rng.gen()).collect::<Vec<_>>())
            .map_err(|e| e.to_string())?;
        let s = CAState::from_word(rng.gen(), l);
        let t = CAState::from_word(rng.gen(), l);
        let lhs = rv.step(&s.xor(&t)).map_err(|e| e.to_string())?;
        let rhs = rv
            .step(&s)
            .map_err(|e| e.to_string())?
            .xor(&rv.step(&t).map_err(|e| e.to_string())?);
        ensure(lhs == rhs, || format!("linearity fails for {rv}"))?;
        ensure(rv.reverse().char_poly() == rv.char_poly(), || {
            format!("reversal fails for {rv}")
        })?;
        let p = rv.char_poly();
        ensure(rv.concat_double().char_poly() == &p * &p, || {
            format!("squaring fails for {rv}")
        })?;
    }
    let mut count = 0;
    for r in 1..=8 {
        for p in primitive_polynomials(r).map_err(|e| e.to_string())? {
            let (rv, _) = synthesize(&p).map_err(|e| e.to_string())?;
            let period = (1usize << r) - 1;
            let col = rv
                .run_column(&CAState::from_word(1, r), 1, 2 * period)
                .map_err(|e| e.to_string())?;
            ensure(minimal_period(&col) == period, || {
                format!("{p}: period {}", minimal_period(&col))
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "200 random rules; {count} primitive polynomials of degree <= 8"
    ))
}
