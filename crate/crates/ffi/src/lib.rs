//! C ABI for `lhca`.
//!
//! Objects cross the boundary as opaque handles (`LhcaPoly`, `LhcaRule`,
//! `LhcaModel`) created by `*_parse`/constructor calls and released with the
//! matching `*_free`. Every fallible call returns an [`LhcaStatus`]; on a
//! non-OK status the message is available from [`lhca_last_error`] until the
//! next failing call on the same thread. Bit arrays are `uint8_t` buffers
//! holding 0 or 1 per position. Strings returned by the library are owned
//! by the caller and released with [`lhca_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lhca::analysis::{berlekamp_massey, minimal_period};
use lhca::ca::{cycle_census_parallel, synthesize, CAState, RuleVector};
use lhca::diffeq::{solution_sequence, DifferenceEquation};
use lhca::generators::{linearize, shrink_keystream, LfsrConfig, Linearization, ShrinkingConfig};
use lhca::{BinaryPolynomial, BitSequence, BitVec, Error, GeneratorError};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhcaStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed text, non-0/1 bit, bad length or index.
    InvalidArgument = 2,
    /// A mathematical precondition failed (e.g. polynomial not primitive).
    DomainError = 3,
    /// The keystream is not a primitive-power sequence.
    OutsideModel = 4,
    Panic = 5,
}

/// Polynomial over GF(2).
pub struct LhcaPoly(BinaryPolynomial);

/// 90/150 rule vector.
pub struct LhcaRule(RuleVector);

/// Result of `lhca_linearize`.
pub struct LhcaModel(Linearization);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Message of the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn lhca_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lhca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn classify(e: &Error) -> LhcaStatus {
    match e {
        Error::Bits(_) | Error::Invalid(_) => LhcaStatus::InvalidArgument,
        Error::Gf2(lhca::Gf2Error::Parse(_)) => LhcaStatus::InvalidArgument,
        Error::Ca(lhca::CaError::Parse(_))
        | Error::Ca(lhca::CaError::LengthMismatch { .. })
        | Error::Ca(lhca::CaError::CellOutOfRange { .. })
        | Error::Ca(lhca::CaError::Empty) => LhcaStatus::InvalidArgument,
        Error::Generator(GeneratorError::OutsideModelClass(_))
        | Error::Generator(GeneratorError::ZeroSequence) => LhcaStatus::OutsideModel,
        Error::Generator(GeneratorError::StateLength { .. }) => LhcaStatus::InvalidArgument,
        _ => LhcaStatus::DomainError,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), Status>) -> LhcaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LhcaStatus::Ok,
        Ok(Err(Status(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            LhcaStatus::Panic
        }
    }
}

struct Status(LhcaStatus, String);

impl<E: Into<Error>> From<E> for Status {
    fn from(e: E) -> Self {
        let e = e.into();
        Status(classify(&e), e.to_string())
    }
}

fn null(what: &str) -> Status {
    Status(LhcaStatus::NullPointer, format!("{what} is NULL"))
}

fn invalid(msg: impl Into<String>) -> Status {
    Status(LhcaStatus::InvalidArgument, msg.into())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Status> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Status> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn bits_arg(p: *const u8, len: usize, what: &str) -> Result<Vec<bool>, Status> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if p.is_null() {
        return Err(null(what));
    }
    std::slice::from_raw_parts(p, len)
        .iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(invalid(format!(
                "{what} contains byte {b}, expected 0 or 1"
            ))),
        })
        .collect()
}

unsafe fn write_bits(out: *mut u8, bits: &[bool]) -> Result<(), Status> {
    if bits.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    for (i, &b) in bits.iter().enumerate() {
        *out.add(i) = b as u8;
    }
    Ok(())
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Status> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Status> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| invalid("interior NUL"))?
        .into_raw();
    Ok(())
}

/// Parses `x^5+x^4+x^2+x+1` or `0x37`.
#[no_mangle]
pub unsafe extern "C" fn lhca_poly_parse(
    text: *const c_char,
    out: *mut *mut LhcaPoly,
) -> LhcaStatus {
    guard(|| {
        let p: BinaryPolynomial = str_arg(text, "text")?.parse()?;
        put(out, LhcaPoly(p))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_poly_free(p: *mut LhcaPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Sparse text form; NULL if `p` is NULL.
#[no_mangle]
pub unsafe extern "C" fn lhca_poly_to_string(p: *const LhcaPoly) -> *mut c_char {
    match p.as_ref() {
        Some(p) => CString::new(p.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Degree, -1 for the zero polynomial or a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn lhca_poly_degree(p: *const LhcaPoly) -> i64 {
    p.as_ref().map_or(-1, |p| p.0.degree())
}

#[no_mangle]
pub unsafe extern "C" fn lhca_poly_equal(a: *const LhcaPoly, b: *const LhcaPoly) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

#[no_mangle]
pub unsafe extern "C" fn lhca_poly_pow(
    p: *const LhcaPoly,
    exponent: u32,
    out: *mut *mut LhcaPoly,
) -> LhcaStatus {
    guard(|| {
        let p = ref_arg(p, "poly")?;
        put(out, LhcaPoly(p.0.pow(exponent as u64)))
    })
}

/// Primitivity for degrees 1..=32.
#[no_mangle]
pub unsafe extern "C" fn lhca_poly_is_primitive(p: *const LhcaPoly, out: *mut bool) -> LhcaStatus {
    guard(|| {
        let p = ref_arg(p, "poly")?;
        let v = lhca::gf2::is_primitive(&p.0)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = v;
        Ok(())
    })
}

/// Parses a rule vector such as `10001100000000110001` (leftmost = cell 1).
#[no_mangle]
pub unsafe extern "C" fn lhca_rule_parse(
    text: *const c_char,
    out: *mut *mut LhcaRule,
) -> LhcaStatus {
    guard(|| {
        let r: RuleVector = str_arg(text, "text")?.parse()?;
        put(out, LhcaRule(r))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_rule_free(r: *mut LhcaRule) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lhca_rule_to_string(r: *const LhcaRule) -> *mut c_char {
    match r.as_ref() {
        Some(r) => CString::new(r.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Number of cells, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn lhca_rule_len(r: *const LhcaRule) -> usize {
    r.as_ref().map_or(0, |r| r.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn lhca_rule_char_poly(
    r: *const LhcaRule,
    out: *mut *mut LhcaPoly,
) -> LhcaStatus {
    guard(|| {
        let r = ref_arg(r, "rule")?;
        put(out, LhcaPoly(r.0.char_poly()))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_rule_reverse(
    r: *const LhcaRule,
    out: *mut *mut LhcaRule,
) -> LhcaStatus {
    guard(|| {
        let r = ref_arg(r, "rule")?;
        put(out, LhcaRule(r.0.reverse()))
    })
}

/// Concatenated automaton for multiplicity `p`: `ceil(log2 p)` doublings.
#[no_mangle]
pub unsafe extern "C" fn lhca_rule_concat(
    r: *const LhcaRule,
    p: u32,
    out: *mut *mut LhcaRule,
) -> LhcaStatus {
    guard(|| {
        let r = ref_arg(r, "rule")?;
        put(out, LhcaRule(r.0.concat_to_multiplicity(p)?))
    })
}

/// Writes `len` bits of cell `cell` (1-based) starting from `state`
/// (`state_len` must equal the rule length).
#[no_mangle]
pub unsafe extern "C" fn lhca_run_column(
    r: *const LhcaRule,
    state: *const u8,
    state_len: usize,
    cell: usize,
    out: *mut u8,
    len: usize,
) -> LhcaStatus {
    guard(|| {
        let r = ref_arg(r, "rule")?;
        let s0 = CAState::new(BitVec::from_bools(&bits_arg(state, state_len, "state")?));
        let col = r.0.run_column(&s0, cell, len)?;
        write_bits(out, col.as_slice())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_synthesize(
    p: *const LhcaPoly,
    first: *mut *mut LhcaRule,
    second: *mut *mut LhcaRule,
) -> LhcaStatus {
    guard(|| {
        let p = ref_arg(p, "poly")?;
        if first.is_null() || second.is_null() {
            return Err(null("output pointer"));
        }
        let (a, b) = synthesize(&p.0)?;
        put(first, LhcaRule(a))?;
        put(second, LhcaRule(b))
    })
}

/// Cycle census as `{"L":..,"cycles":[..]}` JSON.
#[no_mangle]
pub unsafe extern "C" fn lhca_cycle_census_json(
    r: *const LhcaRule,
    threads: usize,
    out: *mut *mut c_char,
) -> LhcaStatus {
    guard(|| {
        let r = ref_arg(r, "rule")?;
        let census = cycle_census_parallel(&r.0, threads.max(1))?;
        put_string(
            out,
            serde_json::to_string(&census).map_err(|e| invalid(e.to_string()))?,
        )
    })
}

/// Linear complexity and minimal polynomial of a window.
#[no_mangle]
pub unsafe extern "C" fn lhca_berlekamp_massey(
    bits: *const u8,
    len: usize,
    lc: *mut usize,
    poly: *mut *mut LhcaPoly,
) -> LhcaStatus {
    guard(|| {
        let prof = berlekamp_massey(&BitSequence(bits_arg(bits, len, "bits")?));
        if lc.is_null() {
            return Err(null("lc"));
        }
        *lc = prof.lc;
        put(poly, LhcaPoly(prof.minimal_poly))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_minimal_period(
    bits: *const u8,
    len: usize,
    out: *mut usize,
) -> LhcaStatus {
    guard(|| {
        let d = minimal_period(&BitSequence(bits_arg(bits, len, "bits")?));
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = d;
        Ok(())
    })
}

/// Closed-form solution of `P(E)^p a_n = 0` with coefficients given as
/// polynomial-basis words.
#[no_mangle]
pub unsafe extern "C" fn lhca_solution_sequence(
    base: *const LhcaPoly,
    multiplicity: u32,
    coeffs: *const u64,
    n_coeffs: usize,
    out: *mut u8,
    len: usize,
) -> LhcaStatus {
    guard(|| {
        let base = ref_arg(base, "base")?;
        if coeffs.is_null() && n_coeffs > 0 {
            return Err(null("coeffs"));
        }
        let values = if n_coeffs == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coeffs, n_coeffs)
        };
        let eq = DifferenceEquation::new(base.0.clone(), multiplicity)?;
        let a = eq.coeffs(values)?;
        write_bits(out, solution_sequence(&eq, &a, len)?.as_slice())
    })
}

/// Shrinking-generator keystream of `len` bits.
#[no_mangle]
pub unsafe extern "C" fn lhca_shrink(
    control_poly: *const LhcaPoly,
    control_seed: *const u8,
    control_len: usize,
    data_poly: *const LhcaPoly,
    data_seed: *const u8,
    data_len: usize,
    out: *mut u8,
    len: usize,
) -> LhcaStatus {
    guard(|| {
        let cfg = ShrinkingConfig {
            control: LfsrConfig::new(
                ref_arg(control_poly, "control_poly")?.0.clone(),
                BitSequence(bits_arg(control_seed, control_len, "control_seed")?),
            )?,
            data: LfsrConfig::new(
                ref_arg(data_poly, "data_poly")?.0.clone(),
                BitSequence(bits_arg(data_seed, data_len, "data_seed")?),
            )?,
        };
        write_bits(out, shrink_keystream(&cfg, len)?.as_slice())
    })
}

/// Builds a CA model reproducing the keystream window.
#[no_mangle]
pub unsafe extern "C" fn lhca_linearize(
    bits: *const u8,
    len: usize,
    out: *mut *mut LhcaModel,
) -> LhcaStatus {
    guard(|| {
        let lin = linearize(&BitSequence(bits_arg(bits, len, "bits")?))?;
        put(out, LhcaModel(lin))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lhca_model_free(m: *mut LhcaModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `{rule, initial_state, read_cell, verified_period}` JSON.
#[no_mangle]
pub unsafe extern "C" fn lhca_model_json(m: *const LhcaModel, out: *mut *mut c_char) -> LhcaStatus {
    guard(|| {
        let m = ref_arg(m, "model")?;
        put_string(out, m.0.to_json().to_string())
    })
}

/// Copy of the model's automaton.
#[no_mangle]
pub unsafe extern "C" fn lhca_model_rule(
    m: *const LhcaModel,
    out: *mut *mut LhcaRule,
) -> LhcaStatus {
    guard(|| {
        let m = ref_arg(m, "model")?;
        put(out, LhcaRule(m.0.model.rule.clone()))
    })
}

/// 1-based read cell, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn lhca_model_read_cell(m: *const LhcaModel) -> usize {
    m.as_ref().map_or(0, |m| m.0.model.read_cell)
}

/// Period of the modelled keystream, 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn lhca_model_period(m: *const LhcaModel) -> u64 {
    m.as_ref().map_or(0, |m| m.0.period)
}

/// Writes the first `len` output bits of the model.
#[no_mangle]
pub unsafe extern "C" fn lhca_model_output(
    m: *const LhcaModel,
    out: *mut u8,
    len: usize,
) -> LhcaStatus {
    guard(|| {
        let m = ref_arg(m, "model")?;
        write_bits(out, m.0.model.output(len).as_slice())
    })
}
