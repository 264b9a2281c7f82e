use crate::bits::BitVec;
use crate::gf2::{is_primitive, BinaryPolynomial, Gf2Error};

use super::{CaError, RuleVector};

pub const MAX_SYNTH_DEGREE: usize = 24;

/// Finds a pair of mutually reversed 90/150 automata whose characteristic
/// polynomial is `p`.
///
/// The search walks all rule vectors of length `deg(p)` depth-first,
/// carrying the two most recent sub-automaton polynomials, and stops at the
/// lexicographically smallest match `m`. The pair is returned as
/// `(reverse(m), m)`.
pub fn synthesize(p: &BinaryPolynomial) -> Result<(RuleVector, RuleVector), CaError> {
    let degree = p.degree();
    if degree > MAX_SYNTH_DEGREE as i64 {
        return Err(CaError::DegreeTooLarge {
            degree: degree as usize,
            max: MAX_SYNTH_DEGREE,
        });
    }
    if !is_primitive(p)? {
        return Err(Gf2Error::NotPrimitive(p.to_string()).into());
    }
    let l = degree as usize;
    let target = p.to_u64().expect("degree <= 24");
    let mut rules = 0u64;
    if !search(target, l, 0, 0, 1, &mut rules) {
        return Err(CaError::NoAutomaton(p.to_string()));
    }
    let found = RuleVector::new(BitVec::from_word(rules, l))?;
    Ok((found.reverse(), found))
}

/// `prev`/`cur` are P_{k-1} and P_k as coefficient masks after fixing
/// `d_1..d_k` in the low `k` bits of `rules`.
fn search(target: u64, l: usize, k: usize, prev: u64, cur: u64, rules: &mut u64) -> bool {
    if k == l {
        return cur == target;
    }
    for d in [false, true] {
        let mut next = (cur << 1) ^ prev;
        if d {
            next ^= cur;
            *rules |= 1 << k;
        } else {
            *rules &= !(1 << k);
        }
        if search(target, l, k + 1, cur, next, rules) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::primitive_polynomials;

    fn poly(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn known_pairs() {
        let (a, b) = synthesize(&poly("x^3+x^2+1")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("100".into(), "001".into()));
        let (a, b) = synthesize(&poly("x^5+x^4+x^2+x+1")).unwrap();
        assert_eq!(
            (a.to_string(), b.to_string()),
            ("10000".into(), "00001".into())
        );
        let (a, b) = synthesize(&poly("x+1")).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("1".into(), "1".into()));
    }

    #[test]
    fn lexicographically_smallest_match() {
        for r in 2..=8 {
            for p in primitive_polynomials(r).unwrap() {
                let (_, m) = synthesize(&p).unwrap();
                // exhaustive scan in lexicographic order (d_1 most significant)
                let first = (0u64..1 << r)
                    .map(|w| {
                        let bools: Vec<bool> =
                            (0..r).map(|i| (w >> (r - 1 - i)) & 1 == 1).collect();
                        RuleVector::from_bools(&bools).unwrap()
                    })
                    .find(|rv| rv.char_poly() == p)
                    .unwrap();
                assert_eq!(m, first, "{p}");
            }
        }
    }

    #[test]
    fn every_primitive_up_to_degree_12_is_realized() {
        for r in 1..=12 {
            for p in primitive_polynomials(r).unwrap() {
                let (a, b) = synthesize(&p).unwrap();
                assert_eq!(a.char_poly(), p);
                assert_eq!(b.char_poly(), p);
                assert_eq!(a.reverse(), b);
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            synthesize(&poly("x^4+x^3+x^2+x+1")),
            Err(CaError::Gf2(Gf2Error::NotPrimitive(_)))
        ));
        assert!(matches!(
            synthesize(&poly("x^25+x^3+1")),
            Err(CaError::DegreeTooLarge {
                degree: 25,
                max: 24
            })
        ));
    }
}
