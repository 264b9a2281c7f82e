use std::ffi::{CStr, CString};
use std::ptr;

use lhca_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    lhca_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lhca_last_error())
        .to_str()
        .unwrap()
        .to_owned()
}

unsafe fn poly(s: &str) -> *mut LhcaPoly {
    let mut p = ptr::null_mut();
    assert_eq!(lhca_poly_parse(cstr(s).as_ptr(), &mut p), LhcaStatus::Ok);
    p
}

unsafe fn rule(s: &str) -> *mut LhcaRule {
    let mut r = ptr::null_mut();
    assert_eq!(lhca_rule_parse(cstr(s).as_ptr(), &mut r), LhcaStatus::Ok);
    r
}

fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

fn text(b: &[u8]) -> String {
    b.iter().map(|&x| (b'0' + x) as char).collect()
}

#[test]
fn poly_roundtrip_and_primitivity() {
    unsafe {
        let p = poly("0x37");
        assert_eq!(take_string(lhca_poly_to_string(p)), "x^5+x^4+x^2+x+1");
        assert_eq!(lhca_poly_degree(p), 5);
        let mut prim = false;
        assert_eq!(lhca_poly_is_primitive(p, &mut prim), LhcaStatus::Ok);
        assert!(prim);
        let mut p4 = ptr::null_mut();
        assert_eq!(lhca_poly_pow(p, 4, &mut p4), LhcaStatus::Ok);
        assert_eq!(lhca_poly_degree(p4), 20);
        lhca_poly_free(p4);
        lhca_poly_free(p);
        assert_eq!(lhca_poly_degree(ptr::null()), -1);
    }
}

#[test]
fn rule_char_poly_concat_synth() {
    unsafe {
        let r = rule("10000");
        let mut cp = ptr::null_mut();
        assert_eq!(lhca_rule_char_poly(r, &mut cp), LhcaStatus::Ok);
        assert_eq!(take_string(lhca_poly_to_string(cp)), "x^5+x^4+x^2+x+1");

        let mut d = ptr::null_mut();
        assert_eq!(lhca_rule_concat(r, 4, &mut d), LhcaStatus::Ok);
        assert_eq!(take_string(lhca_rule_to_string(d)), "10001100000000110001");
        assert_eq!(lhca_rule_len(d), 20);

        let mut dp = ptr::null_mut();
        let mut p4 = ptr::null_mut();
        assert_eq!(lhca_rule_char_poly(d, &mut dp), LhcaStatus::Ok);
        assert_eq!(lhca_poly_pow(cp, 4, &mut p4), LhcaStatus::Ok);
        assert!(lhca_poly_equal(dp, p4));

        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(lhca_synthesize(cp, &mut a, &mut b), LhcaStatus::Ok);
        assert_eq!(take_string(lhca_rule_to_string(a)), "10000");
        assert_eq!(take_string(lhca_rule_to_string(b)), "00001");

        for h in [a, b, d] {
            lhca_rule_free(h);
        }
        for h in [cp, dp, p4] {
            lhca_poly_free(h);
        }
        lhca_rule_free(r);
    }
}

#[test]
fn run_column_and_bm() {
    unsafe {
        let r = rule("100");
        let s0 = bits("101");
        let mut out = vec![9u8; 14];
        assert_eq!(
            lhca_run_column(r, s0.as_ptr(), 3, 1, out.as_mut_ptr(), out.len()),
            LhcaStatus::Ok
        );
        assert_eq!(text(&out), "11101001110100");

        let mut lc = 0usize;
        let mut mp = ptr::null_mut();
        assert_eq!(
            lhca_berlekamp_massey(out.as_ptr(), out.len(), &mut lc, &mut mp),
            LhcaStatus::Ok
        );
        assert_eq!(lc, 3);
        assert_eq!(take_string(lhca_poly_to_string(mp)), "x^3+x^2+1");
        let mut period = 0usize;
        assert_eq!(
            lhca_minimal_period(out.as_ptr(), out.len(), &mut period),
            LhcaStatus::Ok
        );
        assert_eq!(period, 7);
        lhca_poly_free(mp);

        // wrong state length
        assert_eq!(
            lhca_run_column(r, s0.as_ptr(), 2, 1, out.as_mut_ptr(), out.len()),
            LhcaStatus::InvalidArgument
        );
        assert!(!last_error().is_empty());
        lhca_rule_free(r);
    }
}

#[test]
fn census_json() {
    unsafe {
        let r = rule("100");
        let mut json = ptr::null_mut();
        assert_eq!(lhca_cycle_census_json(r, 2, &mut json), LhcaStatus::Ok);
        assert_eq!(
            take_string(json),
            r#"{"L":3,"cycles":[{"length":1,"count":1,"symmetry":{"other":1}},{"length":7,"count":1,"symmetry":{"other":7}}]}"#
        );
        lhca_rule_free(r);
    }
}

#[test]
fn solution_sequence_matches_closed_form() {
    unsafe {
        let p = poly("x^3+x^2+1");
        let coeffs = [1u64, 0];
        let mut out = vec![0u8; 14];
        assert_eq!(
            lhca_solution_sequence(p, 2, coeffs.as_ptr(), 2, out.as_mut_ptr(), out.len()),
            LhcaStatus::Ok
        );
        let mut period = 0;
        lhca_minimal_period(out.as_ptr(), out.len(), &mut period);
        assert_eq!(period, 7);
        // coefficient outside GF(8)
        let bad = [8u64, 0];
        assert_ne!(
            lhca_solution_sequence(p, 2, bad.as_ptr(), 2, out.as_mut_ptr(), out.len()),
            LhcaStatus::Ok
        );
        lhca_poly_free(p);
    }
}

#[test]
fn shrink_then_linearize() {
    unsafe {
        let cp = poly("x^3+x^2+1");
        let dp = poly("x^5+x^4+x^2+x+1");
        let cs = bits("111");
        let ds = bits("00001");
        let mut ks = vec![0u8; 124];
        assert_eq!(
            lhca_shrink(
                cp,
                cs.as_ptr(),
                3,
                dp,
                ds.as_ptr(),
                5,
                ks.as_mut_ptr(),
                ks.len()
            ),
            LhcaStatus::Ok
        );
        let mut m = ptr::null_mut();
        assert_eq!(
            lhca_linearize(ks.as_ptr(), ks.len(), &mut m),
            LhcaStatus::Ok
        );
        assert_eq!(lhca_model_period(m), 124);
        assert_eq!(lhca_model_read_cell(m), 1);
        let mut regen = vec![0u8; 124];
        assert_eq!(
            lhca_model_output(m, regen.as_mut_ptr(), regen.len()),
            LhcaStatus::Ok
        );
        assert_eq!(regen, ks);
        let mut r = ptr::null_mut();
        assert_eq!(lhca_model_rule(m, &mut r), LhcaStatus::Ok);
        assert_eq!(lhca_rule_len(r), 20);
        let mut json = ptr::null_mut();
        assert_eq!(lhca_model_json(m, &mut json), LhcaStatus::Ok);
        let json = take_string(json);
        assert!(json.contains(r#""verified_period":124"#), "{json}");
        lhca_rule_free(r);
        lhca_model_free(m);
        lhca_poly_free(cp);
        lhca_poly_free(dp);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            lhca_poly_parse(ptr::null(), &mut p),
            LhcaStatus::NullPointer
        );
        assert_eq!(
            lhca_poly_parse(cstr("x^^2").as_ptr(), &mut p),
            LhcaStatus::InvalidArgument
        );
        assert!(p.is_null());
        let mut r = ptr::null_mut();
        assert_eq!(
            lhca_rule_parse(cstr("1021").as_ptr(), &mut r),
            LhcaStatus::InvalidArgument
        );

        // reducible polynomial has no automaton from synthesis
        let q = poly("x^4+x^2+1");
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(lhca_synthesize(q, &mut a, &mut b), LhcaStatus::DomainError);
        assert!(!last_error().is_empty());
        lhca_poly_free(q);

        // non-binary byte
        let bad = [0u8, 2, 1];
        let mut lc = 0;
        let mut mp = ptr::null_mut();
        assert_eq!(
            lhca_berlekamp_massey(bad.as_ptr(), 3, &mut lc, &mut mp),
            LhcaStatus::InvalidArgument
        );

        // sum of two distinct primitive sequences is outside the model class
        let ks = bits("1110100111010011101001110100");
        let other = bits("1000010101110110001111100110100");
        let mixed: Vec<u8> = ks
            .iter()
            .cycle()
            .zip(other.iter().cycle())
            .take(62)
            .map(|(a, b)| a ^ b)
            .collect();
        let mut m = ptr::null_mut();
        assert_eq!(
            lhca_linearize(mixed.as_ptr(), mixed.len(), &mut m),
            LhcaStatus::OutsideModel
        );
        assert!(m.is_null());

        lhca_poly_free(ptr::null_mut());
        lhca_rule_free(ptr::null_mut());
        lhca_model_free(ptr::null_mut());
        lhca_string_free(ptr::null_mut());
    }
}
