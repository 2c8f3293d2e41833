use std::ffi::{CStr, CString};
use std::ptr;

use mckay_ffi::*;

fn group(spec: &str) -> *mut McGroup {
    let s = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mckay_group_parse(s.as_ptr(), &mut g) }, McStatus::Ok);
    g
}

#[test]
fn ghilb_chamber_and_crossing() {
    let g = group("1/6(1,2,3)");
    let mut n = 0usize;
    assert_eq!(unsafe { mckay_group_order(g, &mut n) }, McStatus::Ok);
    assert_eq!(n, 6);
    let mut ch = ptr::null_mut();
    assert_eq!(unsafe { mckay_chamber_ghilb(g, &mut ch) }, McStatus::Ok);
    let mut count = 0usize;
    assert_eq!(unsafe { mckay_chamber_facet_count(ch, &mut count) }, McStatus::Ok);
    assert!(count > 0);
    let mut normal = [0i64; 5];
    assert_eq!(unsafe { mckay_chamber_facet_normal(ch, 0, normal.as_mut_ptr(), 5) }, McStatus::Ok);
    assert!(normal.iter().any(|&x| x != 0));
    assert_eq!(unsafe { mckay_chamber_facet_normal(ch, 0, normal.as_mut_ptr(), 2) }, McStatus::BufferTooSmall);
    let mut t = McWallType::Zero;
    assert_eq!(unsafe { mckay_chamber_facet_type(ch, count, &mut t) }, McStatus::OutOfRange);

    let mut next = ptr::null_mut();
    assert_eq!(unsafe { mckay_chamber_cross(g, ch, 0, &mut next) }, McStatus::Ok);
    let mut tok = ptr::null_mut();
    assert_eq!(unsafe { mckay_chamber_token(next, &mut tok) }, McStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { mckay_chamber_from_token(g, tok, &mut again) }, McStatus::Ok);
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { mckay_chamber_describe(g, next, &mut a) }, McStatus::Ok);
    assert_eq!(unsafe { mckay_chamber_describe(g, again, &mut b) }, McStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(a) }, unsafe { CStr::from_ptr(b) });
    unsafe {
        mckay_string_free(a);
        mckay_string_free(b);
        mckay_string_free(tok);
        mckay_chamber_free(again);
        mckay_chamber_free(next);
        mckay_chamber_free(ch);
        mckay_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("1/0(1,1,1)").unwrap();
    let mut g = ptr::null_mut();
    let st = unsafe { mckay_group_parse(bad.as_ptr(), &mut g) };
    assert_ne!(st, McStatus::Ok);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(mckay_last_error()) }.to_str().unwrap();
    assert!(msg.contains("order"), "{msg}");
    assert_eq!(unsafe { mckay_group_parse(ptr::null(), &mut g) }, McStatus::NullArgument);
    let mut n = 0usize;
    assert_eq!(unsafe { mckay_group_order(ptr::null(), &mut n) }, McStatus::NullArgument);
    unsafe { mckay_group_free(ptr::null_mut()) };
}

#[test]
fn json_report() {
    let cmd = CString::new("ghilb").unwrap();
    let spec = CString::new("1/3(1,1,1)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mckay_report_json(cmd.as_ptr(), spec.as_ptr(), &mut out) }, McStatus::Ok);
    let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { mckay_string_free(out) };
    assert!(s.contains("\"schema\": \"mckay-report/1\""));
    let cmd = CString::new("nope").unwrap();
    assert_eq!(unsafe { mckay_report_json(cmd.as_ptr(), spec.as_ptr(), &mut out) }, McStatus::Precondition);
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mckay.h")).unwrap();
    for name in ["mckay_group_parse", "mckay_chamber_cross", "mckay_string_free", "McStatus", "MC_STATUS_OK"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
