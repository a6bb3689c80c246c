//! Exercises the C entry points from Rust exactly as a C caller would:
//! through raw pointers, checking statuses, and freeing what it gets back.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;
use strata_capi::*;

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    strata_string_free(p);
    s
}

#[test]
fn poset_round_trip() {
    unsafe {
        let mut poset: *mut StrataPoset = ptr::null_mut();
        assert_eq!(strata_poset_new(2, &mut poset), StrataStatus::Ok);
        let mut len = 0usize;
        assert_eq!(strata_poset_len(poset, &mut len), StrataStatus::Ok);
        assert_eq!(len, 3);

        let mut label: *mut c_char = ptr::null_mut();
        assert_eq!(strata_poset_element(poset, 0, &mut label), StrataStatus::Ok);
        assert_eq!(take_string(label), "[(2,1)]");
        assert_eq!(
            strata_poset_element(poset, 99, &mut label),
            StrataStatus::DomainError
        );

        let fine = CString::new("[(1,1),(1,1)]").unwrap();
        let coarse = CString::new("[(2,1)]").unwrap();
        let mut ans = false;
        assert_eq!(
            strata_poset_leq(poset, fine.as_ptr(), coarse.as_ptr(), &mut ans),
            StrataStatus::Ok
        );
        assert!(ans);
        assert_eq!(
            strata_poset_leq(poset, coarse.as_ptr(), fine.as_ptr(), &mut ans),
            StrataStatus::Ok
        );
        assert!(!ans);

        let mut dot: *mut c_char = ptr::null_mut();
        assert_eq!(strata_poset_dot(poset, &mut dot), StrataStatus::Ok);
        assert!(take_string(dot).starts_with("digraph rt_2 {"));

        let mut rigid = false;
        assert_eq!(strata_poset_rigidity(poset, &mut rigid), StrataStatus::Ok);
        assert!(rigid);

        strata_poset_free(poset);
    }
}

#[test]
fn poset_error_paths() {
    unsafe {
        let mut poset: *mut StrataPoset = ptr::null_mut();
        assert_eq!(strata_poset_new(0, &mut poset), StrataStatus::DomainError);
        assert_eq!(strata_poset_new(2, ptr::null_mut()), StrataStatus::NullPointer);
        assert_eq!(
            strata_poset_len(ptr::null(), &mut 0usize),
            StrataStatus::NullPointer
        );

        assert_eq!(strata_poset_new(3, &mut poset), StrataStatus::Ok);
        let bogus = CString::new("nonsense").unwrap();
        let fine = CString::new("[(1,3)]").unwrap();
        let mut ans = false;
        assert_eq!(
            strata_poset_leq(poset, bogus.as_ptr(), fine.as_ptr(), &mut ans),
            StrataStatus::ParseError
        );
        // wrong total dimension is a domain error, not a parse error
        let wrong = CString::new("[(2,1)]").unwrap();
        assert_eq!(
            strata_poset_leq(poset, wrong.as_ptr(), fine.as_ptr(), &mut ans),
            StrataStatus::DomainError
        );
        strata_poset_free(poset);
    }
}

#[test]
fn type_helpers() {
    unsafe {
        let t = CString::new("[(2,1)]").unwrap();
        let mut dual: *mut c_char = ptr::null_mut();
        assert_eq!(strata_type_dual(t.as_ptr(), &mut dual), StrataStatus::Ok);
        assert_eq!(take_string(dual), "[(1,2)]");

        let mut dim = 0u64;
        assert_eq!(
            strata_type_stratum_dim(t.as_ptr(), 0, 2, &mut dim),
            StrataStatus::Ok
        );
        assert_eq!(dim, 5);
        assert_eq!(
            strata_type_stratum_dim(t.as_ptr(), 0, 1, &mut dim),
            StrataStatus::DomainError
        );
    }
}

#[test]
fn tuple_classification() {
    unsafe {
        let doc =
            CString::new(r#"{"n":2,"r":2,"matrices":[[[2,0],[0,2]],[[0,1],[1,0]]]}"#).unwrap();
        let mut tuple: *mut StrataTuple = ptr::null_mut();
        assert_eq!(strata_tuple_from_json(doc.as_ptr(), &mut tuple), StrataStatus::Ok);

        let mut n = 0usize;
        let mut r = 0usize;
        assert_eq!(strata_tuple_n(tuple, &mut n), StrataStatus::Ok);
        assert_eq!(strata_tuple_r(tuple, &mut r), StrataStatus::Ok);
        assert_eq!((n, r), (2, 2));

        let mut ty: *mut c_char = ptr::null_mut();
        assert_eq!(strata_tuple_classify(tuple, &mut ty), StrataStatus::Ok);
        assert_eq!(take_string(ty), "[(1,1),(1,1)]");

        let mut report: *mut c_char = ptr::null_mut();
        assert_eq!(strata_tuple_classify_json(tuple, &mut report), StrataStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(doc["algebra_dim"], 2);
        assert_eq!(doc["blocks"].as_array().unwrap().len(), 2);

        let mut ss = false;
        assert_eq!(strata_tuple_is_semisimple(tuple, &mut ss), StrataStatus::Ok);
        assert!(ss);

        let mut inv: *mut c_char = ptr::null_mut();
        assert_eq!(strata_tuple_invariants2x2(tuple, &mut inv), StrataStatus::Ok);
        assert_eq!(take_string(inv), "4 0 4 -1 3");

        strata_tuple_free(tuple);

        // a rotation generates a field, not a split algebra
        let rot = CString::new(r#"{"n":2,"r":1,"matrices":[[[0,-1],[1,0]]]}"#).unwrap();
        assert_eq!(strata_tuple_from_json(rot.as_ptr(), &mut tuple), StrataStatus::Ok);
        let mut ty: *mut c_char = ptr::null_mut();
        assert_eq!(strata_tuple_classify(tuple, &mut ty), StrataStatus::NotSplit);
        assert!(ty.is_null());
        strata_tuple_free(tuple);

        let bad = CString::new(r#"{"n":2,"r":1,"matrices":[[[0.5,0],[0,1]]]}"#).unwrap();
        assert_eq!(
            strata_tuple_from_json(bad.as_ptr(), &mut tuple),
            StrataStatus::ParseError
        );
    }
}

#[test]
fn group_calls() {
    unsafe {
        let doc = CString::new(r#"{"n":2,"generators":[[[0,-1],[1,0]]]}"#).unwrap();
        let mut group: *mut StrataGroup = ptr::null_mut();
        assert_eq!(strata_group_from_json(doc.as_ptr(), &mut group), StrataStatus::Ok);
        let mut order = 0u64;
        assert_eq!(strata_group_order(group, &mut order), StrataStatus::Ok);
        assert_eq!(order, 4);
        let mut refl = 1u64;
        assert_eq!(
            strata_group_pseudo_reflection_count(group, &mut refl),
            StrataStatus::Ok
        );
        assert_eq!(refl, 0);
        let mut holds = false;
        assert_eq!(strata_group_codim2(group, &mut holds), StrataStatus::Ok);
        assert!(holds);
        strata_group_free(group);

        let table = CString::new(r#"{"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(
            strata_group_regular_from_json(table.as_ptr(), &mut group),
            StrataStatus::Ok
        );
        assert_eq!(strata_group_codim2(group, &mut holds), StrataStatus::Ok);
        assert!(!holds);
        strata_group_free(group);

        let bad = CString::new(r#"{"table":[[0,1],[0,1]]}"#).unwrap();
        assert_eq!(
            strata_group_regular_from_json(bad.as_ptr(), &mut group),
            StrataStatus::DomainError
        );
    }
}

#[test]
fn hm_calls() {
    unsafe {
        let coords = CString::new("1, 0, -2/3").unwrap();
        let weights = [1i64, 1, -1];
        let mut stable = false;
        assert_eq!(
            strata_hm_stable(weights.as_ptr(), 3, coords.as_ptr(), &mut stable),
            StrataStatus::Ok
        );
        assert!(stable);

        let weights2 = [1i64, 1, 1];
        assert_eq!(
            strata_hm_stable(weights2.as_ptr(), 3, coords.as_ptr(), &mut stable),
            StrataStatus::Ok
        );
        assert!(!stable);

        let short = [1i64];
        assert_eq!(
            strata_hm_stable(short.as_ptr(), 1, coords.as_ptr(), &mut stable),
            StrataStatus::DomainError
        );
        let junk = CString::new("a,b,c").unwrap();
        assert_eq!(
            strata_hm_stable(weights.as_ptr(), 3, junk.as_ptr(), &mut stable),
            StrataStatus::ParseError
        );
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(strata_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// The committed header must stay in lockstep with what cbindgen generates
/// from the current source.
#[test]
fn committed_header_matches_generated() {
    let generated = std::fs::read_to_string(env!("STRATA_GENERATED_HEADER")).unwrap();
    let committed = std::fs::read_to_string(
        std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/strata.h"),
    )
    .expect("include/strata.h is committed");
    assert_eq!(committed, generated, "regenerate include/strata.h (cargo build copies it from OUT_DIR)");
}
