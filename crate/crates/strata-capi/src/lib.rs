//! C ABI over the strata library. Handles are opaque pointers owned by the
//! caller and released through the matching `_free` function; every string
//! returned through an out-pointer is heap-allocated and must be released
//! with `strata_string_free`. All entry points catch panics and report them
//! as a status code instead of unwinding across the boundary.

// The pointer contract above applies uniformly to every entry point.
#![allow(clippy::missing_safety_doc)]

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use strata_core::aut::{verify_rigidity, RigidityOutcome};
use strata_core::finitegroup::{
    codim2_property, enumerate_group, group_from_json_str, pseudo_reflections, regular_rep,
    table_from_json_str, FiniteMatrixGroup, GroupError, DEFAULT_GROUP_BOUND,
    DEFAULT_SUBGROUP_BOUND,
};
use strata_core::linalg::{q_from_str, q_to_string, Q};
use strata_core::matrixrep::{
    hm_torus_stable, is_semisimple, n2r2_invariants, representation_type, ClassifyError,
    MatrixTuple, TupleError,
};
use strata_core::poset::RtPoset;
use strata_core::reptype::{QuotientContext, RepType};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrataStatus {
    /// Success; out-parameters are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Text or JSON input failed to parse.
    ParseError = 2,
    /// Structurally valid input rejected by the operation.
    DomainError = 3,
    /// Classification halted: a simple factor has a non-rational center.
    NotSplit = 4,
    /// An internal invariant failed; the operation was aborted safely.
    Panic = 5,
}

/// Enumerated refinement poset of all types of one total dimension.
pub struct StrataPoset(RtPoset);

/// A tuple of exact rational square matrices.
pub struct StrataTuple(MatrixTuple);

/// An explicitly enumerated finite rational matrix group.
pub struct StrataGroup(FiniteMatrixGroup);

fn guard(f: impl FnOnce() -> StrataStatus) -> StrataStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(StrataStatus::Panic)
}

unsafe fn text_in<'a>(p: *const c_char) -> Result<&'a str, StrataStatus> {
    if p.is_null() {
        return Err(StrataStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| StrataStatus::ParseError)
}

fn string_out(s: String, out: *mut *mut c_char) -> StrataStatus {
    let c = CString::new(s).expect("library output never contains NUL");
    unsafe { *out = c.into_raw() };
    StrataStatus::Ok
}

fn parse_type(s: &str) -> Result<RepType, StrataStatus> {
    s.parse().map_err(|_| StrataStatus::ParseError)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn strata_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string produced by any other call.
#[no_mangle]
pub unsafe extern "C" fn strata_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the refinement poset for total dimension `n`.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_new(n: u32, out: *mut *mut StrataPoset) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        match RtPoset::new(n) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(StrataPoset(p)));
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn strata_poset_free(p: *mut StrataPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of types in the poset.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_len(
    p: *const StrataPoset,
    out: *mut usize,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = (*p).0.len();
        StrataStatus::Ok
    })
}

/// Canonical text label of the type at a listing index.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_element(
    p: *const StrataPoset,
    index: usize,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        let poset = &(*p).0;
        match poset.elements().get(index) {
            Some(t) => string_out(t.to_string(), out),
            None => StrataStatus::DomainError,
        }
    })
}

/// Whether `fine` lies below or equal to `coarse` in the refinement order.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_leq(
    p: *const StrataPoset,
    fine: *const c_char,
    coarse: *const c_char,
    out: *mut bool,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        let fine = match text_in(fine).and_then(parse_type) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let coarse = match text_in(coarse).and_then(parse_type) {
            Ok(t) => t,
            Err(st) => return st,
        };
        match (*p).0.leq(&fine, &coarse) {
            Ok(b) => {
                *out = b;
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

/// Cover diagram in DOT syntax.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_dot(
    p: *const StrataPoset,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        string_out((*p).0.to_dot(), out)
    })
}

/// Elements, covers, and reachability as a JSON document.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_json(
    p: *const StrataPoset,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        string_out((*p).0.to_json(), out)
    })
}

/// Certify that fixing every type with a (1,1) pair forces the identity
/// automorphism. True on success, false with a concrete violating
/// automorphism otherwise; DomainError when the search was inconclusive.
#[no_mangle]
pub unsafe extern "C" fn strata_poset_rigidity(
    p: *const StrataPoset,
    out: *mut bool,
) -> StrataStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        match verify_rigidity(&(*p).0) {
            Ok(RigidityOutcome::Rigid { .. }) => {
                *out = true;
                StrataStatus::Ok
            }
            Ok(RigidityOutcome::Violated { .. }) => {
                *out = false;
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

/// Dual type: swap dimension and multiplicity in every pair.
#[no_mangle]
pub unsafe extern "C" fn strata_type_dual(
    type_text: *const c_char,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        match text_in(type_text).and_then(parse_type) {
            Ok(t) => string_out(t.dual().to_string(), out),
            Err(st) => st,
        }
    })
}

/// Stratum dimension of a type inside the l-shifted quotient of r-tuples
/// of matrices of the type's total dimension. Requires r >= 2.
#[no_mangle]
pub unsafe extern "C" fn strata_type_stratum_dim(
    type_text: *const c_char,
    l: u32,
    r: u32,
    out: *mut u64,
) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        let t = match text_in(type_text).and_then(parse_type) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let ctx = QuotientContext::new(l, t.total_dim() as u32, r);
        match t.stratum_dim(&ctx) {
            Ok(d) => {
                *out = d;
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

fn tuple_status(e: TupleError) -> StrataStatus {
    match e {
        TupleError::WrongShape { .. } | TupleError::NotInvertible => StrataStatus::DomainError,
        _ => StrataStatus::ParseError,
    }
}

/// Parse a tuple document {"n":..,"r":..,"matrices":[..]} with integer or
/// "p/q" string entries.
#[no_mangle]
pub unsafe extern "C" fn strata_tuple_from_json(
    json: *const c_char,
    out: *mut *mut StrataTuple,
) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        let text = match text_in(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match MatrixTuple::from_json_str(text) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(StrataTuple(t)));
                StrataStatus::Ok
            }
            Err(e) => tuple_status(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn strata_tuple_free(t: *mut StrataTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

#[no_mangle]
pub unsafe extern "C" fn strata_tuple_n(t: *const StrataTuple, out: *mut usize) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = (*t).0.n();
        StrataStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn strata_tuple_r(t: *const StrataTuple, out: *mut usize) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = (*t).0.r();
        StrataStatus::Ok
    })
}

/// Representation type of the tuple's semisimplification, as text.
#[no_mangle]
pub unsafe extern "C" fn strata_tuple_classify(
    t: *const StrataTuple,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        match representation_type(&(*t).0) {
            Ok(c) => string_out(c.rep_type.to_string(), out),
            Err(ClassifyError::NotSplitOverRationals { .. }) => StrataStatus::NotSplit,
        }
    })
}

/// Full classification report as JSON: type, algebra and radical dimension,
/// filtration layer dimensions, and per-block (dim, mult, field_degree).
#[no_mangle]
pub unsafe extern "C" fn strata_tuple_classify_json(
    t: *const StrataTuple,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        match representation_type(&(*t).0) {
            Ok(c) => {
                let blocks: Vec<serde_json::Value> = c
                    .decomposition
                    .blocks
                    .iter()
                    .map(|b| {
                        serde_json::json!({
                            "dim": b.dim,
                            "mult": b.mult,
                            "field_degree": b.field_degree,
                        })
                    })
                    .collect();
                let doc = serde_json::json!({
                    "type": c.rep_type.to_string(),
                    "algebra_dim": c.algebra_dim,
                    "radical_dim": c.radical_dim,
                    "layer_dims": c.layer_dims,
                    "blocks": blocks,
                });
                string_out(doc.to_string(), out)
            }
            Err(ClassifyError::NotSplitOverRationals { .. }) => StrataStatus::NotSplit,
        }
    })
}

/// Whether the tuple generates a semisimple algebra (closed orbit).
#[no_mangle]
pub unsafe extern "C" fn strata_tuple_is_semisimple(
    t: *const StrataTuple,
    out: *mut bool,
) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = is_semisimple(&(*t).0);
        StrataStatus::Ok
    })
}

/// The five invariant coordinates of a pair of 2x2 matrices, as one
/// space-separated string of exact rationals.
#[no_mangle]
pub unsafe extern "C" fn strata_tuple_invariants2x2(
    t: *const StrataTuple,
    out: *mut *mut c_char,
) -> StrataStatus {
    guard(|| {
        if t.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        match n2r2_invariants(&(*t).0) {
            Ok(vals) => {
                let text = vals.iter().map(q_to_string).collect::<Vec<_>>().join(" ");
                string_out(text, out)
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

fn group_status(e: GroupError) -> StrataStatus {
    match e {
        GroupError::NonInvertibleGenerator { .. }
        | GroupError::BoundExceeded { .. }
        | GroupError::InvalidTable(_) => StrataStatus::DomainError,
        _ => StrataStatus::ParseError,
    }
}

/// Enumerate the group generated by {"n":..,"generators":[..]}.
#[no_mangle]
pub unsafe extern "C" fn strata_group_from_json(
    json: *const c_char,
    out: *mut *mut StrataGroup,
) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        let text = match text_in(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let gens = match group_from_json_str(text) {
            Ok(g) => g,
            Err(e) => return group_status(e),
        };
        match enumerate_group(&gens, DEFAULT_GROUP_BOUND) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(StrataGroup(g)));
                StrataStatus::Ok
            }
            Err(e) => group_status(e),
        }
    })
}

/// Left regular representation of a multiplication table {"table":[..]}.
#[no_mangle]
pub unsafe extern "C" fn strata_group_regular_from_json(
    json: *const c_char,
    out: *mut *mut StrataGroup,
) -> StrataStatus {
    guard(|| {
        if out.is_null() {
            return StrataStatus::NullPointer;
        }
        let text = match text_in(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let table = match table_from_json_str(text) {
            Ok(t) => t,
            Err(e) => return group_status(e),
        };
        match regular_rep(&table) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(StrataGroup(g)));
                StrataStatus::Ok
            }
            Err(e) => group_status(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn strata_group_free(g: *mut StrataGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn strata_group_order(
    g: *const StrataGroup,
    out: *mut u64,
) -> StrataStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = (*g).0.order() as u64;
        StrataStatus::Ok
    })
}

/// Number of elements fixing a hyperplane pointwise.
#[no_mangle]
pub unsafe extern "C" fn strata_group_pseudo_reflection_count(
    g: *const StrataGroup,
    out: *mut u64,
) -> StrataStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        *out = pseudo_reflections(&(*g).0).len() as u64;
        StrataStatus::Ok
    })
}

/// Whether fixed-space dimensions never drop by exactly one across a normal
/// inclusion of subgroups.
#[no_mangle]
pub unsafe extern "C" fn strata_group_codim2(
    g: *const StrataGroup,
    out: *mut bool,
) -> StrataStatus {
    guard(|| {
        if g.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        match codim2_property(&(*g).0, DEFAULT_SUBGROUP_BOUND) {
            Ok(rep) => {
                *out = rep.holds;
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}

/// One-torus stability: `weights` holds `len` integers and `coords` holds
/// `len` comma-separated rationals.
#[no_mangle]
pub unsafe extern "C" fn strata_hm_stable(
    weights: *const i64,
    len: usize,
    coords: *const c_char,
    out: *mut bool,
) -> StrataStatus {
    guard(|| {
        if weights.is_null() || out.is_null() {
            return StrataStatus::NullPointer;
        }
        let text = match text_in(coords) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let coords: Option<Vec<Q>> = text.split(',').map(|s| q_from_str(s.trim())).collect();
        let coords = match coords {
            Some(c) => c,
            None => return StrataStatus::ParseError,
        };
        let weights = std::slice::from_raw_parts(weights, len);
        match hm_torus_stable(weights, &coords) {
            Ok(b) => {
                *out = b;
                StrataStatus::Ok
            }
            Err(_) => StrataStatus::DomainError,
        }
    })
}
