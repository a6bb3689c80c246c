//! Exact computational tools for the orbit-type stratification of tuples of
//! square matrices under simultaneous conjugation.
//!
//! The crate provides:
//! - representation types (multisets of dimension/multiplicity pairs), their
//!   refinement poset for each total dimension, stratum and stabilizer
//!   dimension formulas, and duality (`reptype`, `poset`);
//! - poset automorphism search and a rigidity check with a replayable
//!   certificate (`aut`);
//! - exact classification of rational matrix tuples: enveloping algebra,
//!   trace-form radical, semisimplicity, isotypic decomposition, the
//!   five n=2/r=2 invariants, and a one-torus stability test (`matrixrep`);
//! - finite rational matrix group utilities: enumeration, pseudo-reflections,
//!   fixed subspaces, the codimension-two test over the subgroup lattice,
//!   invariant bilinear forms, regular representations (`finitegroup`).
//!
//! All arithmetic is exact over Q; nothing here uses floating point.

pub mod aut;
pub mod finitegroup;
pub mod linalg;
pub mod matrixrep;
pub mod poly;
pub mod poset;
pub mod reptype;
