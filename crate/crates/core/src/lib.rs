//! Finite fields, Dickson pairs, and finite Dickson nearfields.
//!
//! A Dickson pair `(q, n)` twists the product of `F_{q^n}`: with `g` a
//! generator of the multiplicative group and `H = <g^n>`, an element `a` in
//! the coset `g^{[k]_q} H` multiplies as `a o b = a * b^{q^k}`. This crate
//! builds those nearfields from exact tables and checks their structure by
//! brute force: axioms, center, kernel, and the coupling map.

pub mod cayley;
pub mod dickson;
pub mod error;
pub mod field;
pub mod nearfield;
pub mod numtheory;
mod poly;
pub mod verify;

pub use cayley::{cayley_matrix, export_cayley, TableFormat, TableOp};
pub use dickson::{
    apply_coupling, bracket, bracket_lemma, brackets_mod, coset_index, enumerate_pairs,
    validate_pair, BracketLemmaReport, CosetIndexTable, DicksonPair, PairReport, Violation,
};
pub use error::{Error, Result};
pub use field::{
    FieldElement, FieldSpec, FieldTable, GeneratedSubfield, PrimePower, DEFAULT_ORDER_CAP,
};
pub use nearfield::{CenterTheoremReport, DicksonNearfield};
pub use verify::{
    structure_report, verify_axioms, verify_coupling, AxiomReport, CouplingReport, Limits, Mode,
    StructureReport, Verdict, VerifyOptions,
};
