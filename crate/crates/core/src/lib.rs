//! Exact computations on finite-dimensional nilpotent Leibniz algebras over
//! the Gaussian rationals.

pub mod algebra;
pub mod catalog;
pub mod criterion;
pub mod error;
pub mod grading;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod structure;
pub mod subspace;
pub mod suite;

pub use algebra::{Algebra, DefectWitness, Element, LeibnizDefect, LieCheck, LieWitness};
pub use catalog::{build_family, canonical_max_length_grading, list_families, Family, FamilySpec};
pub use criterion::{lie_criterion_check, CriterionMode, CriterionReport};
pub use error::{Error, Result};
pub use grading::{
    associated_graded, max_length_search, universal_grading_lattice, verify_grading,
    GradingAssignment, GradingReport, WeightLattice,
};
pub use invariants::{
    characteristic_sequence, fingerprint, jordan_type_at, natural_gradedness_report, CharSequence,
    InvariantFingerprint, SamplingConfig,
};
pub use linalg::{IntMatrix, Matrix};
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use suite::{run_verification_suite, Suite, SuiteConfig, SuiteReport};
