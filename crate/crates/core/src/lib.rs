//! Caps in PG(r, 2^k): validation, greedy completion, quantum-cap
//! conditions, and fast completeness checking.
//!
//! Field elements are integers whose bits are the coefficients of their
//! polynomial representative, and points are those integers packed base
//! `2^k`, so the sum of two points is one XOR. The completeness checker
//! marks every point of every secant in a bitmap over raw codes and never
//! normalizes inside the pair loop.

pub mod cap;
pub mod cli;
pub mod completeness;
pub mod error;
pub mod field;
pub mod geometry;
pub mod par;
pub mod quantum;

pub use cap::{greedy_extend, parse_cap, write_cap, Cap, CapFormat, CapViolation};
pub use completeness::{
    check, check_fast, check_naive, check_oracle, check_split, precompute_multiples, Algorithm,
    CompletenessReport, CoverageMap, ScalarTable,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldTable};
pub use geometry::{Geometry, PointCode};
pub use quantum::{verify_quantum_cap, CapMatrix, QuantumVerdict};
