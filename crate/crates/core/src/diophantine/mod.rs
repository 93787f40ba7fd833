//! Membership in the recoverable frequency set
//!
//! ```text
//! K = {(k, p) ∈ ℤ^{n₁} × ℤ^{n₂} : ∃ (v, w) ≠ 0 integer, |v|² = |w|², v·k + w·p = 0}
//! ```
//!
//! with explicit integer witnesses: sums-of-squares tests, Pythagorean
//! parametrizations for the low-dimensional lemmas, the `(a, −b, b, −a)`
//! construction when both factors have dimension at least two, and a bounded
//! brute-force search as an independent oracle.

mod lattice;
mod membership;
mod scan;
mod search;
mod solve;
mod squares;

use thiserror::Error;

pub use lattice::{
    dot_i64, exact_sqrt, gcd_all, isqrt, norm_sqr, LatticeFrequency, NullLatticeDirection,
    Signature, VecDisplay,
};
pub use membership::{
    k_membership, k_membership_with, Membership, MembershipConfig, MembershipMethod,
    MembershipReport,
};
pub use scan::{conjecture_scan, squares_predicate, ScanOutcome, ScanReport};
pub use search::{
    brute_force_null_orthogonal, enumerate_null_directions, shared_table, NullDirectionTable,
    DEFAULT_SEARCH_BOUND,
};
pub use solve::{
    solve_system_2d, solve_system_3d, witness_direction_2x2, CertificateKind, Solution,
    SolverCertificate,
};
pub use squares::{
    factorize, is_sum_of_squares, is_sum_of_three_squares, is_sum_of_two_squares,
    sum_of_three_squares, sum_of_two_squares,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("signature ({n1},{n2}) needs both factors of positive dimension")]
    InvalidSignature { n1: usize, n2: usize },
    #[error("signature {signature} expects vectors of lengths {n1} and {n2}, got {first} and {second}", n1 = signature.n1, n2 = signature.n2)]
    LengthMismatch {
        signature: Signature,
        first: usize,
        second: usize,
    },
    #[error("direction {coords:?} is not null")]
    NotNull { coords: Vec<i64> },
    #[error("null direction must be nonzero")]
    ZeroDirection,
    #[error("bounds must be at least 1")]
    InvalidBound,
    #[error(
        "the scan needs at least four space dimensions (closed forms cover n1 <= 3), got n1 = {0}"
    )]
    ScanDimension(usize),
}
