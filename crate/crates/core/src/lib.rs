//! Null X-ray transforms on flat Minkowski tori and restricted-direction
//! X-ray transforms on Euclidean space.
//!
//! * [`diophantine`] decides which torus frequencies can be recovered from
//!   closed null geodesic integrals and produces integer witnesses.
//! * [`torus`] implements the periodic null transform on trigonometric
//!   polynomials: forward transform, coefficient recovery, kernel elements.
//! * [`euclidean`] covers line integrals on `ℝⁿ` with directions restricted
//!   to a set `D`: Fourier-slice checks, normal-bundle tests and explicit
//!   kernel constructions.
//! * [`numerics`] is the shared DFT and quadrature plumbing.

pub mod diophantine;
pub mod euclidean;
pub mod numerics;
pub mod torus;

pub use diophantine::{
    k_membership, LatticeFrequency, Membership, MembershipMethod, MembershipReport,
    NullLatticeDirection, Signature,
};
pub use num_complex::Complex64;
pub use numerics::ComplexArray;
