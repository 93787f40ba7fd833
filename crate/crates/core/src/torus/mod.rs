//! Null X-ray transform on the flat torus `𝕋^{n₁,n₂} = ℝ^{n₁+n₂}/ℤ^{n₁+n₂}`
//! acting on trigonometric polynomials.
//!
//! A closed null geodesic `t ↦ x + t(v, w)` has an integer null direction, and
//! its integral over `[0, 1]` keeps exactly the Fourier coefficients whose
//! frequency is orthogonal to `(v, w)`. A conformal change of metric only
//! reparametrizes null geodesics and is not modelled.

mod io;
mod poly;
mod transform;

use thiserror::Error;

use crate::diophantine::{DiophantineError, LatticeFrequency, NullLatticeDirection, Signature};

pub use io::{
    format_directions, format_polynomial, format_transform_data, parse_directions,
    parse_polynomial, parse_rational, parse_transform_data, CoefficientFormat,
};
pub use poly::{exact, exact_ratio, Coefficient, ExactComplex, TrigPolynomial};
pub use transform::{
    annihilated_up_to, first_detecting_direction, kernel_witness, numeric_geodesic_integral,
    recover_coefficients, required_samples, transform, transform_coefficients, transform_data,
    ClosedNullGeodesic, Recovery,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusError {
    #[error("signature mismatch: expected {expected}, found {found}")]
    SignatureMismatch {
        expected: Signature,
        found: Signature,
    },
    #[error("offset has {found} entries, expected {expected}")]
    OffsetLength { expected: usize, found: usize },
    #[error("offset entries must be finite")]
    NonFiniteOffset,
    #[error("{samples} samples given, at least {required} needed")]
    TooFewSamples { samples: usize, required: usize },
    #[error("inconsistent transform data at frequency {freq}")]
    InconsistentData { freq: LatticeFrequency },
    #[error("the null transform is injective for signature {signature}; no kernel exists")]
    Injective { signature: Signature },
    #[error("frequency {freq} is recoverable (witness {witness})")]
    RecoverableFrequency {
        freq: LatticeFrequency,
        witness: NullLatticeDirection,
    },
    #[error("membership of {freq} is undecided within the search bound")]
    Undecided { freq: LatticeFrequency },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Lattice(#[from] DiophantineError),
}
