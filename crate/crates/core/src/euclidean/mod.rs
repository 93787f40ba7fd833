//! X-ray transform on `ℝⁿ` restricted to a direction set `D ⊂ S^{n−1}`.
//!
//! Fields are Gaussian mixtures (closed-form line integrals and Fourier
//! transforms) or complex grids. The transform over `D` determines `ℱf` on
//! `⋃_{v∈D} v^⊥`, so injectivity is governed by the normal bundle
//! `N(D) = {x : x·v = 0 for some v ∈ D}`; the kernel constructions here
//! produce fields whose Fourier transform avoids `N(D)`.
//!
//! The Fourier transform is `ℱf(ξ) = ∫ f(x) e^{−2πi x·ξ} dx`.

mod field;
mod fourier;
mod geometry;
mod io;
mod kernel;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use field::{
    line_integral, line_integral_with, restricted_transform, GaussianMixture, GaussianTerm,
    GridField, GridSpec, Interpolation, LineQuadrature, ScalarField, DIRECTION_TOLERANCE,
};
pub use fourier::{
    fourier_slice_check, fourier_transform, inverse_fourier_transform, lattice_direction,
    orthonormal_complement, SliceMethod, SliceOptions, SliceReport, BOUNDARY_DECAY,
};
pub use geometry::{
    arc_interior_normal_point, normal_bundle_contains, sphere_moment_check, ArcCertificate,
    DirectionSet, GreatArc, Line, UNIT_TOLERANCE,
};
pub use io::{
    format_direction_set, format_lines, parse_direction_set, parse_lines, read_grid, write_grid,
};
pub use kernel::{
    finite_kernel_witness, max_line_integral, normalized, random_null_direction, relative_integral,
    timelike_cone_witness, ConeWitness, ConeWitnessParams, SmoothBump, CONE_MARGIN_BINS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EuclideanError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("non-finite input")]
    NonFinite,
    #[error("grid spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("every grid axis needs at least 2 nodes, got {0:?}")]
    GridTooSmall(Vec<usize>),
    #[error("grid of shape {grid:?} cannot hold values of shape {values:?}")]
    ShapeMismatch {
        grid: Vec<usize>,
        values: Vec<usize>,
    },
    #[error("widths must be positive, got {0}")]
    InvalidWidth(f64),
    #[error("quadrature step fraction must lie in (0, 1/2], got {0}")]
    InvalidStep(f64),
    #[error("arc endpoints must be distinct and not antipodal")]
    DegenerateArc,
    #[error("direction set is empty")]
    EmptyDirectionSet,
    #[error("a finite direction set is required")]
    NotFinite,
    #[error("no lines given")]
    EmptyLines,
    #[error("line direction {0:?} is not in the direction set")]
    DirectionNotInSet(Vec<f64>),
    #[error("field is {ratio:e} of its maximum on the grid boundary (limit {limit:e})")]
    BoundaryDecay { ratio: f64, limit: f64 },
    #[error("bump needs padding {required} but only {available} is available")]
    InsufficientPadding { required: f64, available: f64 },
    #[error("the timelike cone witness needs dimension at least 3, got {0}")]
    ConeDimension(usize),
    #[error("frequency bump is {margin} bins from the cone boundary (or the Nyquist limit)")]
    BumpOutsideCone { margin: f64 },
    #[error("witness is identically zero")]
    TrivialWitness,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl From<std::io::Error> for EuclideanError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
