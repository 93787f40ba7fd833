use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::field::{GridField, GridSpec, LineQuadrature};
use super::fourier::{fourier_transform, inverse_fourier_transform, orthonormal_complement};
use super::geometry::{DirectionSet, Line};
use super::EuclideanError;
use crate::numerics::{dot, increment_index, norm, random_unit_vector, signed_bin, ComplexArray};

/// `exp(1 − 1/(1 − |x − c|²/r²))` inside the ball of radius `r`, zero
/// outside; peak value 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothBump {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl SmoothBump {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self, EuclideanError> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(EuclideanError::InvalidWidth(radius));
        }
        if center.iter().any(|x| !x.is_finite()) {
            return Err(EuclideanError::NonFinite);
        }
        Ok(Self { center, radius })
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let s: f64 = x
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / (self.radius * self.radius);
        if s < 1.0 {
            (1.0 - 1.0 / (1.0 - s)).exp()
        } else {
            0.0
        }
    }
}

/// Relative size of a line integral: `|R| / (‖f‖∞ · width)`.
pub fn relative_integral(value: Complex64, sup: f64, width: f64) -> f64 {
    if sup == 0.0 || width == 0.0 {
        return f64::INFINITY;
    }
    value.norm() / (sup * width)
}

/// `f = f₁ * ⋯ * f_M` with `f_m = v_m·∇φ`, computed spectrally:
/// `ℱf = Π_m 2πi (v_m·ξ) ℱφ`. Every line integral of `f` along some `v_m`
/// vanishes.
///
/// The bump must keep a distance of at least `M·2r` from the grid boundary,
/// and the support `M·supp φ` of the result must lie inside the grid.
pub fn finite_kernel_witness(
    set: &DirectionSet,
    bump: &SmoothBump,
    grid: &GridSpec,
) -> Result<GridField, EuclideanError> {
    let DirectionSet::Finite(directions) = set else {
        return Err(EuclideanError::NotFinite);
    };
    let m = directions.len();
    let dim = grid.ndim();
    if set.dim() != dim || bump.center.len() != dim {
        return Err(EuclideanError::DimensionMismatch {
            expected: dim,
            found: if set.dim() != dim {
                set.dim()
            } else {
                bump.center.len()
            },
        });
    }
    let required = m as f64 * 2.0 * bump.radius;
    let upper = grid.upper();
    let mut available = f64::INFINITY;
    for ((&lo, &hi), &c) in grid.origin().iter().zip(&upper).zip(&bump.center) {
        available = available
            .min(c - bump.radius - lo)
            .min(hi - c - bump.radius);
        let (sum_lo, sum_hi) = (m as f64 * (c - bump.radius), m as f64 * (c + bump.radius));
        if sum_lo < lo || sum_hi > hi {
            available = available.min((sum_lo - lo).min(hi - sum_hi));
        }
    }
    if available < required {
        return Err(EuclideanError::InsufficientPadding {
            required,
            available,
        });
    }

    let phi = GridField::from_fn(grid.clone(), |x| Complex64::new(bump.value(x), 0.0))?;
    let mut spectrum = fourier_transform(&phi)?;
    let dims = grid.dims().to_vec();
    let mut index = vec![0usize; dim];
    let base = spectrum.clone();
    for (value, phi_hat) in spectrum.data_mut().iter_mut().zip(base.data()) {
        let nyquist = index
            .iter()
            .zip(&dims)
            .any(|(&i, &d)| d % 2 == 0 && i == d / 2);
        if nyquist {
            *value = Complex64::new(0.0, 0.0);
        } else {
            let xi: Vec<f64> = (0..dim).map(|a| grid.frequency(a, index[a])).collect();
            let mut product = Complex64::new(1.0, 0.0);
            for v in directions {
                product *= Complex64::new(0.0, 2.0 * PI * dot(v, &xi)) * phi_hat;
            }
            *value = product;
        }
        increment_index(&mut index, &dims);
    }
    inverse_fourier_transform(grid, &spectrum)
}

/// Largest `|R_v f|` over lines in direction `v` through `center + s`,
/// `s` ranging over a regular grid of `per_axis` offsets per axis of
/// `v^⊥` within `[−half_width, half_width]`.
pub fn max_line_integral(
    field: &GridField,
    v: &[f64],
    center: &[f64],
    half_width: f64,
    per_axis: usize,
    quadrature: LineQuadrature,
) -> Result<f64, EuclideanError> {
    let basis = orthonormal_complement(v);
    let k = per_axis.max(2);
    let sides = vec![k; basis.len()];
    let mut index = vec![0usize; basis.len()];
    let mut lines = Vec::new();
    for _ in 0..k.pow(basis.len() as u32) {
        let point: Vec<f64> = (0..v.len())
            .map(|ax| {
                center[ax]
                    + index
                        .iter()
                        .zip(&basis)
                        .map(|(&i, b)| {
                            (-half_width + 2.0 * half_width * i as f64 / (k - 1) as f64) * b[ax]
                        })
                        .sum::<f64>()
            })
            .collect();
        lines.push(Line::new(point, v.to_vec())?);
        increment_index(&mut index, &sides);
    }
    Ok(lines
        .par_iter()
        .map(|l| field.line_integral_with(l, quadrature).norm())
        .reduce(|| 0.0, f64::max))
}

/// Parameters of the frequency-space bump for [`timelike_cone_witness`],
/// in units of FFT bins.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeWitnessParams {
    /// Total dimension `n = 1 + n₂`, at least 3.
    pub dim: usize,
    /// Nodes per axis.
    pub size: usize,
    pub spacing: f64,
    /// The bump is centred at `(center, 0, …, 0)`.
    pub center: f64,
    /// Truncation radius.
    pub radius: f64,
    /// Gaussian standard deviation.
    pub sigma: f64,
    pub amplitude: f64,
}

impl ConeWitnessParams {
    pub fn new(dim: usize, size: usize) -> Self {
        Self {
            dim,
            size,
            spacing: 1.0 / size as f64,
            center: 32.0 * size as f64 / 128.0,
            radius: 20.0 * size as f64 / 128.0,
            sigma: 3.0 * size as f64 / 128.0,
            amplitude: 1.0,
        }
    }
}

/// Minimum distance, in bins, between the bump and the cone boundary.
pub const CONE_MARGIN_BINS: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct ConeWitness {
    pub field: GridField,
    /// Smallest distance in bins from an occupied frequency to the cone
    /// boundary `ξ₁ = |ξ'|`.
    pub margin: f64,
    pub occupied_bins: usize,
}

/// A band-limited field whose Fourier transform is a truncated Gaussian
/// inside the timelike cone `{ξ₁² > ξ₂² + ⋯ + ξₙ²}`. Its integrals along
/// null lines vanish; the field is centred in the grid.
pub fn timelike_cone_witness(params: &ConeWitnessParams) -> Result<ConeWitness, EuclideanError> {
    let n = params.dim;
    if n < 3 {
        return Err(EuclideanError::ConeDimension(n));
    }
    if params.amplitude == 0.0 || !params.amplitude.is_finite() {
        return Err(EuclideanError::TrivialWitness);
    }
    if !(params.sigma > 0.0 && params.radius > 0.0) {
        return Err(EuclideanError::InvalidWidth(
            params.sigma.min(params.radius),
        ));
    }
    let size = params.size;
    let half = size as f64 * params.spacing / 2.0;
    let spec = GridSpec::new(vec![-half; n], params.spacing, vec![size; n])?;
    if params.center + params.radius >= (size / 2) as f64 {
        return Err(EuclideanError::BumpOutsideCone {
            margin: (size / 2) as f64 - params.center - params.radius,
        });
    }

    let dims = vec![size; n];
    let mut spectrum = ComplexArray::zeros(&dims)?;
    let mut index = vec![0usize; n];
    let mut margin = f64::INFINITY;
    let mut occupied = 0usize;
    let scale = size as f64 * params.spacing;
    for value in spectrum.data_mut() {
        let m: Vec<f64> = index.iter().map(|&i| signed_bin(i, size) as f64).collect();
        let d2 = (m[0] - params.center).powi(2) + m[1..].iter().map(|x| x * x).sum::<f64>();
        if d2 < params.radius * params.radius {
            let amp = params.amplitude * (-d2 / (2.0 * params.sigma * params.sigma)).exp();
            if amp != 0.0 {
                let rest = m[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
                margin = margin.min((m[0] - rest) / SQRT_2);
                occupied += 1;
                // physical spectrum with unit cell volume in frequency
                *value = Complex64::new(amp * scale.powi(n as i32), 0.0);
            }
        }
        increment_index(&mut index, &dims);
    }
    if occupied == 0 {
        return Err(EuclideanError::TrivialWitness);
    }
    if margin < CONE_MARGIN_BINS {
        return Err(EuclideanError::BumpOutsideCone { margin });
    }
    let field = inverse_fourier_transform(&spec, &spectrum)?;
    Ok(ConeWitness {
        field,
        margin,
        occupied_bins: occupied,
    })
}

/// Random unit null direction `(1, u)/√2` of signature `(1, n − 1)`.
pub fn random_null_direction<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let u = random_unit_vector(rng, n - 1);
    std::iter::once(1.0).chain(u).map(|x| x / SQRT_2).collect()
}

/// Unit vector parallel to `v`.
pub fn normalized(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}
