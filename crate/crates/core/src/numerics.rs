//! Shared numeric plumbing: multidimensional DFTs, Gauss-Legendre and
//! unit-sphere quadrature, and seeded random generation for tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("array dimensions {0:?} overflow the addressable size")]
    SizeOverflow(Vec<usize>),
    #[error("array of length {len} does not match dimensions {dims:?}")]
    ShapeMismatch { dims: Vec<usize>, len: usize },
    #[error("every array dimension must be positive, got {0:?}")]
    EmptyDimension(Vec<usize>),
    #[error("sphere quadrature is only available on S^1, S^2 and S^3 (n = 2, 3, 4), got n = {0}")]
    UnsupportedDimension(usize),
    #[error("quadrature order must be at least {min}, got {order}")]
    OrderTooSmall { order: usize, min: usize },
}

/// Row-major n-dimensional array of complex samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexArray {
    dims: Vec<usize>,
    data: Vec<Complex64>,
}

impl ComplexArray {
    pub fn zeros(dims: &[usize]) -> Result<Self, NumericsError> {
        let len = checked_len(dims)?;
        Ok(Self {
            dims: dims.to_vec(),
            data: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    pub fn from_vec(dims: &[usize], data: Vec<Complex64>) -> Result<Self, NumericsError> {
        let len = checked_len(dims)?;
        if len != data.len() {
            return Err(NumericsError::ShapeMismatch {
                dims: dims.to_vec(),
                len: data.len(),
            });
        }
        Ok(Self {
            dims: dims.to_vec(),
            data,
        })
    }

    /// Fills an array by evaluating `f` at every multi-index.
    pub fn from_fn(
        dims: &[usize],
        mut f: impl FnMut(&[usize]) -> Complex64,
    ) -> Result<Self, NumericsError> {
        let mut out = Self::zeros(dims)?;
        let mut index = vec![0usize; dims.len()];
        for slot in out.data.iter_mut() {
            *slot = f(&index);
            increment_index(&mut index, dims);
        }
        Ok(out)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    /// Row-major flat offset of a multi-index (last axis fastest).
    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        index
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Complex64) {
        let offset = self.offset(index);
        self.data[offset] = value;
    }

    /// Multi-index of a flat offset.
    pub fn unravel(&self, mut offset: usize) -> Vec<usize> {
        let mut index = vec![0usize; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            index[axis] = offset % self.dims[axis];
            offset /= self.dims[axis];
        }
        index
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn l2_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Advances a row-major multi-index in place, wrapping to zero at the end.
pub fn increment_index(index: &mut [usize], dims: &[usize]) {
    for axis in (0..dims.len()).rev() {
        index[axis] += 1;
        if index[axis] < dims[axis] {
            return;
        }
        index[axis] = 0;
    }
}

fn checked_len(dims: &[usize]) -> Result<usize, NumericsError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(NumericsError::EmptyDimension(dims.to_vec()));
    }
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&len| len <= isize::MAX as usize / std::mem::size_of::<Complex64>())
        .ok_or_else(|| NumericsError::SizeOverflow(dims.to_vec()))
}

/// Signed frequency index of FFT bin `m` on an axis of length `n`.
pub fn signed_bin(m: usize, n: usize) -> i64 {
    if m < n.div_ceil(2) {
        m as i64
    } else {
        m as i64 - n as i64
    }
}

/// Unitary multidimensional discrete Fourier transform.
///
/// The forward transform uses the kernel `exp(-2πi j·m/N)` along each axis and
/// both directions are scaled by `1/sqrt(N)` per axis, so `dft(dft(a), true)`
/// returns `a` and the l2 norm is preserved.
pub fn dft(a: &ComplexArray, inverse: bool) -> Result<ComplexArray, NumericsError> {
    let mut out = a.clone();
    dft_in_place(&mut out, inverse);
    Ok(out)
}

pub fn dft_in_place(a: &mut ComplexArray, inverse: bool) {
    let dims = a.dims.clone();
    let mut planner = FftPlanner::<f64>::new();
    let mut stride = 1usize;
    for axis in (0..dims.len()).rev() {
        let n = dims[axis];
        let fft = if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        };
        let block = n * stride;
        let scale = 1.0 / (n as f64).sqrt();
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for outer in (0..a.data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = a.data[base + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, value) in line.iter().enumerate() {
                    a.data[base + j * stride] = value * scale;
                }
            }
        }
        stride = block;
    }
}

/// Smallest power of two that is at least `n`.
pub fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

/// Zero-pads every axis up to the next power of two (data stays at the
/// low-index corner).
pub fn pad_to_pow2(a: &ComplexArray) -> Result<ComplexArray, NumericsError> {
    let dims: Vec<usize> = a.dims.iter().map(|&d| next_pow2(d)).collect();
    if dims == a.dims {
        return Ok(a.clone());
    }
    let mut out = ComplexArray::zeros(&dims)?;
    let mut index = vec![0usize; a.ndim()];
    for value in &a.data {
        out.set(&index, *value);
        increment_index(&mut index, &a.dims);
    }
    Ok(out)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, exact for polynomials of
/// degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            derivative = dp;
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        if dp != 0.0 {
            derivative = dp;
        }
        let weight = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.push((x, weight));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Surface area of the unit sphere `S^{n-1} ⊂ ℝⁿ`.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => sphere_area(n - 2) * 2.0 * PI / (n as f64 - 2.0),
    }
}

/// A weighted node on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereNode {
    pub point: Vec<f64>,
    pub weight: f64,
}

/// Product quadrature on `S^{n-1}` for `n ∈ {2, 3, 4}`.
///
/// * `n = 2`: `order` equally spaced angles with weight `2π/order`.
/// * `n = 3`: Gauss-Legendre in `cos θ` times `2·order` uniform azimuths.
/// * `n = 4`: Hopf coordinates; with `u = sin²η` the measure is
///   `½ du dξ₁ dξ₂`, so Gauss-Legendre in `u` times two uniform angle rules.
///
/// Any `order ≥ 2` integrates polynomials of degree ≤ 2 exactly.
pub fn sphere_quadrature(n: usize, order: usize) -> Result<Vec<SphereNode>, NumericsError> {
    if !(2..=4).contains(&n) {
        return Err(NumericsError::UnsupportedDimension(n));
    }
    let min = if n == 2 { 3 } else { 2 };
    if order < min {
        return Err(NumericsError::OrderTooSmall { order, min });
    }
    let uniform = |count: usize| -> Vec<f64> {
        (0..count)
            .map(|j| 2.0 * PI * j as f64 / count as f64)
            .collect()
    };
    let nodes = match n {
        2 => uniform(order)
            .into_iter()
            .map(|phi| SphereNode {
                point: vec![phi.cos(), phi.sin()],
                weight: 2.0 * PI / order as f64,
            })
            .collect(),
        3 => {
            let azimuths = uniform(2 * order);
            let dphi = 2.0 * PI / azimuths.len() as f64;
            let mut nodes = Vec::with_capacity(order * azimuths.len());
            for (z, w) in gauss_legendre(order) {
                let rho = (1.0 - z * z).sqrt();
                for &phi in &azimuths {
                    nodes.push(SphereNode {
                        point: vec![rho * phi.cos(), rho * phi.sin(), z],
                        weight: w * dphi,
                    });
                }
            }
            nodes
        }
        _ => {
            let angles = uniform(2 * order);
            let dphi = 2.0 * PI / angles.len() as f64;
            let mut nodes = Vec::with_capacity(order * angles.len() * angles.len());
            for (x, w) in gauss_legendre(order) {
                // u = sin²η on [0, 1]
                let u = 0.5 * (x + 1.0);
                let (s, c) = (u.sqrt(), (1.0 - u).sqrt());
                let weight = 0.5 * 0.5 * w * dphi * dphi;
                for &xi1 in &angles {
                    for &xi2 in &angles {
                        nodes.push(SphereNode {
                            point: vec![c * xi1.cos(), c * xi1.sin(), s * xi2.cos(), s * xi2.sin()],
                            weight,
                        });
                    }
                }
            }
            nodes
        }
    };
    Ok(nodes)
}

/// Deterministic generator used by property checks and example data.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly distributed unit vector in `ℝⁿ`.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
