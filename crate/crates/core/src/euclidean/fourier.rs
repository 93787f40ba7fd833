use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use super::field::{GridField, GridSpec, LineQuadrature};
use super::geometry::Line;
use super::EuclideanError;
use crate::numerics::{dft, dot, increment_index, norm, signed_bin, ComplexArray};

/// Largest `|f|` allowed on the grid boundary, relative to `‖f‖∞`.
pub const BOUNDARY_DECAY: f64 = 1e-9;

/// Samples of `ℱf(ξ) = ∫ f(x) e^{−2πi x·ξ} dx` at the FFT frequencies
/// `ξ_m = m/(N h)`, by the rectangle rule on the grid.
pub fn fourier_transform(field: &GridField) -> Result<ComplexArray, EuclideanError> {
    let spec = field.spec();
    let mut out = dft(field.values(), false)?;
    let scale = spec.spacing().powi(spec.ndim() as i32) * (spec.len() as f64).sqrt();
    let dims = spec.dims().to_vec();
    let mut index = vec![0usize; dims.len()];
    for value in out.data_mut() {
        let shift: f64 = (0..dims.len())
            .map(|a| spec.origin()[a] * spec.frequency(a, index[a]))
            .sum();
        *value *= scale * Complex64::from_polar(1.0, -2.0 * PI * shift);
        increment_index(&mut index, &dims);
    }
    Ok(out)
}

/// Inverse of [`fourier_transform`]: grid samples of the band-limited
/// function with the given spectrum samples.
pub fn inverse_fourier_transform(
    spec: &GridSpec,
    spectrum: &ComplexArray,
) -> Result<GridField, EuclideanError> {
    let dims = spec.dims().to_vec();
    let mut scaled = spectrum.clone();
    let scale = 1.0 / (spec.spacing().powi(spec.ndim() as i32) * (spec.len() as f64).sqrt());
    let mut index = vec![0usize; dims.len()];
    for value in scaled.data_mut() {
        let shift: f64 = (0..dims.len())
            .map(|a| spec.origin()[a] * spec.frequency(a, index[a]))
            .sum();
        *value *= scale * Complex64::from_polar(1.0, 2.0 * PI * shift);
        increment_index(&mut index, &dims);
    }
    GridField::new(spec.clone(), dft(&scaled, true)?)
}

/// How the projection side of the slice check was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceMethod {
    /// `v` is parallel to an integer vector: line integrals are node sums
    /// along lattice lines and `ℱf` is read from the FFT.
    Lattice,
    /// General `v`: interpolated line integrals on a grid of offsets in
    /// `v^⊥`, compared against direct sums for `ℱf`.
    Interpolated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceReport {
    pub method: SliceMethod,
    /// Frequencies `η ∈ v^⊥` compared.
    pub samples: usize,
    /// `max |ℱ_{v^⊥}(R_v f)(η) − ℱf(η)|`.
    pub max_deviation: f64,
    /// `max |ℱf(η)|` over the same samples.
    pub max_reference: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceOptions {
    /// Upper bound on the number of compared frequencies (lowest first).
    pub max_samples: usize,
    /// Largest entry of the primitive integer vector accepted as a lattice
    /// direction.
    pub lattice_limit: i64,
    pub quadrature: LineQuadrature,
}

impl Default for SliceOptions {
    fn default() -> Self {
        Self {
            max_samples: 1024,
            lattice_limit: 16,
            quadrature: LineQuadrature::spline(),
        }
    }
}

/// Primitive integer vector parallel to `v`, if one with entries bounded by
/// `limit` exists.
pub fn lattice_direction(v: &[f64], limit: i64) -> Option<Vec<i64>> {
    let top = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return None;
    }
    for q in 1..=limit {
        let scaled: Vec<f64> = v.iter().map(|x| x / top * q as f64).collect();
        if scaled.iter().all(|x| (x - x.round()).abs() < 1e-9) {
            let ints: Vec<i64> = scaled.iter().map(|x| x.round() as i64).collect();
            let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
            return Some(ints.into_iter().map(|x| x / g).collect());
        }
    }
    None
}

fn check_decay(field: &GridField) -> Result<(), EuclideanError> {
    let max = field.max_abs();
    let edge = field.boundary_max();
    if max == 0.0 {
        return Ok(());
    }
    if edge > BOUNDARY_DECAY * max {
        return Err(EuclideanError::BoundaryDecay {
            ratio: edge / max,
            limit: BOUNDARY_DECAY,
        });
    }
    Ok(())
}

/// Compares the Fourier transform over `v^⊥` of `x ↦ R_v f(x)` with `ℱf`
/// restricted to `v^⊥`.
pub fn fourier_slice_check(
    field: &GridField,
    v: &[f64],
    options: &SliceOptions,
) -> Result<SliceReport, EuclideanError> {
    let spec = field.spec();
    if v.len() != spec.ndim() {
        return Err(EuclideanError::DimensionMismatch {
            expected: spec.ndim(),
            found: v.len(),
        });
    }
    let direction = Line::new(vec![0.0; v.len()], v.to_vec())?
        .direction()
        .to_vec();
    check_decay(field)?;
    let uniform = spec.dims().iter().all(|&d| d == spec.dims()[0]);
    match lattice_direction(&direction, options.lattice_limit) {
        Some(a) if uniform => lattice_slice(field, &a, options),
        _ => interpolated_slice(field, &direction, options),
    }
}

fn lattice_slice(
    field: &GridField,
    a: &[i64],
    options: &SliceOptions,
) -> Result<SliceReport, EuclideanError> {
    let spec = field.spec();
    let n = spec.dims()[0];
    let dim = spec.ndim();
    let h = spec.spacing();
    let a_len = a.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
    let unit: Vec<f64> = a.iter().map(|&x| x as f64 / a_len).collect();

    // group nodes into lattice lines: each line starts at the node whose
    // predecessor (index − a) leaves the grid
    let dims = spec.dims().to_vec();
    let values = field.values();
    let mut lines: Vec<(Vec<f64>, Complex64)> = Vec::new();
    let mut index = vec![0usize; dim];
    for _ in 0..spec.len() {
        let starts = index.iter().zip(a).zip(&dims).any(|((&i, &ai), &d)| {
            let prev = i as i64 - ai;
            prev < 0 || prev >= d as i64
        });
        if starts {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut cur: Vec<i64> = index.iter().map(|&i| i as i64).collect();
            while cur.iter().zip(&dims).all(|(&c, &d)| c >= 0 && c < d as i64) {
                let idx: Vec<usize> = cur.iter().map(|&c| c as usize).collect();
                sum += values.get(&idx);
                cur.iter_mut().zip(a).for_each(|(c, &ai)| *c += ai);
            }
            let x = spec.node(&index);
            let along = dot(&x, &unit);
            let foot: Vec<f64> = x.iter().zip(&unit).map(|(xi, u)| xi - along * u).collect();
            lines.push((foot, sum * h * a_len));
        }
        increment_index(&mut index, &dims);
    }
    let cell = h.powi(dim as i32 - 1) / a_len;

    // FFT frequencies on v^⊥: integer m with m·a = 0, away from Nyquist
    let spectrum = fourier_transform(field)?;
    let mut bins: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![0usize; dim];
    for _ in 0..spec.len() {
        let m: Vec<i64> = index.iter().map(|&i| signed_bin(i, n)).collect();
        let orthogonal = m.iter().zip(a).map(|(x, y)| x * y).sum::<i64>() == 0;
        let inside = m.iter().all(|&x| 2 * x.abs() < n as i64);
        if orthogonal && inside {
            bins.push(index.clone());
        }
        increment_index(&mut index, &dims);
    }
    bins.sort_by_key(|idx| {
        let m: Vec<i64> = idx.iter().map(|&i| signed_bin(i, n)).collect();
        (m.iter().map(|x| x * x).sum::<i64>(), m)
    });
    bins.truncate(options.max_samples);

    let results: Vec<(f64, f64)> = bins
        .par_iter()
        .map(|idx| {
            let xi: Vec<f64> = (0..dim).map(|ax| spec.frequency(ax, idx[ax])).collect();
            let projected: Complex64 = lines
                .iter()
                .map(|(foot, r)| r * Complex64::from_polar(1.0, -2.0 * PI * dot(foot, &xi)))
                .sum::<Complex64>()
                * cell;
            let reference = spectrum.get(idx);
            ((projected - reference).norm(), reference.norm())
        })
        .collect();
    Ok(report(SliceMethod::Lattice, &results))
}

fn report(method: SliceMethod, results: &[(f64, f64)]) -> SliceReport {
    SliceReport {
        method,
        samples: results.len(),
        max_deviation: results.iter().map(|r| r.0).fold(0.0, f64::max),
        max_reference: results.iter().map(|r| r.1).fold(0.0, f64::max),
    }
}

/// Orthonormal basis of `v^⊥` for a unit `v`, by Gram-Schmidt on the
/// coordinate axes.
pub fn orthonormal_complement(v: &[f64]) -> Vec<Vec<f64>> {
    let n = v.len();
    let mut basis: Vec<Vec<f64>> = vec![v.to_vec()];
    for axis in 0..n {
        let mut e = vec![0.0; n];
        e[axis] = 1.0;
        for b in &basis {
            let c = dot(&e, b);
            e.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let len = norm(&e);
        if len > 1e-6 {
            e.iter_mut().for_each(|x| *x /= len);
            basis.push(e);
        }
        if basis.len() == n {
            break;
        }
    }
    basis.remove(0);
    basis
}

fn interpolated_slice(
    field: &GridField,
    v: &[f64],
    options: &SliceOptions,
) -> Result<SliceReport, EuclideanError> {
    let spec = field.spec();
    let dim = spec.ndim();
    let h = spec.spacing();
    let basis = orthonormal_complement(v);
    let center: Vec<f64> = spec
        .origin()
        .iter()
        .zip(spec.upper())
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let radius = 0.5
        * spec
            .origin()
            .iter()
            .zip(spec.upper())
            .map(|(a, b)| (b - a) * (b - a))
            .sum::<f64>()
            .sqrt();
    let steps = (radius / h).ceil() as i64;
    let side = (2 * steps + 1) as usize;
    let offsets = vec![side; dim - 1];

    let mut coords: Vec<Vec<f64>> = Vec::new();
    let mut index = vec![0usize; dim - 1];
    for _ in 0..side.pow(dim as u32 - 1) {
        coords.push(
            index
                .iter()
                .map(|&i| (i as i64 - steps) as f64 * h)
                .collect(),
        );
        increment_index(&mut index, &offsets);
    }
    let projections: Vec<(Vec<f64>, Complex64)> = coords
        .into_par_iter()
        .map(|c| {
            let point: Vec<f64> = (0..dim)
                .map(|ax| center[ax] + c.iter().zip(&basis).map(|(s, b)| s * b[ax]).sum::<f64>())
                .collect();
            let line = Line::new(point.clone(), v.to_vec()).expect("unit direction");
            (point, field.line_integral_with(&line, options.quadrature))
        })
        .collect();
    let cell = h.powi(dim as i32 - 1);

    // frequencies η = Σ k_j b_j / (N h) on the basis of v^⊥
    let n = spec.dims()[0];
    let dk = 1.0 / (n as f64 * h);
    let half = (n / 2) as i64 - 1;
    let mut ks: Vec<Vec<i64>> = Vec::new();
    let mut index = vec![0usize; dim - 1];
    let kside = vec![(2 * half + 1) as usize; dim - 1];
    for _ in 0..kside.iter().product::<usize>() {
        ks.push(index.iter().map(|&i| i as i64 - half).collect());
        increment_index(&mut index, &kside);
    }
    ks.sort_by_key(|k| (k.iter().map(|x| x * x).sum::<i64>(), k.clone()));
    ks.truncate(options.max_samples);

    let nodes: Vec<(Vec<f64>, Complex64)> = {
        let dims = spec.dims().to_vec();
        let mut index = vec![0usize; dim];
        let mut out = Vec::with_capacity(spec.len());
        for value in field.values().data() {
            if value.norm() > 0.0 {
                out.push((spec.node(&index), *value));
            }
            increment_index(&mut index, &dims);
        }
        out
    };
    let volume = h.powi(dim as i32);
    let results: Vec<(f64, f64)> = ks
        .par_iter()
        .map(|k| {
            let xi: Vec<f64> = (0..dim)
                .map(|ax| {
                    k.iter()
                        .zip(&basis)
                        .map(|(&kj, b)| kj as f64 * dk * b[ax])
                        .sum()
                })
                .collect();
            let projected: Complex64 = projections
                .iter()
                .map(|(p, r)| r * Complex64::from_polar(1.0, -2.0 * PI * dot(p, &xi)))
                .sum::<Complex64>()
                * cell;
            let reference: Complex64 = nodes
                .iter()
                .map(|(x, f)| f * Complex64::from_polar(1.0, -2.0 * PI * dot(x, &xi)))
                .sum::<Complex64>()
                * volume;
            ((projected - reference).norm(), reference.norm())
        })
        .collect();
    Ok(report(SliceMethod::Interpolated, &results))
}
