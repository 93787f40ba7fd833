use std::f64::consts::PI;

use num_complex::Complex64;
use once_cell::sync::OnceCell;
use rayon::prelude::*;

use super::geometry::{DirectionSet, Line};
use super::EuclideanError;
use crate::numerics::{dft, dot, increment_index, signed_bin, ComplexArray};

/// Tolerance for a sampled line direction to count as an element of a
/// direction set.
pub const DIRECTION_TOLERANCE: f64 = 1e-9;

/// Regular grid `origin + h·index`, `index ∈ [0, dims)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    origin: Vec<f64>,
    spacing: f64,
    dims: Vec<usize>,
}

impl GridSpec {
    pub fn new(origin: Vec<f64>, spacing: f64, dims: Vec<usize>) -> Result<Self, EuclideanError> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(EuclideanError::InvalidSpacing(spacing));
        }
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(EuclideanError::GridTooSmall(dims));
        }
        if origin.len() != dims.len() {
            return Err(EuclideanError::DimensionMismatch {
                expected: dims.len(),
                found: origin.len(),
            });
        }
        if origin.iter().any(|x| !x.is_finite()) {
            return Err(EuclideanError::NonFinite);
        }
        Ok(Self {
            origin,
            spacing,
            dims,
        })
    }

    /// `size^n` nodes covering `[-half_width, half_width)` on every axis.
    pub fn centered(n: usize, size: usize, half_width: f64) -> Result<Self, EuclideanError> {
        let spacing = 2.0 * half_width / size as f64;
        Self::new(vec![-half_width; n], spacing, vec![size; n])
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, index: &[usize]) -> Vec<f64> {
        self.origin
            .iter()
            .zip(index)
            .map(|(&o, &i)| o + self.spacing * i as f64)
            .collect()
    }

    /// Upper corner `origin + h·(dims − 1)`.
    pub fn upper(&self) -> Vec<f64> {
        self.origin
            .iter()
            .zip(&self.dims)
            .map(|(&o, &d)| o + self.spacing * (d - 1) as f64)
            .collect()
    }

    /// Physical frequency of FFT bin `m` on `axis`.
    pub fn frequency(&self, axis: usize, m: usize) -> f64 {
        signed_bin(m, self.dims[axis]) as f64 / (self.dims[axis] as f64 * self.spacing)
    }

    /// Parameter interval on which `line` lies inside the closed grid box.
    pub fn clip(&self, line: &Line) -> Option<(f64, f64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let upper = self.upper();
        for (((&p, &v), &a), &b) in line
            .point()
            .iter()
            .zip(line.direction())
            .zip(&self.origin)
            .zip(&upper)
        {
            if v.abs() < 1e-15 {
                if p < a || p > b {
                    return None;
                }
                continue;
            }
            let (t0, t1) = ((a - p) / v, (b - p) / v);
            lo = lo.max(t0.min(t1));
            hi = hi.min(t0.max(t1));
        }
        (lo < hi).then_some((lo, hi))
    }
}

/// Interpolation used to evaluate a grid field between nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Bilinear / trilinear / n-linear on the cell containing the point.
    #[default]
    Multilinear,
    /// Cubic B-spline on periodically prefiltered coefficients.
    CubicBSpline,
}

/// Quadrature for line integrals of grid fields: composite trapezoid with
/// step `step_fraction · h` over the part of the line inside the grid box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineQuadrature {
    pub interpolation: Interpolation,
    pub step_fraction: f64,
}

impl Default for LineQuadrature {
    fn default() -> Self {
        Self {
            interpolation: Interpolation::Multilinear,
            step_fraction: 0.5,
        }
    }
}

impl LineQuadrature {
    pub fn spline() -> Self {
        Self {
            interpolation: Interpolation::CubicBSpline,
            ..Self::default()
        }
    }
}

/// Complex samples on a [`GridSpec`]; zero outside the grid box.
#[derive(Debug, Clone)]
pub struct GridField {
    spec: GridSpec,
    values: ComplexArray,
    spline: OnceCell<ComplexArray>,
}

impl PartialEq for GridField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.values == other.values
    }
}

impl GridField {
    pub fn new(spec: GridSpec, values: ComplexArray) -> Result<Self, EuclideanError> {
        if values.dims() != spec.dims() {
            return Err(EuclideanError::ShapeMismatch {
                grid: spec.dims().to_vec(),
                values: values.dims().to_vec(),
            });
        }
        Ok(Self {
            spec,
            values,
            spline: OnceCell::new(),
        })
    }

    pub fn from_fn(
        spec: GridSpec,
        f: impl Fn(&[f64]) -> Complex64,
    ) -> Result<Self, EuclideanError> {
        let values = ComplexArray::from_fn(spec.dims(), |index| f(&spec.node(index)))?;
        Self::new(spec, values)
    }

    pub fn zeros(spec: GridSpec) -> Result<Self, EuclideanError> {
        let values = ComplexArray::zeros(spec.dims())?;
        Self::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &ComplexArray {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.max_abs()
    }

    /// Largest `|f|` on the faces of the grid box.
    pub fn boundary_max(&self) -> f64 {
        let dims = self.spec.dims();
        let mut index = vec![0usize; dims.len()];
        let mut best = 0.0f64;
        for value in self.values.data() {
            if index.iter().zip(dims).any(|(&i, &d)| i == 0 || i == d - 1) {
                best = best.max(value.norm());
            }
            increment_index(&mut index, dims);
        }
        best
    }

    /// Longest side of the bounding box of `{|f| ≥ level·‖f‖∞}`.
    pub fn support_width(&self, level: f64) -> f64 {
        let threshold = level * self.max_abs();
        let dims = self.spec.dims();
        let mut lo = vec![usize::MAX; dims.len()];
        let mut hi = vec![0usize; dims.len()];
        let mut index = vec![0usize; dims.len()];
        let mut any = false;
        for value in self.values.data() {
            if value.norm() >= threshold && threshold > 0.0 {
                any = true;
                for axis in 0..dims.len() {
                    lo[axis] = lo[axis].min(index[axis]);
                    hi[axis] = hi[axis].max(index[axis]);
                }
            }
            increment_index(&mut index, dims);
        }
        if !any {
            return 0.0;
        }
        (0..dims.len())
            .map(|a| (hi[a] - lo[a]) as f64 * self.spec.spacing())
            .fold(0.0, f64::max)
    }

    fn spline_coefficients(&self) -> &ComplexArray {
        self.spline.get_or_init(|| {
            let dims = self.spec.dims().to_vec();
            let mut spectrum = dft(&self.values, false).expect("validated dimensions");
            let factors: Vec<Vec<f64>> = dims
                .iter()
                .map(|&n| {
                    (0..n)
                        .map(|m| (4.0 + 2.0 * (2.0 * PI * m as f64 / n as f64).cos()) / 6.0)
                        .collect()
                })
                .collect();
            let mut index = vec![0usize; dims.len()];
            for value in spectrum.data_mut() {
                let denom: f64 = index
                    .iter()
                    .enumerate()
                    .map(|(a, &m)| factors[a][m])
                    .product();
                *value /= denom;
                increment_index(&mut index, &dims);
            }
            dft(&spectrum, true).expect("validated dimensions")
        })
    }

    /// Interpolated value at `x`; zero outside the closed grid box.
    pub fn sample(&self, x: &[f64], interpolation: Interpolation) -> Complex64 {
        let dims = self.spec.dims();
        let h = self.spec.spacing();
        let mut cell = Vec::with_capacity(dims.len());
        let mut frac = Vec::with_capacity(dims.len());
        for (axis, (&xi, &o)) in x.iter().zip(self.spec.origin()).enumerate() {
            let g = (xi - o) / h;
            let last = (dims[axis] - 1) as f64;
            if !(g >= -1e-12 && g <= last + 1e-12) {
                return Complex64::new(0.0, 0.0);
            }
            let g = g.clamp(0.0, last);
            let i = (g.floor() as usize).min(dims[axis] - 2);
            cell.push(i);
            frac.push(g - i as f64);
        }
        match interpolation {
            Interpolation::Multilinear => self.multilinear(&cell, &frac),
            Interpolation::CubicBSpline => self.cubic(&cell, &frac),
        }
    }

    fn multilinear(&self, cell: &[usize], frac: &[f64]) -> Complex64 {
        let n = cell.len();
        let data = self.values.data();
        let dims = self.spec.dims();
        let mut total = Complex64::new(0.0, 0.0);
        for corner in 0..(1usize << n) {
            let mut weight = 1.0;
            let mut offset = 0usize;
            for axis in 0..n {
                let bit = (corner >> (n - 1 - axis)) & 1;
                weight *= if bit == 1 {
                    frac[axis]
                } else {
                    1.0 - frac[axis]
                };
                offset = offset * dims[axis] + cell[axis] + bit;
            }
            if weight != 0.0 {
                total += data[offset] * weight;
            }
        }
        total
    }

    fn cubic(&self, cell: &[usize], frac: &[f64]) -> Complex64 {
        let n = cell.len();
        let coeffs = self.spline_coefficients().data();
        let dims = self.spec.dims();
        let weights: Vec<[f64; 4]> = frac
            .iter()
            .map(|&t| {
                let s = 1.0 - t;
                [
                    s * s * s / 6.0,
                    (3.0 * t * t * t - 6.0 * t * t + 4.0) / 6.0,
                    (-3.0 * t * t * t + 3.0 * t * t + 3.0 * t + 1.0) / 6.0,
                    t * t * t / 6.0,
                ]
            })
            .collect();
        let four = vec![4usize; n];
        let mut taps = vec![0usize; n];
        let mut total = Complex64::new(0.0, 0.0);
        for _ in 0..4usize.pow(n as u32) {
            let mut weight = 1.0;
            let mut offset = 0usize;
            for axis in 0..n {
                weight *= weights[axis][taps[axis]];
                let i = (cell[axis] as i64 + taps[axis] as i64 - 1).rem_euclid(dims[axis] as i64);
                offset = offset * dims[axis] + i as usize;
            }
            total += coeffs[offset] * weight;
            increment_index(&mut taps, &four);
        }
        total
    }

    pub fn line_integral_with(&self, line: &Line, quadrature: LineQuadrature) -> Complex64 {
        let Some((t0, t1)) = self.spec.clip(line) else {
            return Complex64::new(0.0, 0.0);
        };
        let step = quadrature.step_fraction * self.spec.spacing();
        let steps = ((t1 - t0) / step).ceil().max(1.0) as usize;
        let dt = (t1 - t0) / steps as f64;
        let mut point = vec![0.0; line.dim()];
        let mut total = Complex64::new(0.0, 0.0);
        for j in 0..=steps {
            let t = t0 + dt * j as f64;
            for (slot, (&p, &v)) in point
                .iter_mut()
                .zip(line.point().iter().zip(line.direction()))
            {
                *slot = p + t * v;
            }
            let weight = if j == 0 || j == steps { 0.5 } else { 1.0 };
            total += self.sample(&point, quadrature.interpolation) * weight;
        }
        total * dt
    }
}

/// One term `c·exp(−π|x − μ|²/σ²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTerm {
    pub weight: Complex64,
    pub center: Vec<f64>,
    pub width: f64,
}

/// Finite sum of isotropic Gaussians, with closed-form line integrals and
/// Fourier transform `ℱf(ξ) = Σ c σⁿ exp(−πσ²|ξ|²) e^{−2πi μ·ξ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    dim: usize,
    terms: Vec<GaussianTerm>,
}

impl GaussianMixture {
    pub fn new(dim: usize, terms: Vec<GaussianTerm>) -> Result<Self, EuclideanError> {
        if dim == 0 {
            return Err(EuclideanError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for term in &terms {
            if term.center.len() != dim {
                return Err(EuclideanError::DimensionMismatch {
                    expected: dim,
                    found: term.center.len(),
                });
            }
            if !(term.width.is_finite() && term.width > 0.0) {
                return Err(EuclideanError::InvalidWidth(term.width));
            }
            if term.center.iter().any(|x| !x.is_finite()) || !term.weight.is_finite() {
                return Err(EuclideanError::NonFinite);
            }
        }
        Ok(Self { dim, terms })
    }

    /// `exp(−π|x|²)`, whose integral over every line through the origin is 1.
    pub fn standard(dim: usize) -> Self {
        Self::single(dim, vec![0.0; dim], 1.0)
    }

    pub fn single(dim: usize, center: Vec<f64>, width: f64) -> Self {
        Self::new(
            dim,
            vec![GaussianTerm {
                weight: Complex64::new(1.0, 0.0),
                center,
                width,
            }],
        )
        .expect("valid single Gaussian")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    pub fn value(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let d2: f64 = x
                    .iter()
                    .zip(&t.center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                t.weight * (-PI * d2 / (t.width * t.width)).exp()
            })
            .sum()
    }

    pub fn fourier(&self, xi: &[f64]) -> Complex64 {
        let r2 = dot(xi, xi);
        self.terms
            .iter()
            .map(|t| {
                let amp = t.width.powi(self.dim as i32) * (-PI * t.width * t.width * r2).exp();
                t.weight * amp * Complex64::from_polar(1.0, -2.0 * PI * dot(&t.center, xi))
            })
            .sum()
    }

    pub fn line_integral(&self, line: &Line) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let rel: Vec<f64> = t
                    .center
                    .iter()
                    .zip(line.point())
                    .map(|(m, p)| m - p)
                    .collect();
                let along = dot(&rel, line.direction());
                let d2 = (dot(&rel, &rel) - along * along).max(0.0);
                t.weight * t.width * (-PI * d2 / (t.width * t.width)).exp()
            })
            .sum()
    }

    pub fn sample(&self, spec: GridSpec) -> Result<GridField, EuclideanError> {
        if spec.ndim() != self.dim {
            return Err(EuclideanError::DimensionMismatch {
                expected: self.dim,
                found: spec.ndim(),
            });
        }
        GridField::from_fn(spec, |x| self.value(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScalarField {
    Grid(GridField),
    Gaussians(GaussianMixture),
}

impl ScalarField {
    pub fn dim(&self) -> usize {
        match self {
            Self::Grid(g) => g.spec().ndim(),
            Self::Gaussians(g) => g.dim(),
        }
    }
}

impl From<GridField> for ScalarField {
    fn from(g: GridField) -> Self {
        Self::Grid(g)
    }
}

impl From<GaussianMixture> for ScalarField {
    fn from(g: GaussianMixture) -> Self {
        Self::Gaussians(g)
    }
}

/// `∫_ℝ f(x + tv) dt`: closed form for Gaussian mixtures, trilinear
/// trapezoid quadrature with step `h/2` for grid fields.
pub fn line_integral(f: &ScalarField, line: &Line) -> Result<Complex64, EuclideanError> {
    line_integral_with(f, line, LineQuadrature::default())
}

pub fn line_integral_with(
    f: &ScalarField,
    line: &Line,
    quadrature: LineQuadrature,
) -> Result<Complex64, EuclideanError> {
    if line.dim() != f.dim() {
        return Err(EuclideanError::DimensionMismatch {
            expected: f.dim(),
            found: line.dim(),
        });
    }
    if !(quadrature.step_fraction > 0.0 && quadrature.step_fraction <= 0.5) {
        return Err(EuclideanError::InvalidStep(quadrature.step_fraction));
    }
    Ok(match f {
        ScalarField::Grid(g) => g.line_integral_with(line, quadrature),
        ScalarField::Gaussians(g) => g.line_integral(line),
    })
}

/// Line integrals of `f` over `lines`, each of which must have its direction
/// in `set`. Output order follows the input.
pub fn restricted_transform(
    f: &ScalarField,
    set: &DirectionSet,
    lines: &[Line],
) -> Result<Vec<(Line, Complex64)>, EuclideanError> {
    if lines.is_empty() {
        return Err(EuclideanError::EmptyLines);
    }
    if set.dim() != f.dim() {
        return Err(EuclideanError::DimensionMismatch {
            expected: f.dim(),
            found: set.dim(),
        });
    }
    for line in lines {
        if !set.contains(line.direction(), DIRECTION_TOLERANCE) {
            return Err(EuclideanError::DirectionNotInSet(line.direction().to_vec()));
        }
    }
    lines
        .par_iter()
        .map(|line| line_integral(f, line).map(|value| (line.clone(), value)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{random_unit_vector, seeded_rng};
    use rand::Rng;

    fn exact_value(f: &ScalarField, x: &[f64]) -> Complex64 {
        match f {
            ScalarField::Gaussians(g) => g.value(x),
            ScalarField::Grid(_) => unreachable!(),
        }
    }

    fn line(p: &[f64], v: &[f64]) -> Line {
        Line::new(p.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn gaussian_line_examples() {
        let g = ScalarField::from(GaussianMixture::standard(2));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for v in [[1.0, 0.0], [0.0, 1.0], [s, s]] {
            let z = line_integral(&g, &line(&[0.0, 0.0], &v)).unwrap();
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let z = line_integral(&g, &line(&[0.0, 1.0], &[1.0, 0.0])).unwrap();
        assert!((z.re - (-PI).exp()).abs() < 1e-15);
        let zero = ScalarField::from(GaussianMixture::new(2, vec![]).unwrap());
        assert_eq!(
            line_integral(&zero, &line(&[0.0, 0.0], &[1.0, 0.0])).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn closed_form_matches_grid_quadrature() {
        let mut rng = seeded_rng(11);
        let spec = GridSpec::centered(2, 256, 3.0).unwrap();
        for _ in 0..10 {
            let mixture = GaussianMixture::new(
                2,
                (0..3)
                    .map(|_| GaussianTerm {
                        weight: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        center: vec![rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)],
                        width: rng.gen_range(0.5..1.0),
                    })
                    .collect(),
            )
            .unwrap();
            let grid = ScalarField::from(mixture.sample(spec.clone()).unwrap());
            let exact = ScalarField::from(mixture);
            for _ in 0..5 {
                let l = line(
                    &[rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)],
                    &random_unit_vector(&mut rng, 2),
                );
                let a = line_integral(&exact, &l).unwrap();
                let quad: Complex64 = crate::numerics::gauss_legendre(200)
                    .iter()
                    .map(|&(t, w)| {
                        let x: Vec<f64> = l
                            .point()
                            .iter()
                            .zip(l.direction())
                            .map(|(p, v)| p + 6.0 * t * v)
                            .collect();
                        exact_value(&exact, &x) * (6.0 * w)
                    })
                    .sum();
                assert!((a - quad).norm() < 1e-8, "{a} vs {quad}");
                let b = line_integral_with(&grid, &l, LineQuadrature::spline()).unwrap();
                assert!((a - b).norm() < 1e-5, "{a} vs {b}");
                let c = line_integral(&grid, &l).unwrap();
                assert!((a - c).norm() < 1e-3, "{a} vs {c}");
            }
        }
    }

    #[test]
    fn interpolation_reproduces_nodes() {
        let spec = GridSpec::new(vec![0.0, 0.0, 0.0], 0.5, vec![4, 5, 6]).unwrap();
        let f = GridField::from_fn(spec.clone(), |x| {
            Complex64::new(x[0] + 2.0 * x[1], x[2] * x[2])
        })
        .unwrap();
        for index in [[0, 0, 0], [3, 4, 5], [1, 2, 3]] {
            let x = spec.node(&index);
            let want = f.values().get(&index);
            assert!((f.sample(&x, Interpolation::Multilinear) - want).norm() < 1e-14);
            assert!((f.sample(&x, Interpolation::CubicBSpline) - want).norm() < 1e-12);
        }
        let mid = f.sample(&[0.25, 0.25, 0.0], Interpolation::Multilinear);
        assert!((mid - Complex64::new(0.75, 0.0)).norm() < 1e-14);
        assert_eq!(
            f.sample(&[-1.0, 0.0, 0.0], Interpolation::Multilinear),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn restricted_transform_checks_directions() {
        let g = ScalarField::from(GaussianMixture::standard(2));
        let d = DirectionSet::finite(vec![vec![1.0, 0.0]]).unwrap();
        let lines: Vec<Line> = (0..3)
            .map(|i| line(&[0.0, i as f64 * 0.1], &[1.0, 0.0]))
            .collect();
        let out = restricted_transform(&g, &d, &lines).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out[0].1.re > out[1].1.re && out[1].1.re > out[2].1.re);

        let cone = DirectionSet::light_cone(crate::Signature::new(1, 1).unwrap());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(restricted_transform(&g, &cone, &[line(&[0.0, 0.0], &[s, s])]).is_ok());
        assert!(matches!(
            restricted_transform(&g, &cone, &[line(&[0.0, 0.0], &[1.0, 0.0])]),
            Err(EuclideanError::DirectionNotInSet(_))
        ));
        assert!(matches!(
            restricted_transform(&g, &cone, &[]),
            Err(EuclideanError::EmptyLines)
        ));
    }

    #[test]
    fn clipping() {
        let spec = GridSpec::new(vec![0.0, 0.0], 1.0, vec![3, 3]).unwrap();
        assert_eq!(
            spec.clip(&line(&[-1.0, 1.0], &[1.0, 0.0])),
            Some((1.0, 3.0))
        );
        assert_eq!(spec.clip(&line(&[0.0, 5.0], &[1.0, 0.0])), None);
        let support = GridField::from_fn(spec, |x| {
            Complex64::new(if x == [1.0, 1.0] { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap()
        .support_width(0.5);
        assert_eq!(support, 0.0);
    }
}
