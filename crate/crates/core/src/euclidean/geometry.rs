use super::EuclideanError;
use crate::diophantine::Signature;
use crate::numerics::{dot, norm, sphere_area, sphere_quadrature};

/// Tolerance on `|v| = 1` for directions supplied by callers.
pub const UNIT_TOLERANCE: f64 = 1e-12;

fn check_unit(v: &[f64]) -> Result<(), EuclideanError> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(EuclideanError::NonFinite);
    }
    let n = norm(v);
    if (n - 1.0).abs() > UNIT_TOLERANCE {
        return Err(EuclideanError::NotUnit(n));
    }
    Ok(())
}

/// `t ↦ point + t·direction` with a unit direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    point: Vec<f64>,
    direction: Vec<f64>,
}

impl Line {
    pub fn new(point: Vec<f64>, direction: Vec<f64>) -> Result<Self, EuclideanError> {
        if point.len() != direction.len() {
            return Err(EuclideanError::DimensionMismatch {
                expected: direction.len(),
                found: point.len(),
            });
        }
        if point.iter().any(|x| !x.is_finite()) {
            return Err(EuclideanError::NonFinite);
        }
        check_unit(&direction)?;
        Ok(Self { point, direction })
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn dim(&self) -> usize {
        self.point.len()
    }
}

/// The shorter great-circle arc from `a` to `b`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct GreatArc {
    a: Vec<f64>,
    b: Vec<f64>,
    /// Unit tangent at `a`, so that `y(θ) = cos θ·a + sin θ·e`.
    e: Vec<f64>,
    angle: f64,
}

impl GreatArc {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self, EuclideanError> {
        if a.len() != b.len() {
            return Err(EuclideanError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        if a.len() < 2 {
            return Err(EuclideanError::DegenerateArc);
        }
        check_unit(&a)?;
        check_unit(&b)?;
        let c = dot(&a, &b).clamp(-1.0, 1.0);
        let e: Vec<f64> = b.iter().zip(&a).map(|(bi, ai)| bi - c * ai).collect();
        let len = norm(&e);
        if len < 1e-9 {
            return Err(EuclideanError::DegenerateArc);
        }
        let e = e.into_iter().map(|x| x / len).collect();
        Ok(Self {
            a,
            b,
            e,
            angle: len.atan2(c),
        })
    }

    pub fn start(&self) -> &[f64] {
        &self.a
    }

    pub fn end(&self) -> &[f64] {
        &self.b
    }

    /// Angular length in `(0, π)`.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn point_at(&self, theta: f64) -> Vec<f64> {
        let (s, c) = theta.sin_cos();
        self.a
            .iter()
            .zip(&self.e)
            .map(|(a, e)| c * a + s * e)
            .collect()
    }

    /// `(inf, sup)` of `y ↦ x·y` over the arc.
    ///
    /// On the arc `x·y(θ) = A cos θ + B sin θ`, so the extremes are at the
    /// endpoints or at `θ = atan2(B, A)` (max) and that angle `+ π` (min)
    /// when those fall inside `[0, angle]`.
    pub fn dot_range(&self, x: &[f64]) -> (f64, f64) {
        let (a, b) = (dot(x, &self.a), dot(x, &self.e));
        let value = |t: f64| a * t.cos() + b * t.sin();
        let end = value(self.angle);
        let (mut lo, mut hi) = (a.min(end), a.max(end));
        let peak = b.atan2(a);
        let r = a.hypot(b);
        for (theta, extreme) in [(peak, r), (peak + std::f64::consts::PI, -r)] {
            let theta = theta.rem_euclid(2.0 * std::f64::consts::PI);
            if theta <= self.angle {
                lo = lo.min(extreme);
                hi = hi.max(extreme);
            }
        }
        (lo, hi)
    }

    fn contains(&self, v: &[f64], tol: f64) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        let (ca, ce) = (dot(v, &self.a), dot(v, &self.e));
        let residual: f64 = v
            .iter()
            .zip(self.a.iter().zip(&self.e))
            .map(|(x, (a, e))| (x - ca * a - ce * e).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual > tol {
            return false;
        }
        let theta = ce.atan2(ca);
        theta >= -tol && theta <= self.angle + tol
    }
}

/// Set `D ⊂ S^{n−1}` of admissible line directions.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectionSet {
    Finite(Vec<Vec<f64>>),
    Arc(GreatArc),
    /// Unit null vectors of `ℝ^{n₁,n₂}`: `|x'|² = |x''|²` for the split
    /// `x = (x', x'') ∈ ℝ^{n₁} × ℝ^{n₂}`.
    LightCone(Signature),
}

impl DirectionSet {
    pub fn finite(directions: Vec<Vec<f64>>) -> Result<Self, EuclideanError> {
        let first = directions
            .first()
            .ok_or(EuclideanError::EmptyDirectionSet)?;
        let dim = first.len();
        for v in &directions {
            if v.len() != dim {
                return Err(EuclideanError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            check_unit(v)?;
        }
        Ok(Self::Finite(directions))
    }

    pub fn arc(a: Vec<f64>, b: Vec<f64>) -> Result<Self, EuclideanError> {
        GreatArc::new(a, b).map(Self::Arc)
    }

    pub fn light_cone(signature: Signature) -> Self {
        Self::LightCone(signature)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Finite(v) => v[0].len(),
            Self::Arc(arc) => arc.dim(),
            Self::LightCone(s) => s.dim(),
        }
    }

    /// Whether the unit vector `v` lies in the set, up to `tol`.
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        match self {
            Self::Finite(dirs) => dirs
                .iter()
                .any(|d| d.iter().zip(v).all(|(a, b)| (a - b).abs() <= tol)),
            Self::Arc(arc) => arc.contains(v, tol),
            Self::LightCone(s) => {
                let (x, y) = v.split_at(s.n1);
                (dot(x, x) - dot(y, y)).abs() <= tol && (norm(v) - 1.0).abs() <= tol
            }
        }
    }
}

/// Whether `x` lies in `N(D) = {x : x·v = 0 for some v ∈ D}`.
///
/// For the light cone, boundary points count as members: with one time
/// dimension `N(D)` is the closed set `x₁² ≤ x₂² + ⋯ + xₙ²` (mirrored when
/// `n₂ = 1`), and it is all of `ℝⁿ` once both factors have dimension two.
pub fn normal_bundle_contains(set: &DirectionSet, x: &[f64]) -> Result<bool, EuclideanError> {
    if x.len() != set.dim() {
        return Err(EuclideanError::DimensionMismatch {
            expected: set.dim(),
            found: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(EuclideanError::NonFinite);
    }
    let scale = norm(x);
    if scale == 0.0 {
        return Ok(true);
    }
    Ok(match set {
        DirectionSet::Finite(dirs) => dirs.iter().any(|v| dot(x, v).abs() <= 1e-9 * scale),
        DirectionSet::Arc(arc) => {
            let (lo, hi) = arc.dot_range(x);
            lo <= 1e-9 * scale && hi >= -1e-9 * scale
        }
        DirectionSet::LightCone(s) => {
            let (first, second) = x.split_at(s.n1);
            let (p, q) = (dot(first, first), dot(second, second));
            let tol = 1e-9 * scale * scale;
            let time_first = s.n1 > 1 || p <= q + tol;
            let time_second = s.n2 > 1 || q <= p + tol;
            time_first && time_second
        }
    })
}

/// Interior point of `N(D) ∩ S^{n−1}` for an arc `D`, with a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcCertificate {
    pub point: Vec<f64>,
    /// `inf_{y∈γ} x₀·y`, negative.
    pub inf: f64,
    /// `sup_{y∈γ} x₀·y = cos d(x₀, γ)`, positive.
    pub sup: f64,
    /// Every unit `x` with `|x − x₀| < radius` keeps `inf < 0 < sup`.
    pub radius: f64,
}

impl ArcCertificate {
    /// Re-evaluates the sign conditions at `x`.
    pub fn certifies(&self, arc: &GreatArc, x: &[f64]) -> bool {
        let (lo, hi) = arc.dot_range(x);
        lo < 0.0 && hi > 0.0
    }
}

/// `x₀ = (b − a)/|b − a|` with `inf x₀·y < 0 < sup x₀·y` over the arc.
///
/// Both `x ↦ inf_{y∈γ} x·y` and `x ↦ sup_{y∈γ} x·y` are 1-Lipschitz, so the
/// signs persist on the ball of radius `min(−inf, sup)`; half of that is
/// returned as the certified radius.
pub fn arc_interior_normal_point(arc: &GreatArc) -> ArcCertificate {
    let diff: Vec<f64> = arc
        .end()
        .iter()
        .zip(arc.start())
        .map(|(b, a)| b - a)
        .collect();
    let len = norm(&diff);
    let point: Vec<f64> = diff.into_iter().map(|x| x / len).collect();
    let (inf, sup) = arc.dot_range(&point);
    ArcCertificate {
        radius: 0.5 * (-inf).min(sup),
        point,
        inf,
        sup,
    }
}

/// `|∫_{S^{n−1}} (a·v)² dΣ − |a|² Σ(S^{n−1})/n|` with the product quadrature
/// of the given order.
pub fn sphere_moment_check(a: &[f64], order: usize) -> Result<f64, EuclideanError> {
    let n = a.len();
    let nodes = sphere_quadrature(n, order)?;
    let integral: f64 = nodes
        .iter()
        .map(|node| node.weight * dot(a, &node.point).powi(2))
        .sum();
    Ok((integral - dot(a, a) * sphere_area(n) / n as f64).abs())
}
