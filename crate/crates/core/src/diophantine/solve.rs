//! Constructive solvers for `|v|² = s² ≠ 0, k·v + t s = 0` in low dimension,
//! and the `(a, -b, b, -a)` construction for signature `(2, 2)`.

use super::lattice::{exact_sqrt, gcd_all, NullLatticeDirection, Signature};
use super::search::{shared_table, DEFAULT_SEARCH_BOUND};
use super::squares::sum_of_two_squares;
use super::LatticeFrequency;

/// Which algebraic identity a [`SolverCertificate`] records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    TwoSquare,
    ThreeSquare,
    PythTriple,
    PythQuadruple,
}

/// Intermediate data of a constructive solve; each variant carries an exact
/// identity checked by [`SolverCertificate::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverCertificate {
    /// `x² + y² = n`.
    TwoSquare { n: i64, x: i64, y: i64 },
    /// `x² + y² + z² = n`.
    ThreeSquare { n: i64, x: i64, y: i64, z: i64 },
    /// The triple `(m² − n², 2mn, m² + n²)`, with rational slope `α = n/m`.
    PythTriple { m: i64, n: i64 },
    /// A quadruple `v₁² + v₂² + v₃² = s²` with `p = s − v₃`, so that
    /// `2p·v₃ = v₁² + v₂² − p²`.
    PythQuadruple { p: i64, v: [i64; 3], s: i64 },
}

impl SolverCertificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Self::TwoSquare { .. } => CertificateKind::TwoSquare,
            Self::ThreeSquare { .. } => CertificateKind::ThreeSquare,
            Self::PythTriple { .. } => CertificateKind::PythTriple,
            Self::PythQuadruple { .. } => CertificateKind::PythQuadruple,
        }
    }

    pub fn verify(&self) -> bool {
        match *self {
            Self::TwoSquare { n, x, y } => x * x + y * y == n,
            Self::ThreeSquare { n, x, y, z } => x * x + y * y + z * z == n,
            Self::PythTriple { m, n } => {
                let (a, b, c) = pyth_triple(m, n);
                (m, n) != (0, 0) && a * a + b * b == c * c
            }
            Self::PythQuadruple { p, v, s } => {
                v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == s * s
                    && s != 0
                    && p == s - v[2]
                    && 2 * p * v[2] == v[0] * v[0] + v[1] * v[1] - p * p
            }
        }
    }
}

/// A validated witness together with the certificates of its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub direction: NullLatticeDirection,
    pub certificates: Vec<SolverCertificate>,
}

fn pyth_triple(m: i64, n: i64) -> (i64, i64, i64) {
    (m * m - n * n, 2 * m * n, m * m + n * n)
}

fn reduced(num: i64, den: i64) -> (i64, i64) {
    let g = gcd_all(&[num, den]).max(1);
    (num / g, den / g)
}

/// Primitive representative with `s > 0`, or `None` if the candidate fails
/// either defining equation.
fn canonical(freq: &LatticeFrequency, coords: Vec<i64>) -> Option<NullLatticeDirection> {
    let direction = NullLatticeDirection::from_coords(freq.signature(), coords).ok()?;
    direction
        .is_witness_for(freq)
        .then(|| direction.primitive().future_pointing())
}

fn zero_frequency_witness(signature: Signature) -> NullLatticeDirection {
    let mut coords = vec![0; signature.dim()];
    coords[0] = 1;
    coords[signature.n1] = 1;
    NullLatticeDirection::from_coords_unchecked(signature, coords)
}

fn bounded_fallback(freq: &LatticeFrequency) -> Option<Solution> {
    shared_table(freq.signature(), DEFAULT_SEARCH_BOUND)
        .first_witness(freq)
        .map(|d| Solution {
            direction: d.future_pointing(),
            certificates: Vec::new(),
        })
}

/// Solves `v₁² + v₂² = s² ≠ 0`, `k₁v₁ + k₂v₂ + ts = 0`.
///
/// A solution exists iff `k₁² + k₂² − t²` is a perfect square. Writing
/// `(v₁, v₂, s) ∝ (m² − n², 2mn, m² + n²)` with `α = n/m`, the linear condition
/// becomes `(t − k₁)α² + 2k₂α + (t + k₁) = 0`; its rational roots are tried
/// in the order `+√D`, `−√D`, then the point at infinity `m = 0`, which
/// covers every sign pattern of the inputs. The returned witness is
/// primitive with `s > 0`.
pub fn solve_system_2d(k1: i64, k2: i64, t: i64) -> Option<Solution> {
    let signature = Signature { n1: 2, n2: 1 };
    let freq = LatticeFrequency::new(signature, &[k1, k2], &[t]).ok()?;
    if freq.is_zero() {
        return Some(Solution {
            direction: zero_frequency_witness(signature),
            certificates: vec![SolverCertificate::PythTriple { m: 1, n: 0 }],
        });
    }
    let root = exact_sqrt(k1 * k1 + k2 * k2 - t * t)?;

    let leading = t - k1;
    let mut slopes: Vec<(i64, i64)> = Vec::new();
    if leading != 0 {
        for sign in [1, -1] {
            let (n, m) = reduced(-k2 + sign * root, leading);
            slopes.push((m, n));
        }
    } else if k2 != 0 {
        // t = k₁: α = −k₁/k₂, plus the root at infinity
        let (n, m) = reduced(-k1, k2);
        slopes.push((m, n));
    }
    slopes.push((0, 1));

    for (m, n) in slopes {
        let (a, b, c) = pyth_triple(m, n);
        if let Some(direction) = canonical(&freq, vec![a, b, c]) {
            return Some(Solution {
                direction,
                certificates: vec![SolverCertificate::PythTriple { m, n }],
            });
        }
    }
    bounded_fallback(&freq)
}

/// Solves `v₁² + v₂² + v₃² = s² ≠ 0`, `k·v + ts = 0`.
///
/// A solution exists iff `D = |k|² − t²` is a sum of two squares. With
/// `p = s − v₃` normalized to 1 and `α = v₁/p`, `β = v₂/p`, the substitution
/// `x = (k₃ + t)α + k₁`, `y = (k₃ + t)β + k₂` turns the linear condition into
/// `x² + y² = D`. When `k₃ + t = 0` the condition is linear in `(α, β)`
/// instead: `k₁α + k₂β = k₃`. The returned witness is primitive with `s > 0`.
pub fn solve_system_3d(k1: i64, k2: i64, k3: i64, t: i64) -> Option<Solution> {
    let signature = Signature { n1: 3, n2: 1 };
    let freq = LatticeFrequency::new(signature, &[k1, k2, k3], &[t]).ok()?;
    if freq.is_zero() {
        return Some(Solution {
            direction: zero_frequency_witness(signature),
            certificates: Vec::new(),
        });
    }
    let d = k1 * k1 + k2 * k2 + k3 * k3 - t * t;
    if d < 0 {
        return None;
    }
    let (x, y) = sum_of_two_squares(d as u64)?;
    let (x, y) = (x as i64, y as i64);
    let mut certificates = vec![SolverCertificate::TwoSquare { n: d, x, y }];

    let c = k3 + t;
    // (α, β) = (a, b)/q with p = 1, scaled by 2q²
    let (a, b, q) = if c != 0 {
        (x - k1, y - k2, c)
    } else {
        let n = k1 * k1 + k2 * k2;
        if n == 0 {
            // p = 0: v = (0, 0, s) with k₃ + t = 0
            (0, 0, 0)
        } else {
            // particular solution plus the homogeneous (k₂, −k₁)
            (k3 * k1 + k2 * n, k3 * k2 - k1 * n, n)
        }
    };
    let coords = if q == 0 {
        vec![0, 0, 1, 1]
    } else {
        let r = a * a + b * b;
        vec![2 * q * a, 2 * q * b, r - q * q, r + q * q]
    };

    match canonical(&freq, coords) {
        Some(direction) => {
            let v = direction.v();
            let s = direction.w()[0];
            certificates.push(SolverCertificate::PythQuadruple {
                p: s - v[2],
                v: [v[0], v[1], v[2]],
                s,
            });
            Some(Solution {
                direction,
                certificates,
            })
        }
        None => bounded_fallback(&freq),
    }
}

/// A null direction in signature `(2, 2)` orthogonal to `k = (k₁₁, k₁₂; k₂₁, k₂₂)`.
///
/// `v = (a, −b, b, −a)` with `a = k₁₂ − k₂₁`, `b = k₁₁ − k₂₂` is null and
/// satisfies `a(k₁₁ − k₂₂) − b(k₁₂ − k₂₁) = 0` for every sign pattern. When
/// both vanish, `k = (c, d; d, c)` and `a = d`, `b = c` works; for `k = 0`
/// any null vector does. The result is primitive.
pub fn witness_direction_2x2(k: [i64; 4]) -> NullLatticeDirection {
    let signature = Signature { n1: 2, n2: 2 };
    let [k11, k12, k21, k22] = k;
    let (mut a, mut b) = (k12 - k21, k11 - k22);
    if a == 0 && b == 0 {
        (a, b) = (k12, k11);
    }
    let direction = if a == 0 && b == 0 {
        NullLatticeDirection::from_coords_unchecked(signature, vec![1, 0, 1, 0])
    } else {
        NullLatticeDirection::from_coords_unchecked(signature, vec![a, -b, b, -a]).primitive()
    };
    let freq = LatticeFrequency::from_coords(signature, k.to_vec()).expect("length 4");
    assert!(
        direction.is_witness_for(&freq),
        "(a,-b,b,-a) construction failed for {k:?}"
    );
    direction
}
