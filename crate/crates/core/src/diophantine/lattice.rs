use std::fmt;

use num_integer::Integer;

use super::DiophantineError;

/// Split `(n₁, n₂)` of `ℤ^{n₁+n₂}` into the positive and negative factor of
/// the flat Minkowski metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub n1: usize,
    pub n2: usize,
}

impl Signature {
    pub fn new(n1: usize, n2: usize) -> Result<Self, DiophantineError> {
        if n1 == 0 || n2 == 0 {
            return Err(DiophantineError::InvalidSignature { n1, n2 });
        }
        Ok(Self { n1, n2 })
    }

    pub fn dim(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn swapped(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

/// An integer frequency `(k, p) ∈ ℤ^{n₁} × ℤ^{n₂}`.
///
/// Ordered by signature, then lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeFrequency {
    signature: Signature,
    coords: Vec<i64>,
}

impl LatticeFrequency {
    pub fn new(signature: Signature, k: &[i64], p: &[i64]) -> Result<Self, DiophantineError> {
        if k.len() != signature.n1 || p.len() != signature.n2 {
            return Err(DiophantineError::LengthMismatch {
                signature,
                first: k.len(),
                second: p.len(),
            });
        }
        let mut coords = k.to_vec();
        coords.extend_from_slice(p);
        Ok(Self { signature, coords })
    }

    pub fn from_coords(signature: Signature, coords: Vec<i64>) -> Result<Self, DiophantineError> {
        if coords.len() != signature.dim() {
            return Err(DiophantineError::LengthMismatch {
                signature,
                first: coords.len().min(signature.n1),
                second: coords.len().saturating_sub(signature.n1),
            });
        }
        Ok(Self { signature, coords })
    }

    pub fn zero(signature: Signature) -> Self {
        Self {
            signature,
            coords: vec![0; signature.dim()],
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Positive-factor component `k`.
    pub fn k(&self) -> &[i64] {
        &self.coords[..self.signature.n1]
    }

    /// Negative-factor component `p` (the scalar `t` when `n₂ = 1`).
    pub fn p(&self) -> &[i64] {
        &self.coords[self.signature.n1..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn max_norm(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `(k, p) ↦ (p, k)` with the signature swapped accordingly.
    pub fn swap_factors(&self) -> Self {
        let mut coords = self.p().to_vec();
        coords.extend_from_slice(self.k());
        Self {
            signature: self.signature.swapped(),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            signature: self.signature,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// All frequencies with `max |entry| ≤ radius`, in lexicographic order.
    pub fn in_box(signature: Signature, radius: i64) -> impl Iterator<Item = LatticeFrequency> {
        BoxIter::new(signature.dim(), radius)
            .map(move |coords| LatticeFrequency { signature, coords })
    }
}

impl fmt::Display for LatticeFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", VecDisplay(self.k()), VecDisplay(self.p()))
    }
}

/// An integer null direction `(v, w)` with `|v|² = |w|² ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NullLatticeDirection {
    signature: Signature,
    coords: Vec<i64>,
}

impl NullLatticeDirection {
    pub fn new(signature: Signature, v: &[i64], w: &[i64]) -> Result<Self, DiophantineError> {
        if v.len() != signature.n1 || w.len() != signature.n2 {
            return Err(DiophantineError::LengthMismatch {
                signature,
                first: v.len(),
                second: w.len(),
            });
        }
        let mut coords = v.to_vec();
        coords.extend_from_slice(w);
        Self::from_coords(signature, coords)
    }

    pub fn from_coords(signature: Signature, coords: Vec<i64>) -> Result<Self, DiophantineError> {
        if coords.len() != signature.dim() {
            return Err(DiophantineError::LengthMismatch {
                signature,
                first: coords.len().min(signature.n1),
                second: coords.len().saturating_sub(signature.n1),
            });
        }
        let (v, w) = coords.split_at(signature.n1);
        let (nv, nw) = (norm_sqr(v), norm_sqr(w));
        if nv == 0 && nw == 0 {
            return Err(DiophantineError::ZeroDirection);
        }
        if nv != nw {
            return Err(DiophantineError::NotNull { coords });
        }
        Ok(Self { signature, coords })
    }

    /// Builds a direction without checking the null condition.
    pub(crate) fn from_coords_unchecked(signature: Signature, coords: Vec<i64>) -> Self {
        debug_assert_eq!(coords.len(), signature.dim());
        Self { signature, coords }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn v(&self) -> &[i64] {
        &self.coords[..self.signature.n1]
    }

    pub fn w(&self) -> &[i64] {
        &self.coords[self.signature.n1..]
    }

    /// The common value `|v|² = |w|²`.
    pub fn norm_sqr(&self) -> i64 {
        norm_sqr(self.v())
    }

    pub fn max_norm(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Euclidean pairing `v·k + w·p` with a frequency of the same signature.
    pub fn dot(&self, freq: &LatticeFrequency) -> i64 {
        debug_assert_eq!(self.signature, freq.signature());
        dot_i64(&self.coords, freq.coords())
    }

    /// Both defining conditions of a witness for `freq`: the direction is null
    /// and nonzero, and `v·k + w·p = 0`.
    pub fn is_witness_for(&self, freq: &LatticeFrequency) -> bool {
        self.signature == freq.signature()
            && is_null_nonzero(self.signature, &self.coords)
            && self.dot(freq) == 0
    }

    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.coords) == 1
    }

    /// Divides out the gcd of all entries (sign preserved).
    pub fn primitive(&self) -> Self {
        let g = gcd_all(&self.coords);
        Self {
            signature: self.signature,
            coords: self.coords.iter().map(|c| c / g).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            signature: self.signature,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// First nonzero entry is positive.
    pub fn is_lex_positive(&self) -> bool {
        first_nonzero_sign(&self.coords) > 0
    }

    /// Representative of `±self` whose first nonzero entry is positive.
    pub fn lex_positive(&self) -> Self {
        if self.is_lex_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Representative of `±self` whose negative-factor part `w` has a positive
    /// first nonzero entry (`s > 0` when `n₂ = 1`).
    pub fn future_pointing(&self) -> Self {
        if first_nonzero_sign(self.w()) > 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn swap_factors(&self) -> Self {
        let mut coords = self.w().to_vec();
        coords.extend_from_slice(self.v());
        Self {
            signature: self.signature.swapped(),
            coords,
        }
    }
}

impl fmt::Display for NullLatticeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", VecDisplay(self.v()), VecDisplay(self.w()))
    }
}

/// Formats an integer slice as `[a,b,c]`.
pub struct VecDisplay<'a>(pub &'a [i64]);

impl fmt::Display for VecDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Odometer over `[-radius, radius]^dim` in lexicographic order.
pub(crate) struct BoxIter {
    current: Option<Vec<i64>>,
    radius: i64,
}

impl BoxIter {
    pub(crate) fn new(dim: usize, radius: i64) -> Self {
        let current = (radius >= 0).then(|| vec![-radius; dim]);
        Self { current, radius }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let item = self.current.take()?;
        let mut next = item.clone();
        let mut advanced = false;
        for axis in (0..next.len()).rev() {
            if next[axis] < self.radius {
                next[axis] += 1;
                advanced = true;
                break;
            }
            next[axis] = -self.radius;
        }
        if advanced {
            self.current = Some(next);
        }
        Some(item)
    }
}

pub fn norm_sqr(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub(crate) fn is_null_nonzero(signature: Signature, coords: &[i64]) -> bool {
    let (v, w) = coords.split_at(signature.n1);
    let nv = norm_sqr(v);
    nv != 0 && nv == norm_sqr(w)
}

fn first_nonzero_sign(v: &[i64]) -> i64 {
    v.iter().find(|&&x| x != 0).map_or(0, |x| x.signum())
}

/// Exact integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u64) as i64;
    (r * r == n).then_some(r)
}
