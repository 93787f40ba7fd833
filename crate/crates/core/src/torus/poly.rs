use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::TorusError;
use crate::diophantine::{LatticeFrequency, Signature};

/// Complex number with exact rational real and imaginary parts.
pub type ExactComplex = Complex<BigRational>;

/// Scalar type of Fourier coefficients: floating complex or exact rational
/// complex.
pub trait Coefficient:
    Clone + PartialEq + Debug + Zero + Add<Output = Self> + Mul<Output = Self> + Send + Sync + 'static
{
    fn to_complex64(&self) -> Complex64;
}

impl Coefficient for Complex64 {
    fn to_complex64(&self) -> Complex64 {
        *self
    }
}

impl Coefficient for ExactComplex {
    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// `re + i·im` from integer parts.
pub fn exact(re: i64, im: i64) -> ExactComplex {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// `(re_num/re_den) + i·(im_num/im_den)`.
pub fn exact_ratio(re: (i64, i64), im: (i64, i64)) -> ExactComplex {
    Complex::new(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

/// A trigonometric polynomial `f(x) = Σ f̂(k,p) e^{2πi (k,p)·x}` on the torus
/// `ℝ^{n₁+n₂}/ℤ^{n₁+n₂}`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial<C = Complex64> {
    signature: Signature,
    coeffs: BTreeMap<LatticeFrequency, C>,
}

impl<C: Coefficient> TrigPolynomial<C> {
    pub fn zero(signature: Signature) -> Self {
        Self {
            signature,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(freq: LatticeFrequency, coefficient: C) -> Self {
        let mut out = Self::zero(freq.signature());
        out.add_term(freq, coefficient)
            .expect("signature taken from the frequency");
        out
    }

    pub fn from_terms(
        signature: Signature,
        terms: impl IntoIterator<Item = (LatticeFrequency, C)>,
    ) -> Result<Self, TorusError> {
        let mut out = Self::zero(signature);
        for (freq, c) in terms {
            out.add_term(freq, c)?;
        }
        Ok(out)
    }

    /// Adds `coefficient · e^{2πi freq·x}`, dropping the term if it cancels.
    pub fn add_term(&mut self, freq: LatticeFrequency, coefficient: C) -> Result<(), TorusError> {
        if freq.signature() != self.signature {
            return Err(TorusError::SignatureMismatch {
                expected: self.signature,
                found: freq.signature(),
            });
        }
        let sum = match self.coeffs.remove(&freq) {
            Some(existing) => existing + coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.coeffs.insert(freq, sum);
        }
        Ok(())
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn coefficient(&self, freq: &LatticeFrequency) -> C {
        self.coeffs.get(freq).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeFrequency, &C)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeFrequency> {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.signature);
        for (freq, c) in &self.coeffs {
            out.add_term(freq.clone(), c.clone() * factor.clone())
                .expect("same signature");
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, TorusError> {
        let mut out = self.clone();
        for (freq, c) in &other.coeffs {
            out.add_term(freq.clone(), c.clone())?;
        }
        Ok(out)
    }

    /// Keeps only the terms whose frequency satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&LatticeFrequency) -> bool) -> Self {
        Self {
            signature: self.signature,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(freq, _)| keep(freq))
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }

    /// Pointwise value at `x ∈ ℝ^{n₁+n₂}` (floating evaluation).
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(freq, c)| c.to_complex64() * unit_phase(phase(freq.coords(), x)))
            .sum()
    }

    pub fn to_complex64(&self) -> TrigPolynomial<Complex64> {
        TrigPolynomial {
            signature: self.signature,
            coeffs: self
                .coeffs
                .iter()
                .map(|(f, c)| (f.clone(), c.to_complex64()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `x ↦ f(x + shift)`: coefficients pick up `e^{2πi freq·shift}`.
    pub fn translate(&self, shift: &[f64]) -> TrigPolynomial<Complex64> {
        TrigPolynomial {
            signature: self.signature,
            coeffs: self
                .coeffs
                .iter()
                .map(|(f, c)| {
                    (
                        f.clone(),
                        c.to_complex64() * unit_phase(phase(f.coords(), shift)),
                    )
                })
                .collect(),
        }
    }
}

pub(crate) fn phase(freq: &[i64], x: &[f64]) -> f64 {
    freq.iter().zip(x).map(|(&k, &xi)| k as f64 * xi).sum()
}

/// `e^{2πi θ}`, reducing `θ` mod 1 first to keep the argument small.
pub(crate) fn unit_phase(theta: f64) -> Complex64 {
    let reduced = theta - theta.round();
    Complex64::from_polar(1.0, 2.0 * PI * reduced)
}
