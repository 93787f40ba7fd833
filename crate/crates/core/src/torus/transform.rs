use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::poly::{exact, phase, unit_phase, Coefficient, ExactComplex, TrigPolynomial};
use super::TorusError;
use crate::diophantine::{
    enumerate_null_directions, k_membership, LatticeFrequency, Membership, NullLatticeDirection,
    Signature,
};

/// The closed null geodesic `t ↦ x + t(v, w)`, `t ∈ [0, 1]`, on the torus.
///
/// The direction may be non-primitive; the offset is reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedNullGeodesic {
    direction: NullLatticeDirection,
    offset: Vec<f64>,
}

impl ClosedNullGeodesic {
    pub fn new(direction: NullLatticeDirection, offset: &[f64]) -> Result<Self, TorusError> {
        let dim = direction.signature().dim();
        if offset.len() != dim {
            return Err(TorusError::OffsetLength {
                expected: dim,
                found: offset.len(),
            });
        }
        if offset.iter().any(|x| !x.is_finite()) {
            return Err(TorusError::NonFiniteOffset);
        }
        let offset = offset
            .iter()
            .map(|x| {
                let r = x.rem_euclid(1.0);
                if r >= 1.0 {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        Ok(Self { direction, offset })
    }

    pub fn direction(&self) -> &NullLatticeDirection {
        &self.direction
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }
}

fn check_signature(expected: Signature, found: Signature) -> Result<(), TorusError> {
    if expected == found {
        Ok(())
    } else {
        Err(TorusError::SignatureMismatch { expected, found })
    }
}

/// Fourier coefficients of `R_v f`: the restriction of `f̂` to the
/// frequencies with `(k, p)·(v, w) = 0` (Euclidean pairing). Exact for exact
/// coefficients.
pub fn transform_coefficients<C: Coefficient>(
    f: &TrigPolynomial<C>,
    direction: &NullLatticeDirection,
) -> Result<TrigPolynomial<C>, TorusError> {
    check_signature(f.signature(), direction.signature())?;
    Ok(f.filter(|freq| direction.dot(freq) == 0))
}

/// `∫₀¹ f(x + t(v, w)) dt = Σ_{(k,p)·(v,w) = 0} f̂(k, p) e^{2πi (k,p)·x}`.
pub fn transform<C: Coefficient>(
    f: &TrigPolynomial<C>,
    geodesic: &ClosedNullGeodesic,
) -> Result<Complex64, TorusError> {
    Ok(transform_coefficients(f, &geodesic.direction)?.evaluate(&geodesic.offset))
}

/// Minimum sample count accepted by [`numeric_geodesic_integral`]:
/// `2·max |(k,p)·(v,w)| + 1` over the support.
pub fn required_samples<C: Coefficient>(
    f: &TrigPolynomial<C>,
    direction: &NullLatticeDirection,
) -> usize {
    let max = f
        .support()
        .map(|freq| direction.dot(freq).unsigned_abs())
        .max()
        .unwrap_or(0);
    2 * max as usize + 1
}

/// Uniform-sample quadrature of `∫₀¹ f(x + t(v, w)) dt`.
///
/// Along the geodesic each term is `e^{2πi m t}` with the integer
/// `m = (k,p)·(v,w)`, so `N` equispaced samples are exact whenever `N > |m|`;
/// the stricter `N ≥ 2 max |m| + 1` is enforced.
pub fn numeric_geodesic_integral<C: Coefficient>(
    f: &TrigPolynomial<C>,
    geodesic: &ClosedNullGeodesic,
    samples: usize,
) -> Result<Complex64, TorusError> {
    check_signature(f.signature(), geodesic.direction.signature())?;
    let required = required_samples(f, &geodesic.direction);
    if samples < required.max(1) {
        return Err(TorusError::TooFewSamples { samples, required });
    }
    let terms: Vec<(Complex64, f64, i64)> = f
        .iter()
        .map(|(freq, c)| {
            (
                c.to_complex64(),
                phase(freq.coords(), &geodesic.offset),
                geodesic.direction.dot(freq),
            )
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    let n = samples as i64;
    for j in 0..n {
        // m·t_j reduced mod 1 in integer arithmetic
        let point: Complex64 = terms
            .iter()
            .map(|&(c, base, m)| c * unit_phase(base + (m * j).rem_euclid(n) as f64 / n as f64))
            .sum();
        total += point;
    }
    Ok(total / samples as f64)
}

/// Transform data `v ↦ R_v f` for a list of directions.
pub fn transform_data<C: Coefficient>(
    f: &TrigPolynomial<C>,
    directions: &[NullLatticeDirection],
) -> Result<BTreeMap<NullLatticeDirection, TrigPolynomial<C>>, TorusError> {
    directions
        .par_iter()
        .map(|d| transform_coefficients(f, d).map(|r| (d.clone(), r)))
        .collect::<Result<Vec<_>, _>>()
        .map(|pairs| pairs.into_iter().collect())
}

/// Output of [`recover_coefficients`].
#[derive(Debug, Clone, PartialEq)]
pub struct Recovery<C> {
    /// Every frequency of the box seen by some direction, with its
    /// coefficient (zero included).
    pub recovered: BTreeMap<LatticeFrequency, C>,
    /// Frequencies of the box orthogonal to none of the supplied directions.
    pub unrecoverable: Vec<LatticeFrequency>,
}

impl<C: Coefficient> Recovery<C> {
    /// The recovered coefficients as a polynomial (zeros dropped).
    pub fn polynomial(&self, signature: Signature) -> TrigPolynomial<C> {
        TrigPolynomial::from_terms(
            signature,
            self.recovered.iter().map(|(f, c)| (f.clone(), c.clone())),
        )
        .expect("frequencies share the signature")
    }
}

/// Reads off `f̂(k, p)` for every frequency of the box `max |entry| ≤
/// freq_box` from transform data.
///
/// A frequency is recovered when some supplied direction is orthogonal to it;
/// all such directions must report the same coefficient. Data whose support
/// is not orthogonal to its own direction is rejected as corrupted.
pub fn recover_coefficients<C: Coefficient>(
    signature: Signature,
    data: &BTreeMap<NullLatticeDirection, TrigPolynomial<C>>,
    freq_box: i64,
) -> Result<Recovery<C>, TorusError> {
    for (direction, values) in data {
        check_signature(signature, direction.signature())?;
        check_signature(signature, values.signature())?;
        if let Some(freq) = values.support().find(|freq| direction.dot(freq) != 0) {
            return Err(TorusError::InconsistentData { freq: freq.clone() });
        }
    }

    let freqs: Vec<LatticeFrequency> = LatticeFrequency::in_box(signature, freq_box).collect();
    let results: Vec<Result<(LatticeFrequency, Option<C>), TorusError>> = freqs
        .into_par_iter()
        .map(|freq| {
            let mut seen: Option<C> = None;
            for (direction, values) in data {
                if direction.dot(&freq) != 0 {
                    continue;
                }
                let c = values.coefficient(&freq);
                match &seen {
                    Some(previous) if *previous != c => {
                        return Err(TorusError::InconsistentData { freq });
                    }
                    Some(_) => {}
                    None => seen = Some(c),
                }
            }
            Ok((freq, seen))
        })
        .collect();

    let mut recovery = Recovery {
        recovered: BTreeMap::new(),
        unrecoverable: Vec::new(),
    };
    for result in results {
        match result? {
            (freq, Some(c)) => {
                recovery.recovered.insert(freq, c);
            }
            (freq, None) => recovery.unrecoverable.push(freq),
        }
    }
    Ok(recovery)
}

/// `e^{2πi freq·x}` for a frequency outside `K`, an element of the kernel of
/// the null transform. Only signatures with a one-dimensional factor have a
/// kernel.
pub fn kernel_witness(freq: &LatticeFrequency) -> Result<TrigPolynomial<ExactComplex>, TorusError> {
    let signature = freq.signature();
    if signature.n1.min(signature.n2) != 1 {
        return Err(TorusError::Injective { signature });
    }
    let report = k_membership(freq);
    match report.membership {
        Membership::Member => Err(TorusError::RecoverableFrequency {
            freq: freq.clone(),
            witness: report.witness.expect("members carry a witness"),
        }),
        Membership::Unknown => Err(TorusError::Undecided { freq: freq.clone() }),
        Membership::NotMember => Ok(TrigPolynomial::monomial(freq.clone(), exact(1, 0))),
    }
}

/// The first enumerated null direction (max-norm `≤ bound`) whose transform
/// of `f` is not identically zero, or `None` if all of them annihilate `f`.
pub fn first_detecting_direction<C: Coefficient>(
    f: &TrigPolynomial<C>,
    bound: u32,
) -> Option<NullLatticeDirection> {
    enumerate_null_directions(f.signature(), bound)
        .into_iter()
        .find(|d| f.support().any(|freq| d.dot(freq) == 0))
}

/// Whether every primitive null direction with max-norm `≤ bound` maps `f`
/// to the zero polynomial. Multiples of a primitive direction see the same
/// frequencies, so this covers all directions within the bound.
pub fn annihilated_up_to<C: Coefficient>(f: &TrigPolynomial<C>, bound: u32) -> bool {
    first_detecting_direction(f, bound).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n1: usize, n2: usize) -> Signature {
        Signature::new(n1, n2).unwrap()
    }

    fn freq(s: Signature, coords: &[i64]) -> LatticeFrequency {
        LatticeFrequency::from_coords(s, coords.to_vec()).unwrap()
    }

    fn dir(s: Signature, coords: &[i64]) -> NullLatticeDirection {
        NullLatticeDirection::from_coords(s, coords.to_vec()).unwrap()
    }

    #[test]
    fn transform_examples() {
        let s = sig(1, 1);
        let f = TrigPolynomial::monomial(freq(s, &[1, -1]), exact(1, 0));
        let g = ClosedNullGeodesic::new(dir(s, &[1, 1]), &[0.0, 0.0]).unwrap();
        assert!((transform(&f, &g).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let f = TrigPolynomial::monomial(freq(s, &[1, 0]), exact(1, 0));
        let g = ClosedNullGeodesic::new(dir(s, &[1, 1]), &[0.3, 0.7]).unwrap();
        assert_eq!(transform(&f, &g).unwrap(), Complex64::new(0.0, 0.0));

        let f = TrigPolynomial::monomial(freq(s, &[0, 0]), exact(3, 0));
        let g = ClosedNullGeodesic::new(dir(s, &[1, -1]), &[0.1, 0.2]).unwrap();
        assert!((transform(&f, &g).unwrap() - Complex64::new(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coefficient_selection() {
        let s = sig(1, 1);
        let f = TrigPolynomial::from_terms(
            s,
            [
                (freq(s, &[1, -1]), exact(1, 0)),
                (freq(s, &[1, 0]), exact(2, 0)),
            ],
        )
        .unwrap();
        let r = transform_coefficients(&f, &dir(s, &[1, 1])).unwrap();
        assert_eq!(
            r.support().cloned().collect::<Vec<_>>(),
            vec![freq(s, &[1, -1])]
        );
        assert!(
            transform_coefficients(&TrigPolynomial::<ExactComplex>::zero(s), &dir(s, &[1, 1]))
                .unwrap()
                .is_zero()
        );
        let f = TrigPolynomial::monomial(freq(s, &[1, 1]), exact(1, 0));
        assert!(transform_coefficients(&f, &dir(s, &[1, 1]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn signature_mismatch() {
        let f = TrigPolynomial::monomial(freq(sig(2, 1), &[0, 0, 0]), exact(1, 0));
        assert!(matches!(
            transform_coefficients(&f, &dir(sig(1, 1), &[1, 1])),
            Err(TorusError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn quadrature_examples() {
        let s = sig(1, 1);
        let g = ClosedNullGeodesic::new(dir(s, &[1, 1]), &[0.4, 0.9]).unwrap();
        let f = TrigPolynomial::monomial(freq(s, &[0, 0]), exact(3, 0));
        let z = numeric_geodesic_integral(&f, &g, 4).unwrap();
        assert!((z - Complex64::new(3.0, 0.0)).norm() < 1e-14);
        let f = TrigPolynomial::monomial(freq(s, &[1, 0]), exact(1, 0));
        let z = numeric_geodesic_integral(&f, &g, 8).unwrap();
        assert!(z.norm() < 1e-12);
        assert_eq!(
            numeric_geodesic_integral(&f, &g, 2),
            Err(TorusError::TooFewSamples {
                samples: 2,
                required: 3
            })
        );
    }

    #[test]
    fn offsets_wrap_into_unit_cube() {
        let g = ClosedNullGeodesic::new(dir(sig(1, 1), &[1, 1]), &[1.25, -0.25]).unwrap();
        assert_eq!(g.offset(), &[0.25, 0.75]);
        assert!(ClosedNullGeodesic::new(dir(sig(1, 1), &[1, 1]), &[0.0]).is_err());
        assert!(ClosedNullGeodesic::new(dir(sig(1, 1), &[1, 1]), &[f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn recovery_examples() {
        let s = sig(1, 1);
        let f = TrigPolynomial::monomial(freq(s, &[1, -1]), exact(1, 0));
        let data = transform_data(&f, &enumerate_null_directions(s, 1)).unwrap();
        let rec = recover_coefficients(s, &data, 2).unwrap();
        assert_eq!(rec.recovered[&freq(s, &[1, -1])], exact(1, 0));
        assert!(rec.unrecoverable.contains(&freq(s, &[1, 0])));

        let f = TrigPolynomial::monomial(freq(s, &[1, 0]), exact(1, 0));
        let data = transform_data(&f, &enumerate_null_directions(s, 7)).unwrap();
        let rec = recover_coefficients(s, &data, 2).unwrap();
        assert!(rec.unrecoverable.contains(&freq(s, &[1, 0])));
        assert!(rec.polynomial(s).is_zero());

        let rec = recover_coefficients::<ExactComplex>(s, &BTreeMap::new(), 2).unwrap();
        assert!(rec.recovered.is_empty());
        assert_eq!(rec.unrecoverable.len(), 25);
    }

    #[test]
    fn corrupted_data_is_rejected() {
        let s = sig(1, 1);
        let f = TrigPolynomial::monomial(freq(s, &[1, -1]), exact(1, 0));
        let mut data = transform_data(&f, &enumerate_null_directions(s, 1)).unwrap();
        // (1,1) sees (1,-1); claim a different coefficient via a second copy
        data.insert(
            dir(s, &[2, 2]),
            TrigPolynomial::monomial(freq(s, &[1, -1]), exact(5, 0)),
        );
        assert!(matches!(
            recover_coefficients(s, &data, 2),
            Err(TorusError::InconsistentData { .. })
        ));
        // a datum with a frequency its direction cannot see
        let mut data = BTreeMap::new();
        data.insert(
            dir(s, &[1, 1]),
            TrigPolynomial::monomial(freq(s, &[1, 0]), exact(1, 0)),
        );
        assert!(matches!(
            recover_coefficients(s, &data, 2),
            Err(TorusError::InconsistentData { .. })
        ));
    }

    #[test]
    fn kernel_witness_examples() {
        let w = kernel_witness(&freq(sig(1, 1), &[1, 0])).unwrap();
        assert!(annihilated_up_to(&w, 30));
        let w = kernel_witness(&freq(sig(2, 1), &[1, 1, 0])).unwrap();
        assert!(annihilated_up_to(&w, 30));
        assert!(matches!(
            kernel_witness(&freq(sig(2, 2), &[1, 0, 0, 0])),
            Err(TorusError::Injective { .. })
        ));
        assert!(matches!(
            kernel_witness(&freq(sig(2, 1), &[3, 4, 0])),
            Err(TorusError::RecoverableFrequency { .. })
        ));
    }
}
