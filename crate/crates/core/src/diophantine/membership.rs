use std::fmt;

use super::lattice::{norm_sqr, NullLatticeDirection, Signature};
use super::search::{shared_table, DEFAULT_SEARCH_BOUND};
use super::solve::{solve_system_2d, solve_system_3d, witness_direction_2x2};
use super::LatticeFrequency;

/// Tri-state answer to "is this frequency recoverable".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    Member,
    NotMember,
    /// No witness within the search bound and no closed form available.
    Unknown,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Member => "true",
            Self::NotMember => "false",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MembershipMethod {
    /// `(a, −b, b, −a)` on a 2×2 sub-block, both factors of dimension ≥ 2.
    Constructive,
    /// `|t| = |k|` in signature `(1, 1)`.
    Lemma1d,
    /// `√(|k|² − t²) ∈ ℕ` in signature `(2, 1)`.
    Lemma2d,
    /// `|k|² − t²` a sum of two squares in signature `(3, 1)`.
    Lemma3d,
    /// `|t| > |k|` (never a member) or `|t| = |k|` (always a member).
    Sandwich,
    BruteForce,
}

impl MembershipMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Constructive => "constructive",
            Self::Lemma1d => "lemma-1d",
            Self::Lemma2d => "lemma-2d",
            Self::Lemma3d => "lemma-3d",
            Self::Sandwich => "sandwich",
            Self::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for MembershipMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub membership: Membership,
    pub witness: Option<NullLatticeDirection>,
    pub method: MembershipMethod,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.membership == Membership::Member
    }

    fn member(witness: NullLatticeDirection, method: MembershipMethod) -> Self {
        Self {
            membership: Membership::Member,
            witness: Some(witness),
            method,
        }
    }

    fn not_member(method: MembershipMethod) -> Self {
        Self {
            membership: Membership::NotMember,
            witness: None,
            method,
        }
    }

    fn swap_factors(self) -> Self {
        Self {
            witness: self.witness.map(|w| w.swap_factors()),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipConfig {
    /// Max-norm bound for the brute-force branch (one time dimension and
    /// four or more space dimensions).
    pub search_bound: u32,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        Self {
            search_bound: DEFAULT_SEARCH_BOUND,
        }
    }
}

/// Decides whether `freq ∈ K`, i.e. whether some nonzero integer null
/// direction is orthogonal to it, with the default configuration.
pub fn k_membership(freq: &LatticeFrequency) -> MembershipReport {
    k_membership_with(freq, &MembershipConfig::default())
}

pub fn k_membership_with(freq: &LatticeFrequency, config: &MembershipConfig) -> MembershipReport {
    let signature = freq.signature();
    if signature.n1 >= 2 && signature.n2 >= 2 {
        let (k, p) = (freq.k(), freq.p());
        let block = witness_direction_2x2([k[0], k[1], p[0], p[1]]);
        let mut coords = vec![0; signature.dim()];
        coords[..2].copy_from_slice(block.v());
        coords[signature.n1..signature.n1 + 2].copy_from_slice(block.w());
        let witness = NullLatticeDirection::from_coords_unchecked(signature, coords);
        debug_assert!(witness.is_witness_for(freq));
        return MembershipReport::member(witness, MembershipMethod::Constructive);
    }
    if signature.n2 == 1 {
        one_time_dimension(freq, config)
    } else {
        one_time_dimension(&freq.swap_factors(), config).swap_factors()
    }
}

/// Signature `(n, 1)`.
fn one_time_dimension(freq: &LatticeFrequency, config: &MembershipConfig) -> MembershipReport {
    let signature = freq.signature();
    let k = freq.k();
    let t = freq.p()[0];
    match signature.n1 {
        1 => {
            if k[0].abs() == t.abs() {
                MembershipReport::member(diagonal_witness(freq), MembershipMethod::Lemma1d)
            } else {
                MembershipReport::not_member(MembershipMethod::Lemma1d)
            }
        }
        2 => match solve_system_2d(k[0], k[1], t) {
            Some(s) => MembershipReport::member(s.direction, MembershipMethod::Lemma2d),
            None => MembershipReport::not_member(MembershipMethod::Lemma2d),
        },
        3 => match solve_system_3d(k[0], k[1], k[2], t) {
            Some(s) => MembershipReport::member(s.direction, MembershipMethod::Lemma3d),
            None => MembershipReport::not_member(MembershipMethod::Lemma3d),
        },
        _ => {
            let (space, time) = (norm_sqr(k), t * t);
            if time > space {
                return MembershipReport::not_member(MembershipMethod::Sandwich);
            }
            if time == space {
                return MembershipReport::member(
                    diagonal_witness(freq),
                    MembershipMethod::Sandwich,
                );
            }
            match shared_table(signature, config.search_bound).first_witness(freq) {
                Some(w) => MembershipReport::member(w, MembershipMethod::BruteForce),
                None => MembershipReport {
                    membership: Membership::Unknown,
                    witness: None,
                    method: MembershipMethod::BruteForce,
                },
            }
        }
    }
}

/// `(k, −t)` made primitive with `s > 0`, for `|t| = |k|`; the zero frequency
/// gets `(e₁, 1)`.
fn diagonal_witness(freq: &LatticeFrequency) -> NullLatticeDirection {
    let signature: Signature = freq.signature();
    if freq.is_zero() {
        let mut coords = vec![0; signature.dim()];
        coords[0] = 1;
        coords[signature.n1] = 1;
        return NullLatticeDirection::from_coords_unchecked(signature, coords);
    }
    let mut coords = freq.k().to_vec();
    coords.push(-freq.p()[0]);
    NullLatticeDirection::from_coords_unchecked(signature, coords)
        .primitive()
        .future_pointing()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn freq(n1: usize, n2: usize, coords: &[i64]) -> LatticeFrequency {
        LatticeFrequency::from_coords(Signature::new(n1, n2).unwrap(), coords.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let r = k_membership(&freq(2, 2, &[1, 2, 3, 4]));
        assert_eq!(r.membership, Membership::Member);
        assert_eq!(r.witness.unwrap().coords(), &[-1, 3, -3, 1]);
        assert_eq!(r.method, MembershipMethod::Constructive);

        let r = k_membership(&freq(2, 1, &[3, 4, 0]));
        assert_eq!(r.membership, Membership::Member);
        assert_eq!(r.witness.unwrap().coords(), &[4, -3, 5]);
        assert_eq!(r.method, MembershipMethod::Lemma2d);

        let r = k_membership(&freq(1, 1, &[1, 0]));
        assert_eq!(r.membership, Membership::NotMember);
        assert_eq!(r.witness, None);
        assert_eq!(r.method, MembershipMethod::Lemma1d);
    }

    #[test]
    fn larger_signatures_embed_the_block() {
        let f = freq(3, 2, &[5, -1, 7, 2, 9]);
        let r = k_membership(&f);
        assert!(r.witness.unwrap().is_witness_for(&f));
    }

    #[test]
    fn swapped_signature_uses_the_same_lemma() {
        let f = freq(1, 2, &[0, 3, 4]);
        let r = k_membership(&f);
        assert_eq!(r.method, MembershipMethod::Lemma2d);
        let w = r.witness.unwrap();
        assert!(w.is_witness_for(&f));
        assert_eq!(w.signature(), f.signature());
    }

    #[test]
    fn four_space_dimensions() {
        let config = MembershipConfig { search_bound: 10 };
        let r = k_membership_with(&freq(4, 1, &[1, 0, 0, 0, 2]), &config);
        assert_eq!(
            (r.membership, r.method),
            (Membership::NotMember, MembershipMethod::Sandwich)
        );
        let f = freq(4, 1, &[1, 1, 1, 1, 2]);
        let r = k_membership_with(&f, &config);
        assert_eq!(
            (r.membership, r.method),
            (Membership::Member, MembershipMethod::Sandwich)
        );
        assert!(r.witness.unwrap().is_witness_for(&f));
        let f = freq(4, 1, &[2, 1, 0, 0, 1]);
        let r = k_membership_with(&f, &config);
        assert_eq!(
            (r.membership, r.method),
            (Membership::Member, MembershipMethod::BruteForce)
        );
        assert!(r.witness.unwrap().is_witness_for(&f));
    }

    #[test]
    fn zero_frequency_is_always_a_member() {
        for (n1, n2) in [(1, 1), (2, 1), (3, 1), (5, 1), (1, 4), (2, 3)] {
            let f = LatticeFrequency::zero(Signature::new(n1, n2).unwrap());
            let r = k_membership(&f);
            assert!(r.is_member());
            assert!(r.witness.unwrap().is_witness_for(&f));
        }
    }
}
