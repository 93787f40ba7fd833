//! Enumeration of primitive null lattice directions and bounded witness
//! search.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::lattice::{gcd_all, isqrt, norm_sqr, BoxIter, NullLatticeDirection, Signature};
use super::LatticeFrequency;

/// Default max-norm bound for witness searches.
pub const DEFAULT_SEARCH_BOUND: u32 = 60;

/// All primitive null directions of one signature with max-norm `≤ bound`,
/// one per `±` pair (first nonzero entry positive).
///
/// Directions are sorted by max-norm, then lexicographically descending, and
/// stored flat for fast scanning.
#[derive(Debug, Clone)]
pub struct NullDirectionTable {
    signature: Signature,
    bound: u32,
    flat: Vec<i64>,
}

impl NullDirectionTable {
    pub fn build(signature: Signature, bound: u32) -> Self {
        let directions = enumerate_null_directions(signature, bound);
        let flat = directions
            .iter()
            .flat_map(|d| d.coords().to_vec())
            .collect();
        Self {
            signature,
            bound,
            flat,
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.flat.len() / self.signature.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NullLatticeDirection> + '_ {
        self.flat
            .chunks_exact(self.signature.dim())
            .map(|c| NullLatticeDirection::from_coords_unchecked(self.signature, c.to_vec()))
    }

    /// First direction in table order orthogonal to `freq`.
    pub fn first_witness(&self, freq: &LatticeFrequency) -> Option<NullLatticeDirection> {
        if freq.signature() != self.signature {
            return None;
        }
        let k = freq.coords();
        self.flat
            .chunks_exact(k.len())
            .find(|d| d.iter().zip(k).map(|(a, b)| a * b).sum::<i64>() == 0)
            .map(|d| NullLatticeDirection::from_coords_unchecked(self.signature, d.to_vec()))
    }

    /// Every direction in the table orthogonal to `freq`.
    pub fn witnesses<'a>(
        &'a self,
        freq: &'a LatticeFrequency,
    ) -> impl Iterator<Item = NullLatticeDirection> + 'a {
        let k = freq.coords();
        self.flat
            .chunks_exact(self.signature.dim())
            .filter(move |d| {
                freq.signature() == self.signature
                    && d.iter().zip(k).map(|(a, b)| a * b).sum::<i64>() == 0
            })
            .map(|d| NullLatticeDirection::from_coords_unchecked(self.signature, d.to_vec()))
    }
}

type TableCache = HashMap<(Signature, u32), Arc<NullDirectionTable>>;

static TABLES: Lazy<Mutex<TableCache>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Process-wide cached table for `(signature, bound)`.
pub fn shared_table(signature: Signature, bound: u32) -> Arc<NullDirectionTable> {
    if let Some(table) = TABLES.lock().expect("table cache").get(&(signature, bound)) {
        return Arc::clone(table);
    }
    let table = Arc::new(NullDirectionTable::build(signature, bound));
    TABLES
        .lock()
        .expect("table cache")
        .entry((signature, bound))
        .or_insert(table)
        .clone()
}

/// Searches for a null direction `(v, w)` with max-norm `≤ bound` orthogonal
/// to `freq`.
///
/// Every witness scales down to a primitive one of no larger max-norm, so
/// scanning primitive directions is complete for the bound. The scan order is
/// the table order (smallest max-norm first, then lexicographically
/// descending), making the returned witness deterministic. `None` only means
/// nothing was found within the bound.
pub fn brute_force_null_orthogonal(
    freq: &LatticeFrequency,
    bound: u32,
) -> Option<NullLatticeDirection> {
    shared_table(freq.signature(), bound).first_witness(freq)
}

/// All primitive integer null directions with max-norm `≤ bound`, each up to
/// overall sign (first nonzero entry positive), sorted by max-norm and then
/// lexicographically descending.
pub fn enumerate_null_directions(signature: Signature, bound: u32) -> Vec<NullLatticeDirection> {
    let bound = bound as i64;
    if bound < 1 {
        return Vec::new();
    }
    // Enumerate the cheaper factor in full, then solve the other factor's last
    // coordinate against the norms that actually occur.
    let first_is_small = signature.n1 <= signature.n2;
    let (small_dim, large_dim) = if first_is_small {
        (signature.n1, signature.n2)
    } else {
        (signature.n2, signature.n1)
    };
    let small = vectors_by_norm(small_dim, bound);
    let large = vectors_with_norms(large_dim, bound, &small);

    let mut out = Vec::new();
    for (norm, large_vectors) in &large {
        if *norm == 0 {
            continue;
        }
        let Some(small_vectors) = small.get(norm) else {
            continue;
        };
        for a in small_vectors {
            for b in large_vectors {
                let coords: Vec<i64> = if first_is_small {
                    a.iter().chain(b).copied().collect()
                } else {
                    b.iter().chain(a).copied().collect()
                };
                let leading = coords.iter().find(|&&c| c != 0).copied().unwrap_or(0);
                if leading > 0 && gcd_all(&coords) == 1 {
                    out.push(NullLatticeDirection::from_coords_unchecked(
                        signature, coords,
                    ));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.max_norm()
            .cmp(&b.max_norm())
            .then_with(|| b.coords().cmp(a.coords()))
    });
    out
}

fn vectors_by_norm(dim: usize, bound: i64) -> BTreeMap<i64, Vec<Vec<i64>>> {
    let mut map: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for v in BoxIter::new(dim, bound) {
        map.entry(norm_sqr(&v)).or_default().push(v);
    }
    map
}

fn vectors_with_norms(
    dim: usize,
    bound: i64,
    targets: &BTreeMap<i64, Vec<Vec<i64>>>,
) -> BTreeMap<i64, Vec<Vec<i64>>> {
    let mut map: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let Some(&max_norm) = targets.keys().next_back() else {
        return map;
    };
    for prefix in BoxIter::new(dim - 1, bound) {
        let partial = norm_sqr(&prefix);
        if partial > max_norm {
            continue;
        }
        for &norm in targets.range(partial..).map(|(n, _)| n) {
            let rest = (norm - partial) as u64;
            let last = isqrt(rest) as i64;
            if last > bound {
                break;
            }
            if (last * last) as u64 != rest {
                continue;
            }
            for value in if last == 0 {
                vec![0]
            } else {
                vec![-last, last]
            } {
                let mut v = prefix.clone();
                v.push(value);
                map.entry(norm).or_default().push(v);
            }
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n1: usize, n2: usize) -> Signature {
        Signature::new(n1, n2).unwrap()
    }

    fn coords(list: &[NullLatticeDirection]) -> Vec<Vec<i64>> {
        list.iter().map(|d| d.coords().to_vec()).collect()
    }

    /// Naive oracle: every vector in the box, filtered.
    fn naive(signature: Signature, bound: i64) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = BoxIter::new(signature.dim(), bound)
            .filter(|c| {
                let (v, w) = c.split_at(signature.n1);
                let n = norm_sqr(v);
                n != 0
                    && n == norm_sqr(w)
                    && gcd_all(c) == 1
                    && c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
            })
            .collect();
        out.sort_by(|a, b| {
            let ma = a.iter().map(|x| x.abs()).max();
            let mb = b.iter().map(|x| x.abs()).max();
            ma.cmp(&mb).then_with(|| b.cmp(a))
        });
        out
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            coords(&enumerate_null_directions(sig(1, 1), 1)),
            vec![vec![1, 1], vec![1, -1]]
        );
        assert_eq!(
            coords(&enumerate_null_directions(sig(1, 1), 3)),
            vec![vec![1, 1], vec![1, -1]]
        );
        let d = coords(&enumerate_null_directions(sig(2, 1), 5));
        assert!(d.contains(&vec![3, 4, 5]));
        assert!(d.contains(&vec![4, 3, 5]));
        assert!(enumerate_null_directions(sig(2, 1), 0).is_empty());
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for (s, b) in [
            (sig(2, 1), 7),
            (sig(1, 2), 7),
            (sig(2, 2), 4),
            (sig(3, 1), 5),
            (sig(1, 3), 4),
        ] {
            assert_eq!(
                coords(&enumerate_null_directions(s, b as u32)),
                naive(s, b),
                "signature {s}"
            );
        }
    }

    #[test]
    fn brute_force_examples() {
        let f = LatticeFrequency::new(sig(1, 1), &[1], &[1]).unwrap();
        assert_eq!(
            brute_force_null_orthogonal(&f, 1).unwrap().coords(),
            &[1, -1]
        );
        let f = LatticeFrequency::new(sig(1, 1), &[2], &[1]).unwrap();
        assert_eq!(brute_force_null_orthogonal(&f, 50), None);
        let f = LatticeFrequency::new(sig(2, 1), &[3, 4], &[0]).unwrap();
        assert_eq!(
            brute_force_null_orthogonal(&f, 10).unwrap().coords(),
            &[4, -3, 5]
        );
    }

    #[test]
    fn table_is_cached_and_scans() {
        let a = shared_table(sig(2, 1), 9);
        let b = shared_table(sig(2, 1), 9);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.len(), a.iter().count());
        let f = LatticeFrequency::new(sig(2, 1), &[0, 0], &[0]).unwrap();
        assert_eq!(a.witnesses(&f).count(), a.len());
        let wrong = LatticeFrequency::new(sig(1, 2), &[0], &[0, 0]).unwrap();
        assert_eq!(a.first_witness(&wrong), None);
    }
}
