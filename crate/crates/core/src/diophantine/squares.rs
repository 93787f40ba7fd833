//! Sums of two, three and more integer squares.

use super::lattice::isqrt;

/// Balanced decomposition `n = x² + y²` with `0 ≤ x ≤ y` and `x` as large as
/// possible, or `None` when no decomposition exists.
///
/// `25 ↦ (3, 4)`, `0 ↦ (0, 0)`.
pub fn sum_of_two_squares(n: u64) -> Option<(u64, u64)> {
    let mut x = isqrt(n / 2);
    loop {
        let rest = n - x * x;
        let y = isqrt(rest);
        if y * y == rest {
            return Some((x, y));
        }
        if x == 0 {
            return None;
        }
        x -= 1;
    }
}

/// Decides `n = x² + y²` from the factorization: every prime `≡ 3 (mod 4)`
/// must occur to an even power.
pub fn is_sum_of_two_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    factorize(n)
        .into_iter()
        .all(|(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// Legendre's criterion: `n` is a sum of three squares unless
/// `n = 4^a (8b + 7)`.
pub fn is_sum_of_three_squares(mut n: u64) -> bool {
    if n == 0 {
        return true;
    }
    while n.is_multiple_of(4) {
        n /= 4;
    }
    n % 8 != 7
}

/// A decomposition `n = x² + y² + z²` with `x ≤ y ≤ z`, found by search.
pub fn sum_of_three_squares(n: u64) -> Option<(u64, u64, u64)> {
    let mut x = 0;
    while 3 * x * x <= n {
        if let Some((y, z)) = sum_of_two_squares(n - x * x) {
            if y >= x {
                return Some((x, y, z));
            }
        }
        x += 1;
    }
    None
}

/// Whether `n` is a sum of `count` integer squares (zeros allowed).
///
/// Closed forms for `count ≤ 3`; every natural number is a sum of four
/// squares.
pub fn is_sum_of_squares(n: u64, count: usize) -> bool {
    match count {
        0 => n == 0,
        1 => isqrt(n).pow(2) == n,
        2 => is_sum_of_two_squares(n),
        3 => is_sum_of_three_squares(n),
        _ => true,
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive_two(n: u64) -> bool {
        (0..=isqrt(n)).any(|x| (0..=isqrt(n)).any(|y| x * x + y * y == n))
    }

    fn exhaustive_three(n: u64) -> bool {
        let r = isqrt(n);
        (0..=r).any(|x| (x..=r).any(|y| (y..=r).any(|z| x * x + y * y + z * z == n)))
    }

    #[test]
    fn two_square_examples() {
        assert_eq!(sum_of_two_squares(0), Some((0, 0)));
        assert_eq!(sum_of_two_squares(25), Some((3, 4)));
        assert_eq!(sum_of_two_squares(21), None);
        assert!(!is_sum_of_two_squares(21));
        assert!(is_sum_of_two_squares(0));
        assert_eq!(sum_of_two_squares(1), Some((0, 1)));
        assert_eq!(sum_of_two_squares(2), Some((1, 1)));
    }

    #[test]
    fn three_square_examples() {
        assert!(!is_sum_of_three_squares(7));
        assert!(is_sum_of_three_squares(6));
        assert!(!is_sum_of_three_squares(28));
        assert_eq!(sum_of_three_squares(6), Some((1, 1, 2)));
        assert_eq!(sum_of_three_squares(28), None);
    }

    #[test]
    fn agree_with_exhaustive_search_small() {
        for n in 0..=600 {
            let two = exhaustive_two(n);
            assert_eq!(is_sum_of_two_squares(n), two, "n = {n}");
            assert_eq!(sum_of_two_squares(n).is_some(), two, "n = {n}");
            if let Some((x, y)) = sum_of_two_squares(n) {
                assert_eq!(x * x + y * y, n);
                assert!(x <= y);
            }
            let three = exhaustive_three(n);
            assert_eq!(is_sum_of_three_squares(n), three, "n = {n}");
            assert_eq!(sum_of_three_squares(n).is_some(), three, "n = {n}");
        }
    }

    #[test]
    fn general_counts() {
        assert!(is_sum_of_squares(0, 0));
        assert!(!is_sum_of_squares(1, 0));
        assert!(is_sum_of_squares(49, 1));
        assert!(!is_sum_of_squares(50, 1));
        assert!(is_sum_of_squares(7, 4));
        assert!(is_sum_of_squares(7 * 4 * 4, 5));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
