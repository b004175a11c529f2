//! Brute-force lattice enumeration for the oracle scans.

use itertools::Itertools;

/// All nonzero integer vectors of length r with sup-norm at most bound.
/// Yields exactly (2 bound + 1)^r - 1 vectors.
pub fn lattice_box(r: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    assert!(r >= 1, "rank must be at least 1");
    assert!(bound >= 1, "radius must be at least 1");
    (0..r)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .filter(|v| v.iter().any(|&x| x != 0))
}
