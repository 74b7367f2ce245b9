//! Benchmark fixtures shared by the criterion targets.

use positroid::combinatorics::{parse_permutation, DecoratedPermutation};

/// Permutations exercised by every benchmark group.
pub fn fixtures() -> Vec<(&'static str, DecoratedPermutation)> {
    [
        "(135)(264)",
        "uniform:2,6",
        "uniform:3,6",
        "uniform:3,7",
        "uniform:4,8",
    ]
    .into_iter()
    .map(|s| (s, parse_permutation(s, None).expect("valid fixture")))
    .collect()
}
