//! Shared inputs for the benchmarks.

use sgkit::semigroup::Semigroup;

/// The full transformation monoid on three points, from its usual
/// generators (a 3-cycle, a transposition, and a rank-2 idempotent).
pub fn t3_generators() -> Vec<Vec<usize>> {
    vec![vec![1, 2, 0], vec![1, 0, 2], vec![0, 0, 2]]
}

/// The heaviest decomposition targets in the fixture corpus.
pub fn decomposition_targets() -> Vec<(&'static str, Semigroup)> {
    vec![
        ("b21", sgkit::fixtures::b21()),
        ("c32", sgkit::fixtures::c32()),
        ("k4", sgkit::fixtures::k4()),
    ]
}
