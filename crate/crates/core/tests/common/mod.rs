#![allow(dead_code)]

use cubedom::LevelGraphSpec;

/// Domination numbers computed by the brute-force oracle (n <= 6) or, where
/// brute force is out of reach, by branch and bound cross-checked against an
/// external integer-programming solve.
pub const FROZEN_GAMMA: &[((u32, u32, u32), u64)] = &[
    ((4, 3, 2), 3),
    ((5, 3, 2), 6),
    ((5, 4, 2), 3),
    ((5, 4, 3), 4),
    ((6, 3, 2), 9),
    ((6, 4, 2), 6),
    ((6, 4, 3), 9),
    ((6, 5, 2), 3),
    ((6, 5, 3), 4),
    ((6, 5, 4), 5),
    ((7, 3, 2), 13),
    ((7, 4, 2), 9),
    ((7, 5, 2), 6),
    ((8, 3, 2), 18),
    ((8, 5, 2), 8),
    ((8, 6, 2), 6),
    ((9, 6, 2), 7),
    ((9, 7, 2), 6),
];

pub fn frozen(n: u32, k: u32, l: u32) -> Option<u64> {
    FROZEN_GAMMA.iter().find(|(key, _)| *key == (n, k, l)).map(|(_, g)| *g)
}

/// Every valid `(n, k, l)` with `n <= max_n`.
pub fn all_specs(max_n: u32) -> Vec<LevelGraphSpec> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 2..n {
            for l in 1..k {
                out.push(LevelGraphSpec::new(n, k, l).unwrap());
            }
        }
    }
    out
}

/// `all_specs(8)` minus the three `n = 8`, `l >= 3` graphs whose optimality
/// proof does not finish within the default node budget.
pub fn solvable_specs() -> Vec<LevelGraphSpec> {
    all_specs(8)
        .into_iter()
        .filter(|s| !matches!((s.n(), s.k(), s.l()), (8, 4, 3) | (8, 5, 3) | (8, 5, 4)))
        .collect()
}
