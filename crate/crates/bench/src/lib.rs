//! Shared fixtures for the criterion benches.

use k3hilb::BigInt;

/// Non-square discriminants with long continued-fraction periods.
pub fn hard_discriminants() -> Vec<BigInt> {
    [109u32, 181, 421, 661, 1021, 1621]
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// `(n, d)` pairs whose case-B equation is solvable, from small to large
/// solutions.
pub const CASE_B_PAIRS: [(u64, u64); 4] = [(8, 6), (2, 2), (5, 7), (152, 6)];
