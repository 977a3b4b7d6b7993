//! Binomial coefficients and partition counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(a, b)` for `0 <= b <= a`, and `0` for every other pair of integers
/// (including negative `a`).
///
/// All closed-form coefficients in the crate go through this convention, so
/// summation ranges may be taken wider than necessary without changing any
/// result.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `P_q(k)`: the number of unordered partitions of `k` into exactly `q`
/// positive parts. Zero whenever `k < q`.
pub fn partitions_exact(q: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    if q == 0 {
        return u64::from(k == 0);
    }
    if k < q {
        return 0;
    }
    // table[p][m] = P_p(m), via P_p(m) = P_p(m - p) + P_{p-1}(m - 1)
    let mut table = vec![vec![0u64; k + 1]; q + 1];
    table[0][0] = 1;
    for p in 1..=q {
        for m in p..=k {
            table[p][m] = table[p][m - p] + table[p - 1][m - 1];
        }
    }
    table[q][k]
}
