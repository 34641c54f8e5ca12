//! Small exact combinatorics helpers.

/// `n!` as an exact integer; callers keep `n` small enough not to overflow.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Binomial coefficient `C(n, k)` computed exactly.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
