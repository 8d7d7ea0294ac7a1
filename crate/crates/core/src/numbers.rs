//! Small exact combinatorial numbers shared by the triangle constructors and
//! the identity checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `binomial(n, k)`, zero whenever `k` lies outside `0..=n` (including negative `n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Stirling numbers of the second kind `S(n, k)` for `0 <= k <= n <= max_n`,
/// returned as rows `table[n][k]`.
pub fn stirling2_table(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    table.push(vec![BigInt::one()]);
    for n in 1..=max_n {
        let prev = &table[n - 1];
        let mut row = vec![BigInt::zero(); n + 1];
        for k in 1..=n {
            let stay = if k < n {
                &prev[k] * BigInt::from(k)
            } else {
                BigInt::zero()
            };
            row[k] = stay + &prev[k - 1];
        }
        table.push(row);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention_outside_range() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(-2, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn stirling_small_rows() {
        let t = stirling2_table(4);
        let row4: Vec<i64> = t[4].iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(row4, vec![0, 1, 7, 6, 1]);
        assert_eq!(t[0], vec![BigInt::one()]);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
