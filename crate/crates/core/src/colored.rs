//! Enumerative oracles over colored permutations `Z_r wr S_n` and words:
//! descents, the coefficient counts `q(n,k,j)`, Eulerian and colored
//! Eulerian polynomials, and the ascent polynomial of words.

use num_bigint::BigInt;
use thiserror::Error;

use crate::numbers::factorial;
use crate::poly::Polynomial;

pub const DEFAULT_MAX_PERMS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoredError {
    #[error("enumeration of {count} colored permutations exceeds the cap {cap}")]
    CapExceeded { count: BigInt, cap: u64 },
    #[error("invalid colored permutation: {0}")]
    Invalid(String),
    #[error("parameters out of range: {0}")]
    Range(String),
}

/// `(tau, eps)`: `tau` a permutation of `1..=n`, `eps[i]` the color of `tau[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    tau: Vec<usize>,
    eps: Vec<usize>,
    r: usize,
}

impl ColoredPermutation {
    pub fn new(tau: Vec<usize>, eps: Vec<usize>, r: usize) -> Result<Self, ColoredError> {
        let n = tau.len();
        if eps.len() != n {
            return Err(ColoredError::Invalid("color vector length differs".into()));
        }
        let mut seen = vec![false; n + 1];
        for &t in &tau {
            if t == 0 || t > n || std::mem::replace(&mut seen[t], true) {
                return Err(ColoredError::Invalid(format!(
                    "{tau:?} is not a permutation"
                )));
            }
        }
        if r == 0 || eps.iter().any(|&c| c >= r) {
            return Err(ColoredError::Invalid(format!(
                "colors {eps:?} not below r = {r}"
            )));
        }
        Ok(ColoredPermutation { tau, eps, r })
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn eps(&self) -> &[usize] {
        &self.eps
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn descents(&self) -> usize {
        descents(&self.tau, &self.eps)
    }
}

/// Positions `i` in `1..=n` with `eps_i > eps_{i+1}`, or equal colors and
/// `tau(i) > tau(i+1)`, where `tau(n+1) = n+1` and `eps_{n+1} = 0`.
fn descents(tau: &[usize], eps: &[usize]) -> usize {
    let n = tau.len();
    (0..n)
        .filter(|&i| {
            let (t_next, e_next) = if i + 1 < n {
                (tau[i + 1], eps[i + 1])
            } else {
                (n + 1, 0)
            };
            eps[i] > e_next || (eps[i] == e_next && tau[i] > t_next)
        })
        .count()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

// odometer over {0..r-1}^len, last position fastest
fn next_word(w: &mut [usize], r: usize) -> bool {
    for c in w.iter_mut().rev() {
        if *c + 1 < r {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// All of `Z_r wr S_n` in lexicographic order of `(tau, eps)`.
pub struct ColoredPermutations {
    tau: Vec<usize>,
    eps: Vec<usize>,
    r: usize,
    done: bool,
}

impl ColoredPermutations {
    pub fn new(n: usize, r: usize) -> Self {
        ColoredPermutations {
            tau: (1..=n).collect(),
            eps: vec![0; n],
            r,
            done: r == 0,
        }
    }
}

impl Iterator for ColoredPermutations {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.done {
            return None;
        }
        let item = ColoredPermutation {
            tau: self.tau.clone(),
            eps: self.eps.clone(),
            r: self.r,
        };
        if !next_word(&mut self.eps, self.r) && !next_permutation(&mut self.tau) {
            self.done = true;
        }
        Some(item)
    }
}

fn check_cap(perm_len: usize, colors: usize, r: usize, cap: u64) -> Result<(), ColoredError> {
    let count = factorial(perm_len as u64) * num_traits::pow(BigInt::from(r), colors);
    if count > BigInt::from(cap) {
        return Err(ColoredError::CapExceeded { count, cap });
    }
    Ok(())
}

/// Visits every `(tau, eps)` of length `n`, in lexicographic order.
fn for_each_colored(n: usize, r: usize, mut visit: impl FnMut(&[usize], &[usize])) {
    let mut tau: Vec<usize> = (1..=n).collect();
    loop {
        let mut eps = vec![0; n];
        loop {
            visit(&tau, &eps);
            if !next_word(&mut eps, r) {
                break;
            }
        }
        if !next_permutation(&mut tau) {
            break;
        }
    }
}

fn poly_from_counts(counts: &[u64]) -> Polynomial {
    let ints: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    Polynomial::from_bigints(&ints)
}

/// Classical Eulerian polynomial `A_n(x) = sum_{w in S_n} x^des(w)`, `A_0 = 1`.
/// Enumerated for `n <= 9`, built by the recurrence
/// `A(n,k) = (k+1) A(n-1,k) + (n-k) A(n-1,k-1)` above that.
pub fn eulerian(n: usize) -> Polynomial {
    if n <= 9 {
        return eulerian_by_enumeration(n);
    }
    Polynomial::from_bigints(&eulerian_by_recurrence(n))
}

pub fn eulerian_by_enumeration(n: usize) -> Polynomial {
    let mut counts = vec![0u64; n.max(1)];
    let mut tau: Vec<usize> = (1..=n).collect();
    loop {
        let des = tau.windows(2).filter(|w| w[0] > w[1]).count();
        counts[des] += 1;
        if !next_permutation(&mut tau) {
            break;
        }
    }
    poly_from_counts(&counts)
}

pub fn eulerian_by_recurrence(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for m in 2..=n {
        let mut next = vec![BigInt::from(0); m];
        for k in 0..m {
            if k < row.len() {
                next[k] += &row[k] * BigInt::from(k + 1);
            }
            if k >= 1 {
                next[k] += &row[k - 1] * BigInt::from(m - k);
            }
        }
        row = next;
    }
    row
}

/// `A+_{n,r}(x)`: descents over colored permutations whose first coordinate
/// has color zero.
pub fn a_plus(n: usize, r: usize) -> Polynomial {
    a_plus_capped(n, r, DEFAULT_MAX_PERMS).expect("within the default enumeration cap")
}

pub fn a_plus_capped(n: usize, r: usize, cap: u64) -> Result<Polynomial, ColoredError> {
    if n == 0 || r == 0 {
        return Err(ColoredError::Range(format!(
            "a_plus needs n, r >= 1 (n = {n}, r = {r})"
        )));
    }
    check_cap(n, n - 1, r, cap)?;
    let mut counts = vec![0u64; n + 1];
    for_each_colored(n, r, |tau, eps| {
        if eps[0] == 0 {
            counts[descents(tau, eps)] += 1;
        }
    });
    Ok(poly_from_counts(&counts))
}

/// `sum_{w in {0..r-1}^n} x^asc(w)` with `w_0 = 0`.
pub fn ascent_word_poly(n: usize, r: usize) -> Polynomial {
    assert!(r >= 1, "alphabet must be nonempty");
    let mut counts = vec![0u64; n + 1];
    let mut w = vec![0usize; n];
    loop {
        let mut prev = 0;
        let mut asc = 0;
        for &c in &w {
            if prev < c {
                asc += 1;
            }
            prev = c;
        }
        counts[asc] += 1;
        if !next_word(&mut w, r) {
            break;
        }
    }
    poly_from_counts(&counts)
}

/// `q[k][j]`: colored permutations in `Z_r wr S_{n+1}` with first and last
/// coordinates of color zero, `j` descents, and last value `n+1-k`.
pub fn q_table(n: usize, r: usize, cap: u64) -> Result<Vec<Vec<u64>>, ColoredError> {
    if r == 0 {
        return Err(ColoredError::Range("r must be positive".into()));
    }
    check_cap(n + 1, n, r, cap)?;
    let m = n + 1;
    let mut table = vec![vec![0u64; n + 1]; n + 1];
    for_each_colored(m, r, |tau, eps| {
        if eps[0] != 0 || eps[m - 1] != 0 {
            return;
        }
        let k = m - tau[m - 1];
        let j = descents(tau, eps);
        table[k][j] += 1;
    });
    Ok(table)
}

pub fn q_count(n: usize, k: usize, j: usize, r: usize) -> Result<u64, ColoredError> {
    if k > n || j > n {
        return Err(ColoredError::Range(format!(
            "need k, j <= n (n = {n}, k = {k}, j = {j})"
        )));
    }
    Ok(q_table(n, r, DEFAULT_MAX_PERMS)?[k][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn descent_conventions() {
        let id = ColoredPermutation::new(vec![1, 2, 3], vec![0, 0, 0], 2).unwrap();
        assert_eq!(id.descents(), 0);
        // last position is a descent exactly when its color is nonzero
        let w = ColoredPermutation::new(vec![1, 2, 3], vec![0, 0, 1], 2).unwrap();
        assert_eq!(w.descents(), 1);
        let w = ColoredPermutation::new(vec![2, 1, 3], vec![1, 0, 0], 2).unwrap();
        assert_eq!(w.descents(), 1);
        let w = ColoredPermutation::new(vec![3, 2, 1], vec![0, 0, 0], 1).unwrap();
        assert_eq!(w.descents(), 2);
        assert!(ColoredPermutation::new(vec![1, 1], vec![0, 0], 1).is_err());
        assert!(ColoredPermutation::new(vec![1, 2], vec![0, 2], 2).is_err());
    }

    #[test]
    fn iterator_covers_group() {
        let all: Vec<_> = ColoredPermutations::new(3, 2).collect();
        assert_eq!(all.len(), 48);
        assert_eq!(all[0].tau(), &[1, 2, 3]);
        assert_eq!(all[1].eps(), &[0, 0, 1]);
        let s3: Vec<usize> = ColoredPermutations::new(3, 1)
            .map(|w| w.descents())
            .collect();
        let mut counts = [0; 3];
        for d in s3 {
            counts[d] += 1;
        }
        assert_eq!(counts, [1, 4, 1]);
    }

    #[test]
    fn eulerian_small() {
        assert_eq!(eulerian(0), p(&[1]));
        assert_eq!(eulerian(1), p(&[1]));
        assert_eq!(eulerian(2), p(&[1, 1]));
        assert_eq!(eulerian(3), p(&[1, 4, 1]));
        assert_eq!(eulerian(4), p(&[1, 11, 11, 1]));
        for n in 1..=9 {
            let a = eulerian(n);
            assert_eq!(a.sum_coeffs().to_integer(), factorial(n as u64));
            assert!(a.is_symmetric(n - 1));
            assert_eq!(Polynomial::from_bigints(&eulerian_by_recurrence(n)), a);
        }
        assert_eq!(eulerian(12).sum_coeffs().to_integer(), factorial(12));
    }

    #[test]
    fn a_plus_values() {
        for n in 1..=6 {
            assert_eq!(a_plus(n, 1), eulerian(n));
        }
        for r in 1..=3usize {
            for n in 1..=5usize {
                let total = a_plus(n, r).sum_coeffs().to_integer();
                let expect = factorial(n as u64) * num_traits::pow(BigInt::from(r), n - 1);
                assert_eq!(total, expect);
            }
        }
        assert!(a_plus_capped(8, 3, 1000).is_err());
        assert!(a_plus_capped(0, 3, 1000).is_err());
    }

    #[test]
    fn ascent_words() {
        assert_eq!(ascent_word_poly(2, 4), p(&[1, 12, 3]));
        assert_eq!(ascent_word_poly(5, 1), p(&[1]));
        for r in 1..=4usize {
            for n in 0..=5usize {
                let total = ascent_word_poly(n, r).sum_coeffs();
                assert_eq!(total.to_u64().unwrap(), (r as u64).pow(n as u32));
            }
        }
    }

    #[test]
    fn q_swap_identity() {
        for r in 1..=3 {
            for n in 1..=5 {
                let big = q_table(n, r, DEFAULT_MAX_PERMS).unwrap();
                let small = q_table(n - 1, r, DEFAULT_MAX_PERMS).unwrap();
                let get = |t: &Vec<Vec<u64>>, k: usize, j: i64| -> i64 {
                    if j < 0 || j as usize >= t.len() {
                        0
                    } else {
                        t[k][j as usize] as i64
                    }
                };
                for k in 1..=n {
                    for j in 0..=n as i64 {
                        let lhs = get(&big, k, j) - get(&small, k - 1, j - 1);
                        let rhs = get(&big, k - 1, j) - get(&small, k - 1, j);
                        assert_eq!(lhs, rhs, "r={r} n={n} k={k} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn q_first_row_is_a_plus() {
        for r in 1..=3 {
            for n in 1..=4 {
                let t = q_table(n, r, DEFAULT_MAX_PERMS).unwrap();
                assert_eq!(poly_from_counts(&t[0]), a_plus(n, r));
                let sums: Vec<u64> = t.iter().map(|row| row.iter().sum()).collect();
                assert!(sums.windows(2).all(|w| w[0] == w[1]));
            }
        }
        assert!(q_count(3, 4, 0, 2).is_err());
        assert_eq!(
            BigRational::from_integer(q_count(2, 0, 0, 1).unwrap().into()),
            BigRational::one()
        );
    }
}
