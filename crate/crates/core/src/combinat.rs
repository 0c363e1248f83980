//! Exact scalars and the combinatorial numbers built from them.
//!
//! Every value is a [`BigRational`] kept in lowest terms, so two values are
//! equal exactly when their representations are equal. Integer binomials and
//! factorials are memoized in process-wide tables guarded by read/write locks;
//! a reader sees either a finished entry or nothing.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(value.into())
}

/// `2^k` as a big integer.
pub fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `(-1)^k` as a small integer.
pub fn alt_sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, memoized.
pub fn factorial(n: usize) -> BigInt {
    let table = factorial_table();
    if let Some(v) = table.read().get(n) {
        return v.clone();
    }
    let mut guard = table.write();
    while guard.len() <= n {
        let next = guard.last().expect("table starts at 0!") * BigInt::from(guard.len());
        guard.push(next);
    }
    guard[n].clone()
}

type RowTable = RwLock<HashMap<usize, Arc<[BigInt]>>>;

fn row_table() -> &'static RowTable {
    static TABLE: OnceLock<RowTable> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn compute_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut current = BigInt::one();
    row.push(current.clone());
    for k in 0..n {
        current = current * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(current.clone());
    }
    row
}

/// The full row `binom(n, 0..=n)`, memoized by `n`.
pub fn binomial_row(n: usize) -> Arc<[BigInt]> {
    if let Some(row) = row_table().read().get(&n) {
        return Arc::clone(row);
    }
    // Computed outside the lock; a racing thread may compute the same row,
    // and whichever insert lands first wins.
    let row: Arc<[BigInt]> = compute_row(n).into();
    let mut guard = row_table().write();
    Arc::clone(guard.entry(n).or_insert(row))
}

/// Integer binomial `binom(n, k)` for any integer `n`, memoized.
///
/// Zero for `k < 0` and for `0 <= n < k`; negative `n` follows the
/// falling-factorial definition, `binom(n, k) = (-1)^k binom(k - n - 1, k)`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let flipped = binom(k - n - 1, k);
        return if k % 2 == 0 { flipped } else { -flipped };
    }
    if k > n {
        return BigInt::zero();
    }
    binomial_row(n as usize)[k as usize].clone()
}

/// Same contract as [`binom`], recomputed from scratch with no table access.
pub fn binom_uncached(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        let flipped = binom_uncached(k - n - 1, k);
        return if k % 2 == 0 { flipped } else { -flipped };
    }
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Generalized binomial `a (a-1) ... (a-k+1) / k!` for rational `a`.
///
/// Computed as an explicit product; vanishes when `a` is an integer in `0..k`.
pub fn binomial(a: &BigRational, k: usize) -> BigRational {
    let p = a.numer();
    let q = a.denom();
    let mut num = BigInt::one();
    for j in 0..k {
        num *= p - q * BigInt::from(j);
        if num.is_zero() {
            return BigRational::zero();
        }
    }
    let den = num_traits::pow(q.clone(), k) * factorial(k);
    BigRational::new(num, den)
}

/// The `n`-th Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigRational {
    BigRational::new(binom(2 * n as i64, n as i64), BigInt::from(n + 1))
}

/// Super Catalan number `(2p)! (2q)! / (p! q! (p+q)!)`.
pub fn super_catalan(p: usize, q: usize) -> BigRational {
    BigRational::new(
        factorial(2 * p) * factorial(2 * q),
        factorial(p) * factorial(q) * factorial(p + q),
    )
}

/// `T(p, q) = (2p+1) / (p+q+1) * S(p, q)`.
pub fn t_number(p: usize, q: usize) -> BigRational {
    super_catalan(p, q) * rat(2 * p as i64 + 1, (p + q + 1) as i64)
}

/// The `n`-th forward difference at 0, `sum_v (-1)^(n-v) binom(n, v) f(v)`.
pub fn forward_difference(values: &[BigRational], n: usize) -> Result<BigRational> {
    if values.len() < n + 1 {
        return Err(Error::SequenceTooShort {
            order: n,
            needed: n + 1,
            got: values.len(),
        });
    }
    let row = binomial_row(n);
    let mut acc = BigRational::zero();
    for (v, f) in values.iter().take(n + 1).enumerate() {
        let term = f * BigRational::from_integer(row[v].clone());
        if (n - v) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Least common multiple of the odd numbers `1, 3, ..., 2k+1`, memoized.
pub fn odd_lcm(k: usize) -> BigInt {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    if let Some(v) = table.read().get(k) {
        return v.clone();
    }
    let mut guard = table.write();
    while guard.len() <= k {
        let next = guard
            .last()
            .expect("table starts at k = 0")
            .lcm(&BigInt::from(2 * guard.len() + 1));
        guard.push(next);
    }
    guard[k].clone()
}

/// True when the rational is an integer.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&int(4), 2), int(6));
        assert_eq!(binomial(&int(3), 5), int(0));
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial(&rat(7, 3), 0), int(1));
        assert_eq!(binomial(&int(-2), 3), int(-4));
    }

    #[test]
    fn integer_binomials_agree() {
        for n in -6..=30i64 {
            for k in -2..=32i64 {
                let expected = if k < 0 {
                    BigRational::zero()
                } else {
                    binomial(&int(n), k as usize)
                };
                assert_eq!(
                    BigRational::from_integer(binom(n, k)),
                    expected,
                    "({n},{k})"
                );
                assert_eq!(binom(n, k), binom_uncached(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), int(1));
        assert_eq!(catalan(3), int(5));
        assert_eq!(catalan(5), int(42));
    }

    #[test]
    fn super_catalan_examples() {
        assert_eq!(super_catalan(0, 0), int(1));
        assert_eq!(super_catalan(1, 1), int(2));
        assert_eq!(super_catalan(3, 5), super_catalan(5, 3));
        // S(0, q) = binom(2q, q)
        assert_eq!(super_catalan(0, 4), int(70));
    }

    #[test]
    fn t_number_examples() {
        assert_eq!(t_number(1, 0), int(3));
        assert_eq!(t_number(1, 1), int(2));
        assert_eq!(t_number(0, 0), int(1));
    }

    #[test]
    fn super_catalan_is_integral() {
        for p in 0..=50 {
            for q in 0..=50 {
                assert!(is_integral(&super_catalan(p, q)), "S({p},{q})");
            }
        }
    }

    #[test]
    fn t_number_matches_factorial_form() {
        for p in 0..=30 {
            for q in 0..=30 {
                let direct = BigRational::new(
                    factorial(2 * p + 1) * factorial(2 * q),
                    factorial(p) * factorial(q) * factorial(p + q + 1),
                );
                assert_eq!(t_number(p, q), direct);
                assert_eq!(
                    t_number(p, q),
                    super_catalan(p, q) * rat(2 * p as i64 + 1, (p + q + 1) as i64)
                );
            }
        }
    }

    #[test]
    fn forward_difference_examples() {
        let ones = vec![int(1); 3];
        assert_eq!(forward_difference(&ones, 2).unwrap(), int(0));
        let squares: Vec<_> = [0, 1, 4, 9].iter().map(|&v| int(v)).collect();
        assert_eq!(forward_difference(&squares, 2).unwrap(), int(2));
        assert_eq!(forward_difference(&[int(5)], 0).unwrap(), int(5));
    }

    #[test]
    fn forward_difference_short_sequence() {
        let err = forward_difference(&[int(1), int(2)], 2).unwrap_err();
        assert_eq!(
            err,
            Error::SequenceTooShort {
                order: 2,
                needed: 3,
                got: 2
            }
        );
    }

    #[test]
    fn factorial_table_grows() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn concurrent_rows_are_consistent() {
        let rows: Vec<Arc<[BigInt]>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8).map(|_| s.spawn(|| binomial_row(257))).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let reference = compute_row(257);
        for row in rows {
            assert_eq!(&row[..], &reference[..]);
        }
    }

    #[test]
    fn odd_lcm_small() {
        assert_eq!(odd_lcm(0), BigInt::one());
        assert_eq!(odd_lcm(4), BigInt::from(315)); // lcm(1,3,5,7,9)
        for k in (0..=60).rev() {
            let direct = (0..=k).fold(BigInt::one(), |acc, j| acc.lcm(&BigInt::from(2 * j + 1)));
            assert_eq!(odd_lcm(k), direct, "k={k}");
        }
    }
}
