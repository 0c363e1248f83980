//! Exact steepness `F_N'(0)` and the identity ladder behind its limit.
//!
//! Three routes to the same number are kept apart on purpose:
//! [`steepness_exact`] works over integers, [`s_of_m`] sums the rational
//! helpers `C(m, M) X(m, M)`, and [`t_of_m`] is the doubled harmonic tail.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinat::{binom, binom_uncached, factorial, int, odd_lcm, pow2, rat, t_number};
use crate::error::{Error, Result};
use crate::gibbs::series;
use crate::krawtchouk::check_size;

/// Where brute-force sums take their integer binomials from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BinomialSource {
    /// The shared memo table.
    #[default]
    Memo,
    /// Recomputed per call, never touching the memo table.
    Audit,
    /// Like `Memo`, but `binom(n, k)` is off by one at the given index.
    /// Exists so the failure path of every report can be exercised.
    Corrupt { n: i64, k: i64 },
}

impl BinomialSource {
    pub fn binom(&self, n: i64, k: i64) -> BigInt {
        match *self {
            Self::Memo => binom(n, k),
            Self::Audit => binom_uncached(n, k),
            Self::Corrupt { n: cn, k: ck } => {
                let b = binom(n, k);
                if (n, k) == (cn, ck) {
                    b + 1
                } else {
                    b
                }
            }
        }
    }

    fn ratio(&self, n: i64, k: i64) -> BigRational {
        BigRational::from_integer(self.binom(n, k))
    }
}

/// Outcome of one identity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    /// Human-readable index bounds that were swept.
    pub range: String,
    /// Number of index tuples checked.
    pub checked: usize,
    pub all_passed: bool,
    /// First failing index tuple in sweep order.
    pub first_failure: Option<Vec<i64>>,
}

impl IdentityReport {
    fn from_sweep(name: &str, range: String, cases: Vec<Vec<i64>>, ok: Vec<bool>) -> Self {
        let first_failure = cases
            .into_iter()
            .zip(&ok)
            .find(|(_, passed)| !**passed)
            .map(|(case, _)| case);
        Self {
            name: name.to_string(),
            range,
            checked: ok.len(),
            all_passed: first_failure.is_none(),
            first_failure,
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} checked: {}",
            self.name,
            self.range,
            self.checked,
            if self.all_passed { "pass" } else { "FAIL" }
        )?;
        if let Some(idx) = &self.first_failure {
            write!(f, " (first failure at {idx:?})")?;
        }
        Ok(())
    }
}

/// Runs `check` over `cases` in parallel and merges in case order.
fn sweep<F>(name: &str, range: String, cases: Vec<Vec<i64>>, check: F) -> IdentityReport
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let ok: Vec<bool> = cases.par_iter().map(|c| check(c)).collect();
    IdentityReport::from_sweep(name, range, cases, ok)
}

/// `F_N'(0)` from the closed form
/// `2^(1-N) binom(N, N/2) sum_{n even} c(n; N) sum_{l=0}^{n/2} (-1)^l binom(N/2, l) / (n+1-2l)`
/// with `c(n; N) = (-1)^(n/2) binom(N/2, n/2) / binom(N, n)`.
///
/// With `M = N/2` and `n = 2m`, `binom(M, m) / binom(2M, 2m)` equals
/// `M! / (2M)! * A(m) A(M-m)` where `A(j) = (2j)! / j!`, and
/// `binom(2M, M) M! / (2M)! = 1 / M!`. Clearing the odd denominators with
/// `L = lcm(1, 3, ..., 2M-1)` leaves one integer sum over `M! L 2^(2M-1)`.
pub fn steepness_exact(size: usize) -> Result<BigRational> {
    check_size(size)?;
    let big_m = size / 2;
    let lcm = odd_lcm(big_m - 1);
    let quotients: Vec<BigInt> = (0..big_m).map(|j| &lcm / BigInt::from(2 * j + 1)).collect();
    let row = crate::combinat::binomial_row(big_m);

    // A(j) = 2^j (2j - 1)!!
    let mut a = Vec::with_capacity(big_m + 1);
    a.push(BigInt::one());
    for j in 0..big_m {
        let next = a.last().unwrap() * BigInt::from(2 * (2 * j + 1));
        a.push(next);
    }

    let terms: Vec<BigInt> = (0..big_m)
        .into_par_iter()
        .map(|m| {
            let mut inner = BigInt::zero();
            for l in 0..=m.min(big_m) {
                let t = &row[l] * &quotients[m - l];
                if l % 2 == 0 {
                    inner += t;
                } else {
                    inner -= t;
                }
            }
            let t = inner * &a[m] * &a[big_m - m];
            if m % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .collect();
    let total: BigInt = terms.into_iter().sum();
    let denom = factorial(big_m) * lcm * pow2(2 * big_m - 1);
    Ok(BigRational::new(total, denom))
}

/// `C(m, M) = (-1)^m binom(M, m) / binom(2M, 2m)` for `0 <= m <= M - 1`.
pub fn helper_c(m: usize, big_m: usize) -> Result<BigRational> {
    if big_m == 0 || m >= big_m {
        return Err(Error::IndexOutOfRange {
            what: "m",
            index: m as i64,
            max: big_m as i64 - 1,
        });
    }
    Ok(c_with(BinomialSource::Memo, m, big_m))
}

fn c_with(src: BinomialSource, m: usize, big_m: usize) -> BigRational {
    let v = src.ratio(big_m as i64, m as i64) / src.ratio(2 * big_m as i64, 2 * m as i64);
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `D(m, M) = C(m, M) (2M - 2m + 1) / (2M + 2)` for `0 <= m <= M`; the
/// `m = M` case extends the definition by direct substitution.
pub fn helper_d(m: usize, big_m: usize) -> Result<BigRational> {
    if m > big_m {
        return Err(Error::IndexOutOfRange {
            what: "m",
            index: m as i64,
            max: big_m as i64,
        });
    }
    Ok(d_with(BinomialSource::Memo, m, big_m))
}

fn d_with(src: BinomialSource, m: usize, big_m: usize) -> BigRational {
    c_with(src, m, big_m) * rat((2 * big_m - 2 * m + 1) as i64, (2 * big_m + 2) as i64)
}

/// `X(m, M) = sum_{l=0}^m (-1)^l binom(M, l) / (2m + 1 - 2l)`, with
/// `X(-1, M) = 0`.
pub fn helper_x(m: i64, big_m: usize) -> Result<BigRational> {
    if m < -1 {
        return Err(Error::IndexOutOfRange {
            what: "m",
            index: m,
            max: i64::MAX,
        });
    }
    Ok(x_with(BinomialSource::Memo, m, big_m))
}

fn x_with(src: BinomialSource, m: i64, big_m: usize) -> BigRational {
    if m < 0 {
        return BigRational::zero();
    }
    let (numer, lcm) = x_numer(src, m as usize, big_m);
    BigRational::new(numer, lcm)
}

/// `X(m, M)` as an integer over `lcm(1, 3, ..., 2m + 1)`, unreduced.
fn x_numer(src: BinomialSource, m: usize, big_m: usize) -> (BigInt, BigInt) {
    let lcm = odd_lcm(m);
    let mut numer = BigInt::zero();
    for l in 0..=m.min(big_m) {
        let t = src.binom(big_m as i64, l as i64) * (&lcm / BigInt::from(2 * (m - l) + 1));
        if l % 2 == 0 {
            numer += t;
        } else {
            numer -= t;
        }
    }
    (numer, lcm)
}

/// `X(M, M + 1) = (-1)^(M+1) (1 - 2^(2M+1) / binom(2M+1, M+1))`.
pub fn x_closed_form(big_m: usize) -> BigRational {
    let v = BigRational::one()
        - BigRational::new(
            pow2(2 * big_m + 1),
            binom(2 * big_m as i64 + 1, big_m as i64 + 1),
        );
    if big_m % 2 == 0 {
        -v
    } else {
        v
    }
}

/// `S(M) = binom(2M, M) / 2^(2M-1) * sum_{m=0}^{M-1} C(m, M) X(m, M)`.
pub fn s_of_m(big_m: usize) -> Result<BigRational> {
    s_with(BinomialSource::Memo, big_m)
}

fn s_with(src: BinomialSource, big_m: usize) -> Result<BigRational> {
    if big_m == 0 {
        return Err(Error::IndexOutOfRange {
            what: "M",
            index: 0,
            max: i64::MAX,
        });
    }
    // 1 / binom(2M, 2m) = (2m)! (2M - 2m)! / (2M)!, so every term sits over
    // (2M)! lcm(1, 3, ..., 2M - 1).
    let lcm = odd_lcm(big_m - 1);
    let total: BigInt = (0..big_m)
        .map(|m| {
            let (xn, xl) = x_numer(src, m, big_m);
            let t = src.binom(big_m as i64, m as i64)
                * xn
                * (&lcm / xl)
                * factorial(2 * m)
                * factorial(2 * (big_m - m));
            if m % 2 == 1 {
                -t
            } else {
                t
            }
        })
        .sum();
    let sum = BigRational::new(total, factorial(2 * big_m) * lcm);
    Ok(sum
        * BigRational::new(
            src.binom(2 * big_m as i64, big_m as i64),
            pow2(2 * big_m - 1),
        ))
}

/// Sum of `1/k` for `k` in `lo..hi` by binary splitting, unreduced.
fn harmonic_split(lo: u64, hi: u64) -> (BigInt, BigInt) {
    match hi - lo {
        0 => (BigInt::zero(), BigInt::one()),
        1 => (BigInt::one(), BigInt::from(lo)),
        _ => {
            let mid = lo + (hi - lo) / 2;
            let (a, b) = harmonic_split(lo, mid);
            let (c, d) = harmonic_split(mid, hi);
            (a * &d + c * &b, b * d)
        }
    }
}

/// `T(M) = 2 sum_{k=1}^M 1/(M + k)`.
pub fn t_of_m(big_m: usize) -> Result<BigRational> {
    if big_m == 0 {
        return Err(Error::IndexOutOfRange {
            what: "M",
            index: 0,
            max: i64::MAX,
        });
    }
    let lo = big_m as u64 + 1;
    let (num, den) = harmonic_split(lo, lo + big_m as u64);
    Ok(BigRational::new(num * 2, den))
}

/// `|T(M) - log 4|` evaluated with `digits` decimal digits of `log 4`.
pub fn harmonic_gap_to_log4(big_m: usize, digits: u32) -> Result<BigRational> {
    let t = t_of_m(big_m)?;
    Ok((t - series::ln2(digits).to_rational() * int(2)).abs())
}

/// Identity sweeps with a chosen binomial source.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityChecker {
    pub source: BinomialSource,
}

impl IdentityChecker {
    pub fn new(source: BinomialSource) -> Self {
        Self { source }
    }

    /// `sum_{v=0}^{2q+1} sum_{s=p+q+2-v}^{2p+2q+2-v} (-1)^v binom(2q+1, v) binom(2p+1, s)
    /// = (-1)^(q+1) T(p, q)` for all `p <= p_max`, `q <= q_max`.
    pub fn supercatalan_identity(&self, p_max: usize, q_max: usize) -> IdentityReport {
        let cases = (0..=p_max as i64)
            .flat_map(|p| (0..=q_max as i64).map(move |q| vec![p, q]))
            .collect();
        let src = self.source;
        sweep(
            "super-catalan sum",
            format!("0<=p<={p_max}, 0<=q<={q_max}"),
            cases,
            |c| {
                let (p, q) = (c[0], c[1]);
                let mut lhs = BigInt::zero();
                for v in 0..=2 * q + 1 {
                    let outer = src.binom(2 * q + 1, v);
                    for s in (p + q + 2 - v)..=(2 * p + 2 * q + 2 - v) {
                        let t = &outer * src.binom(2 * p + 1, s);
                        if v % 2 == 0 {
                            lhs += t;
                        } else {
                            lhs -= t;
                        }
                    }
                }
                let rhs = t_number(p as usize, q as usize);
                let rhs = if q % 2 == 0 { -rhs } else { rhs };
                BigRational::from_integer(lhs) == rhs
            },
        )
    }

    /// `sum_{v=0}^n sum_{s=N/2+1-v}^{N-v} (-1)^v binom(n, v) binom(N-n, s)
    /// = (-1)^((n+1)/2) T((N-n-1)/2, (n-1)/2)` for even `N <= n_max`, odd `n <= N`.
    pub fn appendix_lemma(&self, n_max: usize) -> IdentityReport {
        let cases = (2..=n_max as i64)
            .step_by(2)
            .flat_map(|size| (1..=size).step_by(2).map(move |n| vec![size, n]))
            .collect();
        let src = self.source;
        sweep(
            "appendix lemma",
            format!("even 2<=N<={n_max}, odd n<=N"),
            cases,
            |c| {
                let (size, n) = (c[0], c[1]);
                let mut lhs = BigInt::zero();
                for v in 0..=n {
                    let outer = src.binom(n, v);
                    for s in (size / 2 + 1 - v)..=(size - v) {
                        let t = &outer * src.binom(size - n, s);
                        if v % 2 == 0 {
                            lhs += t;
                        } else {
                            lhs -= t;
                        }
                    }
                }
                let rhs = t_number(((size - n - 1) / 2) as usize, ((n - 1) / 2) as usize);
                let rhs = if ((n + 1) / 2) % 2 == 1 { -rhs } else { rhs };
                BigRational::from_integer(lhs) == rhs
            },
        )
    }

    /// `S(M) = T(M)` for `1 <= M <= m_max`.
    pub fn st_equality(&self, m_max: usize) -> IdentityReport {
        let cases = (1..=m_max as i64).map(|m| vec![m]).collect();
        let src = self.source;
        sweep("S(M) = T(M)", format!("1<=M<={m_max}"), cases, |c| {
            let m = c[0] as usize;
            matches!((s_with(src, m), t_of_m(m)), (Ok(s), Ok(t)) if s == t)
        })
    }

    /// `(2M+1)/(2M+2) C(m, M+1) = D(m, M)` and `D(m, M) - D(m+1, M) = C(m, M)`
    /// for `0 <= m <= M - 1`, `M <= m_max`.
    pub fn cd_identities(&self, m_max: usize) -> IdentityReport {
        let cases = (1..=m_max as i64)
            .flat_map(|big| (0..big).map(move |m| vec![m, big]))
            .collect();
        let src = self.source;
        sweep("C/D ladder", format!("0<=m<M<={m_max}"), cases, |c| {
            let (m, big) = (c[0] as usize, c[1] as usize);
            let d = d_with(src, m, big);
            let first = rat(2 * big as i64 + 1, 2 * big as i64 + 2) * c_with(src, m, big + 1);
            let second = &d - d_with(src, m + 1, big);
            first == d && second == c_with(src, m, big)
        })
    }

    /// `X(m, M+1) = X(m, M) - X(m-1, M)` for `0 <= m <= M <= m_max`.
    pub fn x_recurrence(&self, m_max: usize) -> IdentityReport {
        let cases = (0..=m_max as i64)
            .flat_map(|big| (0..=big).map(move |m| vec![m, big]))
            .collect();
        let src = self.source;
        sweep("X recurrence", format!("0<=m<=M<={m_max}"), cases, |c| {
            let (m, big) = (c[0], c[1] as usize);
            x_with(src, m, big + 1) == x_with(src, m, big) - x_with(src, m - 1, big)
        })
    }

    /// `X(M, M+1)` summed directly equals its closed form for `M <= m_max`.
    pub fn x_closed_form(&self, m_max: usize) -> IdentityReport {
        let cases = (0..=m_max as i64).map(|m| vec![m]).collect();
        let src = self.source;
        sweep(
            "X(M, M+1) closed form",
            format!("0<=M<={m_max}"),
            cases,
            |c| {
                let big = c[0] as usize;
                x_with(src, big as i64, big + 1) == x_closed_form(big)
            },
        )
    }

    /// `sum_{k=0}^M (-1)^k binom(M, k) / (2k+1) = 2^(2M) / ((2M+1) binom(2M, M))`.
    pub fn wallis(&self, m_max: usize) -> IdentityReport {
        let cases = (0..=m_max as i64).map(|m| vec![m]).collect();
        let src = self.source;
        sweep("Wallis sum", format!("0<=M<={m_max}"), cases, |c| {
            let big = c[0];
            let lhs: BigRational = (0..=big)
                .map(|k| {
                    let t = BigRational::new(src.binom(big, k), BigInt::from(2 * k + 1));
                    if k % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            let rhs = BigRational::new(
                pow2(2 * big as usize),
                BigInt::from(2 * big + 1) * binom(2 * big, big),
            );
            lhs == rhs
        })
    }

    /// `steepness_exact(2M) = T(M)` for `1 <= M <= m_max`.
    pub fn steepness_harmonic(&self, m_max: usize) -> IdentityReport {
        let cases = (1..=m_max as i64).map(|m| vec![m]).collect();
        sweep("F_2M'(0) = T(M)", format!("1<=M<={m_max}"), cases, |c| {
            let big = c[0] as usize;
            matches!((steepness_exact(2 * big), t_of_m(big)), (Ok(s), Ok(t)) if s == t)
        })
    }
}

pub fn verify_supercatalan_identity(p_max: usize, q_max: usize) -> IdentityReport {
    IdentityChecker::default().supercatalan_identity(p_max, q_max)
}

pub fn verify_appendix_lemma(n_max: usize) -> IdentityReport {
    IdentityChecker::default().appendix_lemma(n_max)
}

pub fn verify_st_equality(m_max: usize) -> IdentityReport {
    IdentityChecker::default().st_equality(m_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steepness_examples() {
        assert_eq!(steepness_exact(2).unwrap(), int(1));
        assert_eq!(steepness_exact(4).unwrap(), rat(7, 6));
        assert_eq!(
            steepness_exact(40).unwrap(),
            BigRational::new(3637485804655193u64.into(), 2671465728531600u64.into())
        );
        assert!(steepness_exact(5).is_err());
        assert!(steepness_exact(0).is_err());
    }

    // The closed form summed literally, as rationals, with no rearrangement.
    fn steepness_literal(size: usize) -> BigRational {
        let half = (size / 2) as i64;
        let mut outer = BigRational::zero();
        for n in (0..=size as i64 - 2).step_by(2) {
            let mut c = BigRational::new(binom(half, n / 2), binom(size as i64, n));
            if (n / 2) % 2 == 1 {
                c = -c;
            }
            let mut inner = BigRational::zero();
            for l in 0..=n / 2 {
                let t = BigRational::new(binom(half, l), BigInt::from(n + 1 - 2 * l));
                if l % 2 == 0 {
                    inner += t;
                } else {
                    inner -= t;
                }
            }
            outer += c * inner;
        }
        outer * BigRational::new(binom(size as i64, half), pow2(size - 1))
    }

    #[test]
    fn integer_route_matches_literal_sum() {
        for size in (2..=80).step_by(2) {
            assert_eq!(
                steepness_exact(size).unwrap(),
                steepness_literal(size),
                "N={size}"
            );
        }
    }

    #[test]
    fn s_and_t_examples() {
        assert_eq!(s_of_m(1).unwrap(), int(1));
        assert_eq!(t_of_m(1).unwrap(), int(1));
        assert_eq!(s_of_m(2).unwrap(), rat(7, 6));
        assert_eq!(t_of_m(2).unwrap(), rat(7, 6));
        assert_eq!(t_of_m(3).unwrap(), rat(37, 30));
        assert_eq!(s_of_m(20).unwrap(), steepness_exact(40).unwrap());
        assert!(s_of_m(0).is_err());
        assert!(t_of_m(0).is_err());
    }

    #[test]
    fn harmonic_matches_naive() {
        for m in 1..=60usize {
            let naive: BigRational = (1..=m).map(|k| rat(2, (m + k) as i64)).sum();
            assert_eq!(t_of_m(m).unwrap(), naive);
        }
    }

    #[test]
    fn helper_examples() {
        for big in 1..6 {
            assert_eq!(helper_c(0, big).unwrap(), int(1));
            assert_eq!(helper_x(0, big).unwrap(), int(1));
            assert_eq!(helper_x(-1, big).unwrap(), int(0));
        }
        assert_eq!(helper_c(1, 2).unwrap(), rat(-1, 3));
        assert_eq!(helper_d(3, 3).unwrap(), rat(-1, 8));
        for big in 0..20 {
            let expected = rat(if big % 2 == 0 { 1 } else { -1 }, 2 * big as i64 + 2);
            assert_eq!(helper_d(big, big).unwrap(), expected);
        }
        assert_eq!(helper_x(1, 2).unwrap(), rat(-5, 3));
        assert!(helper_c(2, 2).is_err());
        assert!(helper_d(3, 2).is_err());
        assert!(helper_x(-2, 2).is_err());
    }

    #[test]
    fn x_closed_form_examples() {
        assert_eq!(x_closed_form(1), rat(-5, 3));
        assert_eq!(x_closed_form(0), int(1));
        assert_eq!(x_closed_form(0), helper_x(0, 1).unwrap());
        for big in 0..=100 {
            assert_eq!(x_closed_form(big), helper_x(big as i64, big + 1).unwrap());
        }
    }

    #[test]
    fn supercatalan_examples() {
        let r = verify_supercatalan_identity(1, 1);
        assert!(r.all_passed);
        assert_eq!(r.checked, 4);
        assert!(verify_supercatalan_identity(12, 12).all_passed);
    }

    #[test]
    fn appendix_examples() {
        assert!(verify_appendix_lemma(4).all_passed);
        let r = verify_appendix_lemma(40);
        assert!(r.all_passed, "{r}");
        assert_eq!(r.checked, (1..=20).sum::<usize>());
    }

    #[test]
    fn st_examples() {
        assert!(verify_st_equality(1).all_passed);
        assert!(verify_st_equality(60).all_passed);
        assert!(IdentityChecker::default().steepness_harmonic(40).all_passed);
    }

    #[test]
    fn ladder_identities() {
        let checker = IdentityChecker::default();
        assert!(checker.cd_identities(60).all_passed);
        assert!(checker.x_recurrence(60).all_passed);
        assert!(checker.x_closed_form(60).all_passed);
        assert!(checker.wallis(60).all_passed);
    }

    #[test]
    fn audit_source_agrees() {
        let checker = IdentityChecker::new(BinomialSource::Audit);
        assert!(checker.supercatalan_identity(6, 6).all_passed);
        assert!(checker.appendix_lemma(16).all_passed);
        assert!(checker.x_recurrence(20).all_passed);
    }

    #[test]
    fn corruption_is_reported() {
        let checker = IdentityChecker::new(BinomialSource::Corrupt { n: 5, k: 2 });
        let r = checker.supercatalan_identity(3, 3);
        assert!(!r.all_passed);
        let first = r.first_failure.clone().unwrap();
        let clean =
            IdentityChecker::default().supercatalan_identity(first[0] as usize, first[1] as usize);
        assert!(clean.all_passed);
        assert!(r.to_string().contains("FAIL"));

        let r = checker.appendix_lemma(10);
        assert!(!r.all_passed);
        assert!(r.first_failure.is_some());
    }

    #[test]
    fn harmonic_gap_shrinks() {
        for m in [100usize, 1000] {
            let gap = harmonic_gap_to_log4(m, 50).unwrap();
            assert!(gap < rat(1, m as i64), "M={m}");
        }
    }
}
