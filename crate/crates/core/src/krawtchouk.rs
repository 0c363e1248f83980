//! Krawtchouk polynomials on the grid `{0, ..., N}` and their shifted form on
//! the symmetric grid `{-N/2, ..., N/2}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use parking_lot::RwLock;

use crate::combinat::{binom, binomial_row, factorial, int, pow2, rat};
use crate::error::{Error, Result};
use crate::poly::{binom_poly, Poly, Sign};

#[derive(Default)]
struct FamilyCache {
    shifted: RwLock<HashMap<usize, Arc<Poly>>>,
    // binom(N/2 + x, v) and binom(N/2 - x, v), grown on demand
    plus: RwLock<Vec<Arc<Poly>>>,
    minus: RwLock<Vec<Arc<Poly>>>,
    weights: OnceLock<Vec<BigRational>>,
}

/// The Krawtchouk family for an even grid size `N` and parameter `p`.
///
/// Clones share the polynomial cache.
#[derive(Clone)]
pub struct KrawtchoukFamily {
    size: usize,
    p: BigRational,
    q: BigRational,
    cache: Arc<FamilyCache>,
}

impl fmt::Debug for KrawtchoukFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KrawtchoukFamily")
            .field("size", &self.size)
            .field("p", &self.p)
            .finish()
    }
}

impl PartialEq for KrawtchoukFamily {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.p == other.p
    }
}

impl Eq for KrawtchoukFamily {}

pub(crate) fn check_size(size: usize) -> Result<()> {
    if size < 2 || size % 2 != 0 {
        return Err(Error::InvalidSize(size));
    }
    Ok(())
}

fn check_index(what: &'static str, index: usize, max: usize) -> Result<()> {
    if index > max {
        return Err(Error::IndexOutOfRange {
            what,
            index: index as i64,
            max: max as i64,
        });
    }
    Ok(())
}

impl KrawtchoukFamily {
    pub fn new(size: usize, p: BigRational) -> Result<Self> {
        check_size(size)?;
        if !p.is_positive() || p >= BigRational::one() {
            return Err(Error::InvalidProbability(p));
        }
        let q = BigRational::one() - &p;
        Ok(Self {
            size,
            p,
            q,
            cache: Arc::default(),
        })
    }

    /// The `p = 1/2` family.
    pub fn symmetric(size: usize) -> Result<Self> {
        Self::new(size, rat(1, 2))
    }

    /// `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `N / 2`.
    pub fn half(&self) -> usize {
        self.size / 2
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_symmetric(&self) -> bool {
        self.p == rat(1, 2)
    }

    /// The symmetric grid `-N/2, ..., N/2` as integers.
    pub fn grid(&self) -> impl Iterator<Item = i64> {
        let half = self.half() as i64;
        -half..=half
    }

    fn weights(&self) -> &[BigRational] {
        self.cache.weights.get_or_init(|| {
            let row = binomial_row(self.size);
            let mut p_pow = vec![BigRational::one()];
            let mut q_pow = vec![BigRational::one()];
            for _ in 0..self.size {
                p_pow.push(p_pow.last().unwrap() * &self.p);
                q_pow.push(q_pow.last().unwrap() * &self.q);
            }
            (0..=self.size)
                .map(|j| {
                    BigRational::from_integer(row[j].clone()) * &p_pow[j] * &q_pow[self.size - j]
                })
                .collect()
        })
    }

    /// `w_N(j) = binom(N, j) p^j q^(N - j)`.
    pub fn weight(&self, j: usize) -> Result<BigRational> {
        check_index("j", j, self.size)?;
        Ok(self.weights()[j].clone())
    }

    /// Weight attached to the shifted grid point `y`, i.e. `w_N(y + N/2)`.
    pub fn shifted_weight(&self, y: i64) -> BigRational {
        let j = y + self.half() as i64;
        self.weights()[j as usize].clone()
    }

    /// `<f, g> = sum_{y=-N/2}^{N/2} f(y) g(y) w_N(y + N/2)`.
    pub fn inner_product(&self, f: &Poly, g: &Poly) -> BigRational {
        self.grid()
            .zip(self.weights())
            .map(|(y, w)| {
                let y = int(y);
                f.eval(&y) * g.eval(&y) * w
            })
            .sum()
    }

    /// Unshifted `K_n^(p)(x; N)` on `[0, N]`.
    pub fn krawtchouk_poly(&self, n: usize) -> Result<Poly> {
        check_index("n", n, self.size)?;
        Ok(krawtchouk_unshifted(self.size, &self.p, n))
    }

    fn prefixes(&self, sign: Sign, n: usize) -> Vec<Arc<Poly>> {
        let lock = match sign {
            Sign::Plus => &self.cache.plus,
            Sign::Minus => &self.cache.minus,
        };
        {
            let have = lock.read();
            if have.len() > n {
                return have[..=n].to_vec();
            }
        }
        let mut have = lock.write();
        if have.is_empty() {
            have.push(Arc::new(Poly::one()));
        }
        let c = int(self.half() as i64);
        let s = match sign {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        };
        while have.len() <= n {
            let k = have.len() as i64 - 1;
            let factor = Poly::linear((&c - int(k)) / int(k + 1), &s / int(k + 1));
            let next = have.last().unwrap().as_ref() * &factor;
            have.push(Arc::new(next));
        }
        have[..=n].to_vec()
    }

    /// `k_n(x; N) = K_n^(p)(x + N/2; N)`, assembled term by term as
    /// `sum_v (-1)^(n-v) binom(N/2 - x, n-v) binom(N/2 + x, v) p^(n-v) q^v`.
    pub fn shifted_k(&self, n: usize) -> Result<Arc<Poly>> {
        check_index("n", n, self.size)?;
        if let Some(k) = self.cache.shifted.read().get(&n) {
            return Ok(Arc::clone(k));
        }
        let plus = self.prefixes(Sign::Plus, n);
        let minus = self.prefixes(Sign::Minus, n);
        let mut acc = Poly::zero();
        let mut p_pow = vec![BigRational::one()];
        for _ in 0..n {
            p_pow.push(p_pow.last().unwrap() * &self.p);
        }
        let mut q_pow = BigRational::one();
        for v in 0..=n {
            let mut scale = &p_pow[n - v] * &q_pow;
            if (n - v) % 2 == 1 {
                scale = -scale;
            }
            acc += &(minus[n - v].as_ref() * plus[v].as_ref()).scale(&scale);
            q_pow *= &self.q;
        }
        let built = Arc::new(acc);
        let mut guard = self.cache.shifted.write();
        Ok(Arc::clone(guard.entry(n).or_insert(built)))
    }

    /// `||k_n||^2`: the closed form `4^-n binom(N, n)` at `p = 1/2`, the
    /// grid sum otherwise.
    pub fn norm_sq(&self, n: usize) -> Result<BigRational> {
        check_index("n", n, self.size)?;
        if self.is_symmetric() {
            Ok(BigRational::new(
                binom(self.size as i64, n as i64),
                pow2(2 * n),
            ))
        } else {
            self.norm_sq_by_summation(n)
        }
    }

    /// `<k_n, k_n>` by summing over the grid, whatever `p` is.
    pub fn norm_sq_by_summation(&self, n: usize) -> Result<BigRational> {
        let k = self.shifted_k(n)?;
        Ok(self.inner_product(&k, &k))
    }
}

/// `K_n^(p)(x; N) = sum_v (-1)^(n-v) binom(N - x, n - v) binom(x, v) p^(n-v) q^v`
/// for any grid size, odd sizes included.
pub fn krawtchouk_unshifted(size: usize, p: &BigRational, n: usize) -> Poly {
    let q = BigRational::one() - p;
    let upper = int(size as i64);
    let zero = BigRational::zero();
    let mut acc = Poly::zero();
    for v in 0..=n {
        let mut scale = num_traits::pow(p.clone(), n - v) * num_traits::pow(q.clone(), v);
        if (n - v) % 2 == 1 {
            scale = -scale;
        }
        let term = &binom_poly(&upper, Sign::Minus, n - v) * &binom_poly(&zero, Sign::Plus, v);
        acc += &term.scale(&scale);
    }
    acc
}

/// `k_n(0; N)` at `p = 1/2`: `(-1)^(n/2) binom(N/2, n/2) / 2^n` for even `n`,
/// zero for odd `n`.
pub fn k_at_zero(size: usize, n: usize) -> Result<BigRational> {
    check_size(size)?;
    check_index("n", n, size)?;
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let value = BigRational::new(binom((size / 2) as i64, (n / 2) as i64), pow2(n));
    Ok(if (n / 2) % 2 == 1 { -value } else { value })
}

/// `k_m'(0; N)` at `p = 1/2`:
/// `2^(1-m) sum_{l=0}^{(m-1)/2} (-1)^l binom(N/2, l) / (m - 2l)` for odd `m`,
/// zero for even `m`.
pub fn k_prime_at_zero(size: usize, m: usize) -> Result<BigRational> {
    check_size(size)?;
    check_index("m", m, size)?;
    if m % 2 == 0 {
        return Ok(BigRational::zero());
    }
    let row = binomial_row(size / 2);
    let mut sum = BigRational::zero();
    for l in 0..=(m - 1) / 2 {
        let coeff = row.get(l).cloned().unwrap_or_default();
        let term = BigRational::new(coeff, BigInt::from(m - 2 * l));
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum / BigRational::from_integer(pow2(m - 1)))
}

/// Checks `k_n(x+1; N) - k_n(x; N) = K_(n-1)^(1/2)(x + N/2; N - 1)` as a
/// polynomial identity.
pub fn difference_identity_check(size: usize, n: usize) -> Result<bool> {
    check_size(size)?;
    if n == 0 || n > size {
        return Err(Error::IndexOutOfRange {
            what: "n",
            index: n as i64,
            max: size as i64,
        });
    }
    let fam = KrawtchoukFamily::symmetric(size)?;
    let k = fam.shifted_k(n)?;
    let lhs = &k.shift(&BigRational::one()) - &k;
    let half = int((size / 2) as i64);
    let rhs = krawtchouk_unshifted(size - 1, &rat(1, 2), n - 1).shift(&half);
    Ok(lhs == rhs)
}

/// Physicists' Hermite polynomial from `H_(n+1) = 2x H_n - 2n H_(n-1)`.
pub fn hermite_poly(n: usize) -> Poly {
    let two_x = Poly::linear(BigRational::zero(), int(2));
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// `(2/(Npq))^(n/2) n! K_n^(p)(sqrt(2Npq) x + Np; N)` at `p = 1/2` as an
/// exact polynomial.
///
/// `K_n(Np + y) = k_n(y)` has the parity of `n`, so only the powers
/// `y^(n - 2e)` occur, and for each of them the two square roots combine into
/// the rational factor `2^n (2/N)^e`.
pub fn scaled_krawtchouk(size: usize, n: usize) -> Result<Poly> {
    let fam = KrawtchoukFamily::symmetric(size)?;
    let k = fam.shifted_k(n)?;
    let two_over_n = rat(2, size as i64);
    let lead = BigRational::from_integer(factorial(n) * pow2(n));
    let mut out = Vec::with_capacity(n + 1);
    for (j, a) in k.coeffs().iter().enumerate() {
        if a.is_zero() {
            out.push(BigRational::zero());
            continue;
        }
        debug_assert_eq!((n - j) % 2, 0, "k_n lost its parity");
        let e = (n - j) / 2;
        out.push(a * &lead * num_traits::pow(two_over_n.clone(), e));
    }
    Ok(Poly::from_coeffs(out))
}

/// Largest deviation `|scaled K_n - H_n|` over the sample points, at `p = 1/2`.
pub fn hermite_limit_error(size: usize, n: usize, samples: &[BigRational]) -> Result<BigRational> {
    let diff = &scaled_krawtchouk(size, n)? - &hermite_poly(n);
    Ok(samples
        .iter()
        .map(|x| diff.eval(x).abs())
        .max()
        .unwrap_or_else(BigRational::zero))
}
