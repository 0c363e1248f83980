//! Fixed-point series for the few transcendental constants: `pi`, `ln 2`
//! and the sine integral at `pi`.
//!
//! A [`Fixed`] holds `mantissa / 10^scale`. Every truncating division adds
//! at most one unit in the last place; the routines count those operations
//! and carry enough guard digits that the count never reaches the digits the
//! caller asked for.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Guard digits carried on top of the caller's precision.
pub const GUARD_DIGITS: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    pub mantissa: BigInt,
    pub scale: u32,
}

impl Fixed {
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), unit(self.scale))
    }

    /// Drops to `scale` digits by truncation toward zero.
    pub fn truncated(&self, scale: u32) -> Fixed {
        if scale >= self.scale {
            return self.clone();
        }
        Fixed {
            mantissa: &self.mantissa / unit(self.scale - scale),
            scale,
        }
    }
}

/// `10^scale`, the fixed-point one.
pub fn unit(scale: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), scale as usize)
}

/// `atan(1/x)` scaled by `one`, with the number of truncating steps taken.
fn atan_inv(x: u64, one: &BigInt) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x_sq = &x * &x;
    let mut power = one / &x;
    let mut sum = power.clone();
    let mut ops = 1u64;
    let mut k = 1u64;
    loop {
        power /= &x_sq;
        let term = &power / BigInt::from(2 * k + 1);
        ops += 2;
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    // Tail after the last nonzero term is below one ulp.
    (sum, ops + 1)
}

/// `pi` to `scale` digits via Machin's formula, with an error bound in ulps.
fn pi_with_error(scale: u32) -> (Fixed, u64) {
    let one = unit(scale);
    let (a, ea) = atan_inv(5, &one);
    let (b, eb) = atan_inv(239, &one);
    let mantissa = a * 16 - b * 4;
    (Fixed { mantissa, scale }, 16 * ea + 4 * eb)
}

/// `pi` to `digits` decimal places (truncated), from `digits + GUARD_DIGITS`.
pub fn pi(digits: u32) -> Fixed {
    pi_with_error(digits + GUARD_DIGITS).0.truncated(digits)
}

/// `ln 2 = 2 atanh(1/3)` to `digits` places (truncated).
pub fn ln2(digits: u32) -> Fixed {
    let scale = digits + GUARD_DIGITS;
    let one = unit(scale);
    let nine = BigInt::from(9);
    let mut power = &one / BigInt::from(3);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &nine;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
    }
    Fixed {
        mantissa: sum * 2,
        scale,
    }
    .truncated(digits)
}

/// The Gibbs constant `(2/pi) Si(pi)` with its error accounting.
#[derive(Clone, Debug)]
pub struct GibbsSeries {
    /// Approximation carried at `scale` digits.
    pub value: Fixed,
    /// Magnitude of the first omitted series term: the alternating-series
    /// remainder of `Si(pi)`, scaled by `2/pi`.
    pub remainder: BigRational,
    /// Bound on the accumulated truncation error of the fixed-point steps.
    pub rounding: BigRational,
    /// Number of series terms summed.
    pub terms: u64,
}

impl GibbsSeries {
    pub fn error_bound(&self) -> BigRational {
        &self.remainder + &self.rounding
    }
}

/// `Si(pi) = sum_k (-1)^k pi^(2k+1) / ((2k+1) (2k+1)!)`, then `2 Si(pi) / pi`.
///
/// Past `k = 0` the term ratio `pi^2 (2k-1) / (2k (2k+1)^2)` is below one,
/// so the terms decrease in magnitude and the first omitted one bounds the
/// remainder.
pub fn gibbs_series(digits: u32) -> GibbsSeries {
    let scale = digits + GUARD_DIGITS;
    let one = unit(scale);
    let (pi_fixed, pi_err) = pi_with_error(scale);
    let pi_m = &pi_fixed.mantissa;
    let pi_sq = pi_m * pi_m / &one;

    // power_k = pi^(2k+1) / (2k+1)!
    let mut power = pi_m.clone();
    let mut sum = power.clone();
    let mut k = 1u64;
    let omitted = loop {
        power = &power * &pi_sq / &one / BigInt::from((2 * k) * (2 * k + 1));
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break term;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    };
    let terms = k;
    let value = BigInt::from(2) * &sum * &one / pi_m;

    let ulp = BigRational::new(BigInt::one(), one.clone());
    // With e = pi's error in ulps: pi^2 is off by at most 7e + 1, the power
    // sequence (bounded by pi^3/6 < 5.2, contracting from k = 2 on) stays
    // within 30e + 10, and each term adds one more truncation. The final
    // division by pi contributes e + 2.
    let rounding_ulps =
        BigInt::from(terms) * BigInt::from(30 * pi_err + 11) + BigInt::from(pi_err + 2);
    let rounding = BigRational::from_integer(rounding_ulps) * &ulp;
    // The omitted term truncated to zero, so the true one is under an ulp;
    // 2/pi < 1 keeps it there after scaling.
    let remainder = BigRational::from_integer(omitted.abs() + 1) * &ulp;

    GibbsSeries {
        value: Fixed {
            mantissa: value,
            scale,
        },
        remainder,
        rounding,
        terms,
    }
}
