//! First overshoot of `F_N`, the classical Gibbs constant, and the
//! steepness/overshoot tables.
//!
//! The critical point is isolated with exact arithmetic only: `F_N'` is
//! cleared to integer coefficients and its sign at a rational point is the
//! sign of one homogenized Horner sum.

mod decimal;
pub mod series;

pub use decimal::{DecimalValue, Rounding};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::approx::lagrange_interpolant;
use crate::combinat::{int, rat};
use crate::error::{Error, Result};
use crate::krawtchouk::check_size;
use crate::poly::Poly;
use crate::steepident::steepness_exact;

/// Default scan step for the critical-point search.
pub fn default_scan_step() -> BigRational {
    rat(1, 8)
}

/// A polynomial cleared to integer numerators for fast exact evaluation.
#[derive(Clone, Debug)]
pub struct ExactEvaluator {
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl ExactEvaluator {
    pub fn new(poly: &Poly) -> Self {
        let (numer, denom) = poly.integer_form();
        Self { numer, denom }
    }

    // sum_i numer[i] a^i b^(d-i); the value is this over denom * b^d.
    fn homogenized(&self, x: &BigRational) -> BigInt {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::one();
        for (i, c) in self.numer.iter().enumerate().rev() {
            if i + 1 == self.numer.len() {
                acc = c.clone();
            } else {
                b_pow *= b;
                acc = acc * a + c * &b_pow;
            }
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.homogenized(x).sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        if self.numer.is_empty() {
            return BigRational::zero();
        }
        let degree = self.numer.len() - 1;
        let scale = &self.denom * num_traits::pow(x.denom().clone(), degree);
        BigRational::new(self.homogenized(x), scale)
    }
}

/// Isolating interval for the first positive zero of `F_N'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub size: usize,
    pub theta_lo: BigRational,
    pub theta_hi: BigRational,
}

impl CriticalPoint {
    pub fn width(&self) -> BigRational {
        &self.theta_hi - &self.theta_lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.theta_lo + &self.theta_hi) / int(2)
    }
}

/// Scans `F'` at `step, 2 step, ...` up to `N/2` for the first point where it
/// is no longer positive. Returns the bracketing scan cell.
fn scan(deriv: &ExactEvaluator, size: usize, step: &BigRational) -> Result<CriticalPoint> {
    let limit = int((size / 2) as i64);
    let mut prev = BigRational::zero();
    let mut x = step.clone();
    while x <= limit {
        if deriv.sign_at(&x) != Ordering::Greater {
            return Ok(CriticalPoint {
                size,
                theta_lo: prev,
                theta_hi: x,
            });
        }
        prev = x.clone();
        x += step;
    }
    Err(Error::NoCriticalPoint {
        size,
        limit: size / 2,
    })
}

/// Halves the bracket until it is no wider than `tol`, keeping
/// `F'(lo) > 0 >= F'(hi)`.
fn bisect(deriv: &ExactEvaluator, cp: &mut CriticalPoint, tol: &BigRational) {
    while cp.width() > *tol || cp.theta_lo.is_zero() {
        let mid = cp.midpoint();
        if deriv.sign_at(&mid) == Ordering::Greater {
            cp.theta_lo = mid;
        } else {
            cp.theta_hi = mid;
        }
    }
}

fn check_search_args(tol: &BigRational, step: &BigRational) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance(tol.clone()));
    }
    if !step.is_positive() {
        return Err(Error::InvalidStep(step.clone()));
    }
    Ok(())
}

/// First positive critical point of `F_N`, isolated to width `tol` by a sign
/// scan with the default step followed by bisection.
pub fn smallest_critical_point(size: usize, tol: &BigRational) -> Result<CriticalPoint> {
    smallest_critical_point_with_step(size, tol, &default_scan_step())
}

pub fn smallest_critical_point_with_step(
    size: usize,
    tol: &BigRational,
    step: &BigRational,
) -> Result<CriticalPoint> {
    check_size(size)?;
    check_search_args(tol, step)?;
    let deriv = ExactEvaluator::new(&lagrange_interpolant(size)?.derivative());
    let mut cp = scan(&deriv, size, step)?;
    bisect(&deriv, &mut cp, tol);
    Ok(cp)
}

/// `F_N(theta_N)` with the interval that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvershootResult {
    pub size: usize,
    pub theta_lo: BigRational,
    pub theta_hi: BigRational,
    /// `F_N` at the midpoint of the interval, exact.
    pub value: BigRational,
    pub decimal: DecimalValue,
    pub digits: u32,
    /// True when every value `F_N` can take on the interval prints the same.
    pub certified: bool,
}

/// Overshoot computation knobs.
#[derive(Clone, Debug)]
pub struct OvershootOptions {
    pub digits: u32,
    pub rounding: Rounding,
    pub scan_step: BigRational,
}

impl Default for OvershootOptions {
    fn default() -> Self {
        Self {
            digits: 6,
            rounding: Rounding::Truncate,
            scan_step: default_scan_step(),
        }
    }
}

impl OvershootOptions {
    pub fn with_digits(digits: u32) -> Self {
        Self {
            digits,
            ..Self::default()
        }
    }
}

// Extra halvings allowed past the initial tolerance before giving up on a
// value that sits on a rounding boundary.
const MAX_REFINEMENTS: usize = 200;

/// `F_N(theta_N)` printed to `digits` places.
///
/// The interval starts at width `10^-(digits+6)` and is halved until
/// `F_N(lo)`, `F_N(hi)`, `F_N(mid)` and the upper bound
/// `F_N(mid) + max(|F'(lo)|, |F'(hi)|) * width / 2` all print the same.
/// `F_N(theta_N)` lies between `F_N(mid)` and that bound, so the printed
/// digits are the digits of the maximum itself.
pub fn overshoot(size: usize, opts: &OvershootOptions) -> Result<OvershootResult> {
    check_size(size)?;
    let digits = opts.digits;
    let tol = BigRational::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), digits as usize + 6),
    );
    check_search_args(&tol, &opts.scan_step)?;
    let f = lagrange_interpolant(size)?;
    let value_eval = ExactEvaluator::new(&f);
    let deriv = ExactEvaluator::new(&f.derivative());

    let mut cp = scan(&deriv, size, &opts.scan_step)?;
    let mut tol = tol;
    let print = |v: &BigRational| DecimalValue::from_rational(v, digits, opts.rounding);
    let mut refinements = 0;
    loop {
        bisect(&deriv, &mut cp, &tol);
        let mid = cp.midpoint();
        let value = value_eval.eval(&mid);
        let shown = print(&value);
        let slope = deriv
            .eval(&cp.theta_lo)
            .abs()
            .max(deriv.eval(&cp.theta_hi).abs());
        let upper = &value + slope * cp.width() / int(2);
        let certified = [
            value_eval.eval(&cp.theta_lo),
            value_eval.eval(&cp.theta_hi),
            upper,
        ]
        .iter()
        .all(|v| print(v) == shown);
        if certified || refinements == MAX_REFINEMENTS {
            return Ok(OvershootResult {
                size,
                theta_lo: cp.theta_lo,
                theta_hi: cp.theta_hi,
                value,
                decimal: shown,
                digits,
                certified,
            });
        }
        tol /= int(2);
        refinements += 1;
    }
}

/// The classical Gibbs constant `(2/pi) int_0^pi sin(t)/t dt` with its
/// certified error.
#[derive(Clone, Debug)]
pub struct GibbsConstant {
    pub value: DecimalValue,
    /// Unrounded approximation the digits were taken from.
    pub approximation: BigRational,
    /// Alternating-series remainder bound.
    pub remainder: BigRational,
    /// Remainder plus fixed-point truncation error.
    pub error_bound: BigRational,
}

pub fn gibbs_constant_certified(digits: u32, rounding: Rounding) -> GibbsConstant {
    let s = series::gibbs_series(digits);
    let approximation = s.value.to_rational();
    GibbsConstant {
        value: DecimalValue::from_rational(&approximation, digits, rounding),
        approximation,
        remainder: s.remainder.clone(),
        error_bound: s.error_bound(),
    }
}

/// `gamma` to `digits` places, rounded half-even.
pub fn gibbs_constant(digits: u32) -> DecimalValue {
    gibbs_constant_certified(digits, Rounding::HalfEven).value
}

/// `F_N'(0)` printed to `digits` places for each `N`, in input order.
pub fn steepness_table(
    sizes: &[usize],
    digits: u32,
    rounding: Rounding,
) -> Result<Vec<(usize, BigRational, DecimalValue)>> {
    sizes
        .par_iter()
        .map(|&n| {
            let exact = steepness_exact(n)?;
            let shown = DecimalValue::from_rational(&exact, digits, rounding);
            Ok((n, exact, shown))
        })
        .collect()
}

/// Overshoot for each `N`, in input order; failures stay per row.
pub fn overshoot_table(
    sizes: &[usize],
    opts: &OvershootOptions,
) -> Vec<(usize, Result<OvershootResult>)> {
    sizes.par_iter().map(|&n| (n, overshoot(n, opts))).collect()
}
