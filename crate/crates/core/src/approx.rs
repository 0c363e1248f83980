//! The Krawtchouk-Fourier approximation `F_N` of `sgn` and its three
//! constructions: orthogonal projection, the closed form in `k_n(0)`, and the
//! Lagrange interpolant through the sign points.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{binom, catalan, factorial, int, pow2};
use crate::error::{Error, Result};
use crate::krawtchouk::{check_size, k_at_zero, KrawtchoukFamily};
use crate::poly::{binom_poly_prefixes, Poly, Sign};

/// `F_N` together with its projection coefficients `c_0..=c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierApprox {
    size: usize,
    coefficients: Vec<BigRational>,
    polynomial: Poly,
}

impl FourierApprox {
    pub fn size(&self) -> usize {
        self.size
    }

    /// `c_n` for `n = 0..=N`; zeros included.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn polynomial(&self) -> &Poly {
        &self.polynomial
    }

    pub fn into_polynomial(self) -> Poly {
        self.polynomial
    }

    /// `F_N'(0)`, the linear coefficient.
    pub fn slope_at_zero(&self) -> BigRational {
        self.polynomial.coeff(1)
    }
}

/// The `N + 1` points `(i - N/2, sgn(i - N/2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPointSet {
    size: usize,
    points: Vec<(i64, i64)>,
}

impl SignPointSet {
    pub fn new(size: usize) -> Result<Self> {
        check_size(size)?;
        let half = (size / 2) as i64;
        let points = (-half..=half).map(|y| (y, y.signum())).collect();
        Ok(Self { size, points })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// True when `poly` passes through every point exactly.
    pub fn interpolated_by(&self, poly: &Poly) -> bool {
        self.points
            .iter()
            .all(|&(x, s)| poly.eval(&int(x)) == int(s))
    }
}

fn sign_projection(fam: &KrawtchoukFamily, n: usize) -> Result<BigRational> {
    let k = fam.shifted_k(n)?;
    if fam.is_symmetric() {
        if n % 2 == 0 {
            return Ok(BigRational::zero());
        }
        // 2^(1-N) sum_{y=1}^{N/2} k_n(y) binom(N, N/2 + y)
        let half = fam.half() as i64;
        let sum: BigRational = (1..=half)
            .map(|y| {
                k.eval(&int(y)) * BigRational::from_integer(binom(fam.size() as i64, half + y))
            })
            .sum();
        return Ok(sum / BigRational::from_integer(pow2(fam.size() - 1)));
    }
    // sgn(0) = 0, so the origin never contributes
    let mut sum = BigRational::zero();
    for y in fam.grid().filter(|&y| y != 0) {
        let term = k.eval(&int(y)) * fam.shifted_weight(y);
        if y > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// `c_n = <sgn, k_n> / ||k_n||^2`.
pub fn fourier_coefficient(fam: &KrawtchoukFamily, n: usize) -> Result<BigRational> {
    let proj = sign_projection(fam, n)?;
    if proj.is_zero() {
        return Ok(proj);
    }
    Ok(proj / fam.norm_sq(n)?)
}

/// `F_N = sum_n c_n k_n` by orthogonal projection in the given family.
pub fn build_direct(fam: &KrawtchoukFamily) -> Result<FourierApprox> {
    let mut coefficients = Vec::with_capacity(fam.size() + 1);
    let mut polynomial = Poly::zero();
    for n in 0..=fam.size() {
        let c = fourier_coefficient(fam, n)?;
        if !c.is_zero() {
            polynomial += &fam.shifted_k(n)?.scale(&c);
        }
        coefficients.push(c);
    }
    Ok(FourierApprox {
        size: fam.size(),
        coefficients,
        polynomial,
    })
}

/// `F_N = 2^(1-N) binom(N, N/2) sum_{n=0}^{N-2} k_n(0) k_(n+1)(x) / ||k_n||^2`.
pub fn build_closed_form(size: usize) -> Result<FourierApprox> {
    let fam = KrawtchoukFamily::symmetric(size)?;
    let prefactor = BigRational::new(binom(size as i64, (size / 2) as i64), pow2(size - 1));
    let mut coefficients = vec![BigRational::zero(); size + 1];
    let mut polynomial = Poly::zero();
    for n in (0..=size - 2).step_by(2) {
        let c = &prefactor * k_at_zero(size, n)? / fam.norm_sq(n)?;
        polynomial += &fam.shifted_k(n + 1)?.scale(&c);
        coefficients[n + 1] = c;
    }
    Ok(FourierApprox {
        size,
        coefficients,
        polynomial,
    })
}

/// `I_N(x) = sum_i sgn(i - N/2) binom(N/2 + x, i) binom(N/2 - x, N - i)`.
pub fn lagrange_interpolant(size: usize) -> Result<Poly> {
    check_size(size)?;
    let half = size / 2;
    let c = int(half as i64);
    let plus = binom_poly_prefixes(&c, Sign::Plus, size);
    let minus = binom_poly_prefixes(&c, Sign::Minus, size);
    let mut acc = Poly::zero();
    for i in 0..=size {
        if i == half {
            continue;
        }
        let basis = &plus[i] * &minus[size - i];
        if i > half {
            acc += &basis;
        } else {
            acc -= &basis;
        }
    }
    Ok(acc)
}

/// Christoffel-Darboux kernel `K_N(x, y) = sum_n k_n(y) k_n(x) / ||k_n||^2`
/// at grid points.
pub fn cd_kernel(fam: &KrawtchoukFamily, x: i64, y: i64) -> Result<BigRational> {
    let half = fam.half() as i64;
    for v in [x, y] {
        if v.abs() > half {
            return Err(Error::IndexOutOfRange {
                what: "grid point",
                index: v,
                max: half,
            });
        }
    }
    let (x, y) = (int(x), int(y));
    let mut sum = BigRational::zero();
    for n in 0..=fam.size() {
        let k = fam.shifted_k(n)?;
        sum += k.eval(&x) * k.eval(&y) / fam.norm_sq(n)?;
    }
    Ok(sum)
}

/// Compares the leading coefficient of `I_N` with
/// `(-1)^((N-2)/2) C((N-2)/2) / (N-1)!`.
pub fn leading_coeff_check(size: usize) -> Result<bool> {
    let interp = lagrange_interpolant(size)?;
    let m = (size - 2) / 2;
    let mut expected = catalan(m) / BigRational::from_integer(factorial(size - 1));
    if m % 2 == 1 {
        expected = -expected;
    }
    Ok(interp.degree() == Some(size - 1) && interp.leading_coeff() == expected)
}

/// `sgn` as a rational.
pub fn sgn(x: &BigRational) -> BigRational {
    if x.is_zero() {
        BigRational::zero()
    } else if x > &BigRational::zero() {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Delta-property residual `K_N(x, y) w_N(y + N/2) - [x = y]`.
pub fn cd_delta_residual(fam: &KrawtchoukFamily, x: i64, y: i64) -> Result<BigRational> {
    let value = cd_kernel(fam, x, y)? * fam.shifted_weight(y);
    Ok(if x == y {
        value - BigRational::one()
    } else {
        value
    })
}
