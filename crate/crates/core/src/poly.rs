//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::factorial;

/// Coefficient `i` multiplies `x^i`. The last stored coefficient is never
/// zero; the zero polynomial stores nothing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

/// Direction of the variable inside [`binom_poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// Builds `sum_i numer[i] x^i / denom`.
    pub fn from_integer_form(numer: Vec<BigInt>, denom: &BigInt) -> Self {
        Self::from_coeffs(
            numer
                .into_iter()
                .map(|c| BigRational::new(c, denom.clone()))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(x + a)`.
    pub fn shift(&self, a: &BigRational) -> Self {
        let step = Self::linear(a.clone(), BigRational::one());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &step;
            acc += &Self::constant(c.clone());
        }
        acc
    }

    /// `p(s x)`.
    pub fn scale_var(&self, s: &BigRational) -> Self {
        let mut power = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= s;
        }
        Self::from_coeffs(out)
    }

    /// True when every even-power coefficient vanishes.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// True when every odd-power coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Splits into integer numerators over the least common denominator.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        (numer, denom)
    }
}

fn mul_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    // Schoolbook product on integer numerators; one reduction per output
    // coefficient instead of one per partial product.
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (na, da) = self.integer_form();
        let (nb, db) = rhs.integer_form();
        Poly::from_integer_form(mul_integer(&na, &nb), &(da * db))
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "({mag})*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The polynomial `binom(c + s x, k)` in `x`, as the falling-factorial product
/// `(c + s x)(c + s x - 1)...(c + s x - k + 1) / k!`.
pub fn binom_poly(c: &BigRational, sign: Sign, k: usize) -> Poly {
    // With c = p/q each factor is (p - j q + s q x) / q.
    let p = c.numer();
    let q = c.denom();
    let slope = match sign {
        Sign::Plus => q.clone(),
        Sign::Minus => -q.clone(),
    };
    let mut numer = vec![BigInt::one()];
    for j in 0..k {
        let constant = p - q * BigInt::from(j);
        let mut next = vec![BigInt::zero(); numer.len() + 1];
        for (i, a) in numer.iter().enumerate() {
            next[i] += a * &constant;
            next[i + 1] += a * &slope;
        }
        numer = next;
    }
    let denom = num_traits::pow(q.clone(), k) * factorial(k);
    Poly::from_integer_form(numer, &denom)
}

/// Successive falling-factorial binomials `binom(c + s x, k)` for `k = 0..=max`.
pub fn binom_poly_prefixes(c: &BigRational, sign: Sign, max: usize) -> Vec<Poly> {
    let s = match sign {
        Sign::Plus => BigRational::one(),
        Sign::Minus => -BigRational::one(),
    };
    let mut out = Vec::with_capacity(max + 1);
    let mut current = Poly::one();
    out.push(current.clone());
    for k in 0..max {
        let factor = Poly::linear(
            (c - BigRational::from_integer(k.into())) / BigRational::from_integer((k + 1).into()),
            s.clone() / BigRational::from_integer((k + 1).into()),
        );
        current = &current * &factor;
        out.push(current.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{int, rat};

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn ring_examples() {
        let a = p(&[(1, 1), (1, 1)]);
        let b = p(&[(-1, 1), (1, 1)]);
        assert_eq!(&a * &b, p(&[(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(&a + &Poly::zero(), a);
        assert_eq!(p(&[(0, 1), (1, 2)]).scale(&int(3)), p(&[(0, 1), (3, 2)]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a * &Poly::zero()).degree(), None);
    }

    #[test]
    fn trimming() {
        let q = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(q.degree(), Some(0));
        assert_eq!(Poly::from_coeffs(vec![int(0)]), Poly::zero());
    }

    #[test]
    fn eval_examples() {
        let q = p(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(q.eval(&int(2)), int(3));
        let f4 = p(&[(0, 1), (7, 6), (0, 1), (-1, 6)]);
        assert_eq!(f4.eval(&int(1)), int(1));
        assert_eq!(f4.eval(&int(0)), int(0));
        assert_eq!(p(&[(5, 3), (2, 1)]).eval(&int(0)), rat(5, 3));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            p(&[(0, 1), (0, 1), (1, 1)]).derivative(),
            p(&[(0, 1), (2, 1)])
        );
        assert_eq!(Poly::constant(int(9)).derivative(), Poly::zero());
        let f4 = p(&[(0, 1), (7, 6), (0, 1), (-1, 6)]);
        assert_eq!(f4.derivative(), p(&[(7, 6), (0, 1), (-1, 2)]));
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(&int(2), Sign::Plus, 1), p(&[(2, 1), (1, 1)]));
        assert_eq!(
            binom_poly(&int(2), Sign::Minus, 2),
            p(&[(1, 1), (-3, 2), (1, 2)])
        );
        assert_eq!(binom_poly(&rat(7, 5), Sign::Minus, 0), Poly::one());
    }

    #[test]
    fn prefixes_match_direct() {
        let c = rat(5, 2);
        for sign in [Sign::Plus, Sign::Minus] {
            let pre = binom_poly_prefixes(&c, sign, 9);
            for (k, poly) in pre.iter().enumerate() {
                assert_eq!(poly, &binom_poly(&c, sign, k));
            }
        }
    }

    #[test]
    fn shift_and_scale_var() {
        let q = p(&[(1, 1), (2, 1), (3, 1)]);
        let shifted = q.shift(&rat(1, 2));
        for x in [-3, 0, 2, 7] {
            assert_eq!(shifted.eval(&int(x)), q.eval(&(int(x) + rat(1, 2))));
            assert_eq!(
                q.scale_var(&rat(-2, 3)).eval(&int(x)),
                q.eval(&(int(x) * rat(-2, 3)))
            );
        }
    }

    #[test]
    fn parity_flags() {
        assert!(p(&[(0, 1), (1, 1), (0, 1), (4, 1)]).is_odd());
        assert!(p(&[(2, 1), (0, 1), (4, 1)]).is_even());
        assert!(!p(&[(2, 1), (1, 1)]).is_odd());
    }

    #[test]
    fn display() {
        assert_eq!(
            p(&[(0, 1), (7, 6), (0, 1), (-1, 6)]).to_string(),
            "-(1/6)*x^3 + (7/6)*x"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn integer_form_roundtrip() {
        let q = p(&[(1, 2), (-2, 3), (5, 1)]);
        let (numer, denom) = q.integer_form();
        assert_eq!(denom, BigInt::from(6));
        assert_eq!(Poly::from_integer_form(numer, &denom), q);
    }
}
