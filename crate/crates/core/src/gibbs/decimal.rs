use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// How a rational is cut down to a fixed number of decimal places.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Nearest, ties to the even last digit.
    #[default]
    HalfEven,
    /// Toward zero: the printed digits are a prefix of the full expansion.
    Truncate,
}

impl FromStr for Rounding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "half-even" | "round" => Ok(Self::HalfEven),
            "truncate" | "trunc" => Ok(Self::Truncate),
            other => Err(format!("unknown rounding mode {other:?}")),
        }
    }
}

impl fmt::Display for Rounding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::HalfEven => "half-even",
            Self::Truncate => "truncate",
        })
    }
}

/// A decimal `mantissa * 10^-places`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecimalValue {
    mantissa: BigInt,
    places: u32,
    mode: Rounding,
}

fn ten_pow(places: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), places as usize)
}

impl DecimalValue {
    pub fn from_rational(value: &BigRational, places: u32, mode: Rounding) -> Self {
        let scaled = value * BigRational::from_integer(ten_pow(places));
        let (num, den) = (scaled.numer(), scaled.denom());
        // Euclidean division so the remainder is nonnegative.
        let (mut q, r) = num.div_mod_floor(den);
        match mode {
            Rounding::Truncate => {
                if q.is_negative() && !r.is_zero() {
                    q += 1;
                }
            }
            Rounding::HalfEven => {
                let twice = &r * 2;
                if twice > *den || (twice == *den && q.is_odd()) {
                    q += 1;
                }
            }
        }
        Self {
            mantissa: q,
            places,
            mode,
        }
    }

    /// Exponent of the last digit, `-places`.
    pub fn exponent(&self) -> i64 {
        -(self.places as i64)
    }

    pub fn places(&self) -> u32 {
        self.places
    }

    pub fn mode(&self) -> Rounding {
        self.mode
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), ten_pow(self.places))
    }

    /// Largest distance to the source value the rounding mode allows.
    pub fn error_bound(&self) -> BigRational {
        let ulp = BigRational::new(1.into(), ten_pow(self.places));
        match self.mode {
            Rounding::HalfEven => ulp / BigRational::from_integer(2.into()),
            Rounding::Truncate => ulp,
        }
    }
}

impl fmt::Display for DecimalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_string();
        let places = self.places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        if self.mantissa.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        let split = padded.len() - places;
        f.write_str(&padded[..split])?;
        if places > 0 {
            write!(f, ".{}", &padded[split..])?;
        }
        Ok(())
    }
}

impl FromStr for DecimalValue {
    type Err = String;

    /// Parses `[-]digits[.digits]`; the rounding mode is recorded as
    /// half-even.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(format!("not a decimal: {s:?}"));
        }
        let mut mantissa: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|e| format!("not a decimal: {s:?}: {e}"))?;
        if negative {
            mantissa = -mantissa;
        }
        Ok(Self {
            mantissa,
            places: frac_part.len() as u32,
            mode: Rounding::HalfEven,
        })
    }
}
