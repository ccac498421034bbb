//! Exact rational scalars and the factorial-type products built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `x (x-1) ... (x-k+1) / k!`
pub fn general_binomial(x: &Rational, k: u32) -> Rational {
    falling_factorial(x, k) / factorial(k)
}

/// Pochhammer symbol `x (x+1) ... (x+k-1)`.
pub fn rising_factorial(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `x (x-1) ... (x-k+1)`
pub fn falling_factorial(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

pub fn factorial(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * int(j as i64))
}

/// Integer binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    general_binomial(&int(n as i64), k)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Parses `"p/q"`, a plain integer, or a finite decimal such as `"-0.25"`.
///
/// Error positions are 1-based columns into `input`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let bytes = input.as_bytes();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(1, "empty number"));
    }

    let mut pos = 0;
    let negative = match bytes[0] {
        b'-' => {
            pos = 1;
            true
        }
        b'+' => {
            pos = 1;
            false
        }
        _ => false,
    };

    let digits = |start: usize| -> usize {
        bytes[start..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count()
    };

    let int_len = digits(pos);
    if int_len == 0 {
        return Err(err(pos + 1, "expected a digit"));
    }
    let int_part: BigInt = input[pos..pos + int_len].parse().expect("ascii digits");
    pos += int_len;

    let mut value = Rational::from_integer(int_part);
    if pos < bytes.len() {
        match bytes[pos] {
            b'/' => {
                let den_len = digits(pos + 1);
                if den_len == 0 {
                    return Err(err(pos + 2, "expected a denominator digit after '/'"));
                }
                let den: BigInt = input[pos + 1..pos + 1 + den_len]
                    .parse()
                    .expect("ascii digits");
                if den.is_zero() {
                    return Err(err(pos + 2, "zero denominator"));
                }
                value /= Rational::from_integer(den);
                pos += 1 + den_len;
            }
            b'.' => {
                let frac_len = digits(pos + 1);
                if frac_len == 0 {
                    return Err(err(pos + 2, "expected a digit after '.'"));
                }
                let frac: BigInt = input[pos + 1..pos + 1 + frac_len]
                    .parse()
                    .expect("ascii digits");
                let scale = num_traits::pow(BigInt::from(10), frac_len);
                value += Rational::new(frac, scale);
                pos += 1 + frac_len;
            }
            _ => {}
        }
    }
    if pos != bytes.len() {
        return Err(err(pos + 1, "unexpected character"));
    }
    Ok(if negative { -value } else { value })
}
