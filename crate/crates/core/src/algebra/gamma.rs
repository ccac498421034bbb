//! Exact values of the form `q · Γ(β+1)` with `q` rational.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::rational::{parse_rational, rising_factorial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaValue {
    pub coeff: Rational,
    pub beta: Rational,
}

impl GammaValue {
    pub fn new(coeff: Rational, beta: Rational) -> Self {
        GammaValue { coeff, beta }
    }

    pub fn zero(beta: Rational) -> Self {
        Self::new(Rational::zero(), beta)
    }

    /// `1 · Γ(β+1)`.
    pub fn unit(beta: Rational) -> Self {
        Self::new(Rational::one(), beta)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn checked_add(&self, other: &GammaValue) -> Result<GammaValue> {
        if self.beta != other.beta {
            return Err(Error::BetaMismatch {
                left: self.beta.clone(),
                right: other.beta.clone(),
            });
        }
        Ok(GammaValue::new(
            &self.coeff + &other.coeff,
            self.beta.clone(),
        ))
    }

    pub fn scale(&self, c: &Rational) -> GammaValue {
        GammaValue::new(&self.coeff * c, self.beta.clone())
    }

    /// Ratio of two values on the same base; the Γ factors cancel.
    pub fn ratio(&self, other: &GammaValue) -> Result<Option<Rational>> {
        if self.beta != other.beta {
            return Err(Error::BetaMismatch {
                left: self.beta.clone(),
                right: other.beta.clone(),
            });
        }
        Ok((!other.coeff.is_zero()).then(|| &self.coeff / &other.coeff))
    }
}

/// `Γ(β+m+1) = (β+1)_m Γ(β+1)`.
pub fn gamma_shift(beta: &Rational, m: u32) -> GammaValue {
    let coeff = rising_factorial(&(beta + Rational::one()), m);
    GammaValue::new(coeff, beta.clone())
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} × Γ({})", self.coeff, &self.beta + Rational::one())
    }
}

impl FromStr for GammaValue {
    type Err = Error;

    /// Accepts the display form `q × Γ(a)` and the ASCII form `q*Gamma(a)`.
    fn from_str(s: &str) -> Result<Self> {
        let (coeff_part, rest, gamma_tag) = if let Some(idx) = s.find(" × Γ(") {
            (&s[..idx], &s[idx..], " × Γ(")
        } else if let Some(idx) = s.find("*Gamma(") {
            (&s[..idx], &s[idx..], "*Gamma(")
        } else {
            return Err(Error::Parse {
                position: s.chars().count() + 1,
                message: "expected '× Γ(' or '*Gamma('".into(),
            });
        };
        let coeff = parse_rational(coeff_part.trim())?;
        let arg_start = coeff_part.len() + gamma_tag.len();
        let inner = rest[gamma_tag.len()..]
            .strip_suffix(')')
            .ok_or(Error::Parse {
                position: s.chars().count(),
                message: "expected closing ')'".into(),
            })?;
        let arg = parse_rational(inner).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: s[..arg_start].chars().count() + position,
                message,
            },
            other => other,
        })?;
        Ok(GammaValue::new(coeff, arg - Rational::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn gamma_shift_examples() {
        assert_eq!(gamma_shift(&rat(3, 2), 0), GammaValue::unit(rat(3, 2)));
        // Γ(7/2) = (5/2) Γ(5/2)
        assert_eq!(gamma_shift(&rat(3, 2), 1).coeff, rat(5, 2));
        // Γ(4) = 3!
        assert_eq!(gamma_shift(&int(0), 3).coeff, int(6));
    }

    #[test]
    fn mismatched_bases_do_not_add() {
        let a = GammaValue::unit(int(0));
        let b = GammaValue::unit(int(1));
        assert!(matches!(a.checked_add(&b), Err(Error::BetaMismatch { .. })));
        assert_eq!(a.checked_add(&a).unwrap().coeff, int(2));
    }

    #[test]
    fn display_and_parse() {
        let v = GammaValue::new(rat(7, 2), rat(3, 2));
        assert_eq!(v.to_string(), "7/2 × Γ(5/2)");
        assert_eq!(v.to_string().parse::<GammaValue>().unwrap(), v);
        assert_eq!(
            "-1/3*Gamma(1)".parse::<GammaValue>().unwrap(),
            GammaValue::new(rat(-1, 3), int(0))
        );
        assert!("7/2 × Γ(5/x)".parse::<GammaValue>().is_err());
    }
}
