//! Dense univariate polynomials in `z` over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{binomial, int, Rational};

/// `coeffs[k]` is the coefficient of `z^k`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, m: usize) -> Poly {
        (0..m).fold(self.clone(), |p, _| p.derivative())
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root
    /// at `z = 0`. Zero for the zero polynomial.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `z^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn evaluate(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * z + a)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * z + a.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(z + c)`.
    pub fn shift_argument(&self, c: &Rational) -> Poly {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (k, a) in self.coeffs.iter().enumerate() {
            // a (z + c)^k = a sum_j binom(k, j) c^(k-j) z^j
            let mut c_pow = Rational::one();
            for j in (0..=k).rev() {
                out[j] += a * binomial(k as u32, j as u32) * &c_pow;
                c_pow *= c;
            }
        }
        Poly::from_coeffs(out)
    }

    /// `p(c z)`.
    pub fn scale_argument(&self, c: &Rational) -> Poly {
        let mut c_pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &c_pow);
            c_pow *= c;
        }
        Poly::from_coeffs(out)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($Op:ident, $op:ident) => {
        impl $Op for Poly {
            type Output = Poly;
            fn $op(self, rhs: Poly) -> Poly {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&Poly> for Poly {
            type Output = Poly;
            fn $op(self, rhs: &Poly) -> Poly {
                (&self).$op(rhs)
            }
        }
        impl $Op<Poly> for &Poly {
            type Output = Poly;
            fn $op(self, rhs: Poly) -> Poly {
                self.$op(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

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
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = a.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn derivative_example() {
        let p = Poly::from_ints(&[0, -3, 1]);
        assert_eq!(p.derivative(), Poly::from_ints(&[-3, 2]));
        assert!(Poly::from_ints(&[7]).derivative().is_zero());
    }

    #[test]
    fn shift_argument_example() {
        assert_eq!(
            Poly::z().shift_argument(&int(-1)),
            Poly::from_ints(&[-1, 1])
        );
        // (z+1)^2 = z^2 + 2z + 1, Taylor-shift by hand
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.shift_argument(&int(1)), Poly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn evaluate_example() {
        assert_eq!(Poly::from_ints(&[1, 0, 1]).evaluate(&int(2)), int(5));
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!((&p - &p), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn display() {
        let p = Poly::from_coeffs(vec![rat(71, 8), rat(-9, 2), rat(1, 2)]);
        assert_eq!(p.to_string(), "1/2*z^2 - 9/2*z + 71/8");
        assert_eq!((-Poly::z()).to_string(), "-z");
    }
}
