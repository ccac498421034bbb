//! Expressions `e^(a z) · z^γ · p(z)` closed under differentiation.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{int, Poly, Rational};

/// `e^(rate·z) · z^power · poly(z)`, kept canonical: `poly(0) != 0` unless the
/// polynomial is zero, with any factor `z^k` moved into `power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedExpr {
    rate: Rational,
    power: Rational,
    poly: Poly,
}

impl WeightedExpr {
    pub fn new(rate: Rational, power: Rational, poly: Poly) -> Self {
        let k = poly.zero_order();
        if poly.is_zero() {
            return WeightedExpr {
                rate,
                power: Rational::zero(),
                poly,
            };
        }
        WeightedExpr {
            rate,
            power: power + int(k as i64),
            poly: poly.shift_down(k),
        }
    }

    pub fn rate(&self) -> &Rational {
        &self.rate
    }

    pub fn power(&self) -> &Rational {
        &self.power
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `d/dz [e^(az) z^γ p] = e^(az) z^(γ-1) (a z p + γ p + z p')`.
    pub fn derivative(&self) -> WeightedExpr {
        if self.is_zero() {
            return self.clone();
        }
        let z = Poly::z();
        let inner = (&z * &self.poly).scale(&self.rate)
            + self.poly.scale(&self.power)
            + &z * &self.poly.derivative();
        WeightedExpr::new(self.rate.clone(), &self.power - int(1), inner)
    }

    pub fn nth_derivative(&self, m: usize) -> WeightedExpr {
        (0..m).fold(self.clone(), |w, _| w.derivative())
    }

    /// Multiplies by `e^(c z)`.
    pub fn mul_exp(&self, c: &Rational) -> WeightedExpr {
        WeightedExpr {
            rate: &self.rate + c,
            ..self.clone()
        }
    }

    pub fn mul_poly(&self, q: &Poly) -> WeightedExpr {
        WeightedExpr::new(self.rate.clone(), self.power.clone(), &self.poly * q)
    }

    pub fn scale(&self, c: &Rational) -> WeightedExpr {
        WeightedExpr::new(self.rate.clone(), self.power.clone(), self.poly.scale(c))
    }

    /// The polynomial `q` with `self = e^(rate z) z^power0 q(z)`, when
    /// `power - power0` is a non-negative integer.
    pub fn poly_relative_to(&self, power0: &Rational) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let diff = &self.power - power0;
        if !diff.denom().to_u64().is_some_and(|d| d == 1) {
            return None;
        }
        let k = diff.numer().to_usize()?;
        Some(self.poly.shift_up(k))
    }

    /// Sum of two expressions sharing rate; powers may differ by an integer.
    pub fn checked_add(&self, other: &WeightedExpr) -> Option<WeightedExpr> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.rate != other.rate {
            return None;
        }
        let base = if self.power <= other.power {
            &self.power
        } else {
            &other.power
        };
        let p = self.poly_relative_to(base)?;
        let q = other.poly_relative_to(base)?;
        Some(WeightedExpr::new(self.rate.clone(), base.clone(), p + q))
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        let rate = self.rate.to_f64().unwrap_or(f64::NAN);
        let power = self.power.to_f64().unwrap_or(f64::NAN);
        (rate * z).exp() * z.powf(power) * self.poly.eval_f64(z)
    }
}

impl fmt::Display for WeightedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e^({}*z) * z^({}) * ({})",
            self.rate, self.power, self.poly
        )
    }
}
