//! Generalized Laguerre polynomials in the ordinary normalization
//!
//! `L(n, β)(z) = Σ_{m=0}^{n} (-1)^m binom(n+β, n-m) z^m / m!`,
//!
//! so that `Σ_n L(n, β) t^n = e^(-zt/(1-t)) / (1-t)^(β+1)` and
//! `d/dz L(n, β) = -L(n-1, β+1)`.

use num_traits::One;

use crate::algebra::{factorial, general_binomial, int, Poly, Rational};
use crate::weighted::WeightedExpr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaguerreParams {
    pub n: usize,
    pub beta: Rational,
}

impl LaguerreParams {
    pub fn poly(&self) -> Poly {
        laguerre(self.n, &self.beta)
    }
}

pub fn laguerre(n: usize, beta: &Rational) -> Poly {
    let top = int(n as i64) + beta;
    let coeffs = (0..=n)
        .map(|m| {
            let sign = if m % 2 == 0 { int(1) } else { int(-1) };
            sign * general_binomial(&top, (n - m) as u32) / factorial(m as u32)
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// `laguerre(n, β)` for `n >= 0`, the zero polynomial for negative `n`.
pub fn laguerre_by_negative_index(n: i64, beta: &Rational) -> Poly {
    if n < 0 {
        Poly::zero()
    } else {
        laguerre(n as usize, beta)
    }
}

/// Checks `d^n(z^(β+n) e^(-z)) = n! e^(-z) z^β L(n, β)` by symbolic
/// differentiation.
pub fn rodrigues_check(n: usize, beta: &Rational) -> bool {
    let seed = WeightedExpr::new(int(-1), beta + int(n as i64), Poly::one());
    let derived = seed.nth_derivative(n);
    if derived.rate() != &int(-1) {
        return false;
    }
    match derived.poly_relative_to(beta) {
        Some(p) => p == laguerre(n, beta).scale(&factorial(n as u32)),
        None => false,
    }
}

/// `z p'' + (β+1-z) p' + n p`; vanishes for `p = L(n, β)`.
pub fn laguerre_ode_residual(p: &Poly, n: usize, beta: &Rational) -> Poly {
    let z = Poly::z();
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let coeff = Poly::from_coeffs(vec![beta + Rational::one(), int(-1)]);
    &z * &d2 + &coeff * &d1 + p.scale(&int(n as i64))
}
