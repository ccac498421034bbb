//! Power series in `t`, truncated at a fixed order, with polynomial-in-`z`
//! coefficients. Generating functions of the Laguerre and M families live
//! here; coefficient extraction plays the role of contour inversion.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::algebra::{int, Poly, Rational};
use crate::error::{Error, Result};

/// Default truncation order for generating-function work.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl PowerSeries {
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Poly>) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        PowerSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(order, vec![Poly::one()])
    }

    /// Series with rational (z-independent) coefficients.
    pub fn from_scalars(order: usize, scalars: &[Rational]) -> Self {
        Self::from_coeffs(
            order,
            scalars
                .iter()
                .take(order + 1)
                .cloned()
                .map(Poly::constant)
                .collect(),
        )
    }

    /// `c · t^k`.
    pub fn monomial(order: usize, c: Poly, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        PowerSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order.min(self.order), self.coeffs.clone())
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (usize, &'a [Poly], &'a [Poly]) {
        let order = self.order.min(other.order);
        (order, &self.coeffs[..=order], &other.coeffs[..=order])
    }

    pub fn differentiate_in_z(&self) -> Self {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(Poly::derivative).collect(),
        }
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_poly(&Poly::constant(c.clone()))
    }

    /// Multiplies by `t`, dropping the term pushed past the order.
    pub fn shift_t(&self) -> Self {
        let mut coeffs = vec![Poly::zero()];
        coeffs.extend(self.coeffs.iter().take(self.order).cloned());
        PowerSeries {
            order: self.order,
            coeffs,
        }
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::CompositionDomain {
                constant: self.coeffs[0].to_string(),
            })
        }
    }

    /// `exp(u)` for `u(0) = 0`, via `k E_k = Σ_{j=1}^{k} j u_j E_{k-j}`.
    pub fn exp_series(u: &PowerSeries) -> Result<PowerSeries> {
        u.require_zero_constant()?;
        let n = u.order;
        let mut e: Vec<Poly> = Vec::with_capacity(n + 1);
        e.push(Poly::one());
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if u.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc + (&u.coeffs[j] * &e[k - j]).scale(&int(j as i64));
            }
            e.push(acc.scale(&(Rational::one() / int(k as i64))));
        }
        Ok(PowerSeries {
            order: n,
            coeffs: e,
        })
    }

    /// `(1 + u)^γ` for `u(0) = 0`, via
    /// `k F_k = Σ_{j=1}^{k} ((γ+1) j - k) u_j F_{k-j}`.
    pub fn binomial_series(u: &PowerSeries, gamma: &Rational) -> Result<PowerSeries> {
        u.require_zero_constant()?;
        let n = u.order;
        let g1 = gamma + Rational::one();
        let mut f: Vec<Poly> = Vec::with_capacity(n + 1);
        f.push(Poly::one());
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if u.coeffs[j].is_zero() {
                    continue;
                }
                let w = &g1 * int(j as i64) - int(k as i64);
                if w.is_zero() {
                    continue;
                }
                acc = acc + (&u.coeffs[j] * &f[k - j]).scale(&w);
            }
            f.push(acc.scale(&(Rational::one() / int(k as i64))));
        }
        Ok(PowerSeries {
            order: n,
            coeffs: f,
        })
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let (order, a, b) = self.aligned(rhs);
        PowerSeries {
            order,
            coeffs: a.iter().zip(b).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let (order, a, b) = self.aligned(rhs);
        PowerSeries {
            order,
            coeffs: a.iter().zip(b).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let (order, a, b) = self.aligned(rhs);
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                if !y.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + x * y;
                }
            }
        }
        PowerSeries { order, coeffs }
    }
}

/// `t + t^2 + ... = t/(1-t)`
fn t_over_one_minus_t(order: usize) -> PowerSeries {
    let scalars: Vec<Rational> = (0..=order)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    PowerSeries::from_scalars(order, &scalars)
}

/// `e^(-z t/(1-t))`
fn laguerre_exponential(order: usize) -> PowerSeries {
    let arg = t_over_one_minus_t(order).mul_poly(&-Poly::z());
    PowerSeries::exp_series(&arg).expect("argument has zero constant term")
}

/// `(1 + c t)^γ`
fn linear_power(order: usize, c: &Rational, gamma: &Rational) -> PowerSeries {
    let u = PowerSeries::monomial(order, Poly::constant(c.clone()), 1);
    PowerSeries::binomial_series(&u, gamma).expect("argument has zero constant term")
}

/// `e^(-zt/(1-t)) / (1-t)^(β+1)`
pub fn lgen(beta: &Rational, order: usize) -> PowerSeries {
    let prefactor = linear_power(order, &int(-1), &-(beta + Rational::one()));
    &laguerre_exponential(order) * &prefactor
}

/// `e^(-zt/(1-t)) / (1-t)^(β-s+1) · (1-2t)^(-s)`
pub fn mgen(beta: &Rational, s: &Rational, order: usize) -> PowerSeries {
    let a = linear_power(order, &int(-1), &-(beta - s + Rational::one()));
    let b = linear_power(order, &int(-2), &-s.clone());
    &(&laguerre_exponential(order) * &a) * &b
}

/// `∂_z L(z,t,β) = -t L(z,t,β+1)` modulo `t^(N+1)`.
pub fn dz_relation_check(beta: &Rational, order: usize) -> bool {
    let lhs = lgen(beta, order).differentiate_in_z();
    let rhs = lgen(&(beta + Rational::one()), order)
        .shift_t()
        .scale(&int(-1));
    lhs == rhs
}

/// `mgen = ((1-2t)/(1-t))^(-s) · lgen`, with the factor built as
/// `(1 + u)^(-s)`, `u = -t/(1-t)`.
pub fn mgen_factor_check(beta: &Rational, s: &Rational, order: usize) -> bool {
    let u = t_over_one_minus_t(order).scale(&int(-1));
    let factor = PowerSeries::binomial_series(&u, &-s.clone()).expect("zero constant term");
    mgen(beta, s, order) == &factor * &lgen(beta, order)
}

pub fn extract_coefficient(g: &PowerSeries, n: usize) -> Result<Poly> {
    g.coeffs.get(n).cloned().ok_or(Error::OutOfRange {
        index: n,
        order: g.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::deform::m_poly;
    use crate::laguerre::laguerre;

    fn betas() -> Vec<Rational> {
        vec![int(0), rat(1, 2), int(1), rat(3, 2), rat(7, 3), int(5)]
    }

    #[test]
    fn geometric_series() {
        let u = PowerSeries::monomial(8, Poly::constant(int(-1)), 1);
        let g = PowerSeries::binomial_series(&u, &int(-1)).unwrap();
        assert_eq!(g, PowerSeries::from_scalars(8, &vec![int(1); 9]));

        let u = PowerSeries::monomial(8, Poly::constant(int(-2)), 1);
        let g = PowerSeries::binomial_series(&u, &int(-1)).unwrap();
        let powers: Vec<Rational> = (0..9).map(|k| int(1 << k)).collect();
        assert_eq!(g, PowerSeries::from_scalars(8, &powers));
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(
            PowerSeries::exp_series(&PowerSeries::zero(5)).unwrap(),
            PowerSeries::one(5)
        );
    }

    #[test]
    fn exp_matches_factorial_coefficients() {
        // exp(c t) = Σ c^k t^k / k!
        let c = rat(-3, 2);
        let u = PowerSeries::monomial(10, Poly::constant(c.clone()), 1);
        let e = PowerSeries::exp_series(&u).unwrap();
        for k in 0..=10u32 {
            let expected = num_traits::pow(c.clone(), k as usize) / crate::algebra::factorial(k);
            assert_eq!(e.coeffs()[k as usize], Poly::constant(expected));
        }
    }

    #[test]
    fn binomial_with_rational_exponent_squares_back() {
        let u = PowerSeries::from_scalars(9, &[int(0), rat(1, 3), int(-2), int(5)]);
        let half = PowerSeries::binomial_series(&u, &rat(1, 2)).unwrap();
        let one_plus_u = &PowerSeries::one(9) + &u;
        assert_eq!(&half * &half, one_plus_u);
    }

    #[test]
    fn composition_domain_errors() {
        let bad = PowerSeries::one(4);
        assert!(matches!(
            PowerSeries::exp_series(&bad),
            Err(Error::CompositionDomain { .. })
        ));
        assert!(matches!(
            PowerSeries::binomial_series(&bad, &int(2)),
            Err(Error::CompositionDomain { .. })
        ));
    }

    #[test]
    fn lgen_coefficients() {
        let g = lgen(&rat(3, 2), 5);
        assert_eq!(extract_coefficient(&g, 0).unwrap(), Poly::one());
        assert_eq!(
            extract_coefficient(&g, 1).unwrap(),
            Poly::from_coeffs(vec![rat(5, 2), int(-1)])
        );
        assert_eq!(
            extract_coefficient(&lgen(&int(0), 3), 2).unwrap(),
            laguerre(2, &int(0))
        );
        for beta in betas() {
            let g = lgen(&beta, DEFAULT_ORDER);
            for n in 0..=DEFAULT_ORDER {
                assert_eq!(g.coeffs()[n], laguerre(n, &beta));
            }
        }
    }

    #[test]
    fn mgen_coefficients() {
        let beta = rat(3, 2);
        let g = mgen(&beta, &int(1), 5);
        assert_eq!(extract_coefficient(&g, 0).unwrap(), Poly::one());
        assert_eq!(
            extract_coefficient(&g, 1).unwrap(),
            Poly::from_coeffs(vec![rat(7, 2), int(-1)])
        );
        assert_eq!(
            extract_coefficient(&g, 2).unwrap(),
            Poly::from_coeffs(vec![rat(71, 8), rat(-9, 2), rat(1, 2)])
        );
        assert_eq!(mgen(&beta, &int(0), 7), lgen(&beta, 7));
        for s in 0..=3 {
            let g = mgen(&beta, &int(s), 8);
            for n in 0..=8 {
                assert_eq!(g.coeffs()[n], m_poly(n, &beta, &int(s)));
            }
        }
    }

    #[test]
    fn extract_out_of_range() {
        let g = lgen(&int(0), 4);
        assert!(matches!(
            extract_coefficient(&g, 5),
            Err(Error::OutOfRange { index: 5, order: 4 })
        ));
    }

    #[test]
    fn dz_relation() {
        assert!(dz_relation_check(&int(0), 6));
        assert!(dz_relation_check(&rat(3, 2), 8));
        assert!(dz_relation_check(&rat(7, 3), 0));
    }

    #[test]
    fn factor_relation() {
        assert!(mgen_factor_check(&rat(3, 2), &int(0), 6));
        assert!(mgen_factor_check(&rat(3, 2), &int(1), 8));
        assert!(mgen_factor_check(&int(2), &int(3), 10));
        assert!(mgen_factor_check(&rat(1, 2), &rat(-5, 3), 7));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = lgen(&int(1), 6);
        let b = lgen(&int(1), 3);
        let sum = &a + &b;
        assert_eq!(sum.order(), 3);
        assert_eq!(sum, (&a.truncate(3) + &b));
    }
}
