//! The sign-indefinite density
//!
//! `D(s, β)(z) = (-1)^s e^z d^s/dz^s (e^(-2z) z^β)`
//!
//! and exact integrals against it. Every integral reduces to a rational
//! multiple of `Γ(β+1)` through the monomial reduction
//! `z^n D(s, β) = Σ_p binom(n, p) s(s-1)…(s-p+1) D(s-p, β+n-p)`
//! together with `∫_0^∞ D(s, γ) dz = Γ(γ+1)`.

use num_traits::{One, Zero};

use crate::algebra::{
    binomial, factorial, falling_factorial, int, rising_factorial, GammaValue, Poly, Rational,
};
use crate::error::{Error, Result};
use crate::laguerre::laguerre;
pub use crate::weighted::WeightedExpr;

/// Integer strength `s` and parameter `β` with `β - s > -1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeasureParams {
    s: u32,
    beta: Rational,
}

impl MeasureParams {
    pub fn new(s: u32, beta: Rational) -> Result<Self> {
        if &beta - int(s as i64) <= int(-1) {
            return Err(Error::Integrability { s, beta });
        }
        Ok(MeasureParams { s, beta })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn s_rational(&self) -> Rational {
        int(self.s as i64)
    }
}

pub fn is_admissible(s: u32, beta: &Rational) -> bool {
    beta - int(s as i64) > int(-1)
}

/// Derivative form without the admissibility check. The expression exists
/// for every β; only its integrals need `β - s > -1`.
pub fn rodrigues_density(s: u32, beta: &Rational) -> WeightedExpr {
    let seed = WeightedExpr::new(int(-2), beta.clone(), Poly::one());
    let sign = if s.is_multiple_of(2) { int(1) } else { int(-1) };
    seed.nth_derivative(s as usize)
        .mul_exp(&int(1))
        .scale(&sign)
}

pub fn density(s: u32, beta: &Rational) -> Result<WeightedExpr> {
    MeasureParams::new(s, beta.clone())?;
    Ok(rodrigues_density(s, beta))
}

/// `(-1)^s s! z^(β-s) e^(-z) L(s, β-s)(2z)`.
pub fn density_closed_form(s: u32, beta: &Rational) -> Result<WeightedExpr> {
    MeasureParams::new(s, beta.clone())?;
    Ok(closed_form_expr(s, beta))
}

/// The closed form without the integrability check; as an expression it
/// equals [`rodrigues_density`] for every `β`.
pub fn closed_form_expr(s: u32, beta: &Rational) -> WeightedExpr {
    let shifted = beta - int(s as i64);
    let sign = if s.is_multiple_of(2) { int(1) } else { int(-1) };
    let poly = laguerre(s as usize, &shifted)
        .scale_argument(&int(2))
        .scale(&(sign * factorial(s)));
    WeightedExpr::new(int(-1), shifted, poly)
}

/// One term `coeff · D(s_index, beta_index)` of a monomial reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTerm {
    pub p: u32,
    pub coeff: Rational,
    /// `s - p`; negative exactly when `coeff` is zero.
    pub s_index: i64,
    pub beta_index: Rational,
}

/// Writes `z^n D(s, β)` as `Σ_{p=0}^{n} binom(n, n-p) s^(p falling) D(s-p, β+n-p)`.
pub fn monomial_reduction(n: u32, s: u32, beta: &Rational) -> Vec<ReductionTerm> {
    let s_r = int(s as i64);
    (0..=n)
        .map(|p| ReductionTerm {
            p,
            coeff: binomial(n, n - p) * falling_factorial(&s_r, p),
            s_index: s as i64 - p as i64,
            beta_index: beta + int((n - p) as i64),
        })
        .collect()
}

/// Re-expands `z^n D(s, β)` from its reduction terms and compares.
pub fn reduction_round_trip(n: u32, s: u32, beta: &Rational) -> bool {
    let target = rodrigues_density(s, beta).mul_poly(&Poly::monomial(int(1), n as usize));
    let mut sum = WeightedExpr::new(int(-1), int(0), Poly::zero());
    for term in monomial_reduction(n, s, beta) {
        if term.coeff.is_zero() {
            continue;
        }
        let piece = rodrigues_density(term.s_index as u32, &term.beta_index).scale(&term.coeff);
        match sum.checked_add(&piece) {
            Some(next) => sum = next,
            None => return false,
        }
    }
    sum == target
}

/// `∫_0^∞ z^n D(s, β) dz` as a multiple of `Γ(β+1)`.
pub fn moment(n: u32, s: u32, beta: &Rational) -> Result<GammaValue> {
    let params = MeasureParams::new(s, beta.clone())?;
    Ok(GammaValue::new(moment_coeff(n, &params), beta.clone()))
}

fn moment_coeff(n: u32, params: &MeasureParams) -> Rational {
    let one = Rational::one();
    monomial_reduction(n, params.s, &params.beta)
        .into_iter()
        .filter(|t| !t.coeff.is_zero())
        // Γ(β + n - p + 1) = (β+1)_{n-p} Γ(β+1)
        .map(|t| t.coeff * rising_factorial(&(&params.beta + &one), n - t.p))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Moment functional `p ↦ ∫ p D(s, β) dz` with cached moments.
#[derive(Debug, Clone)]
pub struct MomentFunctional {
    params: MeasureParams,
    moments: Vec<Rational>,
}

impl MomentFunctional {
    pub fn new(params: MeasureParams) -> Self {
        MomentFunctional {
            params,
            moments: Vec::new(),
        }
    }

    pub fn params(&self) -> &MeasureParams {
        &self.params
    }

    fn ensure(&mut self, degree: usize) {
        while self.moments.len() <= degree {
            let n = self.moments.len() as u32;
            self.moments.push(moment_coeff(n, &self.params));
        }
    }

    /// Rational part of the integral (the multiplier of `Γ(β+1)`).
    pub fn apply_coeff(&mut self, p: &Poly) -> Rational {
        let Some(deg) = p.degree() else {
            return Rational::zero();
        };
        self.ensure(deg);
        p.coeffs()
            .iter()
            .zip(&self.moments)
            .fold(Rational::zero(), |acc, (c, m)| acc + c * m)
    }

    pub fn apply(&mut self, p: &Poly) -> GammaValue {
        GammaValue::new(self.apply_coeff(p), self.params.beta.clone())
    }

    pub fn inner_product(&mut self, p: &Poly, q: &Poly) -> GammaValue {
        self.apply(&(p * q))
    }
}

/// `⟨p, q⟩ = ∫_0^∞ p q D(s, β) dz`.
pub fn inner_product(p: &Poly, q: &Poly, s: u32, beta: &Rational) -> Result<GammaValue> {
    let params = MeasureParams::new(s, beta.clone())?;
    Ok(MomentFunctional::new(params).inner_product(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::deform::m_poly;
    use crate::series::{mgen, PowerSeries};

    fn admissible_grid(max_s: u32) -> Vec<(u32, Rational)> {
        let betas = [int(0), rat(1, 2), int(1), rat(3, 2), rat(7, 3), int(5)];
        let mut out = Vec::new();
        for s in 0..=max_s {
            for b in &betas {
                if is_admissible(s, b) {
                    out.push((s, b.clone()));
                }
            }
        }
        out
    }

    /// Second exact route: integrate the closed form term by term on the
    /// base `Γ(β-s+1)` and convert with `Γ(β+1) = (β-s+1)_s Γ(β-s+1)`.
    fn moment_via_closed_form(n: u32, s: u32, beta: &Rational) -> Rational {
        let d = density_closed_form(s, beta).unwrap();
        let base = beta - int(s as i64);
        let q = d.poly_relative_to(&base).unwrap();
        let one = Rational::one();
        let total = q
            .coeffs()
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, c)| {
                acc + c * rising_factorial(&(&base + &one), n + k as u32)
            });
        total / rising_factorial(&(&base + &one), s)
    }

    #[test]
    fn admissibility() {
        assert!(MeasureParams::new(1, rat(3, 2)).is_ok());
        assert!(MeasureParams::new(2, int(1)).is_err());
        assert!(MeasureParams::new(2, rat(11, 10)).is_ok());
        assert!(matches!(
            density(3, &int(1)),
            Err(Error::Integrability { s: 3, .. })
        ));
        assert!(moment(2, 4, &int(2)).is_err());
    }

    #[test]
    fn density_examples() {
        let d0 = density(0, &rat(7, 3)).unwrap();
        assert_eq!(d0, WeightedExpr::new(int(-1), rat(7, 3), Poly::one()));
        let d1 = density(1, &rat(3, 2)).unwrap();
        let expected = WeightedExpr::new(
            int(-1),
            rat(1, 2),
            Poly::from_coeffs(vec![rat(-3, 2), int(2)]),
        );
        assert_eq!(d1, expected);
        assert_eq!(density_closed_form(1, &rat(3, 2)).unwrap(), expected);
        assert_eq!(density_closed_form(0, &int(2)).unwrap(), d0_at(int(2)));
        assert_eq!(
            density(2, &rat(7, 2)).unwrap(),
            density_closed_form(2, &rat(7, 2)).unwrap()
        );
    }

    fn d0_at(beta: Rational) -> WeightedExpr {
        WeightedExpr::new(int(-1), beta, Poly::one())
    }

    #[test]
    fn derivative_form_outside_domain() {
        // (-1)^2 e^z d^2(e^{-2z}) = 4 e^{-z}; the expression exists even
        // though β - s = -2 rules out integration.
        assert_eq!(
            rodrigues_density(2, &int(0)),
            WeightedExpr::new(int(-1), int(0), Poly::from_ints(&[4]))
        );
        assert!(density(2, &int(0)).is_err());
    }

    #[test]
    fn two_route_density() {
        for (s, beta) in admissible_grid(6) {
            assert_eq!(
                density(s, &beta).unwrap(),
                density_closed_form(s, &beta).unwrap(),
                "s={s} beta={beta}"
            );
        }
    }

    #[test]
    fn reduction_examples() {
        let beta = rat(3, 2);
        let t = monomial_reduction(0, 3, &beta);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].p, t[0].coeff.clone()), (0, int(1)));

        let t = monomial_reduction(1, 3, &beta);
        assert_eq!(t[0].coeff, int(1));
        assert_eq!((t[0].s_index, t[0].beta_index.clone()), (3, rat(5, 2)));
        assert_eq!(t[1].coeff, int(3));
        assert_eq!((t[1].s_index, t[1].beta_index.clone()), (2, beta.clone()));

        let s = 4;
        let coeffs: Vec<Rational> = monomial_reduction(2, s, &beta)
            .into_iter()
            .map(|t| t.coeff)
            .collect();
        assert_eq!(
            coeffs,
            vec![int(1), int(2 * s as i64), int((s * (s - 1)) as i64)]
        );
    }

    #[test]
    fn reduction_round_trips() {
        for (s, beta) in admissible_grid(5) {
            let d = density(s, &beta).unwrap();
            for n in 0..=8u32 {
                let target = d.mul_poly(&Poly::monomial(int(1), n as usize));
                let mut sum = WeightedExpr::new(int(-1), int(0), Poly::zero());
                for term in monomial_reduction(n, s, &beta) {
                    if term.coeff.is_zero() {
                        assert!(term.s_index >= 0 || term.p > s);
                        continue;
                    }
                    let piece =
                        rodrigues_density(term.s_index as u32, &term.beta_index).scale(&term.coeff);
                    sum = sum.checked_add(&piece).expect("powers differ by integers");
                }
                assert_eq!(sum, target, "n={n} s={s} beta={beta}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        for (s, beta) in admissible_grid(5) {
            assert_eq!(moment(0, s, &beta).unwrap(), GammaValue::unit(beta.clone()));
        }
        assert_eq!(moment(1, 1, &rat(3, 2)).unwrap().coeff, rat(7, 2));
        assert_eq!(moment(2, 1, &rat(3, 2)).unwrap().coeff, rat(55, 4));
    }

    #[test]
    fn moments_match_closed_form_route() {
        for (s, beta) in admissible_grid(5) {
            for n in 0..=10 {
                assert_eq!(
                    moment(n, s, &beta).unwrap().coeff,
                    moment_via_closed_form(n, s, &beta)
                );
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let beta = rat(3, 2);
        assert_eq!(
            inner_product(&Poly::one(), &Poly::one(), 1, &beta).unwrap(),
            GammaValue::unit(beta.clone())
        );
        for (s, b) in admissible_grid(5) {
            let m1 = m_poly(1, &b, &int(s as i64));
            assert!(inner_product(&m1, &Poly::one(), s, &b).unwrap().is_zero());
            // ⟨M1, M1⟩ = (β + 1 - s) Γ(β+1)
            assert_eq!(
                inner_product(&m1, &m1, s, &b).unwrap().coeff,
                &b + int(1) - int(s as i64)
            );
        }
        let m1 = m_poly(1, &beta, &int(1));
        let m2 = m_poly(2, &beta, &int(1));
        assert_eq!(inner_product(&m1, &m1, 1, &beta).unwrap().coeff, rat(3, 2));
        assert_eq!(inner_product(&m2, &m1, 1, &beta).unwrap().coeff, int(-2));
    }

    #[test]
    fn partial_orthogonality() {
        for (s, beta) in admissible_grid(5) {
            let mut f = MomentFunctional::new(MeasureParams::new(s, beta.clone()).unwrap());
            for n in 0..=10 {
                let v = f.apply(&m_poly(n, &beta, &int(s as i64)));
                if n == 0 {
                    assert_eq!(v, GammaValue::unit(beta.clone()));
                } else {
                    assert!(v.is_zero(), "n={n} s={s} beta={beta}");
                }
            }
        }
    }

    #[test]
    fn generating_function_orthogonality() {
        for (s, beta) in admissible_grid(5) {
            let g = mgen(&beta, &int(s as i64), 12);
            let mut f = MomentFunctional::new(MeasureParams::new(s, beta.clone()).unwrap());
            let integrated: Vec<Rational> = g.coeffs().iter().map(|c| f.apply_coeff(c)).collect();
            assert_eq!(
                PowerSeries::from_scalars(12, &integrated),
                PowerSeries::one(12),
                "s={s} beta={beta}"
            );
        }
    }
}
