//! The deformation operator `exp[s Σ_{m≥1} (α^m/m) d^m/dz^m]` and the
//! M family it produces from Laguerre polynomials.
//!
//! On a polynomial of degree `d` the exponent `A` lowers degree, so
//! `exp(A) p = Σ_{k=0}^{d} A^k p / k!` is a finite sum.

use num_traits::{One, Zero};

use crate::algebra::{int, rising_factorial, Poly, Rational};
use crate::laguerre::{laguerre, laguerre_by_negative_index, laguerre_ode_residual};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alpha {
    Plus,
    Minus,
}

impl Alpha {
    pub fn sign(self) -> i64 {
        match self {
            Alpha::Plus => 1,
            Alpha::Minus => -1,
        }
    }

    /// `α^m`
    pub fn pow(self, m: usize) -> i64 {
        match self {
            Alpha::Plus => 1,
            Alpha::Minus => {
                if m.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformParams {
    pub s: Rational,
    pub alpha: Alpha,
}

impl DeformParams {
    pub fn apply(&self, p: &Poly) -> Poly {
        apply_deformation(p, &self.s, self.alpha)
    }
}

/// `exp(A) p` for `A = Σ_{m≥1} a_m d^m`, with `coeffs[m-1] = a_m`.
///
/// The operator is first collapsed to `Σ_j e_j d^j` through the exponential
/// recurrence `j e_j = Σ_m m a_m e_(j-m)`, then applied once.
fn apply_exp_operator(p: &Poly, coeffs: &[Rational]) -> Poly {
    let deg = p.degree().unwrap_or(0);
    let mut e = vec![Rational::one()];
    for j in 1..=deg {
        let mut acc = Rational::zero();
        for m in 1..=j.min(coeffs.len()) {
            if !coeffs[m - 1].is_zero() {
                acc += &coeffs[m - 1] * int(m as i64) * &e[j - m];
            }
        }
        e.push(acc / int(j as i64));
    }
    let mut out = p.clone();
    let mut d = p.clone();
    for ej in &e[1..] {
        d = d.derivative();
        if !ej.is_zero() {
            out = out + d.scale(ej);
        }
    }
    out
}

fn operator_coeffs(deg: usize, f: impl Fn(usize) -> Rational) -> Vec<Rational> {
    (1..=deg).map(f).collect()
}

pub fn apply_deformation(p: &Poly, s: &Rational, alpha: Alpha) -> Poly {
    let deg = p.degree().unwrap_or(0);
    let coeffs = operator_coeffs(deg, |m| s * int(alpha.pow(m)) / int(m as i64));
    apply_exp_operator(p, &coeffs)
}

/// `M(n, β; s) = exp[s Σ (-1)^m d^m/m] L(n, β)`.
pub fn m_poly(n: usize, beta: &Rational, s: &Rational) -> Poly {
    apply_deformation(&laguerre(n, beta), s, Alpha::Minus)
}

/// `m_poly` extended by zero to negative degree.
pub fn m_poly_by_negative_index(n: i64, beta: &Rational, s: &Rational) -> Poly {
    if n < 0 {
        Poly::zero()
    } else {
        m_poly(n as usize, beta, s)
    }
}

/// `M(n, β; s) = Σ_k 2^k (s)_k / k! · L(n-k, β-s)`.
pub fn m_expansion(n: usize, beta: &Rational, s: &Rational) -> Poly {
    let shifted = beta - s;
    let mut out = Poly::zero();
    let mut coeff = Rational::one();
    for k in 0..=n {
        if k > 0 {
            // 2^k (s)_k / k! from the previous term
            coeff = coeff * int(2) * (s + int(k as i64 - 1)) / int(k as i64);
        }
        if coeff.is_zero() {
            break;
        }
        let l = laguerre_by_negative_index(n as i64 - k as i64, &shifted);
        out = out + l.scale(&coeff);
    }
    out
}

/// `exp[s Σ d^m/m] L(n, β) = L(n, β-s)`.
pub fn shift_identity_check(n: usize, beta: &Rational, s: &Rational) -> bool {
    apply_deformation(&laguerre(n, beta), s, Alpha::Plus) == laguerre(n, &(beta - s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combined {
    /// `exp[s Σ ((-1)^m + 1) d^m/m]`
    Plus,
    /// `exp[s Σ ((-1)^m - 1) d^m/m]`
    Minus,
}

pub fn combined_deformation(p: &Poly, s: &Rational, variant: Combined) -> Poly {
    let deg = p.degree().unwrap_or(0);
    let offset = match variant {
        Combined::Plus => 1,
        Combined::Minus => -1,
    };
    let coeffs = operator_coeffs(deg, |m| {
        s * int(Alpha::Minus.pow(m) + offset) / int(m as i64)
    });
    apply_exp_operator(p, &coeffs)
}

/// Checks `d^m M(n, β; s) = (-1)^m M(n-m, β+m; s)` for every `1 <= m <= n`.
pub fn m_derivative_recursion_check(n: usize, beta: &Rational, s: &Rational) -> bool {
    let m_n = m_poly(n, beta, s);
    let mut d = m_n;
    for m in 1..=n {
        d = d.derivative();
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        let target = m_poly(n - m, &(beta + int(m as i64)), s).scale(&sign);
        if d != target {
            return false;
        }
    }
    true
}

/// `M(n, β; s') = Σ_k 2^k (s'-s)_k / k! · M(n-k, β-s'+s; s)`.
pub fn transition(n: usize, beta: &Rational, s: &Rational, s_prime: &Rational) -> Poly {
    let delta = s_prime - s;
    let shifted = beta - &delta;
    let mut out = Poly::zero();
    for k in 0..=n {
        let coeff = num_traits::pow(int(2), k) * rising_factorial(&delta, k as u32)
            / crate::algebra::factorial(k as u32);
        if coeff.is_zero() {
            continue;
        }
        out = out + m_poly(n - k, &shifted, s).scale(&coeff);
    }
    out
}

/// `exp(-sΣ) M(n, β; s) = L(n, β)` and `exp(s'Σ) M(n, β; s) = M(n, β; s+s')`
/// for each sampled `s'`.
pub fn inverse_connection_check(
    n: usize,
    beta: &Rational,
    s: &Rational,
    samples: &[Rational],
) -> bool {
    let m = m_poly(n, beta, s);
    if apply_deformation(&m, &-s.clone(), Alpha::Minus) != laguerre(n, beta) {
        return false;
    }
    samples
        .iter()
        .all(|sp| apply_deformation(&m, sp, Alpha::Minus) == m_poly(n, beta, &(s + sp)))
}

/// First-order coefficient used in the M differential equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OdeVariant {
    /// `β - s + 1 - z`, the form satisfied by M.
    #[default]
    Corrected,
    /// `β + s + 1 - z`; kept for fault injection.
    FlippedSign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeResidual {
    pub lhs: Poly,
    /// `2s Σ_{m=1}^{n} (-1)^m d^m M`
    pub rhs_derivatives: Poly,
    /// `2s Σ_{m=1}^{n} M(n-m, β+m; s)`
    pub rhs_recursion: Poly,
}

impl OdeResidual {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs_derivatives && self.rhs_derivatives == self.rhs_recursion
    }

    /// `lhs - rhs`.
    pub fn discrepancy(&self) -> Poly {
        &self.lhs - &self.rhs_derivatives
    }
}

pub fn ode_residual(n: usize, beta: &Rational, s: &Rational) -> OdeResidual {
    ode_residual_with(n, beta, s, OdeVariant::Corrected)
}

pub fn ode_residual_with(
    n: usize,
    beta: &Rational,
    s: &Rational,
    variant: OdeVariant,
) -> OdeResidual {
    let m = m_poly(n, beta, s);
    let s_term = match variant {
        OdeVariant::Corrected => -s.clone(),
        OdeVariant::FlippedSign => s.clone(),
    };
    let z = Poly::z();
    let d1 = m.derivative();
    let coeff = Poly::from_coeffs(vec![beta + s_term + int(1), int(-1)]);
    let lhs = &z * &d1.derivative() + &coeff * &d1 + m.scale(&int(n as i64));

    let two_s = int(2) * s;
    let mut by_derivs = Poly::zero();
    let mut d = m.clone();
    for k in 1..=n {
        d = d.derivative();
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        by_derivs = by_derivs + d.scale(&sign);
    }
    let by_rec = (1..=n).fold(Poly::zero(), |acc, k| {
        acc + m_poly(n - k, &(beta + int(k as i64)), s)
    });
    OdeResidual {
        lhs,
        rhs_derivatives: by_derivs.scale(&two_s),
        rhs_recursion: by_rec.scale(&two_s),
    }
}

/// `[exp(sΣ_α), z] p = s Σ_{m≥1} α^m d^(m-1) exp(sΣ_α) p`.
pub fn commutator_identity_check(s: &Rational, alpha: Alpha, p: &Poly) -> bool {
    let z = Poly::z();
    let e = |q: &Poly| apply_deformation(q, s, alpha);
    let ep = e(p);
    let lhs = e(&(&z * p)) - &z * &ep;
    let deg = p.degree().map_or(0, |d| d + 1);
    let mut rhs = Poly::zero();
    let mut d = ep;
    for m in 1..=deg {
        rhs = rhs + d.scale(&int(alpha.pow(m)));
        d = d.derivative();
    }
    lhs == rhs.scale(s)
}

/// The s = 0 reduction of the M equation is Laguerre's equation.
pub fn is_laguerre_limit(n: usize, beta: &Rational) -> bool {
    laguerre_ode_residual(&m_poly(n, beta, &Rational::zero()), n, beta).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factorial, rat};

    /// Brute-force nilpotent exponential: collects the full operator
    /// `Σ_k A^k/k!` as coefficients of `d^j` by multiplying out the formal
    /// series in `d`, then applies it termwise.
    fn operator_oracle(p: &Poly, a: &dyn Fn(usize) -> Rational) -> Poly {
        let deg = p.degree().unwrap_or(0);
        // series in D: A = Σ_{m=1}^{deg} a(m) D^m
        let a_series: Vec<Rational> = (0..=deg)
            .map(|m| if m == 0 { int(0) } else { a(m) })
            .collect();
        let mut total = vec![int(0); deg + 1];
        total[0] = int(1);
        let mut power = total.clone();
        for k in 1..=deg {
            let mut next = vec![int(0); deg + 1];
            for (i, x) in power.iter().enumerate() {
                for (j, y) in a_series.iter().enumerate() {
                    if i + j <= deg {
                        next[i + j] += x * y;
                    }
                }
            }
            power = next;
            for j in 0..=deg {
                total[j] += &power[j] / factorial(k as u32);
            }
        }
        let mut out = Poly::zero();
        for (j, c) in total.iter().enumerate() {
            out = out + p.nth_derivative(j).scale(c);
        }
        out
    }

    fn betas() -> Vec<Rational> {
        vec![int(0), rat(1, 2), int(1), rat(3, 2), rat(7, 3), int(5)]
    }

    #[test]
    fn identity_at_zero_strength() {
        let p = Poly::from_coeffs(vec![rat(1, 3), int(2), int(-5), rat(1, 7)]);
        assert_eq!(apply_deformation(&p, &int(0), Alpha::Plus), p);
        assert_eq!(apply_deformation(&p, &int(0), Alpha::Minus), p);
    }

    #[test]
    fn named_deformations() {
        let p = Poly::from_coeffs(vec![rat(5, 2), int(-1)]);
        assert_eq!(
            apply_deformation(&p, &int(2), Alpha::Minus),
            Poly::from_coeffs(vec![rat(9, 2), int(-1)])
        );
        let q = Poly::from_coeffs(vec![rat(35, 8), rat(-7, 2), rat(1, 2)]);
        let expected = Poly::from_coeffs(vec![rat(71, 8), rat(-9, 2), rat(1, 2)]);
        assert_eq!(apply_deformation(&q, &int(1), Alpha::Minus), expected);
    }

    #[test]
    fn matches_operator_oracle() {
        for beta in betas() {
            for s in [int(0), int(1), rat(5, 3), int(-2), int(4)] {
                for alpha in [Alpha::Plus, Alpha::Minus] {
                    for n in 0..=8 {
                        let l = laguerre(n, &beta);
                        let oracle =
                            operator_oracle(&l, &|m| &s * int(alpha.pow(m)) / int(m as i64));
                        assert_eq!(apply_deformation(&l, &s, alpha), oracle);
                    }
                }
            }
        }
    }

    #[test]
    fn m_named_values() {
        for beta in betas() {
            assert_eq!(m_poly(0, &beta, &rat(7, 2)), Poly::one());
            // M(1, β; s) = β + s + 1 - z
            for s in 0..=5 {
                let s = int(s);
                let expected = Poly::from_coeffs(vec![&beta + &s + int(1), int(-1)]);
                assert_eq!(m_poly(1, &beta, &s), expected);
            }
        }
        assert_eq!(
            m_poly(1, &rat(3, 2), &int(1)),
            Poly::from_coeffs(vec![rat(7, 2), int(-1)])
        );
        let m2 = Poly::from_coeffs(vec![rat(71, 8), rat(-9, 2), rat(1, 2)]);
        assert_eq!(m_poly(2, &rat(3, 2), &int(1)), m2);
        assert_eq!(m_expansion(2, &rat(3, 2), &int(1)), m2);
        // L(2, 1/2) + 2 L(1, 1/2) + 4 L(0, 1/2), summed by hand
        let by_hand = laguerre(2, &rat(1, 2))
            + laguerre(1, &rat(1, 2)).scale(&int(2))
            + laguerre(0, &rat(1, 2)).scale(&int(4));
        assert_eq!(by_hand, m2);
    }

    #[test]
    fn expansion_matches_operator() {
        for beta in betas() {
            for s in [int(0), int(1), int(3), int(5), rat(1, 2), rat(-4, 3)] {
                for n in 0..=10 {
                    assert_eq!(m_expansion(n, &beta, &s), m_poly(n, &beta, &s));
                }
            }
            for n in 0..=6 {
                assert_eq!(m_expansion(n, &beta, &int(0)), laguerre(n, &beta));
            }
        }
    }

    #[test]
    fn shift_identity_examples() {
        assert!(shift_identity_check(1, &rat(3, 2), &rat(1, 2)));
        assert_eq!(
            apply_deformation(&laguerre(1, &rat(3, 2)), &rat(1, 2), Alpha::Plus),
            Poly::from_coeffs(vec![int(2), int(-1)])
        );
        assert!(shift_identity_check(0, &rat(2, 3), &int(9)));
        assert!(shift_identity_check(4, &int(2), &int(3)));
    }

    #[test]
    fn combined_examples() {
        let beta = rat(2, 5);
        let s = int(3);
        let l1 = laguerre(1, &beta);
        assert_eq!(
            combined_deformation(&l1, &s, Combined::Plus),
            Poly::from_coeffs(vec![&beta + int(1), int(-1)])
        );
        assert_eq!(
            combined_deformation(&l1, &s, Combined::Minus),
            Poly::from_coeffs(vec![&beta + int(2) * &s + int(1), int(-1)])
        );
        for v in [Combined::Plus, Combined::Minus] {
            assert_eq!(combined_deformation(&Poly::one(), &s, v), Poly::one());
        }
    }

    #[test]
    fn combined_equals_composition() {
        for beta in betas() {
            for s in [int(1), int(2), rat(3, 4)] {
                for n in 0..=8 {
                    let l = laguerre(n, &beta);
                    let plus = apply_deformation(
                        &apply_deformation(&l, &s, Alpha::Plus),
                        &s,
                        Alpha::Minus,
                    );
                    let minus = apply_deformation(
                        &apply_deformation(&l, &-s.clone(), Alpha::Plus),
                        &s,
                        Alpha::Minus,
                    );
                    assert_eq!(combined_deformation(&l, &s, Combined::Plus), plus);
                    assert_eq!(combined_deformation(&l, &s, Combined::Minus), minus);
                    assert_eq!(plus, m_poly(n, &(&beta - &s), &s));
                    assert_eq!(minus, m_poly(n, &(&beta + &s), &s));
                }
            }
        }
    }

    #[test]
    fn derivative_recursion_examples() {
        assert!(m_derivative_recursion_check(1, &rat(3, 2), &int(1)));
        assert!(m_derivative_recursion_check(2, &rat(3, 2), &int(1)));
        let m2 = m_poly(2, &rat(3, 2), &int(1));
        assert_eq!(m2.derivative(), Poly::from_coeffs(vec![rat(-9, 2), int(1)]));
        // top order: d^n M(n) is the constant n! · (-1)^n/n! = (-1)^n
        for n in 0..=7 {
            let d = m_poly(n, &rat(7, 3), &int(4)).nth_derivative(n);
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(d, Poly::constant(sign));
        }
    }

    #[test]
    fn transition_examples() {
        let beta = rat(3, 2);
        for n in 0..=5 {
            assert_eq!(
                transition(n, &beta, &int(2), &int(2)),
                m_poly(n, &beta, &int(2))
            );
            assert_eq!(
                transition(n, &beta, &int(0), &int(3)),
                m_expansion(n, &beta, &int(3))
            );
        }
        assert_eq!(
            transition(2, &beta, &int(1), &int(2)),
            m_poly(2, &beta, &int(2))
        );
    }

    #[test]
    fn inverse_connection_examples() {
        assert!(inverse_connection_check(4, &rat(7, 3), &int(0), &[int(1)]));
        assert!(inverse_connection_check(3, &rat(1, 2), &int(2), &[int(1)]));
        assert!(inverse_connection_check(
            1,
            &rat(3, 2),
            &int(1),
            &[int(1), rat(-1, 2)]
        ));
        let back = apply_deformation(&m_poly(1, &rat(3, 2), &int(1)), &int(-1), Alpha::Minus);
        assert_eq!(back, Poly::from_coeffs(vec![rat(5, 2), int(-1)]));
    }

    #[test]
    fn ode_examples() {
        let r = ode_residual(0, &rat(3, 2), &int(4));
        assert!(r.lhs.is_zero() && r.rhs_derivatives.is_zero() && r.rhs_recursion.is_zero());

        let r = ode_residual(1, &rat(3, 2), &int(1));
        assert_eq!(r.lhs, Poly::constant(int(2)));
        assert!(r.holds());

        for n in 0..=8 {
            let r = ode_residual(n, &rat(7, 3), &int(0));
            assert!(r.lhs.is_zero() && r.rhs_derivatives.is_zero());
            assert!(is_laguerre_limit(n, &rat(7, 3)));
        }
    }

    #[test]
    fn flipped_sign_fails_at_degree_one() {
        for s in 1..=5 {
            let s = int(s);
            let r = ode_residual_with(1, &rat(3, 2), &s, OdeVariant::FlippedSign);
            assert!(!r.holds());
            // lhs collapses to 0 while rhs stays 2s
            assert_eq!(r.discrepancy(), Poly::constant(int(-2) * &s));
        }
    }

    #[test]
    fn commutator_examples() {
        let p = Poly::from_coeffs(vec![rat(1, 2), int(3), int(-1), rat(2, 9)]);
        assert!(commutator_identity_check(&int(0), Alpha::Minus, &p));
        assert!(commutator_identity_check(&int(1), Alpha::Minus, &Poly::z()));
        assert!(commutator_identity_check(
            &int(2),
            Alpha::Plus,
            &Poly::from_ints(&[0, 0, 1])
        ));
        for s in [int(1), rat(-3, 2), int(5)] {
            for alpha in [Alpha::Plus, Alpha::Minus] {
                assert!(commutator_identity_check(&s, alpha, &p));
            }
        }
    }

    #[test]
    fn group_law_and_degree_preservation() {
        let p = Poly::from_coeffs(vec![rat(1, 2), int(3), int(-1), rat(2, 9), int(7)]);
        for alpha in [Alpha::Plus, Alpha::Minus] {
            for (a, b) in [(int(1), int(2)), (rat(1, 3), rat(-5, 2)), (int(-4), int(4))] {
                let twice = apply_deformation(&apply_deformation(&p, &a, alpha), &b, alpha);
                assert_eq!(twice, apply_deformation(&p, &(&a + &b), alpha));
                let once = apply_deformation(&p, &a, alpha);
                assert_eq!(once.degree(), p.degree());
                assert_eq!(once.leading_coeff(), p.leading_coeff());
            }
        }
    }
}
