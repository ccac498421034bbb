//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 with
//! `|lo| <= ulp(hi)/2`, giving about 106 bits of significand.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use crate::algebra::{parse_rational, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_rational(r: &Rational) -> Dd {
        let hi = r.to_f64().unwrap_or(f64::NAN);
        let lo = Rational::from_float(hi)
            .and_then(|h| (r - h).to_f64())
            .unwrap_or(0.0);
        Dd::norm(hi, lo)
    }

    /// Exact decimal literal rounded to double-double.
    pub fn parse(s: &str) -> Dd {
        Dd::from_rational(&parse_rational(s).expect("valid decimal literal"))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::norm(p, e + self.lo * b)
    }

    /// Multiplication by `2^k`, exact barring overflow.
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// `x^(1/q)` for `x > 0`: an f64 seed refined by one Newton step.
    pub fn root(self, q: u32) -> Dd {
        if q == 1 {
            return self;
        }
        let y = Dd::new(self.hi.powf(1.0 / q as f64));
        let f = y.powi(q) - self;
        let df = y.powi(q - 1).mul_f64(q as f64);
        y - f / df
    }

    pub fn exp(self) -> Dd {
        if self.hi < -740.0 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        // |r| <= ln2/2, then scaled down so the Taylor tail is negligible
        let r = (self - LN2.mul_f64(k)).ldexp(-5);
        let mut p = Dd::ONE;
        for i in (1..=16).rev() {
            p = Dd::ONE + (r * p) / Dd::new(i as f64);
        }
        for _ in 0..5 {
            p = p * p;
        }
        // split the power of two so neither factor overflows
        let k = k as i32;
        p.ldexp(k / 2).ldexp(k - k / 2)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::norm(s, e + f)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::norm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::norm(q1, q2) + Dd::new(q3)
    }
}

/// A polynomial with double-double coefficients, evaluated by Horner.
#[derive(Debug, Clone)]
pub struct DdPoly(Vec<Dd>);

impl DdPoly {
    pub fn new(p: &Poly) -> DdPoly {
        DdPoly(p.coeffs().iter().map(Dd::from_rational).collect())
    }

    pub fn eval(&self, x: Dd) -> Dd {
        self.0.iter().rev().fold(Dd::ZERO, |acc, &c| acc * x + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factorial, rat};

    fn close(a: Dd, b: Dd, tol: f64) -> bool {
        ((a - b).to_f64() / b.to_f64()).abs() <= tol
    }

    /// `e^x` summed in exact rationals.
    fn exp_exact(x: &Rational, terms: u32) -> Dd {
        let mut sum = Rational::from_integer(0.into());
        let mut pow = Rational::from_integer(1.into());
        for k in 0..terms {
            sum += &pow / factorial(k);
            pow *= x;
        }
        Dd::from_rational(&sum)
    }

    #[test]
    fn arithmetic_is_exact_beyond_f64() {
        let third = Dd::ONE / Dd::new(3.0);
        let back = third.mul_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
        let x = Dd::from_rational(&rat(1, 7));
        assert!(((x * Dd::new(7.0)) - Dd::ONE).to_f64().abs() < 1e-31);
        assert!(
            (Dd::from_rational(&rat(7, 3)).root(3).powi(3) - Dd::from_rational(&rat(7, 3)))
                .to_f64()
                .abs()
                < 1e-30
        );
    }

    #[test]
    fn exp_matches_rational_series() {
        for (p, q) in [(1, 3), (-5, 2), (7, 1), (-30, 1), (-113, 4), (1, 1000)] {
            let x = rat(p, q);
            let want = exp_exact(&x, 160);
            let got = Dd::from_rational(&x).exp();
            assert!(close(got, want, 1e-29), "exp({x}): {got:?} vs {want:?}");
        }
        assert!(close(LN2.exp(), Dd::new(2.0), 1e-31));
    }

    #[test]
    fn exp_of_large_arguments() {
        let a = Dd::new(-600.0).exp();
        let b = Dd::new(-300.0).exp();
        assert!(close(a, b * b, 1e-28));
        assert_eq!(Dd::new(-800.0).exp(), Dd::ZERO);
    }
}
