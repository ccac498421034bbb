//! Gram systems of the M family under `D(s, β)`, the weights `w_i^n`, and the
//! C and W families built from them.
//!
//! `C_n = Σ_{i=0}^{n-1} w_i M_{n-i}` with `w_0 = 1`. The remaining weights
//! make `C_n` orthogonal to `M_1 … M_{n-1}`; orthogonality to `M_0 = 1` holds
//! for every `M_k`, `k ≥ 1`, so `C_n` is orthogonal to all polynomials of
//! lower degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{int, GammaValue, Poly, Rational};
use crate::deform::{apply_deformation, m_poly, Alpha};
use crate::error::{Error, Result};
use crate::laguerre::laguerre;
use crate::measure::{MeasureParams, MomentFunctional};

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row scale clearing the denominators of `row`, and the scaled integer row.
fn integer_row(row: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&scale / x.denom()))
        .collect();
    (scale, ints)
}

/// Exact determinant of a rational matrix.
pub fn rational_determinant(m: &[Vec<Rational>]) -> Rational {
    let mut scales = BigInt::one();
    let mut rows = Vec::with_capacity(m.len());
    for row in m {
        let (scale, ints) = integer_row(row);
        scales *= scale;
        rows.push(ints);
    }
    Rational::new(bareiss_determinant(rows), scales)
}

/// Solves `m x = b` by fraction-free elimination on the integer-scaled
/// augmented system, then exact back substitution. `None` when singular.
pub fn solve_linear(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full).1
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let r = (k + 1..n).find(|&r| !a[r][k].is_zero())?;
            a.swap(k, r);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Some(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSystem {
    pub n: usize,
    pub params: MeasureParams,
    /// `matrix[i-1][j-1] = ⟨M_i, M_j⟩`, `1 <= i, j <= n-1`.
    pub matrix: Vec<Vec<GammaValue>>,
    /// `target[j-1] = ⟨M_n, M_j⟩`.
    pub target: Vec<GammaValue>,
}

impl GramSystem {
    fn coeff_matrix(&self) -> Vec<Vec<Rational>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|g| g.coeff.clone()).collect())
            .collect()
    }

    fn degenerate(&self) -> Error {
        Error::DegenerateGram {
            n: self.n,
            s: self.params.s(),
            beta: self.params.beta().clone(),
        }
    }

    /// `Δ_{n-1}` in the reversed column order `M_{n-1}, …, M_1`, as the
    /// rational multiplier of `Γ(β+1)^(n-1)`.
    pub fn delta(&self) -> Rational {
        let rows = self.coeff_matrix();
        let reversed: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().rev().cloned().collect())
            .collect();
        rational_determinant(&reversed)
    }

    /// `Δ'^i_{n-1}`: minus the determinant of the reversed-order matrix with
    /// column `i` replaced by `⟨M_n, M_j⟩`.
    pub fn delta_prime(&self, i: usize) -> Rational {
        let rows = self.coeff_matrix();
        let m = rows.len();
        let replaced: Vec<Vec<Rational>> = (0..m)
            .map(|j| {
                let mut r: Vec<Rational> = rows[j].iter().rev().cloned().collect();
                r[i - 1] = self.target[j].coeff.clone();
                r
            })
            .collect();
        -rational_determinant(&replaced)
    }
}

/// Cached M polynomials and moment functional for one `(s, β)`.
#[derive(Debug, Clone)]
pub struct MFamily {
    functional: MomentFunctional,
    m: Vec<Poly>,
}

impl MFamily {
    pub fn new(s: u32, beta: &Rational) -> Result<Self> {
        let params = MeasureParams::new(s, beta.clone())?;
        Ok(MFamily {
            functional: MomentFunctional::new(params),
            m: Vec::new(),
        })
    }

    pub fn params(&self) -> &MeasureParams {
        self.functional.params()
    }

    pub fn m(&mut self, k: usize) -> &Poly {
        while self.m.len() <= k {
            let p = self.params();
            let next = m_poly(self.m.len(), p.beta(), &p.s_rational());
            self.m.push(next);
        }
        &self.m[k]
    }

    pub fn inner(&mut self, p: &Poly, q: &Poly) -> GammaValue {
        self.functional.inner_product(p, q)
    }

    fn inner_m(&mut self, i: usize, j: usize) -> GammaValue {
        let (p, q) = (self.m(i).clone(), self.m(j).clone());
        self.inner(&p, &q)
    }

    pub fn gram_system(&mut self, n: usize) -> GramSystem {
        let size = n.saturating_sub(1);
        let mut matrix: Vec<Vec<GammaValue>> = vec![Vec::with_capacity(size); size];
        for i in 1..=size {
            for j in 1..=size {
                let v = if j < i {
                    matrix[j - 1][i - 1].clone()
                } else {
                    self.inner_m(i, j)
                };
                matrix[i - 1].push(v);
            }
        }
        let target = (1..=size).map(|j| self.inner_m(n, j)).collect();
        GramSystem {
            n,
            params: self.params().clone(),
            matrix,
            target,
        }
    }

    pub fn weights(&mut self, n: usize) -> Result<WeightVector> {
        let sys = self.gram_system(n);
        weights_from_system(&sys)
    }

    pub fn c_poly(&mut self, n: usize) -> Result<Poly> {
        if n == 0 {
            return Ok(Poly::one());
        }
        let w = self.weights(n)?;
        Ok(w.combine(|k| self.m(k).clone()))
    }
}

/// `w_0 = 1, w_1, …, w_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ_i w_i basis(n - i)`.
    fn combine(&self, mut basis: impl FnMut(usize) -> Poly) -> Poly {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (i, w)| acc + basis(n - i).scale(w))
    }
}

/// Solves `Σ_{k=1}^{n-1} x_k ⟨M_k, M_j⟩ = -⟨M_n, M_j⟩`; then `w_i = x_{n-i}`.
fn weights_from_system(sys: &GramSystem) -> Result<WeightVector> {
    let n = sys.n;
    if n <= 1 {
        return Ok(WeightVector(vec![Rational::one()]));
    }
    let rhs: Vec<Rational> = sys.target.iter().map(|g| -g.coeff.clone()).collect();
    let x = solve_linear(&sys.coeff_matrix(), &rhs).ok_or_else(|| sys.degenerate())?;
    let mut w = vec![Rational::one()];
    w.extend((1..n).map(|i| x[n - i - 1].clone()));
    Ok(WeightVector(w))
}

/// Determinant-ratio route `w_i = Δ'^i_{n-1} / Δ_{n-1}`.
pub fn weights_by_determinants(n: usize, s: u32, beta: &Rational) -> Result<WeightVector> {
    let mut family = MFamily::new(s, beta)?;
    let sys = family.gram_system(n);
    if n <= 1 {
        return Ok(WeightVector(vec![Rational::one()]));
    }
    let delta = sys.delta();
    if delta.is_zero() {
        return Err(sys.degenerate());
    }
    let mut w = vec![Rational::one()];
    w.extend((1..n).map(|i| sys.delta_prime(i) / &delta));
    Ok(WeightVector(w))
}

pub fn gram_system(n: usize, s: u32, beta: &Rational) -> Result<GramSystem> {
    Ok(MFamily::new(s, beta)?.gram_system(n))
}

pub fn weights(n: usize, s: u32, beta: &Rational) -> Result<WeightVector> {
    MFamily::new(s, beta)?.weights(n)
}

pub fn c_poly(n: usize, s: u32, beta: &Rational) -> Result<Poly> {
    MFamily::new(s, beta)?.c_poly(n)
}

/// `W_n = Σ_i w_i L_{n-i}`, the preimage of `C_n` under the deformation.
pub fn w_poly(n: usize, s: u32, beta: &Rational) -> Result<Poly> {
    if n == 0 {
        MeasureParams::new(s, beta.clone())?;
        return Ok(Poly::one());
    }
    let w = weights(n, s, beta)?;
    Ok(w.combine(|k| laguerre(k, beta)))
}

/// Checks `exp(sΣ) W_n = C_n`.
pub fn deformation_linkage_check(n: usize, s: u32, beta: &Rational) -> Result<bool> {
    let w = w_poly(n, s, beta)?;
    let c = c_poly(n, s, beta)?;
    Ok(apply_deformation(&w, &int(s as i64), Alpha::Minus) == c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `(n, j, ⟨C_n, M_j⟩)` for `0 <= j < n <= nmax`.
    pub c_vs_m: Vec<(usize, usize, GammaValue)>,
    /// `(n, m, ⟨C_n, C_m⟩)` for `m < n`.
    pub c_vs_c: Vec<(usize, usize, GammaValue)>,
    /// `(n, ⟨C_n, C_n⟩)`.
    pub norms: Vec<(usize, GammaValue)>,
}

impl OrthogonalityReport {
    pub fn all_orthogonal(&self) -> bool {
        self.c_vs_m.iter().all(|(_, _, v)| v.is_zero())
            && self.c_vs_c.iter().all(|(_, _, v)| v.is_zero())
    }
}

pub fn orthogonality_report(nmax: usize, s: u32, beta: &Rational) -> Result<OrthogonalityReport> {
    let mut family = MFamily::new(s, beta)?;
    let cs: Vec<Poly> = (0..=nmax)
        .map(|n| family.c_poly(n))
        .collect::<Result<_>>()?;
    let mut report = OrthogonalityReport {
        c_vs_m: Vec::new(),
        c_vs_c: Vec::new(),
        norms: Vec::new(),
    };
    for n in 0..=nmax {
        for j in 0..n {
            let mj = family.m(j).clone();
            let v = family.inner(&cs[n], &mj);
            report.c_vs_m.push((n, j, v));
            let v = family.inner(&cs[n], &cs[j]);
            report.c_vs_c.push((n, j, v));
        }
        let v = family.inner(&cs[n], &cs[n]);
        report.norms.push((n, v));
    }
    Ok(report)
}

/// Largest absolute rational among the weights; used in reports.
pub fn max_abs_weight(w: &WeightVector) -> Rational {
    w.0.iter()
        .map(|x| x.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
}
