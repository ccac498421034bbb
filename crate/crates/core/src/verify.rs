//! Invariant suites over a parameter grid, shared by the `verify` command and
//! the acceptance tests.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{int, rat, GammaValue, Poly, Rational};
use crate::deform::{
    apply_deformation, combined_deformation, commutator_identity_check, inverse_connection_check,
    m_derivative_recursion_check, m_expansion, m_poly, ode_residual_with, shift_identity_check,
    transition, Alpha, Combined, OdeVariant,
};
use crate::gram::{
    c_poly, deformation_linkage_check, orthogonality_report, w_poly, weights,
    weights_by_determinants, MFamily,
};
use crate::laguerre::{laguerre, laguerre_ode_residual, rodrigues_check};
use crate::measure::{
    closed_form_expr, is_admissible, moment, reduction_round_trip, rodrigues_density,
    MeasureParams, MomentFunctional,
};
use crate::numeric::{
    deviation, eval_density, find_sign_change, gamma_value_to_f64, quad_inner_product, quad_moment,
    COHERENCE_TOL,
};
use crate::series::{dz_relation_check, extract_coefficient, lgen, mgen, mgen_factor_check};

/// Parameter grid and per-identity bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    /// Degree bound for the deformation, ODE and measure suites.
    pub nmax: usize,
    pub s_values: Vec<u32>,
    pub betas: Vec<Rational>,
    /// Series truncation order; generating-function checks stop at it.
    pub order: usize,
    pub laguerre_nmax: usize,
    pub rodrigues_nmax: usize,
    pub density_smax: u32,
    pub reduction_nmax: usize,
    pub gram_nmax: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            nmax: 10,
            s_values: (0..=5).collect(),
            betas: default_betas(),
            order: crate::series::DEFAULT_ORDER,
            laguerre_nmax: 12,
            rodrigues_nmax: 8,
            density_smax: 6,
            reduction_nmax: 8,
            gram_nmax: 8,
        }
    }
}

pub fn default_betas() -> Vec<Rational> {
    vec![int(0), rat(1, 2), int(1), rat(3, 2), rat(7, 3), int(5)]
}

impl Grid {
    /// Caps every bound at `nmax`.
    pub fn with_nmax(mut self, nmax: usize) -> Self {
        self.nmax = nmax;
        self.laguerre_nmax = self.laguerre_nmax.min(nmax.max(1) + 2);
        self.rodrigues_nmax = self.rodrigues_nmax.min(nmax);
        self.reduction_nmax = self.reduction_nmax.min(nmax);
        self.gram_nmax = self.gram_nmax.min(nmax);
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    /// `(s, β)` pairs with `β - s > -1`, sorted by `s` then grid order.
    pub fn admissible(&self) -> Vec<(u32, Rational)> {
        self.pairs()
            .into_iter()
            .filter(|(s, b)| is_admissible(*s, b))
            .collect()
    }

    pub fn pairs(&self) -> Vec<(u32, Rational)> {
        self.s_values
            .iter()
            .flat_map(|&s| self.betas.iter().map(move |b| (s, b.clone())))
            .collect()
    }

    fn series_nmax(&self) -> usize {
        self.nmax.min(self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Uses `β + s + 1 - z` in the M differential equation.
    OdeSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub grid: Grid,
    pub perturb: Option<Perturbation>,
    /// Quadrature error target.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: Grid::default(),
            perturb: None,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub identity: &'static str,
    pub anchor: &'static str,
    pub grid_size: usize,
    pub passed: bool,
    /// Only for numeric checks.
    pub max_deviation: Option<f64>,
    /// First failing grid point, if any.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn suite(&self, name: &str) -> impl Iterator<Item = &CheckRow> {
        let name = name.to_string();
        self.rows.iter().filter(move |r| r.suite == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let status = if r.passed { "PASS" } else { "FAIL" };
            write!(
                f,
                "{status}  {:<9} {:<44} [{}] n={}",
                r.suite, r.identity, r.anchor, r.grid_size
            )?;
            if let Some(d) = r.max_deviation {
                write!(f, " max_dev={d:.2e}")?;
            }
            if let Some(d) = &r.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.rows.len(), failed)
    }
}

/// Accumulates one identity over grid points.
struct Tally {
    suite: &'static str,
    identity: &'static str,
    anchor: &'static str,
    size: usize,
    failure: Option<String>,
    max_dev: Option<f64>,
}

impl Tally {
    fn new(suite: &'static str, identity: &'static str, anchor: &'static str) -> Self {
        Tally {
            suite,
            identity,
            anchor,
            size: 0,
            failure: None,
            max_dev: None,
        }
    }

    fn check(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.size += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(at());
        }
    }

    fn deviation(&mut self, dev: f64, tol: f64, at: impl FnOnce() -> String) {
        let worst = self.max_dev.unwrap_or(0.0);
        self.max_dev = Some(if dev.is_nan() {
            f64::NAN
        } else {
            worst.max(dev)
        });
        self.check(dev <= tol, || format!("{} dev={dev:.3e}", at()));
    }

    fn finish(self) -> CheckRow {
        CheckRow {
            suite: self.suite,
            identity: self.identity,
            anchor: self.anchor,
            grid_size: self.size,
            passed: self.failure.is_none(),
            max_deviation: self.max_dev,
            detail: self.failure,
        }
    }
}

fn s_rat(s: u32) -> Rational {
    int(s as i64)
}

pub fn laguerre_suite(grid: &Grid) -> Vec<CheckRow> {
    let mut rodrigues = Tally::new(
        "laguerre",
        "defining sum = Rodrigues formula",
        "L(n,b) = z^-b e^z/n! d^n(e^-z z^(n+b))",
    );
    let mut derivative = Tally::new("laguerre", "derivative relation", "L'(n,b) = -L(n-1,b+1)");
    let mut contiguous = Tally::new(
        "laguerre",
        "contiguous relation",
        "L(n,b) = L(n,b+1) - L(n-1,b+1)",
    );
    let mut leading = Tally::new(
        "laguerre",
        "degree and leading coefficient",
        "deg n, lead (-1)^n/n!",
    );
    let mut ode = Tally::new(
        "laguerre",
        "Laguerre differential equation",
        "z y'' + (b+1-z) y' + n y = 0",
    );
    for beta in &grid.betas {
        let up = beta + Rational::one();
        for n in 0..=grid.laguerre_nmax {
            let at = || format!("n={n} beta={beta}");
            let l = laguerre(n, beta);
            if n <= grid.rodrigues_nmax {
                rodrigues.check(rodrigues_check(n, beta), at);
            }
            if n >= 1 {
                derivative.check(l.derivative() == -laguerre(n - 1, &up), at);
                contiguous.check(l == laguerre(n, &up) - laguerre(n - 1, &up), at);
            }
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            leading.check(
                l.degree() == Some(n)
                    && l.leading_coeff() == sign / crate::algebra::factorial(n as u32),
                at,
            );
            ode.check(laguerre_ode_residual(&l, n, beta).is_zero(), at);
        }
    }
    vec![
        rodrigues.finish(),
        derivative.finish(),
        contiguous.finish(),
        leading.finish(),
        ode.finish(),
    ]
}

pub fn deformation_suite(grid: &Grid) -> Vec<CheckRow> {
    let mut three = Tally::new(
        "deform",
        "operator = L-expansion = series coefficient",
        "M = sum 2^k (s)_k/k! L(n-k,b-s) = [t^n] mgen",
    );
    let mut shift = Tally::new(
        "deform",
        "shift identity (alpha=+1)",
        "exp[s sum d^m/m] L(n,b) = L(n,b-s)",
    );
    let mut group = Tally::new("deform", "group law", "E(s') E(s) = E(s+s')");
    let mut preserve = Tally::new(
        "deform",
        "degree and leading coefficient preserved",
        "deg E p = deg p",
    );
    let mut inverse = Tally::new("deform", "inverse connection", "E(-s) M(n,b;s) = L(n,b)");
    let mut combined = Tally::new(
        "deform",
        "combined +/- deformations",
        "E+ L(n,b) = M(n,b-s;s), E- L(n,b) = M(n,b+s;s)",
    );
    let mut recursion = Tally::new(
        "deform",
        "derivative recursion, all orders",
        "d^m M(n,b;s) = (-1)^m M(n-m,b+m;s)",
    );
    let mut trans = Tally::new(
        "deform",
        "s -> s' transition",
        "M(n,b;s') = sum 2^k (s'-s)_k/k! M(n-k,b-s'+s;s)",
    );
    let mut commutator = Tally::new(
        "deform",
        "commutator with z",
        "[E, z] = s sum alpha^m d^(m-1) E",
    );
    let samples: Vec<Rational> = grid.s_values.iter().map(|&s| s_rat(s)).collect();
    let series_n = grid.series_nmax();

    for beta in &grid.betas {
        for &s in &grid.s_values {
            let s_r = s_rat(s);
            let series = mgen(beta, &s_r, grid.order);
            for n in 0..=grid.nmax {
                let at = || format!("n={n} s={s} beta={beta}");
                let m = m_poly(n, beta, &s_r);
                let mut ok = m == m_expansion(n, beta, &s_r);
                if n <= series_n {
                    ok &= extract_coefficient(&series, n).ok().as_ref() == Some(&m);
                }
                three.check(ok, at);
                shift.check(shift_identity_check(n, beta, &s_r), at);
                let l = laguerre(n, beta);
                for alpha in [Alpha::Plus, Alpha::Minus] {
                    let e = apply_deformation(&l, &s_r, alpha);
                    preserve.check(
                        e.degree() == l.degree() && e.leading_coeff() == l.leading_coeff(),
                        at,
                    );
                    for sp in &samples {
                        let lhs = apply_deformation(&e, sp, alpha);
                        group.check(lhs == apply_deformation(&l, &(&s_r + sp), alpha), || {
                            format!("n={n} s={s} s'={sp} beta={beta}")
                        });
                    }
                    commutator.check(commutator_identity_check(&s_r, alpha, &l), at);
                }
                inverse.check(inverse_connection_check(n, beta, &s_r, &samples), at);
                combined.check(
                    combined_deformation(&l, &s_r, Combined::Plus)
                        == m_poly(n, &(beta - &s_r), &s_r)
                        && combined_deformation(&l, &s_r, Combined::Minus)
                            == m_poly(n, &(beta + &s_r), &s_r),
                    at,
                );
                if n >= 1 {
                    recursion.check(m_derivative_recursion_check(n, beta, &s_r), at);
                }
                for &sp in &grid.s_values {
                    let sp_r = s_rat(sp);
                    trans.check(
                        transition(n, beta, &s_r, &sp_r) == m_poly(n, beta, &sp_r),
                        || format!("n={n} s={s} s'={sp} beta={beta}"),
                    );
                }
            }
        }
    }
    vec![
        three.finish(),
        shift.finish(),
        group.finish(),
        preserve.finish(),
        inverse.finish(),
        combined.finish(),
        recursion.finish(),
        trans.finish(),
        commutator.finish(),
    ]
}

pub fn ode_suite(grid: &Grid, perturb: Option<Perturbation>) -> Vec<CheckRow> {
    let variant = match perturb {
        Some(Perturbation::OdeSign) => OdeVariant::FlippedSign,
        None => OdeVariant::Corrected,
    };
    let mut ode = Tally::new(
        "ode",
        "M differential equation",
        "z M'' + (b-s+1-z) M' + n M = 2s sum (-1)^m d^m M",
    );
    let mut rec = Tally::new(
        "ode",
        "right side via recursion",
        "2s sum (-1)^m d^m M = 2s sum M(n-m,b+m;s)",
    );
    let mut limit = Tally::new(
        "ode",
        "s = 0 limit is Laguerre's equation",
        "M(n,b;0) = L(n,b)",
    );
    for beta in &grid.betas {
        for &s in &grid.s_values {
            let s_r = s_rat(s);
            for n in 0..=grid.nmax {
                let r = ode_residual_with(n, beta, &s_r, variant);
                ode.check(r.lhs == r.rhs_derivatives, || {
                    let d = r.discrepancy();
                    format!("n={n} s={s} beta={beta}: lhs - rhs = {d}")
                });
                rec.check(r.rhs_derivatives == r.rhs_recursion, || {
                    format!("n={n} s={s} beta={beta}")
                });
            }
        }
        for n in 0..=grid.nmax {
            limit.check(crate::deform::is_laguerre_limit(n, beta), || {
                format!("n={n} beta={beta}")
            });
        }
    }
    vec![ode.finish(), rec.finish(), limit.finish()]
}

pub fn series_suite(grid: &Grid) -> Vec<CheckRow> {
    let mut lcoef = Tally::new(
        "series",
        "Laguerre generating function",
        "[t^n] e^(-zt/(1-t))/(1-t)^(b+1) = L(n,b)",
    );
    let mut dz = Tally::new(
        "series",
        "z-derivative of generating function",
        "d/dz L(z,t,b) = -t L(z,t,b+1)",
    );
    let mut factor = Tally::new(
        "series",
        "M generating function factorization",
        "mgen = ((1-2t)/(1-t))^-s lgen",
    );
    let n_top = grid.series_nmax();
    for beta in &grid.betas {
        let g = lgen(beta, grid.order);
        for n in 0..=n_top {
            lcoef.check(
                extract_coefficient(&g, n).ok() == Some(laguerre(n, beta)),
                || format!("n={n} beta={beta}"),
            );
        }
        dz.check(dz_relation_check(beta, grid.order), || {
            format!("beta={beta}")
        });
        for &s in &grid.s_values {
            factor.check(mgen_factor_check(beta, &s_rat(s), grid.order), || {
                format!("s={s} beta={beta}")
            });
        }
    }
    vec![lcoef.finish(), dz.finish(), factor.finish()]
}

pub fn measure_suite(grid: &Grid) -> Vec<CheckRow> {
    let mut routes = Tally::new(
        "measure",
        "density: derivative form = closed form",
        "(-1)^s e^z d^s(e^-2z z^b) = (-1)^s s! z^(b-s) e^-z L(s,b-s)(2z)",
    );
    let mut reduction = Tally::new(
        "measure",
        "monomial reduction round trip",
        "z^n D(s,b) = sum binom(n,p) s^(p) D(s-p,b+n-p)",
    );
    let mut zeroth = Tally::new(
        "measure",
        "zeroth moment independent of s",
        "int D(s,b) = G(b+1)",
    );
    let mut partial = Tally::new(
        "measure",
        "partial orthogonality",
        "<M_n, 1> = delta_n0 G(b+1)",
    );
    let mut genfn = Tally::new(
        "measure",
        "partial orthogonality via series",
        "sum_n <[t^n] mgen, 1> t^n = G(b+1)",
    );

    let smax = grid
        .density_smax
        .max(grid.s_values.iter().copied().max().unwrap_or(0));
    for s in 0..=smax {
        for beta in &grid.betas {
            routes.check(
                rodrigues_density(s, beta) == closed_form_expr(s, beta),
                || format!("s={s} beta={beta}"),
            );
        }
    }
    for (s, beta) in grid.admissible() {
        let s_r = s_rat(s);
        for n in 0..=grid.reduction_nmax {
            reduction.check(reduction_round_trip(n as u32, s, &beta), || {
                format!("n={n} s={s} beta={beta}")
            });
        }
        zeroth.check(
            moment(0, s, &beta).ok() == Some(GammaValue::unit(beta.clone())),
            || format!("s={s} beta={beta}"),
        );
        let params = MeasureParams::new(s, beta.clone()).expect("admissible");
        let mut functional = MomentFunctional::new(params);
        for n in 0..=grid.nmax {
            let want = if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            };
            let got = functional.apply_coeff(&m_poly(n, &beta, &s_r));
            partial.check(got == want, || {
                format!("n={n} s={s} beta={beta}: got {got}")
            });
        }
        let g = mgen(&beta, &s_r, grid.order);
        let ok = (0..=grid.series_nmax()).all(|n| {
            let c = extract_coefficient(&g, n).expect("n within order");
            functional.apply_coeff(&c)
                == if n == 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
        });
        genfn.check(ok, || format!("s={s} beta={beta}"));
    }
    vec![
        routes.finish(),
        reduction.finish(),
        zeroth.finish(),
        partial.finish(),
        genfn.finish(),
    ]
}

pub fn gram_suite(grid: &Grid) -> Vec<CheckRow> {
    let mut cramer = Tally::new(
        "gram",
        "determinant weights = linear solve",
        "w_i = D'_i / D",
    );
    let mut ortho = Tally::new("gram", "full orthogonality of C", "<C_n, C_m> = 0, m != n");
    let mut against_m = Tally::new("gram", "C orthogonal to lower M", "<C_n, M_j> = 0, j < n");
    let mut linkage = Tally::new("gram", "C is the deformation of W", "E(s) W_n = C_n");
    let mut collapse = Tally::new(
        "gram",
        "s = 0 collapse",
        "w = [1,0,...], C_n = W_n = L(n,b)",
    );
    for (s, beta) in grid.admissible() {
        let at = |n: usize| format!("n={n} s={s} beta={beta}");
        for n in 0..=grid.gram_nmax {
            match (weights_by_determinants(n, s, &beta), weights(n, s, &beta)) {
                (Ok(a), Ok(b)) => cramer.check(a == b, || at(n)),
                (a, b) => cramer.check(false, || {
                    format!("{}: {:?} / {:?}", at(n), a.err(), b.err())
                }),
            }
            linkage.check(
                deformation_linkage_check(n, s, &beta).unwrap_or(false),
                || at(n),
            );
            if s == 0 {
                let ok = weights(n, s, &beta).is_ok_and(|w| {
                    w.as_slice()
                        .iter()
                        .enumerate()
                        .all(|(i, x)| *x == if i == 0 { int(1) } else { int(0) })
                });
                let l = laguerre(n, &beta);
                let ok = ok
                    && c_poly(n, s, &beta).ok() == Some(l.clone())
                    && w_poly(n, s, &beta).ok() == Some(l);
                collapse.check(ok, || at(n));
            }
        }
        match orthogonality_report(grid.gram_nmax, s, &beta) {
            Ok(report) => {
                for (n, m, v) in &report.c_vs_c {
                    ortho.check(v.is_zero(), || {
                        format!("n={n} m={m} s={s} beta={beta}: {v}")
                    });
                }
                for (n, j, v) in &report.c_vs_m {
                    against_m.check(v.is_zero(), || {
                        format!("n={n} j={j} s={s} beta={beta}: {v}")
                    });
                }
            }
            Err(e) => ortho.check(false, || e.to_string()),
        }
    }
    vec![
        cramer.finish(),
        ortho.finish(),
        against_m.finish(),
        linkage.finish(),
        collapse.finish(),
    ]
}

pub fn numeric_suite(grid: &Grid, tol: f64) -> Vec<CheckRow> {
    let mut moments = Tally::new(
        "numeric",
        "moments: quadrature = exact",
        "int z^n D(s,b) dz",
    );
    let mut partial = Tally::new(
        "numeric",
        "<M_n, 1>: quadrature = exact",
        "int M_n D(s,b) dz",
    );
    let mut gram = Tally::new("numeric", "<M_j, M_k>: quadrature = exact", "Gram entries");
    let mut cc = Tally::new(
        "numeric",
        "<C_n, C_m>: quadrature = exact",
        "int C_n C_m D(s,b) dz",
    );
    let mut unreliable = Tally::new(
        "numeric",
        "quadrature converged",
        "error estimate within target",
    );
    let mut sign = Tally::new(
        "numeric",
        "density changes sign (s >= 1)",
        "D(s,b)(z1) D(s,b)(z2) < 0",
    );

    for (s, beta) in grid.admissible() {
        let mut family = MFamily::new(s, &beta).expect("admissible");
        let ms: Vec<Poly> = (0..=grid.nmax).map(|k| family.m(k).clone()).collect();
        let one = Poly::one();
        for (n, mn) in ms.iter().enumerate() {
            let at = || format!("n={n} s={s} beta={beta}");
            let exact = moment(n as u32, s, &beta).expect("admissible");
            let q = quad_moment(n as u32, s, &beta, tol).expect("admissible");
            unreliable.check(!q.unreliable, at);
            moments.deviation(deviation(q.value, &exact), COHERENCE_TOL, at);

            let exact = family.inner(mn, &one);
            let q = quad_inner_product(mn, &one, s, &beta, tol).expect("admissible");
            unreliable.check(!q.unreliable, at);
            partial.deviation(deviation(q.value, &exact), COHERENCE_TOL, at);
        }
        for j in 0..=grid.gram_nmax {
            for k in 0..=j {
                let at = || format!("j={j} k={k} s={s} beta={beta}");
                let exact = family.inner(&ms[j], &ms[k]);
                let q = quad_inner_product(&ms[j], &ms[k], s, &beta, tol).expect("admissible");
                unreliable.check(!q.unreliable, at);
                gram.deviation(deviation(q.value, &exact), COHERENCE_TOL, at);
            }
        }
        let cs: Vec<Option<Poly>> = (0..=grid.gram_nmax)
            .map(|n| family.c_poly(n).ok())
            .collect();
        for n in 0..cs.len() {
            for m in 0..=n {
                let at = || format!("n={n} m={m} s={s} beta={beta}");
                let (Some(cn), Some(cm)) = (&cs[n], &cs[m]) else {
                    cc.check(false, || format!("{}: degenerate Gram block", at()));
                    continue;
                };
                let exact = family.inner(cn, cm);
                let q = quad_inner_product(cn, cm, s, &beta, tol).expect("admissible");
                unreliable.check(!q.unreliable, at);
                cc.deviation(deviation(q.value, &exact), COHERENCE_TOL, at);
            }
        }
        if s >= 1 {
            let ok = match find_sign_change(s, &beta) {
                Ok(Some((z1, z2))) => {
                    let f = |z: &Rational| {
                        eval_density(
                            s,
                            &beta,
                            num_traits::ToPrimitive::to_f64(z).unwrap_or(f64::NAN),
                        )
                    };
                    matches!((f(&z1), f(&z2)), (Ok(a), Ok(b)) if a * b < 0.0)
                }
                _ => false,
            };
            sign.check(ok, || format!("s={s} beta={beta}"));
        }
    }
    vec![
        moments.finish(),
        partial.finish(),
        gram.finish(),
        cc.finish(),
        unreliable.finish(),
        sign.finish(),
    ]
}

/// Runs every suite.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let grid = &config.grid;
    let mut rows = Vec::new();
    rows.extend(laguerre_suite(grid));
    rows.extend(deformation_suite(grid));
    rows.extend(ode_suite(grid, config.perturb));
    rows.extend(series_suite(grid));
    rows.extend(measure_suite(grid));
    rows.extend(gram_suite(grid));
    rows.extend(numeric_suite(grid, config.tol));
    VerifyReport { rows }
}

/// Float value of an exact integral, for reports.
pub fn exact_f64(v: &GammaValue) -> f64 {
    gamma_value_to_f64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Grid {
        Grid {
            s_values: vec![0, 1, 2],
            betas: vec![int(0), rat(3, 2)],
            ..Grid::default()
        }
        .with_nmax(4)
    }

    #[test]
    fn small_grid_passes() {
        let report = run(&VerifyConfig {
            grid: small(),
            ..VerifyConfig::default()
        });
        assert!(report.all_passed(), "{report}");
        assert!(report.rows.iter().all(|r| r.grid_size > 0), "{report}");
    }

    #[test]
    fn flipped_ode_sign_is_caught() {
        let rows = ode_suite(&small(), Some(Perturbation::OdeSign));
        let ode = &rows[0];
        assert!(!ode.passed);
        // first failing point in grid order is n=1 at the first s > 0
        assert_eq!(
            ode.detail.as_deref(),
            Some("n=1 s=1 beta=0: lhs - rhs = -2")
        );
        assert!(rows[1].passed && rows[2].passed);
    }

    #[test]
    fn order_caps_series_checks() {
        let grid = small().with_order(2);
        let rows = series_suite(&grid);
        assert!(rows.iter().all(|r| r.passed));
        assert_eq!(rows[0].grid_size, 2 * 3);
    }

    #[test]
    fn report_display_lists_every_row() {
        let rows = laguerre_suite(&small());
        let report = VerifyReport { rows };
        let text = report.to_string();
        assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
        assert!(text.ends_with("5 checks, 0 failed"));
    }
}
