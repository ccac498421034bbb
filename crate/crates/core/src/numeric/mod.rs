//! Floating-point oracle for the exact integrals: density evaluation, a
//! Lanczos Γ, and adaptive Gauss–Kronrod quadrature on `[0, ∞)`.

mod dd;

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{GammaValue, Poly, Rational};
use crate::error::Result;
use crate::measure::{density, density_closed_form};
use crate::weighted::WeightedExpr;

pub use dd::{Dd, DdPoly};

/// Default panel cap for adaptive quadrature.
pub const MAX_SUBDIVISIONS: usize = 1 << 14;

/// Acceptance tolerance between quadrature and exact values.
pub const COHERENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
    /// `∫|f|`; rounding limits absolute accuracy to a few ulps of this.
    pub abs_integral: f64,
    /// Set when the panel cap was hit before the error target was met.
    pub unreliable: bool,
}

impl QuadratureResult {
    fn combine(a: QuadratureResult, b: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: a.value + b.value,
            abs_error_estimate: a.abs_error_estimate + b.abs_error_estimate,
            subdivisions: a.subdivisions + b.subdivisions,
            abs_integral: a.abs_integral + b.abs_integral,
            unreliable: a.unreliable || b.unreliable,
        }
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
pub fn gamma(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // t^(x+0.5) split in two to stay finite for large x
    let half = t.powf((x + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

pub fn gamma_value_to_f64(v: &GammaValue) -> f64 {
    let base = gamma(v.beta.to_f64().unwrap_or(f64::NAN) + 1.0);
    v.coeff.to_f64().unwrap_or(f64::NAN) * base
}

/// `D(s, β)(z)` from the Laguerre closed form.
pub fn eval_density(s: u32, beta: &Rational, z: f64) -> Result<f64> {
    Ok(density_closed_form(s, beta)?.eval_f64(z))
}

/// `D(s, β)(z)` from the derivative form.
pub fn eval_density_derivative_form(s: u32, beta: &Rational, z: f64) -> Result<f64> {
    Ok(density(s, beta)?.eval_f64(z))
}

/// `e^(-z) z^γ Σ |c_k| z^k`: the magnitude scale against which rounding in
/// a density evaluation is measured.
pub fn density_scale(s: u32, beta: &Rational, z: f64) -> Result<f64> {
    let d = density_closed_form(s, beta)?;
    let abs_poly = Poly::from_coeffs(d.poly().coeffs().iter().map(|c| c.abs()).collect());
    Ok(WeightedExpr::new(d.rate().clone(), d.power().clone(), abs_poly).eval_f64(z))
}

/// A rational point pair `z1 < z2` where the density takes opposite signs.
pub fn find_sign_change(s: u32, beta: &Rational) -> Result<Option<(Rational, Rational)>> {
    let d = density_closed_form(s, beta)?;
    // e^(-z) z^γ > 0 for z > 0, so the sign is that of the polynomial factor
    let sign_at = |z: &Rational| {
        let v = d.poly().evaluate(z);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let step = Rational::new(1.into(), 16.into());
    let mut prev: Option<(Rational, i32)> = None;
    let mut z = step.clone();
    // roots of the Laguerre factor lie well below 4(s + |β| + 2)
    let limit = Rational::from_integer(
        (4 * (s as i64 + 2) + 4 * beta.abs().ceil().to_integer().to_i64().unwrap_or(0)).into(),
    );
    while z <= limit {
        let sg = sign_at(&z);
        if sg != 0 {
            if let Some((pz, ps)) = &prev {
                if *ps != sg {
                    return Ok(Some((pz.clone(), z)));
                }
            }
            prev = Some((z.clone(), sg));
        }
        z += &step;
    }
    Ok(None)
}

const XGK: [&str; 11] = [
    "0.995657163025808080735527280689003",
    "0.973906528517171720077964012084452",
    "0.930157491355708226001207180059508",
    "0.865063366688984510732096688423493",
    "0.780817726586416897063717578345042",
    "0.679409568299024406234327365114874",
    "0.562757134668604683339000099272694",
    "0.433395394129247190799265943165784",
    "0.294392862701460198131126603103866",
    "0.148874338981631210884826001129720",
    "0",
];

const WGK: [&str; 11] = [
    "0.011694638867371874278064396062192",
    "0.032558162307964727478818972459390",
    "0.054755896574351996031381300244580",
    "0.075039674810919952767043140916190",
    "0.093125454583697605535065465083366",
    "0.109387158802297641899210590325805",
    "0.123491976262065851077958109831074",
    "0.134709217311473325928054001771707",
    "0.142775938577060080797094273138717",
    "0.147739104901338491374841515972068",
    "0.149445554002916905664936468389821",
];

/// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [&str; 5] = [
    "0.066671344308688137593568809893332",
    "0.149451349150580593145776339657697",
    "0.219086362515982043995534934228163",
    "0.269266719309996355091226921569469",
    "0.295524224714752870173892994651338",
];

struct Rule {
    xgk: [Dd; 11],
    wgk: [Dd; 11],
    wg: [Dd; 5],
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| Rule {
        xgk: XGK.map(Dd::parse),
        wgk: WGK.map(Dd::parse),
        wg: WG.map(Dd::parse),
    })
}

/// Relative rounding unit of double-double arithmetic, with headroom.
const DD_FLOOR: f64 = 1e-30;

/// One 21-point Kronrod panel: `(value, error estimate, ∫|f|)`.
fn gk21(f: &dyn Fn(Dd) -> Dd, a: f64, b: f64) -> (Dd, f64, f64) {
    let r = rule();
    // dyadic bisection of the unit interval keeps c and h exact
    let c = Dd::new(0.5 * (a + b));
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * r.wgk[10];
    let mut gauss = Dd::ZERO;
    let mut abs = fc.abs().to_f64() * r.wgk[10].hi;
    for j in 0..10 {
        let dx = r.xgk[j].mul_f64(h);
        let (f1, f2) = (f(c - dx), f(c + dx));
        let pair = f1 + f2;
        kronrod += pair * r.wgk[j];
        abs += r.wgk[j].hi * (f1.abs().to_f64() + f2.abs().to_f64());
        if j % 2 == 1 {
            gauss += pair * r.wg[j / 2];
        }
    }
    let abs = abs * h;
    let err = ((kronrod - gauss).to_f64() * h).abs().max(DD_FLOOR * abs);
    (kronrod.mul_f64(h), err, abs)
}

#[derive(Debug, PartialEq)]
struct Panel {
    a: f64,
    b: f64,
    value: Dd,
    err: f64,
    abs: f64,
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn sum_values(heap: &BinaryHeap<Panel>) -> Dd {
    heap.iter().fold(Dd::ZERO, |acc, p| acc + p.value)
}

/// Globally adaptive Gauss–Kronrod on a sub-interval of `[0, 1]`: bisects
/// the worst panel until the summed error estimate meets
/// `max(abs_tol, rel_tol·|value|)`. The integrand is evaluated in
/// double-double so that sign-indefinite integrands with large `∫|f|`
/// keep their cancellation exact to well below f64 resolution.
pub fn integrate(
    f: &dyn Fn(Dd) -> Dd,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> QuadratureResult {
    let (value, err, abs) = gk21(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value,
        err,
        abs,
    });
    let mut total_err = err;
    let mut total_abs = abs;
    let mut panels = 1;
    loop {
        // running sums lose the small remainder after large panels split
        if panels % 16 == 0 {
            total_err = heap.iter().map(|p| p.err).sum();
            total_abs = heap.iter().map(|p| p.abs).sum();
        }
        let total = sum_values(&heap).to_f64();
        let target = abs_tol
            .max(rel_tol * total.abs())
            .max(2.0 * DD_FLOOR * total_abs);
        if total_err <= target && panels % 16 != 0 {
            total_err = heap.iter().map(|p| p.err).sum();
        }
        if total_err <= target {
            return QuadratureResult {
                value: total,
                abs_error_estimate: total_err,
                subdivisions: panels,
                abs_integral: total_abs,
                unreliable: false,
            };
        }
        if panels >= max_panels {
            break;
        }
        let worst = heap.pop().expect("heap holds every panel");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le, la) = gk21(f, worst.a, mid);
        let (rv, re, ra) = gk21(f, mid, worst.b);
        total_err += le + re - worst.err;
        total_abs += la + ra - worst.abs;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            err: le,
            abs: la,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            err: re,
            abs: ra,
        });
        panels += 1;
    }
    QuadratureResult {
        value: sum_values(&heap).to_f64(),
        abs_error_estimate: heap.iter().map(|p| p.err).sum(),
        subdivisions: panels,
        abs_integral: heap.iter().map(|p| p.abs).sum(),
        unreliable: true,
    }
}

/// `∫_0^∞ e^(rate z) z^γ P(z) g(z) dz` for `γ > -1`, `rate < 0`.
///
/// On `[0, 1]` the substitution `z = u^q` with `γ = p/q` turns
/// `z^γ dz` into `q u^(p+q-1) du`, removing the endpoint singularity. The
/// tail `[1, ∞)` is mapped to `[0, 1)` by `z = 1 + x/(1-x)`. Both pieces
/// get an absolute target only: they can be large and cancel each other.
fn integrate_weighted(w: &WeightedExpr, g: &dyn Fn(Dd) -> Dd, abs_tol: f64) -> QuadratureResult {
    let rate = Dd::from_rational(w.rate());
    let numer = w.power().numer().to_i64().expect("small exponent");
    let denom = w.power().denom().to_i64().expect("small exponent");
    let (p, q) = {
        let g = numer.gcd(&denom);
        (numer / g, (denom / g) as u32)
    };
    let poly = DdPoly::new(w.poly());

    let head = |u: Dd| {
        let z = u.powi(q);
        let jac_pow = u.powi((p + q as i64 - 1) as u32).mul_f64(q as f64);
        jac_pow * (rate * z).exp() * poly.eval(z) * g(z)
    };
    let tail = |x: Dd| {
        let one_minus = Dd::ONE - x;
        if one_minus.hi <= 0.0 {
            return Dd::ZERO;
        }
        let z = Dd::ONE + x / one_minus;
        if z.hi > 1.0e3 {
            return Dd::ZERO;
        }
        let root = z.root(q);
        let z_pow = if p >= 0 {
            root.powi(p as u32)
        } else {
            Dd::ONE / root.powi((-p) as u32)
        };
        let jac = Dd::ONE / (one_minus * one_minus);
        (rate * z).exp() * z_pow * poly.eval(z) * g(z) * jac
    };
    let half = MAX_SUBDIVISIONS / 2;
    let a = integrate(&head, 0.0, 1.0, abs_tol / 2.0, 0.0, half);
    let b = integrate(&tail, 0.0, 1.0, abs_tol / 2.0, 0.0, half);
    QuadratureResult::combine(a, b)
}

/// Numerical `∫_0^∞ z^n D(s, β) dz`.
///
/// The error target is `tol` absolute; with `tol <= 1e-8` this also meets
/// the relative coherence bound for every nonzero moment.
pub fn quad_moment(n: u32, s: u32, beta: &Rational, tol: f64) -> Result<QuadratureResult> {
    let d = density_closed_form(s, beta)?;
    let g = move |z: Dd| z.powi(n);
    Ok(integrate_weighted(&d, &g, tol))
}

/// Numerical `∫_0^∞ p q D(s, β) dz`, evaluating `p` and `q` separately.
pub fn quad_inner_product(
    p: &Poly,
    q: &Poly,
    s: u32,
    beta: &Rational,
    tol: f64,
) -> Result<QuadratureResult> {
    let d = density_closed_form(s, beta)?;
    let (pf, qf) = (DdPoly::new(p), DdPoly::new(q));
    let g = move |z: Dd| pf.eval(z) * qf.eval(z);
    Ok(integrate_weighted(&d, &g, tol))
}

/// Coherence criterion: relative `tol` against a nonzero exact value,
/// absolute `tol` at exact zeros.
pub fn agrees(numeric: f64, exact: &GammaValue, tol: f64) -> bool {
    deviation(numeric, exact) <= tol
}

/// Relative deviation, or absolute deviation when the exact value is zero.
pub fn deviation(numeric: f64, exact: &GammaValue) -> f64 {
    if exact.is_zero() {
        numeric.abs()
    } else {
        let e = gamma_value_to_f64(exact);
        ((numeric - e) / e).abs()
    }
}
