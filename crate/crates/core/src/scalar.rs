//! One-dimensional alpha-calculus.
//!
//! For `alpha` in `(0, 1]` the two-point problem
//!
//! ```text
//! alpha v'' + (1 - alpha) |v'|^2 = 0,   v(0) = a,   v(1) = b
//! ```
//!
//! has the closed-form solution
//!
//! ```text
//! v(t) = a + ln(1 + (exp((b - a) K) - 1) t) / K,   K = (1 - alpha) / alpha,
//! ```
//!
//! which degenerates to the affine interpolant at `alpha = 1` and to the
//! `max(a, b)` rule at `alpha = 0`. Equivalently `exp(K v)` is affine in `t`;
//! every evaluation below works with that representation anchored at the
//! larger endpoint so exponentials never overflow.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Below this value of `K |b - a|` the chord is evaluated by its second-order
/// expansion around the affine interpolant.
const NEAR_AFFINE: f64 = 1e-8;

const ETA_BISECTION_CAP: usize = 200;

/// Validated interpolation parameter between quasiconvexity (0) and convexity (1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha {
    value: f64,
    /// `(1 - alpha) / alpha`; `None` tags the quasiconvex limit.
    k: Option<f64>,
}

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Domain(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        let k = if alpha == 0.0 {
            None
        } else {
            Some((1.0 - alpha) / alpha)
        };
        Ok(Self { value: alpha, k })
    }

    pub const CONVEX: Alpha = Alpha {
        value: 1.0,
        k: Some(0.0),
    };

    pub const QUASICONVEX: Alpha = Alpha {
        value: 0.0,
        k: None,
    };

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    /// The constant `K = (1 - alpha) / alpha`, undefined at `alpha = 0`.
    #[inline]
    pub fn k(self) -> Option<f64> {
        self.k
    }

    #[inline]
    pub fn is_quasiconvex(self) -> bool {
        self.k.is_none()
    }

    #[inline]
    pub fn is_convex(self) -> bool {
        self.value == 1.0
    }

    fn require_positive(self, what: &str) -> Result<f64> {
        self.k
            .ok_or_else(|| Error::Unsupported(format!("{what} is not defined for alpha = 0")))
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `make_alpha` in functional form.
pub fn make_alpha(alpha: f64) -> Result<Alpha> {
    Alpha::new(alpha)
}

/// Open interval on which a chord solution can be continued.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalInterval {
    pub lower: f64,
    pub upper: f64,
}

impl MaximalInterval {
    pub const UNBOUNDED: MaximalInterval = MaximalInterval {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
    };

    #[inline]
    pub fn contains(&self, t: f64) -> bool {
        self.lower < t && t < self.upper
    }
}

/// Maximal continuation interval of the chord solution through `(0, a)` and `(1, b)`.
pub fn maximal_interval(alpha: Alpha, a: f64, b: f64) -> Result<MaximalInterval> {
    let k = alpha.require_positive("the maximal interval")?;
    if a == b || k == 0.0 {
        return Ok(MaximalInterval::UNBOUNDED);
    }
    let delta = 1.0 / (k * (b - a).abs()).exp_m1();
    Ok(if b > a {
        MaximalInterval {
            lower: -delta,
            upper: f64::INFINITY,
        }
    } else {
        MaximalInterval {
            lower: f64::NEG_INFINITY,
            upper: 1.0 + delta,
        }
    })
}

fn check_finite(a: f64, b: f64, t: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "non-finite chord input (a = {a}, b = {b}, t = {t})"
        )))
    }
}

/// Value at `t` of the one-dimensional solution with `v(0) = a`, `v(1) = b`.
///
/// At `alpha = 0` the quasiconvex convention applies: the endpoints are
/// attained exactly and every `t` in `(0, 1)` carries `max(a, b)`.
pub fn chord_value(alpha: Alpha, a: f64, b: f64, t: f64) -> Result<f64> {
    check_finite(a, b, t)?;
    match alpha.k {
        None => {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Unsupported(format!(
                    "alpha = 0 chords are only defined on [0, 1], got t = {t}"
                )));
            }
            Ok(quasiconvex_chord(a, b, t))
        }
        Some(_) => {
            check_interval(alpha, a, b, t)?;
            Ok(chord_eval(alpha, a, b, t))
        }
    }
}

// [0, 1] is always admissible even when the computed interval end rounds onto 1.
fn check_interval(alpha: Alpha, a: f64, b: f64, t: f64) -> Result<()> {
    let interval = maximal_interval(alpha, a, b)?;
    if (0.0..=1.0).contains(&t) || interval.contains(t) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "t = {t} outside the maximal interval ({}, {})",
            interval.lower, interval.upper
        )))
    }
}

#[inline]
fn quasiconvex_chord(a: f64, b: f64, t: f64) -> f64 {
    if t == 0.0 {
        a
    } else if t == 1.0 {
        b
    } else {
        a.max(b)
    }
}

/// Unchecked chord evaluation for the solver's inner loop.
///
/// The caller guarantees finite inputs and `t` inside the maximal interval
/// (always true for `t` in `[0, 1]`).
#[inline]
pub(crate) fn chord_eval(alpha: Alpha, a: f64, b: f64, t: f64) -> f64 {
    let Some(k) = alpha.k else {
        return quasiconvex_chord(a, b, t);
    };
    if t == 0.0 {
        return a;
    }
    if t == 1.0 || a == b {
        return b;
    }
    if k == 0.0 {
        return (1.0 - t) * a + t * b;
    }
    // Parameter measured from the smaller endpoint.
    let (lo, hi, tp) = if a < b { (a, b, t) } else { (b, a, 1.0 - t) };
    let d = hi - lo;
    let x = k * d;
    if x < NEAR_AFFINE {
        return lo + tp * d + 0.5 * k * tp * (1.0 - tp) * d * d;
    }
    hi + ((1.0 - tp) * (-x).exp_m1()).ln_1p() / k
}

/// Derivative in `t` of the chord solution.
pub fn chord_derivative(alpha: Alpha, a: f64, b: f64, t: f64) -> Result<f64> {
    check_finite(a, b, t)?;
    let k = alpha.require_positive("the chord derivative")?;
    check_interval(alpha, a, b, t)?;
    if a == b {
        return Ok(0.0);
    }
    if k == 0.0 {
        return Ok(b - a);
    }
    // v'(t) = C / (K (1 + C t)) with C = exp((b - a) K) - 1, rescaled by the
    // larger endpoint. For a > b use v(t) = w(1 - t) with w the chord (b, a).
    let (d, tp, sign) = if b > a {
        (b - a, t, 1.0)
    } else {
        (a - b, 1.0 - t, -1.0)
    };
    let em = (-k * d).exp_m1();
    Ok(sign * (-em) / (k * (1.0 + (1.0 - tp) * em)))
}

/// Closed-form chord solution for fixed endpoint data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordSolution {
    pub a: f64,
    pub b: f64,
    pub alpha: Alpha,
}

impl ChordSolution {
    pub fn new(alpha: Alpha, a: f64, b: f64) -> Self {
        Self { a, b, alpha }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        chord_value(self.alpha, self.a, self.b, t)
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        chord_derivative(self.alpha, self.a, self.b, t)
    }

    pub fn maximal_interval(&self) -> Result<MaximalInterval> {
        maximal_interval(self.alpha, self.a, self.b)
    }
}

/// Re-evaluates the chord through two of its own interior samples.
///
/// Returns `chord(chord(s), chord(s2), t)`; by the scaling invariance of the
/// operator this equals `chord(s + t (s2 - s))`.
pub fn chord_consistency(alpha: Alpha, a: f64, b: f64, s: f64, s2: f64, t: f64) -> Result<f64> {
    if !(0.0 <= s && s < s2 && s2 <= 1.0) {
        return Err(Error::Precondition(format!(
            "sub-chord requires 0 <= s < s2 <= 1, got s = {s}, s2 = {s2}"
        )));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Precondition(format!(
            "t must lie in [0, 1], got {t}"
        )));
    }
    let left = chord_value(alpha, a, b, s)?;
    let right = chord_value(alpha, a, b, s2)?;
    chord_value(alpha, left, right, t)
}

/// Solution of `alpha w'' + (1 - alpha) |w'|^2 = -eta^2` with `w(0) = a`, `w(1) = b`.
///
/// Written as `w(t) = ln(cos(c1 + omega t)) / K + c2` with
/// `omega = eta sqrt(1 - alpha) / alpha`. When `a > b` the stored constants
/// describe the reflected problem and evaluation maps `t` to `1 - t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaSolution {
    pub a: f64,
    pub b: f64,
    pub alpha: Alpha,
    pub eta: f64,
    pub c1: f64,
    pub c2: f64,
    omega: f64,
    k: f64,
    reflected: bool,
}

impl EtaSolution {
    /// Frequency `eta sqrt(1 - alpha) / alpha` of the cosine profile.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    /// The target `exp(K (b - a))` of the defining equation for `c1`, in the
    /// (possibly reflected) orientation the constants were solved for.
    pub fn target(&self) -> f64 {
        let (lo, hi) = self.oriented_endpoints();
        (self.k * (hi - lo)).exp()
    }

    /// `cos(c1 + omega) / cos(c1)`.
    pub fn ratio(&self) -> f64 {
        ratio(self.c1, self.omega)
    }

    /// Absolute residual of the equation fixing `c1`.
    pub fn eqc_residual(&self) -> f64 {
        (self.ratio() - self.target()).abs()
    }

    fn oriented_endpoints(&self) -> (f64, f64) {
        if self.reflected {
            (self.b, self.a)
        } else {
            (self.a, self.b)
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        eta_value(self, t)
    }
}

#[inline]
fn ratio(c: f64, omega: f64) -> f64 {
    (c + omega).cos() / c.cos()
}

pub fn eta_solution(alpha: Alpha, a: f64, b: f64, eta: f64) -> Result<EtaSolution> {
    check_finite(a, b, eta)?;
    let k = match alpha.k {
        Some(k) if k > 0.0 => k,
        _ => {
            return Err(Error::Unsupported(format!(
                "eta solutions need alpha in (0, 1), got {alpha}"
            )))
        }
    };
    if eta <= 0.0 {
        return Err(Error::Precondition(format!(
            "eta must be positive, got {eta}"
        )));
    }
    let omega = eta * (1.0 - alpha.value).sqrt() / alpha.value;
    if omega >= FRAC_PI_2 {
        return Err(Error::Precondition(format!(
            "eta = {eta} too large: eta sqrt(1 - alpha) / alpha = {omega} must be below pi/2"
        )));
    }
    let reflected = a > b;
    let (lo, hi) = if reflected { (b, a) } else { (a, b) };
    let target = (k * (hi - lo)).exp();
    if !target.is_finite() {
        return Err(Error::Domain(format!(
            "exp(K (b - a)) overflows for K = {k}, |b - a| = {}",
            hi - lo
        )));
    }

    // ratio(., omega) decreases from +inf at -pi/2 to cos(omega) <= 1 at 0.
    let mut left = -FRAC_PI_2;
    let mut right = 0.0_f64;
    if ratio(right, omega) > target {
        return Err(Error::Internal(format!(
            "c1 bisection does not bracket: F(0) = {} > {target}",
            ratio(right, omega)
        )));
    }
    for _ in 0..ETA_BISECTION_CAP {
        let mid = 0.5 * (left + right);
        if mid <= left || mid >= right {
            break;
        }
        if ratio(mid, omega) > target {
            left = mid;
        } else {
            right = mid;
        }
    }
    let c1 = [left, right, 0.5 * (left + right)]
        .into_iter()
        .filter(|c| *c > -FRAC_PI_2)
        .min_by(|x, y| {
            let rx = (ratio(*x, omega) - target).abs();
            let ry = (ratio(*y, omega) - target).abs();
            rx.total_cmp(&ry)
        })
        .ok_or_else(|| Error::Internal("c1 bisection collapsed onto -pi/2".into()))?;
    let residual = (ratio(c1, omega) - target).abs();
    if residual > 1e-12 * target {
        return Err(Error::Internal(format!(
            "c1 bisection stalled with residual {residual:e} (target {target})"
        )));
    }
    let c2 = lo - c1.cos().ln() / k;
    Ok(EtaSolution {
        a,
        b,
        alpha,
        eta,
        c1,
        c2,
        omega,
        k,
        reflected,
    })
}

pub fn eta_value(sol: &EtaSolution, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "eta solutions live on [0, 1], got t = {t}"
        )));
    }
    let s = if sol.reflected { 1.0 - t } else { t };
    let arg = sol.c1 + s * sol.omega;
    if !(-FRAC_PI_2 < arg && arg < FRAC_PI_2) {
        return Err(Error::Internal(format!(
            "cosine argument {arg} left (-pi/2, pi/2)"
        )));
    }
    Ok(arg.cos().ln() / sol.k + sol.c2)
}

/// Finite-difference residual of `alpha v'' + (1 - alpha) |v'|^2` over uniformly
/// spaced samples.
///
/// Fourth-order centred differences are used when at least five samples are
/// available (points with two neighbours on each side), otherwise the
/// three-point stencil.
pub fn ode_residual(alpha: Alpha, samples: &[(f64, f64)], h: f64) -> Result<f64> {
    let n = samples.len();
    if n < 3 {
        return Err(Error::Domain(format!(
            "ode residual needs at least 3 samples, got {n}"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!(
            "sample spacing must be positive, got {h}"
        )));
    }
    let a = alpha.value;
    let v: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let mut worst = 0.0_f64;
    if n >= 5 {
        for i in 2..n - 2 {
            let d1 = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
            let d2 = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2])
                / (12.0 * h * h);
            worst = worst.max((a * d2 + (1.0 - a) * d1 * d1).abs());
        }
    } else {
        for i in 1..n - 1 {
            let d1 = (v[i + 1] - v[i - 1]) / (2.0 * h);
            let d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
            worst = worst.max((a * d2 + (1.0 - a) * d1 * d1).abs());
        }
    }
    Ok(worst)
}
