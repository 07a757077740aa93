//! One-parameter Mittag-Leffler function `E_α(-x)` on the negative real axis,
//! `1 ≤ α ≤ 2`, `x ≥ 0`, with a bound on the absolute error.
//!
//! Three routes, selected by [`ml`]:
//!
//! * Taylor series `Σ (-x)^n / Γ(αn+1)` for small `x`;
//! * for `1 < α < 2`, the exact split
//!   `E_α(-x) = g(t) + f(t)`, `t = x^{1/α}`, with the damped oscillation
//!   `g(t) = (2/α) e^{t cos(π/α)} cos(t sin(π/α))` and the Laplace-type integral
//!   `f(t) = ∫_0^∞ e^{-ut} K(u) du`,
//!   `K(u) = u^{α-1} sin(απ) / (π (u^{2α} + 2u^α cos(απ) + 1))`.
//!   [`ml_integral`] evaluates `f` by quadrature; [`ml_asymptotic`] replaces
//!   it by its (divergent) expansion `Σ_k (-1)^{k+1} x^{-k} / Γ(1-αk)`, which
//!   is what the kernel needs for large `x`;
//! * closed forms `E_1(-x) = e^{-x}` and `E_2(-x) = cos √x`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::{cos_pi, ln_gamma, ln_rgamma_signed, rgamma, sin_pi};
use crate::order::EvalResult;
use crate::quadrature::tanh_sinh;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const TERM_CAP: usize = 300;
/// Largest tolerated `max |partial sum| / max(|E|, 1)`.
pub const CANCELLATION_LIMIT: f64 = 1e6;

/// Relative error carried by each series term (`x^n` and `1/Γ`).
const TERM_REL_ERR: f64 = 2e-15;
/// The series is tried while `Σ |terms| = E_α(+x)` stays below this.
const SERIES_ABS_SUM_MAX: f64 = 25.0;
/// Target of the asymptotic switch point.
const SWITCH_TOL: f64 = 1e-12;
const MAX_ASYMPTOTIC_TERMS: usize = 400;
const TANH_SINH_MAX_LEVEL: u32 = 12;

/// Argument of `E_α(-x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlArg {
    alpha: f64,
    x: f64,
}

impl MlArg {
    pub fn new(alpha: f64, x: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&alpha) {
            return Err(Error::domain(format!(
                "Mittag-Leffler order {alpha} outside [1, 2]"
            )));
        }
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::domain(format!(
                "Mittag-Leffler argument -{x} must be finite and <= 0"
            )));
        }
        Ok(MlArg { alpha, x })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Magnitude of the (negative) argument.
    pub fn x(&self) -> f64 {
        self.x
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance {tol} must be positive")))
    }
}

/// `x^n / Γ(αn+1)`.
fn series_term_magnitude(alpha: f64, x: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let z = alpha * n as f64 + 1.0;
    if z < 170.0 && n < 1000 {
        let p = x.powi(n as i32);
        if p.is_finite() && p > 1e-290 {
            return p * rgamma(z);
        }
    }
    (n as f64 * x.ln() - ln_gamma(z)).exp()
}

/// Largest `x` at which [`ml`] tries the Taylor series first.
pub fn x_series_max(alpha: f64) -> f64 {
    (alpha * SERIES_ABS_SUM_MAX).ln().powf(alpha)
}

/// Smallest `x` at which [`ml`] uses [`ml_asymptotic`].
///
/// The remainder after the smallest algebraic term is about
/// `sqrt(2π/t) e^{-t} / (π m_α)` with `t = x^{1/α}` (Stirling); this returns
/// `t^α` for the `t` that brings it to `1e-12`.
pub fn asymptotic_start(alpha: f64) -> f64 {
    asymptotic_start_t(alpha).powf(alpha)
}

fn asymptotic_start_t(alpha: f64) -> f64 {
    let m = remainder_denominator(alpha);
    let bound = |t: f64| (2.0 * PI / t).sqrt() * (-t).exp() / (PI * m);
    let (mut lo, mut hi) = (1.0, 200.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if bound(mid) > SWITCH_TOL {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Smallest `x` from which the algebraic expansion alone is accurate to
/// `1e-12`, so that `|E_α(-x)| ≤ 2 / (x |Γ(1-α)|)`.
///
/// Past [`asymptotic_start`] the oscillating part `(2/α) e^{t cos(π/α)}` must
/// also have decayed; that pushes the switch to infinity as `α → 2`.
pub fn x_switch(alpha: f64) -> f64 {
    let damping = -(PI / alpha).cos();
    let oscillation = if damping > 0.0 {
        (2.0 / (alpha * SWITCH_TOL)).ln() / damping
    } else {
        f64::INFINITY
    };
    asymptotic_start_t(alpha).max(oscillation).powf(alpha)
}

/// `min_u |1 + u^α e^{iαπ}|`: the smallest distance from `-1` to the ray of
/// angle `απ`, which controls the remainder of the algebraic expansion.
fn remainder_denominator(alpha: f64) -> f64 {
    if alpha < 1.5 {
        sin_pi(alpha).abs()
    } else {
        1.0
    }
}

/// Taylor series, truncated once the alternating remainder is below `tol`.
pub fn ml_series(arg: MlArg, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let (alpha, x) = (arg.alpha, arg.x);
    if x == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut max_partial: f64 = 0.0;
    let mut mag = series_term_magnitude(alpha, x, 0);
    for n in 0..TERM_CAP {
        let term = if n % 2 == 0 { mag } else { -mag };
        sum += term;
        abs_sum += mag;
        max_partial = max_partial.max(sum.abs());
        let next = series_term_magnitude(alpha, x, n + 1);
        // past the peak the terms decrease monotonically, so the alternating
        // remainder is bounded by the first omitted term
        let decreasing = next <= mag;
        mag = next;
        if decreasing && (next <= 0.1 * tol || next <= f64::EPSILON * 1e-2 * abs_sum) {
            let ratio = max_partial / sum.abs().max(1.0);
            if ratio > CANCELLATION_LIMIT {
                return Err(Error::NonConvergence {
                    terms: n + 1,
                    bound: next,
                });
            }
            let abs_err = next + TERM_REL_ERR * abs_sum;
            if abs_err > tol {
                return Err(Error::NonConvergence {
                    terms: n + 1,
                    bound: abs_err,
                });
            }
            return Ok(EvalResult::new(sum, abs_err));
        }
    }
    Err(Error::NonConvergence {
        terms: TERM_CAP,
        bound: mag,
    })
}

/// `g(t) = (2/α) e^{t cos(π/α)} cos(t sin(π/α))`, `t = x^{1/α}`,
/// and a bound on its rounding error; the phase `t sin(π/α)` and the
/// exponent `t cos(π/α)` each carry an absolute error of a few ulps of `t`.
fn oscillatory_part(alpha: f64, x: f64) -> (f64, f64) {
    let t = x.powf(1.0 / alpha);
    let (s, c) = (PI / alpha).sin_cos();
    let envelope = 2.0 / alpha * (t * c).exp();
    (
        envelope * (t * s).cos(),
        4.0 * f64::EPSILON * envelope * (1.0 + t),
    )
}

/// Asymptotic expansion for large `x`, `1 < α < 2`.
///
/// Sums the algebraic series up to its smallest term and adds the damped
/// oscillation `g`. The reported error bounds the first omitted term by
/// `Γ(αk) x^{-k} / (π m_α)`; that is a rigorous remainder bound for the
/// Laplace-type part.
pub fn ml_asymptotic(arg: MlArg, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let (alpha, x) = (arg.alpha, arg.x);
    if alpha <= 1.0 || alpha >= 2.0 {
        return Err(Error::domain(format!(
            "asymptotic regime needs 1 < alpha < 2 (got {alpha}); use the closed form"
        )));
    }
    if x <= 0.0 {
        return Err(Error::AsymptoticDivergence {
            smallest: f64::INFINITY,
        });
    }
    let m = remainder_denominator(alpha);
    let ln_x = x.ln();
    // Γ(αk) x^{-k} / (π m)
    let envelope = |k: usize| (ln_gamma(alpha * k as f64) - k as f64 * ln_x).exp() / (PI * m);

    let (g, g_err) = oscillatory_part(alpha, x);
    let mut sum = 0.0;
    let mut abs_sum = g.abs();
    let mut prev_env = f64::INFINITY;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let env = envelope(k);
        if env > prev_env {
            // past the smallest term: the expansion cannot do better
            return Err(Error::AsymptoticDivergence { smallest: prev_env });
        }
        if env <= 0.1 * tol {
            let abs_err = env + TERM_REL_ERR * abs_sum + g_err;
            if abs_err > tol {
                return Err(Error::AsymptoticDivergence { smallest: abs_err });
            }
            return Ok(EvalResult::new(g + sum, abs_err));
        }
        let (ln_r, sign) = ln_rgamma_signed(1.0 - alpha * k as f64);
        if sign != 0.0 {
            let term = sign * (ln_r - k as f64 * ln_x).exp();
            let term = if k % 2 == 1 { term } else { -term };
            sum += term;
            abs_sum += term.abs();
        }
        prev_env = env;
    }
    Err(Error::AsymptoticDivergence { smallest: prev_env })
}

/// `K(u)` with the denominator written as `(u^α + cos απ)² + sin² απ`.
fn spectral_density(alpha: f64, u: f64) -> f64 {
    let (s, c) = (sin_pi(alpha), cos_pi(alpha));
    let ua = u.powf(alpha);
    let d = (ua + c) * (ua + c) + s * s;
    ua / u * s / (PI * d)
}

/// Exact split `g + f` with `f` by tanh-sinh quadrature, for `1 < α < 2`.
///
/// The substitution `u → 1/u` folds `[1, ∞)` onto `[0, 1]`
/// (`K(1/u)/u² = K(u)`), leaving
/// `f = ∫_0^1 K(u) (e^{-tu} + e^{-t/u}) du`.
pub fn ml_integral(arg: MlArg, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let (alpha, x) = (arg.alpha, arg.x);
    if alpha <= 1.0 || alpha >= 2.0 {
        return Err(Error::domain(format!(
            "integral route needs 1 < alpha < 2 (got {alpha}); use the closed form"
        )));
    }
    let t = x.powf(1.0 / alpha);
    let (g, g_err) = oscillatory_part(alpha, x);
    let f = tanh_sinh(
        |u| {
            let k = spectral_density(alpha, u);
            let far = if u > 0.0 { (-t / u).exp() } else { 0.0 };
            k * ((-t * u).exp() + far)
        },
        0.0,
        1.0,
        0.5 * tol,
        TANH_SINH_MAX_LEVEL,
    );
    let abs_err = f.abs_err + g_err + 4.0 * f64::EPSILON * (g.abs() + f.value.abs());
    if abs_err > tol {
        return Err(Error::Quadrature {
            estimate: abs_err,
            tol,
        });
    }
    Ok(EvalResult::new(g + f.value, abs_err))
}

/// `E_α(-x)` through whichever route is accurate at `(α, x)`.
pub fn ml(arg: MlArg, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    let (alpha, x) = (arg.alpha, arg.x);
    if x == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if alpha == 1.0 {
        let v = (-x).exp();
        return Ok(EvalResult::new(v, f64::EPSILON * v));
    }
    if alpha == 2.0 {
        let s = x.sqrt();
        return Ok(EvalResult::new(s.cos(), f64::EPSILON * (1.0 + s)));
    }
    if x <= x_series_max(alpha) {
        if let Ok(r) = ml_series(arg, tol) {
            return Ok(r);
        }
    } else if x >= asymptotic_start(alpha) {
        if let Ok(r) = ml_asymptotic(arg, tol) {
            return Ok(r);
        }
    }
    ml_integral(arg, tol)
}

/// Convenience wrapper: `E_α(-x)` at the default tolerance.
pub fn mittag_leffler_neg(alpha: f64, x: f64) -> Result<EvalResult> {
    ml(MlArg::new(alpha, x)?, DEFAULT_TOL)
}

/// Regime thresholds for a fixed `α`, so hot loops avoid recomputing them.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MlEvaluator {
    alpha: f64,
    series_max: f64,
    switch: f64,
}

impl MlEvaluator {
    pub(crate) fn new(alpha: f64) -> Self {
        let interior = alpha > 1.0 && alpha < 2.0;
        MlEvaluator {
            alpha,
            series_max: if interior { x_series_max(alpha) } else { 0.0 },
            switch: if interior {
                asymptotic_start(alpha)
            } else {
                0.0
            },
        }
    }

    pub(crate) fn eval(&self, x: f64, tol: f64) -> Result<EvalResult> {
        let arg = MlArg {
            alpha: self.alpha,
            x,
        };
        let a = self.alpha;
        if x == 0.0 || a == 1.0 || a == 2.0 {
            return ml(arg, tol);
        }
        if x <= self.series_max {
            if let Ok(r) = ml_series(arg, tol) {
                return Ok(r);
            }
        } else if x >= self.switch {
            if let Ok(r) = ml_asymptotic(arg, tol) {
                return Ok(r);
            }
        }
        ml_integral(arg, tol)
    }
}
