//! Wright function `W_{λ,μ}(-r)` and the Mainardi functions `M_ν`, `F_ν`.
//!
//! ```text
//! W_{λ,μ}(z) = Σ_{n≥0} z^n / (n! Γ(λn + μ))
//! M_ν(r)     = W_{-ν, 1-ν}(-r)
//! F_ν(r)     = W_{-ν, 0}(-r) = ν r M_ν(r)
//! M_ν'(r)    = -W_{-ν, 1-2ν}(-r)
//! ```
//!
//! The last line is the term-wise derivative of the `M_ν` series with the
//! summation index shifted by one; at `ν = 1/2`, `r = 0` its leading term is
//! `-1/Γ(0) = 0`, matching the flat top of the Gaussian.
//!
//! For `1/2 < ν < 1` the terms of these series first grow like
//! `r^n / Γ((1-ν)n)` before they decay, so at moderate `r` (and quickly as
//! `ν → 1`) the sum cancels catastrophically. The series report that as
//! [`Error::CancellationLoss`]; [`mainardi_m`] and [`mainardi_m_prime`] then
//! fall back to the Hankel integral taken along two rays
//! `σ = ρ e^{±iθ}`, `π/2 < θ < π/(2ν)`, on which `e^{σ - rσ^ν}` decays
//! without growing first:
//!
//! ```text
//! M_ν(r) = (1/π) ∫_0^∞ Im[ e^{σ - rσ^ν} σ^{ν-1} e^{iθ} ] dρ
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, ln_rgamma_signed, rgamma};
use crate::order::{EvalResult, FracOrder};
use crate::quadrature::{tanh_sinh, GaussLegendre};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const TERM_CAP: usize = 300;
/// Largest tolerated `max |partial sum| / |result|`.
pub const CANCELLATION_LIMIT: f64 = 1e6;

const TERM_REL_ERR: f64 = 2e-15;

/// Parameters of `W_{λ,μ}(-r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    lambda: f64,
    mu: f64,
    r: f64,
}

impl WrightParams {
    /// `μ` may be zero or negative: with `1/Γ` the series is defined for any `μ`.
    pub fn new(lambda: f64, mu: f64, r: f64) -> Result<Self> {
        if !(lambda > -1.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "Wright lambda = {lambda} must exceed -1"
            )));
        }
        if !mu.is_finite() {
            return Err(Error::domain("Wright mu must be finite"));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!(
                "Wright argument magnitude {r} must be finite and >= 0"
            )));
        }
        Ok(WrightParams { lambda, mu, r })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// `(|r^n / (n! Γ(λn+μ))|, sign of 1/Γ)`, plus the bound
/// `r^n Γ(1-z) / (π n!)` on `|term|` that holds whenever `z = λn+μ < 0`.
fn wright_term(lambda: f64, mu: f64, r: f64, n: usize, ln_r: f64) -> (f64, f64, f64) {
    let z = lambda * n as f64 + mu;
    let nf = n as f64;
    let (ln_rg, sign) = ln_rgamma_signed(z);
    if sign == 0.0 {
        // pole of Γ: the term vanishes, the envelope does not
        let env = if z < 0.0 {
            (nf * ln_r - ln_gamma(nf + 1.0) + ln_gamma(1.0 - z) - PI.ln()).exp()
        } else {
            0.0
        };
        return (0.0, 0.0, env);
    }
    let mag = if n < 150 && z.abs() < 150.0 {
        let mut p = 1.0;
        for k in 1..=n {
            p *= r / k as f64;
        }
        p * rgamma(z).abs()
    } else {
        (nf * ln_r - ln_gamma(nf + 1.0) + ln_rg).exp()
    };
    let env = if z < 0.0 {
        (nf * ln_r - ln_gamma(nf + 1.0) + ln_gamma(1.0 - z) - PI.ln()).exp()
    } else {
        mag
    };
    (mag, sign, env.max(mag))
}

/// Relative rounding error of the term computed by [`wright_term`]: one
/// multiplication and one division per factor of `r^n / n!`, or the absolute
/// error of the exponent on the logarithmic branch.
fn term_rel_err(lambda: f64, mu: f64, ln_r: f64, n: usize) -> f64 {
    let z = lambda * n as f64 + mu;
    let nf = n as f64;
    if n < 150 && z.abs() < 150.0 {
        (nf + TERM_REL_ERR / f64::EPSILON) * f64::EPSILON
    } else {
        let exponent = nf * ln_r.abs() + ln_gamma(nf + 1.0) + ln_gamma(1.0 - z.min(0.0)) + z.abs();
        TERM_REL_ERR + 2.0 * f64::EPSILON * exponent
    }
}

/// Series `Σ (-r)^n / (n! Γ(λn+μ))` with a remainder bound below `tol`.
///
/// The remainder after `N` terms is bounded by the geometric tail of the
/// term envelopes, whose ratio decreases once `n` is past the peak.
pub fn wright(p: WrightParams, tol: f64) -> Result<EvalResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("tolerance {tol} must be positive")));
    }
    let WrightParams { lambda, mu, r } = p;
    if r == 0.0 {
        return Ok(EvalResult::new(rgamma(mu), TERM_REL_ERR * rgamma(mu).abs()));
    }
    let ln_r = r.ln();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut rounding = 0.0;
    let mut max_partial: f64 = 0.0;
    let (mut mag, mut sign, mut env) = wright_term(lambda, mu, r, 0, ln_r);
    for n in 0..TERM_CAP {
        let alt = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = alt * sign * mag;
        sum += term;
        abs_sum += mag;
        rounding += term_rel_err(lambda, mu, ln_r, n) * mag + f64::EPSILON * sum.abs();
        max_partial = max_partial.max(sum.abs());

        let (m1, s1, e1) = wright_term(lambda, mu, r, n + 1, ln_r);
        let (_, _, e2) = wright_term(lambda, mu, r, n + 2, ln_r);
        let ratio = e2 / e1;
        let decaying = e1 <= env && ratio < 1.0;
        if decaying {
            let remainder = e1 / (1.0 - ratio);
            if remainder <= 0.1 * tol || remainder <= 1e-3 * f64::EPSILON * abs_sum {
                let scale = sum.abs();
                let cancellation = if max_partial == 0.0 {
                    0.0
                } else {
                    max_partial / scale
                };
                if cancellation > CANCELLATION_LIMIT {
                    return Err(Error::CancellationLoss {
                        ratio: cancellation,
                    });
                }
                let abs_err = remainder + rounding;
                if abs_err > tol {
                    return Err(Error::CancellationLoss {
                        ratio: cancellation,
                    });
                }
                return Ok(EvalResult::new(sum, abs_err));
            }
        }
        mag = m1;
        sign = s1;
        env = e1;
    }
    Err(Error::NonConvergence {
        terms: TERM_CAP,
        bound: env,
    })
}

fn require_sub_wave(nu: FracOrder) -> Result<f64> {
    if nu.is_wave() {
        Err(Error::domain(
            "M_nu at nu = 1 is a delta function (wave endpoint)",
        ))
    } else {
        Ok(nu.get())
    }
}

fn check_r(r: f64) -> Result<()> {
    if r.is_finite() && r >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "similarity variable {r} must be finite and >= 0"
        )))
    }
}

fn is_series_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::CancellationLoss { .. } | Error::NonConvergence { .. }
    )
}

/// `M_ν(r)` by the series alone (no fallback).
pub fn mainardi_m_series(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    let v = require_sub_wave(nu)?;
    check_r(r)?;
    wright(WrightParams::new(-v, 1.0 - v, r)?, tol)
}

/// `M_ν'(r)` by the series alone (no fallback).
pub fn mainardi_m_prime_series(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    let v = require_sub_wave(nu)?;
    check_r(r)?;
    let w = wright(WrightParams::new(-v, 1.0 - 2.0 * v, r)?, tol)?;
    Ok(EvalResult::new(-w.value, w.abs_err))
}

/// Mainardi function `M_ν(r)`, `1/2 ≤ ν < 1`.
pub fn mainardi_m(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    match mainardi_m_series(nu, r, tol) {
        Err(e) if is_series_failure(&e) => mainardi_m_contour(nu, r, tol),
        other => other,
    }
}

/// `F_ν(r) = ν r M_ν(r)`.
pub fn mainardi_f(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    let m = mainardi_m(nu, r, tol)?;
    let k = nu.get() * r;
    Ok(EvalResult::new(k * m.value, k * m.abs_err))
}

/// `M_ν'(r)`, the derivative in `r`.
pub fn mainardi_m_prime(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    match mainardi_m_prime_series(nu, r, tol) {
        Err(e) if is_series_failure(&e) => mainardi_m_prime_contour(nu, r, tol),
        other => other,
    }
}

/// Ray angle inside `(π/2, min(π, π/(2ν)))`.
fn ray_angle(nu: f64) -> f64 {
    0.5 * (0.5 * PI + (PI / (2.0 * nu)).min(PI))
}

const CONTOUR_PANEL_ORDER: usize = 20;
const CONTOUR_HEAD: f64 = 1.0;

/// `(1/π) ∫_0^∞ Im[ e^{σ - rσ^ν} σ^{ν-1} e^{iθ} w(σ) ] dρ` with `w(σ) = 1`
/// (value) or `w(σ) = -σ^ν` (derivative in `r`).
fn hankel_rays(nu: f64, r: f64, derivative: bool, tol: f64) -> Result<EvalResult> {
    let theta = ray_angle(nu);
    let dir = Complex64::from_polar(1.0, theta);
    let cos_t = theta.cos();
    let integrand = |rho: f64| -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        let s = dir * rho;
        let s_nu = s.powf(nu);
        let mut v = (s - r * s_nu).exp() * s_nu / s * dir;
        if derivative {
            v *= -s_nu;
        }
        v.im / PI
    };

    // exp(σ - rσ^ν) carries a relative error of about ε |σ - rσ^ν|
    let rounding = |rho: f64| 4.0 + rho + r * rho.powf(nu);

    let head = tanh_sinh(integrand, 0.0, CONTOUR_HEAD, 0.05 * tol, 12);
    let head_abs = tanh_sinh(
        |rho| integrand(rho).abs() * rounding(rho),
        0.0,
        CONTOUR_HEAD,
        1e-3,
        8,
    );
    let mut value = head.value;
    let mut err = head.abs_err;
    let mut abs_sum = head_abs.value + head_abs.abs_err;

    // beyond rho_max every ray contribution is below exp(-45)
    let decay = -cos_t;
    let rho_max = CONTOUR_HEAD.max(45.0 / decay);
    let fine = GaussLegendre::new(CONTOUR_PANEL_ORDER);
    let coarse = GaussLegendre::new(CONTOUR_PANEL_ORDER / 2);
    let mut lo = CONTOUR_HEAD;
    while lo < rho_max {
        let hi = lo + 1.0;
        let mut qf = 0.0;
        for (x, w) in fine.mapped(lo, hi) {
            let v = w * integrand(x);
            qf += v;
            abs_sum += v.abs() * rounding(x);
        }
        let qc = coarse.integrate(lo, hi, integrand);
        value += qf;
        err += (qf - qc).abs();
        lo = hi;
    }
    // |integrand| <= ρ^{ν-1} e^{ρ cos θ} (1 + ρ^ν) / π past the cutoff
    let tail = (1.0 + lo.powf(nu)) * lo.powf(nu - 1.0) * (lo * cos_t).exp() / (PI * decay);
    err += tail + 2.0 * f64::EPSILON * abs_sum;
    if err > tol {
        return Err(Error::Quadrature { estimate: err, tol });
    }
    Ok(EvalResult::new(value, err))
}

/// `M_ν(r)` by the Hankel-ray integral.
pub fn mainardi_m_contour(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    let v = require_sub_wave(nu)?;
    check_r(r)?;
    hankel_rays(v, r, false, tol)
}

/// `M_ν'(r)` by the Hankel-ray integral.
pub fn mainardi_m_prime_contour(nu: FracOrder, r: f64, tol: f64) -> Result<EvalResult> {
    let v = require_sub_wave(nu)?;
    check_r(r)?;
    hankel_rays(v, r, true, tol)
}
