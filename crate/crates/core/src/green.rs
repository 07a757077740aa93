//! Green function of the Cauchy problem,
//!
//! ```text
//! G(x, t; ν) = (1/π) ∫_0^∞ E_{2ν}(-κ² t^{2ν}) cos(xκ) dκ = t^{-ν} G(x t^{-ν}, 1; ν).
//! ```
//!
//! [`green_similarity`] evaluates the `t = 1` profile in the similarity
//! variable `r = x t^{-ν}`. The integral is split at a point `A₀(ν)`:
//!
//! * on `[0, A₀]`, Gauss–Legendre panels of width 1 (or `2^{-j} ≤ π/r`),
//!   order 32 with an order-16 comparison for the error;
//! * on `[A₀, ∞)`, the kernel is replaced by its algebraic expansion
//!   `Σ_k (-1)^{k+1} κ^{-2k} / Γ(1-2νk)` and each term is integrated exactly
//!   through `E_n(-irA₀)`. `A₀` is chosen so that the exponentially damped
//!   part of the kernel is negligible past it.
//!
//! The kernel values on `[0, A₀]` depend on `ν` and the panel width only, so
//! they are cached in a [`SimilarityKernel`] and shared by every `r`.
//!
//! The plain truncation `∫_0^A` with `A` from the crude tail bound
//! `|E_{2ν}(-κ² t^{2ν})| ≲ 2 / (κ² t^{2ν} |Γ(1-2ν)|)` is kept as
//! [`plan_truncation`] / [`green_truncated`].

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expint::power_trig_tail;
use crate::gamma::{gamma, rgamma, sin_pi};
use crate::mittag_leffler::MlEvaluator;
use crate::order::{EvalResult, FracOrder};
use crate::quadrature::GaussLegendre;
use crate::wright::mainardi_m_contour;

/// Default accuracy for profile evaluation.
pub const PROFILE_EPS: f64 = 1e-8;

const FINE_ORDER: usize = 32;
const COARSE_ORDER: usize = 16;
/// Accuracy requested from the Mittag-Leffler kernel at each node.
const KERNEL_TOL: f64 = 1e-13;
/// Target for the discarded pieces beyond `A₀`.
const TAIL_TARGET: f64 = 1e-15;
const MIN_SPLIT: f64 = 10.0;
const MAX_EXPANSION_TERMS: usize = 40;
/// Finest panel width is `2^-MAX_LEVEL`; larger `r` use the contour route.
const MAX_LEVEL: u32 = 10;
const KERNEL_CACHE_LIMIT: usize = 64;

fn require_interior(nu: FracOrder) -> Result<f64> {
    if nu.is_diffusion() {
        Err(Error::domain(
            "nu = 1/2 has a Gamma(0) pole in the tail bound; use the Gaussian closed form",
        ))
    } else if nu.is_wave() {
        Err(Error::domain("wave endpoint is analytic (delta)"))
    } else {
        Ok(nu.get())
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "accuracy eps = {eps} must be positive"
        )))
    }
}

/// A point `(x, t)` at which to evaluate `G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenQuery {
    nu: FracOrder,
    x: f64,
    t: f64,
}

impl GreenQuery {
    /// `G` is even in `x`, so only `x ≥ 0` is accepted.
    pub fn new(nu: FracOrder, x: f64, t: f64) -> Result<Self> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(Error::domain(format!("x = {x} must be finite and >= 0")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::domain(format!("t = {t} must be finite and > 0")));
        }
        Ok(GreenQuery { nu, x, t })
    }

    pub fn nu(&self) -> FracOrder {
        self.nu
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Kernel values on the Gauss–Legendre nodes of one panel width.
#[derive(Debug)]
struct PanelNodes {
    kappa: Vec<f64>,
    /// weight × E_{2ν}(-κ²)
    weighted: Vec<f64>,
    /// weight × error bound of E
    weighted_err: Vec<f64>,
}

#[derive(Debug)]
struct Level {
    width: f64,
    panels: usize,
    fine: PanelNodes,
    coarse: PanelNodes,
}

/// Cached kernel of the `t = 1` cosine transform for one order `ν`.
#[derive(Debug)]
pub struct SimilarityKernel {
    nu: f64,
    split: f64,
    /// `(-1)^{k+1} / Γ(1 - 2νk)`, `k = 1..=K`
    coeffs: Vec<f64>,
    /// bound on everything dropped beyond `A₀` (value, derivative)
    tail_bound: (f64, f64),
    levels: Vec<OnceLock<Result<Level>>>,
}

/// `(2/α) ∫_A^∞ κ^j e^{-d κ^p} dκ` for `j ∈ {0, 1}`, with `p = 1/ν`,
/// `d = -cos(π/(2ν))`, using `e^{-dκ^p} ≤ e^{-dA^p - dpA^{p-1}(κ-A)}`.
fn damped_tail(nu: f64, a: f64) -> (f64, f64) {
    let p = 1.0 / nu;
    let d = -(PI / (2.0 * nu)).cos();
    let slope = d * p * a.powf(p - 1.0);
    let head = (-d * a.powf(p)).exp() / nu;
    (head / slope, head * (a / slope + 1.0 / (slope * slope)))
}

/// Bound on the algebraic-expansion remainder after `k` terms, integrated
/// over `[A, ∞)`, for the value and the derivative.
fn expansion_remainder(nu: f64, a: f64, k: usize) -> (f64, f64) {
    let alpha = 2.0 * nu;
    let m = if alpha < 1.5 {
        sin_pi(alpha).abs()
    } else {
        1.0
    };
    let j = (k + 1) as f64;
    let g = gamma(alpha * j) / (PI * m);
    let v = g * a.powf(1.0 - 2.0 * j) / (2.0 * j - 1.0);
    let dv = g * a.powf(2.0 - 2.0 * j) / (2.0 * j - 2.0);
    (v, dv)
}

fn best_expansion(nu: f64, a: f64) -> (usize, (f64, f64)) {
    (1..=MAX_EXPANSION_TERMS)
        .map(|k| (k, expansion_remainder(nu, a, k)))
        .min_by(|x, y| x.1 .0.max(x.1 .1).total_cmp(&y.1 .0.max(y.1 .1)))
        .expect("non-empty range")
}

fn kernel_cache() -> &'static Mutex<HashMap<u64, Arc<SimilarityKernel>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SimilarityKernel>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl SimilarityKernel {
    /// Builds an empty kernel; node values are filled per panel width on first use.
    pub fn new(nu: FracOrder) -> Result<Self> {
        let v = require_interior(nu)?;
        let mut split = MIN_SPLIT;
        loop {
            let (g, gd) = damped_tail(v, split);
            let (_, (e, ed)) = best_expansion(v, split);
            if g.max(gd).max(e).max(ed) <= TAIL_TARGET {
                break;
            }
            split += 1.0;
        }
        let (k, (e, ed)) = best_expansion(v, split);
        let (g, gd) = damped_tail(v, split);
        let coeffs = (1..=k)
            .map(|j| {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                sign * rgamma(1.0 - 2.0 * v * j as f64)
            })
            .collect();
        Ok(SimilarityKernel {
            nu: v,
            split,
            coeffs,
            tail_bound: ((g + e) / PI, (gd + ed) / PI),
            levels: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Process-wide shared kernel for `ν`.
    pub fn shared(nu: FracOrder) -> Result<Arc<Self>> {
        let key = nu.get().to_bits();
        if let Some(k) = kernel_cache()
            .lock()
            .expect("kernel cache poisoned")
            .get(&key)
        {
            return Ok(Arc::clone(k));
        }
        let kernel = Arc::new(Self::new(nu)?);
        let mut cache = kernel_cache().lock().expect("kernel cache poisoned");
        if cache.len() >= KERNEL_CACHE_LIMIT {
            cache.clear();
        }
        Ok(Arc::clone(cache.entry(key).or_insert(kernel)))
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Split point `A₀` between panel quadrature and the analytic tail.
    pub fn split(&self) -> f64 {
        self.split
    }

    fn nodes(
        &self,
        ml: &MlEvaluator,
        rule: &GaussLegendre,
        width: f64,
        panels: usize,
    ) -> Result<PanelNodes> {
        let n = rule.order() * panels;
        let mut out = PanelNodes {
            kappa: Vec::with_capacity(n),
            weighted: Vec::with_capacity(n),
            weighted_err: Vec::with_capacity(n),
        };
        for p in 0..panels {
            let lo = p as f64 * width;
            for (k, w) in rule.mapped(lo, lo + width) {
                let e = ml.eval(k * k, KERNEL_TOL)?;
                out.kappa.push(k);
                out.weighted.push(w * e.value);
                out.weighted_err.push(w * e.abs_err);
            }
        }
        Ok(out)
    }

    fn level(&self, j: u32) -> Result<&Level> {
        let slot = &self.levels[j as usize];
        let built = slot.get_or_init(|| {
            let width = 0.5f64.powi(j as i32);
            let panels = (self.split / width).round() as usize;
            let ml = MlEvaluator::new(2.0 * self.nu);
            let fine = self.nodes(&ml, &GaussLegendre::new(FINE_ORDER), width, panels)?;
            let coarse = self.nodes(&ml, &GaussLegendre::new(COARSE_ORDER), width, panels)?;
            Ok(Level {
                width,
                panels,
                fine,
                coarse,
            })
        });
        built.as_ref().map_err(Clone::clone)
    }

    /// Panel level for `r`: widths `2^{-j} ≤ π / r`.
    fn level_for(r: f64) -> Option<u32> {
        if r <= PI {
            return Some(0);
        }
        let j = (r / PI).log2().ceil() as u32;
        (j <= MAX_LEVEL).then_some(j)
    }

    /// Sum over panels of `w E(κ) φ(κ)` on the fine and coarse rules, plus
    /// the propagated kernel error and a rounding estimate.
    fn panel_sum(&self, level: &Level, phi: impl Fn(f64) -> f64) -> (f64, f64) {
        let per_fine = FINE_ORDER;
        let per_coarse = COARSE_ORDER;
        let mut value = 0.0;
        let mut err = 0.0;
        let mut abs_sum = 0.0;
        for p in 0..level.panels {
            let mut qf = 0.0;
            for i in p * per_fine..(p + 1) * per_fine {
                let f = phi(level.fine.kappa[i]);
                let v = level.fine.weighted[i] * f;
                qf += v;
                abs_sum += v.abs();
                err += level.fine.weighted_err[i] * f.abs();
            }
            let mut qc = 0.0;
            for i in p * per_coarse..(p + 1) * per_coarse {
                qc += level.coarse.weighted[i] * phi(level.coarse.kappa[i]);
            }
            value += qf;
            err += (qf - qc).abs();
        }
        debug_assert!(level.width > 0.0);
        (value, err + 4.0 * f64::EPSILON * abs_sum)
    }

    /// `(1/π) ∫_0^∞ E_{2ν}(-κ²) cos(rκ) dκ = ½ M_ν(r)`.
    pub fn value(&self, r: f64) -> Result<EvalResult> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!(
                "similarity variable {r} must be finite and >= 0"
            )));
        }
        let Some(j) = Self::level_for(r) else {
            let nu = FracOrder::new(self.nu)?;
            return Ok(mainardi_m_contour(nu, r, 1e-12)?.scaled(0.5));
        };
        let level = self.level(j)?;
        let (head, mut err) = self.panel_sum(level, |k| (r * k).cos());
        let mut tail = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = 2 * (i as u32 + 1);
            let (cos_part, _) = power_trig_tail(n, r, self.split);
            tail += c * cos_part;
            err += 4.0 * f64::EPSILON * (c * cos_part).abs();
        }
        err = err / PI + self.tail_bound.0;
        Ok(EvalResult::new((head + tail) / PI, err))
    }

    /// `d/dr` of [`value`](Self::value): `-(1/π) ∫_0^∞ E_{2ν}(-κ²) κ sin(rκ) dκ`,
    /// and its right-hand limit `-1 / (2Γ(1-2ν))` at `r = 0`.
    pub fn derivative(&self, r: f64) -> Result<EvalResult> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::domain(format!(
                "similarity variable {r} must be finite and >= 0"
            )));
        }
        if r == 0.0 {
            // one-sided limit: G has a cusp at the origin for ν > 1/2
            let d = -0.5 * rgamma(1.0 - 2.0 * self.nu);
            return Ok(EvalResult::new(d, 4.0 * f64::EPSILON * d.abs()));
        }
        let Some(j) = Self::level_for(r) else {
            let nu = FracOrder::new(self.nu)?;
            return Ok(crate::wright::mainardi_m_prime_contour(nu, r, 1e-12)?.scaled(0.5));
        };
        let level = self.level(j)?;
        let (head, mut err) = self.panel_sum(level, |k| k * (r * k).sin());
        let mut tail = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let n = 2 * i as u32 + 1;
            let (_, sin_part) = power_trig_tail(n, r, self.split);
            tail += c * sin_part;
            err += 4.0 * f64::EPSILON * (c * sin_part).abs();
        }
        err = err / PI + self.tail_bound.1;
        Ok(EvalResult::new(-(head + tail) / PI, err))
    }
}

/// `G(r, 1; ν)` for `1/2 < ν < 1`, with `abs_err ≤ eps`.
pub fn green_similarity(nu: FracOrder, r: f64, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    let kernel = SimilarityKernel::shared(nu)?;
    let g = kernel.value(r)?;
    if g.abs_err > eps {
        return Err(Error::Quadrature {
            estimate: g.abs_err,
            tol: eps,
        });
    }
    Ok(g)
}

/// `∂G(r, 1; ν)/∂r` from the same cosine-transform route.
pub fn green_similarity_derivative(nu: FracOrder, r: f64, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    let kernel = SimilarityKernel::shared(nu)?;
    let d = kernel.derivative(r)?;
    if d.abs_err > eps {
        return Err(Error::Quadrature {
            estimate: d.abs_err,
            tol: eps,
        });
    }
    Ok(d)
}

fn gaussian(x: f64, t: f64) -> EvalResult {
    let v = (-x * x / (4.0 * t)).exp() / (2.0 * (PI * t).sqrt());
    EvalResult::new(v, 4.0 * f64::EPSILON * v)
}

/// `G(x, t; ν)`: Gaussian at `ν = 1/2`, scaled similarity profile inside.
pub fn green(q: GreenQuery, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    let nu = q.nu;
    if nu.is_diffusion() {
        return Ok(gaussian(q.x, q.t));
    }
    if nu.is_wave() {
        return Err(Error::domain("wave endpoint is analytic (delta)"));
    }
    let scale = q.t.powf(-nu.get());
    let g = green_similarity(nu, q.x * scale, eps / scale)?;
    Ok(g.scaled(scale))
}

/// Sampled profile `x ↦ G(x, t; ν)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenProfile {
    pub nu: FracOrder,
    pub t: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub accuracy: Vec<f64>,
}

/// Evaluates `G(·, t; ν)` on a strictly increasing, nonnegative grid.
///
/// Grid points are evaluated in parallel against one shared kernel; each
/// value depends on its own `x` only.
pub fn profile(nu: FracOrder, t: f64, grid: &[f64], eps: f64) -> Result<GreenProfile> {
    if grid.first().is_some_and(|&x| x.is_nan() || x < 0.0) {
        return Err(Error::domain("profile grid must be nonnegative"));
    }
    if grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::domain("profile grid must be strictly increasing"));
    }
    if !nu.is_diffusion() && !nu.is_wave() {
        SimilarityKernel::shared(nu)?;
    }
    let points = grid
        .par_iter()
        .map(|&x| green(GreenQuery::new(nu, x, t)?, eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenProfile {
        nu,
        t,
        grid: grid.to_vec(),
        values: points.iter().map(|p| p.value).collect(),
        accuracy: points.iter().map(|p| p.abs_err).collect(),
    })
}

/// Finite integration range `[0, A]` from the crude tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPlan {
    pub nu: FracOrder,
    pub t: f64,
    pub a: f64,
    pub eps: f64,
    pub panels: Vec<(f64, f64)>,
    pub tail_estimate: f64,
}

impl TruncationPlan {
    /// Re-panels `[0, A]` so no panel exceeds a half-period of `cos(x κ)`.
    pub fn for_x_max(mut self, x_max: f64) -> Self {
        if x_max > PI {
            let width = PI / x_max;
            let n = (self.a / width).ceil() as usize;
            let w = self.a / n as f64;
            self.panels = (0..n).map(|i| (i as f64 * w, (i + 1) as f64 * w)).collect();
        }
        self
    }
}

/// Chooses `A > 2 t^{-2ν} / (eps π |Γ(1-2ν)|)` and `A ≥ 10 t^{-ν}`.
pub fn plan_truncation(nu: FracOrder, t: f64, eps: f64) -> Result<TruncationPlan> {
    let v = require_interior(nu)?;
    check_eps(eps)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("t = {t} must be finite and > 0")));
    }
    let coef = 2.0 * t.powf(-2.0 * v) / (PI * gamma(1.0 - 2.0 * v).abs());
    let bound = coef / eps;
    let a = (bound * (1.0 + 1e-12)).max(10.0 * t.powf(-v));
    let n = a.ceil() as usize;
    let w = a / n as f64;
    let panels = (0..n).map(|i| (i as f64 * w, (i + 1) as f64 * w)).collect();
    Ok(TruncationPlan {
        nu,
        t,
        a,
        eps,
        panels,
        tail_estimate: coef / a,
    })
}

/// `(1/π) ∫_0^A E_{2ν}(-κ² t^{2ν}) cos(xκ) dκ` on the plan's panels; the
/// error adds the plan's tail estimate to the panel and kernel errors.
pub fn green_truncated(plan: &TruncationPlan, x: f64) -> Result<EvalResult> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain(format!("x = {x} must be finite and >= 0")));
    }
    let v = plan.nu.get();
    let ml = MlEvaluator::new(2.0 * v);
    let scale = plan.t.powf(2.0 * v);
    let coarse = GaussLegendre::new(COARSE_ORDER / 2);
    let fine = GaussLegendre::new(COARSE_ORDER);
    let mut value = 0.0;
    let mut err = 0.0;
    for &(lo, hi) in &plan.panels {
        let mut qf = 0.0;
        for (k, w) in fine.mapped(lo, hi) {
            let e = ml.eval(k * k * scale, KERNEL_TOL)?;
            qf += w * e.value * (x * k).cos();
            err += w * e.abs_err + 4.0 * f64::EPSILON * (w * e.value).abs();
        }
        let mut qc = 0.0;
        for (k, w) in coarse.mapped(lo, hi) {
            qc += w * ml.eval(k * k * scale, KERNEL_TOL)?.value * (x * k).cos();
        }
        value += qf;
        err += (qf - qc).abs();
    }
    Ok(EvalResult::new(value / PI, err / PI + plan.tail_estimate))
}
