//! Location and height of the maximum of `G(·, t; ν)`.
//!
//! By the similarity law the maximum sits at `x*(t) = c_ν t^ν` with height
//! `G*(t) = m_ν t^{-ν}`, where `c_ν` maximizes `G(·, 1; ν)` and
//! `m_ν = G(c_ν, 1; ν) = ½ M_ν(c_ν)`. Everything else (speed, product,
//! the hyperbola `x* G* = c_ν m_ν`) follows algebraically.
//!
//! `c_ν` is found by golden-section search on the integral-route profile,
//! then polished by bisection on the sign of its derivative.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::green::{green_similarity, green_similarity_derivative};
use crate::order::{EvalResult, FracOrder};

/// Orders above this (and below 1) are rejected by sweeps: the profile
/// approaches a delta and `m_ν` grows without bound.
pub const SWEEP_NU_MAX: f64 = 0.995;

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const SCAN_POINTS: usize = 41;
const MAX_ZOOMS: usize = 40;
const GOLDEN_WIDTH: f64 = 1e-5;
/// Below this order the profile is extremely flat near its maximum.
const FLAT_NU: f64 = 0.505;
const FLAT_EPS: f64 = 1e-12;

/// Accuracy settings for coefficient computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumOptions {
    /// Target error of `c_ν`.
    pub tol: f64,
    /// Accuracy of each profile evaluation.
    pub eps: f64,
    /// Initial search interval `[0, bracket]`; widened once to twice this.
    pub bracket: f64,
}

impl Default for ExtremumOptions {
    fn default() -> Self {
        ExtremumOptions {
            tol: 1e-8,
            eps: 1e-10,
            bracket: 2.0,
        }
    }
}

impl ExtremumOptions {
    fn eps_for(&self, nu: f64) -> f64 {
        if nu < FLAT_NU {
            self.eps.min(FLAT_EPS)
        } else {
            self.eps
        }
    }
}

/// `c_ν`, `m_ν` and the accuracy achieved for each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremumCoeffs {
    pub nu: FracOrder,
    pub c: f64,
    pub m: f64,
    pub c_tol: f64,
    pub m_tol: f64,
}

impl ExtremumCoeffs {
    /// Computes `c_ν` and `m_ν`. At `ν = 1` the profile is a delta at
    /// `x = t`: `c = 1` and `m = ∞`.
    pub fn compute(nu: FracOrder, opts: &ExtremumOptions) -> Result<Self> {
        check_opts(opts)?;
        if nu.is_diffusion() {
            let m = 0.5 / PI.sqrt();
            return Ok(ExtremumCoeffs {
                nu,
                c: 0.0,
                m,
                c_tol: 0.0,
                m_tol: 2.0 * f64::EPSILON * m,
            });
        }
        if nu.is_wave() {
            return Ok(ExtremumCoeffs {
                nu,
                c: 1.0,
                m: f64::INFINITY,
                c_tol: 0.0,
                m_tol: 0.0,
            });
        }
        let eps = opts.eps_for(nu.get());
        let (c, c_tol) = locate(nu, opts, eps)?;
        let g = green_similarity(nu, c, eps)?;
        let curvature = curvature(nu, c, c_tol, eps)?;
        let m_tol = g.abs_err + 0.5 * curvature.abs() * c_tol * c_tol;
        Ok(ExtremumCoeffs {
            nu,
            c,
            m: g.value,
            c_tol,
            m_tol,
        })
    }

    /// Three-point check `G(c ± δ) < G(c)` with `δ = 100 c_tol` (evenness
    /// of `G` is used when `c - δ < 0`).
    pub fn is_local_max(&self, eps: f64) -> Result<bool> {
        if self.nu.is_wave() {
            return Ok(true);
        }
        let delta = 100.0 * self.c_tol.max(f64::EPSILON);
        let at = |r: f64| profile_value(self.nu, r.abs(), eps);
        let mid = at(self.c)?;
        Ok(at(self.c - delta)? < mid && at(self.c + delta)? < mid)
    }
}

fn check_opts(opts: &ExtremumOptions) -> Result<()> {
    if !(opts.tol > 0.0 && opts.eps > 0.0 && opts.bracket > 0.0) {
        return Err(Error::domain(
            "extremum tolerances and bracket must be positive",
        ));
    }
    Ok(())
}

/// `G(r, 1; ν)` including the Gaussian endpoint.
fn profile_value(nu: FracOrder, r: f64, eps: f64) -> Result<f64> {
    if nu.is_diffusion() {
        return Ok((-r * r / 4.0).exp() * 0.5 / PI.sqrt());
    }
    Ok(green_similarity(nu, r, eps)?.value)
}

fn curvature(nu: FracOrder, c: f64, c_tol: f64, eps: f64) -> Result<f64> {
    let h = (1e3 * c_tol).max(1e-4).min(0.5 * c.max(1e-3));
    let g = |r: f64| green_similarity(nu, r.abs(), eps).map(|v| v.value);
    Ok((g(c + h)? - 2.0 * g(c)? + g(c - h)?) / (h * h))
}

/// Index of the largest sample of `G` on `n` equispaced points of `[0, hi]`.
fn scan(nu: FracOrder, hi: f64, eps: f64) -> Result<(usize, f64)> {
    let step = hi / (SCAN_POINTS - 1) as f64;
    let values = (0..SCAN_POINTS)
        .map(|i| green_similarity(nu, i as f64 * step, eps).map(|g| g.value))
        .collect::<Result<Vec<_>>>()?;
    let best = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("scan has points");
    Ok((best, step))
}

/// Bracket `[lo, hi]` around the maximizer with an interior sample above
/// both ends.
fn bracket(nu: FracOrder, opts: &ExtremumOptions, eps: f64) -> Result<(f64, f64)> {
    for hi in [opts.bracket, 2.0 * opts.bracket] {
        let (mut best, mut step) = scan(nu, hi, eps)?;
        if best == SCAN_POINTS - 1 {
            continue;
        }
        // maximizer closer to 0 than one step: zoom in
        let mut zooms = 0;
        while best == 0 {
            zooms += 1;
            if zooms > MAX_ZOOMS {
                return Err(Error::BracketFailure { lo: 0.0, hi: step });
            }
            (best, step) = scan(nu, step, eps)?;
        }
        return Ok(((best - 1) as f64 * step, (best + 1) as f64 * step));
    }
    Err(Error::BracketFailure {
        lo: 0.0,
        hi: 2.0 * opts.bracket,
    })
}

fn golden(nu: FracOrder, mut a: f64, mut b: f64, eps: f64) -> Result<(f64, f64)> {
    let f = |r: f64| green_similarity(nu, r, eps).map(|g| g.value);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > GOLDEN_WIDTH.min(0.5 * (a + b)) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok((a, b))
}

/// `c_ν` and its error bound for `1/2 < ν < 1`.
fn locate(nu: FracOrder, opts: &ExtremumOptions, eps: f64) -> Result<(f64, f64)> {
    let (lo, hi) = bracket(nu, opts, eps)?;
    let (ga, gb) = golden(nu, lo, hi, eps)?;
    let slope = |r: f64| green_similarity_derivative(nu, r, 1.0).map(|d| d.value);

    // widen the golden interval until the slope changes sign across it
    let (mut a, mut b) = (ga, gb);
    let width = gb - ga;
    let mut k = 1.0;
    while !(slope(a)? > 0.0 && slope(b)? < 0.0) {
        k *= 2.0;
        a = (ga - k * width).max(lo);
        b = (gb + k * width).min(hi);
        if a == lo && b == hi {
            // the slope is not resolvable; fall back to the golden bracket
            if !(slope(a)? > 0.0 && slope(b)? < 0.0) {
                return Ok((0.5 * (ga + gb), (0.5 * width).max(opts.tol)));
            }
            break;
        }
    }
    // bisect past `tol` while the slope sign is still resolvable, so that
    // sharp peaks near the wave end are located to rounding level
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let d = green_similarity_derivative(nu, mid, 1.0)?;
        if d.value.abs() <= d.abs_err {
            if b - a <= opts.tol {
                return Ok((mid, opts.tol));
            }
            // the sign is lost inside a wide bracket; keep the conservative midpoint
            return Ok((mid, opts.tol.max(0.5 * (b - a))));
        }
        if d.value > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((0.5 * (a + b), opts.tol.max(0.5 * (b - a))))
}

/// `c_ν` with its error bound as `abs_err`.
pub fn max_location_coeff(nu: FracOrder, tol: f64) -> Result<EvalResult> {
    let opts = ExtremumOptions {
        tol,
        ..ExtremumOptions::default()
    };
    check_opts(&opts)?;
    if nu.is_diffusion() {
        return Ok(EvalResult::exact(0.0));
    }
    if nu.is_wave() {
        return Ok(EvalResult::exact(1.0));
    }
    let (c, c_tol) = locate(nu, &opts, opts.eps_for(nu.get()))?;
    Ok(EvalResult::new(c, c_tol))
}

/// `m_ν = G(c, 1; ν)` for a previously computed `c = c_ν`, `1/2 ≤ ν < 1`.
pub fn max_value_coeff(nu: FracOrder, c: f64, tol: f64) -> Result<EvalResult> {
    if nu.is_wave() {
        return Err(Error::domain("m_nu is unbounded at the wave endpoint"));
    }
    if nu.is_diffusion() {
        let v = profile_value(nu, c, tol)?;
        return Ok(EvalResult::new(v, 2.0 * f64::EPSILON * v));
    }
    green_similarity(nu, c, tol)
}

/// `c_ν` and `m_ν` (convenience for [`ExtremumCoeffs::compute`]).
pub fn coefficients(nu: FracOrder, opts: &ExtremumOptions) -> Result<ExtremumCoeffs> {
    ExtremumCoeffs::compute(nu, opts)
}

/// Coefficients on a grid of orders, computed in parallel, in grid order.
pub fn coefficient_sweep(nus: &[FracOrder], opts: &ExtremumOptions) -> Result<Vec<ExtremumCoeffs>> {
    if let Some(nu) = nus.iter().find(|n| n.get() > SWEEP_NU_MAX && !n.is_wave()) {
        return Err(Error::domain(format!(
            "nu = {nu} is above the sweep cap {SWEEP_NU_MAX} (m_nu blows up toward the wave endpoint)"
        )));
    }
    nus.par_iter()
        .map(|&nu| ExtremumCoeffs::compute(nu, opts))
        .collect()
}

/// `x*(t) = c_ν t^ν`.
pub fn max_location(k: &ExtremumCoeffs, t: f64) -> f64 {
    k.c * t.powf(k.nu.get())
}

/// `G*(t) = m_ν t^{-ν}`.
pub fn max_value(k: &ExtremumCoeffs, t: f64) -> f64 {
    k.m * t.powf(-k.nu.get())
}

/// `v(t) = dx*/dt = ν c_ν t^{ν-1}`.
pub fn propagation_speed(k: &ExtremumCoeffs, t: f64) -> f64 {
    let nu = k.nu.get();
    if k.c == 0.0 {
        return 0.0;
    }
    nu * k.c * t.powf(nu - 1.0)
}

/// `c_ν m_ν = x*(t) G*(t)`, independent of `t`.
pub fn product_constant(k: &ExtremumCoeffs) -> f64 {
    if k.c == 0.0 {
        return 0.0;
    }
    k.c * k.m
}

/// Points `(x*(t), G*(t))` of the hyperbola `x G = c_ν m_ν`.
pub fn hyperbola_track(k: &ExtremumCoeffs, t_grid: &[f64]) -> Vec<(f64, f64)> {
    t_grid
        .iter()
        .map(|&t| (max_location(k, t), max_value(k, t)))
        .collect()
}

/// Time before which the maximum of order `a` moves faster than that of
/// order `b`: the root of `v_a(t) = v_b(t)`,
/// `t = (ν_a c_a / (ν_b c_b))^{1/(ν_b - ν_a)}`.
pub fn crossover_time(a: &ExtremumCoeffs, b: &ExtremumCoeffs) -> Result<f64> {
    let (na, nb) = (a.nu.get(), b.nu.get());
    if na == nb {
        return Err(Error::domain("crossover needs two different orders"));
    }
    if !(a.c > 0.0 && b.c > 0.0) {
        return Err(Error::domain("crossover needs moving maxima (c > 0)"));
    }
    // log form keeps the tiny result representable
    let ln_t = ((na * a.c).ln() - (nb * b.c).ln()) / (nb - na);
    Ok(ln_t.exp())
}
