//! Fundamental solution of the one-dimensional time-fractional
//! diffusion-wave equation `∂_t^{2ν} u = ∂_x² u`, `1/2 ≤ ν ≤ 1`, and the
//! motion of its maximum.
//!
//! The Green function is evaluated through its cosine-transform
//! representation
//!
//! ```text
//! G(x, t; ν) = (1/π) ∫_0^∞ E_{2ν}(-κ² t^{2ν}) cos(xκ) dκ
//! ```
//!
//! with the Mainardi-function series `G = t^{-ν} M_ν(x t^{-ν}) / 2` as an
//! independent second route. On top of that sit the maximum location
//! `x*(t) = c_ν t^ν`, the maximum value `G*(t) = m_ν t^{-ν}`, the speed of the
//! maximum and the time-invariant product `c_ν m_ν`.
//!
//! ```
//! use fracwave::{green, FracOrder, GreenQuery};
//!
//! let q = GreenQuery::new(FracOrder::DIFFUSION, 0.0, 1.0).unwrap();
//! let g = green(q, 1e-10).unwrap();
//! assert!((g.value - 0.5 / std::f64::consts::PI.sqrt()).abs() < 1e-12);
//! ```

pub mod error;
pub mod expint;
pub mod extremum;
pub mod gamma;
pub mod green;
pub mod mittag_leffler;
pub mod order;
pub mod quadrature;
pub mod wright;

pub use error::{Error, Result};
pub use extremum::{
    coefficient_sweep, coefficients, crossover_time, hyperbola_track, max_location,
    max_location_coeff, max_value, max_value_coeff, product_constant, propagation_speed,
    ExtremumCoeffs, ExtremumOptions,
};
pub use green::{
    green, green_similarity, green_similarity_derivative, green_truncated, plan_truncation,
    profile, GreenProfile, GreenQuery, SimilarityKernel, TruncationPlan,
};
pub use mittag_leffler::{ml, ml_asymptotic, ml_integral, ml_series, MlArg};
pub use order::{EvalResult, FracOrder};
pub use wright::{
    mainardi_f, mainardi_m, mainardi_m_contour, mainardi_m_prime, mainardi_m_prime_contour,
    mainardi_m_prime_series, mainardi_m_series, wright, WrightParams,
};
