//! Extended-precision reference values computed by brute-force summation.

#![allow(dead_code)]

use rug::Float;

pub const PREC: u32 = 512;

/// `1/Γ(z)` in extended precision, exactly zero at the poles.
pub fn rgamma_mp(z: &Float) -> Float {
    if *z <= 0 && z.is_integer() {
        return Float::new(PREC);
    }
    Float::with_val(PREC, 1) / Float::with_val(PREC, z.gamma_ref())
}

/// `Σ_{n<terms} (-x)^n / Γ(αn+1)`.
pub fn ml_series_mp(alpha: f64, x: f64, terms: u32) -> f64 {
    let alpha = Float::with_val(PREC, alpha);
    let mut sum = Float::new(PREC);
    let mut pow = Float::with_val(PREC, 1);
    for n in 0..terms {
        if n > 0 {
            pow *= -x;
        }
        let z = Float::with_val(PREC, &alpha * n) + 1u32;
        sum += Float::with_val(PREC, &pow * rgamma_mp(&z));
    }
    sum.to_f64()
}

/// `Σ_{n<terms} (-r)^n / (n! Γ(λn+μ))`, with `λn+μ` formed exactly from the
/// given doubles.
pub fn wright_mp(lambda: f64, mu: f64, r: f64, terms: u32) -> f64 {
    let lambda = Float::with_val(PREC, lambda);
    let mu = Float::with_val(PREC, mu);
    let mut sum = Float::new(PREC);
    let mut pow = Float::with_val(PREC, 1);
    for n in 0..terms {
        if n > 0 {
            pow *= -r;
            pow /= n;
        }
        let z = Float::with_val(PREC, &lambda * n) + &mu;
        sum += Float::with_val(PREC, &pow * rgamma_mp(&z));
    }
    sum.to_f64()
}

/// `M_ν(r) = W_{-ν,1-ν}(-r)`.
pub fn mainardi_m_mp(nu: f64, r: f64, terms: u32) -> f64 {
    let nu_mp = Float::with_val(PREC, nu);
    let one_minus = Float::with_val(PREC, 1 - &nu_mp);
    wright_general_mp(&(-nu_mp), &one_minus, r, terms)
}

/// `M_ν'(r) = -W_{-ν,1-2ν}(-r)`.
pub fn mainardi_m_prime_mp(nu: f64, r: f64, terms: u32) -> f64 {
    let nu_mp = Float::with_val(PREC, nu);
    let mu = Float::with_val(PREC, 1 - Float::with_val(PREC, 2 * &nu_mp));
    -wright_general_mp(&(-nu_mp), &mu, r, terms)
}

fn wright_general_mp(lambda: &Float, mu: &Float, r: f64, terms: u32) -> f64 {
    let mut sum = Float::new(PREC);
    let mut pow = Float::with_val(PREC, 1);
    for n in 0..terms {
        if n > 0 {
            pow *= -r;
            pow /= n;
        }
        let z = Float::with_val(PREC, lambda * n) + mu;
        sum += Float::with_val(PREC, &pow * rgamma_mp(&z));
    }
    sum.to_f64()
}

pub fn gamma_mp(z: f64) -> f64 {
    Float::with_val(PREC, z).gamma().to_f64()
}

/// `G(x, t; 1/2)`.
pub fn gaussian(x: f64, t: f64) -> f64 {
    (-x * x / (4.0 * t)).exp() / (2.0 * (std::f64::consts::PI * t).sqrt())
}
