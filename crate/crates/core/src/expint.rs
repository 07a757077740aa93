//! Generalised exponential integrals `E_n(z)` on the imaginary axis, used to
//! integrate `κ^{-n} cos(rκ)` over `[A, ∞)` in closed form.

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch from the power series to the continued fraction at this `|z|`.
const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

/// `E_n(z) = ∫_1^∞ e^{-zt} t^{-n} dt` for `n ≥ 1`, `Re z ≥ 0`, `z ≠ 0` when `n = 1`.
pub fn expint_en(n: u32, z: Complex64) -> Complex64 {
    assert!(n >= 1, "E_n needs n >= 1");
    if z == Complex64::new(0.0, 0.0) {
        assert!(n >= 2, "E_1 diverges at 0");
        return Complex64::new(1.0 / (n as f64 - 1.0), 0.0);
    }
    if z.norm() <= SERIES_LIMIT {
        series(n, z)
    } else {
        continued_fraction(n, z)
    }
}

fn digamma_int(n: u32) -> f64 {
    -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
}

/// `E_n(z) = (-z)^{n-1}/(n-1)! (ψ(n) - ln z) - Σ_{k≠n-1} (-z)^k / ((k-n+1) k!)`
fn series(n: u32, z: Complex64) -> Complex64 {
    let nm1 = n as i64 - 1;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow_over_fact = Complex64::new(1.0, 0.0); // (-z)^k / k!
    let mut special = Complex64::new(0.0, 0.0);
    for k in 0..200i64 {
        if k > 0 {
            pow_over_fact *= -z / k as f64;
        }
        if k == nm1 {
            special = pow_over_fact * (digamma_int(n) - z.ln());
            continue;
        }
        let term = pow_over_fact / (k - nm1) as f64;
        sum -= term;
        if k > nm1 && term.norm() <= 1e-18 * sum.norm().max(1e-300) {
            break;
        }
    }
    sum + special
}

/// Modified Lentz evaluation of the continued fraction
/// `E_n(z) = e^{-z} / (z + n - 1·n/(z + n + 2 - 2(n+1)/(z + n + 4 - …)))`.
fn continued_fraction(n: u32, z: Complex64) -> Complex64 {
    let tiny = 1e-300;
    let nf = n as f64;
    let mut b = z + nf;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let a = -(i as f64) * (nf - 1.0 + i as f64);
        b += 2.0;
        d = (a * d + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() <= 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

/// `(∫_A^∞ κ^{-n} cos(rκ) dκ, ∫_A^∞ κ^{-n} sin(rκ) dκ)` for `A > 0`, `r ≥ 0`.
///
/// `n = 1` is allowed only for `r > 0` (the cosine part diverges at `r = 0`).
pub fn power_trig_tail(n: u32, r: f64, a: f64) -> (f64, f64) {
    assert!(a > 0.0 && r >= 0.0);
    let scale = a.powi(1 - n as i32);
    let e = expint_en(n, Complex64::new(0.0, -r * a));
    (scale * e.re, scale * e.im)
}

/// Sine and cosine integrals `(Si(x), Ci(x))` for `x > 0`.
pub fn sici(x: f64) -> (f64, f64) {
    assert!(x > 0.0);
    // E_1(-ix) = -Ci(x) + i (π/2 - Si(x))
    let e = expint_en(1, Complex64::new(0.0, -x));
    (std::f64::consts::FRAC_PI_2 - e.im, -e.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sine_cosine_integrals() {
        // reference values (A&S table 5.1)
        let (si, ci) = sici(1.0);
        assert_abs_diff_eq!(si, 0.946_083_070_367_183, epsilon = 1e-15);
        assert_abs_diff_eq!(ci, 0.337_403_922_900_968_1, epsilon = 1e-15);
        let (si, ci) = sici(10.0);
        assert_abs_diff_eq!(si, 1.658_347_594_218_874, epsilon = 1e-14);
        assert_abs_diff_eq!(ci, -0.045_456_433_004_455_37, epsilon = 1e-14);
        // both sides of the series / continued-fraction switch
        let (s1, c1) = sici(1.999_999_999);
        let (s2, c2) = sici(2.000_000_001);
        assert_abs_diff_eq!(s1, s2, epsilon = 1e-8);
        assert_abs_diff_eq!(c1, c2, epsilon = 1e-8);
    }

    #[test]
    fn zero_frequency_tail() {
        let (c, s) = power_trig_tail(3, 0.0, 2.0);
        assert_abs_diff_eq!(c, 0.125, epsilon = 1e-16);
        assert_eq!(s, 0.0);
    }

    /// Direct panel quadrature of the tail out to a far cutoff, with the
    /// remaining piece bounded by integration by parts.
    fn brute_tail(n: u32, r: f64, a: f64) -> (f64, f64) {
        let gl = GaussLegendre::new(20);
        let width = (std::f64::consts::PI / r).min(1.0);
        let end = a + 200_000.0 * width;
        let (mut c, mut s) = (0.0, 0.0);
        let mut lo = a;
        while lo < end {
            let hi = lo + width;
            for (k, w) in gl.mapped(lo, hi) {
                let p = k.powi(-(n as i32));
                c += w * p * (r * k).cos();
                s += w * p * (r * k).sin();
            }
            lo = hi;
        }
        // first two boundary terms of the remainder
        let p = end.powi(-(n as i32));
        let q = n as f64 * p / (end * r * r);
        let (se, ce) = (r * end).sin_cos();
        (c - p * se / r + q * ce, s + p * ce / r + q * se)
    }

    #[test]
    fn tails_match_brute_force() {
        for &(n, r, a) in &[
            (2, 1.0, 10.0),
            (2, 0.05, 3.0),
            (4, 2.5, 7.0),
            (6, 0.7, 1.5),
            (1, 1.3, 4.0),
        ] {
            let (c, s) = power_trig_tail(n, r, a);
            let (bc, bs) = brute_tail(n, r, a);
            assert_abs_diff_eq!(c, bc, epsilon = 1e-11);
            assert_abs_diff_eq!(s, bs, epsilon = 1e-11);
        }
    }
}
