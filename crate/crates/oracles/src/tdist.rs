//! Student-t CDF and quantile by direct quadrature of the density.
//!
//! The normalizing constant Γ((ν+1)/2) / Γ(ν/2) is built from the exact
//! recurrence for half-integer gamma ratios, so no gamma-function
//! approximation is involved anywhere in this path.

use crate::adaptive_simpson;

/// Γ((df+1)/2) / Γ(df/2) for integer df >= 1, via the exact step
/// `R(df+2) = R(df) · (df+1)/df` from Γ(z+1) = z Γ(z).
pub fn half_integer_gamma_ratio(df: u32) -> f64 {
    assert!(df >= 1);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let (mut ratio, mut k) = if df % 2 == 1 {
        (1.0 / sqrt_pi, 1) // Γ(1)/Γ(1/2)
    } else {
        (sqrt_pi / 2.0, 2) // Γ(3/2)/Γ(1)
    };
    while k < df {
        ratio *= (k + 1) as f64 / k as f64;
        k += 2;
    }
    ratio
}

fn density(u: f64, df: u32) -> f64 {
    let nu = df as f64;
    (1.0 + u * u / nu).powf(-(nu + 1.0) / 2.0)
}

/// CDF of the t distribution with `df` degrees of freedom, as
/// `1/2 + C ∫₀ᵗ (1 + u²/ν)^{-(ν+1)/2} du` evaluated by adaptive Simpson.
pub fn t_cdf_quadrature(t: f64, df: u32) -> f64 {
    if t < 0.0 {
        return 1.0 - t_cdf_quadrature(-t, df);
    }
    let c = half_integer_gamma_ratio(df) / (df as f64 * std::f64::consts::PI).sqrt();
    0.5 + c * adaptive_simpson(&|u| density(u, df), 0.0, t, 1e-12)
}

/// Inverse of [`t_cdf_quadrature`] by bisection; |cdf(result) - p| <= ~1e-12.
pub fn t_quantile_quadrature(p: f64, df: u32) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    let (mut lo, mut hi) = (-60.0, 60.0);
    while t_cdf_quadrature(hi, df) < p {
        hi *= 2.0;
    }
    while t_cdf_quadrature(lo, df) > p {
        lo *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_cdf_quadrature(mid, df) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_ratio_base_cases() {
        let sqrt_pi = PI.sqrt();
        assert!((half_integer_gamma_ratio(1) - 1.0 / sqrt_pi).abs() < 1e-15);
        assert!((half_integer_gamma_ratio(2) - sqrt_pi / 2.0).abs() < 1e-15);
        // Γ(2)/Γ(3/2) and Γ(5/2)/Γ(2)
        assert!((half_integer_gamma_ratio(3) - 2.0 / sqrt_pi).abs() < 1e-15);
        assert!((half_integer_gamma_ratio(4) - 0.75 * sqrt_pi).abs() < 1e-14);
    }

    #[test]
    fn cauchy_closed_form() {
        // df = 1 is Cauchy: F(t) = 1/2 + atan(t)/π.
        for t in [-3.0f64, -1.0, 0.0, 0.5, 1.0, 4.0, 8.0] {
            let expect = 0.5 + t.atan() / PI;
            assert!((t_cdf_quadrature(t, 1) - expect).abs() < 1e-11, "t={t}");
        }
    }

    #[test]
    fn df2_closed_form() {
        // F(t; 2) = 1/2 + t / (2 √(2 + t²)).
        for t in [-2.0f64, -0.3, 0.0, 1.0, 5.0] {
            let expect = 0.5 + t / (2.0 * (2.0 + t * t).sqrt());
            assert!((t_cdf_quadrature(t, 2) - expect).abs() < 1e-11, "t={t}");
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        let q = t_quantile_quadrature(0.75, 1);
        assert!((q - 1.0).abs() < 1e-9); // atan(1) = π/4
        let p = t_cdf_quadrature(2.0, 9);
        assert!((t_quantile_quadrature(p, 9) - 2.0).abs() < 1e-9);
    }
}
