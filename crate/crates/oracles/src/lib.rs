//! Independent reference computations for the midterm test suites.
//!
//! Everything in this crate deliberately avoids the code paths used by the
//! `midterm` library so the two can be checked against each other:
//!
//! * [`adaptive_simpson`] — quadrature for smooth integrands,
//! * [`normal_cdf`] — standard normal CDF from the erf Taylor series,
//! * [`exact`] — OLS via uncentered normal equations in exact rational
//!   arithmetic,
//! * [`tdist`] — Student-t CDF/quantile by quadrature of the density, with
//!   the normalizing constant built from exact half-integer gamma ratios.

pub mod exact;
pub mod tdist;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Uses the usual Richardson estimate `|S2 - S1| / 15` to decide refinement.
/// The integrand must be smooth on the closed interval.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
    }

    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 60)
}

/// erf(x) from its Taylor series; accurate to ~1e-13 for |x| <= 3.
pub fn erf_series(x: f64) -> f64 {
    let two_over_sqrt_pi = 2.0 / std::f64::consts::PI.sqrt();
    let x2 = x * x;
    let mut term = x; // x^(2k+1) / k!
    let mut sum = x;
    for k in 1..200 {
        term *= x2 / k as f64;
        let contrib = term / (2 * k + 1) as f64;
        let signed = if k % 2 == 0 { contrib } else { -contrib };
        sum += signed;
        if contrib.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    two_over_sqrt_pi * sum
}

/// Standard normal CDF via [`erf_series`].
pub fn normal_cdf(x: f64) -> f64 {
    0.5 + 0.5 * erf_series(x / std::f64::consts::SQRT_2)
}
