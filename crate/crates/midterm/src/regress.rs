//! Ordinary least squares for the simple linear model y = a + b·x: fitting,
//! goodness of fit, and point prediction.

use crate::error::{Error, Result};
use crate::specfun::DegreesOfFreedom;

/// A fitted line with its goodness-of-fit and the sample quantities later
/// needed for inference.
///
/// `r2` is the coefficient of determination (1 − SSE/SST) and `r` the Pearson
/// correlation; the two satisfy r² = r·r with sign(r) = sign(b).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    /// Intercept, in seats.
    pub a: f64,
    /// Slope, in seats per approval point.
    pub b: f64,
    /// Coefficient of determination in [0, 1]; 0 by convention when the
    /// response is constant.
    pub r2: f64,
    /// Pearson correlation in [−1, 1].
    pub r: f64,
    /// Residual standard error √(SSE/(n−2)), in seats; 0 for a perfect fit.
    pub s: f64,
    /// Number of observations.
    pub n: usize,
    /// Residual degrees of freedom, n − 2.
    pub df: DegreesOfFreedom,
    pub x_mean: f64,
    pub y_mean: f64,
    /// Centered sum of squares Σ(x − x̄)², strictly positive.
    pub sxx: f64,
    /// Standard error of the slope, s/√sxx; 0 only in the degenerate s = 0
    /// cases, which the slope test rejects.
    pub se_b: f64,
    /// Smallest x in the fitted sample (extrapolation guard).
    pub x_min: f64,
    /// Largest x in the fitted sample (extrapolation guard).
    pub x_max: f64,
}

/// Least-squares fit of y = a + b·x.
///
/// Accumulates in two passes — means first, then sums of centered products —
/// for numerical stability. Needs n ≥ 3 (so the residual error is defined)
/// and at least two distinct x values. A constant response fits with b = 0
/// and, by convention, r² = 0 and s = 0 instead of an undefined ratio.
pub fn fit_ols(pairs: &[(f64, f64)]) -> Result<LinearFit> {
    let n = pairs.len();
    if n < 3 {
        return Err(Error::InsufficientData(n));
    }

    let nf = n as f64;
    let x_mean = pairs.iter().map(|(x, _)| x).sum::<f64>() / nf;
    let y_mean = pairs.iter().map(|(_, y)| y).sum::<f64>() / nf;

    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut sst = 0.0;
    for &(x, y) in pairs {
        let dx = x - x_mean;
        let dy = y - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        sst += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateDesign);
    }

    let b = sxy / sxx;
    let a = y_mean - b * x_mean;

    // Residual sum of squares from the residuals themselves, which cannot go
    // negative the way the SST − b·Sxy shortcut can under rounding.
    let sse: f64 = pairs
        .iter()
        .map(|&(x, y)| {
            let resid = y - (a + b * x);
            resid * resid
        })
        .sum();

    let df = DegreesOfFreedom::new((n - 2) as u32).expect("n >= 3 gives df >= 1");
    let s = (sse / (nf - 2.0)).sqrt();
    let r2 = if sst == 0.0 {
        0.0
    } else {
        (1.0 - sse / sst).clamp(0.0, 1.0)
    };
    let r = b.signum() * r2.sqrt();

    let x_min = pairs.iter().map(|(x, _)| *x).fold(f64::INFINITY, f64::min);
    let x_max = pairs
        .iter()
        .map(|(x, _)| *x)
        .fold(f64::NEG_INFINITY, f64::max);

    Ok(LinearFit {
        a,
        b,
        r2,
        r,
        s,
        n,
        df,
        x_mean,
        y_mean,
        sxx,
        se_b: s / sxx.sqrt(),
        x_min,
        x_max,
    })
}

/// The fitted response a + b·x0 at a query point.
pub fn predict_point(fit: &LinearFit, x0: f64) -> f64 {
    fit.a + fit.b * x0
}
