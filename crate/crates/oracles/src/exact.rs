//! Simple linear regression by uncentered normal equations in exact rational
//! arithmetic.
//!
//! Every `f64` is a dyadic rational, so converting inputs through
//! [`BigRational::from_float`] is lossless and all sums below are exact. Only
//! the final conversions back to `f64` (and the square root for `s`) round.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Exact-arithmetic fit of `y = a + b x`.
#[derive(Debug, Clone)]
pub struct ExactFit {
    pub a: f64,
    pub b: f64,
    /// `None` when the response is constant (SST = 0).
    pub r2: Option<f64>,
    /// Residual standard error, sqrt(SSE / (n - 2)).
    pub s: f64,
    pub sse: f64,
    pub sst: f64,
}

fn rat(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite input")
}

/// Fits by solving the normal equations
/// `b = (n Σxy − Σx Σy) / (n Σx² − (Σx)²)`, `a = (Σy − b Σx) / n`
/// without any centering, then evaluates SSE term by term.
///
/// Returns `None` if `n < 3` or all x values coincide.
pub fn fit_exact(xs: &[f64], ys: &[f64]) -> Option<ExactFit> {
    let n = xs.len();
    if n < 3 || n != ys.len() {
        return None;
    }
    let nr = BigRational::from_integer(BigInt::from(n));
    let mut sx = BigRational::zero();
    let mut sy = BigRational::zero();
    let mut sxx = BigRational::zero();
    let mut sxy = BigRational::zero();
    let mut syy = BigRational::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let (xr, yr) = (rat(x), rat(y));
        sx += &xr;
        sy += &yr;
        sxx += &xr * &xr;
        sxy += &xr * &yr;
        syy += &yr * &yr;
    }
    let denom = &nr * &sxx - &sx * &sx;
    if denom.is_zero() {
        return None;
    }
    let b = (&nr * &sxy - &sx * &sy) / &denom;
    let a = (&sy - &b * &sx) / &nr;

    let mut sse = BigRational::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let resid = rat(y) - &a - &b * rat(x);
        sse += &resid * &resid;
    }
    let sst = &syy - &sy * &sy / &nr;

    let sse_f = sse.to_f64().expect("sse fits in f64");
    let sst_f = sst.to_f64().expect("sst fits in f64");
    let r2 = if sst.is_zero() {
        None
    } else {
        (BigRational::from_integer(BigInt::from(1)) - &sse / &sst).to_f64()
    };
    Some(ExactFit {
        a: a.to_f64().expect("a fits in f64"),
        b: b.to_f64().expect("b fits in f64"),
        r2,
        s: (sse_f / (n - 2) as f64).sqrt(),
        sse: sse_f,
        sst: sst_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let fit = fit_exact(&xs, &ys).unwrap();
        assert_eq!(fit.a, 1.0);
        assert_eq!(fit.b, 2.0);
        assert_eq!(fit.sse, 0.0);
        assert_eq!(fit.r2, Some(1.0));
    }

    #[test]
    fn five_point_hand_check() {
        // Worked by hand: x = 0..4, y = (1,3,2,5,4) gives a = 1.4, b = 0.8,
        // SSE = 3.6, s = sqrt(1.2).
        let fit = fit_exact(&[0.0, 1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 5.0, 4.0]).unwrap();
        assert!((fit.a - 1.4).abs() < 1e-15);
        assert!((fit.b - 0.8).abs() < 1e-15);
        assert!((fit.sse - 3.6).abs() < 1e-15);
        assert!((fit.s - 1.2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_design_rejected() {
        assert!(fit_exact(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]).is_none());
        assert!(fit_exact(&[1.0, 2.0], &[1.0, 2.0]).is_none());
    }
}
