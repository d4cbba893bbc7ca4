//! The Riemann–Siegel theta function through the complex log-Gamma.

use num_complex::Complex64;
use std::f64::consts::{E, PI};

use crate::error::{Result, ZlabError};

const LN_PI: f64 = 1.144_729_885_849_400_2;
const INV_PI_E: f64 = 1.0 / (PI * E);

// B_2, B_4, ..., B_20
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

// Stirling's series is used once |w| >= 10; smaller arguments are shifted up
// with the recurrence Γ(w+1) = wΓ(w).
const STIRLING_MIN_MOD_SQ: f64 = 100.0;

/// ϑ(t) = Im lnΓ(1/4 + it/2) − (t/2) ln π, with lnΓ on its continuous branch.
pub fn theta(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(ZlabError::domain(format!("theta: non-finite input {t}")));
    }
    if t < 0.0 {
        return Err(ZlabError::domain(format!("theta: negative height {t}")));
    }
    Ok(theta_unchecked(t))
}

pub(crate) fn theta_unchecked(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let y = 0.5 * t;
    let mut x = 0.25;
    let mut shift = 0.0;
    while x * x + y * y < STIRLING_MIN_MOD_SQ {
        shift += y.atan2(x);
        x += 1.0;
    }
    // Im[(w - 1/2) ln w - w] - y ln π, split so the large part is one product
    let main = if y >= x {
        y * (y * INV_PI_E).ln() + 0.5 * y * (x / y).powi(2).ln_1p()
    } else {
        y * (0.5 * (x * x + y * y).ln() - 1.0 - LN_PI)
    };
    let arg_term = (x - 0.5) * y.atan2(x);

    let w = Complex64::new(x, y);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        series += b / (k2 * (k2 - 1.0)) * pow.im;
        pow *= inv2;
    }
    main + arg_term + series - shift
}

/// dϑ/dt = ½ Re ψ(1/4 + it/2) − ½ ln π. Only defined here for t > 2π, where
/// the derivative is positive and Newton steps on ϑ are safe.
pub fn theta_deriv(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(ZlabError::domain(format!("theta_deriv: non-finite input {t}")));
    }
    if t <= std::f64::consts::TAU {
        return Err(ZlabError::domain(format!(
            "theta_deriv: t = {t} must exceed 2π; bracket instead"
        )));
    }
    Ok(theta_deriv_unchecked(t))
}

pub(crate) fn theta_deriv_unchecked(t: f64) -> f64 {
    let y = 0.5 * t;
    let mut x = 0.25;
    let mut shift = 0.0;
    while x * x + y * y < STIRLING_MIN_MOD_SQ {
        shift += x / (x * x + y * y);
        x += 1.0;
    }
    let w = Complex64::new(x, y);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv2;
    let mut psi = w.ln() - 0.5 * inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        psi -= pow * (b / k2);
        pow *= inv2;
    }
    0.5 * (psi.re - shift) - 0.5 * LN_PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asymptotic(t: f64) -> f64 {
        0.5 * t * (t / std::f64::consts::TAU).ln() - 0.5 * t - PI / 8.0
    }

    #[test]
    fn theta_at_zero_is_zero() {
        assert_eq!(theta(0.0).unwrap(), 0.0);
    }

    #[test]
    fn theta_matches_reference_value() {
        // mpmath siegeltheta(100)
        assert!((theta(100.0).unwrap() - 87.972_165_231_787_22).abs() < 1e-12);
    }

    #[test]
    fn theta_at_first_gram_point_is_pi() {
        assert!((theta(23.170283).unwrap() - PI).abs() < 1e-5);
    }

    #[test]
    fn theta_close_to_asymptotic_main_term() {
        let t = 100.0;
        let gap = (theta(t).unwrap() - asymptotic(t)).abs();
        assert!(gap <= 1.0 / (40.0 * t), "gap {gap}");
        // the leading correction is 1/(48t)
        assert!((gap - 1.0 / (48.0 * t)).abs() < 1e-7);
    }

    #[test]
    fn shifted_and_direct_stirling_agree_at_the_switch() {
        // |1/4 + it/2| = 10 near t = 19.99; evaluate on both sides
        let a = theta_unchecked(19.9937);
        let b = theta_unchecked(19.9938);
        let slope = theta_deriv_unchecked(19.99375);
        assert!(((b - a) / 1e-4 - slope).abs() < 1e-6);
    }

    #[test]
    fn theta_rejects_bad_input() {
        assert!(theta(-1.0).is_err());
        assert!(theta(f64::INFINITY).is_err());
        assert!(theta(f64::NAN).is_err());
    }

    #[test]
    fn derivative_examples() {
        let t0 = std::f64::consts::TAU * E;
        assert!((theta_deriv(t0).unwrap() - 0.5).abs() < 2e-3);
        assert!((theta_deriv(100.0).unwrap() - 0.5 * (100.0 / std::f64::consts::TAU).ln()).abs() < 1e-3);
        // mpmath diff(siegeltheta, 100)
        assert!((theta_deriv(100.0).unwrap() - 1.383_644_476_419_579_4).abs() < 1e-12);
        assert!(theta_deriv(6.0).is_err());
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-4;
        for t in [50.0, 500.0, 5000.0] {
            let fd = (theta(t + h).unwrap() - theta(t - h).unwrap()) / (2.0 * h);
            assert!((theta_deriv(t).unwrap() - fd).abs() <= 1e-6, "t = {t}");
        }
    }
}
