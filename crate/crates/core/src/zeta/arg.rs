//! S(t) = arg ζ(1/2 + it) / π by continuous variation along 2 → 2+it → 1/2+it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::euler_maclaurin::zeta;
use super::theta::theta_unchecked;
use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};

/// S(t) together with the zero count it implies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgTrace {
    pub t: f64,
    pub s_value: f64,
    pub zero_count: u64,
    /// Distance of ϑ(t)/π + 1 + S(t) from the nearest integer.
    pub branch_residual: f64,
}

const MIN_SIGMA_STEP: f64 = 1e-13;
const MAX_STEP_ARG: f64 = PI / 4.0;

/// Principal-branch phase of b relative to a.
#[inline]
fn phase(a: Complex64, b: Complex64) -> f64 {
    (b * a.conj()).arg()
}

/// Total change of arg ζ(σ + it) as σ runs from 2 down to 1/2.
fn horizontal_arg_change(cfg: &PrecisionConfig, t: f64) -> Result<f64> {
    let eval = |sigma: f64| zeta(cfg, Complex64::new(sigma, t));
    let scale = if t > 2.0 * PI * std::f64::consts::E { 1.0 / (t / (2.0 * PI)).ln() } else { 1.0 };
    let mut step = cfg.quad_step_cap.min(scale);
    let mut sigma = 2.0;
    let mut z = eval(sigma)?;
    let mut total = 0.0;
    while sigma > 0.5 {
        let next = (sigma - step).max(0.5);
        let h = sigma - next;
        let z_mid = eval(sigma - 0.5 * h)?;
        let z_next = eval(next)?;
        let whole = phase(z, z_next);
        let halves = phase(z, z_mid) + phase(z_mid, z_next);
        if whole.abs() <= MAX_STEP_ARG && (whole - halves).abs() <= 1e-9 {
            total += halves;
            sigma = next;
            z = z_next;
            step = (1.5 * step).min(cfg.quad_step_cap);
        } else {
            step = 0.5 * h;
            if step < MIN_SIGMA_STEP {
                return Err(ZlabError::Tracking {
                    t,
                    reason: format!("argument step rejected at sigma = {sigma}"),
                });
            }
        }
    }
    Ok(total)
}

/// S(t) with the continuous-branch convention starting from arg ζ(2) = 0.
///
/// On σ = 2 the real part of ζ stays above 2 − ζ(2) > 0, so the principal
/// argument of ζ(2 + it) is already the continuous one. At t = 0 the limit
/// from above, S(0⁺) = −1, is returned: the horizontal leg passes over the
/// pole at s = 1, where the argument drops by π.
pub fn s_of_t(cfg: &PrecisionConfig, t: f64) -> Result<ArgTrace> {
    let t = Height::new(t)?.get();
    if t == 0.0 {
        return Ok(ArgTrace { t, s_value: -1.0, zero_count: 0, branch_residual: 0.0 });
    }
    let on_line = zeta(cfg, Complex64::new(0.5, t))?;
    if on_line.norm() <= 100.0 * cfg.abs_tol {
        return Err(ZlabError::AmbiguousBranch { t });
    }
    let vertical = zeta(cfg, Complex64::new(2.0, t))?.arg();
    let s_value = (vertical + horizontal_arg_change(cfg, t)?) / PI;
    let count = theta_unchecked(t) / PI + 1.0 + s_value;
    let nearest = count.round();
    if nearest < 0.0 {
        return Err(ZlabError::Tracking { t, reason: format!("negative zero count {count}") });
    }
    Ok(ArgTrace { t, s_value, zero_count: nearest as u64, branch_residual: (count - nearest).abs() })
}
