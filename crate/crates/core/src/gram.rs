//! Gram points: solutions of ϑ(t_ν) = πν on the increasing branch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI, TAU};

use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::zeta::{theta_deriv_unchecked, theta_unchecked};

/// Below this height ϑ is not monotone; every Gram point with ν ≥ 1 lies above it.
const THETA_MINIMUM: f64 = 6.289_835_988_836_903;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub nu: u64,
    pub t: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramRange {
    pub t_lo: f64,
    pub t_hi: f64,
    pub points: Vec<GramPoint>,
}

impl GramRange {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

// Principal branch of Lambert W for x > 0.
fn lambert_w(x: f64) -> f64 {
    let mut w = if x < 1.0 { x / (1.0 + x) } else { x.ln() - x.ln().ln().max(0.0) * 0.5 };
    for _ in 0..50 {
        let ew = w.exp();
        let f = w * ew - x;
        let next = w - f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        if (next - w).abs() <= 1e-15 * next.abs().max(1.0) {
            return next;
        }
        w = next;
    }
    w
}

/// Inverse of the asymptotic main term (t/2)ln(t/2π) − t/2 − π/8 = πν.
fn initial_guess(nu: f64) -> f64 {
    TAU * (1.0 + lambert_w((8.0 * nu + 1.0) / (8.0 * E))).exp()
}

#[inline]
fn residual(t: f64, target: f64) -> f64 {
    theta_unchecked(t) - target
}

/// Among t and its immediate floating-point neighbours, the one with the
/// smallest computed |ϑ(t) − πν|.
fn polish(mut t: f64, target: f64) -> f64 {
    let mut best = residual(t, target).abs();
    loop {
        let up = t.next_up();
        let down = t.next_down();
        let (ru, rd) = (residual(up, target).abs(), residual(down, target).abs());
        if ru < best && ru <= rd {
            t = up;
            best = ru;
        } else if rd < best {
            t = down;
            best = rd;
        } else {
            return t;
        }
    }
}

fn bisect(lo: f64, hi: f64, target: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    while b - a > 4.0 * f64::EPSILON * b {
        let m = 0.5 * (a + b);
        if residual(m, target) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// The Gram point of index ν ≥ 1.
pub fn gram_point(cfg: &PrecisionConfig, nu: u64) -> Result<GramPoint> {
    if nu == 0 {
        return Err(ZlabError::domain("Gram index must be at least 1"));
    }
    let target = PI * nu as f64;
    let mut t = initial_guess(nu as f64);
    let mut converged = false;
    for _ in 0..cfg.max_newton_iters {
        let f = residual(t, target);
        let step = f / theta_deriv_unchecked(t);
        let next = t - step;
        if !(next > THETA_MINIMUM) || !next.is_finite() {
            break;
        }
        t = next;
        if step.abs() <= 2.0 * f64::EPSILON * t {
            converged = true;
            break;
        }
    }
    if !converged {
        // bracket by doubling outward from the asymptotic guess
        let guess = initial_guess(nu as f64);
        let (mut lo, mut hi) = (guess.max(THETA_MINIMUM + 1.0), guess.max(THETA_MINIMUM + 1.0));
        let mut width = 1.0;
        while residual(lo, target) > 0.0 {
            lo = (lo - width).max(THETA_MINIMUM);
            width *= 2.0;
            if lo == THETA_MINIMUM {
                break;
            }
        }
        width = 1.0;
        while residual(hi, target) < 0.0 {
            hi += width;
            width *= 2.0;
            if !hi.is_finite() {
                return Err(ZlabError::Root(format!("no bracket for Gram index {nu}")));
            }
        }
        t = bisect(lo, hi, target);
    }
    let t = polish(t, target);
    let residual = residual(t, target).abs();
    if residual > cfg.abs_tol {
        return Err(ZlabError::Root(format!("Gram index {nu}: residual {residual:e} above tolerance")));
    }
    Ok(GramPoint { nu, t, residual })
}

/// All Gram points with t in [t_lo, t_hi), ordered by index.
pub fn gram_range(cfg: &PrecisionConfig, t_lo: f64, t_hi: f64) -> Result<GramRange> {
    let lo = Height::new(t_lo)?.get();
    let hi = Height::new(t_hi)?.get();
    if lo > hi {
        return Err(ZlabError::domain(format!("empty range: {lo} > {hi}")));
    }
    let first_nu = |t: f64| -> u64 {
        if t <= THETA_MINIMUM {
            1
        } else {
            ((theta_unchecked(t) / PI).ceil() - 1.0).max(1.0) as u64
        }
    };
    let last_nu = |t: f64| -> u64 {
        if t <= THETA_MINIMUM {
            0
        } else {
            ((theta_unchecked(t) / PI).floor() + 1.0).max(0.0) as u64
        }
    };
    let (a, b) = (first_nu(lo), last_nu(hi));
    let candidates: Vec<GramPoint> = if b >= a {
        (a..=b).into_par_iter().map(|nu| gram_point(cfg, nu)).collect::<Vec<_>>().into_iter().collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let points = candidates.into_iter().filter(|p| p.t >= lo && p.t < hi).collect();
    Ok(GramRange { t_lo: lo, t_hi: hi, points })
}

/// The asymptotic Gram count (1/2π)·T·ln T.
pub fn gram_count_estimate(t: f64) -> Result<f64> {
    let t = Height::new(t)?.get();
    if t <= E {
        return Err(ZlabError::domain(format!("T = {t} must exceed e")));
    }
    Ok(t * t.ln() / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn first_points() {
        let g1 = gram_point(&cfg(), 1).unwrap();
        let g2 = gram_point(&cfg(), 2).unwrap();
        assert!((g1.t - 23.170_282_701_246_309).abs() < 1e-12);
        assert!((g2.t - 27.670_182_217_816_338).abs() < 1e-12);
        assert!(gram_point(&cfg(), 0).is_err());
    }

    #[test]
    fn residual_at_large_index() {
        let g = gram_point(&cfg(), 10_000).unwrap();
        assert!((theta_unchecked(g.t) - PI * 1e4).abs() <= 1e-10);
        assert_eq!(g.residual, (theta_unchecked(g.t) - PI * 1e4).abs());
    }

    #[test]
    fn lambert_w_values() {
        for x in [1e-3, 0.5, 1.0, 10.0, 1e6] {
            let w = lambert_w(x);
            assert!((w * w.exp() - x).abs() <= 1e-13 * x);
        }
    }

    #[test]
    fn theta_minimum_location() {
        assert!(theta_deriv_unchecked(THETA_MINIMUM).abs() < 1e-12);
    }

    #[test]
    fn empty_low_range() {
        assert_eq!(gram_range(&cfg(), 0.0, 17.0).unwrap().count(), 0);
        assert_eq!(gram_range(&cfg(), 10.0, 23.0).unwrap().count(), 0);
        let r = gram_range(&cfg(), 10.0, 23.2).unwrap();
        assert_eq!(r.points.iter().map(|p| p.nu).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn range_count_formula() {
        let r = gram_range(&cfg(), 1000.0, 2000.0).unwrap();
        let expected = (theta_unchecked(2000.0) / PI).floor() - (theta_unchecked(1000.0) / PI).ceil() + 1.0;
        assert_eq!(r.count() as f64, expected);
        assert!(r.points.windows(2).all(|w| w[1].nu == w[0].nu + 1 && w[1].t > w[0].t));
    }

    #[test]
    fn ranges_partition() {
        let ab = gram_range(&cfg(), 500.0, 611.3).unwrap();
        let bc = gram_range(&cfg(), 611.3, 700.0).unwrap();
        let ac = gram_range(&cfg(), 500.0, 700.0).unwrap();
        let joined: Vec<_> = ab.points.iter().chain(&bc.points).cloned().collect();
        assert_eq!(joined, ac.points);
    }

    #[test]
    fn boundary_point_belongs_to_upper_range() {
        let g = gram_point(&cfg(), 300).unwrap();
        assert!(gram_range(&cfg(), 100.0, g.t).unwrap().points.iter().all(|p| p.nu < 300));
        assert_eq!(gram_range(&cfg(), g.t, g.t + 1.0).unwrap().points[0].nu, 300);
    }

    #[test]
    fn count_estimate() {
        assert!((gram_count_estimate(1e4).unwrap() - 14_658.711_977_588_555).abs() < 1e-8);
        let t = TAU * E;
        assert!((gram_count_estimate(t).unwrap() - E * (1.0 + TAU.ln())).abs() < 1e-12);
        assert!(gram_count_estimate(2.0).is_err());
    }
}
