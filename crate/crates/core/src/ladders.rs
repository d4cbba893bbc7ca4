//! Reverse iterates of the Jacob's ladder, defined through
//! ∫_T^{T¹} Z(t)² dt = (1 − c)·T with c = γ.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::quadrature::{panels, try_adaptive};
use crate::summation::Neumaier;
use crate::zeta::hardy_z;

/// Euler–Mascheroni constant, the c of the ladder increment (1 − c)·T.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const MIN_BASE: f64 = 100.0;
pub const MAX_CHAIN: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderStep {
    pub upper: f64,
    /// ∫ Z² over the step as computed.
    pub slice_integral: f64,
    /// slice_integral − (1 − c)·base
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderChain {
    pub base: f64,
    pub iterates: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slice_integrals: Vec<f64>,
    pub euler_c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub gap_ratios: Vec<f64>,
    pub integral_ratios: Vec<f64>,
    pub gap_prediction_ratios: Vec<f64>,
}

impl LadderChain {
    /// T, T¹, …, Tᵏ.
    pub fn points(&self) -> Vec<f64> {
        std::iter::once(self.base).chain(self.iterates.iter().copied()).collect()
    }

    pub fn gaps(&self) -> Vec<f64> {
        self.points().windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Leading-order step length (1 − c)·T/ln T.
pub fn predicted_gap(t: f64) -> f64 {
    (1.0 - EULER_GAMMA) * t / t.ln()
}

fn z2(cfg: &PrecisionConfig, t: f64) -> Result<f64> {
    hardy_z(cfg, t).map(|z| z * z)
}

fn partial(cfg: &PrecisionConfig, a: f64, u: f64) -> Result<f64> {
    if u <= a {
        return Ok(0.0);
    }
    let f = |t: f64| z2(cfg, t);
    Ok(try_adaptive(&f, a, u, cfg.abs_tol * (u - a), 12)?.value)
}

/// Solves acc + ∫_a^U Z² = target for U in [a, b], where the left side
/// brackets the target at the panel ends.
fn solve_in_panel(cfg: &PrecisionConfig, a: f64, b: f64, acc: f64, target: f64, tol: f64) -> Result<(f64, f64)> {
    let g = |u: f64| -> Result<f64> { Ok(acc + partial(cfg, a, u)? - target) };
    let (mut lo, mut hi) = (a, b);
    let mut u = a + (b - a) * 0.5;
    let mut gu = g(u)?;
    for _ in 0..cfg.max_newton_iters.max(200) {
        if gu.abs() <= tol {
            return Ok((u, gu));
        }
        if gu < 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok((u, gu));
        }
        let d = z2(cfg, u)?;
        let newton = u - gu / d;
        // Newton is unreliable where Z² is tiny; fall back to bisection
        u = if d > 1e-8 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        gu = g(u)?;
    }
    Err(ZlabError::Root(format!("ladder step from acc {acc} did not converge in [{a}, {b}]")))
}

/// One reverse step with its residual.
pub fn reverse_step(cfg: &PrecisionConfig, t: f64) -> Result<LadderStep> {
    let t = Height::new(t)?.get();
    if t < MIN_BASE {
        return Err(ZlabError::domain(format!("ladder base {t} is below {MIN_BASE}")));
    }
    let target = (1.0 - EULER_GAMMA) * t;
    let tol = cfg.abs_tol * t;
    let f = |u: f64| z2(cfg, u);
    let guess = predicted_gap(t);
    let mut acc = Neumaier::new();
    let mut start = t;
    let mut chunk = 1.25 * guess;
    loop {
        let ps = panels(start, start + chunk, |u| cfg.panel_width(u));
        let parts: Vec<f64> = ps
            .par_iter()
            .map(|&(a, b)| try_adaptive(&f, a, b, cfg.abs_tol * (b - a), 12).map(|e| e.value))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        for (&(a, b), v) in ps.iter().zip(parts) {
            let before = acc.total();
            acc.add(v);
            if acc.total() >= target {
                let (upper, residual) = solve_in_panel(cfg, a, b, before, target, tol)?;
                return Ok(LadderStep { upper, slice_integral: target + residual, residual });
            }
        }
        start += chunk;
        chunk = 0.25 * guess;
        if start > t + 100.0 * guess {
            return Err(ZlabError::Root(format!("no ladder step found above {t}")));
        }
    }
}

/// T¹ with ∫_T^{T¹} Z² = (1 − γ)·T.
pub fn reverse_iterate(cfg: &PrecisionConfig, t: f64) -> Result<f64> {
    reverse_step(cfg, t).map(|s| s.upper)
}

/// T¹, …, Tᵏ by repeated reverse steps.
pub fn ladder_chain(cfg: &PrecisionConfig, t: f64, k: usize) -> Result<LadderChain> {
    if !(1..=MAX_CHAIN).contains(&k) {
        return Err(ZlabError::domain(format!("chain length {k} outside 1..={MAX_CHAIN}")));
    }
    let mut chain = LadderChain {
        base: t,
        iterates: Vec::with_capacity(k),
        residuals: Vec::with_capacity(k),
        slice_integrals: Vec::with_capacity(k),
        euler_c: EULER_GAMMA,
    };
    let mut current = t;
    for _ in 0..k {
        let step = reverse_step(cfg, current)?;
        chain.iterates.push(step.upper);
        chain.residuals.push(step.residual);
        chain.slice_integrals.push(step.slice_integral);
        current = step.upper;
    }
    Ok(chain)
}

/// Gap ratios, slice-integral ratios and gap/prediction ratios of a chain.
pub fn partition_report(chain: &LadderChain) -> Result<PartitionReport> {
    if chain.iterates.len() < 2 {
        return Err(ZlabError::domain("partition report needs a chain of length at least 2"));
    }
    let pts = chain.points();
    let gaps = chain.gaps();
    let ratios = |v: &[f64]| v.windows(2).map(|w| w[1] / w[0]).collect::<Vec<_>>();
    Ok(PartitionReport {
        gap_ratios: ratios(&gaps),
        integral_ratios: ratios(&chain.slice_integrals),
        gap_prediction_ratios: gaps.iter().zip(&pts).map(|(g, &p)| g / predicted_gap(p)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn step_at_1000() {
        let s = reverse_step(&cfg(), 1000.0).unwrap();
        assert!(s.upper > 1000.0);
        assert!(s.residual.abs() <= 1e-10 * 1000.0);
        let direct = crate::moments::second_moment_critical(&cfg(), 1000.0, s.upper).unwrap().value;
        assert!((direct - (1.0 - EULER_GAMMA) * 1000.0).abs() <= 1e-6 * 1000.0);
    }

    #[test]
    fn preconditions() {
        assert!(reverse_iterate(&cfg(), 99.0).is_err());
        assert!(ladder_chain(&cfg(), 200.0, 0).is_err());
        assert!(ladder_chain(&cfg(), 200.0, 21).is_err());
        let c = ladder_chain(&cfg(), 200.0, 1).unwrap();
        assert!(partition_report(&c).is_err());
    }

    #[test]
    fn chain_structure() {
        let c = ladder_chain(&cfg(), 500.0, 3).unwrap();
        assert_eq!(c.iterates[0], reverse_iterate(&cfg(), 500.0).unwrap());
        assert!(c.points().windows(2).all(|w| w[1] > w[0]));
        let r = partition_report(&c).unwrap();
        assert_eq!(r.gap_ratios.len(), 2);
        assert_eq!(r.gap_prediction_ratios.len(), 3);
        for (i, q) in r.integral_ratios.iter().enumerate() {
            let expect = c.points()[i + 1] / c.points()[i];
            assert!((q - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn monotone_map() {
        let a = reverse_iterate(&cfg(), 300.0).unwrap();
        let b = reverse_iterate(&cfg(), 301.0).unwrap();
        assert!(b > a);
    }
}
