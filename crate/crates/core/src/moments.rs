//! Interval moments of |ζ|² on vertical lines and of |S₁|^{2l}.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::quadrature::{gk15_abscissae, rounding_floor, gk15_combine, gk15_nodes, panels, sum_estimates, try_adaptive, try_integrate_panels, Estimate};
use crate::zeta::{hardy_z, EmEvaluator, EmPanelKernel, S1Profile};

/// Exponent a of the admissible window T^a ≤ H ≤ T.
pub const WINDOW_EXPONENT: f64 = 0.6;
const SUB_WINDOWS: usize = 4;
// Longest piece of a zero-free segment integrated by one Kronrod rule.
const S1_PIECE: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MomentKind {
    Critical2,
    Sigma2 { sigma: f64 },
    S1Moment { l: u32 },
}

impl std::fmt::Display for MomentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MomentKind::Critical2 => write!(f, "critical2"),
            MomentKind::Sigma2 { sigma } => write!(f, "sigma2({sigma})"),
            MomentKind::S1Moment { l } => write!(f, "s1moment({l})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub t_lo: f64,
    pub t_hi: f64,
    pub kind: MomentKind,
    pub value: f64,
    pub per_unit: f64,
    pub quad_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbarEstimate {
    pub l: u32,
    pub t: f64,
    pub h: f64,
    pub cbar: f64,
    /// Largest deviation of a sub-window estimate from `cbar`.
    pub spread: f64,
    pub sub_windows: Vec<f64>,
}

impl CbarEstimate {
    pub fn cache_key(&self) -> String {
        cbar_cache_key(self.l, self.t, self.h)
    }
}

pub fn cbar_cache_key(l: u32, t: f64, h: f64) -> String {
    format!("cbar/l={l}/T={t}/H={h}")
}

fn interval(t_lo: f64, t_hi: f64) -> Result<(f64, f64)> {
    let lo = Height::new(t_lo)?.get();
    let hi = Height::new(t_hi)?.get();
    if hi < lo {
        return Err(ZlabError::domain(format!("interval [{lo}, {hi}] is reversed")));
    }
    Ok((lo, hi))
}

fn finish(lo: f64, hi: f64, kind: MomentKind, est: Estimate) -> Result<MomentEstimate> {
    if est.error > 0.01 * est.value.abs() && est.error > f64::MIN_POSITIVE {
        return Err(ZlabError::Precision {
            context: format!("{kind} moment on [{lo}, {hi}]"),
            achieved: est.error,
            required: 0.01 * est.value.abs(),
        });
    }
    let len = hi - lo;
    Ok(MomentEstimate {
        t_lo: lo,
        t_hi: hi,
        kind,
        value: est.value,
        per_unit: if len > 0.0 { est.value / len } else { 0.0 },
        quad_error: est.error,
    })
}

/// ∫ |ζ(1/2 + it)|² dt = ∫ Z(t)² dt over [t_lo, t_hi].
pub fn second_moment_critical(cfg: &PrecisionConfig, t_lo: f64, t_hi: f64) -> Result<MomentEstimate> {
    let (lo, hi) = interval(t_lo, t_hi)?;
    let ps = panels(lo, hi, |t| cfg.panel_width(t));
    let f = |t: f64| hardy_z(cfg, t).map(|z| z * z);
    let est = try_integrate_panels(&f, &ps, cfg.abs_tol)?;
    finish(lo, hi, MomentKind::Critical2, est)
}

/// ∫ |ζ(σ + it)|² dt over [t_lo, t_hi], for σ ≥ 1/2 + ε.
pub fn second_moment_sigma(cfg: &PrecisionConfig, sigma: f64, t_lo: f64, t_hi: f64) -> Result<MomentEstimate> {
    if !(sigma >= 0.5 + cfg.sigma_epsilon) || !sigma.is_finite() {
        return Err(ZlabError::domain(format!(
            "sigma = {sigma} is below 1/2 + {}",
            cfg.sigma_epsilon
        )));
    }
    let (lo, hi) = interval(t_lo, t_hi)?;
    let kind = MomentKind::Sigma2 { sigma };
    if hi == lo {
        return finish(lo, hi, kind, Estimate::default());
    }
    let em = EmEvaluator::new(cfg, sigma, hi)?;
    let ps = panels(lo, hi, |t| cfg.panel_width(t));
    let f = |t: f64| em.eval(t).map(|(z, _)| z.norm_sqr());
    let kernel = EmPanelKernel::new(&em, 0.5 * (ps[0].1 - ps[0].0), gk15_abscissae());
    let h0 = kernel.half_width();
    let parts: Vec<Estimate> = ps
        .par_iter()
        .map(|&(a, b)| {
            let tol = cfg.abs_tol * (b - a);
            if (0.5 * (b - a) - h0).abs() <= 1e-9 * h0 {
                let v = kernel.eval(0.5 * (a + b))?.map(|z| z.norm_sqr());
                let est = gk15_combine(&v, a, b);
                if est.error <= tol.max(rounding_floor(a, b, est.value)) {
                    return Ok(est);
                }
            }
            try_adaptive(&f, a, b, tol, 12)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_>>()?;
    finish(lo, hi, kind, sum_estimates(&parts))
}

/// Integration pieces for S₁-based integrands: the zero ordinates split
/// [lo, hi] into pieces on which S₁ is smooth.
fn s1_pieces(profile: &S1Profile, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut cuts = vec![lo];
    cuts.extend_from_slice(profile.zeros_between(lo, hi));
    cuts.push(hi);
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        out.extend(panels(w[0], w[1], |_| S1_PIECE));
    }
    out
}

/// ∫ |S₁(t)|^{2l} dt over [t_lo, t_hi] for each l in `ls`, sharing the S₁
/// values at the quadrature nodes.
pub fn s1_moments(profile: &S1Profile, ls: &[u32], t_lo: f64, t_hi: f64) -> Result<Vec<MomentEstimate>> {
    let (lo, hi) = interval(t_lo, t_hi)?;
    if ls.contains(&0) {
        return Err(ZlabError::domain("moment order l must be at least 1"));
    }
    if lo < 10.0 {
        return Err(ZlabError::domain(format!("t_lo = {lo} is below 10")));
    }
    if hi > profile.t_max() {
        return Err(ZlabError::domain(format!("t_hi = {hi} beyond S1 profile limit {}", profile.t_max())));
    }
    let pieces = s1_pieces(profile, lo, hi);
    let node_values: Vec<[f64; 15]> = pieces
        .par_iter()
        .map(|&(a, b)| {
            let x = gk15_nodes(a, b);
            let mut v = [0.0; 15];
            for (vi, xi) in v.iter_mut().zip(x) {
                *vi = profile.s1(xi)?;
            }
            Ok(v)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_>>()?;
    ls.iter()
        .map(|&l| {
            let p = 2 * l as i32;
            let parts: Vec<Estimate> = pieces
                .iter()
                .zip(&node_values)
                .map(|(&(a, b), v)| gk15_combine(&v.map(|s| s.abs().powi(p)), a, b))
                .collect();
            finish(lo, hi, MomentKind::S1Moment { l }, sum_estimates(&parts))
        })
        .collect()
}

/// ∫ |S₁(t)|^{2l} dt over [t_lo, t_hi].
pub fn s1_moment(profile: &S1Profile, l: u32, t_lo: f64, t_hi: f64) -> Result<MomentEstimate> {
    Ok(s1_moments(profile, &[l], t_lo, t_hi)?.remove(0))
}

/// Checks T^a ≤ H ≤ T.
pub fn check_window(t: f64, h: f64) -> Result<()> {
    let t = Height::new(t)?.get();
    if !(h.is_finite() && h >= t.powf(WINDOW_EXPONENT) && h <= t) {
        return Err(ZlabError::domain(format!(
            "window H = {h} outside [T^{WINDOW_EXPONENT}, T] for T = {t}"
        )));
    }
    Ok(())
}

/// c̄(l) ≈ (1/H)∫_T^{T+H} |S₁|^{2l}, with the spread over four sub-windows.
pub fn estimate_cbar(profile: &S1Profile, l: u32, t: f64, h: f64) -> Result<CbarEstimate> {
    check_window(t, h)?;
    if l == 0 {
        return Err(ZlabError::domain("moment order l must be at least 1"));
    }
    let full = s1_moment(profile, l, t, t + h)?;
    let cbar = full.value / h;
    let step = h / SUB_WINDOWS as f64;
    let sub_windows = (0..SUB_WINDOWS)
        .map(|i| {
            let a = t + i as f64 * step;
            let b = if i + 1 == SUB_WINDOWS { t + h } else { a + step };
            s1_moment(profile, l, a, b).map(|m| m.per_unit)
        })
        .collect::<Result<Vec<f64>>>()?;
    let spread = sub_windows.iter().map(|c| (c - cbar).abs()).fold(0.0, f64::max);
    if !(cbar > 0.0) {
        return Err(ZlabError::Precision {
            context: format!("cbar(l = {l}) on T = {t}, H = {h} is not positive"),
            achieved: cbar,
            required: 0.0,
        });
    }
    Ok(CbarEstimate { l, t, h, cbar, spread, sub_windows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta_real;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    #[test]
    fn degenerate_interval() {
        let m = second_moment_critical(&cfg(), 100.0, 100.0).unwrap();
        assert_eq!(m.value, 0.0);
        assert_eq!(m.per_unit, 0.0);
        assert!(second_moment_critical(&cfg(), 100.0, 50.0).is_err());
    }

    #[test]
    fn critical_additivity() {
        let a = second_moment_critical(&cfg(), 0.0, 100.0).unwrap().value;
        let b = second_moment_critical(&cfg(), 100.0, 200.0).unwrap().value;
        let c = second_moment_critical(&cfg(), 0.0, 200.0).unwrap().value;
        assert!(((a + b) - c).abs() <= 1e-9 * c);
    }

    #[test]
    fn critical_reference_value() {
        // mpmath quad of siegelz² over [0, 50]
        let m = second_moment_critical(&cfg(), 0.0, 50.0).unwrap();
        assert!((m.value - 115.911_735_339_598_99).abs() < 1e-8, "{}", m.value);
    }

    #[test]
    fn sigma_line_bounds() {
        assert!(second_moment_sigma(&cfg(), 0.505, 10.0, 20.0).is_err());
        let m = second_moment_sigma(&cfg(), 3.0, 100.0, 110.0).unwrap();
        let z3 = zeta_real(&cfg(), 3.0).unwrap();
        assert!(m.per_unit >= 1.0 / (z3 * z3) && m.per_unit <= z3 * z3);
        let ab = second_moment_sigma(&cfg(), 1.0, 100.0, 120.0).unwrap().value;
        let ac = second_moment_sigma(&cfg(), 1.0, 100.0, 130.0).unwrap().value;
        assert!(ac >= ab);
    }

    #[test]
    fn sigma_line_reference_values() {
        // mpmath quad of |zeta(s)|^2 at 25 digits
        let a = second_moment_sigma(&cfg(), 1.0, 100.0, 110.0).unwrap().value;
        assert!((a - 20.625_149_146_403_256).abs() < 1e-9, "{a}");
        let b = second_moment_sigma(&cfg(), 0.75, 1000.0, 1010.0).unwrap().value;
        assert!((b - 35.279_877_690_878_73).abs() < 1e-9, "{b}");
    }

    #[test]
    fn panel_kernel_matches_pointwise_evaluation() {
        let c = cfg();
        let em = EmEvaluator::new(&c, 0.75, 3000.0).unwrap();
        let ps = panels(2900.0, 2910.0, |t| c.panel_width(t));
        let f = |t: f64| em.eval(t).map(|(z, _)| z.norm_sqr());
        let slow = try_integrate_panels(&f, &ps, c.abs_tol).unwrap();
        let fast = second_moment_sigma(&c, 0.75, 2900.0, 2910.0).unwrap();
        assert!((fast.value - slow.value).abs() < 1e-11 * slow.value, "{} {}", fast.value, slow.value);
    }

    #[test]
    fn s1_moment_properties() {
        let p = S1Profile::build(&cfg(), 400.0).unwrap();
        let m1 = s1_moment(&p, 1, 200.0, 300.0).unwrap();
        let m2 = s1_moment(&p, 2, 200.0, 300.0).unwrap();
        assert!(m1.value > 0.0 && m2.value > 0.0);
        assert_eq!(s1_moment(&p, 1, 250.0, 250.0).unwrap().value, 0.0);
        assert!(s1_moment(&p, 1, 5.0, 30.0).is_err());
        assert!(s1_moment(&p, 0, 50.0, 60.0).is_err());
        assert!(s1_moment(&p, 1, 350.0, 450.0).is_err());
        let joint = s1_moments(&p, &[1, 2], 200.0, 300.0).unwrap();
        assert_eq!(joint[0], m1);
        assert_eq!(joint[1], m2);
    }

    #[test]
    fn window_constraint() {
        assert!(check_window(1e4, 1e3).is_ok());
        assert!(check_window(1e4, 200.0).is_err());
        assert!(check_window(1e4, 2e4).is_err());
    }

    #[test]
    fn cache_key_format() {
        assert_eq!(cbar_cache_key(1, 10000.0, 1000.0), "cbar/l=1/T=10000/H=1000");
    }
}
