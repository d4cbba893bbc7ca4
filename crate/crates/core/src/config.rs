use serde::{Deserialize, Serialize};

use crate::error::{Result, ZlabError};

/// Rule for the Euler–Maclaurin cutoff: the direct Dirichlet sum runs to
/// `N = ⌈scale·|t|/2π⌉ + max(offset, ⌈cube_root_coeff·|t|^{1/3}⌉)`.
///
/// The `|t|^{1/3}` growth keeps the smallest tail term below ~e^{-40} at
/// every height; below |t| ≈ 1.5·10⁴ the fixed offset dominates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmTermsPolicy {
    pub scale: f64,
    pub offset: usize,
    pub cube_root_coeff: f64,
}

impl Default for EmTermsPolicy {
    fn default() -> Self {
        EmTermsPolicy {
            scale: 1.0,
            offset: 50,
            cube_root_coeff: 2.0,
        }
    }
}

impl EmTermsPolicy {
    pub fn cutoff(&self, t: f64) -> usize {
        let t = t.abs();
        let head = (self.scale * t / std::f64::consts::TAU).ceil() as usize;
        let pad = (self.cube_root_coeff * t.cbrt()).ceil() as usize;
        head + self.offset.max(pad)
    }
}

/// Accuracy and step-size knobs shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PrecisionConfig {
    pub abs_tol: f64,
    /// Maximum quadrature panel width (also the maximum σ-step of the
    /// argument tracker).
    pub quad_step_cap: f64,
    pub em_terms_policy: EmTermsPolicy,
    pub max_newton_iters: usize,
    /// Lines σ must satisfy σ ≥ 1/2 + sigma_epsilon.
    pub sigma_epsilon: f64,
    /// Height above which Z(t) switches from Euler–Maclaurin to Riemann–Siegel.
    pub rs_crossover: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            abs_tol: 1e-10,
            quad_step_cap: 0.1,
            em_terms_policy: EmTermsPolicy::default(),
            max_newton_iters: 60,
            sigma_epsilon: 0.01,
            rs_crossover: 1000.0,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(ZlabError::Config(m.to_string()));
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return bad("abs_tol must be positive");
        }
        if !(self.quad_step_cap > 0.0 && self.quad_step_cap.is_finite()) {
            return bad("quad_step_cap must be positive");
        }
        if self.max_newton_iters < 1 {
            return bad("max_newton_iters must be at least 1");
        }
        if !(self.sigma_epsilon > 0.0) {
            return bad("sigma_epsilon must be positive");
        }
        if !(self.em_terms_policy.scale >= 1.0) {
            return bad("em_terms_policy.scale must be at least 1");
        }
        if !(self.rs_crossover >= 0.0) {
            return bad("rs_crossover must be non-negative");
        }
        Ok(())
    }

    /// Quadrature panel width at height `t`: the cap, shrunk to a quarter of
    /// the mean zero gap 2π/ln(t/2π) where that is smaller.
    pub fn panel_width(&self, t: f64) -> f64 {
        let l = (t / std::f64::consts::TAU).ln();
        if l > 1.0 {
            self.quad_step_cap.min(0.25 * std::f64::consts::TAU / l)
        } else {
            self.quad_step_cap
        }
    }
}

/// A non-negative, finite ordinate on a vertical line.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Height(f64);

impl Height {
    pub fn new(t: f64) -> Result<Height> {
        if !t.is_finite() {
            return Err(ZlabError::domain(format!("height {t} is not finite")));
        }
        if t < 0.0 {
            return Err(ZlabError::domain(format!("height {t} is negative")));
        }
        Ok(Height(t))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<Height> for f64 {
    fn from(h: Height) -> f64 {
        h.0
    }
}
