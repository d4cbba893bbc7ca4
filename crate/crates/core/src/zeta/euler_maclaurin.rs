//! ζ(s) for σ > 0 by Euler–Maclaurin summation.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::config::{EmTermsPolicy, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::summation::Neumaier;

/// ζ(2k) for k ≥ 1.
pub(crate) fn zeta_even(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut v = vec![0.0; 65];
        v[1] = PI.powi(2) / 6.0;
        v[2] = PI.powi(4) / 90.0;
        v[3] = PI.powi(6) / 945.0;
        v[4] = PI.powi(8) / 9450.0;
        v[5] = PI.powi(10) / 93555.0;
        v[6] = 691.0 * PI.powi(12) / 638_512_875.0;
        for (k, slot) in v.iter_mut().enumerate().skip(7) {
            let mut acc = 0.0;
            // smallest terms first
            for n in (2..64).rev() {
                acc += (n as f64).powi(-2 * k as i32);
            }
            *slot = 1.0 + acc;
        }
        v
    });
    if k < table.len() {
        table[k]
    } else {
        1.0
    }
}

/// Precomputed Dirichlet weights n^{-σ} and logarithms for one vertical line.
///
/// Reusing one evaluator for many heights on the same line avoids recomputing
/// the N logarithms and powers per call.
#[derive(Debug, Clone)]
pub struct EmEvaluator {
    sigma: f64,
    cutoff: usize,
    logs: Vec<f64>,
    weights: Vec<f64>,
    abs_tol: f64,
}

impl EmEvaluator {
    /// An evaluator valid for |t| ≤ `t_max` on the line Re s = `sigma`.
    pub fn new(cfg: &PrecisionConfig, sigma: f64, t_max: f64) -> Result<EmEvaluator> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(ZlabError::domain(format!("zeta: sigma = {sigma} must be positive")));
        }
        Ok(Self::with_policy(&cfg.em_terms_policy, cfg.abs_tol, sigma, t_max))
    }

    fn with_policy(policy: &EmTermsPolicy, abs_tol: f64, sigma: f64, t_max: f64) -> EmEvaluator {
        let cutoff = policy.cutoff(t_max).max(2);
        let logs: Vec<f64> = (1..cutoff).map(|n| (n as f64).ln()).collect();
        let weights = logs.iter().map(|l| (-sigma * l).exp()).collect();
        EmEvaluator {
            sigma,
            cutoff,
            logs,
            weights,
            abs_tol,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// ζ(σ + it) together with the size of the first omitted correction.
    pub fn eval(&self, t: f64) -> Result<(Complex64, f64)> {
        let mut re = Neumaier::new();
        let mut im = Neumaier::new();
        for (l, w) in self.logs.iter().zip(&self.weights) {
            let (sn, cs) = (t * l).sin_cos();
            re.add(w * cs);
            im.add(-w * sn);
        }
        self.with_tail(t, Complex64::new(re.total(), im.total()))
    }

    /// Adds the Euler–Maclaurin remainder at height t to the partial sum
    /// `head` = Σ_{n<N} n^{-s}.
    fn with_tail(&self, t: f64, head: Complex64) -> Result<(Complex64, f64)> {
        if self.sigma == 1.0 && t == 0.0 {
            return Err(ZlabError::Pole);
        }
        let s = Complex64::new(self.sigma, t);
        let n = self.cutoff as f64;
        let ln_n = n.ln();
        let (sn, cs) = (t * ln_n).sin_cos();
        let n_pow = Complex64::new(cs, -sn) * (-self.sigma * ln_n).exp(); // N^{-s}
        let mut tail = n_pow * n / (s - 1.0) + 0.5 * n_pow;

        let scale = 1.0 / (TAU * n).powi(2);
        let mut term = s * n_pow / (12.0 * n);
        let mut k = 1usize;
        let err = loop {
            tail += term;
            let kf = k as f64;
            let next = term
                * (-(zeta_even(k + 1) / zeta_even(k)))
                * (s + (2.0 * kf - 1.0))
                * (s + 2.0 * kf)
                * scale;
            let total = (head + tail).norm().max(1e-300);
            if next.norm() <= 0.25 * f64::EPSILON * total {
                break next.norm();
            }
            if next.norm() >= term.norm() {
                // the asymptotic tail has started to grow
                if term.norm() > self.abs_tol {
                    return Err(ZlabError::Precision {
                        context: format!("Euler-Maclaurin zeta at s = {s}"),
                        achieved: term.norm(),
                        required: self.abs_tol,
                    });
                }
                break term.norm();
            }
            term = next;
            k += 1;
        };
        Ok((head + tail, err))
    }
}

/// Evaluates an [`EmEvaluator`] at the 15 Kronrod nodes c ± h·x_k of a
/// panel of fixed half-width h.
///
/// The phases e^{-i h x_k ln n} are tabulated once, so each panel costs one
/// sin_cos per Dirichlet term instead of fifteen.
pub(crate) struct EmPanelKernel<'a> {
    em: &'a EmEvaluator,
    half_width: f64,
    offsets: [f64; 7],
    rot: Vec<[(f64, f64); 7]>,
}

impl<'a> EmPanelKernel<'a> {
    /// `abscissae` are the positive Kronrod abscissae x_0 > … > x_6 on [-1, 1].
    pub(crate) fn new(em: &'a EmEvaluator, half_width: f64, abscissae: [f64; 7]) -> EmPanelKernel<'a> {
        let offsets = abscissae.map(|x| half_width * x);
        let rot = em
            .logs
            .iter()
            .map(|l| offsets.map(|d| (d * l).sin_cos()).map(|(sn, cs)| (cs, -sn)))
            .collect();
        EmPanelKernel { em, half_width, offsets, rot }
    }

    pub(crate) fn half_width(&self) -> f64 {
        self.half_width
    }

    /// ζ(σ + it) at t = c − h·x_0, …, c − h·x_6, c, c + h·x_6, …, c + h·x_0.
    pub(crate) fn eval(&self, c: f64) -> Result<[Complex64; 15]> {
        let mut re = [0.0; 15];
        let mut im = [0.0; 15];
        for ((l, w), rot) in self.em.logs.iter().zip(&self.em.weights).zip(&self.rot) {
            let (sn, cs) = (c * l).sin_cos();
            let (br, bi) = (w * cs, -w * sn);
            re[7] += br;
            im[7] += bi;
            for (k, &(rr, ri)) in rot.iter().enumerate() {
                // e^{-i(c ± d)l} = base · (rr ± i·ri)
                let (pr, pi) = (br * rr - bi * ri, br * ri + bi * rr);
                let (mr, mi) = (br * rr + bi * ri, bi * rr - br * ri);
                re[14 - k] += pr;
                im[14 - k] += pi;
                re[k] += mr;
                im[k] += mi;
            }
        }
        let mut out = [Complex64::new(0.0, 0.0); 15];
        for j in 0..15 {
            let t = match j {
                0..=6 => c - self.offsets[j],
                7 => c,
                _ => c + self.offsets[14 - j],
            };
            out[j] = self.em.with_tail(t, Complex64::new(re[j], im[j]))?.0;
        }
        Ok(out)
    }
}

/// ζ(s) for Re s > 0, s ≠ 1.
pub fn zeta(cfg: &PrecisionConfig, s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(ZlabError::domain("zeta: non-finite argument"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(ZlabError::Pole);
    }
    let ev = EmEvaluator::new(cfg, s.re, s.im)?;
    let (z, err) = ev.eval(s.im)?;
    if err > cfg.abs_tol {
        return Err(ZlabError::Precision {
            context: format!("zeta({s})"),
            achieved: err,
            required: cfg.abs_tol,
        });
    }
    Ok(z)
}

/// ζ(x) on the real axis, x > 0, x ≠ 1.
pub fn zeta_real(cfg: &PrecisionConfig, x: f64) -> Result<f64> {
    zeta(cfg, Complex64::new(x, 0.0)).map(|z| z.re)
}
