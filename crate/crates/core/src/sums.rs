//! Sums over Gram points: Titchmarsh's Σ Z²(t_ν)Z²(t_{ν+1}) and Σ Z⁴(t_ν).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::gram::{gram_point, gram_range};
use crate::summation::stable_sum;
use crate::zeta::hardy_z;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumKind {
    Pair,
    Fourth,
}

impl SumKind {
    /// Coefficient of T·ln⁵T in the main term over [T, 2T).
    pub fn constant(self) -> f64 {
        match self {
            SumKind::Pair => 3.0 / (4.0 * PI.powi(5)),
            SumKind::Fourth => 1.0 / (4.0 * PI.powi(3)),
        }
    }

    pub fn main_term(self, t: f64) -> f64 {
        self.constant() * t * t.ln().powi(5)
    }
}

impl std::fmt::Display for SumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SumKind::Pair => "pair",
            SumKind::Fourth => "fourth",
        })
    }
}

impl std::str::FromStr for SumKind {
    type Err = ZlabError;
    fn from_str(s: &str) -> Result<SumKind> {
        match s {
            "pair" => Ok(SumKind::Pair),
            "fourth" => Ok(SumKind::Fourth),
            _ => Err(ZlabError::domain(format!("unknown sum kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumResult {
    pub t_lo: f64,
    pub t_hi: f64,
    pub kind: SumKind,
    pub terms: usize,
    pub value: f64,
    /// Present only for ranges of the form [T, 2T).
    pub main_term: Option<f64>,
    pub ratio: Option<f64>,
}

/// Z at the Gram points of [t_lo, t_hi), plus Z at the point following the last.
pub struct GramValues {
    pub t_lo: f64,
    pub t_hi: f64,
    pub z: Vec<f64>,
    pub z_next: Option<f64>,
}

impl GramValues {
    pub fn collect(cfg: &PrecisionConfig, t_lo: f64, t_hi: f64) -> Result<GramValues> {
        let lo = Height::new(t_lo)?.get();
        let hi = Height::new(t_hi)?.get();
        if !(lo > TAU && lo < hi) {
            return Err(ZlabError::domain(format!("sum range [{lo}, {hi}) needs 2π < t_lo < t_hi")));
        }
        let range = gram_range(cfg, lo, hi)?;
        let z: Vec<f64> = range
            .points
            .par_iter()
            .map(|p| hardy_z(cfg, p.t))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        let z_next = match range.points.last() {
            Some(p) => Some(hardy_z(cfg, gram_point(cfg, p.nu + 1)?.t)?),
            None => None,
        };
        Ok(GramValues { t_lo: lo, t_hi: hi, z, z_next })
    }

    pub fn sum(&self, kind: SumKind) -> SumResult {
        let terms: Vec<f64> = match kind {
            SumKind::Pair => {
                let next = self.z.iter().skip(1).copied().chain(self.z_next);
                self.z.iter().zip(next).map(|(a, b)| a * a * b * b).collect()
            }
            SumKind::Fourth => self.z.iter().map(|a| a.powi(4)).collect(),
        };
        let value = stable_sum(&terms);
        let main_term = (self.t_hi == 2.0 * self.t_lo).then(|| kind.main_term(self.t_lo));
        SumResult {
            t_lo: self.t_lo,
            t_hi: self.t_hi,
            kind,
            terms: terms.len(),
            value,
            main_term,
            ratio: main_term.map(|m| value / m),
        }
    }
}

/// Σ Z²(t_ν)·Z²(t_{ν+1}) over t_ν ∈ [t_lo, t_hi).
pub fn titchmarsh_sum(cfg: &PrecisionConfig, t_lo: f64, t_hi: f64) -> Result<SumResult> {
    Ok(GramValues::collect(cfg, t_lo, t_hi)?.sum(SumKind::Pair))
}

/// Σ Z⁴(t_ν) over t_ν ∈ [t_lo, t_hi).
pub fn fourth_power_sum(cfg: &PrecisionConfig, t_lo: f64, t_hi: f64) -> Result<SumResult> {
    Ok(GramValues::collect(cfg, t_lo, t_hi)?.sum(SumKind::Fourth))
}

pub fn gram_sum(cfg: &PrecisionConfig, kind: SumKind, t_lo: f64, t_hi: f64) -> Result<SumResult> {
    Ok(GramValues::collect(cfg, t_lo, t_hi)?.sum(kind))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub kind: SumKind,
    pub heights: Vec<f64>,
    pub sums: Vec<SumResult>,
    pub ratios: Vec<f64>,
    /// |r(T) − 1|·ln T
    pub fitted: Vec<f64>,
    /// |r − 1| did not increase between the two largest heights.
    pub pass: bool,
}

/// Ratios sum/main term on [T, 2T) for increasing heights T.
pub fn verify_asymptotic_trend(cfg: &PrecisionConfig, kind: SumKind, heights: &[f64]) -> Result<TrendReport> {
    if heights.len() < 3 {
        return Err(ZlabError::domain("trend check needs at least three heights"));
    }
    if !heights.windows(2).all(|w| w[1] > w[0]) {
        return Err(ZlabError::domain("heights must be strictly increasing"));
    }
    let sums = heights
        .iter()
        .map(|&t| gram_sum(cfg, kind, t, 2.0 * t))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = sums.iter().map(|s| s.ratio.unwrap_or(f64::NAN)).collect();
    let fitted = ratios.iter().zip(heights).map(|(r, t)| (r - 1.0).abs() * t.ln()).collect();
    let n = ratios.len();
    let pass = (ratios[n - 1] - 1.0).abs() <= (ratios[n - 2] - 1.0).abs();
    Ok(TrendReport { kind, heights: heights.to_vec(), sums, ratios, fitted, pass })
}
