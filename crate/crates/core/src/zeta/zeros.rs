//! Critical-line zeros up to a height, and S₁(t) built from them.
//!
//! Zeros are located as sign changes of Z. The scan runs in blocks whose
//! endpoints are checked against the argument-tracked count N(t); a block
//! with missing sign changes is resampled at doubled density.

use rayon::prelude::*;
use std::f64::consts::PI;

use super::arg::s_of_t;
use super::riemann_siegel::hardy_z;
use super::theta::theta_unchecked;
use crate::config::{Height, PrecisionConfig};
use crate::error::{Result, ZlabError};
use crate::quadrature::gk15;
use crate::summation::Neumaier;

const ZEROS_PER_BLOCK: f64 = 64.0;
const SAMPLES_PER_GAP: usize = 8;
const MAX_DENSITY_DOUBLINGS: u32 = 10;
// No zero lies below this height (the first is at 14.13).
const SCAN_START: f64 = 10.0;

/// Mean spacing of zeros near t, floored for small t.
pub(crate) fn mean_gap(t: f64) -> f64 {
    2.0 * PI / (t.max(4.0 * PI) / (2.0 * PI)).ln()
}

/// Ordinates of the zeros of ζ(1/2 + it) in (0, t_max], ascending.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    t_max: f64,
    zeros: Vec<f64>,
}

/// A block endpoint whose Z value is safely away from zero.
fn checkpoint(cfg: &PrecisionConfig, t: f64, limit: f64) -> Result<(f64, u64)> {
    let nudge = mean_gap(t) / 97.0;
    let mut c = t;
    for _ in 0..16 {
        match s_of_t(cfg, c) {
            Ok(tr) if hardy_z(cfg, c)?.abs() > 1e-6 => return Ok((c, tr.zero_count)),
            Ok(_) | Err(ZlabError::AmbiguousBranch { .. }) => {}
            Err(e) => return Err(e),
        }
        c = if c + nudge <= limit { c + nudge } else { c - nudge };
    }
    Err(ZlabError::Root(format!("no usable checkpoint near t = {t}")))
}

fn refine(cfg: &PrecisionConfig, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> Result<f64> {
    // Illinois variant of regula falsi
    let mut side = 0i8;
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * b.abs() {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = hardy_z(cfg, c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(if fa.abs() < fb.abs() { a } else { b })
}

fn scan_block(cfg: &PrecisionConfig, lo: f64, hi: f64, expected: u64) -> Result<Vec<f64>> {
    if expected == 0 {
        return Ok(Vec::new());
    }
    let mut samples = ((hi - lo) / mean_gap(hi) * SAMPLES_PER_GAP as f64).ceil().max(2.0) as usize;
    for _ in 0..=MAX_DENSITY_DOUBLINGS {
        let h = (hi - lo) / samples as f64;
        let mut brackets = Vec::new();
        let mut prev = (lo, hardy_z(cfg, lo)?);
        for i in 1..=samples {
            let t = if i == samples { hi } else { lo + i as f64 * h };
            let z = hardy_z(cfg, t)?;
            if z == 0.0 {
                // exact zero at a sample point; shift it into the next interval
                brackets.push((t, t, 0.0, 0.0));
                prev = (t, z);
                continue;
            }
            if prev.1 != 0.0 && z.signum() != prev.1.signum() {
                brackets.push((prev.0, t, prev.1, z));
            }
            prev = (t, z);
        }
        match (brackets.len() as u64).cmp(&expected) {
            std::cmp::Ordering::Equal => {
                return brackets
                    .into_iter()
                    .map(|(a, b, fa, fb)| if a == b { Ok(a) } else { refine(cfg, a, fa, b, fb) })
                    .collect();
            }
            std::cmp::Ordering::Greater => {
                return Err(ZlabError::Tracking {
                    t: hi,
                    reason: format!("{} sign changes in [{lo}, {hi}] but count is {expected}", brackets.len()),
                });
            }
            std::cmp::Ordering::Less => samples *= 2,
        }
    }
    Err(ZlabError::Root(format!("could not separate {expected} zeros in [{lo}, {hi}]")))
}

impl ZeroTable {
    pub fn build(cfg: &PrecisionConfig, t_max: f64) -> Result<ZeroTable> {
        let t_max = Height::new(t_max)?.get();
        if t_max <= SCAN_START {
            return Ok(ZeroTable { t_max, zeros: Vec::new() });
        }
        // Block ends do not depend on t_max, so every table agrees with
        // every longer one on their common range.
        let mut marks = vec![SCAN_START];
        let mut t = SCAN_START;
        while t < t_max {
            t += ZEROS_PER_BLOCK * mean_gap(t);
            marks.push(t);
        }
        let checkpoints: Vec<(f64, u64)> = marks
            .par_iter()
            .enumerate()
            .map(|(i, &m)| {
                if i == 0 {
                    return Ok((m, 0));
                }
                checkpoint(cfg, m, marks.get(i + 1).copied().unwrap_or(f64::INFINITY))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        let blocks: Vec<Vec<f64>> = checkpoints
            .par_windows(2)
            .map(|w| {
                let (lo, n_lo) = w[0];
                let (hi, n_hi) = w[1];
                if n_hi < n_lo {
                    return Err(ZlabError::Tracking { t: hi, reason: "zero count decreased".into() });
                }
                scan_block(cfg, lo, hi, n_hi - n_lo)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        let zeros = blocks.into_iter().flatten().filter(|&z| z <= t_max).collect();
        Ok(ZeroTable { t_max, zeros })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// N(t): number of zeros with ordinate ≤ t.
    pub fn count(&self, t: f64) -> usize {
        self.zeros.partition_point(|&z| z <= t)
    }
}

/// S and S₁ on [0, t_max], from a zero table.
#[derive(Clone, Debug)]
pub struct S1Profile {
    table: ZeroTable,
    // S₁ at 0 and at each zero, same indexing as [0, z_1, z_2, ...]
    knots: Vec<f64>,
    nodes: Vec<f64>,
}

fn integral_of_s(a: f64, b: f64, count: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = count as f64;
    let f = |u: f64| n - 1.0 - theta_unchecked(u) / PI;
    let pieces = ((b - a) / 2.0).ceil().max(1.0) as usize;
    let w = (b - a) / pieces as f64;
    let mut acc = Neumaier::new();
    for i in 0..pieces {
        let lo = a + i as f64 * w;
        let hi = if i + 1 == pieces { b } else { lo + w };
        acc.add(gk15(&f, lo, hi).value);
    }
    acc.total()
}

impl S1Profile {
    pub fn build(cfg: &PrecisionConfig, t_max: f64) -> Result<S1Profile> {
        let table = ZeroTable::build(cfg, t_max)?;
        let mut nodes = Vec::with_capacity(table.zeros.len() + 1);
        nodes.push(0.0);
        nodes.extend_from_slice(&table.zeros);
        let pieces: Vec<f64> = nodes.par_windows(2).enumerate().map(|(j, w)| integral_of_s(w[0], w[1], j)).collect();
        let mut knots = Vec::with_capacity(nodes.len());
        let mut acc = Neumaier::new();
        knots.push(0.0);
        for p in pieces {
            acc.add(p);
            knots.push(acc.total());
        }
        Ok(S1Profile { table, knots, nodes })
    }

    pub fn t_max(&self) -> f64 {
        self.table.t_max
    }

    pub fn zeros(&self) -> &ZeroTable {
        &self.table
    }

    fn check(&self, t: f64) -> Result<f64> {
        let t = Height::new(t)?.get();
        if t > self.table.t_max {
            return Err(ZlabError::domain(format!("t = {t} beyond profile limit {}", self.table.t_max)));
        }
        Ok(t)
    }

    /// S(t) = N(t) − 1 − ϑ(t)/π, right-continuous at zeros.
    pub fn s(&self, t: f64) -> Result<f64> {
        let t = self.check(t)?;
        Ok(self.table.count(t) as f64 - 1.0 - theta_unchecked(t) / PI)
    }

    /// S₁(t) = ∫₀ᵗ S(u) du.
    pub fn s1(&self, t: f64) -> Result<f64> {
        let t = self.check(t)?;
        let j = self.nodes.partition_point(|&z| z <= t) - 1;
        Ok(self.knots[j] + integral_of_s(self.nodes[j], t, j))
    }

    /// Zero ordinates strictly inside (a, b).
    pub fn zeros_between(&self, a: f64, b: f64) -> &[f64] {
        let z = &self.table.zeros;
        let lo = z.partition_point(|&x| x <= a);
        let hi = z.partition_point(|&x| x < b);
        &z[lo..hi.max(lo)]
    }
}

/// S₁(t) = (1/π)∫₀ᵗ arg ζ(1/2 + iu) du.
pub fn s1_of_t(cfg: &PrecisionConfig, t: f64) -> Result<f64> {
    S1Profile::build(cfg, t)?.s1(t)
}
