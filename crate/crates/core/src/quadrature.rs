//! Gauss–Kronrod (7, 15) panels with bisection refinement.
//!
//! Long intervals are cut into panels whose width follows the local
//! oscillation scale of the integrand. Panels are integrated in parallel and
//! reduced in panel order, so results are bit-identical for any thread count.

use rayon::prelude::*;
use std::convert::Infallible;

use crate::summation::{stable_sum, Neumaier};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: f64,
    /// |Kronrod − Gauss|, summed over panels.
    pub error: f64,
}

/// The positive Kronrod abscissae on [-1, 1], descending.
pub(crate) fn gk15_abscissae() -> [f64; 7] {
    let mut x = [0.0; 7];
    x.copy_from_slice(&XGK[..7]);
    x
}

/// The 15 Kronrod abscissae on [a, b], ascending.
pub fn gk15_nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for j in 0..7 {
        x[j] = c - h * XGK[j];
        x[14 - j] = c + h * XGK[j];
    }
    x[7] = c;
    x
}

/// Combines integrand values at [`gk15_nodes`] into a Kronrod estimate.
pub fn gk15_combine(f: &[f64; 15], a: f64, b: f64) -> Estimate {
    let h = 0.5 * (b - a);
    let mut kronrod = WGK[7] * f[7];
    let mut gauss = WG[3] * f[7];
    for j in 0..7 {
        let pair = f[j] + f[14 - j];
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let x = gk15_nodes(a, b);
    let mut v = [0.0; 15];
    for (vi, xi) in v.iter_mut().zip(x.iter()) {
        *vi = f(*xi);
    }
    gk15_combine(&v, a, b)
}

fn try_gk15<F, E>(f: &F, a: f64, b: f64) -> Result<Estimate, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let x = gk15_nodes(a, b);
    let mut v = [0.0; 15];
    for (vi, xi) in v.iter_mut().zip(x.iter()) {
        *vi = f(*xi)?;
    }
    Ok(gk15_combine(&v, a, b))
}

/// Relative error below which bisection cannot help: integrands built from
/// phases t·ln n carry rounding of order t·ε at height t.
pub(crate) fn rounding_floor(a: f64, b: f64, value: f64) -> f64 {
    16.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) * value.abs()
}

/// Recursive bisection until the Kronrod/Gauss gap is below `tol` or at the
/// rounding level of the integrand.
pub fn try_adaptive<F, E>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Estimate, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let est = try_gk15(f, a, b)?;
    let tol = tol.max(rounding_floor(a, b, est.value));
    if est.error <= tol || max_depth == 0 || !est.value.is_finite() {
        return Ok(est);
    }
    let m = 0.5 * (a + b);
    let l = try_adaptive(f, a, m, 0.5 * tol, max_depth - 1)?;
    let r = try_adaptive(f, m, b, 0.5 * tol, max_depth - 1)?;
    let mut acc = Neumaier::new();
    acc.add(l.value);
    acc.add(r.value);
    Ok(Estimate {
        value: acc.total(),
        error: l.error + r.error,
    })
}

pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Estimate {
    let g = |x: f64| Ok::<f64, Infallible>(f(x));
    match try_adaptive(&g, a, b, tol, max_depth) {
        Ok(e) => e,
        Err(never) => match never {},
    }
}

/// Cuts [a, b] into consecutive panels; `width(t)` is the panel width for a
/// panel starting at t. A sliver at the end is merged into the last panel.
pub fn panels<W: Fn(f64) -> f64>(a: f64, b: f64, width: W) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    if !(b > a) {
        return out;
    }
    let mut t = a;
    while t < b {
        let w = width(t);
        let mut end = t + w;
        if end >= b - 1e-9 * w {
            end = b;
        }
        out.push((t, end));
        t = end;
    }
    out
}

/// Integrates over a panel list in parallel; each panel refines itself until
/// its error is below `tol_per_unit × width`. The first failing panel (in
/// panel order) decides the error.
pub fn try_integrate_panels<F, E>(f: &F, panels: &[(f64, f64)], tol_per_unit: f64) -> Result<Estimate, E>
where
    F: Fn(f64) -> Result<f64, E> + Sync,
    E: Send,
{
    let parts: Vec<Estimate> = panels
        .par_iter()
        .map(|&(a, b)| try_adaptive(f, a, b, tol_per_unit * (b - a), 12))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_, E>>()?;
    Ok(sum_estimates(&parts))
}

/// Order-stable reduction of per-panel estimates.
pub fn sum_estimates(parts: &[Estimate]) -> Estimate {
    let values: Vec<f64> = parts.iter().map(|e| e.value).collect();
    let errors: Vec<f64> = parts.iter().map(|e| e.error).collect();
    Estimate {
        value: stable_sum(&values),
        error: stable_sum(&errors),
    }
}

pub fn integrate_panels<F>(f: &F, panels: &[(f64, f64)], tol_per_unit: f64) -> Estimate
where
    F: Fn(f64) -> f64 + Sync,
{
    let g = |x: f64| Ok::<f64, Infallible>(f(x));
    match try_integrate_panels(&g, panels, tol_per_unit) {
        Ok(e) => e,
        Err(never) => match never {},
    }
}
