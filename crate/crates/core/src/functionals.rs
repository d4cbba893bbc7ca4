//! Quotient formulas and the three limit functionals.
//!
//! Each functional substitutes T = K·x·τ into an asymptotic identity:
//!
//! * A: (∫|ζ(σ+it)|² / ∫Z²)⁵ · Σ Z²(t_ν)Z²(t_{ν+1}) / τ, K = 4π⁵/(3ζ(2σ)⁵)
//! * B: (∫|S₁|^{2l} / ∫Z²)⁵ · Σ Z²(t_ν)Z²(t_{ν+1}) / τ, K = 4π⁵/(3c̄(l)⁵)
//! * C: (∫|ζ(σ+it)|² / ∫Z²)⁵ · Σ Z⁴(t_ν) / τ, K = 4π³/ζ(2σ)⁵
//!
//! with integrals over [T, T¹] and sums over Gram points in [T, 2T). All
//! three tend to x as τ → ∞.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Result, ZlabError};
use crate::ladders::MIN_BASE;
use crate::lab::Lab;
use crate::sums::SumKind;
use crate::zeta::zeta_real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionalKind {
    A,
    B,
    C,
}

impl std::fmt::Display for FunctionalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FunctionalKind::A => "A",
            FunctionalKind::B => "B",
            FunctionalKind::C => "C",
        })
    }
}

impl std::str::FromStr for FunctionalKind {
    type Err = ZlabError;
    fn from_str(s: &str) -> Result<FunctionalKind> {
        match s {
            "A" | "a" => Ok(FunctionalKind::A),
            "B" | "b" => Ok(FunctionalKind::B),
            "C" | "c" => Ok(FunctionalKind::C),
            _ => Err(ZlabError::domain(format!("unknown functional kind {s:?}"))),
        }
    }
}

/// A fitted c̄(l) and where it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbarRef {
    pub l: u32,
    pub key: String,
    pub value: f64,
}

/// σ for kinds A and C, l with its c̄ for kind B.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FunctionalParam {
    Sigma(f64),
    L(CbarRef),
}

impl FunctionalParam {
    /// The number written in the `param` column of reports.
    pub fn label(&self) -> String {
        match self {
            FunctionalParam::Sigma(s) => format!("sigma={s}"),
            FunctionalParam::L(c) => format!("l={}", c.l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalApproximant {
    pub kind: FunctionalKind,
    pub x: f64,
    pub param: FunctionalParam,
    pub tau: f64,
    /// Substitution constant K with T = K·x·τ.
    pub constant: f64,
    pub t: f64,
    pub upper: f64,
    /// Numerator and denominator of the integral ratio.
    pub numerator: f64,
    pub denominator: f64,
    pub gram_sum: f64,
    pub value: f64,
    pub target: f64,
    pub rel_err: f64,
}

fn check_sigma(lab: &Lab, sigma: f64) -> Result<()> {
    if !(sigma >= 0.5 + lab.cfg().sigma_epsilon) || !sigma.is_finite() {
        return Err(ZlabError::domain(format!("sigma = {sigma} is below 1/2 + {}", lab.cfg().sigma_epsilon)));
    }
    Ok(())
}

/// K of the substitution T = K·x·τ.
pub fn substitution_constant(lab: &Lab, kind: FunctionalKind, param: &FunctionalParam) -> Result<f64> {
    match (kind, param) {
        (FunctionalKind::A, FunctionalParam::Sigma(s)) => {
            check_sigma(lab, *s)?;
            Ok(4.0 * PI.powi(5) / (3.0 * zeta_real(lab.cfg(), 2.0 * s)?.powi(5)))
        }
        (FunctionalKind::C, FunctionalParam::Sigma(s)) => {
            check_sigma(lab, *s)?;
            Ok(4.0 * PI.powi(3) / zeta_real(lab.cfg(), 2.0 * s)?.powi(5))
        }
        (FunctionalKind::B, FunctionalParam::L(c)) => {
            if !(c.value > 0.0 && c.value.is_finite()) {
                return Err(ZlabError::Config(format!("cached constant {} = {} is not positive", c.key, c.value)));
            }
            Ok(4.0 * PI.powi(5) / (3.0 * c.value.powi(5)))
        }
        (FunctionalKind::B, _) => Err(ZlabError::domain("kind B takes l, not sigma")),
        (_, _) => Err(ZlabError::domain(format!("kind {kind} takes sigma, not l"))),
    }
}

/// The kind's approximant at finite τ.
pub fn functional_approximant(
    lab: &Lab,
    kind: FunctionalKind,
    x: f64,
    param: &FunctionalParam,
    tau: f64,
) -> Result<FunctionalApproximant> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(ZlabError::domain(format!("x = {x} must be positive")));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(ZlabError::domain(format!("tau = {tau} must be positive")));
    }
    let constant = substitution_constant(lab, kind, param)?;
    let t = constant * (x * tau);
    if !(t >= MIN_BASE) || !t.is_finite() {
        return Err(ZlabError::domain(format!("implied height T = {t} is below {MIN_BASE}; increase tau")));
    }
    let upper = lab.reverse_iterate(t)?;
    let denominator = lab.second_moment_critical(t, upper)?.value;
    let numerator = match param {
        FunctionalParam::Sigma(s) => lab.second_moment_sigma(*s, t, upper)?.value,
        FunctionalParam::L(c) => lab.s1_moment(c.l, t, upper)?.value,
    };
    let sum_kind = if kind == FunctionalKind::C { SumKind::Fourth } else { SumKind::Pair };
    let gram_sum = lab.gram_values(t, 2.0 * t)?.sum(sum_kind).value;
    let value = (numerator / denominator).powi(5) * gram_sum / tau;
    Ok(FunctionalApproximant {
        kind,
        x,
        param: param.clone(),
        tau,
        constant,
        t,
        upper,
        numerator,
        denominator,
        gram_sum,
        value,
        target: x,
        rel_err: (value / x - 1.0).abs(),
    })
}

/// τ that places the kind's implied height at T for the given x.
pub fn tau_for_height(lab: &Lab, kind: FunctionalKind, x: f64, param: &FunctionalParam, t: f64) -> Result<f64> {
    Ok(t / (substitution_constant(lab, kind, param)? * x))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub t: f64,
    pub upper: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub quotient: f64,
    /// quotient divided by its leading-order prediction
    pub normalized: f64,
}

/// ∫Z² / ∫|ζ(σ+it)|² over [T, T¹]; the prediction is ln T/ζ(2σ).
pub fn quotient_zeta(lab: &Lab, sigma: f64, t: f64) -> Result<QuotientReport> {
    check_sigma(lab, sigma)?;
    let upper = lab.reverse_iterate(t)?;
    let numerator = lab.second_moment_critical(t, upper)?.value;
    let denominator = lab.second_moment_sigma(sigma, t, upper)?.value;
    let quotient = numerator / denominator;
    let normalized = quotient * zeta_real(lab.cfg(), 2.0 * sigma)? / t.ln();
    Ok(QuotientReport { t, upper, numerator, denominator, quotient, normalized })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct S1QuotientReport {
    pub quotient: QuotientReport,
    pub cbar: f64,
    pub cbar_spread: f64,
    /// ∫|S₁|^{2l} over [T, T¹] divided by c̄·(T¹ − T).
    pub denominator_vs_cbar: f64,
}

/// ∫Z² / ∫|S₁|^{2l} over [T, T¹]; the prediction is ln T/c̄(l).
pub fn quotient_s1(lab: &Lab, l: u32, t: f64, cbar: f64, cbar_spread: f64) -> Result<S1QuotientReport> {
    let upper = lab.reverse_iterate(t)?;
    let numerator = lab.second_moment_critical(t, upper)?.value;
    let denominator = lab.s1_moment(l, t, upper)?.value;
    let quotient = numerator / denominator;
    Ok(S1QuotientReport {
        quotient: QuotientReport { t, upper, numerator, denominator, quotient, normalized: quotient * cbar / t.ln() },
        cbar,
        cbar_spread,
        denominator_vs_cbar: denominator / (cbar * (upper - t)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub x: f64,
    pub t: f64,
    pub members: Vec<FunctionalApproximant>,
    /// |v_i − v_j| / x for the pairs (A,B), (A,C), (B,C).
    pub deviations: Vec<(FunctionalKind, FunctionalKind, f64)>,
    pub pass: bool,
}

/// Evaluates A, B and C at one implied height T = K_A·x·τ. With c̄(1) ≈ 0.75
/// the constants differ a lot (K_B ≈ 50·K_A, K_C ≈ K_A/3), so a shared τ
/// would compare the three at heights a factor ~170 apart. B and C therefore
/// take the τ that lands them on the same T.
pub fn chain_compare(lab: &Lab, x: f64, sigma: f64, cbar: CbarRef, tau: f64) -> Result<ChainReport> {
    let pa = FunctionalParam::Sigma(sigma);
    let pb = FunctionalParam::L(cbar);
    let a = functional_approximant(lab, FunctionalKind::A, x, &pa, tau)?;
    let t = a.t;
    let b = functional_approximant(lab, FunctionalKind::B, x, &pb, tau_for_height(lab, FunctionalKind::B, x, &pb, t)?)?;
    let c = functional_approximant(lab, FunctionalKind::C, x, &pa, tau_for_height(lab, FunctionalKind::C, x, &pa, t)?)?;
    let members = vec![a, b, c];
    let mut deviations = Vec::new();
    let mut pass = true;
    for i in 0..3 {
        for j in i + 1..3 {
            let (u, v) = (&members[i], &members[j]);
            let dev = (u.value - v.value).abs() / x;
            pass &= dev <= u.rel_err + v.rel_err;
            deviations.push((u.kind, v.kind, dev));
        }
    }
    Ok(ChainReport { x, t, members, deviations, pass })
}
