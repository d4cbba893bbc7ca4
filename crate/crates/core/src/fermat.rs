//! Fermat rationals (xⁿ + yⁿ)/zⁿ and their functional witnesses.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{Result, ZlabError};
use crate::functionals::{functional_approximant, FunctionalApproximant, FunctionalKind, FunctionalParam};
use crate::lab::Lab;

/// (xⁿ + yⁿ)/zⁿ in lowest terms.
pub fn fermat_rational(x: u64, y: u64, z: u64, n: u32) -> Result<Ratio<BigUint>> {
    if n < 3 {
        return Err(ZlabError::domain(format!("exponent n = {n} must be at least 3")));
    }
    if x == 0 || y == 0 || z == 0 {
        return Err(ZlabError::domain("x, y, z must be positive"));
    }
    let p = |v: u64| BigUint::from(v).pow(n);
    Ok(Ratio::new(p(x) + p(y), p(z)))
}

/// (xⁿ + yⁿ)/zⁿ as the nearest double; the target x of the functionals.
pub fn fermat_target(x: u64, y: u64, z: u64, n: u32) -> Result<f64> {
    to_f64(&fermat_rational(x, y, z, n)?)
}

fn to_f64(q: &Ratio<BigUint>) -> Result<f64> {
    q.to_f64()
        .filter(|v| v.is_finite() && *v > 0.0)
        .ok_or_else(|| ZlabError::domain("rational out of floating-point range"))
}

/// Every (x, y, z, n) with x ≤ y, all three at most `max`, 3 ≤ n ≤ `max_n`,
/// and xⁿ + yⁿ = zⁿ.
pub fn fermat_solutions(max: u64, max_n: u32) -> Vec<(u64, u64, u64, u32)> {
    let mut found = Vec::new();
    for n in 3..=max_n {
        let powers: Vec<BigUint> = (0..=max).map(|v| BigUint::from(v).pow(n)).collect();
        let targets: HashSet<&BigUint> = powers[1..].iter().collect();
        for x in 1..=max {
            for y in x..=max {
                let s = &powers[x as usize] + &powers[y as usize];
                if targets.contains(&s) {
                    let z = (1..=max).find(|&z| powers[z as usize] == s).unwrap_or(0);
                    found.push((x, y, z, n));
                }
            }
        }
    }
    found
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Exact arithmetic says the rational is not 1 and the approximants sit
    /// closer to the rational than to 1.
    Consistent,
    /// The approximants do not separate the rational from 1.
    Unresolved,
    /// The two channels disagree: either the exact rational is 1, or the
    /// approximants are converging on 1 while it is not.
    Contradiction,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Unresolved => "unresolved",
            Verdict::Contradiction => "contradiction",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermatWitness {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub n: u32,
    pub numerator: String,
    pub denominator: String,
    pub is_one_exact: bool,
    pub target: f64,
    pub approximants: Vec<FunctionalApproximant>,
    pub verdict: Verdict,
}

/// Judges a trace of approximants v(τ) against the rational q.
///
/// Distances are logarithmic, |ln(v/q)| against |ln v|, so that rationals
/// above and below 1 are treated alike.
pub fn judge(is_one_exact: bool, q: f64, values: &[f64]) -> Verdict {
    if is_one_exact {
        return Verdict::Contradiction;
    }
    let Some(&last) = values.last() else {
        return Verdict::Unresolved;
    };
    if !(last > 0.0) {
        return Verdict::Unresolved;
    }
    let to_q = (last / q).ln().abs();
    let to_one = last.ln().abs();
    if to_q < to_one {
        return Verdict::Consistent;
    }
    let approaching_one = values.len() >= 2 && {
        let prev = values[values.len() - 2];
        prev > 0.0 && last.ln().abs() < prev.ln().abs() && (last / q).ln().abs() > (prev / q).ln().abs()
    };
    if approaching_one {
        Verdict::Contradiction
    } else {
        Verdict::Unresolved
    }
}

/// Evaluates the functional at x = (xⁿ + yⁿ)/zⁿ along a τ schedule and
/// compares the trace with the exact rational.
#[allow(clippy::too_many_arguments)]
pub fn fermat_equivalence_check(
    lab: &Lab,
    x: u64,
    y: u64,
    z: u64,
    n: u32,
    kind: FunctionalKind,
    param: &FunctionalParam,
    tau_schedule: &[f64],
) -> Result<FermatWitness> {
    let q = fermat_rational(x, y, z, n)?;
    if tau_schedule.is_empty() || !tau_schedule.windows(2).all(|w| w[1] > w[0]) {
        return Err(ZlabError::domain("tau schedule must be non-empty and increasing"));
    }
    let is_one_exact = q.is_one();
    let target = to_f64(&q)?;
    let approximants = tau_schedule
        .iter()
        .map(|&tau| functional_approximant(lab, kind, target, param, tau))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<f64> = approximants.iter().map(|a| a.value).collect();
    Ok(FermatWitness {
        x,
        y,
        z,
        n,
        numerator: q.numer().to_string(),
        denominator: q.denom().to_string(),
        is_one_exact,
        target,
        verdict: judge(is_one_exact, target, &values),
        approximants,
    })
}
