//! Prime-valuation witnesses along orbits, and the inertia-order scan built on them.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::dynamics::{critical_structure, fiber_cycle_type, DEFAULT_MAX_STEPS};
use crate::exactalg::intfactor::{factor_partial, PartialFactorization};
use crate::exactalg::{PolyQ, Rational};

use super::ramification::GoodPrimeData;
use super::{require_prime, StabilityError};

fn as_decimal<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

fn as_decimals<S: Serializer>(ns: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ns.iter().map(|n| n.to_string()))
}

/// `p^ν ∥ f^n(t)` with `ν > 0` not divisible by `target_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationWitness {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub p: BigUint,
    pub valuation: u64,
    pub target_e: u64,
    /// Whether the numerator of `f^n(t)` was factored completely.
    pub complete_factorization: bool,
}

/// Per-level gcd of `e` with the valuations found at non-excluded primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub n: usize,
    pub gcd: u64,
    /// `Some(true)` once the gcd over found primes is 1, `Some(false)` when the
    /// factorization is complete and it is not, `None` when a cofactor could still lower it.
    pub gcd_condition: Option<bool>,
    pub complete: bool,
}

/// A level whose numerator kept composite cofactors after the factoring budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncompleteLevel {
    pub n: usize,
    #[serde(serialize_with = "as_decimals")]
    pub cofactors: Vec<BigUint>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValuationSearch {
    pub witnesses: Vec<ValuationWitness>,
    pub summaries: Vec<LevelSummary>,
    pub incomplete: Vec<IncompleteLevel>,
    /// Levels where `f^n(t) = 0` (no valuations to read).
    pub zero_levels: Vec<usize>,
}

impl ValuationSearch {
    pub fn distinct_primes(&self) -> BTreeSet<BigUint> {
        self.witnesses.iter().map(|w| w.p.clone()).collect()
    }
}

fn factor_numerator(x: &Rational, trial_bound: u64, rho_budget: Option<u64>) -> PartialFactorization {
    factor_partial(x.numer().magnitude(), trial_bound, rho_budget)
}

/// Walks `f^n(t)` for `n = 1..=n_max`, reading prime valuations of the numerators.
///
/// Emits every `(n, p, ν)` with `p ∉ exclude` and `e ∤ ν`, together with a gcd
/// summary per level. Composite cofactors left after trial division (and the
/// optional rho budget) are reported, never assumed to be `e`-th powers.
pub fn find_valuation_witnesses(
    f: &PolyQ,
    t: &Rational,
    e: u64,
    exclude: &BTreeSet<u64>,
    n_max: usize,
    trial_bound: u64,
    rho_budget: Option<u64>,
) -> Result<ValuationSearch, StabilityError> {
    if e < 2 {
        return Err(StabilityError::InvalidExponent(e));
    }
    let mut out = ValuationSearch::default();
    let mut x = t.clone();
    for n in 1..=n_max {
        x = f.eval(&x);
        if x.is_zero() {
            out.zero_levels.push(n);
            continue;
        }
        let fac = factor_numerator(&x, trial_bound, rho_budget);
        let complete = fac.is_complete();
        let mut g = e;
        for (p, nu) in &fac.primes {
            if p.to_u64().is_some_and(|p| exclude.contains(&p)) {
                continue;
            }
            let nu = *nu as u64;
            g = g.gcd(&nu);
            if !nu.is_multiple_of(e) {
                out.witnesses.push(ValuationWitness {
                    n,
                    p: p.clone(),
                    valuation: nu,
                    target_e: e,
                    complete_factorization: complete,
                });
            }
        }
        let gcd_condition = match (g == 1, complete) {
            (true, _) => Some(true),
            (false, true) => Some(false),
            (false, false) => None,
        };
        out.summaries.push(LevelSummary { n, gcd: g, gcd_condition, complete });
        if !complete {
            out.incomplete.push(IncompleteLevel { n, cofactors: fac.cofactors });
        }
    }
    Ok(out)
}

/// Whether the scan insists on `gcd(q, deg f) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    /// Requires `q ∤ deg f`.
    Coprime,
    /// Drops the coprimality requirement; reports concern the block stabilizer.
    BlockStabilizer,
}

/// A good prime `p` with `ν = ν_p(f^{n−1}(c)) > 0`, `q ∤ ν`, for a critical value `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    pub p: u64,
    pub valuation: u64,
    #[serde(with = "crate::exactalg::rational::serde_rational")]
    pub critical_point: Rational,
    #[serde(with = "crate::exactalg::rational::serde_rational")]
    pub critical_value: Rational,
    pub inertia_order: u64,
    /// `|I| / gcd(|I|, ν)`.
    pub predicted_order: u64,
    pub divisible_by_q: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelScan {
    pub q: u64,
    pub mode: KernelMode,
    pub reports: Vec<WitnessReport>,
    /// Levels whose factorization stopped short, per critical point.
    pub incomplete: Vec<IncompleteLevel>,
    /// Primes found that were rejected as bad for `f(X) − t`.
    pub bad_primes_skipped: Vec<u64>,
}

/// Scans the orbits of critical values `c = f(α)` for wandering rational critical
/// points `α` with `q | mult_f(α)`, and predicts the inertia order at each good
/// prime where `f^{n−1}(c)` has valuation prime to `q`. Each prime is reported
/// once per critical point, at the smallest such `n`.
pub fn kernel_witness_scan(
    f: &PolyQ,
    q: u64,
    n_max: usize,
    trial_bound: u64,
    mode: KernelMode,
) -> Result<KernelScan, StabilityError> {
    require_prime(q)?;
    let d = f.deg();
    if d < 2 {
        return Err(StabilityError::DegreeTooSmall(d));
    }
    if mode == KernelMode::Coprime && (d as u64).is_multiple_of(q) {
        return Err(StabilityError::NotCoprime { q, degree: d });
    }
    let report = critical_structure(f, DEFAULT_MAX_STEPS);
    let points: Vec<_> = report
        .rational_critical_points
        .iter()
        .filter(|c| (c.mult_under_f as u64).is_multiple_of(q) && c.orbit.is_wandering())
        .collect();
    if points.is_empty() {
        return Err(StabilityError::NoWanderingWitness { q });
    }
    let good = GoodPrimeData::new(f);
    let mut scan = KernelScan { q, mode, reports: Vec::new(), incomplete: Vec::new(), bad_primes_skipped: Vec::new() };
    let mut bad_seen = BTreeSet::new();
    for cp in points {
        let c = f.eval(&cp.point);
        let inertia = fiber_cycle_type(f, &c).order();
        let mut used = HashSet::new();
        let mut x = c.clone();
        for n in 1..=n_max {
            if n > 1 {
                x = f.eval(&x);
            }
            if x.is_zero() {
                continue;
            }
            let fac = factor_numerator(&x, trial_bound, None);
            if !fac.is_complete() {
                scan.incomplete.push(IncompleteLevel { n, cofactors: fac.cofactors.clone() });
            }
            for (p, nu) in &fac.primes {
                let nu = *nu as u64;
                let Some(p) = p.to_u64() else {
                    scan.incomplete.push(IncompleteLevel { n, cofactors: vec![p.clone()] });
                    continue;
                };
                if nu.is_multiple_of(q) || used.contains(&p) {
                    continue;
                }
                if !good.check(p).good {
                    bad_seen.insert(p);
                    continue;
                }
                used.insert(p);
                let predicted = inertia / inertia.gcd(&nu);
                scan.reports.push(WitnessReport {
                    n,
                    p,
                    valuation: nu,
                    critical_point: cp.point.clone(),
                    critical_value: c.clone(),
                    inertia_order: inertia,
                    predicted_order: predicted,
                    divisible_by_q: predicted.is_multiple_of(q),
                });
            }
        }
    }
    scan.bad_primes_skipped = bad_seen.into_iter().collect();
    Ok(scan)
}
