//! Prime censuses: run a stability engine over every prime up to a bound and
//! aggregate the stable-prime density.
//!
//! Primes are evaluated in parallel and merged in ascending order, so a report
//! does not depend on the number of workers.

mod primes;
mod stats;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::rational::{is_p_integral, serde_rational, serde_rational_opt};
use crate::exactalg::{reduce_mod_p, PolyQ, Rational};
use crate::stability::GoodPrimeData;
use crate::stability::{
    as_unicritical, depth_stable_capped, unicritical_exact_stable, FailureReason, StabilityError, StabilityStatus,
    StabilityVerdict, Unicritical,
};

pub use primes::{prime_stream, MAX_PRIME_BOUND};
pub use stats::{compare_density, wilson_interval, Comparison, Z95};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("prime bound {bound} exceeds {max}")]
    BoundTooLarge { bound: u64, max: u64 },
    #[error("exact mode needs f of the form uX^d + v, got {0}")]
    NotUnicritical(String),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("worker pool: {0}")]
    Pool(String),
    #[error("prime {p}: engine gave no verdict")]
    Inconclusive { p: u64 },
    #[error(transparent)]
    Stability(#[from] StabilityError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Depth-bounded stability up to the given level.
    Depth(usize),
    ExactUnicritical,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub f: PolyQ,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    #[serde(alias = "prime_bound")]
    pub pmax: u64,
    pub mode: CensusMode,
    /// Extra primes to leave out, on top of the default exclusions.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<u64>,
    /// Leave out primes that are not good for `f(X) − t` or where reduction fails.
    #[serde(default = "default_true")]
    pub default_exclusions: bool,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub expected: Option<Rational>,
    #[serde(default, with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub tol: Option<Rational>,
}

impl Scenario {
    pub fn new(f: PolyQ, a: Rational, pmax: u64, mode: CensusMode) -> Self {
        Scenario { f, a, pmax, mode, exclude: Vec::new(), default_exclusions: true, expected: None, tol: None }
    }

    pub fn with_expectation(mut self, expected: Rational, tol: Rational) -> Self {
        self.expected = Some(expected);
        self.tol = Some(tol);
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowVerdict {
    Stable,
    Unstable,
    Undefined,
    DegreeDrop,
}

/// One CSV row: `prime,verdict,fail_level,orbit_period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRow {
    pub prime: u64,
    pub verdict: RowVerdict,
    pub fail_level: Option<usize>,
    pub orbit_period: Option<usize>,
}

impl PrimeRow {
    fn from_verdict(v: &StabilityVerdict) -> Result<Self, CensusError> {
        let (verdict, fail_level) = match v.status {
            StabilityStatus::StableUpTo { .. } | StabilityStatus::StableExact => (RowVerdict::Stable, None),
            StabilityStatus::UnstableAt { level, reason } => {
                let verdict = match reason {
                    FailureReason::Reducible => RowVerdict::Unstable,
                    FailureReason::Undefined => RowVerdict::Undefined,
                    FailureReason::DegreeDrop => RowVerdict::DegreeDrop,
                };
                (verdict, Some(level))
            }
            StabilityStatus::Inconclusive { .. } => return Err(CensusError::Inconclusive { p: v.prime }),
        };
        Ok(PrimeRow { prime: v.prime, verdict, fail_level, orbit_period: v.orbit_period_mod_p })
    }

    pub fn is_stable(&self) -> bool {
        self.verdict == RowVerdict::Stable
    }

    /// Stable through `depth` levels.
    pub fn stable_to(&self, depth: usize) -> bool {
        match self.verdict {
            RowVerdict::Stable => true,
            _ => self.fail_level.is_some_and(|l| l > depth),
        }
    }
}

/// Failure counts keyed by level, with undefined and degree-drop outcomes apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    pub levels: BTreeMap<usize, u64>,
    pub undefined: u64,
    pub degree_drop: u64,
}

impl Serialize for Histogram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (level, count) in &self.levels {
            map.serialize_entry(&level.to_string(), count)?;
        }
        if self.undefined > 0 {
            map.serialize_entry("undefined", &self.undefined)?;
        }
        if self.degree_drop > 0 {
            map.serialize_entry("degree_drop", &self.degree_drop)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioEcho {
    pub f: PolyQ,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    pub pmax: u64,
    pub mode: CensusMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub scenario: ScenarioEcho,
    pub primes_tested: u64,
    pub stable_count: u64,
    pub density_num: u64,
    pub density_den: u64,
    pub density: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub histogram: Histogram,
    /// Primes up to the bound that were left out of the counts.
    pub excluded: Vec<u64>,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub expected: Option<Rational>,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Comparison>,
}

impl CensusReport {
    /// Compares the density with `predicted` to within `tol`.
    pub fn compare_predicted(&self, predicted: &Rational, tol: &Rational) -> Comparison {
        compare_density(self.stable_count, self.primes_tested, predicted, tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusRun {
    pub report: CensusReport,
    pub rows: Vec<PrimeRow>,
}

/// Default tolerance when an expectation comes without one.
pub fn default_tolerance() -> Rational {
    Rational::new(15.into(), 1000.into())
}

enum Engine {
    Depth(usize),
    Exact(Unicritical),
}

fn engine_for(s: &Scenario) -> Result<Engine, CensusError> {
    let d = s.f.deg();
    if d < 2 {
        return Err(StabilityError::DegreeTooSmall(d).into());
    }
    match s.mode {
        CensusMode::Depth(0) => Err(CensusError::ZeroDepth),
        CensusMode::Depth(n) => Ok(Engine::Depth(n)),
        CensusMode::ExactUnicritical => {
            as_unicritical(&s.f).map(Engine::Exact).ok_or_else(|| CensusError::NotUnicritical(s.f.to_string()))
        }
    }
}

fn evaluate(s: &Scenario, engine: &Engine, p: u64) -> Result<PrimeRow, CensusError> {
    let verdict = match engine {
        // No degree cap: the caller chose the depth.
        Engine::Depth(n) => depth_stable_capped(&s.f, &s.a, p, *n, usize::MAX)?,
        Engine::Exact(u) => unicritical_exact_stable(&u.u, u.d, &u.v, &s.a, p)?,
    };
    PrimeRow::from_verdict(&verdict)
}

/// Primes up to the bound, split into (evaluated, excluded).
fn partition_primes(s: &Scenario) -> Result<(Vec<u64>, Vec<u64>), CensusError> {
    let extra: BTreeSet<u64> = s.exclude.iter().copied().collect();
    let good = s.default_exclusions.then(|| GoodPrimeData::new(&s.f));
    let mut keep = Vec::new();
    let mut drop = Vec::new();
    for p in prime_stream(s.pmax)? {
        let excluded = extra.contains(&p)
            || good.as_ref().is_some_and(|g| {
                !g.check(p).good || reduce_mod_p(&s.f, p).is_err() || !is_p_integral(&s.a, p)
            });
        if excluded {
            drop.push(p);
        } else {
            keep.push(p);
        }
    }
    Ok((keep, drop))
}

fn run_rows(s: &Scenario, engine: &Engine, primes: &[u64], opts: &CensusOptions) -> Result<Vec<PrimeRow>, CensusError> {
    let work = || primes.par_iter().map(|&p| evaluate(s, engine, p)).collect::<Result<Vec<_>, _>>();
    match opts.workers {
        None => work(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CensusError::Pool(e.to_string()))?
            .install(work),
    }
}

fn aggregate(s: &Scenario, rows: &[PrimeRow], excluded: Vec<u64>) -> CensusReport {
    let tested = rows.len() as u64;
    let stable = rows.iter().filter(|r| r.is_stable()).count() as u64;
    let mut histogram = Histogram::default();
    for r in rows {
        match (r.verdict, r.fail_level) {
            (RowVerdict::Undefined, _) => histogram.undefined += 1,
            (RowVerdict::DegreeDrop, _) => histogram.degree_drop += 1,
            (_, Some(level)) => *histogram.levels.entry(level).or_default() += 1,
            _ => {}
        }
    }
    let (wilson_lo, wilson_hi) = wilson_interval(stable, tested);
    let tolerance = s.expected.as_ref().map(|_| s.tol.clone().unwrap_or_else(default_tolerance));
    let verdict = s
        .expected
        .as_ref()
        .zip(tolerance.as_ref())
        .map(|(e, t)| compare_density(stable, tested, e, t));
    CensusReport {
        scenario: ScenarioEcho { f: s.f.clone(), a: s.a.clone(), pmax: s.pmax, mode: s.mode },
        primes_tested: tested,
        stable_count: stable,
        density_num: stable,
        density_den: tested,
        density: if tested == 0 { 0.0 } else { stable as f64 / tested as f64 },
        wilson_lo,
        wilson_hi,
        histogram,
        excluded,
        expected: s.expected.clone(),
        tolerance,
        verdict,
    }
}

/// Runs the scenario's engine on every non-excluded prime up to its bound.
pub fn run_census(s: &Scenario, opts: &CensusOptions) -> Result<CensusRun, CensusError> {
    let engine = engine_for(s)?;
    let (primes, excluded) = partition_primes(s)?;
    let rows = run_rows(s, &engine, &primes, opts)?;
    let report = aggregate(s, &rows, excluded);
    Ok(CensusRun { report, rows })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthDensity {
    pub depth: usize,
    pub stable_count: u64,
    pub primes_tested: u64,
    pub density: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

/// Density of depth-`N`-stable primes for `N = 1..=n_max`, from one depth-`n_max` run.
pub fn density_decay_profile(
    f: &PolyQ,
    a: &Rational,
    pmax: u64,
    n_max: usize,
    opts: &CensusOptions,
) -> Result<Vec<DepthDensity>, CensusError> {
    let run = run_census(&Scenario::new(f.clone(), a.clone(), pmax, CensusMode::Depth(n_max)), opts)?;
    Ok(profile_from_rows(&run.rows, n_max))
}

pub fn profile_from_rows(rows: &[PrimeRow], n_max: usize) -> Vec<DepthDensity> {
    let tested = rows.len() as u64;
    (1..=n_max)
        .map(|depth| {
            let stable = rows.iter().filter(|r| r.stable_to(depth)).count() as u64;
            let (wilson_lo, wilson_hi) = wilson_interval(stable, tested);
            DepthDensity {
                depth,
                stable_count: stable,
                primes_tested: tested,
                density: if tested == 0 { 0.0 } else { stable as f64 / tested as f64 },
                wilson_lo,
                wilson_hi,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{rat, ratio};

    fn cubic() -> PolyQ {
        PolyQ::from_ints(&[1, 0, 0, -1])
    }

    #[test]
    fn exact_census_small() {
        let s = Scenario::new(cubic(), rat(3), 2000, CensusMode::ExactUnicritical);
        let run = run_census(&s, &CensusOptions::default()).unwrap();
        let r = &run.report;
        assert_eq!(r.primes_tested as usize, run.rows.len());
        assert!(r.excluded.contains(&2) && r.excluded.contains(&3));
        assert!(r.wilson_lo <= r.density && r.density <= r.wilson_hi);
        assert!(run.rows.windows(2).all(|w| w[0].prime < w[1].prime));
        assert!(run.rows.iter().all(|row| !r.excluded.contains(&row.prime)));
        let hist_total: u64 = r.histogram.levels.values().sum();
        assert_eq!(hist_total + r.stable_count, r.primes_tested);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let s = Scenario::new(PolyQ::from_ints(&[1, 0, 1]), rat(0), 3000, CensusMode::Depth(4));
        let one = run_census(&s, &CensusOptions { workers: Some(1) }).unwrap();
        let three = run_census(&s, &CensusOptions { workers: Some(3) }).unwrap();
        assert_eq!(one, three);
        assert_eq!(serde_json::to_string(&one.report).unwrap(), serde_json::to_string(&three.report).unwrap());
    }

    #[test]
    fn expectation_and_exclusions() {
        let mut s = Scenario::new(PolyQ::from_ints(&[-2, 0, 1]), rat(0), 5000, CensusMode::ExactUnicritical)
            .with_expectation(ratio(1, 2), ratio(5, 100));
        s.exclude = vec![3, 5];
        let r = run_census(&s, &CensusOptions::default()).unwrap().report;
        assert_eq!(r.verdict, Some(Comparison::Pass));
        assert!(r.excluded.contains(&3) && r.excluded.contains(&5));
        let json = serde_json::to_value(&r).unwrap();
        for key in ["scenario", "primes_tested", "stable_count", "density_num", "density_den", "wilson_lo", "wilson_hi", "histogram", "expected", "verdict"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["scenario"]["mode"], serde_json::json!("exact_unicritical"));
    }

    #[test]
    fn profile_is_monotone() {
        let prof = density_decay_profile(&PolyQ::from_ints(&[1, 0, 1]), &rat(0), 3000, 5, &CensusOptions::default()).unwrap();
        assert!(prof.windows(2).all(|w| w[1].stable_count <= w[0].stable_count));
    }

    #[test]
    fn scenario_json() {
        let s: Scenario =
            serde_json::from_str(r#"{"f": "1 - X^3", "a": "-1/7", "pmax": 1000, "mode": "exact_unicritical"}"#).unwrap();
        assert_eq!(s.a, ratio(-1, 7));
        assert!(s.default_exclusions);
        let s: Scenario = serde_json::from_str(r#"{"f": "X^2+1", "a": 0, "prime_bound": 100, "mode": {"depth": 3}, "expected": "1/2"}"#).unwrap();
        assert_eq!(s.mode, CensusMode::Depth(3));
        assert_eq!(s.expected, Some(ratio(1, 2)));
        assert!(run_census(&Scenario::new(PolyQ::from_ints(&[0, 1, 1]), rat(0), 10, CensusMode::ExactUnicritical), &CensusOptions::default()).is_err());
    }
}
