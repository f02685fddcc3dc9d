//! Mod-p stability engines, the good-prime filter, ramification prediction for
//! specializations of `f(X) − t`, and valuation-witness searches along orbits.
//!
//! A pair `(f, a)` is stable modulo `p` when every `f^n(X) − a` keeps its degree
//! and stays irreducible over F_p. Two engines decide this:
//!
//! * [`depth_stable`] works for any `f` and checks levels `1..=N` by computing
//!   the iterates over F_p;
//! * [`unicritical_exact_stable`] decides full stability of `uX^d + v` with a
//!   finite residue-symbol criterion along the orbit of `v`.

mod depth;
mod ramification;
mod unicritical;
mod witnesses;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::AlgebraError;

pub use depth::{depth_stable, depth_stable_capped, DEFAULT_DEPTH_DEGREE_CAP};
pub use ramification::{
    branch_points, good_prime, intersection_mult, predict_ramification, BadPrimeReason, BranchPoint,
    GoodPrimeReport, InertiaData, RamificationPrediction,
};
pub(crate) use ramification::GoodPrimeData;
pub use unicritical::{as_unicritical, is_qth_power_mod, prime_divisors, unicritical_exact_stable, Unicritical};
pub use witnesses::{
    find_valuation_witnesses, kernel_witness_scan, IncompleteLevel, KernelMode, KernelScan, LevelSummary,
    ValuationSearch, ValuationWitness, WitnessReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("{what} is not {p}-integral")]
    NonIntegral { what: String, p: u64 },
    #[error("{p} is not a good prime: {reasons:?}")]
    BadPrime { p: u64, reasons: Vec<BadPrimeReason> },
    #[error("{0} is a branch point")]
    BranchPoint(String),
    #[error("exponent e must be at least 2, got {0}")]
    InvalidExponent(u64),
    #[error("no wandering rational critical point has multiplicity divisible by {q}")]
    NoWanderingWitness { q: u64 },
    #[error("q = {q} shares a factor with deg f = {degree}")]
    NotCoprime { q: u64, degree: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which engine produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum StabilityMode {
    DepthBounded { depth: usize },
    ExactUnicritical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    Reducible,
    DegreeDrop,
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum StabilityStatus {
    StableUpTo { depth: usize },
    StableExact,
    UnstableAt { level: usize, reason: FailureReason },
    /// Levels `1..=verified_to` are irreducible; the next one exceeded the degree cap.
    Inconclusive { verified_to: usize },
}

impl StabilityStatus {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityStatus::StableUpTo { .. } | StabilityStatus::StableExact)
    }

    pub fn fail_level(&self) -> Option<usize> {
        match self {
            StabilityStatus::UnstableAt { level, .. } => Some(*level),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub prime: u64,
    pub mode: StabilityMode,
    pub status: StabilityStatus,
    pub orbit_period_mod_p: Option<usize>,
}

impl StabilityVerdict {
    fn unstable(prime: u64, mode: StabilityMode, level: usize, reason: FailureReason) -> Self {
        StabilityVerdict {
            prime,
            mode,
            status: StabilityStatus::UnstableAt { level, reason },
            orbit_period_mod_p: None,
        }
    }
}

fn require_prime(p: u64) -> Result<(), StabilityError> {
    if crate::exactalg::intfactor::is_prime_u64(p) {
        Ok(())
    } else {
        Err(StabilityError::NotPrime(p))
    }
}
