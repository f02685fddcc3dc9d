//! Orbits, critical points and hypothesis recognition.

pub mod critical;
pub mod hypotheses;
pub mod orbit;

pub use critical::{
    classify_pcf, classify_report, critical_structure, rational_critical_values, fiber_cycle_type, linear_shift, multiplicity_under, ClassStatus, CriticalClass,
    CriticalReport, PcfClass,
};
pub use hypotheses::{check_hypotheses, check_with_report, Criterion, HypothesisEntry, HypothesisReport, Verdict, Witness};
pub use orbit::{escape_height, orbit_classify, EscapeBound, OrbitRecord, OrbitStatus};

/// Step budget used when none is given.
pub const DEFAULT_MAX_STEPS: usize = 64;
