//! Critical points, critical values and postcritical behaviour.

use serde::Serialize;

use super::orbit::{orbit_classify, OrbitRecord, OrbitStatus};
use crate::exactalg::rational::{serde_rational, serde_rational_opt, Rational};
use crate::exactalg::{discriminant_in_t, q_factor, rational_roots, squarefree_decomposition, PolyQ};
use crate::wreath::CycleType;

/// Multiplicity of `alpha` as a root of `f(X) − f(alpha)`.
pub fn multiplicity_under(f: &PolyQ, alpha: &Rational) -> usize {
    let mut g = f - &PolyQ::constant(f.eval(alpha));
    let lin = PolyQ::linear_root(alpha);
    let mut k = 0;
    while !g.is_zero() {
        let (q, r) = g.div_rem(&lin);
        if !r.is_zero() {
            break;
        }
        g = q;
        k += 1;
    }
    k
}

/// `(X − a) ∘ f ∘ (X + a)`; its iterates are `f^n(X + a) − a`.
pub fn linear_shift(f: &PolyQ, a: &Rational) -> PolyQ {
    f.linear_shift(a)
}

/// Multiplicities of the points in the fiber `f^{-1}(v)`, counted over ℚ̄.
pub fn fiber_cycle_type(f: &PolyQ, v: &Rational) -> CycleType {
    let g = f - &PolyQ::constant(v.clone());
    let parts = squarefree_decomposition(&g)
        .into_iter()
        .flat_map(|(part, mult)| std::iter::repeat_n(mult as u64, part.deg()))
        .collect();
    CycleType::new(parts).expect("f has positive degree")
}

/// What is known about the forward orbit of a Galois class of critical points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassStatus {
    Wandering,
    Preperiodic,
    /// Tracked, but neither certificate was reached in the step budget.
    Undetermined,
    /// Irrational critical value; not tracked.
    Unknown,
}

/// The roots of one factor of `f'`, sharing multiplicity and dynamics.
///
/// A root `γ` is preperiodic iff `f(γ)` is, so when `f` is constant on the
/// roots (i.e. `f mod factor` is a constant `c`) the orbit of `c` decides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalClass {
    pub factor: PolyQ,
    /// False only when `f'` was too large to factor and this is a squarefree part.
    pub irreducible: bool,
    pub multiplicity_in_derivative: usize,
    pub mult_under_f: usize,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub point: Option<Rational>,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitRecord>,
}

impl CriticalClass {
    pub fn status(&self) -> ClassStatus {
        match self.orbit.as_ref().map(|o| o.status) {
            Some(OrbitStatus::Wandering { .. }) => ClassStatus::Wandering,
            Some(OrbitStatus::Preperiodic { .. }) => ClassStatus::Preperiodic,
            Some(OrbitStatus::Undetermined { .. }) => ClassStatus::Undetermined,
            None => ClassStatus::Unknown,
        }
    }

    /// Number of critical points in the class.
    pub fn size(&self) -> usize {
        self.factor.deg()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCriticalPoint {
    #[serde(with = "serde_rational")]
    pub point: Rational,
    pub mult_under_f: usize,
    pub orbit: OrbitRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrrationalCriticalFactor {
    pub factor: PolyQ,
    pub multiplicity_in_derivative: usize,
    #[serde(with = "serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub critical_value: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalValue {
    #[serde(with = "serde_rational")]
    pub value: Rational,
    pub fiber_cycle_type: CycleType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub degree: usize,
    pub rational_critical_points: Vec<RationalCriticalPoint>,
    pub irrational_critical_part: Vec<IrrationalCriticalFactor>,
    pub critical_values_rational: Vec<CriticalValue>,
    pub classes: Vec<CriticalClass>,
}

impl CriticalReport {
    /// `Σ (mult_under_f − 1)` over all critical points in ℚ̄ equals `deg f − 1`.
    pub fn riemann_hurwitz_holds(&self) -> bool {
        let total: usize = self.classes.iter().map(|c| c.size() * (c.mult_under_f - 1)).sum();
        total + 1 == self.degree
    }

    pub fn is_unicritical(&self) -> bool {
        matches!(self.classes.as_slice(), [c] if c.size() == 1 && c.mult_under_f == self.degree)
    }
}

/// Splits `f'` into classes; falls back to squarefree parts when `f'` is too large to factor.
fn derivative_classes(f: &PolyQ) -> Vec<(PolyQ, usize, bool)> {
    let fp = f.derivative();
    if let Ok(fac) = q_factor(&fp) {
        return fac.factors.into_iter().map(|(g, m)| (g, m, true)).collect();
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&fp) {
        let mut rest = part.clone();
        for (r, _) in rational_roots(&part) {
            let lin = PolyQ::linear_root(&r);
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((lin, mult, true));
        }
        if rest.deg() > 0 {
            out.push((rest.monic(), mult, rest.deg() == 1));
        }
    }
    out
}

pub fn critical_structure(f: &PolyQ, max_steps: usize) -> CriticalReport {
    let d = f.deg();
    assert!(d >= 2, "critical structure needs degree at least 2");
    let mut classes = Vec::new();
    for (factor, e, irreducible) in derivative_classes(f) {
        let (point, value) = if factor.deg() == 1 {
            let a = -factor.coeff(0);
            let v = f.eval(&a);
            (Some(a), Some(v))
        } else {
            let r = f.rem(&factor);
            (None, if r.degree().unwrap_or(0) == 0 { Some(r.coeff(0)) } else { None })
        };
        let orbit = match (&point, &value) {
            (Some(a), _) => Some(orbit_classify(f, a, max_steps)),
            (None, Some(c)) => Some(orbit_classify(f, c, max_steps)),
            _ => None,
        };
        let mult_under_f = match &point {
            Some(a) => multiplicity_under(f, a),
            None => e + 1,
        };
        classes.push(CriticalClass { factor, irreducible, multiplicity_in_derivative: e, mult_under_f, point, value, orbit });
    }

    let rational_critical_points = classes
        .iter()
        .filter_map(|c| {
            let point = c.point.clone()?;
            Some(RationalCriticalPoint { point, mult_under_f: c.mult_under_f, orbit: c.orbit.clone()? })
        })
        .collect();
    let irrational_critical_part = classes
        .iter()
        .filter(|c| c.point.is_none())
        .map(|c| IrrationalCriticalFactor {
            factor: c.factor.clone(),
            multiplicity_in_derivative: c.multiplicity_in_derivative,
            critical_value: c.value.clone(),
        })
        .collect();
    let critical_values_rational = rational_critical_values(f)
        .into_iter()
        .map(|value| CriticalValue { fiber_cycle_type: fiber_cycle_type(f, &value), value })
        .collect();
    CriticalReport { degree: d, rational_critical_points, irrational_critical_part, critical_values_rational, classes }
}

/// Rational roots of `Δ(t) = disc(f − t)`, i.e. the rational critical values, descending.
pub fn rational_critical_values(f: &PolyQ) -> Vec<Rational> {
    let delta = discriminant_in_t(f);
    if delta.is_zero() {
        return Vec::new();
    }
    rational_roots(&delta).into_iter().map(|(v, _)| v).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PcfClass {
    Pcf,
    PostcriticallyInfinite,
    Undetermined,
}

/// Postcritically infinite once a class is certified wandering; PCF once every class is preperiodic.
pub fn classify_pcf(f: &PolyQ, max_steps: usize) -> PcfClass {
    classify_report(&critical_structure(f, max_steps))
}

pub fn classify_report(report: &CriticalReport) -> PcfClass {
    let statuses: Vec<ClassStatus> = report.classes.iter().map(CriticalClass::status).collect();
    if statuses.contains(&ClassStatus::Wandering) {
        PcfClass::PostcriticallyInfinite
    } else if statuses.iter().all(|s| *s == ClassStatus::Preperiodic) {
        PcfClass::Pcf
    } else {
        PcfClass::Undetermined
    }
}
