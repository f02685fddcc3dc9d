//! Good primes for `f(X) − t` and predicted ramification of its specializations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::dynamics::fiber_cycle_type;
use crate::exactalg::rational::{is_p_integral, valuation};
use crate::exactalg::{discriminant, discriminant_in_t, q_factor, PolyQ, Rational};
use crate::wreath::CycleType;

use super::{require_prime, StabilityError};

/// Why a prime fails to be good for `F(t, X) = f(X)/lc(f) − t/lc(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BadPrimeReason {
    /// `p` divides a denominator of `f` or of its monic normalization.
    CoefficientDenominator,
    /// `p` divides the content of `Δ(t) = disc_X F`.
    DiscriminantContent,
    /// Reducing `Δ` mod p merges roots, loses degree, or sends a root to infinity.
    BranchLocusDegenerates,
    /// `p ≤ deg f`, so `p` may divide the order of the monodromy group.
    SmallPrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodPrimeReport {
    pub prime: u64,
    pub good: bool,
    pub reasons: Vec<BadPrimeReason>,
}

/// The integers whose prime divisors are bad, computed once per `f`.
#[derive(Clone, Debug)]
pub(crate) struct GoodPrimeData {
    degree: usize,
    coefficient_denominators: BigInt,
    content_numerator: BigInt,
    locus: Vec<BigInt>,
}

impl GoodPrimeData {
    pub(crate) fn new(f: &PolyQ) -> Self {
        let lc = f.leading();
        let mut den = lc.numer().abs();
        for c in f.coeffs() {
            den = den.lcm(&c.denom().abs()).lcm(&(c / &lc).denom().abs());
        }
        let delta = monic_discriminant(f);
        let (content, prim) = delta.primitive_integer_model();
        let prim_poly = PolyQ::from_bigints(&prim);
        let sqfree = prim_poly.div_exact(&prim_poly.gcd(&prim_poly.derivative())).expect("gcd divides");
        let (_, sq) = sqfree.primitive_integer_model();
        let sq_poly = PolyQ::from_bigints(&sq);
        let mut locus = vec![prim.last().unwrap().abs(), sq.last().unwrap().abs()];
        if sq_poly.deg() >= 2 {
            locus.push(discriminant(&sq_poly).numer().abs());
        }
        GoodPrimeData {
            degree: f.deg(),
            coefficient_denominators: den,
            content_numerator: content.numer().abs(),
            locus,
        }
    }

    pub(crate) fn check(&self, p: u64) -> GoodPrimeReport {
        let pb = BigInt::from(p);
        let divides = |n: &BigInt| (n % &pb).is_zero();
        let mut reasons = Vec::new();
        if divides(&self.coefficient_denominators) {
            reasons.push(BadPrimeReason::CoefficientDenominator);
        }
        if divides(&self.content_numerator) {
            reasons.push(BadPrimeReason::DiscriminantContent);
        }
        if self.locus.iter().any(divides) {
            reasons.push(BadPrimeReason::BranchLocusDegenerates);
        }
        if p <= self.degree as u64 {
            reasons.push(BadPrimeReason::SmallPrime);
        }
        GoodPrimeReport { prime: p, good: reasons.is_empty(), reasons }
    }
}

/// `Δ(t) = disc_X(f(X)/c − t/c)` with `c = lc(f)`.
fn monic_discriminant(f: &PolyQ) -> PolyQ {
    let lc = f.leading();
    discriminant_in_t(&f.monic()).compose(&PolyQ::monomial(lc.recip(), 1))
}

/// Whether `p` is good for `f(X) − t`, with every triggered reason.
pub fn good_prime(f: &PolyQ, p: u64) -> GoodPrimeReport {
    GoodPrimeData::new(f).check(p)
}

/// A root of `Δ(t)`: a critical value of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchPoint {
    Rational(#[serde(with = "crate::exactalg::rational::serde_rational")] Rational),
    /// Monic minimal polynomial of an irrational branch point.
    MinimalPolynomial(PolyQ),
}

/// Branch points of `f(X) − t`, one per irreducible factor of `Δ(t)`.
pub fn branch_points(f: &PolyQ) -> Result<Vec<BranchPoint>, StabilityError> {
    let fac = q_factor(&monic_discriminant(f))?;
    Ok(fac
        .factors
        .into_iter()
        .map(|(g, _)| {
            if g.deg() == 1 {
                BranchPoint::Rational(-g.coeff(0))
            } else {
                BranchPoint::MinimalPolynomial(g)
            }
        })
        .collect())
}

/// `m_p(a, t)`: `ν_p(a − t)` for rational `t`, `ν_p(μ_t(a))` otherwise.
pub fn intersection_mult(a: &Rational, t: &BranchPoint, p: u64) -> Result<u64, StabilityError> {
    require_prime(p)?;
    if !is_p_integral(a, p) {
        return Err(StabilityError::NonIntegral { what: format!("a = {a}"), p });
    }
    let value = match t {
        BranchPoint::Rational(t) => {
            if !is_p_integral(t, p) {
                return Err(StabilityError::NonIntegral { what: format!("branch point {t}"), p });
            }
            a - t
        }
        BranchPoint::MinimalPolynomial(mu) => {
            if mu.leading() != Rational::one() || mu.coeffs().iter().any(|c| !is_p_integral(c, p)) {
                return Err(StabilityError::NonIntegral { what: format!("minimal polynomial {mu}"), p });
            }
            mu.eval(a)
        }
    };
    match valuation(&value, p) {
        None => Err(StabilityError::BranchPoint(a.to_string())),
        Some(v) => Ok(v as u64),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InertiaData {
    pub branch_point: BranchPoint,
    /// Fiber multiplicities over the branch point; `None` when it is irrational.
    pub inertia_cycle_type: Option<CycleType>,
    pub inertia_order: Option<u64>,
}

impl InertiaData {
    pub fn new(f: &PolyQ, t: BranchPoint) -> Self {
        let cycle_type = match &t {
            BranchPoint::Rational(v) => Some(fiber_cycle_type(f, v)),
            BranchPoint::MinimalPolynomial(_) => None,
        };
        InertiaData {
            inertia_order: cycle_type.as_ref().map(CycleType::order),
            inertia_cycle_type: cycle_type,
            branch_point: t,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationPrediction {
    pub inertia: InertiaData,
    pub m_p: u64,
    /// `|I| / gcd(|I|, m_p)`, when the inertia order is known.
    pub predicted_index: Option<u64>,
}

/// Predicted ramification at `p` of the splitting field of `f(X) − a`, one entry per
/// branch point meeting `a` modulo `p`. An empty result predicts `p` unramified.
pub fn predict_ramification(f: &PolyQ, a: &Rational, p: u64) -> Result<Vec<RamificationPrediction>, StabilityError> {
    require_prime(p)?;
    if f.deg() < 2 {
        return Err(StabilityError::DegreeTooSmall(f.deg()));
    }
    let report = good_prime(f, p);
    if !report.good {
        return Err(StabilityError::BadPrime { p, reasons: report.reasons });
    }
    let points = branch_points(f)?;
    if points.iter().any(|t| matches!(t, BranchPoint::Rational(v) if v == a)) {
        return Err(StabilityError::BranchPoint(a.to_string()));
    }
    let mut out = Vec::new();
    for t in points {
        let m = intersection_mult(a, &t, p)?;
        if m == 0 {
            continue;
        }
        let inertia = InertiaData::new(f, t);
        let predicted_index = inertia.inertia_order.map(|i| i / i.gcd(&m));
        out.push(RamificationPrediction { inertia, m_p: m, predicted_index });
    }
    Ok(out)
}
